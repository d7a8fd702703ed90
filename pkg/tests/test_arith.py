import random

import pytest
from hypothesis import given, settings, strategies as st

from diophlab.arith import (
    DomainError, Factorization, as_fraction, divisors, factorize, is_prime, is_square, isqrt,
    merge_factorizations,
)

from conftest import isqrt_oracle, trial_factor


@pytest.mark.parametrize("n, root", [(0, 0), (34272, 185), (24368563262176237011600, 156104334540)])
def test_isqrt_examples(n, root):
    assert isqrt(n) == root == isqrt_oracle(n)


def test_isqrt_negative():
    with pytest.raises(DomainError):
        isqrt(-1)


@given(st.integers(min_value=0, max_value=10**60))
def test_isqrt_bracket(n):
    r = isqrt(n)
    assert r * r <= n < (r + 1) ** 2


def test_is_square_examples():
    assert is_square(4489) == 67
    assert is_square(0) == 0
    assert is_square(12322) is None
    assert is_square(-4) is None


@given(st.integers(min_value=-10**30, max_value=10**30))
def test_is_square_agrees_with_isqrt(n):
    root = is_square(n)
    if n < 0:
        assert root is None
    else:
        assert (root is not None) == (isqrt(n) ** 2 == n)
        if root is not None:
            assert root >= 0 and root * root == n


def test_is_square_residue_filter_exhaustive():
    squares = {k * k for k in range(1001)}
    assert all((is_square(n) is not None) == (n in squares) for n in range(10**6 + 1))


def test_factorize_examples():
    assert factorize(952).factors == ((2, 3), (7, 1), (17, 1))
    f = factorize(-987)
    assert f.sign == -1 and f.factors == ((3, 1), (7, 1), (47, 1))
    assert factorize(1000003).factors == ((1000003, 1),)
    assert factorize(1).factors == ()


def test_factorize_zero():
    with pytest.raises(DomainError):
        factorize(0)


def test_factorize_roundtrip_exhaustive():
    for n in range(-10**4, 10**4 + 1):
        if n == 0:
            continue
        f = factorize(n)
        assert f.value() == n
        assert list(f.factors) == trial_factor(n)


def _check_factorization(n):
    f = factorize(n)
    assert f.value() == n
    assert all(is_prime(p) for p, _ in f.factors)
    primes = [p for p, _ in f.factors]
    assert primes == sorted(set(primes))


def test_factorize_random_128bit():
    rng = random.Random(20170412)
    for _ in range(8):
        _check_factorization(rng.getrandbits(128) | 1)


@pytest.mark.slow
def test_factorize_random_128bit_long():
    rng = random.Random(20170412)
    for _ in range(40):
        _check_factorization(rng.getrandbits(128) | 1)


def test_factorize_128bit_from_mid_primes():
    rng = random.Random(7)
    for _ in range(10):
        n = 1
        while n.bit_length() < 120:
            q = rng.getrandbits(rng.randint(8, 36)) | 1
            while not is_prime(q):
                q += 2
            n *= q
        _check_factorization(n)


def test_factorize_large_semiprime_deterministic():
    n = 1000000007 * 998244353 * (2**61 - 1)
    assert factorize(n) == factorize(n)
    assert factorize(n).factors == ((998244353, 1), (1000000007, 1), (2**61 - 1, 1))


@pytest.mark.parametrize("p", [2, 3, 997, 1000003, 2**61 - 1, 2**89 - 1, 2**127 - 1])
def test_is_prime_primes(p):
    assert is_prime(p)


@pytest.mark.parametrize("n", [1, 561, 3215031751, 3825123056546413051, 2**67 - 1,
                               318665857834031151167461])
def test_is_prime_composites(n):
    # includes Carmichael and strong pseudoprimes to many small bases
    assert not is_prime(n)


def test_divisors_952():
    assert list(divisors(factorize(952))) == [1, 2, 4, 7, 8, 14, 17, 28, 34, 56, 68, 119,
                                              136, 238, 476, 952]
    assert list(divisors(factorize(1))) == [1]
    assert list(divisors(factorize(49))) == [1, 7, 49]


@settings(max_examples=200)
@given(st.integers(min_value=1, max_value=50000))
def test_divisors_match_enumeration(n):
    f = factorize(n)
    ds = list(divisors(f))
    assert ds == [k for k in range(1, n + 1) if n % k == 0]
    assert len(ds) == f.divisor_count()


def test_merge_factorizations():
    f = merge_factorizations(factorize(12), factorize(-18), factorize(35))
    assert f.value() == 12 * -18 * 35


def test_malformed_factorization_rejected():
    with pytest.raises(DomainError):
        Factorization(((3, 1), (2, 1)))


def test_as_fraction():
    assert as_fraction("12289/4").denominator == 4
    assert as_fraction("-6/4") == as_fraction("-3/2")
    assert as_fraction(0).denominator == 1
