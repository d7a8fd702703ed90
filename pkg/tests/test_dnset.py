import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from diophlab.arith import DomainError
from diophlab.dnset import (
    SquareWitness, Triple, is_dn_set, is_rational_solution, minimal_scale, scale_solutions,
    spectrum, spectrum_bruteforce,
)

from conftest import spectrum_window


def ns(entries):
    return [e.n for e in entries]


def test_triple_normalizes_and_validates():
    assert tuple(Triple(420, 4, 12)) == (4, 12, 420)
    with pytest.raises(DomainError):
        Triple(1, 1, 5)
    with pytest.raises(DomainError):
        Triple(0, 1, 5)
    assert Triple.parse("{8, 21, 55}") == Triple(8, 21, 55)


def test_is_dn_set_examples():
    assert is_dn_set(Triple(8, 21, 55), 4321) == SquareWitness(r=74, s=69, t=67)
    assert is_dn_set(Triple(1, 8, 120), 721) is not None
    assert is_dn_set(Triple(1, 8, 120), 2) is None
    with pytest.raises(DomainError):
        is_dn_set(Triple(1, 8, 120), 0)


def test_is_rational_solution_examples():
    t = Triple(1, 8, 120)
    assert is_rational_solution(t, Fraction(12289, 4)) == (Fraction(111, 2), Fraction(113, 2), Fraction(127, 2))
    assert is_rational_solution(t, 1) == (3, 11, 31)
    assert is_rational_solution(t, 2) is None


def brute_complete(t):
    lo, hi = spectrum_window(t)
    return [n for n in range(lo, hi + 1) if n != 0 and is_dn_set(t, n) is not None]


@pytest.mark.parametrize("abc, expected", [
    ((1, 8, 120), [1, 721]),
    ((8, 21, 55), [1, 4321]),
    ((1, 2, 3), [-2]),
])
def test_spectrum_exact_against_complete_scan(abc, expected):
    t = Triple(*abc)
    assert ns(spectrum(t)) == expected == brute_complete(t)


def test_spectrum_4_12_420():
    t = Triple(4, 12, 420)
    assert ns(spectrum(t)) == [1, 436, 3796, 40756]
    assert ns(spectrum_bruteforce(t, 50000)) == [1, 436, 3796, 40756]


def test_spectrum_bruteforce_examples():
    t = Triple(1, 8, 120)
    assert ns(spectrum_bruteforce(t, 1000)) == [1, 721]
    assert ns(spectrum_bruteforce(t, 500)) == [1]
    with pytest.raises(DomainError):
        spectrum_bruteforce(t, 0)


def test_degenerate_entries_flagged():
    entries = spectrum(Triple(1, 2, 3))
    assert entries[0].degenerate and entries[0].witness.t == 0


nonzero = st.integers(min_value=-60, max_value=60).filter(bool)


@settings(max_examples=150, deadline=None)
@given(st.lists(nonzero, min_size=3, max_size=3, unique=True))
def test_spectrum_matches_bruteforce(vals):
    t = Triple(*vals)
    bound = 2 * max(abs(p) for p in t.products)
    fast = [e for e in spectrum(t) if abs(e.n) <= bound]
    assert fast == spectrum_bruteforce(t, bound)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=3000), min_size=3, max_size=3, unique=True))
def test_spectrum_entries_sorted_and_witnessed(vals):
    t = Triple(*vals)
    entries = spectrum(t)
    assert ns(entries) == sorted(set(ns(entries)))
    for e in entries:
        assert is_dn_set(t, e.n) == e.witness
        assert e.witness.check(t, e.n)
    assert (1 in ns(entries)) == (is_dn_set(t, 1) is not None)


def test_scale_solutions_paper_example():
    sol = scale_solutions(Triple(1, 8, 120), [1, 721, "12289/4", "769/9", "1921/36"])
    assert sol.z == 6
    assert sol.scaled_triple == Triple(6, 48, 720)
    assert sol.n_values == (36, 25956, 110601, 3076, 1921)


def test_scale_solutions_small_cases():
    sol = scale_solutions(Triple(1, 8, 120), [1])
    assert (sol.z, sol.scaled_triple, sol.n_values) == (1, Triple(1, 8, 120), (1,))
    sol = scale_solutions(Triple(1, 8, 120), [Fraction(769, 9)])
    assert (sol.z, sol.scaled_triple, sol.n_values) == (3, Triple(3, 24, 360), (769,))
    # 72+769 = 29^2, 1080+769 = 43^2, 8640+769 = 97^2
    assert is_dn_set(Triple(3, 24, 360), 769) == SquareWitness(97, 43, 29)


def test_scale_solutions_rejects_non_solution():
    with pytest.raises(DomainError):
        scale_solutions(Triple(1, 8, 120), [2])
    with pytest.raises(DomainError):
        scale_solutions(Triple(1, 8, 120), [])


def test_scale_solutions_drops_zero(caplog):
    # x = 0 solves the system for a triple where all products are squares
    t = Triple(1, 4, 9)
    sol = scale_solutions(t, [0, Fraction(-3, 4)]) if is_rational_solution(t, Fraction(-3, 4)) else scale_solutions(t, [0])
    assert 0 not in sol.n_values
    assert "dropping" in caplog.text


@settings(deadline=None)
@given(st.lists(st.fractions(max_denominator=40).filter(bool), min_size=1, max_size=3))
def test_minimal_scale_is_minimal(xs):
    z = minimal_scale(xs)
    assert all((x * z * z).denominator == 1 for x in xs)
    assert not any(all((x * w * w).denominator == 1 for x in xs) for w in range(1, z))
