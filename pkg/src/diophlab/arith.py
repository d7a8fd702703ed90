"""Exact integer primitives: square roots, factorization, divisors.

Rationals are plain :class:`fractions.Fraction` values, which are normalized
on construction (``gcd(|num|, den) == 1``, ``den >= 1``, zero is ``0/1``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

__all__ = [
    "DomainError",
    "Factorization",
    "as_fraction",
    "divisors",
    "factorize",
    "is_prime",
    "is_square",
    "isqrt",
    "merge_factorizations",
]

TRIAL_BOUND = 10**6

# Deterministic for every n < 3.317e24 (Sorenson & Webster).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_BOUND = 3317044064679887385961981
_MR_BASES_EXTENDED = _MR_BASES + (43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


class DomainError(ValueError):
    """Raised when an argument lies outside an operation's domain."""


def isqrt(n: int) -> int:
    """Return ``floor(sqrt(n))`` for ``n >= 0``."""
    if n < 0:
        raise DomainError(f"isqrt of negative number {n}")
    return math.isqrt(n)


def is_square(n: int) -> Optional[int]:
    """Return the nonnegative root of ``n`` if it is a perfect square, else None.

    Zero counts as a square. Negative inputs are never squares.
    """
    if n < 0:
        return None
    # Quadratic residues mod 64 reject ~80% of non-squares cheaply.
    if (0xFDFDFDEDFDFCFDEC >> (n & 63)) & 1:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def as_fraction(value) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * (TRIAL_BOUND + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(TRIAL_BOUND) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, TRIAL_BOUND + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (extended base set above 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES if n < _MR_BOUND else _MR_BASES_EXTENDED
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rho(n: int) -> int:
    """Brent's variant of Pollard rho with increments c = 1, 2, 3, ..."""
    if n % 2 == 0:
        return 2
    c = 0
    while True:
        c += 1
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        m = 128
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split_large(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = is_square(n)
    if r is not None:
        _split_large(r, out)
        _split_large(r, out)
        return
    d = _rho(n)
    _split_large(d, out)
    _split_large(n // d, out)


@dataclass(frozen=True)
class Factorization:
    """``sign * prod(p**e for p, e in factors)`` with primes strictly increasing."""

    factors: tuple[tuple[int, int], ...]
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise DomainError(f"malformed factorization {self.factors}")
            last = p

    def value(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        return out

    def divisor_count(self) -> int:
        return math.prod(e + 1 for _, e in self.factors)

    def __str__(self) -> str:
        body = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors) or "1"
        return body if self.sign > 0 else f"-1 * {body}"


def factorize(n: int) -> Factorization:
    """Factor a nonzero integer.

    Trial division by primes below 10**6, then Brent-Pollard rho with a fixed
    increment sequence. Output is fully deterministic.

    >>> str(factorize(952))
    '2^3 * 7 * 17'
    """
    if n == 0:
        raise DomainError("cannot factor zero")
    sign = -1 if n < 0 else 1
    m = abs(n)
    found: dict[int, int] = {}
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    if m > 1:
        if m <= TRIAL_BOUND * TRIAL_BOUND:
            # no factor below sqrt(m) survived trial division
            found[m] = found.get(m, 0) + 1
        else:
            _split_large(m, found)
    return Factorization(tuple(sorted(found.items())), sign)


def merge_factorizations(*parts: Factorization) -> Factorization:
    """Factorization of the product of already-factored integers."""
    acc: dict[int, int] = {}
    sign = 1
    for f in parts:
        sign *= f.sign
        for p, e in f.factors:
            acc[p] = acc.get(p, 0) + e
    return Factorization(tuple(sorted(acc.items())), sign)


def divisors(f: Factorization) -> Iterator[int]:
    """Yield every positive divisor of ``|f.value()|`` once, ascending."""
    divs = [1]
    for p, e in f.factors:
        pk = 1
        layer = []
        for _ in range(e):
            pk *= p
            layer.extend(d * pk for d in divs)
        divs.extend(layer)
    divs.sort()
    yield from divs
