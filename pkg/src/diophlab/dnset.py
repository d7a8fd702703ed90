"""D(n)-set membership, complete n-spectra and denominator clearing."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .arith import DomainError, Factorization, as_fraction, divisors, factorize, is_square

__all__ = [
    "ScaledSolution",
    "SpectrumEntry",
    "SquareWitness",
    "Triple",
    "is_dn_set",
    "is_rational_solution",
    "minimal_scale",
    "scale_solutions",
    "spectrum",
    "spectrum_bruteforce",
    "spectrum_from_factorization",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True, init=False)
class Triple:
    """Three distinct nonzero integers, stored ascending."""

    a: int
    b: int
    c: int

    def __init__(self, a: int, b: int, c: int):
        vals = sorted(int(v) for v in (a, b, c))
        if 0 in vals:
            raise DomainError(f"triple entries must be nonzero: {a}, {b}, {c}")
        if len(set(vals)) != 3:
            raise DomainError(f"triple entries must be distinct: {a}, {b}, {c}")
        object.__setattr__(self, "a", vals[0])
        object.__setattr__(self, "b", vals[1])
        object.__setattr__(self, "c", vals[2])

    @classmethod
    def parse(cls, text: str) -> "Triple":
        parts = [p.strip() for p in text.replace("{", "").replace("}", "").split(",")]
        if len(parts) != 3:
            raise DomainError(f"expected three comma-separated integers, got {text!r}")
        try:
            return cls(*(int(p) for p in parts))
        except ValueError as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"not an integer triple: {text!r}") from None

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    @property
    def products(self) -> tuple[int, int, int]:
        """``(ab, ac, bc)``."""
        return self.a * self.b, self.a * self.c, self.b * self.c

    def scaled(self, z: int) -> "Triple":
        return Triple(self.a * z, self.b * z, self.c * z)

    def __str__(self) -> str:
        return f"{{{self.a}, {self.b}, {self.c}}}"


@dataclass(frozen=True)
class SquareWitness:
    """Roots with ``r**2 = bc+n``, ``s**2 = ca+n``, ``t**2 = ab+n``."""

    r: int
    s: int
    t: int

    def check(self, triple: Triple, n: int) -> bool:
        ab, ac, bc = triple.products
        return self.r**2 == bc + n and self.s**2 == ac + n and self.t**2 == ab + n


@dataclass(frozen=True)
class SpectrumEntry:
    n: int
    witness: SquareWitness
    degenerate: bool = False


@dataclass(frozen=True)
class ScaledSolution:
    z: int
    scaled_triple: Triple
    n_values: tuple[int, ...]


def is_dn_set(triple: Triple, n: int) -> Optional[SquareWitness]:
    """Witness that ``triple`` is a D(n)-set, or None."""
    if n == 0:
        raise DomainError("n must be nonzero")
    ab, ac, bc = triple.products
    t = is_square(ab + n)
    if t is None:
        return None
    s = is_square(ac + n)
    if s is None:
        return None
    r = is_square(bc + n)
    if r is None:
        return None
    return SquareWitness(r, s, t)


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    num = is_square(q.numerator)
    if num is None:
        return None
    den = is_square(q.denominator)
    if den is None:
        return None
    return Fraction(num, den)


def is_rational_solution(triple: Triple, x) -> Optional[tuple[Fraction, Fraction, Fraction]]:
    """Nonnegative rational roots of ``(x+ab, x+ac, x+bc)`` if all are squares."""
    x = as_fraction(x)
    roots = []
    for p in triple.products:
        root = _rational_sqrt(x + p)
        if root is None:
            return None
        roots.append(root)
    return tuple(roots)


def _entry(triple: Triple, n: int) -> Optional[SpectrumEntry]:
    w = is_dn_set(triple, n)
    if w is None:
        return None
    return SpectrumEntry(n, w, degenerate=0 in (w.r, w.s, w.t))


def spectrum_from_factorization(triple: Triple, nfac: Factorization) -> list[SpectrumEntry]:
    """Spectrum given a factorization of ``max(products) - min(products)``.

    With ``p1 < p2 < p3`` the sorted products, any valid n has roots
    ``r**2 = p3 + n`` and ``t**2 = p1 + n``, so ``d = r - t`` divides
    ``N = p3 - p1`` and ``r = (d + N/d) / 2``.
    """
    p1, p2, p3 = sorted(triple.products)
    big_n = p3 - p1
    if nfac.value() != big_n:
        raise DomainError(f"factorization {nfac} does not match N = {big_n}")
    found = {}
    for d in divisors(nfac):
        e = big_n // d
        if d > e:
            break
        if (d ^ e) & 1:
            continue
        r = (d + e) // 2
        n = r * r - p3
        if n == 0 or n in found:
            continue
        entry = _entry(triple, n)
        if entry is not None:
            found[n] = entry
    return [found[n] for n in sorted(found)]


def spectrum(triple: Triple) -> list[SpectrumEntry]:
    """All nonzero n for which ``triple`` is a D(n)-set, ascending, with witnesses."""
    p1, _, p3 = sorted(triple.products)
    return spectrum_from_factorization(triple, factorize(p3 - p1))


def spectrum_bruteforce(triple: Triple, bound: int) -> list[SpectrumEntry]:
    """Scan ``n = -bound .. bound`` directly. Test oracle for :func:`spectrum`."""
    if bound <= 0:
        raise DomainError("bound must be positive")
    out = []
    for n in range(-bound, bound + 1):
        if n == 0:
            continue
        entry = _entry(triple, n)
        if entry is not None:
            out.append(entry)
    return out


def minimal_scale(xs: Iterable) -> int:
    """Smallest z > 0 with ``z**2 * x`` integral for every x."""
    exps: dict[int, int] = {}
    for x in xs:
        den = as_fraction(x).denominator
        if den == 1:
            continue
        for p, e in factorize(den).factors:
            exps[p] = max(exps.get(p, 0), e)
    return math.prod(p ** ((e + 1) // 2) for p, e in exps.items())


def scale_solutions(triple: Triple, xs: Sequence) -> ScaledSolution:
    """Clear denominators of rational solutions x to obtain integer D(n) memberships.

    Every x must make ``x+ab``, ``x+ac``, ``x+bc`` rational squares. With z
    minimal such that all ``z**2 * x`` are integers, ``{az, bz, cz}`` is a
    D(z**2 x)-set for each x.
    """
    fracs = [as_fraction(x) for x in xs]
    if not fracs:
        raise DomainError("need at least one rational solution")
    if len(set(fracs)) != len(fracs):
        raise DomainError("rational solutions must be pairwise distinct")
    for x in fracs:
        if is_rational_solution(triple, x) is None:
            raise DomainError(f"x = {x} does not make all of x+ab, x+ac, x+bc rational squares")
    z = minimal_scale(fracs)
    scaled = triple.scaled(z)
    ns = []
    for x in fracs:
        n = x * z * z
        assert n.denominator == 1
        n = int(n)
        if n == 0:
            log.warning("dropping x = 0 (gives n = 0)")
            continue
        if is_dn_set(scaled, n) is None:
            raise AssertionError(f"{scaled} failed D({n}) after scaling")
        ns.append(n)
    return ScaledSolution(z, scaled, tuple(ns))
