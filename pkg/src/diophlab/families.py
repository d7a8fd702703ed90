"""Regular extensions and the explicit infinite families of multi-n triples.

Every constructor re-verifies its output with exact square tests, so a
transcription error in a polynomial surfaces as an InconsistencyError.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .arith import DomainError, is_square
from .curve import InconsistencyError, inf1_triple, x2p_formula
from .dnset import Triple, is_dn_set

__all__ = [
    "FamilyOutput",
    "extend_pair_regular",
    "family_k",
    "inf1",
    "inf2",
    "inf3",
    "is_diophantine",
    "rec_sequence",
    "regc_extension",
    "regular_quad_d",
]


@dataclass(frozen=True)
class FamilyOutput:
    triple: Triple
    n_list: tuple[int, ...]
    provenance: str


def is_diophantine(*xs: int) -> bool:
    """True if all pairwise products plus one are squares."""
    return all(is_square(x * y + 1) is not None for x, y in combinations(xs, 2))


def _poly(coeffs, x: int) -> int:
    acc = 0
    for co in coeffs:
        acc = acc * x + co
    return acc


def _verified(triple: Triple, ns, provenance: str) -> FamilyOutput:
    for n in ns:
        if is_dn_set(triple, n) is None:
            raise InconsistencyError(f"{provenance}: {triple} is not a D({n})-set")
    return FamilyOutput(triple, tuple(ns), provenance)


def extend_pair_regular(a: int, b: int) -> int:
    """c = a + b + 2r where ab + 1 = r^2."""
    r = is_square(a * b + 1)
    if r is None:
        raise DomainError(f"{a}*{b}+1 is not a square")
    c = a + b + 2 * r
    if not is_diophantine(a, b, c):
        raise InconsistencyError(f"regular extension {a}, {b}, {c} is not Diophantine")
    return c


def regular_quad_d(t: Triple) -> int:
    """d = a + b + c + 2abc + 2rst completing a regular Diophantine quadruple."""
    w = is_dn_set(t, 1)
    if w is None:
        raise DomainError(f"{t} is not a Diophantine triple")
    a, b, c = t
    d = a + b + c + 2 * a * b * c + 2 * w.r * w.s * w.t
    if not is_diophantine(a, b, c, d):
        raise InconsistencyError(f"{{{a}, {b}, {c}, {d}}} is not a Diophantine quadruple")
    return d


def regc_extension(a: int, b: int, sign: int = 1) -> Optional[int]:
    """c = 2 + a + b + 4ab +/- 2 sqrt((2a+1)(2b+1)(ab+1)), i.e. the root of q2 = 0.

    Returns None when the radicand is not a square or c is degenerate
    (0, 2, a or b).
    """
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    root = is_square((2 * a + 1) * (2 * b + 1) * (a * b + 1))
    if root is None:
        return None
    c = 2 + a + b + 4 * a * b + sign * 2 * root
    if c in (0, 2, a, b):
        return None
    if is_diophantine(2, a, b) and not is_diophantine(2, a, b, c):
        raise InconsistencyError(f"{{2, {a}, {b}, {c}}} should be a regular quadruple")
    return c


def rec_sequence(a: int, count: int) -> list[int]:
    """b_0 .. b_{count-1} with {2, a, b_i, b_{i+1}} regular quadruples for i >= 1."""
    k = is_square(2 * a + 1)
    if k is None or a < 1:
        raise DomainError(f"2a+1 must be an odd square with a >= 1, got a = {a}")
    if count < 3:
        raise DomainError("count must be at least 3")
    m = 4 * k * k - 1
    seq = [0, 2 + a + 2 * k, 4 * k * (k + 2) * (k + a)]
    while len(seq) < count:
        seq.append(m * seq[-1] - m * seq[-2] + seq[-3])
    for lo, hi in zip(seq[1:], seq[2:]):
        if not is_diophantine(2, a, lo, hi) or regc_extension(a, lo, 1) != hi:
            raise InconsistencyError(f"{{2, {a}, {lo}, {hi}}} is not a regular quadruple")
    return seq


def inf1(i: int) -> FamilyOutput:
    if i < 1:
        raise DomainError("i must be a positive integer")
    t = inf1_triple(i)
    n2 = _poly((32, 128, 172, 88, 16), i)
    n3 = _poly((256, 2048, 6720, 11648, 11456, 6400, 1932, 280, 16), i)
    if n2 != t.a + t.b + t.c or n3 != x2p_formula(t):
        raise InconsistencyError(f"inf1({i}): polynomial values disagree with a+b+c / x(2P)")
    return _verified(t, (1, n2, n3), f"inf1 i={i}")


def inf2(i: int) -> FamilyOutput:
    if i < 1:
        raise DomainError("i must be a positive integer")
    a = 2 * (i + 1) * i
    b = 4 * (2 * i * i + 4 * i + 1) * (2 * i + 3) * (2 * i + 1)
    c = 2 * (4 * i + 1) * (4 * i + 3) * (4 * i * i + 9 * i + 4) * (4 * i * i + 7 * i + 1)
    t = Triple(a, b, c)
    n2 = _poly((512, 2560, 4832, 4352, 1980, 432, 36), i)
    n3 = _poly((65536, 655360, 2859008, 7151616, 11346176, 11932672, 8450112,
                4012672, 1249280, 243840, 27612, 1584, 36), i)
    if n2 != a + b + c or n3 != x2p_formula(t):
        raise InconsistencyError(f"inf2({i}): polynomial values disagree with a+b+c / x(2P)")
    return _verified(t, (1, n2, n3), f"inf2 i={i}")


def inf3(a: int, i: int, generalize: bool = False) -> FamilyOutput:
    """Triple {a, b_i, b_{i+1}} from the recurrence, with n2 = a+b_i+b_{i+1}, n3 = x(2P).

    Proven for a = 4 only. Other a need ``generalize=True``; the memberships
    are then checked per instance, no general claim is made.
    """
    if a != 4 and not generalize:
        raise DomainError("inf3 is established for a = 4; pass generalize=True for other a")
    if i < 1:
        raise DomainError("i must be a positive integer")
    seq = rec_sequence(a, i + 2)
    bi, bj = seq[i], seq[i + 1]
    t = Triple(a, bi, bj)
    n2 = a + bi + bj
    n3 = x2p_formula(t)
    if n3.denominator != 1:
        raise InconsistencyError(f"inf3({a}, {i}): x(2P) = {n3} is not integral")
    tag = f"inf3 a={a} i={i}" + (" (unproven generalization)" if a != 4 else "")
    return _verified(t, (1, n2, int(n3)), tag)


def family_k(k: int) -> tuple[Triple, Triple]:
    """{k-1, 4k, 16k^3-4k} and {k+1, 4k, 16k^3-4k} for odd k >= 3."""
    if k < 3 or k % 2 == 0:
        raise DomainError(f"k must be odd and >= 3, got {k}")
    big = 16 * k**3 - 4 * k
    out = (Triple(k - 1, 4 * k, big), Triple(k + 1, 4 * k, big))
    for t in out:
        if is_dn_set(t, 1) is None:
            raise InconsistencyError(f"{t} is not a Diophantine triple")
    return out
