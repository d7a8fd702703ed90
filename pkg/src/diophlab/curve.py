"""Exact chord-tangent arithmetic on ``y**2 = (x+e1)(x+e2)(x+e3)`` over Q.

Points are affine pairs of Fractions; the identity is the ``INFINITY``
singleton. The induced curve of a triple {a, b, c} has shifts (ab, ac, bc).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .arith import DomainError, as_fraction, is_square
from .dnset import SquareWitness, Triple, is_dn_set

__all__ = [
    "INFINITY",
    "CurveSpec",
    "InconsistencyError",
    "NamedPoints",
    "Point",
    "add",
    "double",
    "induced_curve",
    "is_integral",
    "is_on_curve",
    "multiply",
    "n_from_double",
    "named_points",
    "negate",
    "q_point",
    "q_values",
    "shifted_curve",
    "x2p_formula",
    "x2q_formula",
    "xs2p_formula",
]


class InconsistencyError(RuntimeError):
    """An exact identity that must hold was violated (indicates a bug)."""


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __init__(self, x, y):
        object.__setattr__(self, "x", as_fraction(x))
        object.__setattr__(self, "y", as_fraction(y))


CurvePoint = Union[Point, _Infinity]


@dataclass(frozen=True)
class CurveSpec:
    e1: int
    e2: int
    e3: int

    def __post_init__(self):
        if len({self.e1, self.e2, self.e3}) != 3:
            raise DomainError(f"singular cubic: shifts {self.e1}, {self.e2}, {self.e3}")

    def rhs(self, x: Fraction) -> Fraction:
        return (x + self.e1) * (x + self.e2) * (x + self.e3)

    @property
    def a2(self) -> int:
        return self.e1 + self.e2 + self.e3

    @property
    def a4(self) -> int:
        return self.e1 * self.e2 + self.e1 * self.e3 + self.e2 * self.e3


def induced_curve(t: Triple) -> CurveSpec:
    return CurveSpec(*t.products)


def shifted_curve(t: Triple) -> CurveSpec:
    """Induced curve translated by ``x -> x - ab``: ``y^2 = x(x+ac-ab)(x+bc-ab)``."""
    ab, ac, bc = t.products
    return CurveSpec(0, ac - ab, bc - ab)


def is_on_curve(spec: CurveSpec, pt: CurvePoint) -> bool:
    if pt is INFINITY:
        return True
    return pt.y * pt.y == spec.rhs(pt.x)


def is_integral(pt: CurvePoint) -> bool:
    return pt is not INFINITY and pt.x.denominator == 1 and pt.y.denominator == 1


def _require(spec: CurveSpec, pt: CurvePoint) -> None:
    if not is_on_curve(spec, pt):
        raise DomainError(f"{pt} is not on {spec}")


def negate(pt: CurvePoint) -> CurvePoint:
    if pt is INFINITY:
        return INFINITY
    return Point(pt.x, -pt.y)


def _add(spec: CurveSpec, p: CurvePoint, q: CurvePoint) -> CurvePoint:
    if p is INFINITY:
        return q
    if q is INFINITY:
        return p
    if p.x == q.x:
        if p.y != q.y or p.y == 0:
            return INFINITY
        x = p.x
        lam = (3 * x * x + 2 * spec.a2 * x + spec.a4) / (2 * p.y)
    else:
        lam = (q.y - p.y) / (q.x - p.x)
    x3 = lam * lam - spec.a2 - p.x - q.x
    return Point(x3, lam * (p.x - x3) - p.y)


def add(spec: CurveSpec, p: CurvePoint, q: CurvePoint) -> CurvePoint:
    _require(spec, p)
    _require(spec, q)
    return _add(spec, p, q)


def double(spec: CurveSpec, p: CurvePoint) -> CurvePoint:
    _require(spec, p)
    return _add(spec, p, p)


def multiply(spec: CurveSpec, k: int, p: CurvePoint) -> CurvePoint:
    """``k * p`` by double-and-add; negative k allowed."""
    _require(spec, p)
    if k < 0:
        k, p = -k, negate(p)
    acc: CurvePoint = INFINITY
    while k:
        if k & 1:
            acc = _add(spec, acc, p)
        p = _add(spec, p, p)
        k >>= 1
    return acc


@dataclass(frozen=True)
class NamedPoints:
    A: Point
    B: Point
    C: Point
    P: Point
    S: Optional[Point] = None
    R: Optional[Point] = None

    def as_dict(self) -> dict[str, Point]:
        return {k: v for k, v in vars(self).items() if v is not None}


def named_points(t: Triple) -> NamedPoints:
    """A, B, C (2-torsion), P = (0, abc), and S = (1, rst), R with 2R = S for D(1) triples."""
    a, b, c = t
    ab, ac, bc = t.products
    pts = dict(A=Point(-bc, 0), B=Point(-ac, 0), C=Point(-ab, 0), P=Point(0, a * b * c))
    w = is_dn_set(t, 1)
    if w is not None:
        r, s, tt = w.r, w.s, w.t
        pts["S"] = Point(1, r * s * tt)
        pts["R"] = Point(r * s + r * tt + s * tt + 1, (r + s) * (r + tt) * (s + tt))
    return NamedPoints(**pts)


def x2p_formula(t: Triple) -> Fraction:
    """x(2P) = (a+b+c)^2/4 - ab - ac - bc."""
    a, b, c = t
    return Fraction((a + b + c) ** 2, 4) - a * b - a * c - b * c


def xs2p_formula(t: Triple) -> Fraction:
    """Closed form for x(S + 2P) on a D(1) triple.

    The denominator is ``q1 = (a+b+c)^2 - 4(ab+ac+bc) - 4``, which vanishes
    exactly on regular triples (there 2P = -S and S + 2P is the identity).
    """
    w = is_dn_set(t, 1)
    if w is None:
        raise DomainError(f"{t} is not a D(1)-set")
    a, b, c = t
    s1 = a + b + c
    disc = s1 * s1 - 4 * (a * b + a * c + b * c)
    den = disc - 4
    if den == 0:
        raise DomainError(f"{t} is regular: x(S+2P) denominator vanishes")
    num = 8 * a * b * c + disc * s1 + 8 * w.r * w.s * w.t
    return Fraction(-(s1 * s1), 4) - 1 + Fraction(num * num, 4 * den * den)


def q_values(t) -> tuple[int, int, int]:
    """The three polynomials whose product vanishes iff x(S+2P) = a+b+c.

    Accepts a Triple or any iterable of three integers.
    """
    a, b, c = t
    q1 = -4 + a * a - 2 * a * b + b * b - 2 * a * c - 2 * b * c + c * c
    q2 = (a * a - 4 * a - 2 * a * c - 4 * c + c * c - 2 * a * b - 4 * b
          - 8 * a * b * c - 2 * b * c + b * b)
    q3 = (-4 * a - 4 * b - 4 * c - 2 * a * b - 2 * a * c - 2 * b * c - 4 * a * b * c
          + a**2 + b**2 + c**2 - 2 * a**2 * b - 2 * a**2 * c - 2 * a * b**2 - 2 * a * c**2
          - 2 * b**2 * c - 2 * b * c**2 - 2 * a**2 * b**2 + 2 * a**3 + 2 * b**3
          + 2 * c**3 + a**4 + b**4 + c**4 - 2 * a**2 * c**2 - 2 * b**2 * c**2)
    return q1, q2, q3


def n_from_double(t: Triple, pt: CurvePoint) -> Optional[tuple[int, SquareWitness]]:
    """If x(2T) is a nonzero integer, return it with its D(n) witness.

    A point of 2E(Q) with integral x always gives a D(n)-set, so a failed
    membership check raises InconsistencyError.
    """
    spec = induced_curve(t)
    twice = double(spec, pt)
    if twice is INFINITY or twice.x.denominator != 1 or twice.x == 0:
        return None
    n = int(twice.x)
    w = is_dn_set(t, n)
    if w is None:
        raise InconsistencyError(f"x(2T) = {n} but {t} is not a D({n})-set")
    return n, w


def inf1_triple(i: int) -> Triple:
    return Triple(2 * (i + 1) * i, 2 * (i + 2) * (i + 1), 4 * (2 * i * i + 4 * i + 1) * (2 * i + 3) * (2 * i + 1))


def q_point(i: int) -> Optional[Point]:
    """Extra point on the induced curve of the i-th first-family triple.

    Exists iff ``i(3i+1)`` is a square. Returned in induced (unshifted)
    coordinates with ``y >= 0``.
    """
    if i < 1:
        raise DomainError("i must be a positive integer")
    if is_square(i * (3 * i + 1)) is None:
        return None
    t = inf1_triple(i)
    xs = -4 * (4 * i * i + 9 * i + 4) * (4 * i * i + 9 * i + 3) * (i + 1) ** 2
    rhs = shifted_curve(t).rhs(Fraction(xs))
    y = is_square(int(rhs))
    if y is None:
        raise InconsistencyError(f"q_point({i}): right-hand side {rhs} is not a square")
    pt = Point(xs - t.a * t.b, y)
    if not is_on_curve(induced_curve(t), pt):
        raise InconsistencyError(f"q_point({i}) is off the induced curve")
    return pt


def x2q_formula(i: int) -> Fraction:
    """x(2Q) in induced coordinates, from the printed rational function of i."""
    if i < 1 or is_square(i * (3 * i + 1)) is None:
        raise DomainError(f"i(3i+1) must be a perfect square, got i = {i}")
    coeffs = (64, 576, 2100, 4020, 4389, 2794, 1025, 200, 16)
    num = 0
    for co in coeffs:
        num = num * i + co
    return Fraction(num, i * (3 * i + 1))
