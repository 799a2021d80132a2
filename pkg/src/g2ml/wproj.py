"""Exact arithmetic on weighted integer tuples.

Points of a weighted projective space over the rationals are represented by
integer coordinate tuples together with a tuple of positive integer weights.
Everything here is exact: scalar action, weighted gcds, normalization, and
height comparisons all run on arbitrary-precision integers and Fractions.
Floats appear only as display values, always accompanied by an exact
certificate.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .primes import PartialFactorization, factorize, valuation


@dataclass(frozen=True)
class WeightSystem:
    """Ordered tuple of positive integer weights (q0, ..., qn)."""

    weights: tuple[int, ...]

    def __post_init__(self):
        if not self.weights:
            raise ValueError("weight system must be non-empty")
        if any(not isinstance(q, int) or q < 1 for q in self.weights):
            raise ValueError("weights must be positive integers")

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    @property
    def common_divisor(self) -> int:
        """gcd of all weights; the exponent granularity of radical scalars."""
        return math.gcd(*self.weights)

    def to_json_obj(self) -> list[int]:
        return list(self.weights)

    @classmethod
    def from_json_obj(cls, obj) -> "WeightSystem":
        return cls(tuple(int(q) for q in obj))


# the two spaces the moduli work lives in
MODULI_WEIGHTS = WeightSystem((2, 4, 6, 10))
HALVED_WEIGHTS = WeightSystem((1, 2, 3, 5))


@dataclass(frozen=True)
class WeightedPoint:
    """Integer coordinate tuple with its weight system; not all zero."""

    coords: tuple[int, ...]
    system: WeightSystem

    def __post_init__(self):
        if len(self.coords) != len(self.system):
            raise ValueError("coordinate/weight length mismatch")
        if any(not isinstance(c, int) for c in self.coords):
            raise ValueError("coordinates must be integers")
        if all(c == 0 for c in self.coords):
            raise ValueError("the all-zero tuple is not a projective point")

    def to_json_obj(self) -> dict:
        return {"coords": [str(c) for c in self.coords],
                "weights": self.system.to_json_obj()}

    @classmethod
    def from_json_obj(cls, obj) -> "WeightedPoint":
        return cls(tuple(int(c) for c in obj["coords"]),
                   WeightSystem.from_json_obj(obj["weights"]))


@dataclass(frozen=True)
class RadicalScalar:
    """Positive real of the form base**(1/root), stored exactly."""

    base: int
    root: int

    def __post_init__(self):
        if self.base < 1 or self.root < 1:
            raise ValueError("radical scalar needs base >= 1 and root >= 1")

    @classmethod
    def from_prime_powers(cls, powers: dict[int, int], granularity: int
                          ) -> "RadicalScalar":
        """Build (prod p^k_p)^(1/granularity), reducing the radical."""
        powers = {p: k for p, k in powers.items() if k > 0}
        if not powers:
            return cls(1, 1)
        shrink = math.gcd(granularity, *powers.values())
        base = 1
        for p, k in powers.items():
            base *= p ** (k // shrink)
        return cls(base, granularity // shrink)

    @property
    def is_one(self) -> bool:
        return self.base == 1

    def pow_weight(self, q: int) -> int:
        """Exact integer value of self**q; q must be a multiple of root."""
        if q % self.root:
            raise ValueError(f"{q} is not a multiple of the root {self.root}")
        return self.base ** (q // self.root)

    def __float__(self) -> float:
        if self.base == 1:
            return 1.0
        return math.exp(math.log(self.base) / self.root)

    def to_json_obj(self) -> dict:
        return {"base": self.base, "root": self.root}

    @classmethod
    def from_json_obj(cls, obj) -> "RadicalScalar":
        return cls(int(obj["base"]), int(obj["root"]))


@dataclass(frozen=True)
class Height:
    """Displayable height with the exact certificate of where the max sits."""

    value: float
    argmax: int
    coord: int
    weight: int


def scalar_star(lam: Fraction, p: WeightedPoint) -> tuple[Fraction, ...]:
    """The weighted scalar action: coordinate i becomes lam**q_i * x_i."""
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("scalar action requires a nonzero scalar")
    return tuple(lam ** q * x for q, x in zip(p.system, p.coords))


def _point_from_fractions(vals, system: WeightSystem) -> WeightedPoint:
    coords = []
    for v in vals:
        if v.denominator != 1:
            raise ValueError("expected integral coordinates")
        coords.append(v.numerator)
    return WeightedPoint(tuple(coords), system)


def _prime_exponents(p: WeightedPoint, budget=None) -> dict[int, list]:
    """Map prime -> [(v_p(x_i), q_i) for nonzero x_i], primes from gcd."""
    g0 = 0
    for c in p.coords:
        g0 = math.gcd(g0, c)
    if g0 == 1:
        return {}
    kwargs = {} if budget is None else {"budget": budget}
    try:
        factors = factorize(g0, **kwargs)
    except PartialFactorization as exc:
        warnings.warn(
            "weighted gcd reported as a lower bound: cofactor "
            f"{exc.cofactor} left unfactored", RuntimeWarning)
        factors = exc.factors
    out = {}
    for prime in factors:
        out[prime] = [(valuation(c, prime), q)
                      for c, q in zip(p.coords, p.system) if c != 0]
    return out


def wgcd(p: WeightedPoint, budget=None) -> int:
    """Largest integer d with d**q_i dividing x_i for every coordinate."""
    d = 1
    for prime, pairs in _prime_exponents(p, budget).items():
        e = min(v // q for v, q in pairs)
        d *= prime ** e
    return d


def abs_wgcd(p: WeightedPoint, budget=None) -> RadicalScalar:
    """Largest real d with every d**q_i an integer dividing x_i.

    The exponent of each prime is the largest multiple of 1/g not exceeding
    min_i v_p(x_i)/q_i, where g is the gcd of the weights; zero coordinates
    impose no constraint.
    """
    g = p.system.common_divisor
    powers = {}
    for prime, pairs in _prime_exponents(p, budget).items():
        bound = min(Fraction(v, q) for v, q in pairs)
        powers[prime] = math.floor(g * bound)
    return RadicalScalar.from_prime_powers(powers, g)


def normalize(p: WeightedPoint, budget=None) -> WeightedPoint:
    """Divide by the weighted gcd: the canonical representative with wgcd 1."""
    d = wgcd(p, budget)
    if d == 1:
        return p
    return WeightedPoint(tuple(x // d ** q for x, q in zip(p.coords, p.system)),
                         p.system)


def abs_normalize(p: WeightedPoint, budget=None) -> WeightedPoint:
    """Divide by the absolute weighted gcd; coordinates stay integral."""
    d = abs_wgcd(p, budget)
    if d.is_one:
        return p
    return WeightedPoint(
        tuple(x // d.pow_weight(q) for x, q in zip(p.coords, p.system)),
        p.system)


def height_leq(p: WeightedPoint, bound, strict: bool = False) -> bool:
    """Exact decision of height(p) <= bound (or < bound when strict).

    The height of the normalized representative is max_i |x_i|**(1/q_i);
    each coordinate is compared through |x_i| * den**q_i vs num**q_i, so no
    floating point is involved.
    """
    bound = Fraction(bound)
    if bound <= 0:
        raise ValueError("height bound must be positive")
    q = normalize(p)
    num, den = bound.numerator, bound.denominator
    for x, w in zip(q.coords, q.system):
        lhs = abs(x) * den ** w
        rhs = num ** w
        if lhs > rhs or (strict and lhs == rhs):
            return False
    return True


def _cmp_root_powers(a: int, qa: int, b: int, qb: int) -> int:
    """Sign of a**(1/qa) - b**(1/qb) for nonnegative integers, exactly."""
    l = math.lcm(qa, qb)
    lhs = a ** (l // qa)
    rhs = b ** (l // qb)
    return (lhs > rhs) - (lhs < rhs)


def height(p: WeightedPoint, budget=None) -> Height:
    """Weighted height of the normalized representative.

    The float is display-only; the certificate (argmax index, coordinate,
    weight) supports exact re-comparison against any rational bound.
    """
    q = normalize(p, budget)
    best = 0
    for i in range(1, len(q.coords)):
        if _cmp_root_powers(abs(q.coords[i]), q.system.weights[i],
                            abs(q.coords[best]), q.system.weights[best]) > 0:
            best = i
    coord = q.coords[best]
    w = q.system.weights[best]
    value = 0.0 if coord == 0 else math.exp(math.log(abs(coord)) / w)
    return Height(value, best, coord, w)


def abs_height(p: WeightedPoint, budget=None) -> Height:
    """Height after absolute normalization."""
    return height(abs_normalize(p, budget), budget)
