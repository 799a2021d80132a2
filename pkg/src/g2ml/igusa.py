"""Invariants of genus-2 curves y^2 = f(x) for a degree 5 or 6 sextic f.

The classical generators of the invariant ring of binary sextics are
evaluated from frozen monomial tables (see scripts/derive_invariant_tables.py
for their derivation and verification).  A curve's isomorphism class is the
point [J2 : J4 : J6 : J10] in the weighted projective space with weights
(2, 4, 6, 10), with J10 != 0; class equality is decided exactly through the
scaling-invariant triple (t1, t2, t3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ._invariant_tables import I2_TABLE, I4_TABLE, I6_TABLE, I10_TABLE
from .wproj import (HALVED_WEIGHTS, MODULI_WEIGHTS, WeightedPoint, normalize)


class SingularSexticError(ValueError):
    """The sextic has a repeated root (vanishing discriminant)."""


@dataclass(frozen=True)
class BinarySextic:
    """Coefficients (a0, ..., a6) of f(x) = a6 x^6 + ... + a1 x + a0."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != 7:
            raise ValueError("a binary sextic needs 7 coefficients a0..a6")
        object.__setattr__(
            self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if self.coeffs[6] == 0 and self.coeffs[5] == 0:
            raise ValueError("degree must be 5 or 6 (a6 and a5 both zero)")

    @classmethod
    def from_ascending(cls, *coeffs) -> "BinarySextic":
        """Build from a0..a6, padding missing high coefficients with zero."""
        cs = list(coeffs) + [0] * (7 - len(coeffs))
        return cls(tuple(Fraction(c) for c in cs))

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def integer_coeffs(self) -> tuple[int, ...]:
        """Clear denominators; rescaling f is unobservable after normalization."""
        lcd = math.lcm(*(c.denominator for c in self.coeffs))
        return tuple(int(c * lcd) for c in self.coeffs)


def _eval_table(table, coeffs) -> int:
    total = 0
    for coef, expo in table:
        term = coef
        for c, e in zip(coeffs, expo):
            if e:
                term *= c ** e
        total += term
    return total


def sextic_invariants(f: BinarySextic) -> tuple[int, int, int, int]:
    """The degree (2, 4, 6, 10) classical invariants on cleared coefficients."""
    cs = f.integer_coeffs()
    return (_eval_table(I2_TABLE, cs), _eval_table(I4_TABLE, cs),
            _eval_table(I6_TABLE, cs), _eval_table(I10_TABLE, cs))


@dataclass(frozen=True)
class ModuliPoint:
    """Normalized [J2 : J4 : J6 : J10] with J10 != 0, weights (2, 4, 6, 10)."""

    J2: int
    J4: int
    J6: int
    J10: int

    def __post_init__(self):
        if self.J10 == 0:
            raise ValueError("J10 must be nonzero for a genus-2 moduli point")

    @classmethod
    def from_raw(cls, j2, j4, j6, j10) -> "ModuliPoint":
        """Clear denominators, then divide out the weighted gcd."""
        vals = [Fraction(v) for v in (j2, j4, j6, j10)]
        lcd = math.lcm(*(v.denominator for v in vals))
        ints = [int(v * lcd ** q) for v, q in zip(vals, MODULI_WEIGHTS)]
        pt = normalize(WeightedPoint(tuple(ints), MODULI_WEIGHTS))
        return cls(*pt.coords)

    @property
    def coords(self) -> tuple[int, int, int, int]:
        return (self.J2, self.J4, self.J6, self.J10)

    def as_weighted_point(self) -> WeightedPoint:
        return WeightedPoint(self.coords, MODULI_WEIGHTS)

    def to_json_obj(self) -> dict:
        return {"J2": str(self.J2), "J4": str(self.J4),
                "J6": str(self.J6), "J10": str(self.J10)}

    @classmethod
    def from_json_obj(cls, obj) -> "ModuliPoint":
        return cls(int(obj["J2"]), int(obj["J4"]),
                   int(obj["J6"]), int(obj["J10"]))


@dataclass(frozen=True, order=True)
class AbsoluteTriple:
    """Scaling-invariant coordinates keying a moduli class exactly."""

    t1: Fraction
    t2: Fraction
    t3: Fraction
    variant: str = "t"

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.t1, self.t2, self.t3)

    def to_json_obj(self) -> dict:
        def fmt(v: Fraction) -> str:
            return f"{v.numerator}/{v.denominator}"
        return {"t1": fmt(self.t1), "t2": fmt(self.t2), "t3": fmt(self.t3),
                "variant": self.variant}

    @classmethod
    def from_json_obj(cls, obj) -> "AbsoluteTriple":
        return cls(Fraction(obj["t1"]), Fraction(obj["t2"]),
                   Fraction(obj["t3"]), obj.get("variant", "t"))


def igusa_invariants(f: BinarySextic) -> ModuliPoint:
    """Normalized moduli point of the curve y^2 = f(x).

    The coordinates are the degree (2, 4, 6, 10) root-difference-product
    invariants themselves; in particular J10 is exactly the discriminant.
    Raises SingularSexticError when the discriminant vanishes.
    """
    j2, j4, j6, j10 = sextic_invariants(f)
    if j10 == 0:
        raise SingularSexticError("sextic has a repeated root")
    return ModuliPoint.from_raw(j2, j4, j6, j10)


def absolute_t(p: ModuliPoint) -> AbsoluteTriple:
    """(J2^5/J10, J4^5/J10^2, J6^5/J10^3): defined on the whole moduli space."""
    j2, j4, j6, j10 = (Fraction(v) for v in p.coords)
    return AbsoluteTriple(j2 ** 5 / j10, j4 ** 5 / j10 ** 2, j6 ** 5 / j10 ** 3)


def absolute_i(p: ModuliPoint) -> AbsoluteTriple:
    """(J2^30/J10^6, J4^15/J10^6, J6^10/J10^6)."""
    j2, j4, j6, j10 = (Fraction(v) for v in p.coords)
    d = j10 ** 6
    return AbsoluteTriple(j2 ** 30 / d, j4 ** 15 / d, j6 ** 10 / d,
                          variant="i")


def same_moduli(p: ModuliPoint, q: ModuliPoint) -> bool:
    """Exact equality of isomorphism classes over the algebraic closure."""
    return absolute_t(p) == absolute_t(q)


def veronese(p: ModuliPoint) -> WeightedPoint:
    """Coordinatewise squares, normalized under the halved weights (1,2,3,5)."""
    squared = WeightedPoint(tuple(c * c for c in p.coords), HALVED_WEIGHTS)
    return normalize(squared)
