"""Split-Jacobian loci: membership and rational-point generators.

The locus of curves with an extra involution is cut out by an explicit
weighted-degree-30 polynomial in (J2, J4, J6, J10), kept here as a monomial
table.  Points on the degree-3 locus come from a two-parameter family of
curves with an exactly evaluated moduli-point formula; points on the
degree-5 locus come from a constrained three-parameter family whose
constraint surface is sliced into rational curves and parametrized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .igusa import (BinarySextic, ModuliPoint, SingularSexticError,
                    igusa_invariants, same_moduli)
from .sampling import child_rng, random_rational


class DegenerateParametersError(ValueError):
    """Parameter values land on the excluded degeneracy divisor."""


# ---------------------------------------------------------------------------
# the extra-involution locus: J30 = 0
# ---------------------------------------------------------------------------

# monomials as (coefficient, (e2, e4, e6, e10)); every entry has weighted
# degree 2*e2 + 4*e4 + 6*e6 + 10*e10 = 30
J30_TABLE = (
    (41472, (0, 5, 0, 1)),
    (159, (3, 6, 0, 0)),
    (-236196, (5, 0, 0, 2)),
    (-80, (1, 7, 0, 0)),
    (104976000, (2, 0, 1, 2)),
    (-1728, (2, 5, 1, 0)),
    (6048, (1, 4, 2, 0)),
    (-9331200, (0, 2, 2, 1)),
    (-2099520000, (0, 1, 1, 2)),
    (12, (6, 3, 1, 0)),
    (-54, (5, 2, 2, 0)),
    (108, (4, 1, 3, 0)),
    (1332, (4, 4, 1, 0)),
    (-8910, (3, 3, 2, 0)),
    (29376, (2, 2, 3, 0)),
    (-47952, (1, 1, 4, 0)),
    (-1, (7, 4, 0, 0)),
    (-81, (3, 0, 4, 0)),
    (-78, (5, 5, 0, 0)),
    (384, (0, 6, 1, 0)),
    (-6912, (0, 3, 3, 0)),
    (507384000, (1, 2, 0, 2)),
    (-19245600, (3, 1, 0, 2)),
    (-592272, (2, 4, 0, 1)),
    (77436, (4, 3, 0, 1)),
    (4743360, (1, 3, 1, 1)),
    (-870912, (3, 2, 1, 1)),
    (3090960, (2, 1, 2, 1)),
    (-5832, (5, 1, 1, 1)),
    (-125971200000, (0, 0, 0, 3)),
    (31104, (0, 0, 5, 0)),
    (972, (6, 2, 0, 1)),
    (8748, (4, 0, 2, 1)),
    (-3499200, (1, 0, 3, 1)),
)


def j30(p: ModuliPoint) -> int:
    """Exact value of the defining polynomial of the extra-involution locus.

    The value depends on the representative; its vanishing does not.
    """
    j2, j4, j6, j10 = p.coords
    total = 0
    for coef, (e2, e4, e6, e10) in J30_TABLE:
        total += coef * j2 ** e2 * j4 ** e4 * j6 ** e6 * j10 ** e10
    return total


def j30_cubic_in_j10(j2: int, j4: int, j6: int) -> tuple[int, int, int, int]:
    """Coefficients (c3, c2, c1, c0) of J30 viewed as a cubic in J10."""
    cs = [0, 0, 0, 0]
    for coef, (e2, e4, e6, e10) in J30_TABLE:
        cs[e10] += coef * j2 ** e2 * j4 ** e4 * j6 ** e6
    return cs[3], cs[2], cs[1], cs[0]


def in_l2(p: ModuliPoint) -> bool:
    return j30(p) == 0


def l2_curve_point(a, b) -> ModuliPoint:
    """Moduli point of y^2 = x^6 + a x^4 + b x^2 + 1.

    The x -> -x involution of the curve forces membership in the
    extra-involution locus; membership is certified post hoc by j30 == 0.
    """
    a, b = Fraction(a), Fraction(b)
    sextic = BinarySextic((Fraction(1), Fraction(0), b, Fraction(0), a,
                           Fraction(0), Fraction(1)))
    return igusa_invariants(sextic)


# ---------------------------------------------------------------------------
# the (3,3)-split locus
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class L3Params:
    """Parameters (u, v) of the two-parameter family of (3,3)-split curves."""

    u: Fraction
    v: Fraction

    def __post_init__(self):
        object.__setattr__(self, "u", Fraction(self.u))
        object.__setattr__(self, "v", Fraction(self.v))
        if self.discriminant == 0:
            raise DegenerateParametersError(
                f"degenerate parameters (u, v) = ({self.u}, {self.v})")

    @property
    def discriminant(self) -> Fraction:
        u, v = self.u, self.v
        return v * (v - 27) * (4 * u ** 3 - u ** 2 * v - 18 * u * v
                               + 4 * v ** 2 + 27 * v)


def l3_curve(params: L3Params) -> BinarySextic:
    """The sextic (v^2 x^3 + u v x^2 + v x + 1)(4 v^2 x^3 + v^2 x^2 + 2 v x + 1)."""
    u, v = params.u, params.v
    p = (Fraction(1), v, u * v, v ** 2)          # ascending a0..a3
    q = (Fraction(1), 2 * v, v ** 2, 4 * v ** 2)
    prod = [Fraction(0)] * 7
    for i, pi in enumerate(p):
        for j, qj in enumerate(q):
            prod[i + j] += pi * qj
    return BinarySextic(tuple(prod))


def l3_point(params: L3Params) -> ModuliPoint:
    """Exact moduli point [2 v a : 4 v b : 4 v c : -16 v^2 (v - 27) d^3].

    For rational (u, v) off the degeneracy divisor this is a fine moduli
    point: it comes from a curve defined over the rationals.
    """
    u, v = params.u, params.v
    alpha = (4 * u ** 2 - 12 * u * v + 3 * v ** 2 + 252 * u - 54 * v - 405)
    beta = (u ** 4 * v - 24 * u ** 4 - 66 * u ** 3 * v + 9 * u ** 2 * v ** 2
            + 1188 * u ** 3 + 297 * u ** 2 * v + 138 * u * v ** 2
            - 36 * v ** 3 - 8424 * u * v + 945 * v ** 2 + 14580 * v)
    gamma = (2 * u ** 6 * v ** 2 - 8 * u ** 5 * v ** 3 + 2 * u ** 4 * v ** 4
             - 40 * u ** 6 * v + 106 * u ** 5 * v ** 2 + 495 * u ** 4 * v ** 3
             - 204 * u ** 3 * v ** 4 + 18 * u ** 2 * v ** 5 - 144 * u ** 6
             + 1476 * u ** 5 * v - 18756 * u ** 4 * v ** 2
             + 4280 * u ** 3 * v ** 3 - 1038 * u ** 2 * v ** 4
             + 564 * u * v ** 5 - 72 * v ** 6 + 160704 * u ** 4 * v
             + 4464 * u ** 3 * v ** 2 + 75024 * u ** 2 * v ** 3
             - 33480 * u * v ** 4 + 3186 * v ** 5 - 104004 * u ** 3 * v
             - 1353996 * u ** 2 * v ** 2 + 315252 * u * v ** 3
             - 4032 * v ** 4 + 3669786 * u * v ** 2 - 622323 * v ** 3
             - 2821230 * v ** 2)
    delta = 4 * u ** 3 - u ** 2 * v - 18 * u * v + 4 * v ** 2 + 27 * v
    return ModuliPoint.from_raw(
        2 * v * alpha, 4 * v * beta, 4 * v * gamma,
        -16 * v ** 2 * (v - 27) * delta ** 3)


def l3_search(target: ModuliPoint, max_height: int = 8) -> L3Params | None:
    """Best-effort inverse lookup of (u, v) for a target moduli point.

    Scans rational u, v with numerator and denominator up to max_height.
    A miss proves nothing: no defining equation of the locus is available,
    so membership is only semi-decidable here.
    """
    values = set()
    for num in range(-max_height, max_height + 1):
        for den in range(1, max_height + 1):
            values.add(Fraction(num, den))
    ordered = sorted(values, key=lambda f: (abs(f), f.denominator, f < 0))
    for v in ordered:
        if v == 0 or v == 27:
            continue
        for u in ordered:
            try:
                params = L3Params(u, v)
            except DegenerateParametersError:
                continue
            if same_moduli(l3_point(params), target):
                return params
    return None


# ---------------------------------------------------------------------------
# the (5,5)-split locus
# ---------------------------------------------------------------------------

def l5_constraint(a, b, z) -> Fraction:
    """The surface equation tying the family parameters together."""
    a, b, z = Fraction(a), Fraction(b), Fraction(z)
    return ((1 + 2 * a) * z ** 2
            + (-a ** 2 - 2 * a * b - 2 * a + 2 * b) * z
            + 2 * a * b + b ** 2)


@dataclass(frozen=True)
class L5Params:
    """Constrained parameters (a, b, z) of the (5,5)-split family."""

    a: Fraction
    b: Fraction
    z: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "z", Fraction(self.z))
        if self.z in (0, 1):
            raise DegenerateParametersError("z must avoid 0 and 1")
        if 1 + 2 * self.a == 0:
            raise DegenerateParametersError("1 + 2a must be nonzero")
        if l5_constraint(self.a, self.b, self.z) != 0:
            raise DegenerateParametersError(
                "(a, b, z) violates the constraint surface")


def l5_coefficients(params: L5Params) -> BinarySextic:
    """Expanded sextic x (x - 1) (a3 x^3 + a2 x^2 + a1 x + a0)."""
    a, b, z = params.a, params.b, params.z

    a0 = -b ** 4 * (
        2 * b ** 3 * a + 4 * b ** 3 - 2 * z * a * b ** 2
        + 7 * b ** 2 * a ** 2 + 8 * z * b ** 2 + 4 * b ** 2
        + 16 * a * b ** 2 + 16 * z * b * a + 6 * a ** 3 * b + 8 * b * a
        + 2 * z * a ** 2 * b + 12 * z * b + 16 * b * a ** 2
        + 13 * z * a ** 2 + z * a ** 4 + 6 * z * a ** 3 + 4 * z
        + 12 * z * a)

    a1 = -b ** 2 * (
        12 * b ** 3 + 12 * b ** 4 * a + 32 * z * b * a
        - 6 * a ** 4 * b ** 2 + 44 * b ** 2 * a ** 3 + 6 * b * a ** 2
        + 24 * a * b ** 2 + 10 * a ** 3 * b + 44 * b ** 3 * a ** 2
        + 2 * b * a + 52 * b ** 3 * a + 61 * b ** 2 * a ** 2
        - 12 * b * a ** 5 - 7 * z * a ** 2 - 2 * z * a + 12 * z * b
        - 4 * a ** 6 + 12 * b ** 4 - a ** 4 - 40 * z * a ** 3 * b ** 2
        - 16 * z * b ** 3 * a ** 2 - 12 * z * a ** 5 + 36 * z * b ** 2
        - 18 * z * a ** 3 - 26 * z * a ** 4 + 56 * z * a * b ** 2
        + 4 * a * z * b ** 3 + 2 * z * a ** 2 * b ** 2
        - 20 * z * a ** 3 * b + 28 * z * a ** 2 * b + 2 * z * a ** 6
        + 24 * z * b ** 3 + 4 * z * b * a ** 5 - 4 * a ** 5
        - 32 * z * a ** 4 * b)

    a2 = (
        5 * b ** 2 * a ** 6 + 20 * b ** 2 * a ** 5 + 8 * b * a ** 6
        - 61 * b ** 4 * a ** 2 - 18 * b ** 5 * a - 56 * b ** 4 * a
        + 4 * z * b * a + 5 * a ** 4 * b ** 2 - 18 * b ** 2 * a ** 3
        - 24 * z * b ** 4 - 14 * z * b ** 4 * a - 4 * a * b ** 2
        + 8 * b ** 3 * a ** 4 + 2 * b ** 3 * a ** 5 - 54 * b ** 3 * a ** 3
        - 70 * b ** 3 * a ** 2 - 24 * b ** 3 * a - 14 * b ** 2 * a ** 2
        + 4 * a ** 4 * b + 10 * b * a ** 5 - 6 * z * a ** 7
        + 64 * z * a ** 3 * b ** 3 + 38 * z * a ** 4 * b ** 2
        + 54 * z * a ** 3 * b ** 2 + 12 * z * b ** 3 * a ** 2
        - 14 * z * a ** 6 * b - 10 * z * b ** 2 * a ** 5
        - 4 * z * a ** 7 * b - 4 * a ** 6 * z * b ** 2
        + 32 * a ** 2 * b ** 4 * z + 2 * a ** 7 * b - z * a ** 8
        - 36 * z * b ** 3 - 12 * z * a ** 5 - 12 * z * b ** 2
        - 4 * z * a ** 4 - 28 * z * a * b ** 2 - 64 * a * z * b ** 3
        - 5 * z * a ** 2 * b ** 2 + 16 * z * a ** 2 * b
        + 28 * z * a ** 4 * b - 4 * z * b * a ** 5 - 13 * z * a ** 6
        - 12 * b ** 5 - 12 * b ** 4 + 34 * z * a ** 3 * b)

    a3 = (2 * a + 1) * (
        z * a ** 4 - 2 * a ** 3 * b + 4 * z * a ** 3 + 6 * z * a ** 3 * b
        - 4 * b * a ** 2 + 12 * z * a ** 2 * b ** 2 + 10 * z * a ** 2 * b
        - 9 * b ** 2 * a ** 2 + 5 * z * a ** 2 - 2 * b * a + 2 * z * a
        - 8 * a * b ** 2 - 12 * b ** 3 * a + 8 * a * z * b ** 3
        - 4 * b ** 3 - 4 * z * b - 4 * b ** 4 - 12 * z * b ** 2
        - 8 * z * b ** 3)

    # x (x - 1) (a3 x^3 + a2 x^2 + a1 x + a0), ascending coefficients
    cubic = (a0, a1, a2, a3)
    coeffs = [Fraction(0)] * 7
    for i, c in enumerate(cubic):
        coeffs[i + 2] += c   # x^2 * cubic
        coeffs[i + 1] -= c   # -x * cubic
    try:
        return BinarySextic(tuple(coeffs))
    except ValueError as exc:
        raise DegenerateParametersError(f"degenerate parameters: {exc}") from exc


@dataclass(frozen=True)
class UVWTriple:
    """Invariant coordinates (u, v, w) of the group action on the family."""

    u: Fraction
    v: Fraction
    w: Fraction


def uvw_from_params(params: L5Params) -> UVWTriple:
    a, b, z = params.a, params.b, params.z
    den = b * (a + b + 1)
    if den == 0:
        raise DegenerateParametersError("b (a + b + 1) must be nonzero")
    u = 2 * a * (a * b + b ** 2 + b + a + 1) / den
    v = a ** 3 / den
    w = (z ** 2 - z + 1) ** 3 / (z ** 2 * (z - 1) ** 2)
    return UVWTriple(u, v, w)


def uvw_residual(t: UVWTriple) -> Fraction:
    """c2 w^2 + c1 w + c0; expected to vanish on the constraint surface."""
    u, v, w = t.u, t.v, t.w
    c2 = 64 * v ** 2 * (u - 4 * v + 1) ** 2
    c1 = -4 * v * (
        -272 * v ** 2 * u - 20 * v * u ** 2 + 2592 * v ** 3
        - 4672 * v ** 2 + 4 * u ** 3 + 16 * v ** 3 * u ** 2
        - 15 * v * u ** 4 - 96 * v ** 2 * u ** 2 + 24 * v ** 2 * u ** 3
        + 2 * u ** 5 - 12 * u ** 4 + 92 * v * u ** 3 + 576 * v * u
        - 128 * v ** 4 - 288 * v ** 3 * u)
    c0 = (u ** 2 + 4 * v * u + 4 * v ** 2 - 48 * v) ** 3
    return c2 * w ** 2 + c1 * w + c0


# ---------------------------------------------------------------------------
# slicing the constraint surface into rational curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SliceParametrization:
    """Rational functions t -> (a(t), b(t)) with f(a(t), b(t), s) = 0."""

    s: Fraction
    # (a_num, a_den, b_num, b_den) as ascending coefficient tuples in t
    a_num: tuple[Fraction, ...]
    a_den: tuple[Fraction, ...]
    b_num: tuple[Fraction, ...]
    b_den: tuple[Fraction, ...]

    def __call__(self, t) -> tuple[Fraction, Fraction]:
        t = Fraction(t)

        def ev(cs):
            acc = Fraction(0)
            for c in reversed(cs):
                acc = acc * t + c
            return acc

        a_den = ev(self.a_den)
        b_den = ev(self.b_den)
        if a_den == 0 or b_den == 0:
            raise DegenerateParametersError(f"parametrization pole at t = {t}")
        return ev(self.a_num) / a_den, ev(self.b_num) / b_den


def l5_slice(s) -> SliceParametrization:
    """Parametrize the fixed-z slice of the constraint surface.

    For every z = s outside {0, 1} the slice is a conic with the rational
    point (a, b) = (0, -s); lines through it give a(t) = 4s(1-s) / D(t) and
    b(t) = -s + t a(t) with D(t) = t^2 + 2(1-s) t - s.  The slices s = 2 and
    s = 1/2 are pinned to their published closed forms.
    """
    s = Fraction(s)
    if s in (0, 1):
        raise DegenerateParametersError("slice needs s outside {0, 1}")
    if s == 2:
        return SliceParametrization(
            s,
            a_num=(Fraction(-8),), a_den=(Fraction(-2), Fraction(2), Fraction(1)),
            b_num=(Fraction(4), Fraction(4), Fraction(-2)),
            b_den=(Fraction(-2), Fraction(2), Fraction(1)))
    if s == Fraction(1, 2):
        return SliceParametrization(
            s,
            a_num=(Fraction(16),), a_den=(Fraction(-8), Fraction(-4), Fraction(1)),
            b_num=(Fraction(8), Fraction(-4), Fraction(-1)),
            b_den=(Fraction(-16), Fraction(-8), Fraction(2)))
    c = 4 * s * (1 - s)
    den = (-s, 2 * (1 - s), Fraction(1))
    # b = -s + t * a = (-s D(t) + c t) / D(t)
    b_num = (s * s, -2 * s * (1 - s) + c, -s)
    return SliceParametrization(s, a_num=(c,), a_den=den,
                                b_num=b_num, b_den=den)


def l5_params_from_slice(s, t) -> L5Params:
    """Point of the constraint surface from slice and line parameters."""
    par = l5_slice(s)
    a, b = par(t)
    return L5Params(a, b, Fraction(s))


def l5_generate_points(n: int, seed: int, slices: int = 10,
                       numerator_bound: int = 20, denominator_bound: int = 8,
                       max_retries: int = 100) -> list[ModuliPoint]:
    """Generate n rational moduli points on the (5,5)-split locus.

    Draws `slices` random rational slice values, parametrizes each slice,
    and pulls n/slices line parameters per slice.  Degenerate draws are
    skipped and redrawn up to max_retries times each.  Deterministic for a
    fixed seed: every draw derives from (seed, slice index, point index,
    attempt), so results do not depend on evaluation order.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    per_slice = [n // slices + (1 if i < n % slices else 0)
                 for i in range(slices)]
    points: list[ModuliPoint] = []
    for si, quota in enumerate(per_slice):
        par = None
        for attempt in range(max_retries):
            rng = child_rng(seed, "slice", si, attempt)
            s = random_rational(rng, numerator_bound, denominator_bound)
            if s in (0, 1):
                continue
            par = l5_slice(s)
            break
        if par is None:
            raise DegenerateParametersError(
                f"no usable slice after {max_retries} draws")
        for pi in range(quota):
            point = None
            for attempt in range(max_retries):
                rng = child_rng(seed, "point", si, pi, attempt)
                t = random_rational(rng, numerator_bound, denominator_bound)
                try:
                    a, b = par(t)
                    params = L5Params(a, b, par.s)
                    point = igusa_invariants(l5_coefficients(params))
                    break
                except (DegenerateParametersError, SingularSexticError,
                        ValueError):
                    continue
            if point is None:
                raise DegenerateParametersError(
                    f"slice {si}: no valid point after {max_retries} draws")
            points.append(point)
    return points
