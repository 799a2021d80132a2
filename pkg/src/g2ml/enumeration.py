"""Counting formulas and exhaustive bounded-height enumeration.

The height box |x_i| <= h**q_i is resolved with exact rational power
comparisons, so membership at the boundary is never a float question.  The
extra-involution scan iterates the (J2, J4, J6) box and solves the locus
polynomial as a cubic in J10 over the integers; root isolation splits the
cubic into monotone pieces at its critical points and bisects each piece
with exact arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool

from .igusa import ModuliPoint, absolute_t
from .loci import J30_TABLE
from .wproj import MODULI_WEIGHTS, WeightedPoint, normalize

DEFAULT_CANDIDATE_LIMIT = 10_000_000_000


class ResourceBudgetError(RuntimeError):
    """The requested bound exceeds the configured enumeration budget."""


@dataclass(frozen=True)
class CountReport:
    """Counts at the three dedup levels of one enumeration run."""

    bound: Fraction
    strict: bool
    raw_count: int
    normalized_count: int
    class_count: int

    def __post_init__(self):
        if not (self.class_count <= self.normalized_count <= self.raw_count):
            raise ValueError("count ordering violated")

    def to_json_obj(self) -> dict:
        return {"bound": f"{self.bound.numerator}/{self.bound.denominator}",
                "strict": self.strict, "raw": self.raw_count,
                "normalized": self.normalized_count,
                "classes": self.class_count}


# ---------------------------------------------------------------------------
# closed-form counts
# ---------------------------------------------------------------------------

def count_bound_general(weights, h: int) -> int:
    """Upper bound on the number of height <= h points for any weight system.

    Sum over the leading nonzero coordinate: h**q_k choices for it times
    2 h**q_j + 1 for each earlier coordinate.
    """
    if h < 1:
        raise ValueError("bound must be >= 1")
    q = list(weights)
    total = 0
    for k in range(len(q)):
        term = h ** q[k]
        for j in range(k):
            term *= 2 * h ** q[j] + 1
        total += term
    return total


def count_sextic_f(h: int) -> int:
    """Moduli classes of binary sextics with height <= h, weights (1,2,3,5)."""
    if h < 1:
        raise ValueError("bound must be >= 1")
    return h * (8 * h ** 10 + 4 * h ** 9 + 4 * h ** 8 + 6 * h ** 7
                + 2 * h ** 6 + 6 * h ** 5 + 3 * h ** 4 + 2 * h ** 3
                + 3 * h ** 2 + h + 1)


def shell_count_g(h: int) -> int:
    """Classes with height in (h-1, h]; the difference polynomial of F."""
    if h < 1:
        raise ValueError("bound must be >= 1")
    return (88 * h ** 10 - 400 * h ** 9 + 1176 * h ** 8 - 2256 * h ** 7
            + 3038 * h ** 6 - 2862 * h ** 5 + 1879 * h ** 4 - 812 * h ** 3
            + 215 * h ** 2 - 28 * h + 2)


def count_even_weights(h: int) -> int:
    """Weights (2,4,6,10): bound h there corresponds to h**2 under (1,2,3,5)."""
    return count_sextic_f(h * h)


# ---------------------------------------------------------------------------
# exhaustive enumeration
# ---------------------------------------------------------------------------

def coordinate_bound(h: Fraction, q: int, strict: bool = False) -> int:
    """Largest integer B >= 0 with B <= h**q (or B < h**q when strict)."""
    num, den = h.numerator, h.denominator
    b = num ** q // den ** q
    if strict and b * den ** q == num ** q:
        b -= 1
    return b


def _box_bounds(h, strict):
    h = Fraction(h)
    if h <= 0:
        raise ValueError("height bound must be positive")
    return h, [coordinate_bound(h, q, strict) for q in MODULI_WEIGHTS]


def enumerate_moduli(h, strict: bool = False,
                     candidate_limit: int = DEFAULT_CANDIDATE_LIMIT
                     ) -> tuple[list[ModuliPoint], CountReport]:
    """All moduli points of weighted height <= h (or < h when strict).

    Returns the normalized tuples sorted lexicographically, together with
    the counts at raw-tuple, normalized-tuple, and moduli-class level.
    """
    h, (b2, b4, b6, b10) = _box_bounds(h, strict)
    raw_count = (2 * b2 + 1) * (2 * b4 + 1) * (2 * b6 + 1) * (2 * b10)
    if raw_count > candidate_limit:
        raise ResourceBudgetError(
            f"box holds {raw_count} candidates, over the limit "
            f"{candidate_limit}")
    seen: set[tuple[int, int, int, int]] = set()
    for j2 in range(-b2, b2 + 1):
        for j4 in range(-b4, b4 + 1):
            for j6 in range(-b6, b6 + 1):
                for j10 in range(-b10, b10 + 1):
                    if j10 == 0:
                        continue
                    if math.gcd(j2, j4, j6, j10) == 1:
                        seen.add((j2, j4, j6, j10))
                        continue
                    pt = normalize(WeightedPoint((j2, j4, j6, j10),
                                                 MODULI_WEIGHTS))
                    seen.add(pt.coords)
    points = [ModuliPoint(*coords) for coords in sorted(seen)]
    classes = {absolute_t(p).as_tuple() for p in points}
    report = CountReport(h, strict, raw_count, len(points), len(classes))
    return points, report


def class_representative(coords: tuple[int, int, int, int]
                         ) -> tuple[int, int, int, int]:
    """Canonical tuple of a moduli class for byte-stable output.

    The class of [x0, x1, x2, x3] also contains [-x0, x1, -x2, -x3]; pick
    the representative whose first nonzero entry among (x0, x2, x3) is
    positive.
    """
    j2, j4, j6, j10 = coords
    for lead in (j2, j6, j10):
        if lead > 0:
            return coords
        if lead < 0:
            return (-j2, j4, -j6, -j10)
    return coords


# ---------------------------------------------------------------------------
# integer roots of a cubic, exactly
# ---------------------------------------------------------------------------

def _bisect_root(g, lo, hi, glo, ghi):
    """One root of monotone g on [lo, hi] with sign(glo) != sign(ghi)."""
    while hi - lo > 1:
        mid = (lo + hi) // 2
        gm = g(mid)
        if gm == 0:
            return mid
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi, ghi = mid, gm
    return None


def _piece_roots(g, lo, hi):
    if lo > hi:
        return []
    glo, ghi = g(lo), g(hi)
    roots = []
    if glo == 0:
        roots.append(lo)
    if ghi == 0 and hi != lo:
        roots.append(hi)
    if glo != 0 and ghi != 0 and (glo > 0) != (ghi > 0):
        r = _bisect_root(g, lo, hi, glo, ghi)
        if r is not None:
            roots.append(r)
    return roots


def integer_cubic_roots(c3: int, c2: int, c1: int, c0: int,
                        lo: int, hi: int) -> list[int]:
    """All integer roots of c3 x^3 + c2 x^2 + c1 x + c0 in [lo, hi].

    Complete by construction: the interval is cut at the critical points
    into monotone pieces and each piece is bisected exactly.
    """
    if c3 == 0:
        raise ValueError("leading coefficient must be nonzero")
    if c3 < 0:
        c3, c2, c1, c0 = -c3, -c2, -c1, -c0

    def g(x):
        return ((c3 * x + c2) * x + c1) * x + c0

    disc = c2 * c2 - 3 * c3 * c1
    if disc <= 0:
        return sorted(set(_piece_roots(g, lo, hi)))

    # critical points r = (-c2 +- sqrt(disc)) / (3 c3); exact integer floors
    s = math.isqrt(disc)

    def floor_crit(sign):
        # m <= r  iff  3 c3 m + c2 <= sign * sqrt(disc)
        def leq(m):
            t = 3 * c3 * m + c2
            if sign > 0:
                return t <= 0 or t * t <= disc
            return t <= 0 and t * t >= disc
        m = (-c2 + sign * s) // (3 * c3)
        while not leq(m):
            m -= 1
        while leq(m + 1):
            m += 1
        return m

    f1 = floor_crit(-1)
    f2 = floor_crit(+1)
    roots = set()
    for a, b in ((lo, min(hi, f1)), (max(lo, f1 + 1), min(hi, f2)),
                 (max(lo, f2 + 1), hi)):
        roots.update(_piece_roots(g, a, b))
    return sorted(roots)


# ---------------------------------------------------------------------------
# scanning the extra-involution locus
# ---------------------------------------------------------------------------

_C3 = next(c for c, e in J30_TABLE if e == (0, 0, 0, 3))


def _scan_slice(args):
    """All box tuples with J30 = 0 in one J2 slice (raw, unnormalized)."""
    j2, b4, b6, b10 = args
    found = []
    for j4 in range(-b4, b4 + 1):
        # locus polynomial as a cubic in J10 with coefficients polynomial
        # in J6: cs[e10][e6]
        cs = [[0] * 6 for _ in range(3)]
        for coef, (e2, e4, e6, e10) in J30_TABLE:
            if e10 == 3:
                continue
            cs[e10][e6] += coef * j2 ** e2 * j4 ** e4
        q2, q1, q0 = cs[2], cs[1], cs[0]
        for j6 in range(-b6, b6 + 1):
            c2 = (q2[1] * j6 + q2[0])
            c1 = ((q1[3] * j6 + q1[2]) * j6 + q1[1]) * j6 + q1[0]
            c0 = ((((q0[5] * j6 + q0[4]) * j6 + q0[3]) * j6 + q0[2])
                  * j6 + q0[1]) * j6 + q0[0]
            for r in integer_cubic_roots(_C3, c2, c1, c0, -b10, b10):
                if r != 0:
                    found.append((j2, j4, j6, r))
    return found


def scan_l2(h, strict: bool = False, workers: int = 1,
            candidate_limit: int = DEFAULT_CANDIDATE_LIMIT
            ) -> list[ModuliPoint]:
    """All normalized moduli points of height <= h on the locus J30 = 0.

    Equivalent to filtering enumerate_moduli by membership, but feasible at
    larger bounds because J10 is solved for instead of enumerated.
    """
    h, (b2, b4, b6, b10) = _box_bounds(h, strict)
    cells = (2 * b2 + 1) * (2 * b4 + 1) * (2 * b6 + 1)
    if cells > candidate_limit:
        raise ResourceBudgetError(
            f"scan grid holds {cells} cells, over the limit {candidate_limit}")
    if b10 < 1:
        return []
    tasks = [(j2, b4, b6, b10) for j2 in range(-b2, b2 + 1)]
    if workers > 1:
        with Pool(workers) as pool:
            chunks = pool.map(_scan_slice, tasks)
    else:
        chunks = [_scan_slice(t) for t in tasks]
    seen: set[tuple[int, int, int, int]] = set()
    for chunk in chunks:
        for coords in chunk:
            if math.gcd(*coords) == 1:
                seen.add(coords)
            else:
                seen.add(normalize(WeightedPoint(coords,
                                                 MODULI_WEIGHTS)).coords)
    return [ModuliPoint(*coords) for coords in sorted(seen)]
