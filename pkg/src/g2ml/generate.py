"""Seeded dataset generation: locus points, generic points, enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .config import RunConfig, parse_patch
from .dataset import Dataset, build_record
from .enumeration import coordinate_bound, enumerate_moduli
from .igusa import ModuliPoint, SingularSexticError, absolute_t
from .loci import (DegenerateParametersError, L3Params, j30, l2_curve_point,
                   l3_point, l5_generate_points)
from .sampling import child_rng
from .wproj import MODULI_WEIGHTS

MAX_DRAW_FACTOR = 400


class GenerationError(RuntimeError):
    pass


def _collect_distinct(n: int, draw, what: str) -> list[ModuliPoint]:
    """Pull indexed draws until n distinct moduli classes are collected.

    Draws are keyed by index, so the output for a given seed does not depend
    on scheduling; degenerate draws return None and are skipped.
    """
    points: list[ModuliPoint] = []
    seen: set = set()
    limit = MAX_DRAW_FACTOR * n + 1000
    for i in range(limit):
        if len(points) >= n:
            return points
        p = draw(i)
        if p is None:
            continue
        key = absolute_t(p).as_tuple()
        if key in seen:
            continue
        seen.add(key)
        points.append(p)
    raise GenerationError(
        f"only {len(points)} of {n} distinct {what} points after "
        f"{limit} draws; widen the draw bounds")


# Parameter patches for the locus generators.  Compact patches keep each
# class geometrically coherent after unit-norm scaling (globally spread
# draws collapse every class onto the high-weight coordinate axis and the
# classes interleave at float-noise scales); dyadic denominators keep the
# cleared tuples 2-smooth, so normalization never hits a hard factorization.
DEFAULT_L2_PATCH = ((-2, 2), (-2, 2), 256)
DEFAULT_L3_PATCH = ((1, 3), (1, 3), 256)


def _patch_rational(rng, lo: int, hi: int, den: int) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), den)


def gen_l2_points(n: int, seed: int, patch=DEFAULT_L2_PATCH
                  ) -> list[ModuliPoint]:
    """Points from the extra-involution curve family, certified by j30 = 0."""
    (a_lo, a_hi), (b_lo, b_hi), den = patch

    def draw(i):
        rng = child_rng(seed, "l2", i)
        a = _patch_rational(rng, a_lo, a_hi, den)
        b = _patch_rational(rng, b_lo, b_hi, den)
        try:
            return l2_curve_point(a, b)
        except (SingularSexticError, ValueError):
            return None

    return _collect_distinct(n, draw, "extra-involution")


def gen_l3_points(n: int, seed: int, patch=DEFAULT_L3_PATCH
                  ) -> list[ModuliPoint]:
    (u_lo, u_hi), (v_lo, v_hi), den = patch

    def draw(i):
        rng = child_rng(seed, "l3", i)
        u = _patch_rational(rng, u_lo, u_hi, den)
        v = _patch_rational(rng, v_lo, v_hi, den)
        try:
            return l3_point(L3Params(u, v))
        except DegenerateParametersError:
            return None

    return _collect_distinct(n, draw, "(3,3)-split")


def gen_other_points(n: int, seed: int, height_bound=Fraction(3)
                     ) -> list[ModuliPoint]:
    """Generic points: uniform over the height box, rejecting the locus."""
    height_bound = Fraction(height_bound)
    bounds = [coordinate_bound(height_bound, q) for q in MODULI_WEIGHTS]

    def draw(i):
        rng = child_rng(seed, "other", i)
        coords = [rng.randint(-b, b) for b in bounds]
        if coords[3] == 0:
            return None
        p = ModuliPoint.from_raw(*coords)
        return None if j30(p) == 0 else p

    return _collect_distinct(n, draw, "generic")


@dataclass
class BuildSummary:
    requested: dict
    inserted: int
    merged: int

    def to_json_obj(self) -> dict:
        return {"requested": self.requested, "inserted": self.inserted,
                "merged": self.merged}


def build_dataset(config: RunConfig, enum_height=None
                  ) -> tuple[Dataset, BuildSummary]:
    """Assemble a dataset from the configured per-locus quotas.

    Key collisions merge (the dictionary has one row per moduli class), so
    the dataset can hold fewer records than the sum of the quotas.
    """
    dataset = Dataset(metadata={"config": config.to_json_obj()})
    batches = [
        ("l2-param", gen_l2_points(config.n_l2, config.seed,
                                   parse_patch(config.l2_patch))),
        ("l3-param", gen_l3_points(config.n_l3, config.seed,
                                   parse_patch(config.l3_patch))),
        ("l5-param", l5_generate_points(config.n_l5, config.seed,
                                        numerator_bound=config.numerator_bound,
                                        denominator_bound=config.denominator_bound)
         if config.n_l5 else []),
        ("random", gen_other_points(config.n_other, config.seed,
                                    config.height)),
    ]
    if enum_height is not None:
        pts, _ = enumerate_moduli(Fraction(enum_height))
        batches.append(("enum", pts))
    total = 0
    for provenance, points in batches:
        for p in points:
            dataset.insert(build_record(p, provenance))
            total += 1
    summary = BuildSummary(
        requested={prov: len(pts) for prov, pts in batches},
        inserted=len(dataset), merged=total - len(dataset))
    return dataset, summary
