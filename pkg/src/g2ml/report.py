"""Reproduction checks against the bundled reference data.

Four checks mirror the published tables: the count polynomial, the height-1
class list, the extra-involution point list, and the (3,3)-split list audit.
Each returns PASS, FAIL, or AUDIT (facts reported, discrepancies noted).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .enumeration import count_sextic_f, enumerate_moduli, scan_l2
from .igusa import ModuliPoint, absolute_t
from .loci import j30
from .tables import (HEIGHT1_CLASS_POINTS, L2_POINTS_H3,
                     L3_ANNOUNCED_COUNTS, L3_POINTS_H3_AS_PUBLISHED,
                     POINT_COUNTS_BY_HEIGHT)
from .wproj import MODULI_WEIGHTS, WeightedPoint, height_leq, wgcd


@dataclass
class TableCheck:
    name: str
    status: str                      # PASS | FAIL | AUDIT
    summary: str
    details: list[str] = field(default_factory=list)


def check_counts() -> TableCheck:
    """Count polynomial against the ten published values."""
    bad = {h: (count_sextic_f(h), v)
           for h, v in POINT_COUNTS_BY_HEIGHT.items() if count_sextic_f(h) != v}
    if bad:
        return TableCheck("counts", "FAIL",
                          f"{len(bad)} of {len(POINT_COUNTS_BY_HEIGHT)} "
                          "count values disagree",
                          [f"h={h}: got {g}, want {w}"
                           for h, (g, w) in sorted(bad.items())])
    return TableCheck("counts", "PASS",
                      f"all {len(POINT_COUNTS_BY_HEIGHT)} count values match")


def check_height1() -> TableCheck:
    """Height-1 enumeration against the 27 published class representatives."""
    points, report = enumerate_moduli(1)
    classes = {absolute_t(p).as_tuple() for p in points}
    ref_keys = [absolute_t(ModuliPoint(*t)).as_tuple()
                for t in HEIGHT1_CLASS_POINTS]
    details = []
    if len(set(ref_keys)) != len(ref_keys):
        details.append("reference list has equivalent entries")
    missing = [t for t, k in zip(HEIGHT1_CLASS_POINTS, ref_keys)
               if k not in classes]
    if report.class_count == 27 and not missing and not details \
            and len(set(ref_keys)) == report.class_count:
        return TableCheck(
            "height-1-classes", "PASS",
            f"27 classes ({report.normalized_count} normalized tuples), "
            "one per published representative")
    details.extend(f"missing class of {t}" for t in missing)
    return TableCheck("height-1-classes", "FAIL",
                      f"found {report.class_count} classes, expected 27",
                      details)


def check_l2_points(workers: int = 1, full: bool = False) -> TableCheck:
    """The 34 published extra-involution tuples.

    The published caption announces the bound 3, but the listed tuples are
    exactly the height <= 2 answer; at bound 3 the locus holds far more
    rational points.  Reported as an audit with the discrepancy spelled out.
    """
    ref = set(L2_POINTS_H3)
    details = []
    not_on_locus = [t for t in ref if j30(ModuliPoint(*t)) != 0]
    if not_on_locus:
        return TableCheck("l2-points", "FAIL",
                          f"{len(not_on_locus)} published tuples are not on "
                          "the locus", [str(t) for t in not_on_locus])
    got2 = {p.coords for p in scan_l2(2, workers=workers)}
    if got2 != ref:
        details.append(f"height-2 scan found {len(got2)} tuples, "
                       f"expected the published 34")
        return TableCheck("l2-points", "FAIL",
                          "published list does not match the height-2 scan",
                          details)
    classes = {absolute_t(ModuliPoint(*t)).as_tuple() for t in ref}
    details.append("all 34 published tuples on the locus, normalized, "
                   "height <= 2; 17 classes by key pairing")
    details.append("published caption says bound 3, but the list equals the "
                   "exact height <= 2 scan")
    if full:
        got3 = scan_l2(3, workers=workers)
        details.append(f"exact scan at bound 3 finds {len(got3)} normalized "
                       f"tuples (a strict superset of the published 34)")
    return TableCheck("l2-points", "AUDIT",
                      "published list reproduced at bound 2; announced "
                      "bound 3 is inconsistent with the locus polynomial",
                      details)


def check_l3_audit() -> TableCheck:
    """Audit of the published (3,3)-split list: heights, normalization, dups."""
    details = []
    rows = L3_POINTS_H3_AS_PUBLISHED
    over_height = [t for t in rows
                   if not height_leq(WeightedPoint(t, MODULI_WEIGHTS), 3)]
    unnormalized = [t for t in rows
                    if wgcd(WeightedPoint(t, MODULI_WEIGHTS)) != 1]
    seen: dict[tuple, int] = {}
    duplicates = []
    for i, t in enumerate(rows, start=1):
        if t in seen:
            duplicates.append(f"row {i} repeats row {seen[t]}: {t}")
        else:
            seen[t] = i
    distinct = len(seen)
    classes = {absolute_t(ModuliPoint(*t)).as_tuple() for t in seen}
    details.append(f"{len(rows)} printed rows, {distinct} distinct tuples, "
                   f"{len(classes)} classes")
    details.extend(duplicates)
    details.append("announced totals: "
                   + ", ".join(f"{k}={v}" for k, v in
                               sorted(L3_ANNOUNCED_COUNTS.items()))
                   + f"; deduplicated count={distinct}")
    status = "AUDIT"
    if over_height or unnormalized:
        status = "FAIL"
        details.extend(f"height over bound: {t}" for t in over_height)
        details.extend(f"not normalized: {t}" for t in unnormalized)
        summary = "published rows violate height or normalization"
    else:
        summary = ("every printed tuple is normalized with height <= 3; "
                   "counts disagree with the announced totals")
    return TableCheck("l3-audit", status, summary, details)


def run_table_checks(workers: int = 1, full: bool = False) -> list[TableCheck]:
    return [check_counts(), check_height1(),
            check_l2_points(workers=workers, full=full), check_l3_audit()]
