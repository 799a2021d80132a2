"""The labeled database of moduli points.

Records are keyed by the scaling-invariant triple (t1, t2, t3), so two
representatives of one isomorphism class can never occupy two rows.  Labels
that the toolkit cannot certify stay unknown: membership in the degree-2
locus is decided exactly by the locus polynomial, the locus flags for
parametrized provenances are true by construction, and everything else is
null until a future certificate arrives.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .igusa import AbsoluteTriple, ModuliPoint, absolute_t
from .loci import j30
from .wproj import abs_normalize, height

SCHEMA_VERSION = "g2ml/1"

PROVENANCES = ("enum", "l2-param", "l3-param", "l5-param", "random")

# GAP identifier of the cyclic group of order 10, the automorphism group of
# the unique moduli point with J2 = J4 = J6 = 0
C10_GAP_ID = (10, 2)


class DatasetFormatError(ValueError):
    """A dataset file line failed to parse; carries the line number."""

    def __init__(self, line_number: int, message: str):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


class LabelConflictError(ValueError):
    """Two records with the same key carry contradictory known labels."""


def _display_float(x: float) -> float:
    return float(f"{x:.9g}")


@dataclass(frozen=True)
class DatasetRecord:
    """One row of the dictionary: a moduli class with its labels."""

    key: AbsoluteTriple
    p: ModuliPoint
    p_abs: ModuliPoint
    wh: float
    awh: float
    gcd: int
    fine: bool | None
    aut: tuple[int, int] | None
    in_l2: bool
    in_l3: bool | None
    in_l5: bool | None
    in_l7: bool | None
    provenance: str

    def to_json_obj(self) -> dict:
        return {
            "key": self.key.to_json_obj(),
            "p": self.p.to_json_obj(),
            "pAbs": self.p_abs.to_json_obj(),
            "wh": self.wh,
            "awh": self.awh,
            "gcd": self.gcd,
            "fine": self.fine,
            "aut": list(self.aut) if self.aut else None,
            "inL2": self.in_l2,
            "inL3": self.in_l3,
            "inL5": self.in_l5,
            "inL7": self.in_l7,
            "provenance": self.provenance,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "DatasetRecord":
        aut = obj.get("aut")
        return cls(
            key=AbsoluteTriple.from_json_obj(obj["key"]),
            p=ModuliPoint.from_json_obj(obj["p"]),
            p_abs=ModuliPoint.from_json_obj(obj["pAbs"]),
            wh=float(obj["wh"]),
            awh=float(obj["awh"]),
            gcd=int(obj["gcd"]),
            fine=obj["fine"],
            aut=tuple(aut) if aut else None,
            in_l2=obj["inL2"],
            in_l3=obj["inL3"],
            in_l5=obj["inL5"],
            in_l7=obj["inL7"],
            provenance=obj["provenance"],
        )


def build_record(p: ModuliPoint, provenance: str) -> DatasetRecord:
    """Compute every derivable field exactly; label per provenance rules."""
    if provenance not in PROVENANCES:
        raise ValueError(f"unknown provenance {provenance!r}")
    wp = p.as_weighted_point()
    p_abs = ModuliPoint(*abs_normalize(wp).coords)
    from_curve = provenance in ("l2-param", "l3-param", "l5-param")
    is_c10_point = p.J2 == 0 and p.J4 == 0 and p.J6 == 0
    return DatasetRecord(
        key=absolute_t(p),
        p=p,
        p_abs=p_abs,
        wh=_display_float(height(wp).value),
        awh=_display_float(height(p_abs.as_weighted_point()).value),
        gcd=math.gcd(*p.coords),
        fine=True if (from_curve or is_c10_point) else None,
        aut=C10_GAP_ID if is_c10_point else None,
        in_l2=j30(p) == 0,
        in_l3=True if provenance == "l3-param" else None,
        in_l5=True if provenance == "l5-param" else None,
        in_l7=None,
        provenance=provenance,
    )


def _merge_label(key, name, a, b):
    if a is None:
        return b
    if b is None:
        return a
    if a != b:
        raise LabelConflictError(
            f"conflicting {name} for key {key.to_json_obj()}: {a} vs {b}")
    return a


def merge_records(a: DatasetRecord, b: DatasetRecord) -> DatasetRecord:
    """Union of knowledge for one key: unknown < known, conflicts are fatal."""
    if a.in_l2 != b.in_l2:
        raise LabelConflictError(
            f"conflicting inL2 for key {a.key.to_json_obj()}")
    return replace(
        a,
        fine=_merge_label(a.key, "fine", a.fine, b.fine),
        aut=_merge_label(a.key, "aut", a.aut, b.aut),
        in_l3=_merge_label(a.key, "inL3", a.in_l3, b.in_l3),
        in_l5=_merge_label(a.key, "inL5", a.in_l5, b.in_l5),
        in_l7=_merge_label(a.key, "inL7", a.in_l7, b.in_l7),
    )


@dataclass
class Dataset:
    """Records keyed by absolute-invariant triple, iterated in key order."""

    metadata: dict = field(default_factory=dict)
    records: dict[AbsoluteTriple, DatasetRecord] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        for key in sorted(self.records):
            yield self.records[key]

    def insert(self, record: DatasetRecord) -> None:
        existing = self.records.get(record.key)
        if existing is None:
            self.records[record.key] = record
        else:
            self.records[record.key] = merge_records(existing, record)

    def insert_point(self, p: ModuliPoint, provenance: str) -> None:
        self.insert(build_record(p, provenance))


def merge_datasets(a: Dataset, b: Dataset) -> Dataset:
    """Union by key; label merge is monotone in knownness."""
    va = a.metadata.get("schema", SCHEMA_VERSION)
    vb = b.metadata.get("schema", SCHEMA_VERSION)
    if va != vb:
        raise ValueError(f"incompatible schema versions {va} vs {vb}")
    out = Dataset(metadata=dict(a.metadata))
    for rec in a.records.values():
        out.insert(rec)
    for rec in b.records.values():
        out.insert(rec)
    return out


def export_jsonl(dataset: Dataset, path) -> None:
    """One metadata header line, then records sorted by key."""
    header = {"schema": SCHEMA_VERSION, "metadata": dataset.metadata}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for rec in dataset:
            fh.write(json.dumps(rec.to_json_obj(), sort_keys=True) + "\n")


def import_jsonl(path) -> Dataset:
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise DatasetFormatError(1, "missing header line")
    try:
        header = json.loads(lines[0])
        schema = header["schema"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise DatasetFormatError(1, f"bad header: {exc}") from exc
    if schema != SCHEMA_VERSION:
        raise DatasetFormatError(1, f"unsupported schema {schema!r}")
    dataset = Dataset(metadata=header.get("metadata", {}))
    for i, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            rec = DatasetRecord.from_json_obj(json.loads(line))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise DatasetFormatError(i, str(exc)) from exc
        if rec.key in dataset.records:
            raise DatasetFormatError(i, "duplicate key")
        dataset.records[rec.key] = rec
    return dataset


# ---------------------------------------------------------------------------
# feature export for the learning suite
# ---------------------------------------------------------------------------

CLASS_SCHEMES = ("3class", "4class")


def record_class(rec: DatasetRecord, scheme: str = "3class") -> str | None:
    """Class label under the chosen scheme, or None when undecidable.

    Priority L3 > L2 (> L5) > other; generic provenances with no locus
    certificate count as "other", anything else is excluded.
    """
    if scheme not in CLASS_SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    if rec.in_l3 is True:
        return "L3"
    if rec.in_l2:
        return "L2"
    if scheme == "4class" and rec.in_l5 is True:
        return "L5"
    if rec.provenance in ("enum", "random") and rec.in_l5 is not True:
        return "other"
    return None


def export_features(dataset: Dataset, path, scheme: str = "3class"
                    ) -> tuple[int, int]:
    """CSV of (J2, J4, J6, J10, class), pre-scaled per row by the largest
    absolute coordinate before float conversion so no overflow can occur.

    Returns (rows written, records excluded for undecidable class).
    """
    written = excluded = 0
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("J2,J4,J6,J10,class\n")
        for rec in dataset:
            label = record_class(rec, scheme)
            if label is None:
                excluded += 1
                continue
            scale = max(abs(c) for c in rec.p.coords)
            row = [float(Fraction(c, scale)) for c in rec.p.coords]
            fh.write(",".join(repr(v) for v in row) + f",{label}\n")
            written += 1
    return written, excluded


def audit(dataset: Dataset) -> list[str]:
    """Recheck every derivable field; return human-readable problem lines."""
    problems = []
    for rec in dataset:
        if rec.key != absolute_t(rec.p):
            problems.append(f"key mismatch for p = {rec.p.coords}")
        if rec.in_l2 != (j30(rec.p) == 0):
            problems.append(f"inL2 label disagrees with the locus polynomial "
                            f"for p = {rec.p.coords}")
        if rec.gcd != math.gcd(*rec.p.coords):
            problems.append(f"gcd mismatch for p = {rec.p.coords}")
        expected_abs = abs_normalize(rec.p.as_weighted_point()).coords
        if rec.p_abs.coords != expected_abs:
            problems.append(f"pAbs mismatch for p = {rec.p.coords}")
    return problems
