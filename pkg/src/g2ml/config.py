"""Run configuration: validated once, embedded into every artifact's metadata."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from fractions import Fraction


@dataclass
class RunConfig:
    seed: int = 0
    parallelism: int = 1
    height: Fraction = Fraction(3)
    strict: bool = False
    # generation quotas per provenance
    n_l2: int = 0
    n_l3: int = 0
    n_l5: int = 0
    n_other: int = 0
    # parameter patches for the locus generators: "lo:hi,lo:hi,den"
    l2_patch: str = "-2:2,-2:2,256"
    l3_patch: str = "1:3,1:3,256"
    # rational-draw bounds for the constraint-surface slices
    numerator_bound: int = 20
    denominator_bound: int = 8
    # learning hyperparameters
    knn_k: int = 5
    knn_metric: str = "manhattan"
    n_trees: int = 200
    test_fraction: float = 0.3
    clusters: int = 4
    restarts: int = 10
    class_scheme: str = "3class"

    def __post_init__(self):
        self.height = Fraction(self.height)
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")
        if self.height <= 0:
            raise ValueError("height bound must be positive")
        if min(self.n_l2, self.n_l3, self.n_l5, self.n_other) < 0:
            raise ValueError("generation quotas must be nonnegative")
        if self.numerator_bound < 1 or self.denominator_bound < 1:
            raise ValueError("rational-draw bounds must be >= 1")
        if self.knn_k < 1 or self.n_trees < 1 or self.clusters < 1:
            raise ValueError("learning hyperparameters must be >= 1")
        if not 0 < self.test_fraction < 1:
            raise ValueError("test fraction must be strictly between 0 and 1")
        if self.knn_metric not in ("manhattan", "euclidean"):
            raise ValueError(f"unknown metric {self.knn_metric!r}")
        if self.class_scheme not in ("3class", "4class"):
            raise ValueError(f"unknown class scheme {self.class_scheme!r}")
        parse_patch(self.l2_patch)
        parse_patch(self.l3_patch)

    def to_json_obj(self) -> dict:
        obj = asdict(self)
        obj["height"] = f"{self.height.numerator}/{self.height.denominator}"
        return obj

    @classmethod
    def from_mapping(cls, mapping: dict) -> "RunConfig":
        """Build from string-valued keys, e.g. a parsed config file."""
        known = {f.name: f.type for f in fields(cls)}
        kwargs = {}
        for key, raw in mapping.items():
            name = key.replace("-", "_")
            if name not in known:
                raise ValueError(f"unknown config key {key!r}")
            current = getattr(cls(), name)
            if isinstance(current, bool):
                kwargs[name] = str(raw).lower() in ("1", "true", "yes")
            elif isinstance(current, int):
                kwargs[name] = int(raw)
            elif isinstance(current, float):
                kwargs[name] = float(raw)
            elif isinstance(current, Fraction):
                kwargs[name] = Fraction(str(raw))
            else:
                kwargs[name] = str(raw)
        return cls(**kwargs)


def parse_patch(spec: str) -> tuple[tuple[int, int], tuple[int, int], int]:
    """Parse "lo:hi,lo:hi,den" into two integer ranges and a denominator."""
    try:
        first, second, den = spec.split(",")
        a = tuple(int(v) for v in first.split(":"))
        b = tuple(int(v) for v in second.split(":"))
        den = int(den)
    except ValueError as exc:
        raise ValueError(f"bad patch spec {spec!r}") from exc
    if len(a) != 2 or len(b) != 2 or a[0] >= a[1] or b[0] >= b[1] or den < 1:
        raise ValueError(f"bad patch spec {spec!r}")
    return a, b, den


def load_config_file(path) -> dict:
    """Parse a key=value file; '#' starts a comment, blank lines ignored."""
    mapping = {}
    with open(path, "r", encoding="utf-8") as fh:
        for i, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{i}: expected key=value")
            key, value = line.split("=", 1)
            mapping[key.strip()] = value.strip()
    return mapping
