"""Command-line entry point.

Subcommands: count, enumerate, scan-l2, gen, dataset, ml, report, plot.
Exit codes: 0 success, 1 computation error, 2 usage error.  Errors are
mirrored to stderr as one-line JSON objects with machine-readable codes.
Every artifact file embeds the run configuration and tool version, and
contains no timestamps, so re-running with the same arguments reproduces it
byte for byte.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .config import RunConfig, load_config_file, parse_patch
from .dataset import (Dataset, audit, export_features, export_jsonl,
                      import_jsonl, merge_datasets, build_record)
from .enumeration import (count_bound_general, count_even_weights,
                          count_sextic_f, enumerate_moduli, scan_l2)
from .generate import build_dataset, gen_l2_points, gen_l3_points
from .loci import l5_generate_points
from .mlearn import (KNNModel, RandomForest, adjusted_rand_index,
                     evaluate, format_report_table, gmm_spherical, kmeans,
                     load_features_csv, load_model, matched_cluster_accuracy,
                     normalize_rows, save_model, train_test_split)
from .report import run_table_checks


def _tool_metadata(config: RunConfig | None = None) -> dict:
    meta = {"tool": {"name": "g2ml", "version": __version__}}
    if config is not None:
        meta["config"] = config.to_json_obj()
    return meta


def _write_atomic(path: str, text: str) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _write_points_jsonl(points, path: str, config: RunConfig) -> None:
    lines = [json.dumps({"schema": "g2ml-points/1",
                         "metadata": _tool_metadata(config)}, sort_keys=True)]
    lines.extend(json.dumps(p.to_json_obj(), sort_keys=True) for p in points)
    _write_atomic(path, "\n".join(lines) + "\n")


def _config_from_args(args) -> RunConfig:
    mapping = {}
    if getattr(args, "config", None):
        mapping.update(load_config_file(args.config))
    config = RunConfig.from_mapping(mapping)
    for name in ("seed", "parallelism", "numerator_bound",
                 "denominator_bound"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(config, name, value)
    if getattr(args, "h", None) is not None:
        config.height = Fraction(args.h)
    if getattr(args, "strict", False):
        config.strict = True
    config.__post_init__()
    return config


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------

def cmd_count(args) -> int:
    weights = tuple(int(w) for w in args.weights.split(","))
    h = int(args.h)
    if weights == (1, 2, 3, 5):
        value = count_sextic_f(h)
    elif weights == (2, 4, 6, 10):
        value = count_even_weights(h)
    else:
        value = count_bound_general(weights, h)
        print("note: general weights use the summation upper bound",
              file=sys.stderr)
    print(value)
    return 0


def cmd_enumerate(args) -> int:
    config = _config_from_args(args)
    points, report = enumerate_moduli(config.height, config.strict)
    _write_points_jsonl(points, args.out, config)
    summary = {"schema": "g2ml-count-report/1",
               "metadata": _tool_metadata(config),
               "report": report.to_json_obj()}
    _write_atomic(args.out + ".summary.json",
                  json.dumps(summary, sort_keys=True, indent=2) + "\n")
    print(f"{report.normalized_count} normalized tuples, "
          f"{report.class_count} classes -> {args.out}")
    return 0


def cmd_scan_l2(args) -> int:
    config = _config_from_args(args)
    points = scan_l2(config.height, config.strict, workers=config.parallelism)
    _write_points_jsonl(points, args.out, config)
    print(f"{len(points)} normalized tuples on the locus -> {args.out}")
    return 0


def cmd_gen(args) -> int:
    config = _config_from_args(args)
    if args.patch:
        if args.locus == "l2":
            config.l2_patch = args.patch
        else:
            config.l3_patch = args.patch
        config.__post_init__()
    if args.locus == "l2":
        points = gen_l2_points(args.n, config.seed,
                               parse_patch(config.l2_patch))
        provenance = "l2-param"
    elif args.locus == "l3":
        points = gen_l3_points(args.n, config.seed,
                               parse_patch(config.l3_patch))
        provenance = "l3-param"
    else:
        points = l5_generate_points(args.n, config.seed,
                                    numerator_bound=config.numerator_bound,
                                    denominator_bound=config.denominator_bound)
        provenance = "l5-param"
    dataset = Dataset(metadata=_tool_metadata(config))
    for p in points:
        dataset.insert(build_record(p, provenance))
    export_jsonl(dataset, args.out)
    print(f"{len(points)} points ({len(dataset)} records) -> {args.out}")
    return 0


def cmd_dataset_build(args) -> int:
    config = _config_from_args(args)
    config.n_l2, config.n_l3 = args.n_l2, args.n_l3
    config.n_l5, config.n_other = args.n_l5, args.n_other
    dataset, summary = build_dataset(config, enum_height=args.enum_height)
    dataset.metadata = {**_tool_metadata(config),
                        "build": summary.to_json_obj()}
    export_jsonl(dataset, args.out)
    print(f"{len(dataset)} records ({summary.merged} merged) -> {args.out}")
    return 0


def cmd_dataset_merge(args) -> int:
    merged = import_jsonl(args.inputs[0])
    for path in args.inputs[1:]:
        merged = merge_datasets(merged, import_jsonl(path))
    export_jsonl(merged, args.out)
    print(f"{len(merged)} records -> {args.out}")
    return 0


def cmd_dataset_audit(args) -> int:
    dataset = import_jsonl(args.data)
    problems = audit(dataset)
    for line in problems:
        print(f"AUDIT: {line}")
    print(f"{len(dataset)} records, {len(problems)} problems")
    return 0 if not problems else 1


def cmd_dataset_features(args) -> int:
    dataset = import_jsonl(args.data)
    written, excluded = export_features(dataset, args.out, args.scheme)
    print(f"{written} rows ({excluded} excluded) -> {args.out}")
    return 0


def cmd_ml_train(args) -> int:
    config = _config_from_args(args)
    raw, labels, names = load_features_csv(args.data)
    data = normalize_rows(raw, labels, names)
    train, test = train_test_split(data, config.test_fraction, config.seed)
    if args.model == "knn":
        model = KNNModel(config.knn_k, config.knn_metric).fit(train)
    else:
        model = RandomForest(config.n_trees, config.seed).fit(train)
    predicted = model.predict(test.rows)
    cm, report = evaluate(predicted, test.labels, len(names))
    print(format_report_table(report, names))
    if args.out:
        save_model(model, args.out)
        print(f"model -> {args.out}")
    if args.metrics:
        payload = {"schema": "g2ml-metrics/1",
                   "metadata": _tool_metadata(config),
                   "confusion": cm.tolist(), "classes": list(names),
                   "metrics": report.to_json_obj()}
        _write_atomic(args.metrics,
                      json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return 0


def cmd_ml_eval(args) -> int:
    model = load_model(args.model)
    raw, labels, names = load_features_csv(args.data)
    data = normalize_rows(raw, labels, names)
    predicted = model.predict(data.rows)
    cm, report = evaluate(predicted, data.labels, len(names))
    print(format_report_table(report, names))
    if args.metrics:
        payload = {"schema": "g2ml-metrics/1", "metadata": _tool_metadata(),
                   "confusion": cm.tolist(), "classes": list(names),
                   "metrics": report.to_json_obj()}
        _write_atomic(args.metrics,
                      json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return 0


def cmd_ml_cluster(args) -> int:
    config = _config_from_args(args)
    raw, labels, names = load_features_csv(args.data)
    data = normalize_rows(raw, labels, names)
    if args.algorithm == "kmeans":
        result = kmeans(data.rows, args.k, seed=config.seed,
                        restarts=config.restarts)
    else:
        result = gmm_spherical(data.rows, args.k, seed=config.seed)
    ari = adjusted_rand_index(result.labels, data.labels)
    acc = (matched_cluster_accuracy(result.labels, data.labels)
           if args.k <= 8 else float("nan"))
    print(f"{args.algorithm} k={args.k}: ARI={ari:.4f} "
          f"matched-accuracy={acc:.4f}")
    if args.out:
        payload = {"schema": "g2ml-cluster/1",
                   "metadata": _tool_metadata(config),
                   "algorithm": args.algorithm, "k": args.k,
                   "ari": ari, "matched_accuracy": acc,
                   "assignments": result.labels.tolist(),
                   "model": result.to_json_obj()}
        _write_atomic(args.out,
                      json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return 0


def cmd_report(args) -> int:
    config = _config_from_args(args)
    checks = run_table_checks(workers=config.parallelism, full=args.full)
    failed = False
    lines = ["name\tstatus\tsummary"]
    for check in checks:
        print(f"{check.name}: {check.status} - {check.summary}")
        for detail in check.details:
            print(f"    {detail}")
        lines.append(f"{check.name}\t{check.status}\t{check.summary}")
        failed = failed or check.status == "FAIL"
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        _write_atomic(os.path.join(args.out, "table-checks.tsv"),
                      "\n".join(lines) + "\n")
        from .plotting import plot_counts
        from .tables import POINT_COUNTS_BY_HEIGHT
        plot_counts(POINT_COUNTS_BY_HEIGHT,
                    os.path.join(args.out, "counts.svg"))
        print(f"report artifacts -> {args.out}")
    return 1 if failed else 0


def cmd_plot(args) -> int:
    from .plotting import plot_dataset
    dataset = import_jsonl(args.data)
    drawn = plot_dataset(dataset, args.out, scheme=args.scheme,
                         max_points=args.max_points)
    print(f"{drawn} points -> {args.out}")
    return 0


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------


def _flag_bool(value: str) -> bool:
    lowered = value.lower()
    if lowered in ("1", "true", "yes"):
        return True
    if lowered in ("0", "false", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {value!r}")

class Parser(argparse.ArgumentParser):
    def error(self, message):
        print(json.dumps({"error": {"code": "usage", "message": message}}),
              file=sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _add_common(sub, *, bounds=False):
    sub.add_argument("--config", help="key=value config file")
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--parallelism", type=int, default=None)
    if bounds:
        sub.add_argument("--numerator-bound", type=int, default=None,
                         dest="numerator_bound")
        sub.add_argument("--denominator-bound", type=int, default=None,
                         dest="denominator_bound")


def build_parser() -> Parser:
    parser = Parser(prog="g2ml", description=__doc__)
    parser.add_argument("--version", action="version",
                        version=f"g2ml {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("count", help="closed-form point counts")
    p.add_argument("--weights", required=True)
    p.add_argument("--h", required=True)
    p.set_defaults(func=cmd_count)

    p = subs.add_parser("enumerate", help="exhaustive bounded-height points")
    p.add_argument("--h", required=True)
    p.add_argument("--strict", type=_flag_bool, nargs="?", const=True,
                   default=False)
    p.add_argument("--out", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_enumerate)

    p = subs.add_parser("scan-l2", help="extra-involution locus scan")
    p.add_argument("--h", required=True)
    p.add_argument("--strict", type=_flag_bool, nargs="?", const=True,
                   default=False)
    p.add_argument("--out", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_scan_l2)

    p = subs.add_parser("gen", help="generate locus points")
    p.add_argument("locus", choices=("l2", "l3", "l5"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--patch", default=None,
                   help="lo:hi,lo:hi,den parameter patch (l2/l3 only)")
    _add_common(p, bounds=True)
    p.set_defaults(func=cmd_gen)

    p = subs.add_parser("dataset", help="dataset operations")
    dsubs = p.add_subparsers(dest="dataset_command", required=True)

    d = dsubs.add_parser("build")
    d.add_argument("--n-l2", type=int, default=0)
    d.add_argument("--n-l3", type=int, default=0)
    d.add_argument("--n-l5", type=int, default=0)
    d.add_argument("--n-other", type=int, default=0)
    d.add_argument("--enum-height", default=None)
    d.add_argument("--h", default=None,
                   help="height box for generic draws (default 3)")
    d.add_argument("--out", required=True)
    _add_common(d, bounds=True)
    d.set_defaults(func=cmd_dataset_build)

    d = dsubs.add_parser("merge")
    d.add_argument("inputs", nargs="+")
    d.add_argument("--out", required=True)
    d.set_defaults(func=cmd_dataset_merge)

    d = dsubs.add_parser("audit")
    d.add_argument("data")
    d.set_defaults(func=cmd_dataset_audit)

    d = dsubs.add_parser("features")
    d.add_argument("data")
    d.add_argument("--out", required=True)
    d.add_argument("--scheme", choices=("3class", "4class"),
                   default="3class")
    d.set_defaults(func=cmd_dataset_features)

    p = subs.add_parser("ml", help="train, evaluate, cluster")
    msubs = p.add_subparsers(dest="ml_command", required=True)

    m = msubs.add_parser("train")
    m.add_argument("--data", required=True)
    m.add_argument("--model", choices=("knn", "forest"), required=True)
    m.add_argument("--out", default=None)
    m.add_argument("--metrics", default=None)
    _add_common(m)
    m.set_defaults(func=cmd_ml_train)

    m = msubs.add_parser("eval")
    m.add_argument("--model", required=True)
    m.add_argument("--data", required=True)
    m.add_argument("--metrics", default=None)
    m.set_defaults(func=cmd_ml_eval)

    m = msubs.add_parser("cluster")
    m.add_argument("--data", required=True)
    m.add_argument("--algorithm", choices=("kmeans", "gmm"), required=True)
    m.add_argument("--k", type=int, default=4)
    m.add_argument("--out", default=None)
    _add_common(m)
    m.set_defaults(func=cmd_ml_cluster)

    p = subs.add_parser("report", help="reproduction checks")
    p.add_argument("what", choices=("tables",))
    p.add_argument("--full", action="store_true",
                   help="include the bound-3 locus scan")
    p.add_argument("--out", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_report)

    p = subs.add_parser("plot", help="dataset scatter figure (SVG)")
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--scheme", choices=("3class", "4class"),
                   default="3class")
    p.add_argument("--max-points", type=int, default=None)
    p.set_defaults(func=cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError) as exc:
        code = type(exc).__name__
        print(json.dumps({"error": {"code": code, "message": str(exc)}}),
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
