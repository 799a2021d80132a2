"""Acceptance gate: every criterion at its stated tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see one line per
criterion.  Criterion 6 is asserted exactly as stated and is an expected
failure: the published 34-tuple list provably equals the bound-2 scan, not
the bound-3 scan it is captioned with (see notes in the repository docs);
the test is strict, so a completeness regression that "fixes" it would
itself be flagged.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from g2ml.dataset import Dataset, export_jsonl, import_jsonl
from g2ml.enumeration import (count_even_weights, count_sextic_f,
                              enumerate_moduli, scan_l2, shell_count_g)
from g2ml.generate import build_dataset
from g2ml.config import RunConfig
from g2ml.dataset import export_features
from g2ml.igusa import (ModuliPoint, absolute_t, igusa_invariants,
                        same_moduli)
from g2ml.loci import (DegenerateParametersError, L3Params, j30, l2_curve_point,
                       l3_curve, l3_point, l5_constraint, l5_generate_points,
                       l5_params_from_slice, l5_slice, uvw_from_params,
                       uvw_residual)
from g2ml.mlearn import (KNNModel, MetricsReport, RandomForest,
                         adjusted_rand_index, evaluate, gmm_spherical,
                         kmeans, load_features_csv, normalize_rows,
                         train_test_split)
from g2ml.sampling import child_rng
from g2ml.tables import (HEIGHT1_CLASS_POINTS, L2_POINTS_H3,
                         L3_ANNOUNCED_COUNTS, L3_POINTS_H3_AS_PUBLISHED,
                         NEURAL_NET_CONFUSION_FIXTURE,
                         POINT_COUNTS_BY_HEIGHT,
                         RANDOM_FOREST_CONFUSION_FIXTURE)
from g2ml.wproj import (MODULI_WEIGHTS, WeightedPoint, abs_normalize,
                        abs_wgcd, height_leq, normalize, wgcd)

DESK_SEED = 20240601


def report(criterion: str, passed: bool, detail: str = ""):
    line = f"[{'PASS' if passed else 'FAIL'}] {criterion}"
    if detail:
        line += f"  ({detail})"
    print(line)
    assert passed, line


@pytest.fixture(scope="module")
def desk_ml(tmp_path_factory):
    """Criterion 11/12 shared state: regenerated desk-scale dataset."""
    t0 = time.time()
    config = RunConfig(seed=DESK_SEED, n_l2=10000, n_l3=10000,
                       n_other=10000)
    dataset, _ = build_dataset(config)
    path = tmp_path_factory.mktemp("ml") / "features.csv"
    export_features(dataset, path, "3class")
    raw, labels, names = load_features_csv(path)
    data = normalize_rows(raw, labels, names)
    train, test = train_test_split(data, 0.3, seed=DESK_SEED)
    return {"data": data, "train": train, "test": test, "names": names,
            "labels": labels, "build_seconds": time.time() - t0}


def test_criterion_01_counting_table():
    t0 = time.time()
    for h, value in POINT_COUNTS_BY_HEIGHT.items():
        assert count_sextic_f(h) == value, f"h={h}"
    elapsed = time.time() - t0
    report("1: counting table h=1..10 exact", elapsed < 1.0,
           f"{elapsed * 1000:.1f} ms")


def test_criterion_02_shell_identity():
    t0 = time.time()
    assert shell_count_g(1) == 40
    for h in range(1, 101):
        lower = count_sextic_f(h - 1) if h > 1 else 0
        assert shell_count_g(h) == count_sextic_f(h) - lower, f"h={h}"
    elapsed = time.time() - t0
    report("2: shell difference identity h=1..100", elapsed < 1.0,
           f"{elapsed * 1000:.1f} ms")


def test_criterion_03_even_weight_corollary():
    ok = all(count_even_weights(h) == count_sextic_f(h * h)
             for h in range(1, 11))
    report("3: even-weight corollary h=1..10", ok)


def test_criterion_04_height_one_enumeration():
    t0 = time.time()
    points, rep = enumerate_moduli(1)
    elapsed = time.time() - t0
    classes = {}
    for p in points:
        classes.setdefault(absolute_t(p).as_tuple(), []).append(p)
    ref = [ModuliPoint(*t) for t in HEIGHT1_CLASS_POINTS]
    hits = 0
    for r in ref:
        key = absolute_t(r).as_tuple()
        hits += key in classes
    ok = (rep.class_count == 27 and hits == 27
          and len({absolute_t(r).as_tuple() for r in ref}) == 27
          and elapsed < 10.0)
    report("4: height-1 enumeration yields the 27 classes",
           ok, f"{rep.normalized_count} tuples, {rep.class_count} classes, "
               f"{elapsed:.1f} s")


def test_criterion_05_locus_empty_below_three_halves():
    t0 = time.time()
    points = scan_l2(Fraction(3, 2), strict=True, workers=2)
    elapsed = time.time() - t0
    report("5: no locus points below height 3/2",
           points == [] and elapsed < 60.0, f"{elapsed:.1f} s")


@pytest.mark.xfail(
    strict=True,
    reason="spec/source defect: the published 34-tuple list is the exact "
           "height<=2 answer (see companion test); the verified-complete "
           "bound-3 scan holds 1520 tuples")
def test_criterion_06_locus_at_height_three_as_stated():
    t0 = time.time()
    points = scan_l2(3, workers=2)
    elapsed = time.time() - t0
    classes = {absolute_t(p).as_tuple() for p in points}
    got = {p.coords for p in points}
    print(f"  criterion 6 scan: {len(got)} tuples, {len(classes)} classes, "
          f"{elapsed:.0f} s (hard budget 7200 s)")
    report("6: bound-3 scan equals the published 34 tuples",
           got == set(L2_POINTS_H3) and elapsed < 7200,
           f"found {len(got)} tuples")


def test_criterion_06_companion_attainable_facts():
    t0 = time.time()
    at3 = scan_l2(3, workers=2)
    elapsed = time.time() - t0
    got3 = {p.coords for p in at3}
    got2 = {p.coords for p in scan_l2(2, workers=2)}
    ref = set(L2_POINTS_H3)
    classes2 = {absolute_t(ModuliPoint(*t)).as_tuple() for t in ref}
    ok = (got2 == ref and classes2.__len__() == 17 and ref <= got3
          and len(got3) == 1520 and elapsed < 7200)
    report("6': published tuples = exact bound-2 scan; 17 classes; "
           "contained in the bound-3 scan", ok,
           f"bound-3 count {len(got3)}, {elapsed:.0f} s")


def test_criterion_07_l3_table_audit():
    rows = L3_POINTS_H3_AS_PUBLISHED
    heights_ok = all(height_leq(WeightedPoint(t, MODULI_WEIGHTS), 3)
                     for t in rows)
    normalized_ok = all(wgcd(WeightedPoint(t, MODULI_WEIGHTS)) == 1
                        for t in rows)
    distinct = len(set(rows))
    report("7: published (3,3)-split list audit",
           heights_ok and normalized_ok,
           f"{len(rows)} printed rows, {distinct} distinct, announced "
           f"{L3_ANNOUNCED_COUNTS['abstract']}/{L3_ANNOUNCED_COUNTS['lemma']}")


def test_criterion_08_l3_consistency_anchor():
    hits = 0
    i = 0
    while hits < 100:
        rng = child_rng(DESK_SEED, "anchor", i)
        i += 1
        u = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
        v = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
        try:
            params = L3Params(u, v)
        except DegenerateParametersError:
            continue
        assert same_moduli(igusa_invariants(l3_curve(params)),
                           l3_point(params)), (u, v)
        hits += 1
    report("8: curve/formula anchor on 100 seeded parameter pairs", True,
           f"{i} draws")


def test_criterion_09_l2_generator_soundness():
    on_locus = 0
    produced = 0
    i = 0
    while produced < 1000:
        rng = child_rng(DESK_SEED, "l2gen", i)
        i += 1
        a = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
        b = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
        try:
            p = l2_curve_point(a, b)
        except Exception:
            continue
        produced += 1
        on_locus += (j30(p) == 0)

    generic_hits = []
    for k in range(1000):
        rng = child_rng(DESK_SEED, "generic", k)
        coords = [rng.randint(-9, 9), rng.randint(-81, 81),
                  rng.randint(-729, 729)]
        j10 = rng.choice([x for x in range(-59049, 59050) if x])
        p = ModuliPoint.from_raw(*coords, j10)
        if j30(p) == 0:
            generic_hits.append(p.coords)
    for hit in generic_hits:
        print(f"  generic draw on the locus (reported): {hit}")
    report("9: involution family on-locus 1000/1000; generic draws off it",
           on_locus == 1000 and not generic_hits,
           f"{len(generic_hits)} generic hits")


def test_criterion_10_l5_constraint_suite():
    # built-in slices: cross-multiplied, the constraint is a polynomial of
    # degree <= 8 in t, so vanishing at 10 points certifies the identity
    for s in (Fraction(2), Fraction(1, 2)):
        par = l5_slice(s)
        checked = 0
        t = Fraction(-8)
        while checked < 10:
            t += 1
            try:
                a, b = par(t)
            except DegenerateParametersError:
                continue
            assert l5_constraint(a, b, s) == 0
            checked += 1

    residual_ok = 0
    samples = 0
    i = 0
    while samples < 100:
        rng = child_rng(DESK_SEED, "l5", i)
        i += 1
        s = Fraction(rng.randint(-20, 20), rng.randint(1, 8))
        t = Fraction(rng.randint(-20, 20), rng.randint(1, 8))
        try:
            params = l5_params_from_slice(s, t)
        except DegenerateParametersError:
            continue
        assert l5_constraint(params.a, params.b, params.z) == 0
        try:
            triple = uvw_from_params(params)
        except DegenerateParametersError:
            continue
        samples += 1
        residual_ok += (uvw_residual(triple) == 0)

    pts = l5_generate_points(50, seed=DESK_SEED)
    again = l5_generate_points(50, seed=DESK_SEED)
    deterministic = [p.coords for p in pts] == [p.coords for p in again]
    distinct = len({absolute_t(p).as_tuple() for p in pts})
    report("10: slice identities, w-relation residuals, 50-point generation",
           residual_ok == samples == 100 and deterministic and len(pts) == 50,
           f"residual zero on {residual_ok}/100; {distinct} distinct classes")


def test_criterion_11_ml_reproduction(desk_ml):
    t0 = time.time()
    train, test, names = desk_ml["train"], desk_ml["test"], desk_ml["names"]
    knn_pred = KNNModel(5, "manhattan").fit(train).predict(test.rows)
    _, knn_rep = evaluate(knn_pred, test.labels, len(names))
    forest = RandomForest(200, seed=DESK_SEED).fit(train)
    rf_pred = forest.predict(test.rows)
    _, rf_rep = evaluate(rf_pred, test.labels, len(names))
    # reported, not asserted: bagged purity trees should fit the train set
    train_acc = float((forest.predict(train.rows) == train.labels).mean())
    elapsed = desk_ml["build_seconds"] + (time.time() - t0)
    ok = (knn_rep.accuracy >= 0.99 and knn_rep.macro_f1 >= 0.99
          and rf_rep.accuracy >= 0.99 and elapsed < 900)
    report("11: desk-scale KNN/forest accuracy floors", ok,
           f"knn acc {knn_rep.accuracy:.5f} macroF1 {knn_rep.macro_f1:.5f}; "
           f"forest acc {rf_rep.accuracy:.5f} (train {train_acc:.5f}); "
           f"{elapsed:.0f} s")


def test_criterion_12_clustering(desk_ml):
    data, labels = desk_ml["data"], desk_ml["labels"]
    km = kmeans(data.rows, 4, seed=DESK_SEED, restarts=10)
    gm = gmm_spherical(data.rows, 4, seed=DESK_SEED)
    ari_km = adjusted_rand_index(km.labels, labels)
    ari_gm = adjusted_rand_index(gm.labels, labels)

    rng = np.random.default_rng(DESK_SEED)
    centers = np.eye(4) * 4.0
    rows = np.vstack([c + 0.02 * rng.standard_normal((100, 4))
                      for c in centers])
    truth = np.repeat(np.arange(4), 100)
    blob_km = adjusted_rand_index(kmeans(rows, 4, seed=1, restarts=10).labels,
                                  truth)
    blob_gm = adjusted_rand_index(gmm_spherical(rows, 4, seed=1).labels,
                                  truth)
    report("12: mixture-model ARI dominates k-means; blobs at ARI 1",
           ari_gm >= ari_km and blob_km == 1.0 and blob_gm == 1.0,
           f"gmm {ari_gm:.4f} vs kmeans {ari_km:.4f}")


def test_criterion_13_metric_fixtures():
    nn = MetricsReport.from_confusion(np.array(NEURAL_NET_CONFUSION_FIXTURE))
    rf = MetricsReport.from_confusion(
        np.array(RANDOM_FOREST_CONFUSION_FIXTURE))
    ok = (abs(nn.precision[0] - 0.87) <= 0.005
          and nn.recall[0] == 1.0
          and abs(nn.f1[0] - 0.93) <= 0.005
          and abs(rf.accuracy - 38879 / 38883) <= 1e-6)
    report("13: printed-matrix fixtures reproduce", ok,
           f"class-1 P {nn.precision[0]:.4f} R {nn.recall[0]:.2f} "
           f"F1 {nn.f1[0]:.4f}; forest acc {rf.accuracy:.6f}")


def test_criterion_14_arithmetic_property_suite(tmp_path):
    rng = random.Random(DESK_SEED)
    for _ in range(10_000):
        coords = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(4)]
        if not any(coords):
            continue
        p = WeightedPoint(tuple(coords), MODULI_WEIGHTS)
        assert math.gcd(*coords) % wgcd(p) == 0

    for _ in range(500):
        coords = [rng.randint(-500, 500) * rng.choice((1, 2, 4, 8))
                  for _ in range(4)]
        if not any(coords):
            continue
        p = WeightedPoint(tuple(coords), MODULI_WEIGHTS)
        n, a = normalize(p), abs_normalize(p)
        assert normalize(n) == n and wgcd(n) == 1
        assert abs_normalize(a) == a and abs_wgcd(a).is_one

    boundary = WeightedPoint((4, -14, 2, 1), MODULI_WEIGHTS)  # height 2 exactly
    assert wgcd(boundary) == 1
    assert height_leq(boundary, 2)
    assert not height_leq(boundary, 2, strict=True)
    assert not height_leq(boundary, Fraction(2 * 10 ** 9 - 1, 10 ** 9))
    quartic_edge = WeightedPoint((0, -81, 0, 1), MODULI_WEIGHTS)  # height 3
    assert height_leq(quartic_edge, 3)
    assert not height_leq(quartic_edge, 3, strict=True)

    dataset = Dataset(metadata={"seed": DESK_SEED})
    while len(dataset) < 10_000:
        coords = [rng.randint(-50, 50) for _ in range(3)]
        j10 = rng.choice([x for x in range(-200, 201) if x])
        dataset.insert_point(ModuliPoint.from_raw(*coords, j10), "random")
    path = tmp_path / "big.jsonl"
    export_jsonl(dataset, path)
    back = import_jsonl(path)
    assert back.records == dataset.records and back.metadata == dataset.metadata
    report("14: arithmetic and round-trip property suite", True,
           "10^4 wgcd draws, idempotence, boundary heights, 10^4-record "
           "round trip")
