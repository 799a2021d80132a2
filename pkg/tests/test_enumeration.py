"""Counting formulas, bounded enumeration, and the locus scan."""

import random
from fractions import Fraction

import pytest

from g2ml.enumeration import (CountReport, ResourceBudgetError,
                              class_representative, coordinate_bound,
                              count_bound_general, count_even_weights,
                              count_sextic_f, enumerate_moduli,
                              integer_cubic_roots, scan_l2, shell_count_g)
from g2ml.igusa import ModuliPoint, absolute_t, same_moduli
from g2ml.loci import in_l2
from g2ml.tables import (HEIGHT1_CLASS_POINTS, L2_POINTS_H3,
                         POINT_COUNTS_BY_HEIGHT)
from g2ml.wproj import height_leq, wgcd


class TestCountingFormulas:
    def test_published_values(self):
        for h, value in POINT_COUNTS_BY_HEIGHT.items():
            assert count_sextic_f(h) == value

    def test_factored_form(self):
        for h in range(1, 101):
            factored = (h ** 5 * (2 * h ** 3 + 1) * (2 * h ** 2 + 1)
                        * (2 * h + 1)
                        + h ** 3 * (2 * h ** 2 + 1) * (2 * h + 1)
                        + h ** 2 * (2 * h + 1) + h)
            assert count_sextic_f(h) == factored

    def test_shell_difference_identity(self):
        assert shell_count_g(1) == 40
        for h in range(2, 101):
            assert shell_count_g(h) == count_sextic_f(h) - count_sextic_f(h - 1)

    def test_even_weight_reduction(self):
        for h in range(1, 11):
            assert count_even_weights(h) == count_sextic_f(h * h)
        assert count_even_weights(2) == 39_251_668
        assert count_even_weights(3) == 266_816_523_888

    def test_general_bound_specializes(self):
        assert count_bound_general((1, 2, 3, 5), 1) == 40
        assert count_bound_general((1, 2, 3, 5), 2) == 24_862
        for h in range(1, 51):
            assert count_bound_general((1, 2, 3, 5), h) == count_sextic_f(h)
        assert count_bound_general((1,), 1) == 1

    def test_bad_bound(self):
        with pytest.raises(ValueError):
            count_sextic_f(0)


class TestCoordinateBound:
    def test_integer_and_strict(self):
        assert coordinate_bound(Fraction(3), 2) == 9
        assert coordinate_bound(Fraction(3), 2, strict=True) == 8
        assert coordinate_bound(Fraction(3, 2), 10) == 57
        assert coordinate_bound(Fraction(3, 2), 10, strict=True) == 57
        assert coordinate_bound(Fraction(1), 10, strict=True) == 0


class TestEnumerate:
    def test_height_one(self):
        points, report = enumerate_moduli(1)
        assert report.raw_count == 54
        assert report.normalized_count == 54
        assert report.class_count == 27
        for p in points:
            assert wgcd(p.as_weighted_point()) == 1
            assert height_leq(p.as_weighted_point(), 1)

    def test_height_one_matches_reference_classes(self):
        points, _ = enumerate_moduli(1)
        classes = {absolute_t(p).as_tuple() for p in points}
        ref = {absolute_t(ModuliPoint(*t)).as_tuple()
               for t in HEIGHT1_CLASS_POINTS}
        assert len(ref) == 27
        assert classes == ref

    def test_count_report_ordering_enforced(self):
        with pytest.raises(ValueError):
            CountReport(Fraction(1), False, 1, 2, 3)

    def test_budget_guard(self):
        with pytest.raises(ResourceBudgetError):
            enumerate_moduli(3, candidate_limit=1000)

    def test_monotone_in_bound(self):
        _, r1 = enumerate_moduli(1)
        _, r2 = enumerate_moduli(Fraction(6, 5))
        assert r2.normalized_count >= r1.normalized_count
        assert r2.class_count >= r1.class_count


class TestClassRepresentative:
    def test_sign_canonicalization(self):
        assert class_representative((-3, -15, -48, -10)) == (3, -15, 48, 10)
        assert class_representative((3, -15, 48, 10)) == (3, -15, 48, 10)
        assert class_representative((0, -15, -45, -8)) == (0, -15, 45, 8)
        assert class_representative((0, 1, 0, 1)) == (0, 1, 0, 1)

    def test_idempotent_and_class_stable(self):
        rng = random.Random(71)
        for _ in range(100):
            coords = [rng.randint(-9, 9) for _ in range(3)]
            j10 = rng.choice([x for x in range(-9, 10) if x])
            t = (*coords, j10)
            rep = class_representative(t)
            flip = (-t[0], t[1], -t[2], -t[3])
            assert class_representative(rep) == rep
            assert class_representative(flip) == rep
            assert same_moduli(ModuliPoint(*t), ModuliPoint(*rep))


class TestCubicRoots:
    def test_known_roots(self):
        # (x - 3)(x + 5)(2x - 1) = 2x^3 + 3x^2 - 32x + 15
        assert integer_cubic_roots(2, 3, -32, 15, -10, 10) == [-5, 3]
        assert integer_cubic_roots(1, 0, 0, -27, -100, 100) == [3]
        assert integer_cubic_roots(1, -3, 3, -1, -5, 5) == [1]  # triple root

    def test_exhaustive_against_brute_force(self):
        rng = random.Random(72)
        for _ in range(400):
            roots = [rng.randint(-12, 12) for _ in range(3)]
            lead = rng.choice((-4, -1, 1, 2, 7))
            c3 = lead
            c2 = -lead * (roots[0] + roots[1] + roots[2])
            c1 = lead * (roots[0] * roots[1] + roots[0] * roots[2]
                         + roots[1] * roots[2])
            c0 = -lead * roots[0] * roots[1] * roots[2]
            lo, hi = -12, 12
            want = sorted({r for r in roots if lo <= r <= hi})
            assert integer_cubic_roots(c3, c2, c1, c0, lo, hi) == want

    def test_random_coefficients_against_scan(self):
        rng = random.Random(73)
        for _ in range(300):
            c3 = rng.choice([x for x in range(-9, 10) if x])
            c2, c1, c0 = (rng.randint(-200, 200) for _ in range(3))
            lo, hi = -40, 40
            want = [x for x in range(lo, hi + 1)
                    if ((c3 * x + c2) * x + c1) * x + c0 == 0]
            assert integer_cubic_roots(c3, c2, c1, c0, lo, hi) == want


class TestScan:
    def test_empty_below_three_halves(self):
        assert scan_l2(Fraction(3, 2), strict=True) == []
        assert scan_l2(Fraction(3, 2)) == []

    def test_height_two_matches_published_list(self):
        got = {p.coords for p in scan_l2(2)}
        assert got == set(L2_POINTS_H3)

    def test_agrees_with_filtered_enumeration(self):
        h = Fraction(17, 10)
        points, _ = enumerate_moduli(h)
        brute = {p.coords for p in points if in_l2(p)}
        solved = {p.coords for p in scan_l2(h)}
        assert brute == solved

    def test_output_is_normalized_and_in_bound(self):
        for p in scan_l2(2):
            wp = p.as_weighted_point()
            assert wgcd(wp) == 1
            assert height_leq(wp, 2)
            assert in_l2(p)

    def test_parallel_merge_is_deterministic(self):
        assert [p.coords for p in scan_l2(2, workers=2)] == \
               [p.coords for p in scan_l2(2, workers=1)]

    def test_budget_guard(self):
        with pytest.raises(ResourceBudgetError):
            scan_l2(3, candidate_limit=100)
