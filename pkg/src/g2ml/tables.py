"""Frozen reference data for the reproduction checks.

Point counts by height bound, the 27 class representatives at height 1, the
34 extra-involution tuples up to height 3, and the published list of
(3,3)-split tuples up to height 3 (which contains repeated rows and whose
announced totals disagree; the audit reports rather than adjudicates).
"""

from __future__ import annotations

# number of moduli classes of height <= h under weights (1, 2, 3, 5)
POINT_COUNTS_BY_HEIGHT = {
    1: 40,
    2: 24_862,
    3: 1_781_202,
    4: 39_251_668,
    5: 440_104_780,
    6: 3_195_496_050,
    7: 17_146_927_462,
    8: 73_657_853_512,
    9: 266_816_523_888,
    10: 844_626_323_110,
}

# class representatives of the 27 moduli points of weighted height 1
HEIGHT1_CLASS_POINTS = (
    (0, -1, 0, 1), (0, 1, 0, 1), (0, -1, 1, 1), (0, 0, 0, 1), (0, 0, 1, -1),
    (0, 0, 1, 1), (1, 0, -1, 1), (1, 0, 0, -1), (1, 0, 0, 1), (1, 0, 1, 1),
    (1, -1, -1, 1), (1, 1, -1, 1), (1, 1, 1, -1), (1, -1, 1, -1),
    (1, 1, 1, 1), (1, 0, -1, -1), (0, -1, 1, -1), (0, 1, 1, -1),
    (0, 1, 1, 1), (1, 0, 1, -1), (1, -1, -1, -1), (1, 1, -1, -1),
    (1, -1, 0, -1), (1, 1, 0, -1), (1, 1, 0, 1), (1, -1, 0, 1), (1, -1, 1, 1),
)

# the 34 normalized tuples of weighted height <= 3 on the extra-involution
# locus (both sign representatives of each of the 17 classes)
L2_POINTS_H3 = (
    (4, -14, 2, 1), (2, -11, 5, 1), (-2, -8, 14, 1),
    (-2, 16, -14, 1), (2, 13, -3, 1), (4, 16, 0, 2),
    (4, -8, 16, 2), (0, -3, 27, 2), (-4, 4, 28, 2),
    (-4, -9, 30, 3), (2, 4, 54, 3), (-2, 13, 57, 3),
    (-3, -15, 42, 6), (4, -9, 42, 6), (0, -15, 45, 8),
    (-4, -8, 56, 8), (3, -15, 48, 10), (-3, -15, -48, -10),
    (4, -8, -56, -8), (0, -15, -45, -8), (3, -15, -42, -6),
    (-4, -9, -42, -6), (2, 13, -57, -3), (-2, 4, -54, -3),
    (4, -9, -30, -3), (-4, 16, 0, -2), (4, 4, -28, -2),
    (0, -3, -27, -2), (-4, -8, -16, -2), (-2, 13, 3, -1),
    (2, 16, 14, -1), (2, -8, -14, -1), (-2, -11, -5, -1),
    (-4, -14, -2, -1),
)

# the published (3,3)-split list up to height 3, as printed: 44 numbered
# rows, of which the last five repeat earlier rows
L3_POINTS_H3_AS_PUBLISHED = (
    (6, 18, 27, 2), (-6, -18, 45, 2), (3, 18, 0, 4),
    (-3, -18, 36, 4), (5, -26, 56, 4), (-3, 27, 315, 4),
    (-5, 58, -76, 4), (-5, 31, -49, 4), (5, 29, -9, 4),
    (-2, -18, 39, 6), (-2, -18, 165, 6), (2, 18, -15, 6),
    (-8, -80, 429, 8), (-8, 49, -101, 8), (8, -47, -59, 8),
    (-1, -18, 60, 12), (8, 36, 69, 12), (-1, -45, 105, 12),
    (-8, -36, 123, 12), (-5, 67, -55, 12), (1, 18, -48, 12),
    (1, 63, -15, 12), (5, -65, -15, 12), (6, 36, 36, 16),
    (-6, -36, 108, 16), (8, -63, 3, 24), (-4, -36, 102, 24),
    (-8, 81, -171, 24), (4, 36, -6, 24), (5, -59, 16, 32),
    (5, -68, 100, 32), (-3, -36, 108, 32), (-3, -27, 504, 32),
    (-5, 61, -132, 32), (3, 36, -36, 32), (9, 54, 108, 36),
    (-9, -54, 216, 36), (-2, -36, 132, 48), (-2, -72, 336, 48),
    (3, 18, 0, 4), (-3, -18, 36, 4), (-2, -18, 39, 6),
    (2, 18, -15, 6), (-1, -18, 60, 12),
)

# announced totals that the printed list does not reconcile with
L3_ANNOUNCED_COUNTS = {"abstract": 44, "lemma": 46}

# reference confusion matrices used as metric fixtures (rows = true class)
NEURAL_NET_CONFUSION_FIXTURE = (
    (6255, 0, 0),
    (938, 8654, 1),
    (2, 0, 10000),
)

RANDOM_FOREST_CONFUSION_FIXTURE = (
    (9315, 0, 0),
    (2, 14513, 2),
    (0, 0, 15051),
)

KNN_CONFUSION_FIXTURE = (
    (9312, 3, 0),
    (4, 14511, 2),
    (0, 0, 15051),
)
