"""Deterministic seeded draws of rational parameters.

Child generators are keyed by (seed, label, indices) through the string
seeding path of random.Random, which hashes with SHA-512 and is therefore
stable across processes and platforms.  Generation keyed by draw index stays
deterministic under any parallel evaluation order.
"""

from __future__ import annotations

import random
from fractions import Fraction


def child_rng(seed: int, *key) -> random.Random:
    return random.Random(f"{seed}|" + "|".join(str(k) for k in key))


def random_rational(rng: random.Random, numerator_bound: int,
                    denominator_bound: int) -> Fraction:
    """Uniform p/q with |p| <= numerator_bound, 1 <= q <= denominator_bound."""
    num = rng.randint(-numerator_bound, numerator_bound)
    den = rng.randint(1, denominator_bound)
    return Fraction(num, den)


def random_nonzero_rational(rng: random.Random, numerator_bound: int,
                            denominator_bound: int,
                            exclude=(), max_retries: int = 100) -> Fraction:
    for _ in range(max_retries):
        value = random_rational(rng, numerator_bound, denominator_bound)
        if value != 0 and value not in exclude:
            return value
    raise RuntimeError("rejection sampling failed to find a usable rational")
