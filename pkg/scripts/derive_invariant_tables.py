#!/usr/bin/env python3
"""Derive the frozen coefficient tables used by g2ml.igusa.

The classical invariants of a binary sextic are defined as symmetric
functions of the roots x_1..x_6 of f (leading coefficient a6):

    I2  = a6^2  * sum over the 15 pairings {i,j}{k,l}{m,n} of
                  (ij)^2 (kl)^2 (mn)^2
    I4  = a6^4  * sum over the 10 unordered splits into two triples of
                  tri(A) * tri(B)
    I6  = a6^6  * sum over the 60 (split, bijection A->B) choices of
                  tri(A) * tri(B) * prod (a - sigma(a))^2
    I10 = a6^10 * prod_{i<j} (ij)^2          (the discriminant)

where (ij) = x_i - x_j and tri({i,j,k}) = ((ij)(jk)(ki))^2.

Each I_d is an isobaric polynomial of degree d and weight 3d in the
coefficients a0..a6.  This script recovers those polynomials exactly by
interpolation: evaluate the root-based definitions on random integer-rooted
sextics, solve the linear system over the monomial basis with Fraction
arithmetic, and verify the result on held-out samples (including reversed
and degree-5 edge cases).  The output is written as a Python module of
monomial tables.

Run from the repository root:

    python scripts/derive_invariant_tables.py --out src/g2ml/_invariant_tables.py
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from itertools import combinations, permutations


def pairings(items):
    """All perfect matchings of an even-length list."""
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        b = items[i]
        rest = items[1:i] + items[i + 1:]
        for tail in pairings(rest):
            yield [(a, b)] + tail


def tri(r, s):
    i, j, k = s
    return ((r[i] - r[j]) * (r[j] - r[k]) * (r[k] - r[i])) ** 2


def invariants_from_roots(r, a6):
    """Exact (I2, I4, I6, I10) for f = a6 * prod (x - r_i)."""
    idx = list(range(6))

    i2 = 0
    for m in pairings(idx):
        t = 1
        for (i, j) in m:
            t *= (r[i] - r[j]) ** 2
        i2 += t
    i2 *= a6 ** 2

    i4 = 0
    i6 = 0
    for a in combinations(idx, 3):
        b = tuple(sorted(set(idx) - set(a)))
        if a > b:
            continue  # unordered split
        ta, tb = tri(r, a), tri(r, b)
        i4 += ta * tb
        for perm in permutations(b):
            t = ta * tb
            for x, y in zip(a, perm):
                t *= (r[x] - r[y]) ** 2
            i6 += t
    i4 *= a6 ** 4
    i6 *= a6 ** 6

    i10 = 1
    for i, j in combinations(idx, 2):
        i10 *= (r[i] - r[j]) ** 2
    i10 *= a6 ** 10

    return i2, i4, i6, i10


def coeffs_from_roots(r, a6):
    """Coefficients (a0..a6) of a6 * prod (x - r_i)."""
    poly = [a6]
    for root in r:
        poly = [0] + poly
        for i in range(len(poly) - 1):
            poly[i] -= root * poly[i + 1]
    return tuple(poly)


def monomial_basis(degree, weight):
    """All exponent tuples (e0..e6) with sum e = degree, sum k*e_k = weight."""
    basis = []

    def rec(pos, deg_left, w_left, acc):
        if pos == 6:
            # exponent of a6 fixed by remaining degree
            if w_left == 6 * deg_left:
                basis.append(tuple(acc + [deg_left]))
            return
        for e in range(deg_left + 1):
            w = w_left - pos * e
            if w < 0:
                continue
            rec(pos + 1, deg_left - e, w, acc + [e])

    rec(0, degree, weight, [])
    return basis


def eval_monomial(coeffs, expo):
    v = 1
    for c, e in zip(coeffs, expo):
        if e:
            v *= c ** e
    return v


def solve_exact(rows, rhs):
    """Gaussian elimination over Fractions; rows are lists of ints."""
    n = len(rows[0])
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    m = len(aug)
    pivot_rows = []
    used = [False] * m
    for col in range(n):
        piv = None
        for i in range(m):
            if not used[i] and aug[i][col] != 0:
                piv = i
                break
        if piv is None:
            raise RuntimeError(f"singular system at column {col}; add samples")
        used[piv] = True
        pivot_rows.append((col, piv))
        inv = 1 / aug[piv][col]
        aug[piv] = [v * inv for v in aug[piv]]
        for i in range(m):
            if i != piv and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [vi - factor * vp for vi, vp in zip(aug[i], aug[piv])]
    sol = [Fraction(0)] * n
    for col, piv in pivot_rows:
        sol[col] = aug[piv][n]
    # consistency of the leftover rows
    for i in range(m):
        if not used[i] and aug[i][n] != 0:
            raise RuntimeError("inconsistent system; sampling bug")
    return sol


def random_sample(rng):
    # small roots keep the interpolation integers (hence the exact solve) fast
    roots = rng.sample(range(-8, 9), 6)
    a6 = rng.randint(1, 4)
    return roots, a6


def interpolate(rng, degree, label):
    basis = monomial_basis(degree, 3 * degree)
    print(f"{label}: basis size {len(basis)}", flush=True)
    nsamp = len(basis) + 12
    rows, rhs = [], []
    samples = []
    while len(rows) < nsamp:
        roots, a6 = random_sample(rng)
        coeffs = coeffs_from_roots(roots, a6)
        inv = invariants_from_roots(roots, a6)
        value = {2: inv[0], 4: inv[1], 6: inv[2], 10: inv[3]}[degree]
        rows.append([eval_monomial(coeffs, e) for e in basis])
        rhs.append(value)
        samples.append((roots, a6))
    sol = solve_exact(rows, rhs)
    table = [(c, e) for c, e in zip(sol, basis) if c != 0]
    # verification on fresh samples
    for _ in range(40):
        roots, a6 = random_sample(rng)
        coeffs = coeffs_from_roots(roots, a6)
        inv = invariants_from_roots(roots, a6)
        value = {2: inv[0], 4: inv[1], 6: inv[2], 10: inv[3]}[degree]
        got = sum(c * eval_monomial(coeffs, e) for c, e in table)
        assert got == value, f"{label} verification failed"
        # reversal symmetry: invariant under x <-> y (even degree)
        rev = tuple(reversed(coeffs))
        got_rev = sum(c * eval_monomial(rev, e) for c, e in table)
        assert got_rev == value, f"{label} reversal check failed"
    # degree-5 check: root at zero, reversed tuple has a6 = 0
    for _ in range(10):
        roots = [0] + rng.sample(range(1, 9), 5)
        a6 = rng.randint(1, 4)
        coeffs = coeffs_from_roots(roots, a6)
        inv = invariants_from_roots(roots, a6)
        value = {2: inv[0], 4: inv[1], 6: inv[2], 10: inv[3]}[degree]
        rev = tuple(reversed(coeffs))
        got = sum(c * eval_monomial(rev, e) for c, e in table)
        assert got == value, f"{label} degree-5 check failed"
    denoms = {c.denominator for c, _ in table}
    print(f"{label}: {len(table)} monomials, denominators {sorted(denoms)}",
          flush=True)
    return table


def format_table(name, table):
    lines = [f"{name} = ("]
    for c, e in sorted(table, key=lambda t: t[1], reverse=True):
        if c.denominator == 1:
            lines.append(f"    ({c.numerator}, {e}),")
        else:
            lines.append(f"    (F({c.numerator}, {c.denominator}), {e}),")
    lines.append(")")
    return "\n".join(lines)


def discriminant_table(rng):
    """I10 as the sextic discriminant, expanded symbolically.

    The closed form is cross-checked against the root-product definition on
    random integer-rooted samples, so the symbolic route never stands alone.
    """
    import sympy as sp

    x = sp.symbols("x")
    syms = sp.symbols("a0:7")
    poly = sp.Poly(sum(s * x ** i for i, s in enumerate(syms)), x)
    disc = sp.Poly(sp.discriminant(poly), *syms)
    table = []
    for expo, coef in disc.terms():
        table.append((Fraction(int(coef)), tuple(int(e) for e in expo)))
    for _ in range(40):
        roots, a6 = random_sample(rng)
        coeffs = coeffs_from_roots(roots, a6)
        want = invariants_from_roots(roots, a6)[3]
        got = sum(c * eval_monomial(coeffs, e) for c, e in table)
        assert got == want, "discriminant does not match the root product"
    print(f"I10: {len(table)} monomials (symbolic discriminant, verified)",
          flush=True)
    return table


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="src/g2ml/_invariant_tables.py")
    ap.add_argument("--seed", type=int, default=20240311)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    t2 = interpolate(rng, 2, "I2")
    t4 = interpolate(rng, 4, "I4")
    t6 = interpolate(rng, 6, "I6")
    t10 = discriminant_table(rng)

    # sanity: the classical quadratic invariant
    expect_i2 = {(1, 0, 0, 0, 0, 0, 1): -240, (0, 1, 0, 0, 0, 1, 0): 40,
                 (0, 0, 1, 0, 1, 0, 0): -16, (0, 0, 0, 2, 0, 0, 0): 6}
    got_i2 = {e: c for c, e in t2}
    print("I2 matches classical form:", got_i2 == expect_i2)

    needs_fraction = any(
        c.denominator != 1 for tbl in (t2, t4, t6, t10) for c, _ in tbl)
    with open(args.out, "w") as fh:
        fh.write('"""Monomial tables for the classical binary-sextic '
                 'invariants.\n\nGenerated by scripts/derive_invariant_tables.py; '
                 'do not edit by hand.\nEach entry is (coefficient, (e0..e6)) for '
                 'the monomial a0^e0 * ... * a6^e6.\n"""\n\n')
        if needs_fraction:
            fh.write("from fractions import Fraction as F\n\n")
        fh.write(format_table("I2_TABLE", t2) + "\n\n")
        fh.write(format_table("I4_TABLE", t4) + "\n\n")
        fh.write(format_table("I6_TABLE", t6) + "\n\n")
        fh.write(format_table("I10_TABLE", t10) + "\n")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    sys.exit(main())
