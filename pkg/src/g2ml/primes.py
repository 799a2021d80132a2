"""Integer factorization helpers for weighted-gcd computation.

Trial division up to a fixed bound, then Miller-Rabin plus Pollard's rho
for the leftover cofactor.  Factoring a tuple gcd is the only place the
package needs this; the gcds that show up in practice are small or smooth,
but rho carries the occasional large semiprime.  A configurable iteration
budget turns pathological inputs into a reported partial factorization
instead of a hang.
"""

from __future__ import annotations

import math
import random

TRIAL_BOUND = 1_000_000
DEFAULT_RHO_BUDGET = 2_000_000

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class PartialFactorization(Exception):
    """Raised when the rho budget runs out; carries what was found."""

    def __init__(self, factors: dict[int, int], cofactor: int):
        self.factors = factors
        self.cofactor = cofactor
        super().__init__(f"unfactored cofactor {cofactor}")


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24, strong pseudoprime test above."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, budget: int) -> int | None:
    """One prime-or-composite factor of odd composite n, or None on budget."""
    rng = random.Random(n)
    spent = 0
    while spent < budget:
        c = rng.randrange(1, n)
        x = y = rng.randrange(0, n)
        d = 1
        # Brent's cycle detection with batched gcds
        q = 1
        steps = 0
        while d == 1 and spent < budget:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            q = q * abs(x - y) % n
            steps += 1
            spent += 1
            if q == 0:
                d = math.gcd(abs(x - y), n)
                break
            if steps % 64 == 0:
                d = math.gcd(q, n)
        if d == 1 and spent < budget:
            d = math.gcd(q, n)
        if 1 < d < n:
            return d
    return None


def factorize(n: int, budget: int = DEFAULT_RHO_BUDGET) -> dict[int, int]:
    """Prime factorization {p: multiplicity} of n >= 1.

    Raises PartialFactorization when the rho budget is exhausted before the
    cofactor is fully split.
    """
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    factors: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    p = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    w = 0
    while p * p <= n and p <= TRIAL_BOUND:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += wheel[w]
        w = (w + 1) % 8
    if n == 1:
        return factors
    if p * p > n or is_probable_prime(n):
        factors[n] = factors.get(n, 0) + 1
        return factors
    stack = [n]
    while stack:
        m = stack.pop()
        if is_probable_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _pollard_rho(m, budget)
        if d is None:
            raise PartialFactorization(factors, m)
        stack.append(d)
        stack.append(m // d)
    return factors


def valuation(n: int, p: int) -> int:
    """Exponent of p in n (n != 0)."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        v += 1
        n //= p
    return v
