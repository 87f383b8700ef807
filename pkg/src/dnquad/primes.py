"""Miller-Rabin primality: deterministic below 3.3e24, probabilistic above."""
from __future__ import annotations

import random

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# The first 13 primes as bases decide every n < 3317044064679887385961981;
# with only 12, 318665857834031151167461 would slip through.
_DETERMINISTIC_LIMIT = 3317044064679887385961981
# Each random base lets a composite through with probability <= 1/4.
_RANDOM_ROUNDS = 64


def _is_witness(a: int, n: int, d: int, s: int) -> bool:
    """True when ``a`` proves n composite (n - 1 = d * 2^s, d odd)."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _DETERMINISTIC_LIMIT:
        bases = _SMALL_PRIMES
    else:
        # seeded by n so that repeated runs give identical answers
        rng = random.Random(n)
        bases = [rng.randrange(2, n - 1) for _ in range(_RANDOM_ROUNDS)]
    return not any(_is_witness(a, n, d, s) for a in bases)
