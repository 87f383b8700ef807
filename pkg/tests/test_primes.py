import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from dnquad.primes import is_prime

CARMICHAEL = [561, 1105, 1729, 2465, 2821, 6601, 8911, 41041, 825265, 321197185]
# strong pseudoprimes to several prime bases at once
STRONG_PSEUDOPRIMES = [
    2047,                      # base 2
    1373653,                   # bases 2, 3
    25326001,                  # bases 2, 3, 5
    3215031751,                # bases 2, 3, 5, 7
    2152302898747,             # bases 2..11
    3474749660383,             # bases 2..13
    341550071728321,           # bases 2..17
    3825123056546413051,       # bases 2..23
    318665857834031151167461,  # bases 2..37
    3317044064679887385961981,  # bases 2..41
]


def test_matches_sympy_below_20000():
    for n in range(-5, 20000):
        assert is_prime(n) == sympy.isprime(n), n


@pytest.mark.parametrize("n", CARMICHAEL + STRONG_PSEUDOPRIMES)
def test_pseudoprimes_are_composite(n):
    assert not sympy.isprime(n)
    assert not is_prime(n)


@pytest.mark.parametrize("n", [2**61 - 1, 2**89 - 1, 2**127 - 1, 10**30 + 57])
def test_large_primes(n):
    assert sympy.isprime(n)
    assert is_prime(n)


@given(st.integers(min_value=2, max_value=10**30))
def test_matches_sympy_random(n):
    assert is_prime(n) == sympy.isprime(n)


def test_product_of_large_primes():
    assert not is_prime((2**61 - 1) * (2**89 - 1))
