"""Primality, witness primes and the prime range for x."""

import math

import numpy as np
import pytest

from src.errors import DomainError, EmptyRange
from src.prime_window import (
    WITNESS_THRESHOLD,
    construct_witness_pair,
    deviation,
    find_witness_prime,
    is_prime,
    script_l,
    segmented_primes,
    smallest_witness_height,
    theorem2_prime_range,
)


def _simple_primes(limit):
    return [n for n in range(2, limit) if all(n % d for d in range(2, math.isqrt(n) + 1))]


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2 ** 61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    with pytest.raises(DomainError):
        is_prime(1 << 63)


def test_segmented_primes_match_trial_division():
    assert segmented_primes(1, 5000).tolist() == _simple_primes(5000)
    assert segmented_primes(97, 101).tolist() == []
    assert segmented_primes(96.5, 101.5).tolist() == [97, 101]


def test_segmented_primes_threads_agree():
    one = segmented_primes(1e6, 2e6)
    many = segmented_primes(1e6, 2e6, threads=4)
    assert np.array_equal(one, many)


def test_witness_at_height_100():
    witness = find_witness_prime(1.0, 100.0)
    assert witness.p == 101
    assert witness.deviation == pytest.approx(1.481, abs=1e-3)
    assert witness.deviation == pytest.approx(deviation(101, 1.0))
    assert witness.method == "scan"
    assert witness.window_hi == pytest.approx(100 * math.exp(math.pi))


def test_witness_is_smallest_qualifying_prime():
    witness = find_witness_prime(0.25, 1000.0)
    below = [p for p in _simple_primes(witness.p) if p > 1000]
    assert all(deviation(p, 0.25) <= WITNESS_THRESHOLD for p in below)
    assert witness.deviation > WITNESS_THRESHOLD


def test_witness_rejects_zero_shift():
    with pytest.raises(DomainError):
        find_witness_prime(0.0, 100.0)


def test_construction_pair():
    pair = construct_witness_pair(1.0, 100.0)
    assert pair.alpha == pytest.approx(math.exp(math.pi / 4))
    assert pair.p1 == 101
    assert pair.p2 == 1061
    assert pair.chosen == 101
    assert max(pair.deviation1, pair.deviation2) > WITNESS_THRESHOLD


def test_smallest_witness_height():
    assert smallest_witness_height(1.0, [500.0, 100.0, 1000.0]) == 100.0


def test_prime_range_at_1e5():
    window = theorem2_prime_range(1e5, 1.0, 1.0)
    assert window.scriptL == pytest.approx(script_l(1e5))
    assert window.lo == pytest.approx(899.3, abs=0.1)
    assert window.hi == pytest.approx(20811, abs=2)
    assert window.primes[0] > window.lo
    assert window.primes[-1] < window.hi
    assert all(is_prime(p) for p in window.primes[:50])


def test_prime_range_errors():
    with pytest.raises(DomainError):
        theorem2_prime_range(50.0, 1.0, 1.0)
    with pytest.raises(EmptyRange):
        theorem2_prime_range(1e3, 1.0, 10.0)


@pytest.mark.parametrize("y", [0.5, 1.0, 3.0])
@pytest.mark.parametrize("t", [1e2, 1e3, 1e4])
def test_witness_grid(y, t):
    witness = find_witness_prime(y, t)
    assert witness.window_lo < witness.p < witness.window_hi
    assert witness.window_hi == pytest.approx(t * math.exp(math.pi / y))
    assert is_prime(witness.p)
    assert witness.deviation == pytest.approx(2 * abs(math.sin(y * math.log(witness.p) / 2)), abs=1e-12)
    assert witness.deviation > WITNESS_THRESHOLD
