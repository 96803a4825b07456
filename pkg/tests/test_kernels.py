"""Compiled and pure kernels must agree bit for bit."""

import pytest
from hypothesis import given, strategies as st

from diolab import _kernels_py
from diolab import kernels

compiled = pytest.importorskip("diolab._kernels")

PRIMES = (2, 3, 5, 7, 11)


@given(st.integers(min_value=1, max_value=2**62))
def test_strip_primes_backends_agree(n):
    assert compiled.strip_primes_u64(n, PRIMES) == \
        _kernels_py.strip_primes_u64(n, PRIMES)


@given(st.integers(min_value=1, max_value=2**62),
       st.integers(min_value=5, max_value=10**4))
def test_trial_factor_backends_agree(n, bound):
    assert compiled.trial_factor_u64(n, bound) == \
        _kernels_py.trial_factor_u64(n, bound)


@given(st.integers(min_value=1, max_value=2**62),
       st.integers(min_value=2, max_value=50))
def test_digit_count_backends_agree(n, base):
    assert compiled.count_nonzero_digits_u64(n, base) == \
        _kernels_py.count_nonzero_digits_u64(n, base)


@given(st.integers(min_value=1, max_value=10**6),
       st.integers(min_value=5, max_value=1000))
def test_trial_factor_reconstructs(n, bound):
    pairs, cofactor = kernels.trial_factor(n, bound)
    value = cofactor
    for p, e in pairs:
        value *= p ** e
    assert value == n


def test_dispatcher_handles_bigints():
    n = 2**200 * 3**5 * 7
    cof, exps = kernels.strip_primes(n, (2, 3))
    assert cof == 7 and exps == [200, 5]
