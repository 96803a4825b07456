"""Kernel backend selection.

At import time the compiled extension is preferred; the pure-Python twin is
used when the extension is missing or DIOLAB_PURE_KERNELS=1 is set. Both
backends produce identical results (tests assert this), so nothing observable
depends on the choice except speed. Inputs at or beyond 2**63 always take the
Python big-integer path.
"""

import os

from . import _kernels_py

_WORD_LIMIT = 2**63

if os.environ.get("DIOLAB_PURE_KERNELS") == "1":
    _fast = _kernels_py
else:
    try:
        from . import _kernels as _fast  # type: ignore[attr-defined]
    except ImportError:
        _fast = _kernels_py

ACTIVE_BACKEND = _fast.BACKEND


def strip_primes(n, primes):
    """(cofactor, exponents) after dividing every prime in `primes` out of n > 0."""
    if n < _WORD_LIMIT and (not primes or primes[-1] < _WORD_LIMIT):
        return _fast.strip_primes_u64(n, tuple(primes))
    return _kernels_py.strip_primes_u64(n, tuple(primes))


def trial_factor(n, bound):
    """Trial-division stage: (sorted (prime, exp) pairs, cofactor) for n > 0."""
    if n < _WORD_LIMIT:
        return _fast.trial_factor_u64(n, bound)
    # big input: strip word-sized primes in Python, the wheel logic is identical
    return _kernels_py.trial_factor_u64(n, bound)


def count_nonzero_digits(n, base):
    if n < _WORD_LIMIT:
        return _fast.count_nonzero_digits_u64(n, base)
    return _kernels_py.count_nonzero_digits_u64(n, base)
