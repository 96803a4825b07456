# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""C fast paths for the word-sized inner loops of the integer scans.

Same contracts as diolab._kernels_py; callers guarantee 0 < n < 2**63.
"""

BACKEND = "compiled"


def strip_primes_u64(unsigned long long n, tuple primes):
    """Divide out every prime in `primes` from n.

    Returns (cofactor, exponent list aligned with primes).
    """
    cdef unsigned long long m = n
    cdef unsigned long long p
    cdef unsigned long long e
    exps = []
    for prime in primes:
        p = prime
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        exps.append(e)
    return m, exps


def trial_factor_u64(unsigned long long n, unsigned long long bound):
    """Trial division of n by 2, 3, then the 6k+-1 wheel up to `bound`.

    Returns (list of (prime, exponent), remaining cofactor). The cofactor is
    1, or has no prime factor below the reached wheel position; when that
    position squared exceeds it, the cofactor is emitted as a prime.
    """
    cdef unsigned long long m = n
    cdef unsigned long long d
    cdef unsigned long long e
    cdef unsigned long long cover
    pairs = []
    for d in (2, 3):
        if d > bound:
            break
        e = 0
        while m % d == 0:
            m //= d
            e += 1
        if e:
            pairs.append((d, e))
    d = 5
    while d <= bound and d * d <= m:
        e = 0
        while m % d == 0:
            m //= d
            e += 1
        if e:
            pairs.append((d, e))
        e = 0
        while m % (d + 2) == 0:
            m //= d + 2
            e += 1
        if e:
            pairs.append((d + 2, e))
        d += 6
    # every prime < cover has been divided out
    if bound < 3:
        cover = 3
    elif bound < 5:
        cover = 5
    else:
        cover = d
    if m != 1 and cover * cover > m:
        pairs.append((m, 1))
        m = 1
    return pairs, m


def count_nonzero_digits_u64(unsigned long long n, unsigned long long base):
    """Number of nonzero digits of n in the given base."""
    cdef unsigned long long m = n
    cdef unsigned long long c = 0
    while m:
        if m % base:
            c += 1
        m //= base
    return c
