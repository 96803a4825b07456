"""Pure-Python twins of the compiled kernels.

Bit-for-bit the same results as diolab._kernels, with no size restriction:
these are also the big-integer path for inputs beyond 2**63.
"""

BACKEND = "python"


def strip_primes_u64(n, primes):
    exps = []
    for p in primes:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        exps.append(e)
    return n, exps


def trial_factor_u64(n, bound):
    pairs = []
    for d in (2, 3):
        if d > bound:
            break
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            pairs.append((d, e))
    d = 5
    while d <= bound and d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            pairs.append((d, e))
        e = 0
        while n % (d + 2) == 0:
            n //= d + 2
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
    if n != 1 and cover * cover > n:
        pairs.append((n, 1))
        n = 1
    return pairs, n


def count_nonzero_digits_u64(n, base):
    c = 0
    while n:
        if n % base:
            c += 1
        n //= base
    return c
