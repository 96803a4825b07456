"""Exact integer and rational arithmetic.

Factorization with an explicit effort budget, p-adic valuations, S-part
decompositions over a fixed prime set, greatest prime factor, and perfect
power detection. All values are immutable; all failures are typed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .errors import FactorBudgetError, PrimalityRangeError, ZeroInputError

# Deterministic Miller-Rabin witness set, valid below ~3.317e24
# (Sorenson-Webster). Larger inputs are rejected, never guessed.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
MR_CERTIFIED_LIMIT = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < MR_CERTIFIED_LIMIT."""
    if n >= MR_CERTIFIED_LIMIT:
        raise PrimalityRangeError(
            f"{n} exceeds the deterministic witness range {MR_CERTIFIED_LIMIT}")
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def v_p_int(p: int, n: int) -> int:
    """Exponent of the prime p in n != 0."""
    if n == 0:
        raise ZeroInputError("v_p(0) is undefined")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def v_p_rational(p: int, r: Fraction | int) -> int:
    """p-adic valuation on the rationals: v_p(num) - v_p(den)."""
    r = Fraction(r)
    if r == 0:
        raise ZeroInputError("v_p(0) is undefined")
    return v_p_int(p, r.numerator) - v_p_int(p, r.denominator)


def integer_nth_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, k >= 1, by Newton iteration on integers."""
    if n < 0 or k < 1:
        raise ValueError("integer_nth_root needs n >= 0, k >= 1")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << -(-n.bit_length() // k)  # upper seed: 2**ceil(bits/k) >= root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    return x


def perfect_power_split(n: int) -> tuple[int, int]:
    """Write n >= 2 as y**q with q maximal; q == 1 iff n is not a perfect power."""
    if n < 2:
        raise ValueError("perfect_power_split needs n >= 2")
    for q in range(n.bit_length() - 1, 1, -1):
        y = integer_nth_root(n, q)
        if y ** q == n:
            return y, q
    return n, 1


@dataclass(frozen=True)
class PrimeSet:
    """A nonempty, strictly increasing set of certified primes."""

    primes: tuple[int, ...]

    def __post_init__(self):
        if not self.primes:
            raise ValueError("prime set must be nonempty")
        for i, p in enumerate(self.primes):
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            if i and p <= self.primes[i - 1]:
                raise ValueError("primes must be strictly increasing")

    @classmethod
    def of(cls, *primes: int) -> "PrimeSet":
        return cls(tuple(sorted(set(primes))))

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes)

    def __contains__(self, p: int) -> bool:
        return p in self.primes

    @property
    def radical(self) -> int:
        r = 1
        for p in self.primes:
            r *= p
        return r


@dataclass(frozen=True)
class SPartDecomposition:
    """n = cofactor * prod(l_i ** r_i), with the product supported on the prime set.

    The sign of n lives in the cofactor; the S-part is always >= 0 and is 0
    exactly for n = 0.
    """

    n: int
    s_part: int
    cofactor: int
    exponents: tuple[int, ...]

    def verify(self, primes: PrimeSet) -> bool:
        prod = 1
        for p, e in zip(primes, self.exponents):
            prod *= p ** e
        if self.n == 0:
            return self.s_part == 0 and self.cofactor == 0
        return (
            prod == self.s_part
            and self.cofactor * prod == self.n
            and math.gcd(abs(self.cofactor), primes.radical) == 1
        )


def s_part(n: int, primes: PrimeSet) -> SPartDecomposition:
    """Largest divisor of |n| supported on the prime set, with exponents."""
    if n == 0:
        return SPartDecomposition(0, 0, 0, (0,) * len(primes))
    cof, exps = kernels.strip_primes(abs(n), primes.primes)
    sp = abs(n) // cof
    return SPartDecomposition(n, sp, cof if n > 0 else -cof, tuple(exps))


@dataclass(frozen=True)
class FactorizationBudget:
    """Effort limits for factorize(); exceeding them is a typed outcome."""

    trial_bound: int = 100_000
    rho_iterations: int = 1_000_000

    def __post_init__(self):
        if self.trial_bound < 5 or self.rho_iterations < 0:
            raise ValueError("budget must allow trial division to at least 5")


DEFAULT_BUDGET = FactorizationBudget()


@dataclass(frozen=True)
class FactorMap:
    """Sorted (prime, exponent) pairs plus the certified-unfactored remainder."""

    pairs: tuple[tuple[int, int], ...]
    unfactored_part: int = 1

    @property
    def complete(self) -> bool:
        return self.unfactored_part == 1

    def value(self) -> int:
        v = self.unfactored_part
        for p, e in self.pairs:
            v *= p ** e
        return v

    def greatest_prime(self) -> int:
        if not self.pairs:
            raise ValueError("no certified prime factor found")
        return self.pairs[-1][0]

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)


def _rho_brent(n: int, budget: int) -> tuple[int | None, int]:
    """Brent-cycle rho with a fixed deterministic parameter schedule.

    Returns (factor or None, iterations spent). n must be odd, composite,
    not a prime power of a trial-range prime.
    """
    spent = 0
    for c in range(1, 20):
        x = 2
        y = 2
        d = 1
        power = lam = 1
        while d == 1 and spent < budget:
            if power == lam:
                y = x
                power *= 2
                lam = 0
            x = (x * x + c) % n
            lam += 1
            spent += 1
            d = math.gcd(abs(x - y), n)
        if 1 < d < n:
            return d, spent
        if spent >= budget:
            return None, spent
        # cycle degenerated (d == n): retry with the next constant
    return None, spent


def factorize(n: int, budget: FactorizationBudget = DEFAULT_BUDGET) -> FactorMap:
    """Factor n != 0 within the budget; leftovers land in unfactored_part.

    Trial division to budget.trial_bound, then deterministic-parameter rho on
    what remains. Cofactors too large for the primality certificate are never
    reported as prime: they stay in unfactored_part.
    """
    if n == 0:
        raise ZeroInputError("cannot factor 0")
    n = abs(n)
    if n == 1:
        return FactorMap(())
    pairs, cofactor = kernels.trial_factor(n, budget.trial_bound)
    found: dict[int, int] = dict(pairs)
    unfactored = 1
    remaining = budget.rho_iterations
    stack = [cofactor] if cofactor != 1 else []
    while stack:
        m = stack.pop()
        if m < MR_CERTIFIED_LIMIT and is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        y, q = perfect_power_split(m)
        if q > 1:
            stack.extend([y] * q)
            continue
        if remaining <= 0:
            unfactored *= m
            continue
        factor, spent = _rho_brent(m, remaining)
        remaining -= spent
        if factor is None:
            unfactored *= m
        else:
            stack.append(factor)
            stack.append(m // factor)
    return FactorMap(tuple(sorted(found.items())), unfactored)


def greatest_prime_factor(n: int, budget: FactorizationBudget = DEFAULT_BUDGET) -> int:
    """Largest prime dividing n, |n| >= 2; budget exhaustion raises, never lies."""
    if abs(n) < 2:
        raise ValueError("greatest_prime_factor needs |n| >= 2")
    fm = factorize(n, budget)
    if not fm.complete:
        raise FactorBudgetError(
            f"unfactored remainder {fm.unfactored_part} of {n}: "
            "greatest prime factor not certified")
    return fm.greatest_prime()


def squarefree_part(n: int, budget: FactorizationBudget = DEFAULT_BUDGET) -> tuple[int, int]:
    """n = s * f**2 with s squarefree: returns (s, f). Needs a full factorization."""
    if n < 1:
        raise ValueError("squarefree_part needs n >= 1")
    if n == 1:
        return 1, 1
    fm = factorize(n, budget)
    if not fm.complete:
        raise FactorBudgetError(f"cannot certify the squarefree part of {n}")
    s = f = 1
    for p, e in fm.pairs:
        if e % 2:
            s *= p
        f *= p ** (e // 2)
    return s, f
