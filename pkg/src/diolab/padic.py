"""p-adic quadratic numbers through Hensel lifting, and the multiplicative
approximation scan |b*alpha - a|_p over integer pairs.

Only odd primes with unramified, split residue polynomials are supported: the
discriminant must be a nonzero quadratic residue mod p. Saturation (valuation
reaching the working precision) is an explicit flag, never a silent value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cfrac import ExponentEntry, ExponentSeries
from .errors import DomainError, ZeroInputError
from .exactarith import is_prime, v_p_int


def tonelli_shanks(a: int, p: int) -> int:
    """A square root of a modulo an odd prime p; a must be a QR."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise DomainError(f"{a} is not a quadratic residue mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2 = t
        i = 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


@dataclass(frozen=True)
class PadicQuadratic:
    """Root of X^2 - t*X + m in the p-adic integers, known mod p**precision.

    branch 0 carries the root congruent to (t + r)/2 mod p where r is the
    smaller square root of the discriminant; branch 1 the other one.
    """

    p: int
    precision: int
    residue: int
    t: int
    m: int
    branch: int

    def __post_init__(self):
        pk = self.p ** self.precision
        if (self.residue * self.residue - self.t * self.residue + self.m) % pk:
            raise ValueError("residue is not a root at the stated precision")

    @property
    def modulus(self) -> int:
        return self.p ** self.precision

    def reduce(self, precision: int) -> "PadicQuadratic":
        if precision > self.precision:
            raise ValueError("use lift() to raise precision")
        return PadicQuadratic(self.p, precision,
                              self.residue % self.p ** precision,
                              self.t, self.m, self.branch)

    def lift(self, precision: int) -> "PadicQuadratic":
        if precision <= self.precision:
            return self.reduce(precision)
        return hensel_root(self.t, self.m, self.p, precision, self.branch)


def hensel_root(t: int, m: int, p: int, precision: int, branch: int = 0) -> PadicQuadratic:
    """The branch-selected root of X^2 - t*X + m lifted to mod p**precision.

    Requires p odd, p not dividing the discriminant t^2 - 4m, the discriminant
    a quadratic residue mod p, and (to keep the number irrational over the
    rationals) not a perfect square.
    """
    if p == 2:
        raise DomainError("p = 2 is unsupported")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if precision < 1:
        raise ValueError("precision must be >= 1")
    if branch not in (0, 1):
        raise ValueError("branch must be 0 or 1")
    disc = t * t - 4 * m
    if disc % p == 0:
        raise DomainError("p divides the discriminant (ramified case unsupported)")
    r = math.isqrt(abs(disc))
    if disc >= 0 and r * r == disc:
        raise DomainError("discriminant is a perfect square: the roots are rational")
    if pow(disc % p, (p - 1) // 2, p) != 1:
        raise DomainError(f"discriminant {disc} is not a residue mod {p}")
    root = tonelli_shanks(disc % p, p)
    root = min(root, p - root)
    inv2 = pow(2, -1, p)
    x = (t + root) * inv2 % p if branch == 0 else (t - root) * inv2 % p
    k = 1
    while k < precision:
        k = min(2 * k, precision)
        pk = p ** k
        fx = (x * x - t * x + m) % pk
        dfx = (2 * x - t) % pk
        x = (x - fx * pow(dfx, -1, pk)) % pk
    return PadicQuadratic(p, precision, x, t, m, branch)


def v_p_linear_form(alpha: PadicQuadratic, a: int, b: int) -> tuple[int, bool]:
    """(v, saturated) with v = v_p(b*alpha - a), exact whenever v < precision.

    saturated means the residue vanished at working precision: the true
    valuation is >= precision but unknown.
    """
    if a == 0 or b == 0:
        raise ZeroInputError("both coefficients must be nonzero")
    pk = alpha.modulus
    r = (b * alpha.residue - a) % pk
    if r == 0:
        return alpha.precision, True
    v = v_p_int(alpha.p, r)
    return v, False


@dataclass(frozen=True)
class MultiplicativePair:
    a: int
    b: int
    valuation: int
    exponent: float
    saturated: bool


@dataclass(frozen=True)
class MultiplicativeScan:
    """Exhaustive scan of v_p(b*alpha - a)*log(p)/log|ab| over 2 <= |ab| <= X.

    Pairs with |ab| = 1 are excluded (log 1 = 0); zero-valuation pairs are
    counted but not materialized. The tail statistic ranges over
    |ab| >= sqrt(X).
    """

    p: int
    bound: int
    entries: tuple[MultiplicativePair, ...]
    zero_valuation_pairs: int
    excluded: tuple[tuple[tuple[int, int], str], ...]
    tail_threshold: int
    final_precision: int

    @property
    def tail_max(self) -> float | None:
        vals = [e.exponent for e in self.entries if abs(e.a * e.b) >= self.tail_threshold]
        return max(vals) if vals else None

    @property
    def best(self) -> MultiplicativePair | None:
        return max(self.entries, key=lambda e: e.exponent, default=None)

    @property
    def series(self) -> ExponentSeries:
        return ExponentSeries(
            "padic_multiplicative_exponent",
            tuple(ExponentEntry((e.a, e.b), e.exponent) for e in self.entries),
            self.excluded,
            references={"quadratic_liouville_ceiling": 2.0})


def mult_exponent_scan(alpha: PadicQuadratic, X: int,
                       max_precision: int = 4096) -> MultiplicativeScan:
    """Scan all pairs (a, b), b >= 1, a != 0, |ab| <= X.

    Each pair (a, b) is identified with (-a, -b). Saturated valuations
    escalate the working precision (doubling) until resolved; pairs still
    saturated at max_precision keep the flag set.
    """
    if X < 2:
        raise ValueError("X must be >= 2")
    logp = math.log(alpha.p)
    entries = []
    excluded = []
    zeros = 0
    work = alpha
    for b in range(1, X + 1):
        for a_abs in range(1, X // b + 1):
            for a in (a_abs, -a_abs):
                ab = a_abs * b
                if ab < 2:
                    excluded.append(((a, b), "log|ab| = 0"))
                    continue
                v, saturated = v_p_linear_form(work, a, b)
                while saturated and work.precision < max_precision:
                    work = work.lift(min(2 * work.precision, max_precision))
                    v, saturated = v_p_linear_form(work, a, b)
                if v == 0 and not saturated:
                    zeros += 1
                    continue
                # a saturated v is still a certified lower bound on the valuation
                entries.append(MultiplicativePair(a, b, v, v * logp / math.log(ab),
                                                  saturated))
    return MultiplicativeScan(alpha.p, X, tuple(entries), zeros, tuple(excluded),
                              math.isqrt(X), work.precision)
