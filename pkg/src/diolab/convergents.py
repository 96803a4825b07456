"""S-parts and prime content of convergents, and the decompositions behind
the effective convergent-product bounds.

Each construction here is exact: decompositions reconstruct their integers,
divisibility facts are checked on the integers themselves, and the single
analytic quantity (the linear-form gap Lambda_q) is a certified enclosure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebraic import (Enclosure, PRECISION_CAP_BITS, QuadraticReal, Real,
                        RootOfInteger, evaluate, is_rational)
from .cfrac import ExponentEntry, ExponentSeries, cf_expand
from .errors import DomainError, PrecisionBudgetError
from .exactarith import (DEFAULT_BUDGET, FactorizationBudget, PrimeSet,
                         SPartDecomposition, factorize, integer_nth_root,
                         s_part)


@dataclass(frozen=True)
class ConvergentSPartRow:
    """Per-convergent S-part data, with a budget-flagged greatest prime factor.

    gpf is the largest certified prime factor of p*q; when the factorization
    budget ran out, gpf_is_lower_bound marks it as a lower bound only.
    """

    n: int
    p: int
    q: int
    spart_p: SPartDecomposition
    spart_q: SPartDecomposition
    spart_pq: int
    exponent: float | None
    gpf: int | None
    gpf_is_lower_bound: bool


@dataclass(frozen=True)
class ConvergentSPartScan:
    rows: tuple[ConvergentSPartRow, ...]
    series: ExponentSeries


def convergent_spart_scan(xi: Real, primes: PrimeSet, n_max: int,
                          budget: FactorizationBudget = DEFAULT_BUDGET) -> ConvergentSPartScan:
    """S-parts of p_n, q_n and p_n*q_n along the convergents of xi.

    Budget exhaustion in the prime-content column flags the row and the scan
    continues; the S-part decompositions themselves are always exact.
    """
    expansion = cf_expand(xi, n_max + 1)
    rows = []
    entries = []
    excluded = []
    for rec in expansion:
        sp_p = s_part(rec.p, primes)
        sp_q = s_part(rec.q, primes)
        spart_pq = sp_p.s_part * sp_q.s_part   # p, q coprime
        pq = rec.p * rec.q
        if pq > 1:
            exponent = math.log(spart_pq) / (math.log(rec.p) + math.log(rec.q))
            entries.append(ExponentEntry(rec.n, exponent))
        else:
            exponent = None
            excluded.append((rec.n, "p*q = 1"))
        gpf = None
        lower_only = False
        for part in (rec.p, rec.q):
            if part < 2:
                continue
            fm = factorize(part, budget)
            if fm.pairs:
                gpf = max(gpf or 0, fm.greatest_prime())
            if not fm.complete:
                lower_only = True
        rows.append(ConvergentSPartRow(rec.n, rec.p, rec.q, sp_p, sp_q,
                                       spart_pq, exponent, gpf, lower_only))
    series = ExponentSeries("convergent_spart_exponent", tuple(entries),
                            tuple(excluded))
    return ConvergentSPartScan(tuple(rows), series)


def floor_scaled(xi: Real, q: int) -> int:
    """Exact floor of q * xi."""
    if is_rational(xi):
        return math.floor(Fraction(xi) * q)
    if isinstance(xi, QuadraticReal):
        scaled = xi.scale(q)
        return scaled.floor() if isinstance(scaled, QuadraticReal) else math.floor(scaled)
    if isinstance(xi, RootOfInteger):
        return integer_nth_root(xi.m * q ** xi.d, xi.d)
    raise DomainError(f"unsupported number type {type(xi)!r}")


@dataclass(frozen=True)
class LambdaQDecomposition:
    """The multiplicative gap data of q against p = floor(q*xi).

    A_p, A_q are the largest divisors of p, q coprime to the prime set;
    exponents carries the signed prime-by-prime difference, so that
    q/p = (A_q/A_p) * prod(l_i ** b_i) exactly. gap encloses
    |xi * (q/p) - 1| and is certified not to exceed 1/p.
    """

    q: int
    p: int
    A_p: int
    A_q: int
    exponents: tuple[int, ...]
    B: int
    h_star_A: float
    gap: Enclosure

    def recombination_holds(self, primes: PrimeSet) -> bool:
        lhs = Fraction(self.A_q, self.A_p)
        for l, b in zip(primes, self.exponents):
            lhs *= Fraction(l) ** b
        return lhs == Fraction(self.q, self.p)


def lambda_q_decompose(xi: Real, q: int, primes: PrimeSet) -> LambdaQDecomposition:
    """Decompose q/floor(q*xi) over the prime set and certify the gap bound.

    Requires q large enough that p = floor(q*xi) >= 2, and xi > 0 irrational.
    """
    if is_rational(xi):
        raise DomainError("xi must be irrational")
    p = floor_scaled(xi, q)
    if p < 2:
        raise DomainError(f"floor(q*xi) = {p} < 2; take q larger")
    sp_q = s_part(q, primes)
    sp_p = s_part(p, primes)
    exponents = tuple(eq - ep for eq, ep in zip(sp_q.exponents, sp_p.exponents))
    b_max = max(max(abs(b) for b in exponents), 3)
    h_star_a = max(math.log(sp_q.cofactor), math.log(sp_p.cofactor), 1.0)
    ratio = Fraction(q, p)
    bits = 64
    while True:
        enc = evaluate(xi, Fraction(1, 1 << bits))
        gap = (enc.scale(ratio) - 1).abs()
        if gap.lo > 0 and gap.hi < Fraction(1, p):
            break
        bits *= 2
        if bits > PRECISION_CAP_BITS:
            raise PrecisionBudgetError("gap bound not certified at the precision cap")
    return LambdaQDecomposition(q, p, sp_p.cofactor, sp_q.cofactor, exponents,
                                b_max, h_star_a, gap)


@dataclass(frozen=True)
class TripleDecomposition:
    """Q_n = q_{n-1} q_n q_{n+1} split into its S-part and coprime part.

    The S-part exponents are summed over the three factors; cofactors records
    the per-factor coprime parts whose product is A_n.
    """

    n: int
    Q: int
    cofactors: tuple[int, int, int]
    A: int
    exponents: tuple[int, ...]
    B: int
    h_star_A: float
    spart: int

    @property
    def exponent(self) -> float:
        return math.log(self.spart) / math.log(self.Q)


@dataclass(frozen=True)
class TripleScan:
    rows: tuple[TripleDecomposition, ...]
    series: ExponentSeries


def triple_decompose_scan(theta: Real, primes: PrimeSet, n_max: int) -> TripleScan:
    """Decompose the consecutive-denominator products Q_n for 1 <= n <= n_max.

    Checks exactly, for every n, that q_n divides gcd(Q_n, q_{n+1} - q_{n-1});
    the non-Liouville hypothesis behind the effective bounds is the caller's
    context and is not (and cannot be) verified here.
    """
    expansion = cf_expand(theta, n_max + 2)
    qs = [rec.q for rec in expansion]
    rows = []
    entries = []
    for n in range(1, min(n_max, len(qs) - 2) + 1):
        trip = (qs[n - 1], qs[n], qs[n + 1])
        Q = trip[0] * trip[1] * trip[2]
        assert Q % qs[n] == 0 and (qs[n + 1] - qs[n - 1]) % qs[n] == 0, \
            f"divisibility failed at n={n}"
        parts = [s_part(t, primes) for t in trip]
        exponents = tuple(sum(p.exponents[i] for p in parts)
                          for i in range(len(primes)))
        cofactors = tuple(p.cofactor for p in parts)
        a_n = cofactors[0] * cofactors[1] * cofactors[2]
        spart = parts[0].s_part * parts[1].s_part * parts[2].s_part
        b_max = max(max(exponents), 3)
        row = TripleDecomposition(n, Q, cofactors, a_n, exponents, b_max,
                                  max(math.log(a_n), 1.0), spart)
        rows.append(row)
        entries.append(ExponentEntry(n, row.exponent))
    return TripleScan(tuple(rows),
                      ExponentSeries("triple_product_spart_exponent", tuple(entries)))
