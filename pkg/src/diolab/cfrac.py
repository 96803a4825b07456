"""Continued fractions, convergents, and empirical approximation exponents.

Three expansion backends sit behind cf_expand: Euclid for rationals, the
exact integer (P + sqrt(D))/Q recurrence with period detection for quadratic
irrationals, and a certified-enclosure expansion for integer roots that
refuses to emit a partial quotient until the interval pins it down, restarting
at doubled precision when stuck.

Exponent series report per-index values with certified ranges where the
underlying distance is irrational, and tail-window maxima (window = last half
of the included indices), since the exponents they estimate are tail
quantities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebraic import (Enclosure, PRECISION_CAP_BITS, PRECISION_START_BITS,
                        QuadraticReal, Real, RootOfInteger, distance_enclosure,
                        is_rational, liouville_constant, nth_root_enclosure,
                        power_distance, sign_plus_sqrt)
from .errors import DomainError, PrecisionBudgetError


@dataclass(frozen=True)
class ConvergentRecord:
    """Row n of an expansion: partial quotient and convergent p/q with its error."""

    n: int
    a: int
    p: int
    q: int
    error: Enclosure


@dataclass(frozen=True)
class CFExpansion:
    """Convergent records plus the detected period for quadratic inputs.

    period = (preperiod_length, quotient cycle) or None when not applicable.
    """

    records: tuple[ConvergentRecord, ...]
    period: tuple[int, tuple[int, ...]] | None = None

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)

    def __getitem__(self, i):
        return self.records[i]


def _records_from_quotients(quotients, errors) -> tuple[ConvergentRecord, ...]:
    out = []
    p_prev, p_prev2 = 1, 0
    q_prev, q_prev2 = 0, 1
    for i, a in enumerate(quotients):
        p = a * p_prev + p_prev2
        q = a * q_prev + q_prev2
        out.append(ConvergentRecord(i, a, p, q, errors(i, p, q)))
        p_prev2, p_prev = p_prev, p
        q_prev2, q_prev = q_prev, q
    return tuple(out)


def _bracket_errors(quotients):
    """Error enclosures from the classical bracket 1/(q(q+q')) < err < 1/(qq')."""
    denoms = []
    q_prev, q_prev2 = 0, 1
    for a in quotients:
        q = a * q_prev + q_prev2
        denoms.append(q)
        q_prev2, q_prev = q_prev, q

    def errors(i, p, q):
        q_next = denoms[i + 1]
        return Enclosure(Fraction(1, q * (q + q_next)), Fraction(1, q * q_next))

    return errors


def _euclid_quotients(x: Fraction) -> list[int]:
    num, den = x.numerator, x.denominator
    out = []
    while den:
        a, r = divmod(num, den)
        out.append(a)
        num, den = den, r
    return out


def _quadratic_state(x: QuadraticReal) -> tuple[int, int, int]:
    """(P, D, Q) with x = (P + sqrt(D))/Q and Q | D - P**2."""
    if x.b > 0:
        P, D, Q = x.a, x.b * x.b * x.d, x.c
    else:
        P, D, Q = -x.a, x.b * x.b * x.d, -x.c
    if (D - P * P) % Q:
        P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
    return P, D, Q


def _floor_sqrt_state(P: int, D: int, Q: int) -> int:
    """Exact floor of (P + sqrt(D))/Q for non-square D and Q != 0."""
    s = math.isqrt(D)
    if Q > 0:
        return (P + s) // Q
    return (-P - s - 1) // (-Q)


def _quadratic_quotients(x: QuadraticReal, count: int):
    P, D, Q = _quadratic_state(x)
    quotients: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    period = None
    n = 0
    while len(quotients) < count or period is None:
        if period is None:
            state = (P, Q)
            if state in seen:
                start = seen[state]
                period = (start, tuple(quotients[start:n]))
                if len(quotients) >= count:
                    break
            else:
                seen[state] = n
        a = _floor_sqrt_state(P, D, Q)
        quotients.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
        n += 1
        assert n <= count + 100_000, "state cycle not detected"
    return quotients[:count], period


def _enclosure_quotients(x, count: int) -> list[int]:
    """Interval expansion, restarted at doubled precision until `count` quotients."""
    bits = max(PRECISION_START_BITS, 4 * count)
    while bits <= PRECISION_CAP_BITS:
        enc = x.enclosure(bits)
        lo, hi = enc.lo, enc.hi
        out: list[int] = []
        ok = True
        for _ in range(count):
            a = math.floor(lo)
            if math.floor(hi) != a or lo == a:
                ok = False
                break
            out.append(a)
            lo, hi = 1 / (hi - a), 1 / (lo - a)
        if ok:
            return out
        bits *= 2
    raise PrecisionBudgetError(f"cannot certify {count} partial quotients")


def cf_expand(theta: Real, count: int) -> CFExpansion:
    """First `count` convergents of theta with certified error enclosures.

    Rational inputs terminate (possibly earlier than `count`); quadratic
    inputs carry the detected period.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if is_rational(theta):
        theta = Fraction(theta)
        quotients = _euclid_quotients(theta)[:count]

        def errors(i, p, q):
            return Enclosure.point(abs(theta - Fraction(p, q)))

        return CFExpansion(_records_from_quotients(quotients, errors))
    if isinstance(theta, QuadraticReal):
        quotients, period = _quadratic_quotients(theta, count + 1)
        records = _records_from_quotients(quotients[:count], _bracket_errors(quotients))
        return CFExpansion(records, period)
    quotients = _enclosure_quotients(theta, count + 1)
    return CFExpansion(_records_from_quotients(quotients[:count], _bracket_errors(quotients)))


def cf_period(x: QuadraticReal) -> tuple[int, tuple[int, ...]]:
    """(preperiod length, repeating partial-quotient cycle) of a quadratic real."""
    _, period = _quadratic_quotients(x, 1)
    return period


def verify_periodic_reconstruction(x: QuadraticReal) -> bool:
    """Exact check that evaluating the periodic tail re-derives the tail state.

    The state y = (P + sqrt(D))/Q at the period start must be the fixed point
    y = (m00*y + m01)/(m10*y + m11) of its quotient cycle; separating the
    sqrt(D) part turns that into two integer identities.
    """
    start, cycle = cf_period(x)
    P, D, Q = _quadratic_state(x)
    for _ in range(start):
        a = _floor_sqrt_state(P, D, Q)
        P = a * Q - P
        Q = (D - P * P) // Q
    m00, m01, m10, m11 = 1, 0, 0, 1
    for a in cycle:
        m00, m01, m10, m11 = m00 * a + m01, m00, m10 * a + m11, m10
    # y is a root of m10*y^2 + (m11 - m00)*y - m01, with y = (P + sqrt(D))/Q
    rational_part = m10 * (P * P + D) + (m11 - m00) * P * Q - m01 * Q * Q
    sqrt_part = 2 * m10 * P + (m11 - m00) * Q
    return rational_part == 0 and sqrt_part == 0


def _rational_abs_less(u: int, v: int, d: int, bound: Fraction) -> bool:
    """Exact |u + v*sqrt(d)| < bound for integers u, v and rational bound > 0."""
    tn, td = bound.numerator, bound.denominator
    below = sign_plus_sqrt(u * td - tn, v * td, d) < 0
    above = sign_plus_sqrt(u * td + tn, v * td, d) > 0
    return below and above


def legendre_filter(theta: Real, q_max: int) -> list[Fraction]:
    """All reduced p/q with q <= q_max and |theta - p/q| < 1/(2q^2)."""
    if q_max < 1:
        raise ValueError("q_max must be >= 1")
    out: set[Fraction] = set()
    if is_rational(theta):
        theta = Fraction(theta)
        for q in range(1, q_max + 1):
            fl = math.floor(theta * q)
            for p in (fl, fl + 1):
                if abs(theta - Fraction(p, q)) < Fraction(1, 2 * q * q):
                    out.add(Fraction(p, q))
        return sorted(out)
    if isinstance(theta, QuadraticReal):
        a, b, c, d = theta.a, theta.b, theta.c, theta.d
        for q in range(1, q_max + 1):
            u, v = a * q, b * q
            s = math.isqrt(v * v * d)
            fl = (u + s) // c if v > 0 else (u - s - 1) // c
            for p in (fl, fl + 1):
                # |theta - p/q| < 1/(2q^2)  <=>  |(aq - pc) + bq*sqrt(d)| < c/(2q)
                if _rational_abs_less(a * q - p * c, v, d, Fraction(c, 2 * q)):
                    out.add(Fraction(p, q))
        return sorted(out)
    for q in range(1, q_max + 1):
        bits = PRECISION_START_BITS
        while True:
            enc = theta.enclosure(bits).scale(q)
            fl = math.floor(enc.lo)
            if math.floor(enc.hi) == fl:
                decided = True
                for p in (fl, fl + 1):
                    gap = (enc - p).abs()
                    thr = Fraction(1, 2 * q)
                    if gap.hi < thr:
                        out.add(Fraction(p, q))
                    elif not gap.lo > thr:
                        decided = False
                if decided:
                    break
            bits *= 2
            if bits > PRECISION_CAP_BITS:
                raise PrecisionBudgetError(f"legendre test undecided at q={q}")
    return sorted(out)


@dataclass(frozen=True)
class ExponentEntry:
    key: object
    value: float
    lo: float | None = None
    hi: float | None = None


@dataclass(frozen=True)
class ExponentSeries:
    """Per-index exponent estimates with tail-window statistics.

    Indices where the quantity is undefined are listed in `excluded` with a
    reason, never zero-filled. The tail window is the last half of the
    included entries; finite scans can only bound tail behaviour.
    """

    name: str
    entries: tuple[ExponentEntry, ...]
    excluded: tuple[tuple[object, str], ...] = ()
    references: dict[str, float] = field(default_factory=dict)

    @property
    def tail_entries(self) -> tuple[ExponentEntry, ...]:
        return self.entries[len(self.entries) // 2:]

    @property
    def tail_max(self) -> float | None:
        tail = self.tail_entries
        return max(e.value for e in tail) if tail else None

    @property
    def running_best(self) -> float | None:
        return max((e.value for e in self.entries), default=None)


def _log_fraction(x: Fraction) -> float:
    if x <= 0:
        raise ValueError("log of a non-positive bound")
    return math.log(x.numerator) - math.log(x.denominator)


def _series_value(dist, scale: float) -> tuple[float, float, float]:
    """(-log dist)/scale as (value, certified lo, certified hi)."""
    if isinstance(dist, Enclosure):
        lo_v = -_log_fraction(dist.hi) / scale
        hi_v = -_log_fraction(dist.lo) / scale
        return (lo_v + hi_v) / 2, lo_v, hi_v
    v = -_log_fraction(dist) / scale
    return v, v, v


def irrationality_exponent_series(theta: Real, count: int) -> ExponentSeries:
    """mu_n = -log|theta - p_n/q_n| / log q_n along the convergents."""
    if count < 3:
        raise ValueError("count must be >= 3")
    expansion = cf_expand(theta, count)
    entries = []
    excluded = []
    for rec in expansion:
        if rec.q < 2:
            excluded.append((rec.n, "log q = 0"))
            continue
        if rec.error.exact and rec.error.lo == 0:
            excluded.append((rec.n, "exact convergent"))
            continue
        value, lo, hi = _series_value(rec.error, math.log(rec.q))
        entries.append(ExponentEntry(rec.n, value, lo, hi))
    return ExponentSeries("irrationality_exponent", tuple(entries), tuple(excluded))


def _int_distance_fn(theta: Real) -> Callable[[int, int], tuple[int, Enclosure] | None]:
    """Per-number oracle: f(k, bits) -> (nearest int to k*theta, distance) or None.

    None means the precision was insufficient to decide the nearest integer;
    the distance enclosure is certified whenever a pair is returned.
    """
    if isinstance(theta, QuadraticReal):
        a, b, c, d = theta.a, theta.b, theta.c, theta.d

        def quad(k: int, bits: int):
            u, v = a * k, b * k
            shifted = v * v * d << (2 * bits)
            root = math.isqrt(shifted)
            exact = root * root == shifted
            if v > 0:
                lo_num = (u << bits) + root
                hi_num = lo_num + (0 if exact else 1)
            else:
                hi_num = (u << bits) - root
                lo_num = hi_num - (0 if exact else 1)
            den = c << bits
            enc = Enclosure(Fraction(lo_num, den), Fraction(hi_num, den))
            d_enc = distance_enclosure(enc)
            if d_enc is None:
                return None
            half = math.floor(enc.lo) + Fraction(1, 2)
            nearest = math.floor(enc.lo) if enc.hi < half else math.floor(enc.lo) + 1
            return nearest, d_enc

        return quad
    if isinstance(theta, RootOfInteger):
        m, deg = theta.m, theta.d

        def root_fn(k: int, bits: int):
            enc = nth_root_enclosure(m * k ** deg, deg, bits)
            d_enc = distance_enclosure(enc)
            if d_enc is None:
                return None
            half = math.floor(enc.lo) + Fraction(1, 2)
            nearest = math.floor(enc.lo) if enc.hi < half else math.floor(enc.lo) + 1
            return nearest, d_enc

        return root_fn
    frac = Fraction(theta)

    def rational(k: int, bits: int):
        v = frac * k
        fl = math.floor(v)
        part = v - fl
        nearest = fl if part < Fraction(1, 2) else fl + 1
        return nearest, Enclosure.point(min(part, 1 - part))

    return rational


def _certified_int_distance(theta: Real, k: int,
                            start_bits: int = 96) -> tuple[int, Enclosure]:
    """Nearest integer to k*theta with a positive, relatively tight distance."""
    f = _int_distance_fn(theta)
    bits = start_bits
    while bits <= PRECISION_CAP_BITS:
        out = f(k, bits)
        if out is not None:
            nearest, enc = out
            if enc.lo > 0 and enc.width * (1 << 20) <= enc.lo:
                return nearest, enc
        bits *= 2
    raise PrecisionBudgetError(f"distance of {k}*theta to the integers undecided")


def vb_series(theta: Real, b: int, n_max: int) -> ExponentSeries:
    """v_n = -log||b^n * theta|| / (n log b) for n = 1..n_max."""
    if b < 2:
        raise ValueError("base must be >= 2")
    if is_rational(theta):
        raise DomainError("the base-power series needs an irrational input")
    entries = []
    logb = math.log(b)
    for n in range(1, n_max + 1):
        _, enc = _certified_int_distance(theta, b ** n)
        value, lo, hi = _series_value(enc, n * logb)
        entries.append(ExponentEntry(n, value, lo, hi))
    refs = {}
    if isinstance(theta, QuadraticReal) and theta.a == 0 and theta.c == 1 and theta.b >= 1:
        # sqrt(m) with m = b^{2k} + 1 has a published effective ceiling
        power = theta.b * theta.b * theta.d - 1
        k2 = 0
        while power > 1 and power % b == 0:
            power //= b
            k2 += 1
        if power == 1 and k2 > 0 and k2 % 2 == 0:
            refs["near_power_ceiling"] = math.log(48) / ((k2 // 2) * logb)
    return ExponentSeries("base_power_distance", tuple(entries), references=refs)


@dataclass(frozen=True)
class SimultaneousEntry:
    q: int
    p: int
    r: int
    max_int_distance: float
    exponent: float
    exponent_hi: float


@dataclass(frozen=True)
class SimultaneousScan:
    """Exhaustive q-scan of simultaneous rational approximation to a pair."""

    entries: tuple[SimultaneousEntry, ...]
    series: ExponentSeries
    best: SimultaneousEntry | None

    def witnesses(self, exponent: float) -> list[SimultaneousEntry]:
        """Entries with max(|xi - p/q|, |zeta - r/q|) < q**-exponent."""
        return [e for e in self.entries
                if e.max_int_distance / e.q < e.q ** -exponent]


def simultaneous_scan(xi: Real, zeta: Real, q_max: int) -> SimultaneousScan:
    """Best simultaneous approximations p/q, r/q to (xi, zeta) for q <= q_max.

    The exponent is measured in the rational normalization
    -log max(|xi - p/q|, |zeta - r/q|) / log q; the caller asserts that
    1, xi, zeta are linearly independent over the rationals.
    """
    if q_max < 2:
        raise ValueError("q_max must be >= 2")
    fxi = _int_distance_fn(xi)
    fzeta = _int_distance_fn(zeta)
    entries = []
    best = None
    for q in range(2, q_max + 1):
        out1 = fxi(q, 96)
        out2 = fzeta(q, 96)
        if out1 is None:
            out1 = _certified_int_distance(xi, q, 192)
        if out2 is None:
            out2 = _certified_int_distance(zeta, q, 192)
        p, e1 = out1
        r, e2 = out2
        d_hi = max(float(e1.hi), float(e2.hi))
        d_lo = max(float(e1.lo), float(e2.lo))
        logq = math.log(q)
        exponent = -math.log(d_hi / q) / logq
        exponent_hi = -math.log(d_lo / q) / logq if d_lo > 0 else math.inf
        entry = SimultaneousEntry(q, p, r, d_hi, exponent, exponent_hi)
        entries.append(entry)
        if best is None or entry.exponent > best.exponent:
            best = entry
    series = ExponentSeries(
        "simultaneous_exponent",
        tuple(ExponentEntry(e.q, e.exponent, e.exponent, e.exponent_hi) for e in entries),
        references={"pair_effective_ceiling": 1.913})
    return SimultaneousScan(tuple(entries), series, best)


PUBLISHED_POWER_CEILINGS: dict[str, float] = {
    # published effective ceilings for -log||x^n||/n at specific numbers
    "sqrt(2)": 0.595,
    "3/2": 0.5443,
}


def _power_ceiling_key(xi: Real) -> str | None:
    if is_rational(xi) and Fraction(xi) == Fraction(3, 2):
        return "3/2"
    if isinstance(xi, QuadraticReal) and (xi.a, xi.b, xi.c, xi.d) == (0, 1, 1, 2):
        return "sqrt(2)"
    return None


def nu_series(xi: Real, n_max: int) -> ExponentSeries:
    """nu_n = -log||xi^n|| / n, skipping indices where xi^n is an integer."""
    if is_rational(xi) and Fraction(xi) <= 1:
        raise DomainError("need xi > 1")
    if isinstance(xi, QuadraticReal) and xi.compare(1) <= 0:
        raise DomainError("need xi > 1")
    entries = []
    excluded = []
    for n in range(1, n_max + 1):
        is_int, dist = power_distance(xi, n)
        if is_int:
            excluded.append((n, "integer power"))
            continue
        value, lo, hi = _series_value(dist, float(n))
        entries.append(ExponentEntry(n, value, lo, hi))
    refs = {"log_liouville_constant": liouville_constant(xi).log_value}
    key = _power_ceiling_key(xi)
    if key is not None:
        refs["published_ceiling"] = PUBLISHED_POWER_CEILINGS[key]
    return ExponentSeries("power_distance_exponent", tuple(entries),
                          tuple(excluded), refs)
