"""Structured integer families and desk-scale Diophantine searches.

Generators for base-b sparse-digit integers, linear recurrences with dominant
root analysis, power-sum grids with their size-comparison case split, sums of
T-units, polynomial and binary-form value scans, the bounded-radius S-unit
equation solver over the rationals, and the almost-power frontier.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .algebraic import h_star, height
from .cfrac import ExponentEntry, ExponentSeries
from .errors import DomainError
from .exactarith import (PrimeSet, SPartDecomposition, is_prime, s_part,
                         v_p_int)


@dataclass(frozen=True)
class SparseDigitSpec:
    """Base-b integers with at most k nonzero digits and unit digit nonzero."""

    base: int
    max_nonzero_digits: int

    def __post_init__(self):
        if self.base < 2 or self.max_nonzero_digits < 2:
            raise ValueError("need base >= 2 and k >= 2")


def _sparse_block(spec: SparseDigitSpec, top_exp: int) -> list[int]:
    """All members with top digit at position top_exp >= 1, sorted."""
    b, k = spec.base, spec.max_nonzero_digits
    block = []
    digits = range(1, b)
    for top in digits:
        head = top * b ** top_exp
        for extra in range(k - 1):
            if extra > top_exp - 1:
                break
            for positions in itertools.combinations(range(1, top_exp), extra):
                for unit in digits:
                    base_val = head + unit
                    for assignment in itertools.product(digits, repeat=extra):
                        v = base_val
                        for pos, dig in zip(positions, assignment):
                            v += dig * b ** pos
                        block.append(v)
    block.sort()
    return block


def sparse_digit_sequence(spec: SparseDigitSpec, count: int) -> list[int]:
    """First `count` members in increasing order.

    The single-digit integers 1..b-1 come first; after that, blocks by top
    exponent are internally sorted and already mutually ordered, so
    concatenation preserves order.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    out = list(range(1, spec.base))[:count]
    top_exp = 1
    while len(out) < count:
        out.extend(_sparse_block(spec, top_exp))
        top_exp += 1
    return out[:count]


def sparse_digit_members_below(spec: SparseDigitSpec, limit: int) -> list[int]:
    """All members < limit, by the same block enumeration."""
    out = [v for v in range(1, spec.base) if v < limit]
    top_exp = 1
    while spec.base ** top_exp < limit:
        out.extend(v for v in _sparse_block(spec, top_exp) if v < limit)
        top_exp += 1
    return sorted(out)


@dataclass(frozen=True)
class RecurrenceSpec:
    """u_n = a_1 u_{n-1} + ... + a_k u_{n-k}, integer coefficients, a_k != 0."""

    coefficients: tuple[int, ...]
    initial: tuple[int, ...]

    def __post_init__(self):
        k = len(self.coefficients)
        if k < 1 or len(self.initial) != k:
            raise ValueError("need k coefficients and k initial terms")
        if self.coefficients[-1] == 0:
            raise ValueError("the trailing coefficient must be nonzero")
        if not any(self.initial):
            raise ValueError("initial terms must not all vanish")

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def characteristic_descending(self) -> list[int]:
        """Coefficients of X^k - a_1 X^{k-1} - ... - a_k, leading first."""
        return [1] + [-a for a in self.coefficients]


def recurrence_values(spec: RecurrenceSpec, n_max: int) -> list[int]:
    """u_0 .. u_{n_max} by the defining recurrence, exact."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    values = list(spec.initial)
    k = spec.order
    while len(values) <= n_max:
        values.append(sum(a * u for a, u in
                          zip(spec.coefficients, values[-1:-k - 1:-1])))
    return values[:n_max + 1]


@dataclass(frozen=True)
class DominantRootReport:
    """Certified dominance analysis of the characteristic roots.

    is_dominant is None when modulus separation stayed undecided at the
    precision budget; degenerate is "undetermined" outside the rational-root
    case, where root-of-unity ratios reduce to +-1.
    """

    is_dominant: bool | None
    root_low: float | None
    root_high: float | None
    simple: bool | None
    degenerate: bool | str


def _rational_roots_with_multiplicity(desc: list[int]) -> tuple[dict[int, int], list[int]]:
    """Integer roots of a monic integer polynomial, plus the unsplit remainder.

    Returns ({root: multiplicity}, remaining descending coefficients).
    """
    roots: dict[int, int] = {}
    coeffs = list(desc)
    while len(coeffs) > 1:
        tail = coeffs[-1]
        if tail == 0:
            root = 0
        else:
            root = None
            for cand in range(1, abs(tail) + 1):
                if abs(tail) % cand:
                    continue
                for r in (cand, -cand):
                    acc = 0
                    for c in coeffs:
                        acc = acc * r + c
                    if acc == 0:
                        root = r
                        break
                if root is not None:
                    break
            if root is None:
                break
        new = []
        acc = 0
        for c in coeffs[:-1]:
            acc = acc * root + c
            new.append(acc)
        roots[root] = roots.get(root, 0) + 1
        coeffs = new
    return roots, coeffs


def dominant_root(spec: RecurrenceSpec, max_digits: int = 2000) -> DominantRootReport:
    """Decide |alpha_1| > |alpha_2| for the characteristic roots.

    A non-real root of maximal modulus ties with its conjugate, so dominance
    requires the top root to be real; separation between the top two moduli
    is certified numerically at escalating precision. Exact +-pair detection
    catches sign ties between real algebraic roots.
    """
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(spec.characteristic_descending(), x)
    rational_roots, remainder = _rational_roots_with_multiplicity(
        spec.characteristic_descending())
    if len(remainder) == 1:
        # fully rational spectrum: a root-of-unity ratio of two distinct
        # rationals can only be -1
        degenerate: bool | str = any(-r in rational_roots for r in rational_roots)
    else:
        degenerate = "undetermined"

    all_roots = poly.all_roots()   # repeated by multiplicity
    distinct: list = []
    mult: list[int] = []
    for r in all_roots:
        if distinct and r == distinct[-1]:
            mult[-1] += 1
        else:
            distinct.append(r)
            mult.append(1)

    if len(distinct) == 1:
        r = distinct[0]
        if r.is_real is False:
            return DominantRootReport(False, None, None, None, degenerate)
        val = complex(r.evalf(30))
        return DominantRootReport(True, val.real, val.real, mult[0] == 1, degenerate)

    digits = 30
    while digits <= max_digits:
        approx = [complex(r.evalf(digits)) for r in distinct]
        moduli = [abs(z) for z in approx]
        order = sorted(range(len(distinct)), key=lambda i: -moduli[i])
        top, second = order[0], order[1]
        margin = 10.0 ** (5 - digits) * max(moduli[top], 1.0)
        if distinct[top].is_real is False and moduli[top] - moduli[second] > margin:
            # separation can never certify against the conjugate; unreachable
            return DominantRootReport(None, None, None, None, degenerate)
        if moduli[top] - moduli[second] > margin:
            return DominantRootReport(True, approx[top].real - margin,
                                      approx[top].real + margin,
                                      mult[top] == 1, degenerate)
        # structural tie checks among the top candidates
        try:
            if distinct[top].is_real is False and \
                    sympy.conjugate(distinct[top]) == distinct[second]:
                return DominantRootReport(False, None, None, None, degenerate)
            if distinct[top].is_real and distinct[second] == -distinct[top]:
                return DominantRootReport(False, None, None, None, degenerate)
        except (TypeError, NotImplementedError):
            pass
        digits *= 4
    return DominantRootReport(None, None, None, None, degenerate)


def srl_delta(spec: RecurrenceSpec, primes: PrimeSet) -> float | str:
    """The S-part density exponent of a recurrence with all roots rational.

    delta = sum_i (min over roots of v_{l_i}) * log l_i / log max|root|;
    "unsupported" when the characteristic polynomial has irrational roots
    (prime-ideal valuations are out of scope) or all roots are on the unit
    circle (the denominator vanishes).
    """
    roots, remainder = _rational_roots_with_multiplicity(
        spec.characteristic_descending())
    if len(remainder) != 1:
        return "unsupported"
    distinct = list(roots)
    top = max(abs(r) for r in distinct)
    if top <= 1:
        return "unsupported"
    total = 0.0
    for l in primes:
        vmin = min(v_p_int(l, r) for r in distinct)
        total += vmin * math.log(l)
    return total / math.log(top)


@dataclass(frozen=True)
class PowerSumCell:
    m: int
    n: int
    value: int
    case: str


def power_sum_grid(a: int, b: int, m_max: int, n_max: int) -> list[PowerSumCell]:
    """a^m + b^n + 1 over the positive grid, labeled by the size-comparison case.

    "first" when a^m >= b^{2n}, "second" when b^n >= a^{2m}, else
    "comparable" (the two dominant terms are within square range of each
    other). Rows are ordered by (m + n, m).
    """
    if a < 2 or b < 2:
        raise ValueError("need a, b >= 2")
    cells = []
    for m in range(1, m_max + 1):
        am = a ** m
        for n in range(1, n_max + 1):
            bn = b ** n
            if am >= bn * bn:
                case = "first"
            elif bn >= am * am:
                case = "second"
            else:
                case = "comparable"
            cells.append(PowerSumCell(m, n, am + bn + 1, case))
    cells.sort(key=lambda c: (c.m + c.n, c.m))
    return cells


def spart_exponent_series(name: str, keyed_values, primes: PrimeSet) -> ExponentSeries:
    """S-part exponent log[v]_S / log|v| over (key, value) pairs.

    Zero values and |v| = 1 are excluded from the statistics, never
    zero-filled.
    """
    entries = []
    excluded = []
    for key, value in keyed_values:
        if value == 0:
            excluded.append((key, "zero value"))
            continue
        if abs(value) == 1:
            excluded.append((key, "unit value"))
            continue
        dec = s_part(value, primes)
        entries.append(ExponentEntry(
            key, math.log(dec.s_part) / math.log(abs(value))))
    return ExponentSeries(name, tuple(entries), tuple(excluded))


@dataclass(frozen=True)
class TUnitSumRow:
    x: int
    y: int
    total: int
    decomposition: SPartDecomposition


def t_unit_sum_scan(t_primes: PrimeSet, exponent_bound: int,
                    s_primes: PrimeSet) -> list[TUnitSumRow]:
    """Sums x + y of coprime integer T-units with exponents <= bound, both signs.

    Pairs are canonicalized to x >= |y| (the sum is symmetric); the S-part
    decomposition of each sum is attached. S and T must be disjoint.
    """
    if exponent_bound < 1:
        raise ValueError("exponent bound must be >= 1")
    if set(t_primes) & set(s_primes):
        raise DomainError("the prime sets must be disjoint")
    units = [1]
    for q in t_primes:
        units = [u * q ** e for u in units for e in range(exponent_bound + 1)]
    units.sort()
    rows = []
    for i, xv in enumerate(units):
        for yv in units[:i + 1]:
            if math.gcd(xv, yv) != 1:
                continue
            for y_signed in (yv, -yv):
                rows.append(TUnitSumRow(xv, y_signed, xv + y_signed,
                                        s_part(xv + y_signed, s_primes)))
    rows.sort(key=lambda r: (abs(r.total), r.x, r.y))
    return rows


def polynomial_value(coeffs: tuple[int, ...], n: int) -> int:
    """Value of c_0 + c_1 X + ... at X = n."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * n + c
    return acc


def poly_value_scan(coeffs: tuple[int, ...], n_min: int, n_max: int,
                    primes: PrimeSet) -> ExponentSeries:
    """S-part exponents of f(n) over an integer range; deg f >= 2 required."""
    if len(coeffs) < 3 or coeffs[-1] == 0:
        raise DomainError("need a polynomial of degree >= 2")
    values = ((n, polynomial_value(coeffs, n)) for n in range(n_min, n_max + 1))
    return spart_exponent_series("polynomial_spart_exponent", values, primes)


def binary_form_value(coeffs: tuple[int, ...], x: int, y: int) -> int:
    """Value of sum coeffs[i] * x^(d-i) * y^i, d = len(coeffs) - 1."""
    d = len(coeffs) - 1
    return sum(c * x ** (d - i) * y ** i for i, c in enumerate(coeffs))


def binary_form_scan(coeffs: tuple[int, ...], height_bound: int,
                     primes: PrimeSet) -> ExponentSeries:
    """S-part exponents of F(x, y) over primitive pairs with |x|, |y| <= bound."""
    if len(coeffs) < 3:
        raise DomainError("need a form of degree >= 2")
    if height_bound < 1:
        raise ValueError("height bound must be >= 1")

    def pairs():
        for x in range(-height_bound, height_bound + 1):
            for y in range(-height_bound, height_bound + 1):
                if (x, y) != (0, 0) and math.gcd(x, y) == 1:
                    yield (x, y), binary_form_value(coeffs, x, y)

    return spart_exponent_series("binary_form_spart_exponent", pairs(), primes)


def is_s_unit(x: Fraction, primes: PrimeSet) -> bool:
    """True when both numerator and denominator factor entirely over the set."""
    if x == 0:
        return False
    for part in (abs(x.numerator), x.denominator):
        for l in primes:
            while part % l == 0:
                part //= l
        if part != 1:
            return False
    return True


@dataclass(frozen=True)
class SUnitSolution:
    x1: Fraction
    x2: Fraction
    h1: float
    h2: float

    @property
    def max_height(self) -> float:
        return max(self.h1, self.h2)


@dataclass(frozen=True)
class SUnitSolveResult:
    solutions: tuple[SUnitSolution, ...]
    radius: int
    max_height: float | None


def sunit_solve(a1: Fraction, a2: Fraction, primes: PrimeSet,
                exponent_bound: int) -> SUnitSolveResult:
    """Solutions of a1*x1 + a2*x2 = 1 in S-units, searched over x1.

    x1 ranges over +-prod(l^e) with |e| <= bound; x2 = (1 - a1*x1)/a2 is
    accepted whenever it is an S-unit (its exponents are not bounded).
    Complete only within the stated radius.
    """
    a1, a2 = Fraction(a1), Fraction(a2)
    if a1 == 0 or a2 == 0:
        raise ValueError("coefficients must be nonzero")
    if exponent_bound < 1:
        raise ValueError("exponent bound must be >= 1")
    candidates = [Fraction(1)]
    for l in primes:
        candidates = [c * Fraction(l) ** e
                      for c in candidates
                      for e in range(-exponent_bound, exponent_bound + 1)]
    solutions = []
    for mag in candidates:
        for x1 in (mag, -mag):
            x2 = (1 - a1 * x1) / a2
            if is_s_unit(x2, primes):
                solutions.append(SUnitSolution(x1, x2, height(x1), height(x2)))
    solutions.sort(key=lambda s: (s.max_height, s.x1, s.x2))
    return SUnitSolveResult(tuple(solutions), exponent_bound,
                            max((s.max_height for s in solutions), default=None))


@dataclass(frozen=True)
class FrontierRow:
    q: int
    y: int
    scale: Fraction
    scale_height: float
    clamped_height: float
    ratio: float


def almost_power_frontier(n: int, q_max: int, y_max: int) -> list[FrontierRow]:
    """Per prime exponent q <= q_max: the y minimizing the height of n / y**q.

    Realizes the near-power question "when is n = A * y^q with A of small
    height": for each prime q the best witness y in [2, y_max] is reported
    with h(A), h*(A) and the ratio q / h*(A).
    """
    if n < 2 or q_max < 2:
        raise ValueError("need n >= 2 and q_max >= 2")
    if y_max < 2:
        raise DomainError("y_max must be at least 2")
    rows = []
    for q in range(2, q_max + 1):
        if not is_prime(q):
            continue
        best = None
        for y in range(2, y_max + 1):
            scale = Fraction(n, y ** q)
            h = height(scale)
            if best is None or h < best[0]:
                best = (h, y, scale)
        h, y, scale = best
        hs = h_star(scale)
        rows.append(FrontierRow(q, y, scale, h, hs, q / hs))
    return rows
