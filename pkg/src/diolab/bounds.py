"""Evaluators for lower bounds on linear forms in logarithms.

Archimedean variants eq1..eq5 (log-scale, returned as the negative bound on
log|Lambda|), the p-adic family (yu_first, eqYu with its T quantity, the
eq6/eq7 alternative, eq8), the two-logarithm p-adic bound (bula), and the
inversion solver that turns "x <= K * log(x/H)**e" hypotheses into explicit
x bounds.

The multiplicative constants c1..c7 exist but carry no published values: they
are configuration, shipped with NON-NORMATIVE defaults of 1.0. Every log
argument is floored at 3 before taking the log; reports record where the
floor bit. Each report carries a double-entry recomputation of its value
through an independent floating-point path (1e-12 relative contract).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError
from .exactarith import is_prime

HEIGHT_PRODUCT_LIMIT = 1e280
DOUBLE_ENTRY_RTOL = 1e-12


@dataclass(frozen=True)
class BoundConstants:
    """Configurable positive constants c1..c7; defaults are placeholders, not truth."""

    c1: float = 1.0
    c2: float = 1.0
    c3: float = 1.0
    c4: float = 1.0
    c5: float = 1.0
    c6: float = 1.0
    c7: float = 1.0
    source: str = "NON-NORMATIVE defaults (all 1.0)"

    def __post_init__(self):
        for name in ("c1", "c2", "c3", "c4", "c5", "c6", "c7"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def from_dict(cls, d: dict) -> "BoundConstants":
        kwargs = {k: float(v) for k, v in d.items() if k in
                  ("c1", "c2", "c3", "c4", "c5", "c6", "c7")}
        if "source" in d:
            kwargs["source"] = str(d["source"])
        return cls(**kwargs)


DEFAULT_CONSTANTS = BoundConstants()


@dataclass(frozen=True)
class LogFormInput:
    """Data of a linear form b1*log(a1) + ... + bn*log(an).

    Only the sizes enter the bounds: integer coefficients, clamped heights
    h*_i >= 1, the field degree, and on the p-adic side a prime p, a
    parameter delta in (0, 1/2], and a cap B_n with B >= B_n >= |b_n|.
    """

    coefficients: tuple[int, ...]
    heights: tuple[float, ...]
    degree: int = 1
    p: int | None = None
    delta: float | None = None
    b_n_cap: float | None = None

    def __post_init__(self):
        n = len(self.coefficients)
        if n < 1 or len(self.heights) != n:
            raise ValueError("need n >= 1 coefficients with matching heights")
        if self.coefficients[-1] == 0:
            raise ValueError("the last coefficient must be nonzero")
        if any(h < 1.0 for h in self.heights):
            raise ValueError("every clamped height must be >= 1")
        if self.degree < 1:
            raise ValueError("degree must be >= 1")
        prod = 1.0
        for h in self.heights:
            prod *= h
        if prod > HEIGHT_PRODUCT_LIMIT:
            raise DomainError("height product beyond the double-precision contract")
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.delta is not None and not (0 < self.delta <= 0.5):
            raise ValueError("delta must lie in (0, 1/2]")
        if self.b_n_cap is not None:
            if not (self.B >= self.b_n_cap >= abs(self.coefficients[-1])):
                raise ValueError("need B >= B_n >= |b_n|")

    @property
    def n(self) -> int:
        return len(self.coefficients)

    @property
    def B(self) -> float:
        return float(max(3, max(abs(b) for b in self.coefficients)))

    def height_product(self) -> float:
        prod = 1.0
        for h in self.heights:
            prod *= h
        return prod


def quantity_B(inp: LogFormInput) -> float:
    return inp.B


def quantity_Bprime(inp: LogFormInput) -> float:
    """max(3, max over j < n of |b_n|/h*_j + |b_j|/h*_n); needs n >= 2."""
    if inp.n < 2:
        raise DomainError("the primed coefficient quantity needs n >= 2")
    bn = abs(inp.coefficients[-1])
    hn = inp.heights[-1]
    inner = max(bn / inp.heights[j] + abs(inp.coefficients[j]) / hn
                for j in range(inp.n - 1))
    return max(3.0, inner)


def quantity_Bdoubleprime(inp: LogFormInput) -> float:
    """max(3, max over all j of |b_j| * h*_j / h*_n)."""
    hn = inp.heights[-1]
    inner = max(abs(b) * h / hn for b, h in zip(inp.coefficients, inp.heights))
    return max(3.0, inner)


def _floored_log(x: float) -> tuple[float, bool]:
    """log(max(3, x)) and whether the floor was active."""
    if x <= 3.0:
        return math.log(3.0), True
    return math.log(x), False


def _dual_product(factors: list[float], log_arg: float) -> tuple[float, float]:
    """The product of positive factors times log_arg, computed twice.

    Direct left-to-right multiplication, and exp of an fsum of logs; the two
    must agree to DOUBLE_ENTRY_RTOL.
    """
    direct = 1.0
    for f in factors:
        direct *= f
    direct *= log_arg
    alt = math.exp(math.fsum([math.log(f) for f in factors] + [math.log(log_arg)]))
    if not math.isfinite(direct):
        raise DomainError("bound magnitude exceeds double precision")
    return direct, alt


@dataclass(frozen=True)
class BoundReport:
    """One evaluated bound with its recomputation and the quantities used."""

    bound_id: str
    rhs: float
    rhs_double_entry: float
    quantities: dict[str, float] = field(default_factory=dict)
    branch: str | None = None
    floored: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    def consistent(self, rtol: float = DOUBLE_ENTRY_RTOL) -> bool:
        a, b = self.rhs, self.rhs_double_entry
        return abs(a - b) <= rtol * max(abs(a), abs(b), 1e-300)


ARCHIMEDEAN_VARIANTS = ("eq1", "eq2", "eq3", "eq4", "eq5")


def lower_bound(inp: LogFormInput, constants: BoundConstants = DEFAULT_CONSTANTS,
                variant: str = "eq1") -> BoundReport:
    """Log-scale lower bound for log|Lambda| under the chosen variant.

    eq1: -c1^n * H * log B              (H = product of clamped heights)
    eq2: -c2^n * n^{3n} * H * log B'
    eq3: -c3^n * H * log B''
    eq4: -c4^n * n^{3n} * H * log(B / h*_n)     [needs |b_n| = 1]
    eq5: -c5^n * H * log(B * max(h*_1..h*_{n-1}) / h*_n)   [needs |b_n| = 1]
    """
    if variant not in ARCHIMEDEAN_VARIANTS:
        raise DomainError(f"unknown variant {variant!r}")
    n = inp.n
    hprod = inp.height_product()
    quantities: dict[str, float] = {"B": inp.B, "height_product": hprod}
    floored: list[str] = []
    if variant == "eq1":
        c, poly = constants.c1, 1.0
        arg, fl = _floored_log(inp.B)
    elif variant == "eq2":
        c, poly = constants.c2, float(n) ** (3 * n)
        bp = quantity_Bprime(inp)
        quantities["Bprime"] = bp
        arg, fl = _floored_log(bp)
    elif variant == "eq3":
        c, poly = constants.c3, 1.0
        bpp = quantity_Bdoubleprime(inp)
        quantities["Bdoubleprime"] = bpp
        arg, fl = _floored_log(bpp)
    elif variant == "eq4":
        if abs(inp.coefficients[-1]) != 1:
            raise DomainError("eq4 needs |b_n| = 1")
        c, poly = constants.c4, float(n) ** (3 * n)
        ratio = inp.B / inp.heights[-1]
        quantities["B_over_hn"] = ratio
        arg, fl = _floored_log(ratio)
    else:  # eq5
        if abs(inp.coefficients[-1]) != 1:
            raise DomainError("eq5 needs |b_n| = 1")
        if n < 2:
            raise DomainError("eq5 needs n >= 2")
        c, poly = constants.c5, 1.0
        ratio = inp.B * max(inp.heights[:-1]) / inp.heights[-1]
        quantities["B_maxh_over_hn"] = ratio
        arg, fl = _floored_log(ratio)
    if fl:
        floored.append("log_argument")
    quantities["log_argument"] = math.exp(arg)
    direct, alt = _dual_product([c ** n, poly, hprod], arg)
    return BoundReport(variant, -direct, -alt, quantities, floored=tuple(floored))


def yu_bound(inp: LogFormInput, constants: BoundConstants = DEFAULT_CONSTANTS) -> BoundReport:
    """The p-adic valuation bound family, evaluated on one input.

    Computes the plain first bound, the refined bound with its interior
    quantity T, and the alternative pair: either the coefficient comparison
    (6) holds numerically, or the refined valuation bound (7) is the
    applicable disjunct. The divisibility hypothesis v_p(b_n) <= v_p(b_j) is
    a recorded caller assertion, not checked here.
    """
    if inp.n < 2:
        raise DomainError("the p-adic family needs n >= 2")
    if inp.p is None or inp.delta is None:
        raise DomainError("p and delta are required")
    p, delta = inp.p, inp.delta
    bn_cap = inp.b_n_cap if inp.b_n_cap is not None else float(max(3, abs(inp.coefficients[-1])))
    n, D = inp.n, inp.degree
    hprod = inp.height_product()
    hprod_head = hprod / inp.heights[-1]  # product over the first n-1 heights

    yu_first_arg, fl_first = _floored_log(inp.B)
    first_direct, first_alt = _dual_product(
        [constants.c1 ** n, float(p) ** D, hprod], yu_first_arg)

    T = (bn_cap / delta) * constants.c4 ** (n * n) * float(p) ** ((n + 1) * D) * hprod_head
    logT, fl_T = _floored_log(T)
    padic_scale = float(p) ** D / math.log(p) ** 2
    main_height_term = constants.c2 ** n * padic_scale * hprod * logT
    main_coeff_term = constants.c2 ** n * padic_scale * delta * inp.B / (bn_cap * constants.c3 ** n)
    eqyu_direct, eqyu_alt = ((main_height_term,
                              math.exp(math.fsum([n * math.log(constants.c2),
                                                  D * math.log(p),
                                                  -2 * math.log(math.log(p)),
                                                  math.log(hprod), math.log(logT)])))
                             if main_height_term >= main_coeff_term else
                             (main_coeff_term,
                              math.exp(math.fsum([n * math.log(constants.c2),
                                                  D * math.log(p),
                                                  -2 * math.log(math.log(p)),
                                                  math.log(delta), math.log(inp.B),
                                                  -math.log(bn_cap),
                                                  -n * math.log(constants.c3)]))))

    eq6_rhs = constants.c5 ** n * hprod * bn_cap
    branch = "(6)" if inp.B <= eq6_rhs else "(7)"

    eq7_arg, fl7 = _floored_log(inp.B / inp.heights[-1])
    eq7_direct, eq7_alt = _dual_product([constants.c6 ** n, float(p) ** D, hprod], eq7_arg)

    eq8_arg, fl8 = _floored_log(inp.B * max(inp.heights[:-1]) / inp.heights[-1])
    eq8_direct, eq8_alt = _dual_product([constants.c7 ** n, float(p) ** D, hprod], eq8_arg)

    floored = tuple(name for name, f in
                    [("yu_first", fl_first), ("log_T", fl_T), ("eq7", fl7), ("eq8", fl8)] if f)
    quantities = {
        "B": inp.B, "B_n": bn_cap, "T": T, "log_T": logT,
        "height_product": hprod,
        "eqYu_height_term": main_height_term,
        "eqYu_coefficient_term": main_coeff_term,
        "yu_first_rhs": first_direct, "yu_first_rhs_alt": first_alt,
        "eq6_rhs": eq6_rhs,
        "eq7_rhs": eq7_direct, "eq7_rhs_alt": eq7_alt,
        "eq8_rhs": eq8_direct, "eq8_rhs_alt": eq8_alt,
    }
    return BoundReport(
        "eqYu", eqyu_direct, eqyu_alt, quantities, branch=branch, floored=floored,
        notes=("divisibility hypothesis v_p(b_n) <= v_p(b_j) asserted by caller",))


def bula_bound(b1: int, b2: int, h1: float, h2: float, p: int, D: int,
               c1: float = 1.0) -> BoundReport:
    """Two-logarithm p-adic bound: c1 * p^D * h1 * h2 * log(B')^2.

    B' = max(3, b1/h2 + b2/h1) for positive integer coefficients.
    """
    if b1 < 1 or b2 < 1:
        raise DomainError("coefficients must be positive integers")
    if h1 < 1 or h2 < 1:
        raise ValueError("clamped heights must be >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    bprime = max(3.0, b1 / h2 + b2 / h1)
    floored = ("Bprime",) if b1 / h2 + b2 / h1 <= 3.0 else ()
    lb = math.log(bprime)
    direct = c1 * float(p) ** D * h1 * h2 * lb * lb
    alt = math.exp(math.fsum([math.log(c1), D * math.log(p), math.log(h1),
                              math.log(h2), 2 * math.log(lb)]))
    return BoundReport("bula", direct, alt, {"Bprime": bprime, "B": float(max(3, b1, b2))},
                       floored=floored)


def invert_linear_log(K: float, H: float, e: int, x_min: float | None = None) -> float | None:
    """Largest x >= x_min with x <= K * log(x/H)**e, or None if there is none.

    x / log(x/H)**e is decreasing then increasing in x > H with its minimum at
    H * exp(e), so the feasible set is an interval and its right endpoint is
    the unique crossing on the increasing branch; bisection localizes it to
    relative 1e-9.
    """
    if K <= 0 or H <= 0 or e not in (1, 2):
        raise ValueError("need K > 0, H > 0, e in {1, 2}")
    if x_min is None:
        x_min = 3.0 * H
    if x_min <= H:
        raise ValueError("x_min must exceed H")

    def g(x: float) -> float:
        return x / math.log(x / H) ** e

    x0 = max(x_min, H * math.exp(e))
    if g(x0) > K:
        return None
    hi = 2.0 * x0
    while g(hi) <= K:
        hi *= 2.0
    lo = max(x0, hi / 2.0)
    for _ in range(200):
        mid = (lo + hi) / 2.0
        if g(mid) <= K:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-9 * lo:
            break
    return lo


@dataclass(frozen=True)
class CoefficientBoundReport:
    """Explicit bound on B from a smallness hypothesis log|Lambda| <= -delta*B."""

    K: float
    bound: float | None
    ratio_to_hn: float | None
    delta: float


def baker73_B_bound(inp: LogFormInput, constants: BoundConstants = DEFAULT_CONSTANTS,
                    delta: float = 0.5) -> CoefficientBoundReport:
    """Bound B <= K * log(B/h*_n) made explicit by the inversion solver.

    K = delta^-1 * c4^n * n^{3n} * (product of clamped heights), the
    coefficient of eq4 under the hypothesis log|Lambda| <= -delta * B; the
    result is linear in h*_n, reported with the ratio bound/h*_n.
    """
    if abs(inp.coefficients[-1]) != 1:
        raise DomainError("needs |b_n| = 1")
    if not (0 < delta < 1):
        raise ValueError("delta must lie in (0, 1)")
    n = inp.n
    K = (1.0 / delta) * constants.c4 ** n * float(n) ** (3 * n) * inp.height_product()
    hn = inp.heights[-1]
    bound = invert_linear_log(K, hn, 1)
    return CoefficientBoundReport(
        K=K, bound=bound, ratio_to_hn=None if bound is None else bound / hn,
        delta=delta)
