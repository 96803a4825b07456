"""Exact real algebraic numbers of small degree.

Rationals (stdlib Fraction), real quadratic numbers (a + b*sqrt(d))/c, and
d-th roots of integers, with conjugates, logarithmic heights, and certified
dyadic enclosures. Every comparison against a rational is decided exactly;
enclosure refinement doubles precision until a decision is certified, up to a
hard cap that raises instead of guessing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Union

from .errors import DomainError, PrecisionBudgetError
from .exactarith import integer_nth_root, perfect_power_split, squarefree_part

PRECISION_START_BITS = 64
PRECISION_CAP_BITS = 2**20


@dataclass(frozen=True)
class Enclosure:
    """A certified interval lo <= true value <= hi with dyadic-friendly bounds."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty enclosure")

    @classmethod
    def point(cls, v) -> "Enclosure":
        v = Fraction(v)
        return cls(v, v)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, v) -> bool:
        return self.lo <= v <= self.hi

    def __add__(self, other):
        if isinstance(other, Enclosure):
            return Enclosure(self.lo + other.lo, self.hi + other.hi)
        return Enclosure(self.lo + other, self.hi + other)

    def __sub__(self, other):
        if isinstance(other, Enclosure):
            return Enclosure(self.lo - other.hi, self.hi - other.lo)
        return Enclosure(self.lo - other, self.hi - other)

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo)

    def scale(self, k) -> "Enclosure":
        k = Fraction(k)
        if k >= 0:
            return Enclosure(self.lo * k, self.hi * k)
        return Enclosure(self.hi * k, self.lo * k)

    def abs(self) -> "Enclosure":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Enclosure(Fraction(0), max(-self.lo, self.hi))

    def strictly_below(self, v) -> bool:
        v = v.lo if isinstance(v, Enclosure) else Fraction(v)
        return self.hi < v

    def strictly_above(self, v) -> bool:
        v = v.hi if isinstance(v, Enclosure) else Fraction(v)
        return self.lo > v

    def __float__(self):
        return float(self.mid)


def sqrt_enclosure(n: int, bits: int) -> Enclosure:
    """Certified enclosure of sqrt(n) of width 2**-bits (n >= 0)."""
    s = math.isqrt(n << (2 * bits))
    scale = Fraction(1, 1 << bits)
    if s * s == n << (2 * bits):
        return Enclosure.point(s * scale)
    return Enclosure(s * scale, (s + 1) * scale)


def nth_root_enclosure(n: int, d: int, bits: int) -> Enclosure:
    """Certified enclosure of n ** (1/d) of width 2**-bits (n >= 0, d >= 1)."""
    r = integer_nth_root(n << (d * bits), d)
    scale = Fraction(1, 1 << bits)
    if r ** d == n << (d * bits):
        return Enclosure.point(r * scale)
    return Enclosure(r * scale, (r + 1) * scale)


def sign_plus_sqrt(u: int, v: int, w: int) -> int:
    """Exact sign of u + v*sqrt(w) for integers u, v and non-square w >= 2."""
    if v == 0:
        return (u > 0) - (u < 0)
    if v > 0:
        if u >= 0:
            return 1
        return (v * v * w > u * u) - (v * v * w < u * u)
    if u <= 0:
        return -1
    return (u * u > v * v * w) - (u * u < v * v * w)


@dataclass(frozen=True)
class QuadraticReal:
    """(a + b*sqrt(d))/c with b != 0, c > 0, d > 1 squarefree, gcd(a,b,c) = 1.

    Irrational by construction. Build through make(); the raw constructor
    checks the cheap invariants only and does not extract square parts of d.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.b == 0:
            raise ValueError("b = 0 would be rational; use Fraction")
        if self.c <= 0:
            raise ValueError("denominator must be positive")
        if self.d < 2:
            raise ValueError("radicand must be at least 2")
        if math.gcd(math.gcd(abs(self.a), abs(self.b)), self.c) != 1:
            raise ValueError("coordinates not normalized; use make()")

    @classmethod
    def make(cls, a: int, b: int, c: int, d: int) -> "QuadraticReal":
        if c == 0:
            raise ValueError("zero denominator")
        if b == 0:
            raise ValueError("b = 0 would be rational; use Fraction")
        if d < 2:
            raise ValueError("radicand must be at least 2")
        s, f = squarefree_part(d)
        if s == 1:
            raise ValueError(f"sqrt({d}) = {f} is rational; use Fraction")
        b *= f
        d = s
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(abs(a), abs(b)), c)
        return cls(a // g, b // g, c // g, d)

    @classmethod
    def sqrt_of(cls, n: int) -> "QuadraticReal":
        return cls.make(0, 1, 1, n)

    @classmethod
    def golden_ratio(cls) -> "QuadraticReal":
        return cls.make(1, 1, 2, 5)

    def conjugate(self) -> "QuadraticReal":
        return QuadraticReal(self.a, -self.b, self.c, self.d)

    @property
    def degree(self) -> int:
        return 2

    def minimal_polynomial(self) -> tuple[int, int, int]:
        """Primitive (A2, A1, A0) with A2 > 0 and A2*x^2 + A1*x + A0 = 0 at x."""
        a2 = self.c * self.c
        a1 = -2 * self.a * self.c
        a0 = self.a * self.a - self.b * self.b * self.d
        g = math.gcd(math.gcd(a2, abs(a1)), abs(a0))
        return a2 // g, a1 // g, a0 // g

    def trace(self) -> Fraction:
        return Fraction(2 * self.a, self.c)

    def norm(self) -> Fraction:
        return Fraction(self.a * self.a - self.b * self.b * self.d,
                        self.c * self.c)

    def sign(self) -> int:
        return sign_plus_sqrt(self.a, self.b, self.d)

    def compare(self, r) -> int:
        """Exact sign of self - r for rational r."""
        r = Fraction(r)
        u = self.a * r.denominator - r.numerator * self.c
        v = self.b * r.denominator
        return sign_plus_sqrt(u, v, self.d)

    def __float__(self):
        return float(self.enclosure(64).mid)

    def enclosure(self, bits: int) -> Enclosure:
        root = sqrt_enclosure(self.d, bits + max(0, abs(self.b).bit_length()))
        return (root.scale(self.b) + self.a).scale(Fraction(1, self.c))

    def floor(self) -> int:
        s = math.isqrt(self.b * self.b * self.d)
        num = self.a + s if self.b > 0 else self.a - s - 1
        return num // self.c

    def coords(self) -> "QuadraticCoords":
        return QuadraticCoords(Fraction(self.a, self.c),
                               Fraction(self.b, self.c), self.d)

    @classmethod
    def _reduced(cls, a: int, b: int, c: int, d: int) -> "QuadraticReal":
        """Direct construction when d is already squarefree (no factorization)."""
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(abs(a), abs(b)), c)
        return cls(a // g, b // g, c // g, d)

    def scale(self, k) -> "QuadraticReal | Fraction":
        k = Fraction(k)
        if k == 0:
            return Fraction(0)
        return QuadraticReal._reduced(self.a * k.numerator, self.b * k.numerator,
                                      self.c * k.denominator, self.d)

    def add_rational(self, k) -> "QuadraticReal":
        k = Fraction(k)
        return QuadraticReal._reduced(self.a * k.denominator + k.numerator * self.c,
                                      self.b * k.denominator,
                                      self.c * k.denominator, self.d)


@dataclass(frozen=True)
class QuadraticCoords:
    """Element A + B*sqrt(d) of the quadratic field, with rational A, B."""

    A: Fraction
    B: Fraction
    d: int

    def __add__(self, other: "QuadraticCoords") -> "QuadraticCoords":
        self._check(other)
        return QuadraticCoords(self.A + other.A, self.B + other.B, self.d)

    def __mul__(self, other: "QuadraticCoords") -> "QuadraticCoords":
        self._check(other)
        return QuadraticCoords(self.A * other.A + self.B * other.B * self.d,
                               self.A * other.B + self.B * other.A, self.d)

    def _check(self, other):
        if self.d != other.d:
            raise ValueError("mixed radicands")

    def __pow__(self, n: int) -> "QuadraticCoords":
        if n < 0:
            raise ValueError("negative powers unsupported")
        result = QuadraticCoords(Fraction(1), Fraction(0), self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "QuadraticCoords":
        return QuadraticCoords(self.A, -self.B, self.d)

    @property
    def is_rational(self) -> bool:
        return self.B == 0

    def to_value(self) -> "Fraction | QuadraticReal":
        if self.B == 0:
            return self.A
        l = math.lcm(self.A.denominator, self.B.denominator)
        return QuadraticReal.make(int(self.A * l), int(self.B * l), l, self.d)

    def enclosure(self, bits: int) -> Enclosure:
        if self.B == 0:
            return Enclosure.point(self.A)
        extra = max(0, abs(self.B.numerator).bit_length())
        root = sqrt_enclosure(self.d, bits + extra)
        return root.scale(self.B) + self.A


@dataclass(frozen=True)
class RootOfInteger:
    """xi = m ** (1/d) > 1 in minimal form: no e | d, e > 1, with m an e-th power."""

    m: int
    d: int

    def __post_init__(self):
        if self.m < 2 or self.d < 2:
            raise ValueError("need m >= 2, d >= 2")

    @classmethod
    def make(cls, m: int, d: int) -> "RootOfInteger":
        if m < 2 or d < 2:
            raise ValueError("need m >= 2, d >= 2")
        y, q = perfect_power_split(m)
        g = math.gcd(q, d)
        m2, d2 = y ** (q // g), d // g
        if d2 == 1:
            raise DomainError(f"{m}^(1/{d}) = {m2} is an integer, not a root")
        return cls(m2, d2)

    @property
    def degree(self) -> int:
        return self.d

    def __float__(self):
        return float(self.enclosure(64).mid)

    def enclosure(self, bits: int) -> Enclosure:
        return nth_root_enclosure(self.m, self.d, bits)

    def floor(self) -> int:
        return integer_nth_root(self.m, self.d)

    def power_enclosure(self, n: int, bits: int) -> Enclosure:
        """Enclosure of (m ** (1/d)) ** n = (m**n) ** (1/d)."""
        return nth_root_enclosure(self.m ** n, self.d, bits)

    def power_is_integer(self, n: int) -> bool:
        return n % self.d == 0


Real = Union[int, Fraction, QuadraticReal, RootOfInteger]


def as_exact(x) -> Real:
    if isinstance(x, (QuadraticReal, RootOfInteger)):
        return x
    return Fraction(x)


def is_rational(x) -> bool:
    return isinstance(x, (int, Fraction))


def floor_value(x: Real) -> int:
    if isinstance(x, (QuadraticReal, RootOfInteger)):
        return x.floor()
    return math.floor(Fraction(x))


def evaluate(x: Real, target_width) -> Enclosure:
    """Enclosure of x of width at most target_width (> 0 for irrational x)."""
    if is_rational(x):
        return Enclosure.point(Fraction(x))
    tw = Fraction(target_width)
    if tw <= 0:
        raise ValueError("target width must be positive")
    bits = PRECISION_START_BITS
    while bits <= PRECISION_CAP_BITS:
        enc = x.enclosure(bits)
        if enc.width <= tw:
            return enc
        bits *= 2
    raise PrecisionBudgetError(f"no enclosure of width {tw} within {PRECISION_CAP_BITS} bits")


def _refine(decide: Callable[[int], object], start: int = PRECISION_START_BITS):
    """Run decide(bits) at doubling precision until it returns non-None."""
    bits = start
    while bits <= PRECISION_CAP_BITS:
        out = decide(bits)
        if out is not None:
            return out
        bits *= 2
    raise PrecisionBudgetError(f"undecided at the {PRECISION_CAP_BITS}-bit cap")


def nearest_int(x: Real) -> int:
    """Nearest integer to x; exact half-integers round to even."""
    if is_rational(x):
        x = Fraction(x)
        fl = math.floor(x)
        frac = x - fl
        if frac < Fraction(1, 2):
            return fl
        if frac > Fraction(1, 2):
            return fl + 1
        return fl if fl % 2 == 0 else fl + 1

    def decide(bits):
        enc = x.enclosure(bits)
        k = math.floor(enc.lo)
        if math.floor(enc.hi) != k:
            return None
        half = k + Fraction(1, 2)
        if enc.hi < half:
            return k
        if enc.lo > half:
            return k + 1
        return None

    return _refine(decide)


def nearest_int_distance(x: Real) -> Fraction | Enclosure:
    """Distance from x to the nearest integer, in [0, 1/2].

    Exact for rational x; otherwise a certified enclosure, refined until the
    nearest integer is unambiguous.
    """
    if is_rational(x):
        x = Fraction(x)
        frac = x - math.floor(x)
        return min(frac, 1 - frac)

    def decide(bits):
        enc = x.enclosure(bits)
        k = math.floor(enc.lo)
        if math.floor(enc.hi) != k:
            return None
        half = k + Fraction(1, 2)
        if enc.hi < half:
            return (enc - k).abs()
        if enc.lo > half:
            return (-(enc - (k + 1))).abs()
        return None

    return _refine(decide)


def distance_enclosure(enc: Enclosure) -> Enclosure | None:
    """Distance of an enclosed irrational to its nearest integer, if decidable."""
    k = math.floor(enc.lo)
    if math.floor(enc.hi) != k:
        return None
    half = k + Fraction(1, 2)
    if enc.hi < half:
        return (enc - k).abs()
    if enc.lo > half:
        return ((enc - (k + 1))).abs()
    return None


def height(x: Real) -> float:
    """Logarithmic Weil height.

    Rational r/s in lowest terms: log max(|r|, s). Degree-d x: the Mahler
    measure route (1/d)(log a_d + sum log max(1, |conjugate|)), with the one
    irrational factor evaluated through a certified enclosure.
    """
    if is_rational(x):
        x = Fraction(x)
        if x == 0:
            raise ValueError("height of 0 is undefined")
        return float(math.log(max(abs(x.numerator), x.denominator)))
    if isinstance(x, RootOfInteger):
        return math.log(x.m) / x.d
    a2, _, a0 = x.minimal_polynomial()
    big_self = sign_plus_sqrt(x.a * x.a + x.b * x.b * x.d - x.c * x.c,
                              2 * x.a * x.b, x.d) > 0
    big_conj = sign_plus_sqrt(x.a * x.a + x.b * x.b * x.d - x.c * x.c,
                              -2 * x.a * x.b, x.d) > 0
    if big_self and big_conj:
        mahler = math.log(abs(a0))
    elif not big_self and not big_conj:
        mahler = math.log(a2)
    else:
        big = x if big_self else x.conjugate()
        enc = big.enclosure(128).abs()
        mid = enc.mid
        mahler = math.log(a2) + math.log(mid.numerator) - math.log(mid.denominator)
    return mahler / 2


def h_star(x: Real) -> float:
    """Height clamped below by 1, as used inside every bound evaluator."""
    return max(height(x), 1.0)


def power_exact(x: QuadraticReal, n: int) -> QuadraticCoords:
    """Exact coordinates of x**n over the rationals, n >= 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return x.coords() ** n


@dataclass(frozen=True)
class PowerFractionalPart:
    """(r/s)**n measured against its nearest integer: r**n = nearest*s**n + offset."""

    n: int
    nearest: int
    offset: int
    distance: Fraction


def fracpart_power_rational(x: Fraction, n: int) -> PowerFractionalPart:
    """Exact distance of (r/s)**n from its nearest integer, r > s >= 2 coprime."""
    x = Fraction(x)
    r, s = x.numerator, x.denominator
    if not (r > s >= 2):
        raise DomainError("need x = r/s with r > s >= 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    rn, sn = r ** n, s ** n
    q, rem = divmod(rn, sn)
    if 2 * rem > sn:
        a = q + 1
    elif 2 * rem < sn:
        a = q
    else:
        a = q if q % 2 == 0 else q + 1  # half-integer: round to even
    m = rn - a * sn
    return PowerFractionalPart(n, a, m, Fraction(abs(m), sn))


@dataclass(frozen=True)
class LiouvilleConstant:
    """The growth constant governing how close powers of x > 1 come to integers.

    value = a_d * x**(d-1) * prod of (|conjugate|/x) over conjugates ordered
    above x by modulus; x is placed last within its modulus tie class, and
    tied factors are exactly 1, so any tie-break yields the same value.
    """

    value: float
    log_value: float
    degree: int
    leading_coefficient: int
    index: int
    tie_class_size: int
    _enclosure: Callable[[int], Enclosure] = field(compare=False, repr=False)

    def enclosure(self, bits: int) -> Enclosure:
        return self._enclosure(bits)


def liouville_constant(x: Real) -> LiouvilleConstant:
    """Constant C with ||x**n|| >= 3**-(degree-1) * C**-n for x > 1 (see checks)."""
    if is_rational(x):
        x = Fraction(x)
        if x <= 1:
            raise DomainError("need x > 1")
        s = x.denominator
        return LiouvilleConstant(
            value=float(s), log_value=math.log(s), degree=1,
            leading_coefficient=s, index=1, tie_class_size=1,
            _enclosure=lambda bits: Enclosure.point(s))
    if isinstance(x, RootOfInteger):
        # all conjugates share the modulus of x: every tied factor is 1
        m, d = x.m, x.d
        fn = lambda bits: nth_root_enclosure(m ** (d - 1), d, bits)
        enc = fn(64)
        return LiouvilleConstant(
            value=float(enc.mid), log_value=math.log(m) * (d - 1) / d, degree=d,
            leading_coefficient=1, index=d, tie_class_size=d, _enclosure=fn)
    if x.compare(1) <= 0:
        raise DomainError("need x > 1")
    a2, _, _ = x.minimal_polynomial()
    if x.a == 0:
        # conjugate is -x: a modulus tie, factor exactly 1
        fn = lambda bits: x.enclosure(bits).scale(a2)
        mid = fn(96).mid
        return LiouvilleConstant(
            value=float(mid),
            log_value=math.log(mid.numerator) - math.log(mid.denominator),
            degree=2, leading_coefficient=a2, index=2, tie_class_size=2, _enclosure=fn)
    if x.a * x.b > 0:
        # |conjugate| < x: empty product, C = a2 * x
        fn = lambda bits: x.enclosure(bits).scale(a2)
        idx = 2
    else:
        # |conjugate| > x: C = a2 * x * (|conj| / x) = a2 * |conj|
        conj = x.conjugate()
        fn = lambda bits: conj.enclosure(bits).abs().scale(a2)
        idx = 1
    enc = fn(96)
    mid = enc.mid
    return LiouvilleConstant(
        value=float(mid),
        log_value=math.log(mid.numerator) - math.log(mid.denominator),
        degree=2, leading_coefficient=a2, index=idx, tie_class_size=1,
        _enclosure=fn)


def _tight_distance(encloser: Callable[[int], Enclosure]) -> Enclosure:
    """Distance to the nearest integer with a positive, relatively tight lower bound."""

    def decide(bits):
        d = distance_enclosure(encloser(bits))
        if d is not None and d.lo > 0 and d.width * (1 << 20) <= d.lo:
            return d
        return None

    return _refine(decide)


def power_distance(x: Real, n: int) -> tuple[bool, Fraction | Enclosure | None]:
    """(is_integer_power, distance of x**n to the nearest integer).

    Exact rational distance for rational x; a certified enclosure with a
    strictly positive lower bound otherwise. The distance is None when x**n
    is an integer.
    """
    if is_rational(x):
        x = Fraction(x)
        xn = x ** n
        if xn.denominator == 1:
            return True, None
        fl = math.floor(xn)
        frac = xn - fl
        return False, min(frac, 1 - frac)
    if isinstance(x, RootOfInteger):
        if x.power_is_integer(n):
            return True, None
        return False, _tight_distance(lambda bits: x.power_enclosure(n, bits))
    coords = power_exact(x, n)
    if coords.is_rational:
        if coords.A.denominator == 1:
            return True, None
        fl = math.floor(coords.A)
        frac = coords.A - fl
        return False, min(frac, 1 - frac)
    return False, _tight_distance(coords.enclosure)
