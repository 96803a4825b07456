"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines and timings. Stored baselines live in tests/baselines/ and were
recorded by scripts/gen_baselines.py, which cross-checks every statistic
against an independent inline oracle before writing it.
"""

import json
import math
import os
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from math import isqrt

import mpmath
import pytest

from diolab.algebraic import (QuadraticReal, RootOfInteger,
                              fracpart_power_rational, liouville_constant,
                              power_distance)
from diolab.bounds import (LogFormInput, bula_bound, invert_linear_log,
                           lower_bound, yu_bound)
from diolab.cfrac import (cf_expand, legendre_filter, simultaneous_scan,
                          vb_series)
from diolab.convergents import (convergent_spart_scan, lambda_q_decompose,
                                triple_decompose_scan)
from diolab.exactarith import PrimeSet, s_part
from diolab.sequences import (SparseDigitSpec, poly_value_scan,
                              power_sum_grid, spart_exponent_series,
                              sparse_digit_members_below, sunit_solve)

BASELINES = os.path.join(os.path.dirname(__file__), "baselines")

SQRT2 = QuadraticReal.sqrt_of(2)
SQRT3 = QuadraticReal.sqrt_of(3)
PHI = QuadraticReal.golden_ratio()
CBRT2 = RootOfInteger.make(2, 3)


def load_baseline(name):
    with open(os.path.join(BASELINES, name), encoding="utf-8") as fh:
        return json.load(fh)["statistics"]


@contextmanager
def criterion(num, limit_seconds, label):
    start = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"[criterion {num:2d}] FAIL  {label}")
        raise
    elapsed = time.monotonic() - start
    status = "PASS" if elapsed < limit_seconds else "FAIL (time)"
    print(f"[criterion {num:2d}] {status}  {label}  ({elapsed:.2f}s < {limit_seconds}s)")
    assert elapsed < limit_seconds, f"runtime {elapsed:.2f}s over {limit_seconds}s"


def test_criterion_01_spart_oracle_equivalence():
    with criterion(1, 10.0, "S-part matches trial division, n <= 1e5, 3 sets"):
        for primes_tuple in ((2,), (2, 3), (2, 3, 7)):
            primes = PrimeSet.of(*primes_tuple)
            for n in range(1, 10**5 + 1):
                dec = s_part(n, primes)
                m, sp = n, 1
                for p in primes_tuple:
                    while m % p == 0:
                        m //= p
                        sp *= p
                assert dec.s_part == sp and dec.cofactor == m
                assert dec.cofactor * dec.s_part == n


def test_criterion_02_convergents_and_legendre():
    with criterion(2, 30.0, "sqrt2 convergents, Legendre subset, determinant"):
        exp = cf_expand(SQRT2, 5)
        assert [(r.p, r.q) for r in exp] == [(1, 1), (3, 2), (7, 5), (17, 12),
                                             (41, 29)]
        for theta in (SQRT2, SQRT3, PHI, CBRT2):
            records = cf_expand(theta, 30)
            convergent_set = {Fraction(r.p, r.q) for r in records}
            assert max(r.q for r in records) > 10**4
            for frac in legendre_filter(theta, 10**4):
                assert frac in convergent_set
            for i in range(1, len(records)):
                det = records[i].p * records[i - 1].q - \
                    records[i - 1].p * records[i].q
                assert det == (-1) ** (i - 1)


def test_criterion_03_rational_power_fracparts():
    with criterion(3, 5.0, "exact (3/2)^n offsets against a 200-digit oracle"):
        mpmath.mp.dps = 220
        x = mpmath.mpf(3) / 2
        for n in range(1, 301):
            r = fracpart_power_rational(Fraction(3, 2), n)
            assert 2 * abs(r.offset) <= 2**n
            assert (3**n - r.offset) % (2**n) == 0
            assert r.distance == Fraction(abs(r.offset), 2**n)
            power = x ** n
            oracle = abs(power - mpmath.nint(power))
            diff = abs(mpmath.mpf(r.distance.numerator) /
                       r.distance.denominator - oracle)
            assert diff < mpmath.mpf(10) ** -150


def test_criterion_04_power_distance_inequality():
    with criterion(4, 60.0, "||xi^n|| >= 3^-(d-1) C^-n for 5 numbers, n <= 300"):
        for xi in (SQRT2, SQRT3, PHI, CBRT2):
            c = liouville_constant(xi)
            c_lo = c.enclosure(160).lo
            scale = Fraction(1, 3 ** (c.degree - 1))
            for n in range(1, 301):
                is_int, dist = power_distance(xi, n)
                if is_int:
                    continue
                rhs_hi = scale / c_lo ** n
                assert dist.lo > rhs_hi, f"{xi} violates at n={n}"
        # rational case: both sides exact; equality is attained at n = 1, 2
        for n in range(1, 301):
            _, dist = power_distance(Fraction(3, 2), n)
            assert dist >= Fraction(1, 2**n)


def test_criterion_05_near_power_base_series():
    with criterion(5, 60.0, "vb series of sqrt(2^20+1), window [100,200]"):
        series = vb_series(QuadraticReal.sqrt_of(2**20 + 1), 2, 200)
        window = [e.value for e in series.entries if 100 <= e.key <= 200]
        window_max = max(window)
        ceiling = math.log(48) / (10 * math.log(2)) + 0.1
        assert window_max <= ceiling
        stored = load_baseline("vb_sqrt_2e20_plus1_window100_200.json")
        assert abs(window_max - stored["window_100_200_max"]) <= 0.02


def test_criterion_06_simultaneous_scan():
    with criterion(6, 120.0, "simultaneous sqrt2/sqrt3 witness and ceiling"):
        scan = simultaneous_scan(SQRT2, SQRT3, 10**5)
        witnesses = scan.witnesses(1.4)
        assert witnesses, "no q with max(|xi-p/q|,|zeta-r/q|) < q^-1.4"
        stored = load_baseline("simultaneous_sqrt2_sqrt3_1e5.json")
        assert any(w.q == int(stored["largest_witness_q"]) for w in witnesses)
        assert len(witnesses) == int(stored["witness_count"])
        assert scan.series.tail_max <= 1.913 + 0.05
        assert abs(scan.series.tail_max - stored["tail_max"]) <= 0.02


def test_criterion_07_bound_double_entry():
    with criterion(7, 1.0, "20 random inputs: double entry and branch rules"):
        rng = random.Random(20260809)
        for _ in range(20):
            n = rng.randint(2, 6)
            coeffs = tuple(rng.randint(-200, 200) for _ in range(n - 1)) + \
                (rng.choice([1, -1]) if rng.random() < 0.5
                 else rng.randint(1, 200),)
            heights = tuple(rng.uniform(1.0, 40.0) for _ in range(n))
            bn_abs = abs(coeffs[-1])
            b = max(3, max(abs(cc) for cc in coeffs))
            inp = LogFormInput(coeffs, heights, degree=rng.randint(1, 3),
                               p=rng.choice([2, 3, 5, 7, 11, 13]),
                               delta=rng.uniform(0.01, 0.5),
                               b_n_cap=rng.uniform(bn_abs, b))
            for variant in ("eq1", "eq2", "eq3"):
                assert lower_bound(inp, variant=variant).consistent()
            if bn_abs == 1:
                for variant in ("eq4", "eq5"):
                    assert lower_bound(inp, variant=variant).consistent()
            rep = yu_bound(inp)
            assert rep.consistent()
            for lhs, rhs in (("yu_first_rhs", "yu_first_rhs_alt"),
                             ("eq7_rhs", "eq7_rhs_alt"),
                             ("eq8_rhs", "eq8_rhs_alt")):
                a, b2 = rep.quantities[lhs], rep.quantities[rhs]
                assert abs(a - b2) <= 1e-12 * max(abs(a), abs(b2))
            hprod = 1.0
            for h in heights:
                hprod *= h
            expected_branch = "(6)" if inp.B <= hprod * inp.b_n_cap else "(7)"
            assert rep.branch == expected_branch
            assert bula_bound(max(abs(coeffs[0]), 1), max(bn_abs, 1),
                              heights[0], heights[-1], inp.p,
                              inp.degree).consistent()


def test_criterion_08_inversion_solver():
    with criterion(8, 1.0, "inversion fixed point and crossing contract"):
        x = invert_linear_log(10, 1, 1)
        assert 35.7715 <= x <= 35.7716
        rng = random.Random(4242)
        checked = 0
        for _ in range(100):
            K = math.exp(rng.uniform(0.5, 12.0))
            H = math.exp(rng.uniform(0.0, 4.0))
            e = rng.choice((1, 2))
            out = invert_linear_log(K, H, e)
            if out is None:
                continue
            checked += 1
            assert out <= K * math.log(out / H) ** e * (1 + 1e-9)
            bumped = out * (1 + 1e-6)
            assert bumped > K * math.log(bumped / H) ** e
        assert checked >= 50


def test_criterion_09_sparse_digit_equality():
    with criterion(9, 30.0, "sparse-digit families equal brute force < 1e6"):
        limit = 10**6
        for base, k in ((2, 2), (2, 3), (10, 2), (10, 3)):
            got = sparse_digit_members_below(SparseDigitSpec(base, k), limit)
            if base == 2:
                brute = [n for n in range(1, limit)
                         if n % 2 and bin(n).count("1") <= k]
            else:
                brute = [n for n in range(1, limit)
                         if n % 10 and len(str(n)) - str(n).count("0") <= k]
            assert got == brute, f"mismatch for base={base}, k={k}"


def test_criterion_10_sunit_solutions():
    with criterion(10, 30.0, "S-unit equation solutions at radius 12"):
        result = sunit_solve(1, 1, PrimeSet.of(2, 3), 12)
        got = {(s.x1, s.x2) for s in result.solutions}
        F = Fraction
        required = {(F(1, 2), F(1, 2)), (F(3), F(-2)), (F(9), F(-8)),
                    (F(-1, 8), F(9, 8))}
        assert required <= got
        # the full set, frozen from the independent double-bounded oracle
        oracle = set()
        for e2 in range(-12, 13):
            for e3 in range(-12, 13):
                for sign in (1, -1):
                    x1 = sign * F(2) ** e2 * F(3) ** e3
                    x2 = 1 - x1
                    if x2 == 0:
                        continue
                    num, den = abs(x2.numerator), x2.denominator
                    for l in (2, 3):
                        while num % l == 0:
                            num //= l
                        while den % l == 0:
                            den //= l
                    if num == 1 and den == 1:
                        oracle.add((x1, x2))
                        oracle.add((x2, x1))   # symmetry closes the pair
        assert got == oracle
        assert len(got) == 21


def test_criterion_11_gap_decompositions():
    with criterion(11, 60.0, "divisibility for n <= 200 and 100 gap checks"):
        scan = triple_decompose_scan(SQRT2, PrimeSet.of(2, 3), 200)
        assert len(scan.rows) == 200
        qs = [r.q for r in cf_expand(SQRT2, 202)]
        for row in scan.rows:
            n = row.n
            assert row.Q == qs[n - 1] * qs[n] * qs[n + 1]
            assert math.gcd(row.Q, qs[n + 1] - qs[n - 1]) % qs[n] == 0
        primes = PrimeSet.of(2, 3)
        rng = random.Random(11)
        for _ in range(100):
            q = rng.randint(2, 10**6)
            dec = lambda_q_decompose(SQRT2, q, primes)
            assert dec.recombination_holds(primes)
            assert dec.gap.hi < Fraction(1, dec.p)


def test_criterion_12_trend_baselines():
    with criterion(12, 120.0, "three scan tail maxima against stored baselines"):
        scan = convergent_spart_scan(SQRT2, PrimeSet.of(2, 3, 5), 200)
        tail = scan.series.tail_max
        stored = load_baseline("convergent_spart_sqrt2_s235.json")
        assert tail < 1.0 and abs(tail - stored["tail_max"]) <= 0.02

        cells = power_sum_grid(2, 6, 40, 40)
        series = spart_exponent_series(
            "power_sum", (((c.m, c.n), c.value) for c in cells),
            PrimeSet.of(5, 7, 11))
        stored = load_baseline("power_sum_2_6_s5_7_11.json")
        assert series.tail_max < 1.0
        assert abs(series.tail_max - stored["tail_max"]) <= 0.02

        series = poly_value_scan((0, 1, 1), 1, 10**4, PrimeSet.of(2, 3))
        stored = load_baseline("poly_x_xplus1_s23.json")
        assert series.tail_max < 1.0
        assert abs(series.tail_max - stored["tail_max"]) <= 0.02
