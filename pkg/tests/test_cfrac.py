"""Continued fractions: expansions, filters, and exponent series."""

import math
from fractions import Fraction

import mpmath
import pytest

from diolab.algebraic import QuadraticReal, RootOfInteger
from diolab.cfrac import (cf_expand, cf_period, irrationality_exponent_series,
                          legendre_filter, nu_series, simultaneous_scan,
                          vb_series, verify_periodic_reconstruction)

SQRT2 = QuadraticReal.sqrt_of(2)
SQRT3 = QuadraticReal.sqrt_of(3)
PHI = QuadraticReal.golden_ratio()
CBRT2 = RootOfInteger.make(2, 3)


class TestExpansion:
    def test_sqrt2_convergents(self):
        exp = cf_expand(SQRT2, 5)
        assert [(r.p, r.q) for r in exp] == [(1, 1), (3, 2), (7, 5), (17, 12),
                                             (41, 29)]
        assert [r.a for r in exp] == [1, 2, 2, 2, 2]

    def test_rational_terminates(self):
        exp = cf_expand(Fraction(10, 7), 10)
        assert [r.a for r in exp] == [1, 2, 3]
        assert (exp[-1].p, exp[-1].q) == (10, 7)
        assert exp[-1].error.exact and exp[-1].error.lo == 0

    def test_periods(self):
        assert cf_period(SQRT3) == (1, (1, 2))
        assert cf_period(SQRT2) == (1, (2,))
        assert cf_period(PHI) == (0, (1,))

    def test_periodic_reconstruction(self):
        for x in (SQRT2, SQRT3, PHI, QuadraticReal.make(3, 2, 7, 6),
                  QuadraticReal.make(-5, 3, 4, 11)):
            assert verify_periodic_reconstruction(x)

    def test_root_backend_matches_reference(self):
        mpmath.mp.dps = 120
        ref = mpmath.mp.mpf(2) ** (mpmath.mp.mpf(1) / 3)
        terms = []
        v = ref
        for _ in range(25):
            a = int(mpmath.floor(v))
            terms.append(a)
            v = 1 / (v - a)
        exp = cf_expand(CBRT2, 25)
        assert [r.a for r in exp] == terms

    def test_recurrence_and_determinant(self):
        exp = cf_expand(SQRT3, 30)
        for i in range(2, 30):
            assert exp[i].p == exp[i].a * exp[i - 1].p + exp[i - 2].p
            assert exp[i].q == exp[i].a * exp[i - 1].q + exp[i - 2].q
        for i in range(1, 30):
            det = exp[i].p * exp[i - 1].q - exp[i - 1].p * exp[i].q
            assert det == (-1) ** (i - 1)

    def test_error_brackets(self):
        exp = cf_expand(SQRT2, 20)
        for rec in exp:
            assert rec.error.lo > 0
            assert rec.error.hi < Fraction(1, rec.q * rec.q) or rec.q == 1
            # the true error lies inside: check against exact |q*sqrt2 - p|
            # via (p/q - sqrt2)(p/q + sqrt2) = (p^2 - 2q^2)/q^2
            true_num = abs(rec.p * rec.p - 2 * rec.q * rec.q)
            # |sqrt2 - p/q| = true_num / (q^2 * (sqrt2 + p/q))
            lo_den = rec.q * rec.q * (Fraction(15, 10) + Fraction(rec.p, rec.q))
            hi_den = rec.q * rec.q * (Fraction(14, 10) + Fraction(rec.p, rec.q))
            assert rec.error.lo <= Fraction(true_num) / hi_den
            assert Fraction(true_num) / lo_den <= rec.error.hi


class TestLegendre:
    def test_sqrt2_small(self):
        got = legendre_filter(SQRT2, 30)
        assert got == sorted([Fraction(1), Fraction(7, 5), Fraction(41, 29),
                              Fraction(17, 12), Fraction(3, 2)])

    def test_phi_fibonacci(self):
        got = legendre_filter(PHI, 13)
        assert set(got) <= {Fraction(2, 1), Fraction(3, 2), Fraction(5, 3),
                            Fraction(8, 5), Fraction(13, 8), Fraction(21, 13),
                            Fraction(1, 1)}

    def test_rational_contains_itself(self):
        got = legendre_filter(Fraction(10, 7), 20)
        assert Fraction(10, 7) in got

    @pytest.mark.parametrize("theta", [SQRT2, SQRT3, PHI, CBRT2])
    def test_subset_of_convergents(self, theta):
        filtered = legendre_filter(theta, 500)
        convergents = {Fraction(r.p, r.q) for r in cf_expand(theta, 30)}
        assert set(filtered) <= convergents


class TestSeries:
    def test_mu_tends_to_two(self):
        series = irrationality_exponent_series(SQRT2, 25)
        assert any(reason == "log q = 0" for _, reason in series.excluded)
        tail = series.tail_entries
        assert all(abs(e.value - 2.0) < 0.1 for e in tail)
        for e in series.entries:
            assert e.lo <= e.value <= e.hi

    def test_mu_engineered_spikes(self):
        # telescoped rational with huge partial quotients: large mu spikes
        theta = Fraction(1, 10) + Fraction(1, 10**3) + Fraction(1, 10**7) + \
            Fraction(1, 10**15)
        series = irrationality_exponent_series(theta, 8)
        assert max(e.value for e in series.entries) > 1.8

    def test_vb_first_value(self):
        series = vb_series(SQRT2, 10, 3)
        # ||10*sqrt2|| = |14.1421... - 14| = 0.1421...
        v1 = series.entries[0]
        expected = -math.log(10 * 2**0.5 - 14) / math.log(10)
        assert v1.value == pytest.approx(expected, abs=1e-6)

    def test_vb_near_power_reference(self):
        xi = QuadraticReal.sqrt_of(2**20 + 1)
        series = vb_series(xi, 2, 12)
        assert series.references["near_power_ceiling"] == \
            pytest.approx(math.log(48) / (10 * math.log(2)), rel=1e-12)

    def test_vb_mirror_symmetry(self):
        # ||x|| = ||-x||: scanning -theta gives identical values
        s1 = vb_series(SQRT2, 2, 10)
        s2 = vb_series(QuadraticReal.make(0, -1, 1, 2), 2, 10)
        for e1, e2 in zip(s1.entries, s2.entries):
            assert e1.value == pytest.approx(e2.value, abs=1e-9)

    def test_nu_rational_exact(self):
        series = nu_series(Fraction(3, 2), 40)
        logc = series.references["log_liouville_constant"]
        assert logc == pytest.approx(math.log(2), rel=1e-12)
        assert series.references["published_ceiling"] == 0.5443
        for e in series.entries:
            assert e.value <= math.log(2) + 1e-12   # nu_n <= log C exactly here

    def test_nu_skips_integer_powers(self):
        series = nu_series(SQRT2, 12)
        skipped = {k for k, _ in series.excluded}
        assert skipped == {2, 4, 6, 8, 10, 12}
        series = nu_series(CBRT2, 9)
        assert {k for k, _ in series.excluded} == {3, 6, 9}

    def test_nu_sqrt2_reference(self):
        series = nu_series(SQRT2, 12)
        assert series.references["published_ceiling"] == 0.595


class TestSimultaneous:
    def test_small_scan(self):
        scan = simultaneous_scan(SQRT2, SQRT3, 200)
        # q = 1 excluded by construction
        assert scan.entries[0].q == 2
        for e in scan.entries:
            # verify the reported nearest integers give the reported distance
            d2 = abs(e.q * 2**0.5 - e.p)
            d3 = abs(e.q * 3**0.5 - e.r)
            assert max(d2, d3) == pytest.approx(e.max_int_distance, abs=1e-9)
        assert scan.best.exponent == max(e.exponent for e in scan.entries)

    def test_witness_definition(self):
        scan = simultaneous_scan(SQRT2, SQRT3, 200)
        for w in scan.witnesses(1.4):
            assert w.max_int_distance / w.q < w.q ** -1.4
        # q=41 is a strong small witness: 41*sqrt2 = 57.98..., 41*sqrt3 = 71.01...
        assert any(w.q == 41 for w in scan.witnesses(1.4))
