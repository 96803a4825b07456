"""Hensel lifting and the multiplicative p-adic scan."""

import math

import pytest

from diolab.errors import DomainError, ZeroInputError
from diolab.padic import (PadicQuadratic, hensel_root, mult_exponent_scan,
                          tonelli_shanks, v_p_linear_form)


class TestTonelli:
    @pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 101, 8191])
    def test_roots_square_back(self, p):
        for a in range(1, min(p, 50)):
            if pow(a, (p - 1) // 2, p) != 1:
                continue
            r = tonelli_shanks(a, p)
            assert r * r % p == a % p


class TestHensel:
    def test_sqrt2_mod_343(self):
        # the root congruent to 3 mod 7 lifts to 108 mod 343
        a = hensel_root(0, -2, 7, 3, branch=1)
        assert a.residue == 108
        assert 108 % 7 == 3 and 108**2 % 343 == 2
        b = hensel_root(0, -2, 7, 3, branch=0)
        assert b.residue == 343 - 108     # negation for trace 0

    def test_branch_sum_is_trace(self):
        a = hensel_root(1, -1, 11, 6, branch=0)    # X^2 - X - 1 mod 11^6
        b = hensel_root(1, -1, 11, 6, branch=1)
        mod = 11**6
        assert (a.residue + b.residue) % mod == 1
        assert a.residue * b.residue % mod == (-1) % mod

    def test_base_case(self):
        a = hensel_root(0, -2, 7, 1, branch=1)
        assert a.residue == 3

    def test_lift_consistency(self):
        a5 = hensel_root(0, -2, 7, 5, branch=1)
        a9 = a5.lift(9)
        assert a9.residue % 7**5 == a5.residue
        assert a9.reduce(5) == a5

    def test_rejections(self):
        with pytest.raises(DomainError):
            hensel_root(0, -2, 2, 3)            # p = 2 unsupported
        with pytest.raises(DomainError):
            hensel_root(0, -1, 7, 3)            # disc = 4: perfect square
        with pytest.raises(DomainError):
            hensel_root(0, -7, 7, 3)            # p | disc
        with pytest.raises(DomainError):
            hensel_root(0, 1, 7, 3)             # disc = -4 non-residue mod 7

    def test_bad_residue_rejected(self):
        with pytest.raises(ValueError):
            PadicQuadratic(7, 2, 5, 0, -2, 0)


class TestLinearForm:
    def test_worked_example(self):
        a = hensel_root(0, -2, 7, 8, branch=1)   # alpha = 3 mod 7, 10 mod 49
        v, saturated = v_p_linear_form(a, 3, 1)
        assert (v, saturated) == (1, False)      # alpha - 3 = 7 mod 49
        v, _ = v_p_linear_form(a, 10, 1)
        assert v == 2                            # alpha = 108 mod 343; 108-10=98=2*49
        v, _ = v_p_linear_form(a, 1, 1)
        assert v == 0

    def test_saturation_flag(self):
        a = hensel_root(0, -2, 7, 2, branch=1)   # residue 10 mod 49
        v, saturated = v_p_linear_form(a, 10, 1)
        assert (v, saturated) == (2, True)       # 10 - 10 = 0 at precision 2

    def test_zero_rejected(self):
        a = hensel_root(0, -2, 7, 4, branch=1)
        with pytest.raises(ZeroInputError):
            v_p_linear_form(a, 0, 1)

    def test_escalation_monotone(self):
        low = hensel_root(0, -2, 7, 2, branch=1)
        high = low.lift(12)
        for (aa, bb) in [(3, 1), (10, 1), (108, 1), (1, 5), (-4, 3)]:
            v_lo, sat_lo = v_p_linear_form(low, aa, bb)
            v_hi, sat_hi = v_p_linear_form(high, aa, bb)
            assert v_hi >= v_lo
            if not sat_lo:
                assert v_hi == v_lo


class TestScan:
    def test_small_scan_properties(self):
        alpha = hensel_root(0, -2, 7, 32, branch=1)
        scan = mult_exponent_scan(alpha, 100)
        assert ((1, 1), "log|ab| = 0") in scan.excluded
        assert ((-1, 1), "log|ab| = 0") in scan.excluded
        best = scan.best
        # b*alpha - a = 2*alpha + 1 = 0 mod 7 for alpha = 3 mod 7
        assert (best.a, best.b, best.valuation) == (-1, 2, 1)
        assert best.exponent == pytest.approx(math.log(7) / math.log(2), rel=1e-12)
        for e in scan.entries:
            assert e.valuation >= 1
            assert abs(e.a * e.b) >= 2
            if not e.saturated:
                check, _ = v_p_linear_form(alpha, e.a, e.b)
                assert check == e.valuation

    def test_saturation_escalates(self):
        alpha = hensel_root(0, -2, 7, 1, branch=1)   # start at one digit
        scan = mult_exponent_scan(alpha, 30)
        assert scan.final_precision > 1
        assert all(not e.saturated for e in scan.entries)

    def test_liouville_ceiling_on_tail(self):
        alpha = hensel_root(0, -2, 7, 32, branch=1)
        scan = mult_exponent_scan(alpha, 400)
        assert scan.tail_max is not None
        assert scan.tail_max <= 2.0 + 0.3
