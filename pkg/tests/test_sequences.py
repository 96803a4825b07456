"""Integer families, the S-unit solver, and frontier scans."""

import math
from fractions import Fraction

import pytest

from diolab.cfrac import ExponentSeries
from diolab.errors import DomainError
from diolab.exactarith import PrimeSet
from diolab.sequences import (RecurrenceSpec, SparseDigitSpec,
                              almost_power_frontier, binary_form_scan,
                              dominant_root, is_s_unit, poly_value_scan,
                              power_sum_grid, recurrence_values,
                              sparse_digit_members_below,
                              sparse_digit_sequence, spart_exponent_series,
                              srl_delta, sunit_solve, t_unit_sum_scan)

S23 = PrimeSet.of(2, 3)


def brute_sparse(base: int, k: int, limit: int) -> list[int]:
    out = []
    for n in range(1, limit):
        if n % base == 0:
            continue
        m, nz = n, 0
        while m:
            if m % base:
                nz += 1
            m //= base
        if nz <= k:
            out.append(n)
    return out


class TestSparseDigits:
    def test_examples(self):
        assert sparse_digit_sequence(SparseDigitSpec(2, 2), 7) == \
            [1, 3, 5, 9, 17, 33, 65]
        first = sparse_digit_sequence(SparseDigitSpec(10, 2), 20)
        assert first[:12] == [1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 12, 13]
        assert all(u % 10 != 0 for u in first)

    @pytest.mark.parametrize("base,k", [(2, 2), (2, 3), (10, 2), (10, 3)])
    def test_matches_brute_force_small(self, base, k):
        limit = 5000
        assert sparse_digit_members_below(SparseDigitSpec(base, k), limit) == \
            brute_sparse(base, k, limit)

    def test_sequence_prefix_of_members(self):
        spec = SparseDigitSpec(3, 2)
        members = sparse_digit_members_below(spec, 3**9)
        assert sparse_digit_sequence(spec, len(members)) == members


class TestRecurrence:
    def test_fibonacci(self):
        fib = RecurrenceSpec((1, 1), (0, 1))
        values = recurrence_values(fib, 10)
        assert values[10] == 55
        rep = dominant_root(fib)
        assert rep.is_dominant and rep.simple
        assert rep.root_low == pytest.approx((1 + 5**0.5) / 2, abs=1e-9)
        assert rep.root_low <= rep.root_high
        assert rep.degenerate == "undetermined"   # irrational spectrum

    def test_companion_matrix_spot_check(self):
        spec = RecurrenceSpec((2, 3, -1), (1, 0, 2))
        values = recurrence_values(spec, 12)

        def matpow_apply(n):
            # companion matrix power applied to the initial column
            m = [[2, 3, -1], [1, 0, 0], [0, 1, 0]]
            state = [2, 0, 1]   # u2, u1, u0
            for _ in range(n):
                state = [sum(m[i][j] * state[j] for j in range(3))
                         for i in range(3)]
            return state[0]

        for n in range(3, 13):
            assert values[n] == matpow_apply(n - 2)

    def test_double_root_not_simple(self):
        spec = RecurrenceSpec((2, -1), (0, 1))    # (X - 1)^2, u_n = n
        rep = dominant_root(spec)
        assert rep.simple is False
        assert rep.degenerate is False
        assert recurrence_values(spec, 6) == [0, 1, 2, 3, 4, 5, 6]

    def test_plus_minus_tie_not_dominant(self):
        spec = RecurrenceSpec((0, 4), (1, 1))     # X^2 - 4: roots 2, -2
        rep = dominant_root(spec)
        assert rep.is_dominant is False
        assert rep.degenerate is True

    def test_complex_pair_not_dominant(self):
        spec = RecurrenceSpec((0, -4), (1, 1))    # X^2 + 4: roots +-2i
        rep = dominant_root(spec)
        assert rep.is_dominant is False


class TestSrlDelta:
    def test_pure_power(self):
        assert srl_delta(RecurrenceSpec((6,), (1,)), S23) == pytest.approx(1.0)
        assert srl_delta(RecurrenceSpec((6,), (1,)), PrimeSet.of(5)) == 0.0

    def test_two_roots(self):
        # roots 2 and 3: max |.|_2 = max(1/2, 1) = 1 gives delta = 0
        spec = RecurrenceSpec((5, -6), (1, 5))
        assert srl_delta(spec, PrimeSet.of(2)) == 0.0
        # over {2, 3}: min v_2 = 0 and min v_3 = 0 across the two roots
        assert srl_delta(spec, S23) == 0.0
        # roots 2 and 4: min v_2 = 1
        spec2 = RecurrenceSpec((6, -8), (1, 5))
        assert srl_delta(spec2, PrimeSet.of(2)) == \
            pytest.approx(math.log(2) / math.log(4))

    def test_unsupported_cases(self):
        assert srl_delta(RecurrenceSpec((1, 1), (0, 1)), S23) == "unsupported"
        assert srl_delta(RecurrenceSpec((1,), (1,)), S23) == "unsupported"

    def test_delta_in_unit_interval(self):
        for spec in (RecurrenceSpec((6,), (1,)), RecurrenceSpec((5, -6), (1, 5)),
                     RecurrenceSpec((6, -8), (1, 5)), RecurrenceSpec((12,), (1,))):
            for primes in (S23, PrimeSet.of(2), PrimeSet.of(7)):
                d = srl_delta(spec, primes)
                assert isinstance(d, float) and 0.0 <= d <= 1.0


class TestPowerSum:
    def test_case_split_examples(self):
        cells = {(c.m, c.n): c for c in power_sum_grid(2, 6, 20, 3)}
        assert cells[(5, 1)].value == 39
        assert cells[(5, 1)].case == "comparable"
        assert cells[(20, 1)].case == "first"
        assert cells[(1, 3)].case == "second"      # 216 >= 4

    def test_exact_values(self):
        for c in power_sum_grid(3, 5, 6, 6):
            assert c.value == 3**c.m + 5**c.n + 1

    def test_case_labels_exclusive(self):
        for c in power_sum_grid(2, 6, 15, 15):
            first = 2**c.m >= 6 ** (2 * c.n)
            second = 6**c.n >= 2 ** (2 * c.m)
            assert not (first and second)
            assert c.case == ("first" if first else
                              "second" if second else "comparable")


class TestTUnitSums:
    def test_worked_example(self):
        rows = t_unit_sum_scan(S23, 3, PrimeSet.of(5, 7))
        by_pair = {(r.x, r.y): r for r in rows}
        r = by_pair[(9, 8)]
        assert r.total == 17 and r.decomposition.s_part == 1
        assert all(math.gcd(r.x, abs(r.y)) == 1 for r in rows if r.y != 0)

    def test_disjointness_required(self):
        with pytest.raises(DomainError):
            t_unit_sum_scan(S23, 2, PrimeSet.of(3, 5))

    def test_decompositions_reconstruct(self):
        rows = t_unit_sum_scan(PrimeSet.of(2), 6, PrimeSet.of(3))
        for r in rows:
            assert r.decomposition.verify(PrimeSet.of(3))
        # the 2^a - 1 family appears
        assert any(r.x == 2**5 and r.y == -1 and r.total == 31 for r in rows)


class TestValueScans:
    def test_poly_example(self):
        series = poly_value_scan((0, 1, 1), 1, 100, S23)   # X + X^2 = X(X+1)
        by_key = {e.key: e.value for e in series.entries}
        # f(8) = 72 = 8 * 9: fully supported on {2, 3}; exponent exactly 1
        assert by_key[8] == pytest.approx(1.0)

    def test_poly_excludes_zeros(self):
        series = poly_value_scan((0, 1, 1), 0, 10, S23)
        assert (0, "zero value") in series.excluded

    def test_form_example(self):
        series = binary_form_scan((1, 0, 1), 3, PrimeSet.of(2))   # x^2 + y^2
        by_key = {e.key: e.value for e in series.entries}
        assert by_key[(1, 1)] == pytest.approx(1.0)   # value 2 = [2]_{2}

    def test_degree_validation(self):
        with pytest.raises(DomainError):
            poly_value_scan((1, 2), 0, 10, S23)


class TestSUnit:
    def test_frozen_solution_set(self):
        result = sunit_solve(1, 1, S23, 12)
        got = {(s.x1, s.x2) for s in result.solutions}
        F = Fraction
        expected = {
            (F(-8), F(9)), (F(-3), F(4)), (F(-2), F(3)), (F(-1), F(2)),
            (F(-1, 2), F(3, 2)), (F(-1, 3), F(4, 3)), (F(-1, 8), F(9, 8)),
            (F(1, 9), F(8, 9)), (F(1, 4), F(3, 4)), (F(1, 3), F(2, 3)),
            (F(1, 2), F(1, 2)), (F(2, 3), F(1, 3)), (F(3, 4), F(1, 4)),
            (F(8, 9), F(1, 9)), (F(9, 8), F(-1, 8)), (F(4, 3), F(-1, 3)),
            (F(3, 2), F(-1, 2)), (F(2), F(-1)), (F(3), F(-2)), (F(4), F(-3)),
            (F(9), F(-8)),
        }
        assert got == expected

    def test_solutions_exact_and_symmetric(self):
        result = sunit_solve(1, 1, S23, 12)
        pairs = {(s.x1, s.x2) for s in result.solutions}
        for x1, x2 in pairs:
            assert x1 + x2 == 1
            assert is_s_unit(x1, S23) and is_s_unit(x2, S23)
            assert (x2, x1) in pairs

    def test_symmetric_member_requires_two(self):
        with_two = sunit_solve(1, 1, S23, 6)
        assert any(s.x1 == Fraction(1, 2) for s in with_two.solutions)
        without = sunit_solve(1, 1, PrimeSet.of(5), 6)
        assert all(s.x1 != Fraction(1, 2) for s in without.solutions)

    def test_single_prime_five(self):
        result = sunit_solve(1, 1, PrimeSet.of(5), 8)
        # x1 + x2 = 1 with both {5}-units: no solution has |x1| != ...
        # the only possibilities are trivial scale wraps; verify against brute force
        brute = set()
        for e1 in range(-8, 9):
            for s1 in (1, -1):
                x1 = Fraction(s1 * 5**max(e1, 0), 5**max(-e1, 0))
                x2 = 1 - x1
                if is_s_unit(x2, PrimeSet.of(5)):
                    brute.add((x1, x2))
        assert {(s.x1, s.x2) for s in result.solutions} == brute

    def test_general_coefficients(self):
        result = sunit_solve(Fraction(1, 2), 3, S23, 10)
        for s in result.solutions:
            assert Fraction(1, 2) * s.x1 + 3 * s.x2 == 1


class TestFrontier:
    def test_exact_power(self):
        rows = {r.q: r for r in almost_power_frontier(2**10, 5, 32)}
        assert rows[5].y == 4 and rows[5].scale == 1
        assert rows[5].clamped_height == 1.0 and rows[5].ratio == 5.0
        assert rows[2].y == 32 and rows[2].scale == 1

    def test_reconstruction(self):
        for r in almost_power_frontier(360, 13, 12):
            assert r.scale * Fraction(r.y) ** r.q == 360

    def test_domain(self):
        with pytest.raises(DomainError):
            almost_power_frontier(100, 5, 1)


def test_spart_series_tail_window():
    series = spart_exponent_series("t", ((n, n) for n in range(1, 11)), S23)
    assert len(series.tail_entries) == 5
    assert isinstance(series, ExponentSeries)
