import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from luroth.construction import (
    AdmissibleWord, Schedule, build_schedule, deleted_count, deletion_positions,
    enumerate_D_n, fundamental_interval, fundamental_intervals_at, gap, gap_table,
    generate_point, holder_estimate, is_admissible, k0_threshold, mass_length_report,
    measure_mu, mu_exponents, mu_levels, project_f, run_profile_check, s_zeta, word_count,
)
from luroth.errors import BudgetError, DomainError
from luroth.expansion import cylinder, cylinder_length
from luroth.moran import solve_sM
from luroth.runlength import max_run

TOL = 1e-10
ALPHA, BETA = Fraction(1, 5), Fraction(1, 2)


@pytest.fixture(scope="module")
def sched():
    return build_schedule(ALPHA, BETA, 3, 4)


@pytest.fixture(scope="module")
def exponents(sched):
    return mu_exponents(sched)


middle_params = st.tuples(st.integers(1, 19), st.integers(1, 19)).map(
    lambda ab: (Fraction(ab[0], 20) * Fraction(ab[1], 20) / (1 + Fraction(ab[1], 20)), Fraction(ab[1], 20)))


class TestSchedule:
    def test_worked_example(self, sched):
        assert sched.n[:2] == (8, 24) and sched.m[:2] == (6, 18)
        assert sched.p == (2, 2, 2)
        assert sched.n_prime == (9, 28, 83, 282)
        assert sched.u[:2] == (Fraction(3, 4), Fraction(9, 5))

    def test_u_tends_to_zeta(self):
        s = build_schedule(ALPHA, BETA, 3, 9)
        dist = [abs(u - 2) for u in s.u]
        assert all(a > b for a, b in zip(dist, dist[1:]))
        assert dist[7] < Fraction(1, 100)

    @settings(max_examples=40, deadline=None)
    @given(middle_params, st.integers(3, 6))
    def test_invariants(self, ab, M):
        alpha, beta = ab
        r = beta * (1 - alpha) / (alpha * (1 - beta))
        assume(r ** 6 < 10**6)
        s = build_schedule(alpha, beta, M, 5)
        for k in range(4):
            assert 2 <= s.m[k] < s.n[k + 1] - s.n[k]
            assert s.m[k] <= s.m[k + 1]

    def test_factorial_schedule(self):
        s = build_schedule(0, BETA, 3, 3)
        assert s.n == (8, 24, 524)
        assert s.m == (6, 18, 514)
        with pytest.raises(BudgetError):
            build_schedule(0, BETA, 3, 4)

    @pytest.mark.parametrize("alpha,beta,M", [(Fraction(1, 3), BETA, 3), (0, 1, 3), (0, 0, 3), (ALPHA, BETA, 2)])
    def test_rejects(self, alpha, beta, M):
        with pytest.raises(DomainError):
            build_schedule(alpha, beta, M, 3)

    def test_json_round_trip(self, sched):
        assert Schedule.from_dict(sched.to_dict()) == sched
        bad = sched.to_dict()
        bad["n_prime"][1] -= 1
        with pytest.raises(DomainError):
            Schedule.from_dict(bad)


class TestDeletion:
    def test_first_block(self, sched):
        J = deletion_positions(sched, sched.g_horizon)
        assert 9 in J
        assert not set(range(10, 16)) & set(J)
        assert J[:7] == [9, 16, 22, 28, 47, 65, 83]

    def test_density_decreases(self):
        s = build_schedule(ALPHA, BETA, 3, 7)
        dens = [deleted_count(s, N) / N for N in s.n_prime]
        # first block is too short to count: t(9)/9 = 1/9 < t(28)/28 = 1/7
        assert dens[0] < dens[1]
        assert all(a > b for a, b in zip(dens[1:], dens[2:]))

    def test_horizon(self, sched):
        with pytest.raises(DomainError):
            deletion_positions(sched, sched.g_horizon + 1)


class TestPoints:
    @pytest.mark.parametrize("fill,seed", [(None, 0), (3, None)])
    def test_structure(self, sched, fill, seed):
        x = generate_point(sched, sched.g_horizon, fill=fill, seed=seed)
        for k in range(sched.k_max):
            a, mk = sched.n_prime[k], sched.m[k]
            assert x[a - 1:a + mk] == (6,) + (2,) * mk
        assert all(2 <= d <= 3 or d == 6 for d in x)

    def test_block_max_run(self, sched):
        x = generate_point(sched, sched.g_horizon, seed=11)
        for k in range(1, sched.k_max):
            start = sched.n_prime[k - 1]
            assert max_run(x[start:sched.n_prime[k]]) == sched.m[k - 1]

    def test_fill_needed(self, sched):
        with pytest.raises(DomainError):
            generate_point(sched, 10)
        with pytest.raises(DomainError):
            generate_point(sched, 10, fill=4)

    def test_seeded_is_deterministic(self, sched):
        assert generate_point(sched, 100, seed=5) == generate_point(sched, 100, seed=5)

    def test_profile_seed_zero(self, sched):
        x = generate_point(sched, sched.g_horizon, seed=0)
        rep = run_profile_check(x, sched)
        assert rep.ok and rep.blocks_checked == sched.k_max - 1

    def test_profile_reports_first_mismatch(self, sched):
        # eight equal free digits at the start beat m_1 = 6
        rep = run_profile_check(generate_point(sched, sched.g_horizon, fill=2), sched)
        assert not rep.ok and rep.first_mismatch == (15, 6, 8)

    def test_project_lands_in_D(self, sched):
        N = sched.g_horizon
        x = generate_point(sched, N, seed=3)
        y = project_f(x, sched)
        assert len(y) == N - deleted_count(sched, N)
        assert is_admissible(y, sched)
        assert y[8:14] == (2,) * 6

    def test_project_rejects(self, sched):
        x = list(generate_point(sched, 20, seed=3))
        x[8] = 2
        with pytest.raises(DomainError):
            project_f(x, sched)


class TestWords:
    def test_counts(self, sched):
        assert len(enumerate_D_n(sched, 8)) == 256
        assert len(enumerate_D_n(sched, 14)) == 256
        assert word_count(sched, 20) == 2**14
        words = enumerate_D_n(sched, 15)
        assert words == sorted(words) and all(is_admissible(w, sched) for w in words)

    def test_budget(self, sched):
        with pytest.raises(BudgetError):
            enumerate_D_n(sched, 40, budget=1000)

    def test_admissible(self, sched):
        assert not is_admissible((2,) * 8 + (3,), sched)
        assert not is_admissible((4,), sched)
        with pytest.raises(DomainError):
            AdmissibleWord((4,), sched)

    @pytest.mark.parametrize("depth", [3, 8, 9, 13, 14, 15, 20])
    def test_interval_lengths(self, sched, depth):
        forced_next = 8 <= depth < 14 or 24 <= depth < 42
        share = Fraction(1, 2) if forced_next else Fraction(2, 3)
        ivs = fundamental_intervals_at(sched, depth, budget=2**20)
        for w, iv in list(zip(enumerate_D_n(sched, depth, budget=2**20), ivs))[:200]:
            assert iv.length == share * cylinder_length(w)
            assert cylinder(w).contains_interval(iv)
            fi = fundamental_interval(AdmissibleWord(w, sched))
            assert fi.interval == iv

    def test_forced_run_of_second_block(self, sched):
        for seed in range(3):
            w = project_f(generate_point(sched, 40, seed=seed), sched)[:30]
            fi = fundamental_interval(AdmissibleWord(w, sched))
            assert fi.length == cylinder_length(w) / 2

    def test_nesting(self, sched):
        w = (3, 2, 3, 3, 2, 2, 3, 2, 2, 2)
        outer = fundamental_interval(AdmissibleWord(w[:9], sched)).interval
        inner = fundamental_interval(AdmissibleWord(w, sched)).interval
        assert outer.contains_interval(inner)


class TestGaps:
    def test_depth_one(self, sched):
        (a, b) = fundamental_intervals_at(sched, 1)
        g = gap_table(sched, 1)
        assert g[0] == g[1] == b.left - a.right if a.left < b.left else a.left - b.right
        assert g[0] >= min(a.length, b.length) / 2

    @pytest.mark.parametrize("depth", range(1, 16))
    def test_bound(self, sched, depth):
        ivs = fundamental_intervals_at(sched, depth)
        for iv, g in zip(ivs, gap_table(sched, depth)):
            assert g >= iv.length / (sched.M - 1)

    def test_single_word(self, sched):
        assert gap(AdmissibleWord((2,) * 8, sched)) is not None


class TestMeasure:
    def test_total_mass(self, sched, exponents):
        levels = mu_levels(sched, 20, exponents)
        for level in levels:
            assert abs(level.sum() - 1) < 1e-9

    def test_additivity(self, sched, exponents):
        levels = mu_levels(sched, 20, exponents)
        for parent, child in zip(levels, levels[1:]):
            sums = child.reshape(parent.size, -1).sum(axis=1)
            assert np.max(np.abs(sums - parent)) < TOL

    def test_closed_form_matches_levels(self, sched, exponents):
        levels = mu_levels(sched, 16, exponents)
        for depth in (1, 7, 14, 16):
            words = enumerate_D_n(sched, depth)
            for i in (0, len(words) // 3, len(words) - 1):
                cv = measure_mu(AdmissibleWord(words[i], sched), exponents)
                assert abs(float(cv.value) - levels[depth][i]) < 1e-12

    def test_block_boundary_product(self, sched, exponents):
        # the all-2 word at n_1 + m_1 = 14 has mass (2^-s)^14
        cv = measure_mu(AdmissibleWord((2,) * 14, sched), exponents)
        s1 = solve_sM(Fraction(3, 4), 3, tol=1e-20, prec=128).value
        assert abs(cv.value - 2 ** (-14 * s1)) <= cv.error_bound + 1e-18

    def test_mass_length(self, sched, exponents):
        sz = s_zeta(sched)
        rep = mass_length_report(sched, 20, exponents, sz)
        assert rep.min_exponent > 0
        assert k0_threshold(build_schedule(ALPHA, BETA, 3, 9), 0.1, mu_exponents(build_schedule(ALPHA, BETA, 3, 9)), sz) is not None


class TestHolder:
    def test_fit_fields(self, sched):
        fit = holder_estimate(sched, 30, 200, seed=1)
        assert fit.pairs == 200
        assert fit.order_violations == 0
        assert fit.max_inflation_ratio <= 1
        assert 0 < fit.slope <= 1.05

    def test_deterministic(self, sched):
        assert holder_estimate(sched, 20, 50, seed=4) == holder_estimate(sched, 20, 50, seed=4)

    def test_rejects(self, sched):
        with pytest.raises(DomainError):
            holder_estimate(sched, 20, 1, seed=0)
        with pytest.raises(DomainError):
            holder_estimate(sched, 20, 10, seed=0, sampling="grid")
