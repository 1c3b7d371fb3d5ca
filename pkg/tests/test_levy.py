"""The modified Levy distance: probe condition, bisection, closed forms,
uniform distance, and weak-convergence checks."""

import random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from pmspace import (
    DEFAULT,
    H0,
    HINF,
    LevyConfig,
    condition_a,
    evaluate,
    heaviside,
    is_weak_limit,
    levy_distance,
    levy_to_h0,
    make_step_cdf,
    pointwise_sup,
    random_step_cdf,
    uniform_distance,
)
from pmspace.errors import DomainMismatch, PreconditionViolated, ProbeOutOfRange

from oracles import grid_levy_distance
from strategies import cdfs


class TestCondition:
    @given(cdfs(), cdfs())
    def test_always_holds_at_one(self, F, G):
        assert condition_a(F, G, 1.0) and condition_a(G, F, 1.0)

    def test_heaviside_asymmetry(self):
        assert condition_a(heaviside(0.2), heaviside(0.7), 0.4)
        assert not condition_a(heaviside(0.7), heaviside(0.2), 0.4)

    @pytest.mark.parametrize("h", [0.0, -0.1, 1.5])
    def test_probe_out_of_range(self, h):
        with pytest.raises(ProbeOutOfRange):
            condition_a(H0, H0, h)

    @given(cdfs(), cdfs(), st.floats(0.01, 1.0), st.floats(0.0, 0.5))
    def test_monotone_in_radius(self, F, G, h, bump):
        # a condition that holds at h keeps holding at any larger radius
        h2 = min(1.0, h + bump)
        if condition_a(F, G, h):
            assert condition_a(F, G, h2)


class TestLevyDistance:
    def test_identity(self):
        F = make_step_cdf([(0.5, 0.25), (2, 1)])
        assert levy_distance(F, F) == 0.0

    def test_heaviside_closed_form(self):
        assert levy_distance(heaviside(0.2), heaviside(0.7)) == pytest.approx(0.5, abs=2e-10)

    def test_extremes_at_unit_distance(self):
        assert levy_distance(HINF, H0) == 1.0

    @given(cdfs(), cdfs())
    def test_symmetric_and_bounded(self, F, G):
        d = levy_distance(F, G)
        assert d == levy_distance(G, F)
        assert 0.0 <= d <= 1.0

    @given(cdfs(), cdfs())
    def test_returned_radius_is_valid(self, F, G):
        d = levy_distance(F, G)
        if d > 0.0:
            assert condition_a(F, G, d) and condition_a(G, F, d)

    @settings(max_examples=30, deadline=None)
    @given(cdfs(), cdfs())
    def test_matches_grid_oracle(self, F, G):
        assert levy_distance(F, G) == pytest.approx(grid_levy_distance(F, G), abs=2e-4)

    def test_config_validation(self):
        with pytest.raises(PreconditionViolated):
            LevyConfig(bisection_tol=0.5)
        with pytest.raises(PreconditionViolated):
            LevyConfig(bisection_tol=1e-10, max_iter=10)


class TestDistanceToUnitStep:
    def test_at_the_unit_step(self):
        assert levy_to_h0(H0) == 0.0

    @pytest.mark.parametrize("a,expected", [(0.3, 0.3), (1.0, 1.0), (2.5, 1.0)])
    def test_heaviside(self, a, expected):
        assert levy_to_h0(heaviside(a)) == expected

    def test_two_step(self):
        assert levy_to_h0(make_step_cdf([(0, 0.5), (2, 1)])) == 0.5

    def test_zero_function(self):
        assert levy_to_h0(HINF) == 1.0

    @given(cdfs())
    def test_agrees_with_bisection(self, F):
        assert levy_to_h0(F) == pytest.approx(levy_distance(F, H0), abs=2e-10)

    @given(cdfs(), cdfs())
    def test_antitone(self, F, G):
        # raising a function can only move it closer to the unit step
        G2 = pointwise_sup([F, G])
        assert levy_to_h0(G2) <= levy_to_h0(F) + 2 * DEFAULT.bisection_tol

    @given(cdfs(), st.floats(0.01, 0.99))
    def test_neighborhood_equivalence(self, F, t):
        # F(t) > 1 - t  iff  the distance to the unit step is below t
        d = levy_to_h0(F)
        if abs(d - t) <= 1e-6:
            return  # boundary margin
        assert (evaluate(F, t) > 1.0 - t) == (d < t)


class TestUniformDistance:
    POINTS = ("a", "b", "c")

    def test_reflexive(self):
        f = {p: heaviside(0.5) for p in self.POINTS}
        assert uniform_distance(f, f, self.POINTS) == 0.0

    def test_constant_maps(self):
        f = {p: H0 for p in self.POINTS}
        g = {p: heaviside(0.3) for p in self.POINTS}
        assert uniform_distance(f, g, self.POINTS) == pytest.approx(0.3, abs=2e-10)

    def test_max_semantics(self):
        f = {"a": H0, "b": H0, "c": H0}
        g = {"a": H0, "b": H0, "c": heaviside(0.5)}
        assert uniform_distance(f, g, self.POINTS) == pytest.approx(0.5, abs=2e-10)

    def test_missing_point(self):
        with pytest.raises(DomainMismatch):
            uniform_distance({"a": H0}, {"a": H0}, self.POINTS)


class TestWeakLimit:
    def test_shrinking_heaviside(self):
        seq = [heaviside(1 / n) for n in range(1, 51)]
        assert is_weak_limit(seq, H0, tol=0.05, tail=10)

    def test_constant_sequence(self):
        F = make_step_cdf([(1, 0.5), (2, 1)])
        assert is_weak_limit([F] * 5, F, tol=1e-6, tail=5)

    def test_separated_sequence(self):
        assert not is_weak_limit([heaviside(1)] * 20, H0, tol=0.5, tail=10)

    def test_tail_validation(self):
        with pytest.raises(PreconditionViolated):
            is_weak_limit([H0], H0, tol=0.1, tail=2)


class TestMetricAxioms:
    def test_seeded_suite(self):
        rng = random.Random(99)
        tol = 3 * DEFAULT.bisection_tol
        for _ in range(200):
            F, G, K = (random_step_cdf(rng, grid=rng.random() < 0.5) for _ in range(3))
            dfg = levy_distance(F, G)
            assert dfg == levy_distance(G, F)
            assert 0.0 <= dfg <= 1.0
            assert levy_distance(F, K) <= dfg + levy_distance(G, K) + tol
            assert levy_distance(F, F) == 0.0
