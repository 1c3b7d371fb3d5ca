"""Certification, envelope extension, embeddings, rescaling, and the
equicontinuity machinery."""

import random

import pytest

from pmspace import (
    DEFAULT,
    H0,
    HINF,
    STAR_MIN,
    LipschitzMap,
    approx_equal,
    classical_lipschitz_embed,
    delta_embed,
    equicontinuity_bound,
    estimate_modulus,
    from_classical_metric,
    gen_space,
    gen_spaces,
    heaviside,
    is_one_lipschitz,
    leq,
    levy_distance,
    levy_to_h0,
    make_step_cdf,
    random_lipschitz_map,
    random_step_cdf,
    rescale_distance,
    sup_convolution,
    uniform_distance,
    upper_envelope_extension,
)
from pmspace.errors import (
    BudgetExhausted,
    DomainMismatch,
    EmptySubset,
    NegativeScale,
    PreconditionViolated,
)
from pmspace.lipschitz import ModulusEstimate
from pmspace.tnorms import MINIMUM, TriangleFunction


def heaviside_space(d, star=STAR_MIN):
    labels = tuple(f"p{i}" for i in range(len(d)))
    return from_classical_metric(labels, d, star)


PATH3 = [[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]]


class TestCertification:
    def test_distance_embeddings_certified(self):
        for sp in gen_spaces(31, 12):
            for x in sp.points:
                assert is_one_lipschitz(sp, delta_embed(sp, x))

    def test_constant_maps_certified(self):
        sp = gen_space(1, 5, "repair")
        rng = random.Random(1)
        for _ in range(5):
            C = random_step_cdf(rng)
            assert is_one_lipschitz(sp, {p: C for p in sp.points})

    def test_witness_on_failure(self):
        sp = heaviside_space([[0.0, 1.0], [1.0, 0.0]])
        f = {"p0": heaviside(5), "p1": H0}
        check = is_one_lipschitz(sp, f)
        assert not check
        x, y, t = check.witness
        assert (x, y) == ("p0", "p1")

    def test_classical_lift_iff_classically_lipschitz(self):
        sp = heaviside_space(PATH3)
        good = {"p0": 0.0, "p1": 1.0, "p2": 2.0}  # slope exactly 1
        assert is_one_lipschitz(sp, classical_lipschitz_embed(sp, good))
        bad = {"p0": 0.0, "p1": 2.0, "p2": 2.0}  # jumps by 2 over distance 1
        assert not is_one_lipschitz(sp, classical_lipschitz_embed(sp, bad))

    def test_classical_iff_randomized(self):
        rng = random.Random(44)
        for seed in range(30):
            sp = gen_space(seed, rng.randint(2, 6), "metric")
            L = {p: rng.randint(0, 24) / 8.0 for p in sp.points}
            classical = all(
                abs(L[x] - L[y]) <= sp.dist(x, y).breaks[0][0]
                for x in sp.points
                for y in sp.points
                if x != y
            )
            assert bool(is_one_lipschitz(sp, classical_lipschitz_embed(sp, L))) == classical

    def test_missing_point_rejected(self):
        sp = heaviside_space(PATH3)
        with pytest.raises(DomainMismatch):
            is_one_lipschitz(sp, {"p0": H0})


class TestEnvelope:
    def test_singleton_anchor_formula(self):
        sp = heaviside_space(PATH3)
        F = make_step_cdf([(0.5, 0.5), (2, 1)])
        f = upper_envelope_extension(sp, ["p1"], {"p1": F})
        for x in sp.points:
            assert approx_equal(f[x], sup_convolution(MINIMUM, F, sp.dist(x, "p1")))

    def test_restriction_equality_for_lipschitz_data(self):
        sp = heaviside_space(PATH3)
        g = delta_embed(sp, "p2")
        f = upper_envelope_extension(sp, sp.points, g.values)
        for x in sp.points:
            assert approx_equal(f[x], g[x])

    def test_dominates_on_anchors(self):
        rng = random.Random(9)
        for seed in range(20):
            sp = gen_space(seed, rng.randint(2, 6), "metric")
            A = rng.sample(list(sp.points), rng.randint(1, len(sp)))
            data = {a: random_step_cdf(rng) for a in A}
            f = upper_envelope_extension(sp, A, data)
            for a in A:
                assert leq(data[a], f[a])

    def test_restriction_differs_for_non_lipschitz_data(self):
        sp = heaviside_space([[0.0, 1.0], [1.0, 0.0]])
        data = {"p0": heaviside(5), "p1": H0}
        assert not is_one_lipschitz(sp, data | {})
        f = upper_envelope_extension(sp, ["p0", "p1"], data)
        assert not approx_equal(f["p0"], data["p0"])
        assert is_one_lipschitz(sp, f)

    def test_always_certified(self):
        rng = random.Random(10)
        for seed in range(30):
            sp = gen_space(seed, rng.randint(1, 6), "repair" if seed % 2 else "metric")
            A = rng.sample(list(sp.points), rng.randint(1, len(sp)))
            f = upper_envelope_extension(sp, A, {a: random_step_cdf(rng) for a in A})
            assert is_one_lipschitz(sp, f)

    def test_empty_anchor_set(self):
        sp = heaviside_space(PATH3)
        with pytest.raises(EmptySubset):
            upper_envelope_extension(sp, [], {})


class TestDeltaEmbed:
    def test_vanishes_at_center(self):
        sp = heaviside_space(PATH3)
        assert delta_embed(sp, "p1")["p1"] == H0

    def test_is_distance_row(self):
        sp = gen_space(2, 5, "repair")
        f = delta_embed(sp, sp.points[2])
        for y in sp.points:
            assert f[y] == sp.dist(y, sp.points[2])


class TestRescale:
    def test_identity(self):
        F = make_step_cdf([(1, 0.5), (2, 1)])
        assert rescale_distance(F, 1.0) == F

    def test_zero_collapses(self):
        assert rescale_distance(heaviside(3), 0.0) == H0

    def test_doubling(self):
        assert rescale_distance(heaviside(1), 2.0) == heaviside(2)

    def test_negative_rejected(self):
        with pytest.raises(NegativeScale):
            rescale_distance(H0, -1.0)

    def test_rescaled_space_certifies_steeper_maps(self):
        # doubling all distances turns a slope-2 assignment into a certified map
        sp = heaviside_space(PATH3)
        doubled = heaviside_space([[2 * v for v in row] for row in PATH3])
        assert doubled.dist("p0", "p1") == rescale_distance(sp.dist("p0", "p1"), 2.0)
        steep = {"p0": 0.0, "p1": 2.0, "p2": 4.0}
        assert not is_one_lipschitz(sp, classical_lipschitz_embed(sp, steep))
        assert is_one_lipschitz(doubled, classical_lipschitz_embed(doubled, steep))


class TestEquicontinuity:
    def test_neutral_perturbation(self):
        F = make_step_cdf([(1, 0.5), (2, 1)])
        lhs, rhs = equicontinuity_bound(H0, F, F, STAR_MIN)
        assert lhs == 0.0 and rhs == 0.0

    def test_equal_values(self):
        F = make_step_cdf([(0.5, 0.25), (1.5, 1)])
        D = heaviside(0.25)
        if leq(sup_convolution(MINIMUM, D, F), F):
            lhs, rhs = equicontinuity_bound(D, F, F, STAR_MIN)
            assert lhs == 0.0 <= rhs

    def test_violated_relations_rejected(self):
        with pytest.raises(PreconditionViolated):
            equicontinuity_bound(heaviside(1), heaviside(5), H0, STAR_MIN)

    def test_bound_on_constructed_pairs(self):
        rng = random.Random(12)
        slack = 3 * DEFAULT.bisection_tol
        for _ in range(100):
            D = random_step_cdf(rng)
            G = random_step_cdf(rng)
            Fx = sup_convolution(MINIMUM, D, G)  # then star(D, G) <= G's partner holds
            lhs, rhs = equicontinuity_bound(D, Fx, G, STAR_MIN)
            assert lhs <= rhs + slack


class TestEstimateModulus:
    @staticmethod
    def sampler(seed):
        rng = random.Random(seed)
        return lambda: random_step_cdf(rng)

    def test_trivial_scale(self):
        est = estimate_modulus(STAR_MIN, 1.0, self.sampler(1), budget=30)
        assert est == ModulusEstimate(eta=1.0, samples=60)

    def test_heaviside_sampler_passes_at_full_scale(self):
        eps = 0.25
        rng = random.Random(2)
        sampler = lambda: heaviside(eps * rng.uniform(0.05, 0.9))
        est = estimate_modulus(STAR_MIN, eps, sampler, budget=40)
        assert est.eta == eps

    def test_degenerate_star_ignores_perturbation(self):
        star = TriangleFunction("forgetful", lambda D, F: F)
        est = estimate_modulus(star, 0.5, self.sampler(3), budget=20)
        assert est.eta == 0.5

    def test_budget_exhaustion_on_adversarial_star(self):
        star = TriangleFunction("separator", lambda D, F: HINF)
        sampler = lambda: H0  # distance star(D, H0) = zero function stays 1 away
        with pytest.raises(BudgetExhausted):
            estimate_modulus(star, 0.5, sampler, budget=5, max_halvings=5)


class TestContinuityAtDeskScale:
    def test_lipschitz_maps_are_continuous_along_converging_sequences(self):
        # in a finite space a sequence converging to x is eventually x itself,
        # and the equicontinuity bound controls the other steps
        sp = gen_space(21, 5, "metric")
        rng = random.Random(21)
        f = random_lipschitz_map(sp, rng)
        x = sp.points[0]
        seq = [rng.choice(sp.points) for _ in range(5)] + [x] * 10
        for y in seq[-10:]:
            assert levy_distance(f[y], f[x]) == 0.0
        for y in sp.points:
            lhs, rhs = equicontinuity_bound(sp.dist(x, y), f[x], f[y], sp.star)
            assert lhs <= rhs + 3 * DEFAULT.bisection_tol


class TestPointwiseLimitClosure:
    def test_perturbed_sequences_have_certified_limits(self):
        # dyadic perturbation scales keep every breakpoint sum exact
        scales = [2.0**-k for k in range(1, 11)]
        rng = random.Random(33)
        for seed in range(20):
            sp = gen_space(seed, rng.randint(2, 5), "metric")
            g = random_lipschitz_map(sp, rng)
            fs = [
                LipschitzMap(
                    sp,
                    {x: sup_convolution(MINIMUM, heaviside(s), g[x]) for x in sp.points},
                )
                for s in scales
            ]
            for fn in fs:
                assert is_one_lipschitz(sp, fn)
            # pointwise limit of the sequence is g itself
            for x in sp.points:
                assert levy_distance(fs[-1][x], g[x]) <= scales[-1] + 1e-9
            assert is_one_lipschitz(sp, g)


class TestDeltaLowerBound:
    def test_uniform_distance_dominates_point_distance(self):
        slack = 2 * DEFAULT.bisection_tol
        for sp in gen_spaces(41, 10):
            embeds = {p: delta_embed(sp, p) for p in sp.points}
            for p in sp.points:
                for q in sp.points:
                    lower = levy_to_h0(sp.dist(p, q))
                    assert uniform_distance(embeds[p], embeds[q], sp.points) >= lower - slack
