"""Probabilistic 1-Lipschitz maps on finite spaces.

A map f into the distribution lattice is 1-Lipschitz when
``star(D(x,y), f(y)) <= f(x)`` for every ordered pair; on a finite space the
certificate is an exhaustive pair check.  The sup-envelope of any partial
assignment is always 1-Lipschitz and restricts exactly to assignments that
were already 1-Lipschitz on their subset, which is the constructive
extension device used by the compactness machinery.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .cdf import (
    H0,
    TOL,
    StepCdf,
    heaviside,
    leq,
    leq_witness,
    make_step_cdf,
    pointwise_sup,
    random_step_cdf,
)
from .errors import (
    BudgetExhausted,
    DomainMismatch,
    EmptySubset,
    NegativeScale,
    PreconditionViolated,
    ValidationError,
)
from .levy import DEFAULT, LevyConfig, levy_distance, levy_to_h0
from .spaces import ProbMetricSpace
from .tnorms import TriangleFunction


@dataclass(frozen=True, eq=False)
class LipschitzMap:
    """A total assignment point -> StepCdf over a space's points."""

    space: ProbMetricSpace
    values: dict

    def __post_init__(self):
        missing = [p for p in self.space.points if p not in self.values]
        if missing:
            raise DomainMismatch(f"map is missing points {missing!r}")

    def __getitem__(self, p) -> StepCdf:
        return self.values[p]


@dataclass(frozen=True)
class LipschitzCheck:
    """Certificate result; ``witness`` is (x, y, t) where the defining
    inequality first failed."""

    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def _values_of(f) -> Mapping:
    # a plain mapping, or anything carrying one under .values (dict.values is
    # a method, so the Mapping check must come first)
    if isinstance(f, Mapping):
        return f
    vals = getattr(f, "values", None)
    if isinstance(vals, Mapping):
        return vals
    raise DomainMismatch(f"expected a mapping point -> cdf, got {type(f).__name__}")


def is_one_lipschitz(space: ProbMetricSpace, f, tol: float = TOL) -> LipschitzCheck:
    """Exhaustive ordered-pair certificate of the defining inequality."""
    vals = _values_of(f)
    for p in space.points:
        if p not in vals:
            raise DomainMismatch(f"map not defined at point {p!r}")
    star = space.star
    for x in space.points:
        fx = vals[x]
        for y in space.points:
            t = leq_witness(star(space.dist(x, y), vals[y]), fx, tol)
            if t is not None:
                return LipschitzCheck(False, (x, y, t))
    return LipschitzCheck(True)


def upper_envelope_extension(space: ProbMetricSpace, A: Sequence, f) -> LipschitzMap:
    """Extend a partial assignment on A to the whole space by
    ``x -> sup over y in A of star(f(y), D(x,y))``.

    The result dominates f on A, is certified 1-Lipschitz, and agrees with f
    on A exactly when f was 1-Lipschitz on the restricted space.
    """
    anchors = list(A)
    if not anchors:
        raise EmptySubset("extension needs a nonempty anchor set")
    vals = _values_of(f)
    for a in anchors:
        space.index(a)  # raises UnknownPoint for strays
        if a not in vals:
            raise DomainMismatch(f"partial map not defined at anchor {a!r}")
    star = space.star
    extended = {
        x: pointwise_sup([star(vals[y], space.dist(x, y)) for y in anchors])
        for x in space.points
    }
    result = LipschitzMap(space, extended)
    check = is_one_lipschitz(space, result)
    if not check:  # cannot happen for a sup-continuous operation; guard anyway
        raise ValidationError(f"envelope failed certification at {check.witness}")
    return result


def delta_embed(space: ProbMetricSpace, x) -> LipschitzMap:
    """The distance row ``y -> D(y, x)``; 1-Lipschitz because the space's
    triangle inequality is exactly the required estimate."""
    i = space.index(x)
    return LipschitzMap(space, {y: space.matrix[space.index(y)][i] for y in space.points})


def rescale_distance(F: StepCdf, k: float) -> StepCdf:
    """Time rescaling t -> t/k of a distribution, i.e. breakpoints scaled by
    k; the degenerate k = 0 collapses to the unit step at 0."""
    if k < 0:
        raise NegativeScale(f"scale must be nonnegative, got {k}")
    if k == 0:
        return H0
    return StepCdf(tuple((k * t, v) for t, v in F.breaks))


def equicontinuity_bound(
    Dxy: StepCdf,
    Fx: StepCdf,
    Fy: StepCdf,
    star: TriangleFunction,
    cfg: LevyConfig = DEFAULT,
) -> tuple[float, float]:
    """The two sides of the equicontinuity estimate for a Lipschitz pair.

    Requires both relations ``star(Dxy, Fy) <= Fx`` and ``star(Dxy, Fx) <= Fy``;
    returns (distance between the values, max of the two perturbation
    distances).  The first never exceeds the second beyond bisection error.
    """
    if not leq(star(Dxy, Fy), Fx) or not leq(star(Dxy, Fx), Fy):
        raise PreconditionViolated("both Lipschitz relations must hold for the pair")
    lhs = levy_distance(Fx, Fy, cfg)
    rhs = max(
        levy_distance(star(Dxy, Fx), Fx, cfg),
        levy_distance(star(Dxy, Fy), Fy, cfg),
    )
    return lhs, rhs


@dataclass(frozen=True)
class ModulusEstimate:
    eta: float
    samples: int


def estimate_modulus(
    star: TriangleFunction,
    eps: float,
    sampler: Callable[[], StepCdf],
    budget: int,
    cfg: LevyConfig = DEFAULT,
    max_halvings: int = 20,
) -> ModulusEstimate:
    """Empirical uniform-continuity modulus: the largest eta in {eps/2^k}
    such that every sampled pair (D, F) with the perturbation D within eta of
    the unit step at 0 kept ``star(D, F)`` within eps of F.

    An estimate backed by ``budget`` samples per grid value, not a
    certificate.  Sampled perturbations that are not already small enough are
    shrunk by joining a near-origin bump, which preserves the rest of their
    shape.
    """
    if not (0.0 < eps <= 1.0):
        raise PreconditionViolated(f"eps must lie in (0, 1], got {eps}")
    if budget < 1:
        raise PreconditionViolated(f"budget must be positive, got {budget}")
    total = 0
    eta = eps
    for _ in range(max_halvings):
        ok = True
        for i in range(budget):
            base = sampler()
            F = sampler()
            total += 2
            if levy_to_h0(base) < eta:
                D = base
            else:
                r = eta * (0.1 + 0.8 * (i + 1) / (budget + 1))
                D = pointwise_sup([base, make_step_cdf([(r, 1.0 - r)])])
            if levy_distance(star(D, F), F, cfg) >= eps:
                ok = False
                break
        if ok:
            return ModulusEstimate(eta, total)
        eta *= 0.5
    raise BudgetExhausted(f"no grid value down to {eta} passed {budget} samples")


def classical_lipschitz_embed(space: ProbMetricSpace, L: Mapping) -> LipschitzMap:
    """Lift a nonnegative real-valued map to unit steps at its values.
    The lift is 1-Lipschitz exactly when L is classically 1-Lipschitz for the
    distances underlying a unit-step space."""
    return LipschitzMap(space, {x: heaviside(L[x]) for x in space.points})


def random_lipschitz_map(
    space: ProbMetricSpace, rng: random.Random, max_breaks: int = 3
) -> LipschitzMap:
    """Seeded certified map: the envelope of a random partial assignment on a
    random anchor set."""
    pts = list(space.points)
    anchors = rng.sample(pts, rng.randint(1, len(pts)))
    partial = {a: random_step_cdf(rng, max_breaks) for a in anchors}
    return upper_envelope_extension(space, anchors, partial)
