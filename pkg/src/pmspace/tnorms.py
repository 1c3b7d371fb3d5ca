"""Triangular norms on [0, 1] and the triangle functions they induce.

A left-continuous t-norm T lifts to a binary operation on the lattice of
step distribution functions via the sup-convolution
``(F * L)(t) = sup over s+u=t of T(F(s), L(u))``, which is commutative,
associative, monotone, has the unit step at 0 as neutral element, and is
both continuous and sup-continuous.  For step functions the supremum
collapses to a finite maximum over jumps, so the operation is computed
exactly.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .cdf import (
    H0,
    HINF,
    TOL,
    StepCdf,
    _cluster,
    approx_equal,
    leq,
    pointwise_sup,
)
from .errors import ArgOutOfRange, EmptyFamily, PreconditionViolated, ValidationError
from .levy import DEFAULT, LevyConfig, is_weak_limit, levy_distance


@dataclass(frozen=True)
class TNorm:
    """A named binary operation on [0, 1].  Built-ins are left-continuous and
    satisfy the four t-norm axioms exactly on dyadic inputs."""

    name: str
    fn: Callable[[float, float], float]


def _minimum(x: float, y: float) -> float:
    return x if x <= y else y


def _product(x: float, y: float) -> float:
    return x * y


def _lukasiewicz(x: float, y: float) -> float:
    z = x + y - 1.0
    return z if z > 0.0 else 0.0


MINIMUM = TNorm("minimum", _minimum)
PRODUCT = TNorm("product", _product)
LUKASIEWICZ = TNorm("lukasiewicz", _lukasiewicz)

BUILTIN_TNORMS = {
    "minimum": MINIMUM,
    "product": PRODUCT,
    "lukasiewicz": LUKASIEWICZ,
    # CLI aliases
    "min": MINIMUM,
    "prod": PRODUCT,
    "luka": LUKASIEWICZ,
}


def tnorm_eval(T: TNorm, x: float, y: float) -> float:
    if not (0.0 <= x <= 1.0) or not (0.0 <= y <= 1.0):
        raise ArgOutOfRange(f"t-norm arguments must lie in [0, 1], got ({x}, {y})")
    return T.fn(x, y)


def tnorm_axiom_failures(T: TNorm, steps: int = 64, tol: float = TOL) -> list[str]:
    """Grid check of the t-norm axioms; returns the names of failed axioms.

    The grid {k/steps} is dyadic for the default 64, so the built-ins pass
    with exact arithmetic.
    """
    grid = [k / steps for k in range(steps + 1)]
    failed = []
    closure_ok = commut_ok = boundary_ok = True
    for x in grid:
        if not (0.0 <= T.fn(x, 1.0) <= 1.0):
            closure_ok = False
        if abs(T.fn(x, 1.0) - x) > tol:
            boundary_ok = False
        for y in grid:
            v = T.fn(x, y)
            if not (0.0 <= v <= 1.0):
                closure_ok = False
            if abs(v - T.fn(y, x)) > tol:
                commut_ok = False
    assoc_ok = mono_ok = True
    for x in grid:
        prev = None
        for z in grid:  # z ascends, so T(x, z) must not descend
            v = T.fn(x, z)
            if prev is not None and v < prev - tol:
                mono_ok = False
            prev = v
        for y in grid:
            txy = T.fn(x, y)
            for z in grid:
                if abs(T.fn(x, T.fn(y, z)) - T.fn(txy, z)) > tol:
                    assoc_ok = False
    for name, ok in [
        ("closure", closure_ok),
        ("commutativity", commut_ok),
        ("associativity", assoc_ok),
        ("monotonicity", mono_ok),
        ("boundary", boundary_ok),
    ]:
        if not ok:
            failed.append(name)
    return failed


def custom_tnorm(name: str, fn: Callable[[float, float], float], steps: int = 64) -> TNorm:
    """Wrap a user-supplied operation after a grid check of the axioms."""
    T = TNorm(name, fn)
    failed = tnorm_axiom_failures(T, steps)
    if failed:
        raise ValidationError(f"operation {name!r} fails t-norm axioms on the grid: {failed}")
    return T


@dataclass(frozen=True)
class TriangleFunction:
    """A binary operation on step cdfs.  Canonical instances come from
    :func:`star_from_tnorm`; arbitrary operations may be wrapped for the
    axiom validators."""

    name: str
    fn: Callable[[StepCdf, StepCdf], StepCdf]
    tnorm: TNorm | None = None

    def __call__(self, F: StepCdf, L: StepCdf) -> StepCdf:
        return self.fn(F, L)


def sup_convolution(T: TNorm, F: StepCdf, L: StepCdf) -> StepCdf:
    """Exact sup-convolution of two step functions under a left-continuous
    t-norm.

    On the interval (a_i, a_{i+1}] the left factor is constant, so the
    supremum over splittings s+u=t reduces by monotonicity and
    left-continuity to ``max_i T(v_i, L(t - a_i))`` over F's jumps
    (a_i, v_i), and the result's jumps lie among pairwise sums of input
    jumps.  Interval values are read by counting sums ``a_i + b_m`` at or
    below each candidate, never by subtracting coordinates: re-deriving
    ``t - a_i`` in floating point can round across a jump of L and poison a
    whole interval.
    """
    if not F.breaks or not L.breaks:
        return HINF
    fn = T.fn
    sums = [tuple(a + b for b in L._ts) for a in F._ts]
    # candidates within TOL are one breakpoint: summation order must not
    # decide whether two near-tied sums become one jump or two
    clusters = _cluster(sorted({s for row in sums for s in row}))
    lvs = (0.0,) + L._vs
    breaks: list[tuple[float, float]] = []
    prev = 0.0
    for first, last in clusters:
        # value on the interval just right of the cluster: the right factor
        # sits just past its jump at b_m exactly when a_i + b_m <= last
        v = max(fn(vi, lvs[bisect_right(row, last)]) for vi, row in zip(F._vs, sums))
        if v > prev + TOL:
            breaks.append((first, min(v, 1.0)))
            prev = v
    return StepCdf(tuple(breaks))


def star_from_tnorm(T: TNorm) -> TriangleFunction:
    def fn(F: StepCdf, L: StepCdf) -> StepCdf:
        return sup_convolution(T, F, L)

    return TriangleFunction(f"sup_convolution[{T.name}]", fn, T)


# Shared instances so reloading a document yields identity-equal operations.
STAR_MIN = star_from_tnorm(MINIMUM)
STAR_PROD = star_from_tnorm(PRODUCT)
STAR_LUKA = star_from_tnorm(LUKASIEWICZ)

BUILTIN_STARS = {
    "minimum": STAR_MIN,
    "product": STAR_PROD,
    "lukasiewicz": STAR_LUKA,
    "min": STAR_MIN,
    "prod": STAR_PROD,
    "luka": STAR_LUKA,
}


def _is_valid_cdf(F) -> bool:
    if not isinstance(F, StepCdf):
        return False
    prev_t, prev_v = -1.0, 0.0
    for t, v in F.breaks:
        if not (t >= 0.0 and t > prev_t and prev_v < v <= 1.0):
            return False
        prev_t, prev_v = t, v
    return True


@dataclass
class AxiomReport:
    """Outcome of the five triangle-function axioms over a sample of triples.
    ``counterexamples`` maps a failed axiom name to the first offending
    triple."""

    closure: bool = True
    commutativity: bool = True
    associativity: bool = True
    neutrality: bool = True
    monotonicity: bool = True
    checked: int = 0
    counterexamples: dict = field(default_factory=dict)

    @property
    def all_ok(self) -> bool:
        return (
            self.closure
            and self.commutativity
            and self.associativity
            and self.neutrality
            and self.monotonicity
        )


def check_triangle_axioms(
    star: TriangleFunction,
    samples: Iterable[tuple[StepCdf, StepCdf, StepCdf]],
    tol: float = 1e-9,
) -> AxiomReport:
    """Test closure, commutativity, associativity, neutrality of the unit
    step at 0, and monotonicity on the given triples.

    Monotonicity is exercised by lifting the first component to the pointwise
    supremum with the second, which supplies a comparable pair.
    """
    report = AxiomReport()

    def fail(axiom: str, triple) -> None:
        if getattr(report, axiom):
            setattr(report, axiom, False)
            report.counterexamples[axiom] = triple

    for triple in samples:
        F, L, K = triple
        report.checked += 1
        FL = star(F, L)
        if not _is_valid_cdf(FL):
            fail("closure", triple)
            continue
        if not approx_equal(FL, star(L, F), tol):
            fail("commutativity", triple)
        if not approx_equal(star(F, star(L, K)), star(FL, K), tol):
            fail("associativity", triple)
        if not approx_equal(star(F, H0), F, tol):
            fail("neutrality", triple)
        M = pointwise_sup([F, L])
        if not leq(star(F, K), star(M, K), tol):
            fail("monotonicity", triple)
    return report


def check_sup_continuity(
    star: TriangleFunction,
    family: Iterable[StepCdf],
    L: StepCdf,
    tol: float = 1e-9,
) -> bool:
    """True iff the supremum commutes with the operation on this family:
    sup_i star(F_i, L) equals star(sup_i F_i, L) canonically within tol."""
    fams = list(family)
    if not fams:
        raise EmptyFamily("sup-continuity check needs a nonempty family")
    lhs = pointwise_sup([star(Fi, L) for Fi in fams])
    rhs = star(pointwise_sup(fams), L)
    return approx_equal(lhs, rhs, tol)


def check_weak_continuity(
    star: TriangleFunction,
    fseq: Sequence[StepCdf],
    f_limit: StepCdf,
    lseq: Sequence[StepCdf],
    l_limit: StepCdf,
    tol: float,
    tail: int = 10,
    cfg: LevyConfig = DEFAULT,
) -> bool:
    """Finite-sequence continuity of the operation at the pair of limits.

    Requires both input sequences to converge at tolerance ``tol`` over the
    given tail; the outputs must then stay within ``3*tol`` of the operation
    applied to the limits.
    """
    fseq, lseq = list(fseq), list(lseq)
    if len(fseq) != len(lseq):
        raise PreconditionViolated("input sequences must have equal length")
    if not is_weak_limit(fseq, f_limit, tol, tail, cfg):
        raise PreconditionViolated("first sequence does not converge at the stated tolerance")
    if not is_weak_limit(lseq, l_limit, tol, tail, cfg):
        raise PreconditionViolated("second sequence does not converge at the stated tolerance")
    target = star(f_limit, l_limit)
    return all(
        levy_distance(star(Fn, Ln), target, cfg) < 3.0 * tol
        for Fn, Ln in zip(fseq[-tail:], lseq[-tail:])
    )


def random_triples(
    rng: random.Random, count: int, max_breaks: int = 4, grid: bool = True
) -> list[tuple[StepCdf, StepCdf, StepCdf]]:
    """Seeded triples for the axiom validators."""
    from .cdf import random_step_cdf

    return [
        (
            random_step_cdf(rng, max_breaks, grid),
            random_step_cdf(rng, max_breaks, grid),
            random_step_cdf(rng, max_breaks, grid),
        )
        for _ in range(count)
    ]
