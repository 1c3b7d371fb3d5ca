"""Exact finite representation of distance distribution functions.

The value lattice consists of nondecreasing, left-continuous step functions
on the reals that vanish on (-inf, 0] and carry the implicit value 1 at
+inf.  A function is stored as its canonical jump sequence
``((t1, v1), ..., (tn, vn))``: strictly increasing breakpoints ``t_i >= 0``,
strictly increasing values ``v_i`` in (0, 1].  The function equals 0 on
(-inf, t1], equals ``v_i`` on (t_i, t_{i+1}], and ``v_n`` on (t_n, +inf).
The empty sequence encodes the function that is identically 0 on the reals
(the lattice minimum); the unit step at 0 is the maximum.

Everything here is exact: evaluation, the pointwise order, lattice suprema
and grid quantization are decided from the jump sequences alone, never by
sampling.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .errors import (
    EmptyFamily,
    InvalidDelta,
    NegativeBreakpoint,
    NonMonotoneValue,
    ValueOutOfRange,
)

# Absolute tolerance for breakpoint/value comparisons during canonicalization.
# The product t-norm introduces rounding at the 1e-16 scale; 1e-12 keeps
# canonical forms stable without masking real differences.
TOL = 1e-12

INF = math.inf


@dataclass(frozen=True)
class StepCdf:
    """A canonical jump sequence.  Instances are immutable and hashable;
    ``==`` is exact structural equality, use :func:`approx_equal` for the
    tolerance-based canonical equality used throughout the package."""

    breaks: tuple[tuple[float, float], ...] = ()

    @cached_property
    def _ts(self) -> tuple[float, ...]:
        return tuple(t for t, _ in self.breaks)

    @cached_property
    def _vs(self) -> tuple[float, ...]:
        return tuple(v for _, v in self.breaks)

    def __call__(self, t: float) -> float:
        return evaluate(self, t)


def make_step_cdf(points: Iterable[Sequence[float]]) -> StepCdf:
    """Canonicalizing constructor.

    Sorts the given (breakpoint, value) pairs, drops exact duplicates and
    redundant breakpoints (consecutive equal values), and rejects anything
    that cannot be a member of the lattice: negative breakpoints, values
    outside (0, 1], or values that decrease as breakpoints increase.
    Idempotent: feeding back ``F.breaks`` reproduces ``F``.
    """
    cleaned = []
    for t, v in points:
        t, v = float(t), float(v)
        if not math.isfinite(t) or t < 0:
            raise NegativeBreakpoint(f"breakpoint must be a finite nonnegative real, got {t}")
        if not math.isfinite(v) or not (0.0 < v <= 1.0):
            raise ValueOutOfRange(f"value must lie in (0, 1], got {v}")
        cleaned.append((t, v))
    cleaned.sort()
    breaks: list[tuple[float, float]] = []
    for t, v in cleaned:
        if not breaks:
            breaks.append((t, v))
            continue
        pt, pv = breaks[-1]
        if t - pt <= TOL:
            # same breakpoint within tolerance
            if abs(v - pv) <= TOL:
                continue
            raise NonMonotoneValue(f"two distinct values ({pv}, {v}) at breakpoint {t}")
        if v <= pv + TOL:
            if v < pv - TOL:
                raise NonMonotoneValue(f"value decreases from {pv} to {v} at breakpoint {t}")
            continue  # redundant breakpoint, same value
        breaks.append((t, v))
    return StepCdf(tuple(breaks))


def heaviside(a: float) -> StepCdf:
    """The unit step jumping just after ``a``; the empty function for a = +inf."""
    a = float(a)
    if a == INF:
        return StepCdf()
    if not math.isfinite(a) or a < 0:
        raise NegativeBreakpoint(f"step location must be a nonnegative real or +inf, got {a}")
    return StepCdf(((a, 1.0),))


H0 = heaviside(0.0)
HINF = StepCdf()


def evaluate(F: StepCdf, t: float) -> float:
    """Left-continuous evaluation: the value ``v_i`` for the largest ``t_i < t``,
    0 when there is none, and 1 at t = +inf."""
    if t == INF:
        return 1.0
    i = bisect_left(F._ts, t)
    return F._vs[i - 1] if i else 0.0


def value_after(F: StepCdf, t: float) -> float:
    """Right limit F(t+): the value ``v_i`` for the largest ``t_i <= t``."""
    i = bisect_right(F._ts, t)
    return F._vs[i - 1] if i else 0.0


def leq(F: StepCdf, G: StepCdf, tol: float = TOL) -> bool:
    """Pointwise order F <= G, decided exactly at the union of breakpoints."""
    return leq_witness(F, G, tol) is None


def leq_witness(F: StepCdf, G: StepCdf, tol: float = TOL) -> float | None:
    """First probe t with F(t) > G(t) + tol, or None when F <= G everywhere.

    Both functions are constant between consecutive union breakpoints, and the
    left-continuous read at each breakpoint returns the value of the interval
    ending there; one extra probe past the last breakpoint covers the final
    interval.
    """
    cands = sorted(set(F._ts) | set(G._ts))
    for c in cands:
        if evaluate(F, c) > evaluate(G, c) + tol:
            return c
    probe = cands[-1] + 1.0 if cands else 1.0
    if evaluate(F, probe) > evaluate(G, probe) + tol:
        return probe
    return None


def approx_equal(F: StepCdf, G: StepCdf, tol: float = TOL) -> bool:
    """Canonical equality: same number of jumps, breakpoints and values agree
    componentwise within ``tol``."""
    a, b = F.breaks, G.breaks
    if len(a) != len(b):
        return False
    return all(
        abs(t1 - t2) <= tol and abs(v1 - v2) <= tol
        for (t1, v1), (t2, v2) in zip(a, b)
    )


def _cluster(cands: Sequence[float]) -> list[tuple[float, float]]:
    """Group sorted candidate breakpoints within TOL of each other into
    (first, last) clusters; each cluster is one canonical breakpoint."""
    clusters: list[tuple[float, float]] = []
    for c in cands:
        if clusters and c - clusters[-1][1] <= TOL:
            clusters[-1] = (clusters[-1][0], c)
        else:
            clusters.append((c, c))
    return clusters


def _from_interval_values(cands: Sequence[float], value_at: Callable[[float], float]) -> StepCdf:
    """Build a canonical StepCdf from candidate breakpoints and an exact
    interval-value reader.

    ``cands`` must be sorted with exact-duplicate floats removed.  ``value_at``
    is a left-continuous evaluator of the target function; since the target is
    constant strictly between candidates, reading it at the first member of
    the next candidate cluster (and one unit past the last) recovers all
    interval values exactly.  Candidates within TOL collapse to one
    breakpoint, and only increments above TOL become jumps, which
    canonicalizes away float noise.
    """
    clusters = _cluster(cands)
    breaks: list[tuple[float, float]] = []
    prev = 0.0
    last = len(clusters) - 1
    for k, (first, last_member) in enumerate(clusters):
        probe = clusters[k + 1][0] if k < last else last_member + 1.0
        v = value_at(probe)
        if v > prev + TOL:
            breaks.append((first, min(v, 1.0)))
            prev = v
    return StepCdf(tuple(breaks))


def pointwise_sup(family: Iterable[StepCdf]) -> StepCdf:
    """Exact pointwise maximum of a nonempty finite family."""
    fams = list(family)
    if not fams:
        raise EmptyFamily("pointwise_sup needs at least one function")
    if len(fams) == 1:
        return fams[0]
    cands = sorted({t for F in fams for t in F._ts})
    if not cands:
        return HINF

    def value_at(t: float) -> float:
        return max(evaluate(F, t) for F in fams)

    return _from_interval_values(cands, value_at)


def quantize(F: StepCdf, delta: float) -> StepCdf:
    """Snap ``F`` onto the delta-grid from below.

    The result G has breakpoints on ``{k*delta : k >= 0}`` capped at the time
    horizon ``1/delta``; on each grid cell (k*delta, (k+1)*delta] it takes the
    value ``floor(F(k*delta+)/delta) * delta``.  Consequences: G <= F, the map
    is idempotent on its image, and the image for a fixed delta is finite,
    which is what makes grid keys usable as cluster buckets.
    """
    if not (0.0 < delta <= 1.0):
        raise InvalidDelta(f"delta must lie in (0, 1], got {delta}")
    if not F.breaks:
        return F
    kmax = int(math.floor(1.0 / (delta * delta) + 1e-9))
    cells: dict[int, float] = {}
    for t, v in F.breaks:
        k = math.ceil(t / delta - 1e-9)
        if k > kmax:
            break
        # +TOL absorbs float dirt when v is already a grid multiple
        q = min(math.floor((v + TOL) / delta) * delta, 1.0)
        cells[k] = q  # later breaks in the same cell overwrite: right limit
    breaks: list[tuple[float, float]] = []
    prev = 0.0
    for k in sorted(cells):
        q = cells[k]
        if q > prev + TOL:
            breaks.append((k * delta, q))
            prev = q
    return StepCdf(tuple(breaks))


def random_step_cdf(rng: random.Random, max_breaks: int = 4, grid: bool = True) -> StepCdf:
    """Seeded random lattice member.

    With ``grid=True`` breakpoints live on the 1/8 grid in [0, 3] and values
    on the 1/16 grid, so downstream sums, minima and products stay exact in
    floating point.  With ``grid=False`` coordinates are uniform floats, which
    exercises canonicalization instead.  Zero breaks (the lattice minimum) and
    full unit mass both occur.
    """
    n = rng.randint(0, max_breaks)
    if n == 0:
        return HINF
    if grid:
        ts = sorted(rng.sample(range(0, 25), n))
        vs = sorted(rng.sample(range(1, 17), n))
        return StepCdf(tuple((t / 8.0, v / 16.0) for t, v in zip(ts, vs)))
    ts, t = [], 0.0
    for _ in range(n):
        t += rng.uniform(0.01, 1.2)
        ts.append(t)
    incs = [rng.uniform(0.02, 0.5) for _ in range(n)]
    total = sum(incs)
    scale = 1.0 / total if total > 1.0 or rng.random() < 0.5 else 1.0
    vs, acc = [], 0.0
    for inc in incs:
        acc += inc
        vs.append(min(acc * scale, 1.0))
    return make_step_cdf(zip(ts, vs))
