"""The modified Levy distance on step distribution functions, the uniform
distance between function-valued maps, and weak-convergence checks.

The distance between F and G is the least probe radius h in (0, 1] such that
both sided conditions ``G(t) <= F(t+h) + h`` and ``F(t) <= G(t+h) + h`` hold
for every t in the window (0, 1/h).  Each per-h decision is exact (the
left-continuous step structure confines the supremum of the defect to a
finite candidate set), the condition is monotone in h, and the infimum is
found by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .cdf import StepCdf, approx_equal, evaluate
from .errors import DomainMismatch, PreconditionViolated, ProbeOutOfRange


@dataclass(frozen=True)
class LevyConfig:
    """Bisection controls.  The returned distance is within ``bisection_tol``
    of the true infimum and never below it."""

    bisection_tol: float = 1e-10
    max_iter: int = 60

    def __post_init__(self):
        if not (0.0 < self.bisection_tol <= 1e-3):
            raise PreconditionViolated(
                f"bisection_tol must lie in (0, 1e-3], got {self.bisection_tol}"
            )
        need = math.ceil(math.log2(1.0 / self.bisection_tol))
        if self.max_iter < need:
            raise PreconditionViolated(
                f"max_iter={self.max_iter} cannot reach tolerance {self.bisection_tol}; need >= {need}"
            )


DEFAULT = LevyConfig()


def _as_mapping(f) -> Mapping:
    if isinstance(f, Mapping):
        return f
    vals = getattr(f, "values", None)
    if isinstance(vals, Mapping):
        return vals
    raise DomainMismatch(f"expected a mapping point -> cdf, got {type(f).__name__}")


def condition_a(F: StepCdf, G: StepCdf, h: float) -> bool:
    """Exact decision of ``G(t) <= F(t+h) + h`` for all t in (0, 1/h).

    The defect ``G(t) - F(t+h)`` is a left-continuous step function of t whose
    jumps sit at G's breakpoints and at F's breakpoints shifted by -h.  Its
    supremum over the window is therefore attained among the interval values
    read (left-continuously) at those points and at the window end ``1/h``.
    """
    if not (0.0 < h <= 1.0):
        raise ProbeOutOfRange(f"probe radius must lie in (0, 1], got {h}")
    window = 1.0 / h
    # Candidates carry both coordinates (t, t+h) exactly: re-deriving a_i from
    # (a_i - h) + h can round past the jump at a_i and misread F by the whole
    # jump height.
    pairs = [(window, window + h)]
    for b in G._ts:
        if 0.0 < b <= window:
            pairs.append((b, b + h))
    for a in F._ts:
        c = a - h
        if 0.0 < c <= window:
            pairs.append((c, a))
    for t, th in pairs:
        if evaluate(G, t) > evaluate(F, th) + h:
            return False
    return True


def _both_sides(F: StepCdf, G: StepCdf, h: float) -> bool:
    return condition_a(F, G, h) and condition_a(G, F, h)


def levy_distance(F: StepCdf, G: StepCdf, cfg: LevyConfig = DEFAULT) -> float:
    """inf{h : both sided conditions hold}, by bisection over [0, 1].

    Exactly 0 when F and G are canonically equal; otherwise returns a valid
    probe radius at most ``cfg.bisection_tol`` above the infimum.  Symmetric
    by construction, and always <= 1 since both conditions hold at h = 1.
    """
    if approx_equal(F, G):
        return 0.0
    lo, hi = 0.0, 1.0
    for _ in range(cfg.max_iter):
        if hi - lo <= cfg.bisection_tol:
            break
        mid = 0.5 * (lo + hi)
        if _both_sides(F, G, mid):
            hi = mid
        else:
            lo = mid
    return hi


def levy_to_h0(F: StepCdf) -> float:
    """Exact distance from F to the unit step at 0.

    Against the maximal element the two-sided condition collapses to
    ``F(h+) >= 1 - h``, whose solution set is an up-set; scanning the
    constancy intervals of the right limit yields the infimum in closed form.
    """
    n = len(F.breaks)
    for i in range(n + 1):
        start = 0.0 if i == 0 else F._ts[i - 1]
        value = 0.0 if i == 0 else F._vs[i - 1]
        end = F._ts[i] if i < n else math.inf
        h = max(start, 1.0 - value)
        if h < end:
            return min(h, 1.0)
    return 1.0  # unreachable: the final interval always qualifies


def uniform_distance(
    f,
    g,
    points: Sequence,
    cfg: LevyConfig = DEFAULT,
) -> float:
    """Largest per-point distance between two maps into the lattice.

    Accepts anything with a ``values`` mapping (a certified Lipschitz map) or
    a plain mapping point -> StepCdf.
    """
    fv = _as_mapping(f)
    gv = _as_mapping(g)
    worst = 0.0
    for x in points:
        try:
            Fx, Gx = fv[x], gv[x]
        except KeyError as exc:
            raise DomainMismatch(f"map not defined at point {x!r}") from exc
        worst = max(worst, levy_distance(Fx, Gx, cfg))
    return worst


def is_weak_limit(
    seq: Iterable[StepCdf],
    F: StepCdf,
    tol: float,
    tail: int,
    cfg: LevyConfig = DEFAULT,
) -> bool:
    """True iff the last ``tail`` members of the sequence are within ``tol``
    of F in the modified Levy distance.  This is the finite-sequence reading
    of weak convergence: the distance metrizes it."""
    seq = list(seq)
    if not (0 < tail <= len(seq)):
        raise PreconditionViolated(f"tail must lie in [1, {len(seq)}], got {tail}")
    return all(levy_distance(Fn, F, cfg) < tol for Fn in seq[-tail:])
