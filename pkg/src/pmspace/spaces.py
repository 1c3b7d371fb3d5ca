"""Finite probabilistic metric spaces.

A space is a finite point set with a symmetric matrix of distribution-valued
distances: the diagonal is the unit step at 0 (and nothing off the diagonal
is), the matrix is symmetric, and the triangle inequality
``star(D(p,q), D(q,r)) <= D(p,r)`` holds for every triple.  Finite spaces
are automatically complete and compact, which is the regime where the
compactness machinery downstream is machine-checkable.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .cdf import H0, StepCdf, approx_equal, evaluate, leq, leq_witness, pointwise_sup, random_step_cdf
from .errors import (
    DomainMismatch,
    GenerationFailed,
    IdentityViolation,
    NotAMetric,
    PreconditionViolated,
    StarNotAdditiveOnHeaviside,
    SymmetryViolation,
    TriangleViolation,
    UnknownPoint,
)
from .levy import levy_to_h0
from .tnorms import STAR_MIN, TriangleFunction


@dataclass(frozen=True)
class ProbMetricSpace:
    points: tuple
    matrix: tuple[tuple[StepCdf, ...], ...]
    star: TriangleFunction

    @cached_property
    def _index(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    def index(self, p) -> int:
        try:
            return self._index[p]
        except KeyError as exc:
            raise UnknownPoint(f"point {p!r} is not in the space") from exc

    def dist(self, p, q) -> StepCdf:
        return self.matrix[self.index(p)][self.index(q)]

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p) -> bool:
        return p in self._index


def validate_space_matrix(
    points: Sequence,
    matrix: Sequence[Sequence[StepCdf]],
    star: TriangleFunction,
) -> None:
    """Raise the first violated axiom with a witness; return None when valid."""
    n = len(points)
    if len(set(points)) != n:
        raise DomainMismatch("point labels must be distinct")
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise DomainMismatch(f"distance matrix must be {n}x{n}")
    for i, p in enumerate(points):
        if not approx_equal(matrix[i][i], H0):
            raise IdentityViolation(f"distance of {p!r} to itself is not the unit step at 0", witness=(p,))
    for i, p in enumerate(points):
        for j, q in enumerate(points):
            if i < j and approx_equal(matrix[i][j], H0):
                raise IdentityViolation(
                    f"distinct points {p!r}, {q!r} at the unit step at 0", witness=(p, q)
                )
            if i < j and not approx_equal(matrix[i][j], matrix[j][i]):
                raise SymmetryViolation(f"distance between {p!r} and {q!r} is asymmetric", witness=(p, q))
    for i, p in enumerate(points):
        for j, q in enumerate(points):
            for k, r in enumerate(points):
                t = leq_witness(star(matrix[i][j], matrix[j][k]), matrix[i][k])
                if t is not None:
                    raise TriangleViolation(
                        f"triangle inequality fails for ({p!r}, {q!r}, {r!r}) at t={t}",
                        witness=(p, q, r, t),
                    )


def make_space(
    points: Sequence,
    matrix: Sequence[Sequence[StepCdf]],
    star: TriangleFunction,
) -> ProbMetricSpace:
    """Validated construction; raises Identity/Symmetry/TriangleViolation."""
    validate_space_matrix(points, matrix, star)
    return ProbMetricSpace(tuple(points), tuple(tuple(row) for row in matrix), star)


def from_classical_metric(
    points: Sequence,
    d: Sequence[Sequence[float]],
    star: TriangleFunction,
) -> ProbMetricSpace:
    """Embed a classical finite metric as unit steps at the distances.

    Requires the classical triangle inequality to hold in floating point
    exactly (the induced step-function triangle check is exact), and the
    operation to add step locations on the distance values that occur.
    """
    n = len(points)
    if len(d) != n or any(len(row) != n for row in d):
        raise NotAMetric(f"metric matrix must be {n}x{n}")
    for i in range(n):
        if d[i][i] != 0.0:
            raise NotAMetric(f"d({points[i]!r},{points[i]!r}) must be 0", witness=(points[i],))
        for j in range(n):
            if d[i][j] != d[j][i]:
                raise NotAMetric("metric is asymmetric", witness=(points[i], points[j]))
            if i != j and not d[i][j] > 0.0:
                raise NotAMetric("distinct points at distance 0", witness=(points[i], points[j]))
            for k in range(n):
                if d[i][k] > d[i][j] + d[j][k]:
                    raise NotAMetric(
                        "triangle inequality fails",
                        witness=(points[i], points[j], points[k]),
                    )
    from .cdf import heaviside

    values = sorted({d[i][j] for i in range(n) for j in range(n) if i != j})
    for a in values:
        for b in values:
            if not approx_equal(star(heaviside(a), heaviside(b)), heaviside(a + b)):
                raise StarNotAdditiveOnHeaviside(
                    f"operation does not add step locations at ({a}, {b})"
                )
    matrix = [[heaviside(d[i][j]) if i != j else H0 for j in range(n)] for i in range(n)]
    return make_space(points, matrix, star)


def strong_neighborhood(space: ProbMetricSpace, x, t: float) -> tuple:
    """Points y with D(x,y)(t) > 1 - t, in point order.  Always contains x."""
    if t <= 0.0:
        raise PreconditionViolated(f"neighborhood radius must be positive, got {t}")
    i = space.index(x)
    row = space.matrix[i]
    return tuple(y for j, y in enumerate(space.points) if evaluate(row[j], t) > 1.0 - t)


def is_cauchy(space: ProbMetricSpace, seq: Sequence, tol: float, tail: int) -> bool:
    """True iff all pairwise distances over the last ``tail`` entries are
    within ``tol`` of the unit step at 0 (measured by the exact distance to
    it, which is what weak convergence to the zero-distance reduces to)."""
    seq = list(seq)
    if not (0 < tail <= len(seq)):
        raise PreconditionViolated(f"tail must lie in [1, {len(seq)}], got {tail}")
    window = seq[-tail:]
    for a in window:
        for b in window:
            if levy_to_h0(space.dist(a, b)) >= tol:
                return False
    return True


def covering_net(space: ProbMetricSpace, t: float) -> tuple:
    """Greedy subset whose strong t-neighborhoods cover the space.

    Each round picks the point covering the most uncovered points (ties go to
    the earliest point), so the result is deterministic and minimal under the
    greedy order, though not necessarily globally minimal.
    """
    n = len(space.points)
    cover = {
        i: {space.index(y) for y in strong_neighborhood(space, p, t)}
        for i, p in enumerate(space.points)
    }
    remaining = set(range(n))
    chosen = []
    while remaining:
        best = max(range(n), key=lambda i: (len(cover[i] & remaining), -i))
        chosen.append(best)
        remaining -= cover[best]
    return tuple(space.points[i] for i in chosen)


def _floyd_warshall(d: list[list[float]]) -> None:
    n = len(d)
    for k in range(n):
        for i in range(n):
            dik = d[i][k]
            for j in range(n):
                alt = dik + d[k][j]
                if alt < d[i][j]:
                    d[i][j] = alt


def _random_metric(rng: random.Random, n: int) -> list[list[float]]:
    # Dyadic edge weights (multiples of 1/8) keep shortest-path sums exact in
    # floating point, so the induced step-function triangle checks are exact.
    inf = math.inf
    d = [[0.0 if i == j else inf for j in range(n)] for i in range(n)]
    order = list(range(n))
    rng.shuffle(order)
    for k in range(1, n):
        a, b = order[k], order[rng.randrange(k)]
        w = rng.randint(2, 24) / 8.0
        d[a][b] = d[b][a] = min(d[a][b], w)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.3:
                w = rng.randint(2, 24) / 8.0
                d[i][j] = d[j][i] = min(d[i][j], w)
    _floyd_warshall(d)
    return d


def _relax_to_triangle(
    matrix: list[list[StepCdf]], star: TriangleFunction, max_sweeps: int
) -> bool:
    """Raise entries until the triangle inequality holds; True on fixpoint."""
    n = len(matrix)
    for _ in range(max_sweeps):
        changed = False
        for i in range(n):
            for j in range(i + 1, n):
                for q in range(n):
                    if q == i or q == j:
                        continue
                    cand = star(matrix[i][q], matrix[q][j])
                    if not leq(cand, matrix[i][j]):
                        merged = pointwise_sup([matrix[i][j], cand])
                        matrix[i][j] = matrix[j][i] = merged
                        changed = True
        if not changed:
            return True
    return False


def gen_space(
    seed: int,
    n: int,
    model: str = "metric",
    star: TriangleFunction | None = None,
) -> ProbMetricSpace:
    """Seeded random valid space on points ``p0 .. p{n-1}``.

    model="metric": random connected weighted graph, shortest-path metric,
    embedded as unit steps at the distances.
    model="repair": random symmetric step-function matrix, then iterated
    sup-relaxation toward the triangle inequality; off-diagonal entries that
    collapse onto the unit step at 0 are redrawn.  Raises GenerationFailed
    when relaxation does not reach a fixpoint under the sweep cap or the
    identity axiom cannot be restored.
    """
    if n < 1:
        raise PreconditionViolated(f"need at least one point, got n={n}")
    if star is None:
        star = STAR_MIN
    labels = tuple(f"p{i}" for i in range(n))
    if model == "metric":
        rng = random.Random(f"space:metric:{seed}:{n}")
        if n == 1:
            return make_space(labels, [[H0]], star)
        return from_classical_metric(labels, _random_metric(rng, n), star)
    if model != "repair":
        raise PreconditionViolated(f"unknown model {model!r}")
    rng = random.Random(f"space:repair:{seed}:{n}")
    if n == 1:
        return make_space(labels, [[H0]], star)

    def draw() -> StepCdf:
        while True:
            F = random_step_cdf(rng, max_breaks=3)
            if not approx_equal(F, H0):
                return F

    matrix: list[list[StepCdf]] = [[H0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            matrix[i][j] = matrix[j][i] = draw()
    max_sweeps = 10 * n**3
    for _ in range(10):
        if not _relax_to_triangle(matrix, star, max_sweeps):
            raise GenerationFailed(f"triangle relaxation did not converge in {max_sweeps} sweeps")
        bad = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if approx_equal(matrix[i][j], H0)
        ]
        if not bad:
            return make_space(labels, matrix, star)
        for i, j in bad:
            matrix[i][j] = matrix[j][i] = draw()
    raise GenerationFailed("could not restore the identity axiom after 10 redraws")


def gen_spaces(
    seed: int, count: int, max_points: int = 8, star: TriangleFunction | None = None
) -> Iterable[ProbMetricSpace]:
    """Seeded stream mixing both generator models; used by property suites."""
    rng = random.Random(f"spaces:{seed}")
    for k in range(count):
        n = rng.randint(1, max_points)
        model = "metric" if rng.random() < 0.5 else "repair"
        yield gen_space(seed + 1000 * k, n, model, star)
