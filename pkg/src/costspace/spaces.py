"""Ready-made cost spaces used throughout the docs, demos, and tests."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from ._numeric import FLOAT, INF, RATIONAL
from .chains import path_cost_closure
from .core import CostSpace


def _grid(n: int) -> list:
    return [Fraction(k, n - 1) for k in range(n)]


def interval(n: int) -> CostSpace:
    """``n`` equally spaced points of [0, 1]; ``c(s, t) = t - s`` forward, ``INF`` backward."""
    pts = _grid(n)
    cost = [[t - s if s <= t else INF for t in pts] for s in pts]
    return CostSpace(tuple(pts), cost)


def circle(n: int) -> CostSpace:
    """``n`` points ``k/n`` on the circle [0, 1) with the counterclockwise cost
    ``t - s`` (``1 + t - s`` when wrapping)."""
    pts = [Fraction(k, n) for k in range(n)]
    cost = [[t - s if s <= t else 1 + t - s for t in pts] for s in pts]
    return CostSpace(tuple(pts), cost)


def asymmetric_interval(n: int) -> CostSpace:
    """Grid of [0, 1] with ``c(p, q) = q - p`` forward and ``2(p - q)`` backward."""
    pts = _grid(n)
    cost = [[q - p if p <= q else 2 * (p - q) for q in pts] for p in pts]
    return CostSpace(tuple(pts), cost)


def uniform(n: int, value=1) -> CostSpace:
    cost = [[0 if i == j else value for j in range(n)] for i in range(n)]
    return CostSpace(tuple(range(n)), cost)


def directed_cycle(forward=1, backward=2, labels=("a", "b", "c")) -> CostSpace:
    """Three points where the step ``a -> b -> c -> a`` costs ``forward`` and the
    reverse step costs ``backward``."""
    n = len(labels)
    cost = [[0] * n for _ in range(n)]
    for i in range(n):
        cost[i][(i + 1) % n] = forward
        cost[(i + 1) % n][i] = backward
    return CostSpace(tuple(labels), cost)


def tripod(leg=1) -> CostSpace:
    """Three leaves joined through a centre ``t``; each leaf is ``leg`` from ``t``."""
    labels = ("x1", "x2", "x3", "t")
    cost = [[0 if i == j else 2 * leg for j in range(4)] for i in range(4)]
    for i in range(3):
        cost[i][3] = cost[3][i] = leg
    return CostSpace(labels, cost)


DIAGRAM_LABELS = ("p1", "p2", "p3", "p4")


def diagram_weights(forward=1, backward=10) -> list:
    """Edge weights of the four-point digraph ``p1->p2->p3->p4`` plus the shortcut
    ``p1->p4``; every arrow costs ``forward``, its reverse ``backward``."""
    idx = {p: i for i, p in enumerate(DIAGRAM_LABELS)}
    w = [[0 if i == j else INF for j in range(4)] for i in range(4)]
    for a, b in (("p1", "p2"), ("p2", "p3"), ("p3", "p4"), ("p1", "p4")):
        w[idx[a]][idx[b]] = forward
        w[idx[b]][idx[a]] = backward
    return w


def diagram(forward=1, backward=10) -> CostSpace:
    return path_cost_closure(diagram_weights(forward, backward), labels=DIAGRAM_LABELS)


DIAGRAM_EDGES = (("p1", "p2"), ("p2", "p3"), ("p3", "p4"), ("p1", "p4"))


def random_space(n: int, rng: np.random.Generator, low: int = 1, high: int = 20,
                 p_missing: float = 0.0, mode: str = RATIONAL) -> CostSpace:
    """Random valid cost space: integer weights in ``[low, high]`` closed under
    cheapest chains.  ``p_missing`` drops off-diagonal edges (possibly leaving
    unreachable pairs)."""
    w = rng.integers(low, high + 1, size=(n, n)).astype(object)
    for i in range(n):
        for j in range(n):
            if i == j:
                w[i][j] = 0
            elif p_missing and rng.random() < p_missing:
                w[i][j] = INF
            else:
                w[i][j] = int(w[i][j])
    space = path_cost_closure(w.tolist())
    if mode == FLOAT:
        return CostSpace(space.labels, [[float(x) for x in r] for r in space.cost], FLOAT)
    return space


def random_float_space(n: int, rng: np.random.Generator, low: float = 0.2,
                       high: float = 1.0) -> CostSpace:
    w = rng.uniform(low, high, size=(n, n))
    np.fill_diagonal(w, 0.0)
    return path_cost_closure(w, mode=FLOAT)
