"""Discrete chains in a cost space.

A chain is a tuple of labels ``(x0, ..., xk)``.  Its timestamps are the
cumulative edge costs, so a chain is *tachistic* when every sub-pair cost
telescopes, and *chronodesic-tight* when every consecutive triple does.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from ._numeric import DEFAULT_TOLERANCE, FLOAT, INF, RATIONAL, close, coerce, is_inf
from .core import CostInputError, CostSpace, ParameterError


class UnreachableEdgeError(ValueError):
    """A chain uses a step of infinite cost."""


class EndpointMismatchError(ValueError):
    pass


def chain_length(space: CostSpace, chain: Sequence):
    """Sum of consecutive costs.  A one-point chain has length 0."""
    total = 0
    for a, b in zip(chain, chain[1:]):
        step = space.c(a, b)
        if is_inf(step):
            raise UnreachableEdgeError(f"no finite step {a!r} -> {b!r}")
        total = total + step
    return total


def path_cost_closure(weights, labels=None, mode: str = RATIONAL,
                      tol: float = DEFAULT_TOLERANCE) -> CostSpace:
    """All-pairs cheapest chain cost (min-plus transitive closure).

    ``weights`` is a square matrix (or a :class:`CostSpace`) with zero
    diagonal; ``INF`` marks a missing edge.  Unreachable pairs stay ``INF``.
    """
    if isinstance(weights, CostSpace):
        labels, mode, tol = weights.labels, weights.mode, weights.tol
        rows = [list(r) for r in weights.cost]
    else:
        raw = weights.tolist() if isinstance(weights, np.ndarray) else weights
        try:
            rows = [[coerce(x, mode) for x in r] for r in raw]
        except ValueError as exc:
            raise CostInputError(str(exc)) from None
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise CostInputError("weight matrix must be square")
    if any(x < 0 for r in rows for x in r):
        raise CostInputError("negative weight")
    if any(rows[i][i] != 0 for i in range(n)):
        raise CostInputError("weights must vanish on the diagonal")
    labels = tuple(range(n)) if labels is None else tuple(labels)

    if mode == FLOAT:
        d = np.array(rows, dtype=float)
        for k in range(n):
            np.minimum(d, d[:, k:k + 1] + d[k:k + 1, :], out=d)
        return CostSpace(labels, tuple(map(tuple, d.tolist())), mode, tol)

    d = rows
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if is_inf(dik):
                continue
            di = d[i]
            for j in range(n):
                v = dik + dk[j]
                if v < di[j]:
                    di[j] = v
    return CostSpace(labels, tuple(map(tuple, d)), mode, tol)


def _tight(space: CostSpace, a, b, length) -> bool:
    return close(space.c(a, b), length, space.mode, space.tol)


def is_tachistic(space: CostSpace, chain: Sequence) -> bool:
    """``c(x_i, x_j)`` equals the chain length between positions ``i < j`` for
    every pair."""
    prefix = [0]
    for a, b in zip(chain, chain[1:]):
        step = space.c(a, b)
        if is_inf(step):
            return False
        prefix.append(prefix[-1] + step)
    k = len(chain)
    return all(_tight(space, chain[i], chain[j], prefix[j] - prefix[i])
               for i in range(k) for j in range(i + 1, k))


def is_chronodesic_tight(space: CostSpace, chain: Sequence) -> bool:
    """Every consecutive triple is tight; a single finite edge always qualifies."""
    steps = [space.c(a, b) for a, b in zip(chain, chain[1:])]
    if not steps or any(is_inf(s) for s in steps):
        return False
    return all(_tight(space, chain[i - 1], chain[i + 1], steps[i - 1] + steps[i])
               for i in range(1, len(chain) - 1))


class EnumeratedChain(NamedTuple):
    points: tuple
    maximal: bool  # no single-point insertion keeps the chain tachistic


def _insertable(space: CostSpace, chain: tuple) -> bool:
    members = set(chain)
    for pos in range(1, len(chain)):
        for x in space.labels:
            if x in members:
                continue
            if is_tachistic(space, chain[:pos] + (x,) + chain[pos:]):
                return True
    return False


def enumerate_tachistic_chains(space: CostSpace, p, q, max_edges: int) -> list:
    """All tachistic chains from ``p`` to ``q`` with at most ``max_edges`` edges.

    Each result is flagged ``maximal`` when no single extra point can be
    inserted without breaking tightness (a finite stand-in for
    non-extendability; supersets of several points are not searched).
    Search prunes any prefix that is not itself tachistic.
    """
    if p == q:
        raise ParameterError("endpoints must differ")
    if max_edges < 1:
        raise ParameterError("max_edges must be >= 1")
    c = space.c
    mode, tol = space.mode, space.tol
    found = []

    def extend(chain, lengths):
        # lengths[i] = chain length from chain[i] to chain[-1]
        if len(chain) - 1 >= max_edges:
            return
        last = chain[-1]
        for x in space.labels:
            if x in chain:
                continue
            step = c(last, x)
            if is_inf(step):
                continue
            new = [l + step for l in lengths] + [0]
            if all(close(c(chain[i], x), new[i], mode, tol) for i in range(len(chain))):
                nxt = chain + (x,)
                if x == q:
                    found.append(nxt)
                else:
                    extend(nxt, new)

    extend((p,), [0])
    pos = {x: i for i, x in enumerate(space.labels)}
    found.sort(key=lambda ch: (len(ch), [pos[x] for x in ch]))
    return [EnumeratedChain(ch, not _insertable(space, ch)) for ch in found]


def compose_chains(c1: Sequence, c2: Sequence) -> tuple:
    """Concatenate two chains sharing an endpoint; one-point chains are units."""
    if not c1 or not c2:
        raise ParameterError("chains must be nonempty")
    if c1[-1] != c2[0]:
        raise EndpointMismatchError(f"{c1[-1]!r} != {c2[0]!r}")
    return tuple(c1) + tuple(c2[1:])


@dataclass(frozen=True)
class PathChainSum:
    """Finite formal integer combination of vertex sequences."""

    terms: tuple = ()  # sorted ((path, coefficient), ...), no zero coefficients

    @classmethod
    def of(cls, mapping) -> "PathChainSum":
        acc = defaultdict(int)
        items = mapping.items() if hasattr(mapping, "items") else mapping
        for path, k in items:
            acc[tuple(path)] += k
        return cls(tuple(sorted(((p, k) for p, k in acc.items() if k), key=_path_key)))

    @classmethod
    def path(cls, *vertices) -> "PathChainSum":
        return cls.of({tuple(vertices): 1})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other: "PathChainSum") -> "PathChainSum":
        return PathChainSum.of(list(self.terms) + list(other.terms))

    def __sub__(self, other: "PathChainSum") -> "PathChainSum":
        return self + other.scale(-1)

    def scale(self, k: int) -> "PathChainSum":
        return PathChainSum.of([(p, k * v) for p, v in self.terms])

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)


def _path_key(item):
    path = item[0]
    return (len(path), [repr(v) for v in path])


def boundary(chain_sum: PathChainSum) -> PathChainSum:
    """Alternating sum of single-vertex deletions, extended linearly.

    A single-vertex path has zero boundary.
    """
    acc = defaultdict(int)
    for path, k in chain_sum.terms:
        if len(path) < 2:
            continue
        for j in range(len(path)):
            acc[path[:j] + path[j + 1:]] += k if j % 2 == 0 else -k
    return PathChainSum.of(acc)


def chain_report(space: CostSpace, chain: Sequence) -> dict:
    try:
        length = chain_length(space, chain)
    except UnreachableEdgeError:
        length = INF
    return {
        "tachistic": is_tachistic(space, chain),
        "chronodesic_tight": is_chronodesic_tight(space, chain),
        "length": length,
    }
