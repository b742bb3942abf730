"""Finite preclosure (Čech closure) operators.

Additive preclosures are stored as a boolean singleton matrix
``step[i, j] = (j in cl{i})``; by additivity ``cl(A)`` is the union of the rows
of ``A``.  Non-additive operators wrap an arbitrary monotone subset map and
are limited to grounds small enough for exhaustive subset scans.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import combinations, product as _cartesian
from typing import Callable

import numpy as np

from ._numeric import FLOAT, exceeds
from .core import CostSpace, ParameterError

EXHAUSTIVE_LIMIT = 16


class GroundSizeError(ValueError):
    """Ground set too large for an exhaustive subset scan."""


class GroundMismatchError(ValueError):
    pass


class AdditivePreclosure:
    def __init__(self, ground, step):
        self.ground = tuple(ground)
        step = np.array(step, dtype=bool)
        n = len(self.ground)
        if step.shape != (n, n):
            raise ValueError(f"step matrix must be {n}x{n}")
        # extensivity on singletons is part of the representation
        step[np.arange(n), np.arange(n)] = True
        step.setflags(write=False)
        self.step = step
        self.pos = {x: i for i, x in enumerate(self.ground)}

    def __repr__(self) -> str:
        return f"AdditivePreclosure(n={len(self.ground)})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, AdditivePreclosure) and self.ground == other.ground
                and bool(np.array_equal(self.step, other.step)))

    def closure(self, subset) -> frozenset:
        idx = [self.pos[x] for x in subset]
        if not idx:
            return frozenset()
        row = self.step[idx].any(axis=0)
        return frozenset(self.ground[j] for j in np.flatnonzero(row))

    __call__ = closure

    def is_transitive(self) -> bool:
        s = self.step.astype(np.int64)
        return bool(np.all((s @ s > 0) <= self.step))


class GeneralPreclosure:
    """Subset map ``rule(frozenset) -> frozenset`` on a finite ground."""

    def __init__(self, ground, rule: Callable[[frozenset], frozenset]):
        self.ground = tuple(ground)
        self.rule = rule
        self.pos = {x: i for i, x in enumerate(self.ground)}

    @classmethod
    def from_table(cls, ground, table: dict) -> "GeneralPreclosure":
        table = {frozenset(k): frozenset(v) for k, v in table.items()}
        return cls(ground, lambda a: table[frozenset(a)])

    def closure(self, subset) -> frozenset:
        return frozenset(self.rule(frozenset(subset)))

    __call__ = closure

    def __repr__(self) -> str:
        return f"GeneralPreclosure(n={len(self.ground)})"


def preclosure_from_cost(space: CostSpace, r) -> AdditivePreclosure:
    """Outward ``r``-thickening: ``cl{i} = {j : c(i, j) <= r}``."""
    if r < 0:
        raise ParameterError("radius must be nonnegative")
    n = len(space)
    step = [[not exceeds(space.cost[i][j], r, space.mode, space.tol) for j in range(n)]
            for i in range(n)]
    return AdditivePreclosure(space.labels, step)


def preclosure_intersection(space: CostSpace) -> AdditivePreclosure:
    """Intersection over all ``r > 0`` of the ``r``-thickenings.

    On a finite space this keeps only zero-cost steps, i.e. it is the identity
    operator whenever off-diagonal costs are positive.
    """
    n = len(space)
    step = [[space.cost[i][j] == 0 if space.mode != FLOAT else space.cost[i][j] <= space.tol
             for j in range(n)] for i in range(n)]
    pre = AdditivePreclosure(space.labels, step)
    if not pre.step[~np.eye(n, dtype=bool)].any():
        warnings.warn("intersection preclosure degenerates to the identity on this finite space",
                      stacklevel=2)
    return pre


def preclosure_from_digraph(vertices, edges) -> AdditivePreclosure:
    """``cl{v} = {v} ∪ out-neighbours(v)``."""
    pos = {v: i for i, v in enumerate(vertices)}
    step = np.zeros((len(pos), len(pos)), dtype=bool)
    for a, b in edges:
        step[pos[a], pos[b]] = True
    return AdditivePreclosure(vertices, step)


def digraph_from_preclosure(pre: AdditivePreclosure) -> list:
    """Edges ``x -> y`` for every ``y != x`` in ``cl{x}``."""
    n = len(pre.ground)
    return [(pre.ground[i], pre.ground[j]) for i in range(n) for j in range(n)
            if i != j and pre.step[i, j]]


def _subsets(ground):
    for k in range(len(ground) + 1):
        for combo in combinations(ground, k):
            yield frozenset(combo)


def _sampled_subsets(ground, samples: int, rng: np.random.Generator):
    n = len(ground)
    yield frozenset()
    yield frozenset(ground)
    for x in ground:
        yield frozenset((x,))
    for _ in range(samples):
        # vary the density so small and large subsets both appear
        mask = rng.random(n) < rng.uniform(0.05, 0.6)
        yield frozenset(x for x, m in zip(ground, mask) if m)


def _scan(ground, samples, rng):
    if len(ground) <= EXHAUSTIVE_LIMIT:
        return _subsets(ground), False
    if samples is None:
        raise GroundSizeError(f"ground of size {len(ground)} exceeds {EXHAUSTIVE_LIMIT}; "
                              "pass samples= for a sampled check")
    return _sampled_subsets(ground, samples, rng or np.random.default_rng(0)), True


@dataclass
class PreclosureReport:
    empty: bool            # cl(∅) = ∅
    extensive: bool        # A ⊆ cl(A)
    additive: bool         # cl(A ∪ B) = cl(A) ∪ cl(B)
    idempotent: bool       # cl(cl(A)) = cl(A)
    monotone: bool = True
    sampled: bool = False
    failures: dict = field(default_factory=dict)

    @property
    def pretopology(self) -> bool:
        return self.empty and self.extensive and self.additive

    @property
    def topology(self) -> bool:
        return self.pretopology and self.idempotent


def check_axioms(pre, samples: int | None = None, rng=None) -> PreclosureReport:
    """Which of: empty set fixed, extensive, additive, idempotent hold.

    Additive operators are checked structurally (idempotency = transitivity of
    the step relation).  General ones are scanned over every subset when the
    ground has at most 16 points; larger grounds need ``samples`` and the
    report is then flagged ``sampled``.  Additivity is tested in the
    equivalent form ``cl(A) = ∪_{a ∈ A} cl{a}`` (with ``cl(∅) = ∅``).
    """
    if isinstance(pre, AdditivePreclosure):
        return PreclosureReport(True, True, True, pre.is_transitive())

    subsets, sampled = _scan(pre.ground, samples, rng)
    cl = pre.closure
    singles = {x: cl({x}) for x in pre.ground}
    fails: dict = {}
    rep = PreclosureReport(empty=not cl(frozenset()), extensive=True, additive=True,
                           idempotent=True, monotone=True, sampled=sampled)
    if not rep.empty:
        fails["empty"] = frozenset()
    seen = []
    for a in subsets:
        ca = cl(a)
        if rep.extensive and not a <= ca:
            rep.extensive = False
            fails["extensive"] = a
        union = frozenset().union(*(singles[x] for x in a)) if a else frozenset()
        if rep.additive and ca != union:
            rep.additive = False
            fails["additive"] = a
        if rep.idempotent and cl(ca) != ca:
            rep.idempotent = False
            fails["idempotent"] = a
        seen.append((a, ca))
    if not sampled:
        cache = dict(seen)
        for x in pre.ground:
            for a, ca in seen:
                if x not in a:
                    b = a | {x}
                    if not ca <= cache[b]:
                        rep.monotone = False
                        fails["monotone"] = (a, b)
                        break
            if not rep.monotone:
                break
    rep.failures = fails
    return rep


def _image(f: dict, subset) -> frozenset:
    return frozenset(f[x] for x in subset)


def is_continuous(f: dict, preX, preZ, samples: int | None = None, rng=None) -> bool:
    """``f(cl B) ⊆ cl f(B)`` for every subset ``B`` of the domain.

    Singletons suffice when both operators are additive.
    """
    missing = [x for x in preX.ground if x not in f]
    if missing:
        raise ValueError(f"map undefined on {missing!r}")
    if isinstance(preX, AdditivePreclosure) and isinstance(preZ, AdditivePreclosure):
        return all(_image(f, preX.closure({x})) <= preZ.closure({f[x]}) for x in preX.ground)
    subsets, _ = _scan(preX.ground, samples, rng)
    return all(_image(f, preX.closure(b)) <= preZ.closure(_image(f, b)) for b in subsets)


def compare(pre1, pre2) -> str:
    """``'equal'``, ``'finer'`` (pre1 ⊆ pre2 on every set), ``'coarser'`` or
    ``'incomparable'``."""
    if pre1.ground != pre2.ground:
        raise GroundMismatchError("preclosures live on different grounds")
    if isinstance(pre1, AdditivePreclosure) and isinstance(pre2, AdditivePreclosure):
        le = bool(np.all(pre1.step <= pre2.step))
        ge = bool(np.all(pre2.step <= pre1.step))
    else:
        subsets, _ = _scan(pre1.ground, None, None)
        le = ge = True
        for a in subsets:
            c1, c2 = pre1.closure(a), pre2.closure(a)
            le = le and c1 <= c2
            ge = ge and c2 <= c1
            if not (le or ge):
                break
    if le and ge:
        return "equal"
    if le:
        return "finer"
    if ge:
        return "coarser"
    return "incomparable"


def product_preclosure(pre1: AdditivePreclosure, pre2: AdditivePreclosure, form: str = "additive"):
    """Preclosure on the product ground ``[(x, y), ...]`` (row-major).

    ``form='rectangle'`` returns the operator ``B -> cl(π1 B) × cl(π2 B)``,
    which is not additive on non-rectangular sets.  ``form='additive'``
    returns the additive operator generated by ``cl{(x, y)} = cl{x} × cl{y}``.
    Both agree on singletons and rectangles.
    """
    ground = tuple(_cartesian(pre1.ground, pre2.ground))
    if form == "additive":
        step = (pre1.step[:, None, :, None] & pre2.step[None, :, None, :]).reshape(len(ground), len(ground))
        return AdditivePreclosure(ground, step)
    if form == "rectangle":
        def rule(b):
            if not b:
                return frozenset()
            xs = pre1.closure({x for x, _ in b})
            ys = pre2.closure({y for _, y in b})
            return frozenset(_cartesian(xs, ys))
        return GeneralPreclosure(ground, rule)
    raise ParameterError(f"unknown product form {form!r}")


def projection(ground, k: int) -> dict:
    """Coordinate map ``(x, y) -> x`` (k=0) or ``-> y`` (k=1)."""
    return {p: p[k] for p in ground}


def preclosure_to_json(pre: AdditivePreclosure) -> dict:
    return {"labels": list(pre.ground), "step": pre.step.astype(int).tolist()}


def preclosure_from_json(obj: dict) -> AdditivePreclosure:
    return AdditivePreclosure(obj["labels"], np.array(obj["step"], dtype=bool))


def has_nonconstant_loop(pre: AdditivePreclosure, base) -> bool:
    """Whether a continuous nonconstant loop of the one-step discrete interval
    can start and end at ``base``: ``base`` must lie on a directed cycle of the
    step relation."""
    n = len(pre.ground)
    adj = pre.step & ~np.eye(n, dtype=bool)
    start = pre.pos[base]
    frontier, seen = [start], set()
    while frontier:
        i = frontier.pop()
        for j in np.flatnonzero(adj[i]):
            if j == start:
                return True
            if j not in seen:
                seen.add(j)
                frontier.append(j)
    return False

