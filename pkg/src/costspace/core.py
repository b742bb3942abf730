"""Finite cost spaces: data model, axiom validation, and constructions.

A cost space is a finite labelled set with a directed cost
``c(p, q) in [0, inf]`` satisfying ``c(p, q) = 0`` iff ``p == q`` and the
directed triangle inequality ``c(p, r) <= c(p, q) + c(q, r)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as _cartesian
from typing import Hashable, Sequence

import numpy as np

from ._numeric import (
    DEFAULT_TOLERANCE,
    FLOAT,
    INF,
    MODES,
    RATIONAL,
    coerce,
    exceeds,
    half,
    is_inf,
)

Label = Hashable


class CostInputError(ValueError):
    """Malformed cost matrix: non-square, duplicate labels, negative or NaN entries."""


class ParameterError(ValueError):
    """An operation parameter is outside its allowed range."""


@dataclass(frozen=True)
class CostSpace:
    """Labelled finite set with a dense directed cost matrix.

    Construction only checks the matrix *shape* and entry domain; call
    :func:`validate_cost` for the axioms.  Instances are immutable.
    """

    labels: tuple
    cost: tuple
    mode: str = RATIONAL
    tol: float = DEFAULT_TOLERANCE
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        if len(set(labels)) != len(labels):
            raise CostInputError("duplicate labels")
        if self.mode not in MODES:
            raise CostInputError(f"unknown numeric mode {self.mode!r}")
        if self.mode == FLOAT and not self.tol > 0:
            raise CostInputError("tolerance must be positive in float mode")
        n = len(labels)
        rows = list(self.cost)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise CostInputError(f"cost matrix must be {n}x{n}")
        try:
            cost = tuple(tuple(coerce(x, self.mode) for x in row) for row in rows)
        except (ValueError, ZeroDivisionError) as exc:
            raise CostInputError(str(exc)) from None
        if any(x < 0 for row in cost for x in row):
            raise CostInputError("negative cost entry")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "cost", cost)
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(labels)})

    @classmethod
    def from_matrix(cls, matrix, labels: Sequence | None = None, mode: str = RATIONAL,
                    tol: float = DEFAULT_TOLERANCE) -> "CostSpace":
        matrix = [list(row) for row in (matrix.tolist() if isinstance(matrix, np.ndarray) else matrix)]
        if labels is None:
            labels = range(len(matrix))
        return cls(tuple(labels), tuple(tuple(r) for r in matrix), mode, tol)

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown label {label!r}") from None

    def c(self, p, q):
        """Cost from label ``p`` to label ``q``."""
        return self.cost[self._index[p]][self._index[q]]

    def array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.cost], dtype=float)

    def with_cost(self, cost, labels=None) -> "CostSpace":
        return CostSpace(self.labels if labels is None else labels, cost, self.mode, self.tol)

    def restrict(self, labels: Sequence) -> "CostSpace":
        idx = [self.index(p) for p in labels]
        return CostSpace(tuple(labels), tuple(tuple(self.cost[i][j] for j in idx) for i in idx),
                         self.mode, self.tol)


@dataclass
class ValidationReport:
    identity_violations: list = field(default_factory=list)  # (i, j, value)
    triangle_violations: list = field(default_factory=list)  # (i, k, j, slack)
    max_identity_defect: object = 0
    max_triangle_defect: object = 0

    @property
    def ok(self) -> bool:
        return not self.identity_violations and not self.triangle_violations

    def __bool__(self) -> bool:
        return self.ok


def _as_space(obj, mode: str = RATIONAL) -> CostSpace:
    if isinstance(obj, CostSpace):
        return obj
    return CostSpace.from_matrix(obj, mode=mode)


def validate_cost(space: CostSpace) -> ValidationReport:
    """Check positivity off the diagonal, zero diagonal, and the directed
    triangle inequality.

    ``triangle_violations`` holds ``(i, k, j, slack)`` meaning
    ``c(i, j) - c(i, k) - c(k, j) = slack > 0``; the intermediate point is
    listed second.
    """
    mode, tol = space.mode, space.tol
    c = space.cost
    n = len(space)
    rep = ValidationReport()
    for i in range(n):
        for j in range(n):
            v = c[i][j]
            if i == j:
                bad = v != 0 if mode == RATIONAL else v > tol
            else:
                bad = v == 0 if mode == RATIONAL else v <= tol
            if bad:
                rep.identity_violations.append((i, j, v))
    rep.max_identity_defect = max((c[i][i] for i in range(n)), default=0)

    if mode == FLOAT and n:
        a = space.array()
        via = a[:, :, None] + a[None, :, :]  # via[i, k, j] = c(i,k) + c(k,j)
        with np.errstate(invalid="ignore"):
            slack = a[:, None, :] - via
        slack = np.where(np.isnan(slack), -np.inf, slack)
        thresh = tol * np.maximum(1.0, np.where(np.isinf(a), 1.0, a))[:, None, :]
        for i, k, j in zip(*np.nonzero(slack > thresh)):
            rep.triangle_violations.append((int(i), int(k), int(j), float(slack[i, k, j])))
    else:
        for i in range(n):
            ci = c[i]
            for k in range(n):
                cik = ci[k]
                if is_inf(cik):
                    continue
                ck = c[k]
                for j in range(n):
                    via = cik + ck[j]
                    if exceeds(ci[j], via, mode, tol):
                        rep.triangle_violations.append((i, k, j, ci[j] - via))
    rep.max_triangle_defect = max((v[3] for v in rep.triangle_violations), default=0)
    return rep


def asymptotic_constants(matrix) -> tuple:
    """Smallest ``(C_id, C_tri)`` such that the matrix satisfies
    ``c(p,p) <= C_id`` and ``c(p,q) <= c(p,r) + c(r,q) + C_tri``.

    Triples with an infinite leg are skipped.  Nonzero diagonals are allowed.
    """
    space = _as_space(matrix)
    c = space.cost
    n = len(space)
    c_id = max((c[i][i] for i in range(n)), default=0)
    c_tri = 0
    for p in range(n):
        for r in range(n):
            if is_inf(c[p][r]):
                continue
            for q in range(n):
                if is_inf(c[p][q]) or is_inf(c[r][q]):
                    continue
                d = c[p][q] - c[p][r] - c[r][q]
                if d > c_tri:
                    c_tri = d
    return c_id, c_tri


def is_B_cost(matrix) -> tuple:
    """Shifted triangle test: subtract the off-diagonal minimum and check the
    triangle inequality on pairwise distinct triples.

    Returns ``(True, None)`` or ``(False, (p, r, q))`` for the first triple
    with ``f(p,q) - B > (f(p,r) - B) + (f(r,q) - B)``.
    """
    space = _as_space(matrix)
    c = space.cost
    n = len(space)
    off = [c[i][j] for i in range(n) for j in range(n) if i != j and not is_inf(c[i][j])]
    if n >= 2 and not off:
        raise ParameterError("all off-diagonal entries are infinite; shift undefined")
    if n < 3:
        return True, None
    b = min(off)
    for p in range(n):
        for r in range(n):
            if r == p or is_inf(c[p][r]):
                continue
            for q in range(n):
                if q == p or q == r or is_inf(c[r][q]):
                    continue
                lhs = c[p][q] - b
                rhs = (c[p][r] - b) + (c[r][q] - b)
                if exceeds(lhs, rhs, space.mode, space.tol):
                    return False, (space.labels[p], space.labels[r], space.labels[q])
    return True, None


def lawvere_from_weights(w, C, labels=None, mode: str = RATIONAL) -> CostSpace:
    """Cost ``c(p,q) = w(p,q) + C`` off the diagonal, ``0`` on it.

    Adding ``C >= max w`` makes every triangle inequality hold regardless of ``w``.
    """
    weights = _as_space(w, mode)
    C = coerce(C, weights.mode)
    if not C > 0:
        raise ParameterError("C must be positive")
    n = len(weights)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            x = weights.cost[i][j]
            if i == j:
                if x != 0:
                    raise ParameterError("weights must vanish on the diagonal")
                row.append(0)
            else:
                if x > C:
                    raise ParameterError(f"weight {x} exceeds bound C={C}")
                row.append(x + C)
        rows.append(row)
    lab = weights.labels if labels is None else labels
    return CostSpace(tuple(lab), tuple(map(tuple, rows)), weights.mode, weights.tol)


def symmetrize(space: CostSpace) -> CostSpace:
    """``d(x, y) = (c(x, y) + c(y, x)) / 2``."""
    c = space.cost
    n = len(space)
    cost = tuple(tuple(half(c[i][j] + c[j][i]) if not (is_inf(c[i][j]) or is_inf(c[j][i])) else INF
                       for j in range(n)) for i in range(n))
    return space.with_cost(cost)


def reverse(space: CostSpace) -> CostSpace:
    """``c'(p, q) = c(q, p)``."""
    n = len(space)
    return space.with_cost(tuple(tuple(space.cost[j][i] for j in range(n)) for i in range(n)))


def _combine(a, b, p):
    if is_inf(a) or is_inf(b):
        return INF
    if is_inf(p):
        return max(a, b)
    if p == 1:
        return a + b
    return (float(a) ** p + float(b) ** p) ** (1.0 / p)


def product(space1: CostSpace, space2: CostSpace, p=INF) -> CostSpace:
    """l_p product; labels are ``(x, y)`` pairs in row-major order.

    ``p = INF`` (default) is the max-combination.  Rational inputs stay exact
    for ``p in {1, INF}``; any other exponent produces a float-mode space.
    """
    if not (is_inf(p) or p >= 1):
        raise ParameterError("l_p exponent must be >= 1")
    exact = space1.mode == RATIONAL and space2.mode == RATIONAL and (is_inf(p) or p == 1)
    mode = RATIONAL if exact else FLOAT
    tol = min(space1.tol, space2.tol)
    pairs = list(_cartesian(range(len(space1)), range(len(space2))))
    labels = tuple((space1.labels[i], space2.labels[j]) for i, j in pairs)
    cost = tuple(
        tuple(_combine(space1.cost[i][k], space2.cost[j][m], p) for k, m in pairs)
        for i, j in pairs
    )
    return CostSpace(labels, cost, mode, tol)


def is_cost_morphism(f: dict, space1: CostSpace, space2: CostSpace) -> bool:
    """``c2(f(p), f(q)) <= c1(p, q)`` for all ``p, q`` (with tolerance if either
    space is in float mode)."""
    mode = FLOAT if FLOAT in (space1.mode, space2.mode) else RATIONAL
    tol = max(space1.tol, space2.tol)
    for p in space1.labels:
        for q in space1.labels:
            if exceeds(space2.c(f[p], f[q]), space1.c(p, q), mode, tol):
                return False
    return True


def to_float(space: CostSpace, tol: float = DEFAULT_TOLERANCE) -> CostSpace:
    return CostSpace(space.labels, tuple(tuple(float(x) for x in row) for row in space.cost), FLOAT, tol)


def to_rational(space: CostSpace) -> CostSpace:
    return CostSpace(space.labels, space.cost, RATIONAL, space.tol)
