"""Shared fixtures and brute-force oracles.

Oracles here are written independently of the library code they check:
they enumerate directly from the definitions and are deliberately slow.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest

from costspace.core import CostSpace
from costspace._numeric import INF


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def brute_closure(weights):
    """Cheapest simple path by enumerating every vertex sequence."""
    n = len(weights)
    out = [[INF] * n for _ in range(n)]
    for i in range(n):
        out[i][i] = 0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            others = [k for k in range(n) if k not in (i, j)]
            for r in range(len(others) + 1):
                for mid in itertools.permutations(others, r):
                    path = (i,) + mid + (j,)
                    total = 0
                    for a, b in zip(path, path[1:]):
                        total = total + weights[a][b]
                    if total < out[i][j]:
                        out[i][j] = total
    return out


def brute_betweenness(space: CostSpace) -> set:
    lab = space.labels
    out = set()
    for p, q, r in itertools.permutations(lab, 3):
        a, b, c = space.c(p, q), space.c(q, r), space.c(p, r)
        if INF in (a, b, c):
            continue
        if a + b == c:
            out.add((p, q, r))
    return out


def axiom_violations(triples: set, ground) -> int:
    """Count failures of distinctness, antisymmetry and the two transitivity
    laws by scanning every quadruple of labels (repetitions allowed: the laws
    quantify over all p, q, r, s)."""
    bad = 0
    for t in triples:
        if len(set(t)) < 3:
            bad += 1
        p, q, r = t
        if (q, p, r) in triples:
            bad += 1
    for a, b, c, d in itertools.product(ground, repeat=4):
        if (a, b, c) in triples and (a, c, d) in triples:
            bad += not ((a, b, d) in triples and (b, c, d) in triples)
        if (a, b, d) in triples and (b, c, d) in triples:
            bad += not ((a, c, d) in triples and (a, b, c) in triples)
    return bad


def naive_reduce(letters):
    """Scan for one adjacent cancelling pair at a time until none is left."""
    letters = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(letters) - 1):
            s, t, e = letters[i]
            if letters[i + 1] == (s, t, -e):
                del letters[i:i + 2]
                changed = True
                break
    return tuple(letters)


def random_weights(n, rng, low=1, high=20, p_missing=0.0):
    w = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                w[i][j] = INF if rng.random() < p_missing else int(rng.integers(low, high + 1))
    return w


def hyp2_grid(n=11):
    pts = [Fraction(k, n - 1) for k in range(n)]
    return pts, [[q - p if p <= q else 2 * (p - q) for q in pts] for p in pts]
