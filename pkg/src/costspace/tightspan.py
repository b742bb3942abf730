"""Function pairs ``(f, g)`` with ``f(p) = sup_q (c(p, q) - g(q))``.

``tighten_f`` produces the ``f`` side from ``g``.  ``tighten_g`` is the
mirror image (source and target exchanged).  It is an extension: a pair is
*admissible* when only the ``f`` equation holds and *bi-tight* when both do.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

from ._numeric import INF, close, coerce, exceeds, is_inf
from .core import CostSpace, ParameterError


class UnboundedSupWarning(UserWarning):
    """No finite term entered a supremum, the entry was set to INF."""


@dataclass(frozen=True)
class FunctionPair:
    f: tuple   # values in label order
    g: tuple

    def as_dicts(self, labels) -> tuple:
        return dict(zip(labels, self.f)), dict(zip(labels, self.g))


def _values(space: CostSpace, h) -> tuple:
    """Accept a label mapping or a sequence in label order."""
    if isinstance(h, dict):
        missing = [x for x in space.labels if x not in h]
        if missing:
            raise ParameterError(f"function undefined on {missing!r}")
        h = [h[x] for x in space.labels]
    h = tuple(coerce(v, space.mode) for v in h)
    if len(h) != len(space):
        raise ParameterError("function length does not match the ground set")
    return h


def _sup(terms) -> object:
    best = None
    for v in terms:
        if best is None or v > best:
            best = v
    return best


def _row_sup(space: CostSpace, p: int, g: tuple):
    return _sup(space.cost[p][q] - g[q] for q in range(len(space))
                if not is_inf(space.cost[p][q]) and not is_inf(g[q]))


def _col_sup(space: CostSpace, q: int, f: tuple):
    return _sup(space.cost[p][q] - f[p] for p in range(len(space))
                if not is_inf(space.cost[p][q]) and not is_inf(f[p]))


def _tighten(space, h, sup) -> tuple:
    h = _values(space, h)
    if not len(space):
        raise ParameterError("ground set is empty")
    out = []
    for i in range(len(space)):
        v = sup(space, i, h)
        if v is None:
            warnings.warn(f"no finite term for {space.labels[i]!r}; value set to inf",
                          UnboundedSupWarning, stacklevel=3)
            v = INF
        out.append(v)
    return tuple(out)


def tighten_f(space: CostSpace, g) -> tuple:
    """``f(p) = max_q (c(p, q) - g(q))`` over ``q`` with finite terms."""
    return _tighten(space, g, _row_sup)


def tighten_g(space: CostSpace, f) -> tuple:
    """``g(q) = max_p (c(p, q) - f(p))``, the mirrored tightening."""
    return _tighten(space, f, _col_sup)


def _defect(space, lhs, rhs_fn, other) -> tuple:
    worst, skipped, ok = 0, 0, True
    for i in range(len(space)):
        if is_inf(lhs[i]):
            skipped += 1
            continue
        rhs = rhs_fn(space, i, other)
        if rhs is None:
            skipped += 1
            continue
        d = abs(lhs[i] - rhs)
        if d > worst:
            worst = d
        if not close(lhs[i], rhs, space.mode, space.tol):
            ok = False
    return ok, worst, skipped


def is_admissible_pair(space: CostSpace, f, g) -> tuple:
    """Check ``f(p) = sup_q (c(p, q) - g(q))`` at every ``p`` with finite ``f(p)``.

    Returns ``(ok, max_defect, skipped)`` where ``skipped`` counts points left
    out because ``f(p)`` or the supremum is infinite.
    """
    return _defect(space, _values(space, f), _row_sup, _values(space, g))


def is_bitight_pair(space: CostSpace, f, g) -> tuple:
    """Admissible and additionally ``g(q) = sup_p (c(p, q) - f(p))``."""
    f, g = _values(space, f), _values(space, g)
    ok1, d1, s1 = _defect(space, f, _row_sup, g)
    ok2, d2, s2 = _defect(space, g, _col_sup, f)
    return ok1 and ok2, max(d1, d2), s1 + s2


def kuratowski_pair(space: CostSpace, x) -> FunctionPair:
    """``(c(., x), c(x, .))``."""
    i = space.index(x)
    n = len(space)
    return FunctionPair(tuple(space.cost[p][i] for p in range(n)), space.cost[i])


def iterate_tight_pairs(space: CostSpace, g0, max_iter: int = 20) -> list:
    """Alternate ``f_k = tighten_f(g_{k-1})`` and ``g_k = tighten_g(f_k)``.

    Step ``k`` records ``(f_k, g_{k-1})``, which is admissible by
    construction.  Stops once a recorded pair repeats or after ``max_iter``
    steps.  Infinite entries stay in the trace.
    """
    if max_iter < 1:
        raise ParameterError("max_iter must be >= 1")
    g = _values(space, g0)
    trace = []
    for _ in range(max_iter):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UnboundedSupWarning)
            f = tighten_f(space, g)
            pair = FunctionPair(f, g)
            if trace and _same(space, trace[-1], pair):
                break
            trace.append(pair)
            g = tighten_g(space, f)
    return trace


def _same(space, a: FunctionPair, b: FunctionPair) -> bool:
    return all(close(x, y, space.mode, space.tol) for x, y in zip(a.f + a.g, b.f + b.g))


def pointwise_le(space: CostSpace, h1, h2) -> bool:
    """``h1 <= h2`` everywhere (within tolerance in float mode)."""
    return not any(exceeds(a, b, space.mode, space.tol)
                   for a, b in zip(_values(space, h1), _values(space, h2)))


def pair_to_json(space: CostSpace, pair: FunctionPair, fmt) -> dict:
    f, g = pair.as_dicts(space.labels)
    return {"f": {str(k): fmt(v) for k, v in f.items()}, "g": {str(k): fmt(v) for k, v in g.items()}}


def pair_from_json(space: CostSpace, obj: dict) -> FunctionPair:
    by_name = {str(x): x for x in space.labels}
    out = []
    for side in ("f", "g"):
        if side not in obj:
            raise ParameterError(f"pair JSON lacks {side!r}")
        m = {by_name[k] if k in by_name else k: v for k, v in obj[side].items()}
        out.append(_values(space, m))
    return FunctionPair(*out)
