"""Directed balls, medians, Gromov radii and directed curvature, hyperconvexity
deviation, and convexity checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from ._numeric import INF, close, coerce, exceeds, half, is_inf, ratio
from .core import CostSpace, ParameterError, symmetrize


class GeometryDomainError(ValueError):
    """An infinite cost where the construction needs a finite one."""


class DegenerateTripleError(GeometryDomainError):
    pass


class InfeasibleError(ValueError):
    """No ground point gives a finite deviation."""


def ball(space: CostSpace, center, t, direction: str = "outward") -> frozenset:
    """``{q : c(center, q) <= t}`` (outward) or ``{q : c(q, center) <= t}`` (inward)."""
    if t < 0:
        raise ParameterError("radius must be nonnegative")
    if direction not in ("outward", "inward"):
        raise ParameterError(f"unknown direction {direction!r}")
    out = direction == "outward"
    return frozenset(q for q in space.labels
                     if not exceeds(space.c(center, q) if out else space.c(q, center), t,
                                    space.mode, space.tol))


class GromovRadii(NamedTuple):
    r1: object
    r2: object
    r3: object


def _legs(space, x1, x2, x3):
    legs = space.c(x1, x2), space.c(x2, x3), space.c(x3, x1)
    if any(is_inf(v) for v in legs):
        raise GeometryDomainError(f"triple {(x1, x2, x3)!r} has an infinite directed leg")
    return legs


def gromov_radii(space: CostSpace, x1, x2, x3) -> GromovRadii:
    """Solve ``r1 + r2 = c(x1,x2)``, ``r2 + r3 = c(x2,x3)``, ``r3 + r1 = c(x3,x1)``.

    Radii can be negative for non-symmetric costs.
    """
    a, b, d = _legs(space, x1, x2, x3)
    return GromovRadii(half(a + d - b), half(a + b - d), half(b + d - a))


@dataclass
class CurvatureResult:
    rho: object
    witness: object
    radii: GromovRadii
    method: str                 # "closed_form" | "grid_oracle"
    boundary_flag: bool = False
    triple: tuple = field(default=())
    oracle_radii: tuple | None = None   # maximising sample, grid oracle only


def _score(space: CostSpace, triple, radii, x):
    return max(ratio(space.c(xi, x), ri) for xi, ri in zip(triple, radii))


def directed_curvature(space: CostSpace, x1, x2, x3, grid_step: float = 1e-3) -> CurvatureResult:
    """Curvature of the ordered triple.

    With all Gromov radii positive this is ``min_x max_i c(x_i, x) / r_i``
    over the ground set.  Otherwise the optimum sits on the boundary of the
    feasible radii and the grid oracle is used (``boundary_flag`` set).
    """
    triple = (x1, x2, x3)
    radii = gromov_radii(space, *triple)
    if all(r > 0 for r in radii):
        best, witness = INF, None
        for x in space.labels:
            s = _score(space, triple, radii, x)
            if s < best:
                best, witness = s, x
        return CurvatureResult(best, witness, radii, "closed_form", False, triple)
    res = grid_oracle_curvature(space, x1, x2, x3, grid_step)
    if is_inf(res.rho) and all(r <= 0 for r in radii):
        raise DegenerateTripleError(f"no finite curvature for {triple!r}")
    res.boundary_flag = True
    return res


def _pareto_candidates(a: float, b: float, d: float, step: float) -> np.ndarray:
    """Radii ``(r1, r2, r3)`` covering the Pareto-minimal boundary of
    ``{r >= 0 : r1+r2 >= a, r2+r3 >= b, r3+r1 >= d}`` at spacing ``step``,
    vertices included.

    The objective never increases when a radius grows, so its supremum over
    the feasible set is attained on that boundary.  Parametrised by ``r1``,
    the boundary is at most two points per value plus one segment at ``r1 = 0``.
    """
    top = max(a, b, d)
    r1_star = (a + d - b) / 2
    breaks = [0.0, a, d, a - b, d - b, r1_star, top]
    s = np.union1d(np.arange(0.0, top + step, step), [v for v in breaks if 0 <= v <= top])
    L2 = np.maximum(0.0, a - s)
    L3 = np.maximum(0.0, d - s)
    tight = L2 + L3 >= b
    pts = [np.column_stack([s[tight], L2[tight], L3[tight]])]
    lo = ~tight
    pts.append(np.column_stack([s[lo], L2[lo], b - L2[lo]]))
    pts.append(np.column_stack([s[lo], b - L3[lo], L3[lo]]))
    if a + d < b:
        r2 = np.union1d(np.arange(a, b - d, step), [a, b - d])
        pts.append(np.column_stack([np.zeros_like(r2), r2, b - r2]))
    return np.vstack(pts)


def _ratio_array(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        out = num / den
    out = np.where(den == 0, np.where(num == 0, 0.0, np.inf), out)
    return np.where(np.isinf(num), np.inf, out)


def grid_oracle_curvature(space: CostSpace, x1, x2, x3, grid_step: float = 1e-3) -> CurvatureResult:
    """Brute-force sup over feasible radii of ``min_x max_i c(x_i, x) / r_i``.

    Independent of the Gromov identities: the feasible polyhedron's
    minimal boundary is sampled at ``grid_step`` (plus its vertices) and the
    best sample is reported.
    """
    if not grid_step > 0:
        raise ParameterError("grid_step must be positive")
    triple = (x1, x2, x3)
    a, b, d = (float(v) for v in _legs(space, *triple))
    R = _pareto_candidates(a, b, d, grid_step)                       # (K, 3)
    C = np.array([[float(space.c(xi, x)) for x in space.labels] for xi in triple])  # (3, n)
    vals = _ratio_array(C[None, :, :], R[:, :, None]).max(axis=1)    # (K, n)
    inner = vals.min(axis=1)
    k = int(np.argmax(inner))
    j = int(np.argmin(vals[k]))
    radii = gromov_radii(space, *triple)
    return CurvatureResult(float(inner[k]), space.labels[j], radii, "grid_oracle",
                           any(r <= 0 for r in radii), triple, tuple(map(float, R[k])))


def symmetrized_curvature(space: CostSpace, x1, x2, x3, grid_step: float = 1e-3) -> CurvatureResult:
    """Directed curvature of the half-sum symmetrisation."""
    return directed_curvature(symmetrize(space), x1, x2, x3, grid_step)


def all_triples_curvature(space: CostSpace, oracle: bool = False, grid_step: float = 1e-3) -> list:
    """Curvature for every ordered triple of distinct labels with finite legs,
    in row-major label order.  Triples with an infinite leg are skipped."""
    out = []
    for x1 in space.labels:
        for x2 in space.labels:
            for x3 in space.labels:
                if len({x1, x2, x3}) < 3:
                    continue
                try:
                    fn = grid_oracle_curvature if oracle else directed_curvature
                    out.append(fn(space, x1, x2, x3, grid_step))
                except GeometryDomainError:
                    continue
    return out


def find_medians(space: CostSpace, x1, x2, x3) -> list:
    """Points ``t`` outside the triple lying between ``x1 -> x2``, ``x2 -> x3``
    and ``x3 -> x1`` simultaneously (label order)."""
    _legs(space, x1, x2, x3)
    mode, tol = space.mode, space.tol
    c = space.c
    out = []
    for t in space.labels:
        if t in (x1, x2, x3):
            continue
        if all(not is_inf(c(p, t)) and not is_inf(c(t, q)) and close(c(p, q), c(p, t) + c(t, q), mode, tol)
               for p, q in ((x1, x2), (x2, x3), (x3, x1))):
            out.append(t)
    return out


def hyperconvexity_deviation(space: CostSpace, pairs) -> tuple:
    """Smallest common scaling of outward/inward balls that makes them meet.

    ``pairs`` holds ``(p, q, r, r_in)``: point ``t`` must satisfy
    ``c(p, t) <= lam * r`` and ``c(t, q) <= lam * r_in``.  An ``INF`` radius
    leaves that side unconstrained.  Returns ``(lam, t)``.
    """
    pairs = [tuple(p) for p in pairs]
    if not pairs:
        raise ParameterError("need at least one pair")
    for p, q, r, r_in in pairs:
        if r < 0 or r_in < 0:
            raise ParameterError("radii must be nonnegative")
    if all(r == 0 and r_in == 0 for _, _, r, r_in in pairs):
        raise ParameterError("radii must not all vanish")
    best, witness = INF, None
    for t in space.labels:
        score = 0
        for p, q, r, r_in in pairs:
            score = max(score, ratio(space.c(p, t), r), ratio(space.c(t, q), r_in))
        if score < best:
            best, witness = score, t
    if witness is None:
        raise InfeasibleError("every ground point has infinite deviation")
    return best, witness


@dataclass
class ConvexityReport:
    epsilon: object
    almost_chronodesic: bool
    totally_convex: bool
    failures: list = field(default_factory=list)  # (p, r, t1) at epsilon


def _split_failures(space: CostSpace, eps) -> list:
    mode, tol = space.mode, space.tol
    c = space.c
    labels = space.labels
    fails = []
    for p in labels:
        for r in labels:
            if p == r or is_inf(c(p, r)):
                continue
            total = c(p, r)
            pts = {0 * total, total}
            for q in labels:
                for v in (c(p, q), total - c(q, r) if not is_inf(c(q, r)) else INF):
                    if is_inf(v):
                        continue
                    pts.update((v, v - eps, v + eps))
            pts = sorted(v for v in pts if 0 <= v <= total)
            pts += [half(u + v) for u, v in zip(pts, pts[1:])]
            for t1 in sorted(pts):
                ok = any(not exceeds(c(p, q), t1 + eps, mode, tol)
                         and not exceeds(c(q, r), total - t1 + eps, mode, tol)
                         for q in labels)
                if not ok:
                    fails.append((p, r, t1))
    return fails


def convexity_checks(space: CostSpace, epsilon) -> ConvexityReport:
    """Split test: for every finite ``c(p, r)`` and every split ``t1 + t2 = c(p, r)``
    some ``q`` has ``c(p, q) <= t1 + eps`` and ``c(q, r) <= t2 + eps``.

    The predicate only changes where some ``c(p, q)`` or ``c(p, r) - c(q, r)``
    (shifted by ``±eps``) is crossed, so those points and the midpoints between
    them are tested.
    """
    if epsilon < 0:
        raise ParameterError("epsilon must be nonnegative")
    epsilon = coerce(epsilon, space.mode)
    fails = _split_failures(space, epsilon)
    tight = fails if epsilon == 0 else _split_failures(space, 0 * epsilon)
    return ConvexityReport(epsilon, not fails, not tight, fails)
