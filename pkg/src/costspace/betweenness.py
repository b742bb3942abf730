"""Betweenness relations: extraction from costs and partial orders, and the
axiom check.

A betweenness relation here is *not* required to be symmetric: ``(p, q, r)``
does not imply ``(r, q, p)``.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from ._numeric import close, is_inf
from .core import CostSpace


class OrderError(ValueError):
    """The supplied relation is not a strict partial order."""


@dataclass(frozen=True)
class BetweennessRelation:
    ground_labels: tuple
    triples: frozenset

    def __post_init__(self):
        object.__setattr__(self, "ground_labels", tuple(self.ground_labels))
        object.__setattr__(self, "triples", frozenset(tuple(t) for t in self.triples))

    def __contains__(self, triple) -> bool:
        return tuple(triple) in self.triples

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(self.sorted())

    def sorted(self) -> list:
        """Triples ordered lexicographically by position in ``ground_labels``
        (labels outside the ground sort last, by ``repr``)."""
        pos = {p: i for i, p in enumerate(self.ground_labels)}
        big = len(pos)
        return sorted(self.triples, key=lambda t: tuple((pos.get(x, big), repr(x)) for x in t))


def derive_betweenness(space: CostSpace) -> BetweennessRelation:
    """``(p, q, r)`` for distinct ``p, q, r`` with finite legs and
    ``c(p, r) = c(p, q) + c(q, r)`` (exact or within tolerance)."""
    c = space.cost
    n = len(space)
    lab = space.labels
    out = []
    for p in range(n):
        for q in range(n):
            if q == p or is_inf(c[p][q]):
                continue
            for r in range(n):
                if r == p or r == q:
                    continue
                cpr, cqr = c[p][r], c[q][r]
                if is_inf(cpr) or is_inf(cqr):
                    continue
                if close(cpr, c[p][q] + cqr, space.mode, space.tol):
                    out.append((lab[p], lab[q], lab[r]))
    return BetweennessRelation(lab, frozenset(out))


@dataclass
class AxiomReport:
    distinctness: list = field(default_factory=list)
    antisymmetry: list = field(default_factory=list)
    # (premise1, premise2, missing conclusion)
    outer_transitivity: list = field(default_factory=list)
    inner_transitivity: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.distinctness or self.antisymmetry
                    or self.outer_transitivity or self.inner_transitivity)

    def count(self) -> int:
        return (len(self.distinctness) + len(self.antisymmetry)
                + len(self.outer_transitivity) + len(self.inner_transitivity))


def check_axioms(rel: BetweennessRelation) -> AxiomReport:
    """Exhaustively test the four betweenness axioms and collect every violation.

    * distinctness: ``b(p,q,r)`` implies ``p, q, r`` pairwise distinct
    * antisymmetry: ``b(p,q,r)`` excludes ``b(q,p,r)``
    * ``123 and 134`` imply ``124 and 234``
    * ``124 and 234`` imply ``134 and 123``
    """
    rep = AxiomReport()
    T = rel.triples
    by_ends = defaultdict(list)     # (p, r) -> [q]
    by_head = defaultdict(list)     # (p, q) -> [r]
    for t in rel.sorted():
        p, q, r = t
        if len({p, q, r}) < 3:
            rep.distinctness.append(t)
        if (q, p, r) in T:
            rep.antisymmetry.append(t)
        by_ends[(p, r)].append(q)
        by_head[(p, q)].append(r)

    for t in rel.sorted():
        p, q, r = t
        # 123 and 134 => 124 and 234   (here 1=p, 2=q, 3=r)
        for s in by_head[(p, r)]:
            prem2 = (p, r, s)
            for concl in ((p, q, s), (q, r, s)):
                if concl not in T:
                    rep.outer_transitivity.append((t, prem2, concl))
        # 124 and 234 => 134 and 123   (here 1=p, 2=q, 4=r; look for 3)
        for s in by_ends[(q, r)]:
            prem2 = (q, s, r)
            for concl in ((p, s, r), (p, q, s)):
                if concl not in T:
                    rep.inner_transitivity.append((t, prem2, concl))
    return rep


def betweenness_from_order(elements, less_than) -> BetweennessRelation:
    """Triples ``p < q < r`` of a strict partial order given as a set of pairs."""
    elements = tuple(elements)
    lt = {tuple(x) for x in less_than}
    known = set(elements)
    for a, b in lt:
        if a not in known or b not in known:
            raise OrderError(f"pair {(a, b)!r} mentions an unknown element")
        if a == b:
            raise OrderError(f"relation is not irreflexive at {a!r}")
    for a, b in lt:
        for b2, c in lt:
            if b2 == b and (a, c) not in lt:
                if a == c:
                    raise OrderError(f"cycle through {a!r} and {b!r}")
                raise OrderError(f"not transitive: {a!r} < {b!r} < {c!r}")
    succ = defaultdict(list)
    for a, b in lt:
        succ[a].append(b)
    triples = {(p, q, r) for p, q in lt for r in succ[q]}
    return BetweennessRelation(elements, frozenset(triples))


def relabel(rel: BetweennessRelation, mapping: dict) -> BetweennessRelation:
    return BetweennessRelation(tuple(mapping[p] for p in rel.ground_labels),
                               frozenset(tuple(mapping[x] for x in t) for t in rel.triples))
