"""Free-group words over pair generators ``X[p, q]`` and the Dress-group tools
built on them.

A letter is ``(source, target, exp)`` with ``exp`` in ``{+1, -1}``.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

from ._numeric import is_inf
from .betweenness import BetweennessRelation
from .core import CostSpace


class NotInG0Error(ValueError):
    """Integer vector whose coefficients do not sum to zero."""


class CostDomainError(ValueError):
    """A letter whose generator has infinite cost."""


class StructureError(ValueError):
    """A letter or structure outside the supported rewriting families."""


class HypothesisViolation(StructureError):
    """A digraph with two distinct directed paths between the same endpoints."""


@dataclass(frozen=True)
class GroupWord:
    letters: tuple = ()

    def __post_init__(self):
        letters = tuple((s, t, int(e)) for s, t, e in self.letters)
        for s, t, e in letters:
            if s == t:
                raise ValueError(f"generator X[{s!r},{t!r}] needs distinct endpoints")
            if e not in (1, -1):
                raise ValueError("exponents must be +1 or -1")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def gen(cls, s, t, exp: int = 1) -> "GroupWord":
        return cls(((s, t, exp),))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((s, t, -e) for s, t, e in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "·".join(f"X[{s},{t}]" + ("" if e == 1 else "^-1") for s, t, e in self.letters)


def free_reduce(word: GroupWord) -> GroupWord:
    """Cancel adjacent letter/inverse pairs (single stack pass)."""
    stack = []
    for s, t, e in word.letters:
        if stack and stack[-1] == (s, t, -e):
            stack.pop()
        else:
            stack.append((s, t, e))
    return GroupWord(tuple(stack))


def relator(p, q, r) -> GroupWord:
    """``X[p,r] X[q,r]^-1 X[p,q]^-1``, trivial in the Dress group when ``b(p,q,r)``."""
    if len({p, q, r}) < 3:
        raise ValueError("relator needs three distinct labels")
    return GroupWord(((p, r, 1), (q, r, -1), (p, q, -1)))


def psi(word: GroupWord) -> dict:
    """Abelian image: each letter contributes ``exp * (delta_target - delta_source)``.

    Returned as a label -> int mapping without zero entries.
    """
    acc = defaultdict(int)
    for s, t, e in word.letters:
        acc[t] += e
        acc[s] -= e
    return {k: v for k, v in acc.items() if v}


def psi_preimage(g: dict, order: Iterable | None = None) -> GroupWord:
    """Word with ``psi(word) == g`` following the inductive surjectivity argument.

    At each step the first label (in ``order``, default sorted) with a
    negative coefficient is ``s`` and the first with a positive coefficient is
    ``t``; the remaining vector ``g + delta_s - delta_t`` is handled
    recursively and ``X[s,t]`` is appended on the right.
    """
    g = {k: int(v) for k, v in g.items() if v}
    if sum(g.values()) != 0:
        raise NotInG0Error("coefficients must sum to zero")
    order = list(order) if order is not None else sorted(g, key=_sort_key)
    missing = set(g) - set(order)
    if missing:
        raise ValueError(f"labels {sorted(missing, key=_sort_key)!r} missing from order")
    picked = []
    while g:
        s = next(k for k in order if g.get(k, 0) < 0)
        t = next(k for k in order if g.get(k, 0) > 0)
        picked.append((s, t, 1))
        g[s] += 1
        g[t] -= 1
        g = {k: v for k, v in g.items() if v}
    # the first pair chosen is the outermost (rightmost) factor
    return GroupWord(tuple(reversed(picked)))


def _sort_key(x):
    return (type(x).__name__, x) if isinstance(x, (int, float, str)) else (type(x).__name__, repr(x))


def cost_hom(word: GroupWord, space: CostSpace):
    """``sum exp * c(source, target)``; exact in rational mode."""
    total = 0
    for s, t, e in word.letters:
        c = space.c(s, t)
        if is_inf(c):
            raise CostDomainError(f"X[{s!r},{t!r}] has infinite cost")
        total = total + e * c
    return total


# ---------------------------------------------------------------------------
# structured families with a free Dress group


class CycleStructure:
    """Points ``w1 .. wn`` in counterclockwise order; ``b(wk, wl, wm)`` iff the
    counterclockwise arc from ``wk`` to ``wm`` passes ``wl``.  Base letters are
    the adjacent steps ``X[wk, wk+1]``."""

    def __init__(self, labels):
        labels = tuple(labels)
        if len(labels) < 2 or len(set(labels)) != len(labels):
            raise StructureError("cycle needs at least two distinct labels")
        self.labels = labels
        self.pos = {p: i for i, p in enumerate(labels)}

    @classmethod
    def of_size(cls, n: int) -> "CycleStructure":
        return cls(tuple(f"w{k}" for k in range(1, n + 1)))

    def expansion(self, s, t) -> tuple | None:
        """Base path for a non-base letter, ``None`` if the letter is base."""
        if s not in self.pos or t not in self.pos:
            raise StructureError(f"X[{s!r},{t!r}] not over the cycle")
        n = len(self.labels)
        i = self.pos[s]
        d = (self.pos[t] - i) % n
        if d == 1:
            return None
        return tuple((self.labels[(i + j - 1) % n], self.labels[(i + j) % n], 1) for j in range(1, d + 1))

    def betweenness(self) -> BetweennessRelation:
        n = len(self.labels)
        triples = set()
        for k in range(n):
            for d in range(2, n):
                for j in range(1, d):
                    triples.add((self.labels[k], self.labels[(k + j) % n], self.labels[(k + d) % n]))
        return BetweennessRelation(self.labels, frozenset(triples))

    def to_json(self) -> dict:
        return {"type": "cycle", "n": len(self.labels), "labels": list(self.labels)}


class DigraphStructure:
    """Directed graph with at most one directed path between any two vertices.

    Base letters are edges and unreachable pairs; every other pair is the
    product of the edges along its unique path.
    """

    def __init__(self, vertices, edges):
        self.vertices = tuple(vertices)
        self.edges = tuple((a, b) for a, b in edges)
        vs = set(self.vertices)
        succ = defaultdict(list)
        for a, b in self.edges:
            if a not in vs or b not in vs or a == b:
                raise StructureError(f"bad edge {(a, b)!r}")
            succ[a].append(b)
        if len(set(self.edges)) != len(self.edges):
            raise HypothesisViolation("parallel edges give two paths")
        self.succ = succ
        self.paths = self._unique_paths()

    def _unique_paths(self) -> dict:
        paths = {}
        for u in self.vertices:
            # DFS over all walks from u; a second arrival at any vertex means two paths
            seen = {u: (u,)}
            stack = [(u,)]
            while stack:
                walk = stack.pop()
                for w in self.succ[walk[-1]]:
                    if w in seen:
                        if w == u:
                            raise HypothesisViolation(f"directed cycle through {u!r}")
                        raise HypothesisViolation(f"two paths from {u!r} to {w!r}")
                    seen[w] = walk + (w,)
                    stack.append(walk + (w,))
            for w, walk in seen.items():
                if w != u:
                    paths[(u, w)] = walk
        return paths

    def expansion(self, s, t) -> tuple | None:
        if s not in self.vertices or t not in self.vertices:
            raise StructureError(f"X[{s!r},{t!r}] not over the digraph")
        walk = self.paths.get((s, t))
        if walk is None or len(walk) == 2:
            return None
        return tuple((a, b, 1) for a, b in zip(walk, walk[1:]))

    def betweenness(self) -> BetweennessRelation:
        triples = {(walk[0], v, walk[-1]) for walk in self.paths.values() for v in walk[1:-1]}
        return BetweennessRelation(self.vertices, frozenset(triples))

    def to_json(self) -> dict:
        return {"type": "digraph", "vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}


def structure_from_json(obj: dict):
    kind = obj.get("type")
    if kind == "cycle":
        if "labels" in obj:
            return CycleStructure(obj["labels"])
        return CycleStructure.of_size(int(obj["n"]))
    if kind == "digraph":
        edges = [tuple(e) for e in obj["edges"]]
        vertices = obj.get("vertices")
        if vertices is None:
            vertices = []
            for e in edges:
                for v in e:
                    if v not in vertices:
                        vertices.append(v)
        return DigraphStructure(vertices, edges)
    raise StructureError(f"unknown structure type {kind!r}")


def _expand_letter(letter, structure) -> tuple | None:
    s, t, e = letter
    base = structure.expansion(s, t)
    if base is None:
        return None
    if e == 1:
        return base
    return tuple((a, b, -1) for a, b, _ in reversed(base))


def rewrite_to_base(word: GroupWord, structure, rng: random.Random | None = None) -> GroupWord:
    """Normal form over the base generators of ``structure``.

    Every non-base letter is replaced by its base product and the result is
    freely reduced.  With ``rng``, substitutions and single cancellations
    are interleaved in random order instead; the normal form does not depend
    on that order.
    """
    if rng is None:
        out = []
        for letter in word.letters:
            exp = _expand_letter(letter, structure)
            out.extend((letter,) if exp is None else exp)
        return free_reduce(GroupWord(tuple(out)))

    letters = list(word.letters)
    while True:
        moves = []
        for i, letter in enumerate(letters):
            if structure.expansion(letter[0], letter[1]) is not None:
                moves.append(("sub", i))
            if i + 1 < len(letters):
                s, t, e = letter
                if letters[i + 1] == (s, t, -e):
                    moves.append(("cancel", i))
        if not moves:
            return GroupWord(tuple(letters))
        kind, i = rng.choice(moves)
        if kind == "sub":
            letters[i:i + 1] = list(_expand_letter(letters[i], structure))
        else:
            del letters[i:i + 2]


def words_equal(word1: GroupWord, word2: GroupWord, structure) -> bool:
    """Equality in the Dress group of ``structure`` (decided via normal forms)."""
    return rewrite_to_base(word1, structure) == rewrite_to_base(word2, structure)


def is_betweenness_morphism(mapping: dict, rel1: BetweennessRelation, rel2: BetweennessRelation) -> bool:
    return all(tuple(mapping[x] for x in t) in rel2.triples for t in rel1.triples)


def map_word(word: GroupWord, mapping: dict, rel1: BetweennessRelation | None = None,
             rel2: BetweennessRelation | None = None) -> GroupWord:
    """Relabel letters along a betweenness morphism.

    When both relations are given the morphism condition is checked first.
    A letter whose endpoints collapse to one label maps to the identity;
    relators never collapse because a morphism keeps related triples distinct.
    """
    if rel1 is not None and rel2 is not None and not is_betweenness_morphism(mapping, rel1, rel2):
        raise ValueError("map does not preserve betweenness")
    out = []
    for s, t, e in word.letters:
        a, b = mapping[s], mapping[t]
        if a != b:
            out.append((a, b, e))
    return GroupWord(tuple(out))


def word_to_json(word: GroupWord) -> list:
    return [{"from": s, "to": t, "exp": e} for s, t, e in word.letters]


def word_from_json(obj) -> GroupWord:
    return GroupWord(tuple((d["from"], d["to"], int(d.get("exp", 1))) for d in obj))
