import itertools
import json
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from costspace import spaces as S
from costspace.betweenness import derive_betweenness
from costspace.dress import (CostDomainError, CycleStructure, DigraphStructure, GroupWord,
                             HypothesisViolation, NotInG0Error, StructureError, cost_hom,
                             free_reduce, map_word, psi, psi_preimage, relator, rewrite_to_base,
                             structure_from_json, word_from_json, word_to_json, words_equal)

from conftest import naive_reduce

LABELS = "abcde"
letters = st.tuples(st.sampled_from(LABELS), st.sampled_from(LABELS), st.sampled_from([1, -1])) \
    .filter(lambda l: l[0] != l[1])
words = st.lists(letters, max_size=40).map(lambda ls: GroupWord(tuple(ls)))


def psi_oracle(word):
    vec = {}
    for s, t, e in word.letters:
        vec[t] = vec.get(t, 0) + e
        vec[s] = vec.get(s, 0) - e
    return {k: v for k, v in vec.items() if v}


def test_free_reduce_examples():
    w = GroupWord.gen("a", "b") * GroupWord.gen("a", "b", -1)
    assert free_reduce(w) == GroupWord()
    reduced = GroupWord((("a", "b", 1), ("b", "c", 1)))
    assert free_reduce(reduced) == reduced


@settings(max_examples=200, deadline=None)
@given(words)
def test_free_reduce_matches_naive_scan(w):
    assert free_reduce(w).letters == naive_reduce(w.letters)


def test_relator_shape_and_psi():
    assert relator("p", "q", "r").letters == (("p", "r", 1), ("q", "r", -1), ("p", "q", -1))
    for p, q, r in itertools.permutations(range(10), 3):
        assert psi(relator(p, q, r)) == {}
    with pytest.raises(ValueError):
        relator("p", "p", "q")


def test_psi_single_letter_and_empty():
    assert psi(GroupWord.gen("s", "t")) == {"t": 1, "s": -1}
    assert psi(GroupWord()) == {}


@settings(max_examples=100, deadline=None)
@given(words, words)
def test_psi_is_a_homomorphism(w1, w2):
    assert psi(w1) == psi_oracle(w1)
    total = psi_oracle(w1)
    for k, v in psi_oracle(w2).items():
        total[k] = total.get(k, 0) + v
    assert psi(w1 * w2) == {k: v for k, v in total.items() if v}
    assert psi(w1.inverse()) == {k: -v for k, v in psi(w1).items()}


def test_preimage_examples():
    assert psi_preimage({}) == GroupWord()
    assert psi_preimage({"s": -1, "t": 1}) == GroupWord.gen("s", "t")
    # least negative label a, least positive label b is chosen first and ends up rightmost
    assert psi_preimage({"a": -2, "b": 1, "c": 1}).letters == (("a", "c", 1), ("a", "b", 1))
    with pytest.raises(NotInG0Error):
        psi_preimage({"a": 1})


def random_g0(rng, labels="abcdefgh", budget=20):
    vec = {}
    for _ in range(int(rng.integers(0, budget // 2 + 1))):
        s, t = rng.choice(list(labels), 2, replace=False)
        vec[s] = vec.get(s, 0) - 1
        vec[t] = vec.get(t, 0) + 1
    return {k: v for k, v in vec.items() if v}


def test_preimage_round_trip_and_length(rng):
    for _ in range(100):
        g = random_g0(rng)
        w = psi_preimage(g)
        assert psi(w) == g
        assert 2 * len(w) == sum(abs(v) for v in g.values())


def test_cost_hom():
    space = S.interval(11)
    p, q = Fraction(1, 5), Fraction(7, 10)
    assert cost_hom(GroupWord.gen(p, q), space) == Fraction(1, 2)
    w = GroupWord.gen(p, q) * GroupWord.gen(Fraction(0), q)
    assert cost_hom(w.inverse(), space) == -cost_hom(w, space)
    with pytest.raises(CostDomainError):
        cost_hom(GroupWord.gen(q, p), space)


def test_cost_hom_kills_betweenness_relators(rng):
    for _ in range(20):
        space = S.random_space(6, rng, low=1, high=5)
        for t in derive_betweenness(space).triples:
            assert cost_hom(relator(*t), space) == 0


# --- cycles -------------------------------------------------------------------------

def test_cycle_expansion_examples():
    cyc = CycleStructure.of_size(5)
    got = rewrite_to_base(GroupWord.gen("w1", "w3"), cyc)
    assert got.letters == (("w1", "w2", 1), ("w2", "w3", 1))
    assert rewrite_to_base(relator("w1", "w2", "w3"), cyc) == GroupWord()
    assert words_equal(GroupWord.gen("w1", "w3"), GroupWord.gen("w1", "w2") * GroupWord.gen("w2", "w3"), cyc)
    assert not words_equal(GroupWord.gen("w1", "w2"), GroupWord.gen("w2", "w3"), cyc)


def test_cycle_wraps_around():
    cyc = CycleStructure.of_size(4)
    got = rewrite_to_base(GroupWord.gen("w3", "w1"), cyc)
    assert got.letters == (("w3", "w4", 1), ("w4", "w1", 1))


def test_cycle_betweenness_is_the_circle_relation():
    n = 7
    cyc = CycleStructure.of_size(n)
    space = S.circle(n)
    names = {Fraction(k, n): f"w{k + 1}" for k in range(n)}
    derived = {tuple(names[x] for x in t) for t in derive_betweenness(space).triples}
    assert cyc.betweenness().triples == derived


def test_cycle_cost_preserved_by_rewriting(rng):
    n = 6
    cyc = CycleStructure.of_size(n)
    space = S.circle(n)
    to_pt = {f"w{k + 1}": Fraction(k, n) for k in range(n)}
    for _ in range(20):
        letters = []
        for _ in range(8):
            s, t = rng.choice(n, 2, replace=False)
            letters.append((f"w{s + 1}", f"w{t + 1}", int(rng.choice([1, -1]))))
        w = GroupWord(tuple(letters))
        lhs = cost_hom(map_word(w, to_pt), space)
        rhs = cost_hom(map_word(rewrite_to_base(w, cyc), to_pt), space)
        assert lhs == rhs
        assert psi(rewrite_to_base(w, cyc)) == psi(w)


# --- digraphs -------------------------------------------------------------------------

def test_dag_expansion():
    g = DigraphStructure("abc", [("a", "b"), ("b", "c")])
    assert rewrite_to_base(GroupWord.gen("a", "c"), g).letters == (("a", "b", 1), ("b", "c", 1))
    assert rewrite_to_base(GroupWord.gen("c", "a"), g) == GroupWord.gen("c", "a")


def test_dag_hypothesis_checked():
    with pytest.raises(HypothesisViolation):
        DigraphStructure("abcd", [("a", "b"), ("b", "d"), ("a", "c"), ("c", "d")])
    with pytest.raises(HypothesisViolation):
        DigraphStructure("ab", [("a", "b"), ("b", "a")])
    with pytest.raises(StructureError):
        rewrite_to_base(GroupWord.gen("a", "z"), DigraphStructure("ab", [("a", "b")]))


def random_forest(rng, n):
    """Random tree with edges oriented arbitrarily: an oriented tree has at
    most one directed path between two vertices."""
    vs = [f"v{i}" for i in range(n)]
    edges = []
    for i in range(1, n):
        j = int(rng.integers(0, i))
        edges.append((vs[j], vs[i]) if rng.random() < 0.5 else (vs[i], vs[j]))
    return vs, edges


def random_word(rng, labels, k):
    out = []
    for _ in range(k):
        s, t = rng.choice(labels, 2, replace=False)
        out.append((str(s), str(t), int(rng.choice([1, -1]))))
    return GroupWord(tuple(out))


def test_dag_rewrite_orders_agree(rng):
    for seed in range(20):
        vs, edges = random_forest(rng, int(rng.integers(3, 9)))
        g = DigraphStructure(vs, edges)
        w = random_word(rng, vs, 12)
        a = rewrite_to_base(w, g, random.Random(seed))
        b = rewrite_to_base(w, g, random.Random(seed + 1000))
        assert a == b == rewrite_to_base(w, g)
        assert free_reduce(a) == a
        assert psi(a) == psi(w)


def test_dag_betweenness_relators_vanish(rng):
    vs, edges = random_forest(rng, 8)
    g = DigraphStructure(vs, edges)
    for t in g.betweenness().triples:
        assert rewrite_to_base(relator(*t), g) == GroupWord()


def test_conjugated_relator_equals_original():
    cyc = CycleStructure.of_size(5)
    w = GroupWord.gen("w2", "w5") * GroupWord.gen("w1", "w4", -1)
    r = relator("w1", "w2", "w4")
    assert words_equal(w, w * r, cyc)
    assert words_equal(w, r * w * r.inverse(), cyc)


# --- morphisms and JSON ---------------------------------------------------------------

def test_map_word_along_morphism():
    cyc = CycleStructure.of_size(4)
    rel = cyc.betweenness()
    shift = {f"w{k}": f"w{k % 4 + 1}" for k in range(1, 5)}
    w = relator("w1", "w2", "w3")
    assert map_word(w, shift, rel, rel) == relator("w2", "w3", "w4")
    with pytest.raises(ValueError):
        swap = dict(shift, w1="w2", w2="w1")
        map_word(w, swap, rel, rel)


def test_json_round_trips():
    w = GroupWord((("a", "b", 1), ("c", "a", -1)))
    assert word_from_json(json.loads(json.dumps(word_to_json(w)))) == w
    cyc = CycleStructure.of_size(3)
    assert structure_from_json(cyc.to_json()).labels == cyc.labels
    assert structure_from_json({"type": "cycle", "n": 3}).labels == ("w1", "w2", "w3")
    g = structure_from_json({"type": "digraph", "edges": [["a", "b"], ["b", "c"]]})
    assert g.vertices == ("a", "b", "c")
    with pytest.raises(StructureError):
        structure_from_json({"type": "torus"})
