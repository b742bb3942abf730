import itertools

import numpy as np
import pytest

from costspace import spaces as S
from costspace.core import product
from costspace.pretop import (AdditivePreclosure, GeneralPreclosure, GroundMismatchError,
                              GroundSizeError, check_axioms, compare, digraph_from_preclosure,
                              has_nonconstant_loop, is_continuous, preclosure_from_cost,
                              preclosure_from_digraph, preclosure_from_json,
                              preclosure_intersection, preclosure_to_json, product_preclosure,
                              projection)


def subsets(ground):
    for r in range(len(ground) + 1):
        yield from (frozenset(c) for c in itertools.combinations(ground, r))


def closure_oracle(space, r, subset):
    return frozenset(q for q in space.labels if any(space.c(p, q) <= r for p in subset))


def test_cost_preclosure_matches_definition(rng):
    space = S.random_space(5, rng, low=1, high=6)
    for r in (0, 2, 5):
        pre = preclosure_from_cost(space, r)
        for a in subsets(space.labels):
            assert pre(a) == closure_oracle(space, r, a)


def test_radius_zero_is_identity():
    pre = preclosure_from_cost(S.diagram(), 0)
    assert all(pre({x}) == {x} for x in pre.ground)


def test_interval_one_step():
    space = S.interval(6)
    pts = space.labels
    pre = preclosure_from_cost(space, pts[1])
    for i, p in enumerate(pts):
        assert pre({p}) == set(pts[i:i + 2])


def test_intersection_degenerates_with_warning():
    with pytest.warns(UserWarning):
        pre = preclosure_intersection(S.diagram())
    assert all(pre({x}) == {x} for x in pre.ground)


def test_digraph_preclosure_and_round_trip():
    pre = preclosure_from_digraph(S.DIAGRAM_LABELS, S.DIAGRAM_EDGES)
    assert pre({"p1"}) == {"p1", "p2", "p4"}
    assert set(digraph_from_preclosure(pre)) == set(S.DIAGRAM_EDGES)
    empty = preclosure_from_digraph("abc", [])
    assert all(empty({x}) == {x} for x in "abc")


def test_additive_axioms_and_topology():
    rep = check_axioms(preclosure_from_cost(S.interval(5), S.interval(5).labels[1]))
    assert rep.pretopology and not rep.topology
    # the whole interval at radius 1 reaches everything forward: transitive
    rep = check_axioms(preclosure_from_cost(S.interval(5), 1))
    assert rep.topology


def test_rectangle_product_is_not_additive_on_2x2():
    a = preclosure_from_digraph("xy", [])
    b = preclosure_from_digraph("uv", [])
    rect = product_preclosure(a, b, "rectangle")
    rep = check_axioms(rect)
    assert rep.empty and rep.extensive and rep.monotone
    assert not rep.additive
    B = frozenset({("x", "u"), ("y", "v")})
    assert rect(B) == frozenset(itertools.product("xy", "uv"))
    assert product_preclosure(a, b, "additive")(B) == B


def test_general_axioms_from_table():
    ground = "ab"
    table = {(): (), ("a",): ("a",), ("b",): ("a", "b"), ("a", "b"): ("a", "b")}
    pre = GeneralPreclosure.from_table(ground, table)
    rep = check_axioms(pre)
    assert rep.topology
    bad = GeneralPreclosure.from_table(ground, {**table, ("a",): ()})
    rep = check_axioms(bad)
    assert not rep.extensive and "extensive" in rep.failures


def test_large_general_ground_needs_samples():
    ground = list(range(17))
    pre = GeneralPreclosure(ground, lambda a: a)
    with pytest.raises(GroundSizeError):
        check_axioms(pre)
    rep = check_axioms(pre, samples=50)
    assert rep.sampled and rep.topology


def test_forms_agree_on_singletons_and_rectangles(rng):
    s1, s2 = S.random_space(3, rng, 1, 4), S.random_space(3, rng, 1, 4)
    p1, p2 = preclosure_from_cost(s1, 2), preclosure_from_cost(s2, 2)
    add = product_preclosure(p1, p2, "additive")
    rect = product_preclosure(p1, p2, "rectangle")
    for A in subsets(s1.labels):
        for B in subsets(s2.labels):
            R = frozenset(itertools.product(A, B))
            assert add(R) == rect(R)


def test_additive_product_equals_max_product_cost(rng):
    for _ in range(10):
        n1 = int(rng.integers(1, 5))
        n2 = int(rng.integers(1, 12 // n1 + 1))
        s1, s2 = S.random_space(n1, rng, 1, 5), S.random_space(n2, rng, 1, 5)
        r = int(rng.integers(0, 6))
        add = product_preclosure(preclosure_from_cost(s1, r), preclosure_from_cost(s2, r))
        assert add == preclosure_from_cost(product(s1, s2), r)


def test_projections_continuous(rng):
    s1, s2 = S.random_space(3, rng, 1, 5), S.random_space(3, rng, 1, 5)
    p1, p2 = preclosure_from_cost(s1, 3), preclosure_from_cost(s2, 3)
    for form in ("additive", "rectangle"):
        prod = product_preclosure(p1, p2, form)
        assert is_continuous(projection(prod.ground, 0), prod, p1)
        assert is_continuous(projection(prod.ground, 1), prod, p2)


def test_continuity_examples(rng):
    space = S.interval(5)
    pts = space.labels
    pre = preclosure_from_cost(space, pts[1])
    assert is_continuous({p: p for p in pts}, pre, pre)
    swap = {p: p for p in pts}
    swap[pts[1]], swap[pts[2]] = pts[2], pts[1]
    assert not is_continuous(swap, pre, pre)


def test_cost_morphisms_are_continuous(rng):
    # a constant map and the identity never increase costs
    for _ in range(10):
        s = S.random_space(5, rng, 1, 8)
        r = int(rng.integers(0, 9))
        pre = preclosure_from_cost(s, r)
        const = {p: s.labels[0] for p in s.labels}
        assert is_continuous(const, pre, pre)
        # projection of a product onto a factor is a cost morphism too
        t = S.random_space(2, rng, 1, 8)
        prod = product(s, t)
        assert is_continuous(projection(prod.labels, 0), preclosure_from_cost(prod, r), pre)


def test_compare():
    space = S.diagram()
    assert compare(preclosure_from_cost(space, 1), preclosure_from_cost(space, 2)) == "finer"
    assert compare(preclosure_from_cost(space, 2), preclosure_from_cost(space, 1)) == "coarser"
    assert compare(preclosure_from_cost(space, 1), preclosure_from_cost(space, 1)) == "equal"
    g1 = preclosure_from_digraph("abc", [("a", "b")])
    g2 = preclosure_from_digraph("abc", [("b", "c")])
    assert compare(g1, g2) == "incomparable"
    with pytest.raises(GroundMismatchError):
        compare(g1, preclosure_from_digraph("abd", []))


def test_compare_general_operators():
    a = preclosure_from_digraph("xy", [])
    b = preclosure_from_digraph("uv", [])
    rect = product_preclosure(a, b, "rectangle")
    add = product_preclosure(a, b, "additive")
    assert compare(add, rect) == "finer"


def test_monotone_in_radius(rng):
    s = S.random_space(6, rng)
    prev = preclosure_from_cost(s, 0)
    for r in range(1, 21):
        cur = preclosure_from_cost(s, r)
        assert compare(prev, cur) in ("finer", "equal")
        prev = cur


def test_loops():
    space = S.interval(5)
    pre = preclosure_from_cost(space, space.labels[1])
    assert not any(has_nonconstant_loop(pre, p) for p in space.labels)
    # interval 0..3 with a cycle 3 -> 4 -> 5 -> 3 appended at the end
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 3)]
    g = preclosure_from_digraph(range(6), edges)
    assert [p for p in range(6) if has_nonconstant_loop(g, p)] == [3, 4, 5]


def test_json_round_trip():
    pre = preclosure_from_digraph("abc", [("a", "b")])
    assert preclosure_from_json(preclosure_to_json(pre)) == pre
