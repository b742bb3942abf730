import warnings
from fractions import Fraction

import pytest

from costspace import spaces as S
from costspace._numeric import INF
from costspace.core import CostSpace, ParameterError
from costspace.tightspan import (FunctionPair, UnboundedSupWarning, is_admissible_pair,
                                 is_bitight_pair, iterate_tight_pairs, kuratowski_pair,
                                 pair_from_json, pointwise_le, tighten_f, tighten_g)

from conftest import hyp2_grid


def alpha_pair(pts, alpha):
    """The displayed family: f(p) = alpha - p left of alpha, 2(p - alpha) right
    of it; g(q) = q - alpha right of alpha, 2(alpha - q) left of it."""
    f = tuple(alpha - p if p <= alpha else 2 * (p - alpha) for p in pts)
    g = tuple(q - alpha if alpha <= q else 2 * (alpha - q) for q in pts)
    return f, g


@pytest.fixture
def grid():
    pts, cost = hyp2_grid(11)
    return pts, CostSpace(tuple(pts), cost)


def test_alpha_family(grid):
    pts, space = grid
    for alpha in pts:
        f, g = alpha_pair(pts, alpha)
        assert tighten_f(space, g) == f
        assert tighten_g(space, f) == g
        assert is_admissible_pair(space, f, g) == (True, 0, 0)
        assert is_bitight_pair(space, f, g)[0]
        k = kuratowski_pair(space, alpha)
        assert (k.f, k.g) == (f, g)


def test_endpoint_restriction(grid):
    pts, space = grid
    ends = space.restrict((pts[0], pts[-1]))
    for alpha in pts:
        f, g = alpha_pair(pts, alpha)
        # sup over the endpoints only, evaluated at the endpoints
        f_end = tighten_f(ends, (g[0], g[-1]))
        assert f_end == (f[0], f[-1])


def test_zero_functions_give_eccentricities(rng):
    s = S.random_space(5, rng)
    zero = [0] * 5
    assert tighten_f(s, zero) == tuple(max(row) for row in s.cost)
    assert tighten_g(s, zero) == tuple(max(s.cost[p][q] for p in range(5)) for q in range(5))


def test_tighten_g_of_tighten_f_is_below(rng):
    for _ in range(20):
        s = S.random_space(5, rng)
        g = [int(v) for v in rng.integers(0, 20, 5)]
        assert pointwise_le(s, tighten_g(s, tighten_f(s, g)), g)


def test_tightened_pairs_admissible_and_attained(rng):
    for _ in range(20):
        s = S.random_space(6, rng, p_missing=0.2)
        g = [int(v) for v in rng.integers(0, 10, 6)]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UnboundedSupWarning)
            f = tighten_f(s, g)
        assert is_admissible_pair(s, f, g)[0]
        for i in range(6):
            terms = [s.cost[i][j] - g[j] for j in range(6) if s.cost[i][j] != INF]
            assert all(f[i] >= t for t in terms)
            assert f[i] in terms


def test_perturbed_pair_defect(grid):
    pts, space = grid
    f, g = alpha_pair(pts, pts[3])
    bumped = tuple(v + Fraction(1, 10) for v in f)
    ok, defect, _ = is_admissible_pair(space, bumped, g)
    assert not ok and defect == Fraction(1, 10)


def test_kuratowski_pairs_admissible(rng):
    for _ in range(30):
        s = S.random_space(int(rng.integers(2, 9)), rng)
        for x in s.labels:
            k = kuratowski_pair(s, x)
            assert is_admissible_pair(s, k.f, k.g)[0]
            assert is_bitight_pair(s, k.f, k.g)[0]


def test_kuratowski_with_infinite_entries():
    s = S.interval(4)
    pts = s.labels
    k = kuratowski_pair(s, pts[1])
    assert k.f == (pts[1], 0, INF, INF)
    ok, defect, skipped = is_admissible_pair(s, k.f, k.g)
    assert ok and skipped == 2


def test_empty_support_warns():
    s = S.interval(3)
    # only q = 1 carries a finite g, and every point reaches it
    assert tighten_f(s, (INF, INF, 0)) == (1, Fraction(1, 2), 0)
    s2 = CostSpace(("a", "b"), ((0, INF), (INF, 0)))
    with pytest.warns(UnboundedSupWarning):
        assert tighten_f(s2, (INF, 0)) == (INF, 0)


def test_iteration_fixed_immediately_for_kuratowski(rng):
    s = S.random_space(5, rng)
    k = kuratowski_pair(s, s.labels[2])
    trace = iterate_tight_pairs(s, k.g)
    assert trace == [FunctionPair(k.f, k.g)]


def test_iteration_on_uniform_space():
    s = S.uniform(3)
    trace = iterate_tight_pairs(s, (0, 0, 0), max_iter=10)
    assert len(trace) <= 3
    assert trace[0] == FunctionPair((1, 1, 1), (0, 0, 0))
    for pair in trace:
        assert is_admissible_pair(s, pair.f, pair.g)[0]
    last = trace[-1]
    assert tighten_g(s, last.f) == last.g


def test_iteration_pairs_admissible(rng):
    for _ in range(10):
        s = S.random_space(5, rng)
        g0 = [int(v) for v in rng.integers(0, 30, 5)]
        for pair in iterate_tight_pairs(s, g0, 8):
            assert is_admissible_pair(s, pair.f, pair.g)[0]


def test_iteration_rejects_bad_max_iter():
    with pytest.raises(ParameterError):
        iterate_tight_pairs(S.uniform(2), (0, 0), 0)


def test_pair_json_round_trip(grid):
    pts, space = grid
    obj = {"f": {str(p): "0" for p in pts}, "g": {str(p): "1/2" for p in pts}}
    pair = pair_from_json(space, obj)
    assert pair.g == (Fraction(1, 2),) * 11
    with pytest.raises(ParameterError):
        pair_from_json(space, {"f": {}})
