"""Min-plus closure of a weighted digraph and chain classification."""
from costspace import (PathChainSum, boundary, enumerate_tachistic_chains, is_chronodesic_tight,
                       is_tachistic, path_cost_closure, spaces)
from costspace._numeric import INF

w = [[0, 2, INF, 7],
     [INF, 0, 3, INF],
     [INF, INF, 0, 1],
     [1, INF, INF, 0]]
space = path_cost_closure(w, labels=["a", "b", "c", "d"])
print("closure of the weights:")
for x, row in zip(space.labels, space.cost):
    print(f"  {x}: {[str(v) for v in row]}")
for ch in enumerate_tachistic_chains(space, "a", "d", max_edges=3):
    print("  tachistic chain a -> d:", ch)

d = spaces.diagram()
chain = ("p1", "p2", "p3", "p4")
print(f"diagram chain {chain}: chronodesic-tight={is_chronodesic_tight(d, chain)}, "
      f"tachistic={is_tachistic(d, chain)}")

s = PathChainSum.of({("a", "b", "c", "d"): 1, ("b", "c"): 2})
print("boundary:", boundary(s).as_dict())
print("boundary of boundary is zero:", boundary(boundary(s)).is_zero())
