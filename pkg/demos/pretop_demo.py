"""Preclosures from cost thickenings, products and continuity."""
import itertools

from costspace import is_continuous, preclosure_from_cost, product, product_preclosure, spaces
from costspace.pretop import check_axioms, projection

space = spaces.interval(6)
step = space.labels[1]
pre = preclosure_from_cost(space, step)
print("one-step closure of the first point:", [str(v) for v in sorted(pre.closure({space.labels[0]}))])
print("axioms:", check_axioms(pre))

pts = space.labels
count = sum(is_continuous({pts[i]: pts[m[i]] for i in range(6)}, pre, pre)
            for m in itertools.product(range(6), repeat=6))
print(f"{count} continuous self-maps of the 6-point interval (all nondecreasing)")

small = spaces.interval(3)
p = preclosure_from_cost(small, small.labels[1])
add = product_preclosure(p, p, "additive")
print("additive product equals max-product thickening:",
      add == preclosure_from_cost(product(small, small), small.labels[1]))
print("first projection continuous:", is_continuous(projection(add.ground, 0), add, p))
