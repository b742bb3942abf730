"""Tight function pairs: Kuratowski pairs and the tightening iteration."""
from costspace import (is_admissible_pair, is_bitight_pair, iterate_tight_pairs, kuratowski_pair,
                       spaces, tighten_f)

space = spaces.asymmetric_interval(4)
x = space.labels[1]
k = kuratowski_pair(space, x)
print("Kuratowski pair of", x, ": f =", [str(v) for v in k.f], "g =", [str(v) for v in k.g])
print("admissible:", is_admissible_pair(space, k.f, k.g)[0], " bi-tight:", is_bitight_pair(space, k.f, k.g)[0])
print("tighten_f(g) == f:", tighten_f(space, k.g) == k.f)

trace = iterate_tight_pairs(space, [0] * len(space))
print(f"iteration from g0 = 0 stopped after {len(trace)} steps")
for i, pair in enumerate(trace, start=1):
    print(f"  step {i}: f={[str(v) for v in pair.f]} g={[str(v) for v in pair.g]}")
