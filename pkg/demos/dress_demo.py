"""Words over pair generators, their psi image, and rewriting to base generators."""
from costspace import (CycleStructure, GroupWord, cost_hom, psi, psi_preimage, relator,
                       rewrite_to_base, spaces)

g = {"a": -2, "b": 1, "c": 1}
w = psi_preimage(g)
print("preimage of", g, "->", w.letters, "; psi back:", psi(w))
print("psi of the relator (a,b,c):", psi(relator("a", "b", "c")))

cyc = CycleStructure.of_size(6)
lab = cyc.labels
long = GroupWord.gen(lab[1], lab[4])
print(f"X_{{{lab[1]},{lab[4]}}} on the 6-cycle rewrites to", rewrite_to_base(long, cyc).letters)

space = spaces.interval(5)
x = space.labels
print("cost_hom of a relator on the interval:", cost_hom(relator(x[0], x[2], x[4]), space))
