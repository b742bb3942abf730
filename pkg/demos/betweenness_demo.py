"""Derived betweenness on the asymmetric four-point diagram and on a circle."""
from costspace import check_axioms, derive_betweenness, spaces

d = spaces.diagram()
rel = derive_betweenness(d)
print("diagram costs:")
for x, row in zip(d.labels, d.cost):
    print(f"  {x}: {[str(v) for v in row]}")
for t in [("p1", "p2", "p3"), ("p2", "p3", "p4"), ("p1", "p2", "p4"), ("p1", "p3", "p4")]:
    print(f"  {t} between: {t in rel}")
print("axioms on diagram:", check_axioms(rel).ok)

circle = spaces.circle(12)
crel = derive_betweenness(circle)
print(f"circle(12): {len(crel.triples)} betweenness triples, axioms ok: {check_axioms(crel).ok}")
