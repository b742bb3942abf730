"""Directed curvature in closed form and the brute-force grid oracle."""
from costspace import directed_curvature, find_medians, grid_oracle_curvature, gromov_radii, spaces

for name, space, triple in [("tripod", spaces.tripod(), ("x1", "x2", "x3")),
                            ("uniform(3)", spaces.uniform(3), (0, 1, 2)),
                            ("directed cycle", spaces.directed_cycle(), ("a", "b", "c")),
                            ("directed cycle", spaces.directed_cycle(), ("a", "c", "b"))]:
    res = directed_curvature(space, *triple)
    print(f"{name} {triple}: rho={res.rho} witness={res.witness} radii={tuple(map(str, res.radii))}")

# The grid oracle takes the supremum over every feasible radius vector. On a
# finite ground it can exceed the closed form, as the tripod shows.
orc = grid_oracle_curvature(spaces.tripod(), "x1", "x2", "x3")
print(f"tripod oracle: {orc.rho:.3f} at radii {tuple(round(r, 3) for r in orc.oracle_radii)}")

d = spaces.diagram()
print("diagram Gromov radii of (p1,p2,p3):", tuple(map(str, gromov_radii(d, "p1", "p2", "p3"))))
print("tripod medians:", find_medians(spaces.tripod(), "x1", "x2", "x3"))
