# %% [markdown]
# # Ceva and Menelaus in Nil, Sol and SL2R~
#
# Build one Ceva configuration per geometry, look at the three ratios, then
# run a small random suite and compare worst-case deviations.

# %%
from __future__ import annotations

from thurston_tri.harness import build_ceva, build_menelaus, random_suite, verify

triangles = {
    "nil": [(0, 0, 0), (-1, 1, 1), (0.5, 1, 0.5)],
    "sol": [(0, 0, 0), (1.25, 0.5, 1), (0.2, 1, 0.5)],
    "slr": [(0, 0, 0), (0.3, 0.1, 0.2), (0.05, 0.35, -0.1)],
}

# %% [markdown]
# Cevians through the point with barycentric weights (0.2, 0.3, 0.5) in the
# reduced picture.  Each ratio is computed from the lifted division point in
# the geometry itself, and the product should be 1.

# %%
for name, verts in triangles.items():
    rep = verify(build_ceva(name, verts, weights=(0.2, 0.3, 0.5)))
    vals = ", ".join(f"{r.value:+.6f}" for r in rep.ratios)
    print(f"{name:4s} ceva  ratios [{vals}]  product {rep.product:.15f}")

# %% [markdown]
# Menelaus: the transversal through the midpoint of A0A1 and the quarter
# point of A1A2 (taken in the reduced picture) meets the third side line
# outside the side.  The product of signed ratios should be -1.

# %%
for name, verts in triangles.items():
    V = build_ceva(name, verts).reduction.reduced
    line = (0.5 * (V[0] + V[1]), 0.75 * V[1] + 0.25 * V[2])
    rep = verify(build_menelaus(name, verts, transversal=line))
    print(f"{name:4s} menelaus product {rep.product:+.15f}  deviation {rep.deviation:.1e}")

# %% [markdown]
# Random suites.  All numbers are worst cases over the sampled configurations.

# %%
for name in ("nil", "sol", "slr"):
    _, summary = random_suite(name, trials=100, seed=0)
    for kind in ("ceva", "menelaus"):
        s = summary[kind]
        print(f"{name:4s} {kind:9s} n={s['count']:3d}  max dev {s['max_deviation']:.2e}")
