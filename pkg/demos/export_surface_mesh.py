# %% [markdown]
# # Sampling a Sol triangle surface
#
# The surface spanned by a translation triangle is the zero set of the
# determinant of the unit tangents towards the three vertices.  We sample it
# on a grid over the footprint and write an OBJ file.

# %%
from __future__ import annotations

from pathlib import Path

from thurston_tri import TriangleSpec, surface_mesh

tri = TriangleSpec("sol", [(0, 0, 0), (1.25, 0.5, 1), (0.2, 1, 0.5)])
mesh = surface_mesh(tri, resolution=64)
print(f"{len(mesh.vertices)} vertices, {len(mesh.faces)} faces, coverage {mesh.coverage:.1%}")
print(f"max |det| on samples {mesh.max_residual:.1e}")
print("fibres with several roots:", mesh.metadata["multi_root_samples"])

# %%
out = Path("sol_triangle.obj")
with out.open("w") as fh:
    for v in mesh.vertices:
        fh.write(f"v {v[0]:.9f} {v[1]:.9f} {v[2]:.9f}\n")
    for f in mesh.faces + 1:
        fh.write(f"f {f[0]} {f[1]} {f[2]}\n")
print("wrote", out)

# %% [markdown]
# The same thing from the command line:
#
#     thurston-tri surface --geometry sol --vertices "(1.25,0.5,1);(0.2,1,0.5)" --out sol_triangle.obj
