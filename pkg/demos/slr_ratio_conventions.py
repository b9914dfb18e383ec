# %% [markdown]
# # Two ratio conventions in SL2R~
#
# In the hyperboloid model a translation-curve side is a straight segment.
# The ratio of model-Euclidean lengths along it satisfies Ceva and Menelaus;
# the ratio of translation distances does not.  This script puts numbers on it.

# %%
from __future__ import annotations

import numpy as np

from thurston_tri.harness import random_suite

reports, summary = random_suite("slr", trials=300, seed=0)

# %%
for kind in ("ceva", "menelaus"):
    devs = np.array([r.deviation for r in reports if r.kind == kind])
    alt = np.array([r.alt_deviation for r in reports if r.kind == kind])
    print(f"{kind:9s} euclidean  max {devs.max():.2e}")
    print(f"{kind:9s} distance   max {alt.max():.2e}  median {np.median(alt):.2e}  "
          f"off by >1e-9: {np.mean(alt > 1e-9):.0%}")

# %%
print("alt verdict:", {k: summary[k]["alt"]["verdict"] for k in ("ceva", "menelaus")})
