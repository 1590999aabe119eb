# %% [markdown]
# SU(2) over a genus-2 surface: the three orbit types.
#
# A random solve lands on an irreducible point.  Diagonal holonomies give
# the circle-stabilized stratum and the sixteen sign assignments give the
# central points.

# %%
import numpy as np

from ymstrata import BundleData, SU2, SolverConfig, classify_point, cohomology, solve
from ymstrata.variety import central_representations, torus_representation

bundle = BundleData(SU2, 2)
irreducible = solve(bundle, SolverConfig(seed=1))
diagonal = torus_representation(bundle, [0.4, 1.3, 2.2, 0.9])
central = central_representations(bundle)

# %%
for name, rep in [("irreducible", irreducible), ("diagonal", diagonal), ("central", central[3])]:
    pc = classify_point(rep)
    print(f"{name:12s} label={pc.label}  h={pc.h}  stratum dim={pc.stratum_dim}  top={pc.top}")

# %% [markdown]
# Cohomology dimensions at an irreducible point satisfy h1 = 6l - 6 and are
# unchanged by conjugation.

# %%
g = SU2.random_element(np.random.default_rng(0))
print(cohomology(irreducible).dims, cohomology(irreducible.conjugate(g)).dims)
print("central points:", len(central))
