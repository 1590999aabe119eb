# %% [markdown]
# O(2) and O(3) with a non-trivial component map, and the Klein four
# point in SO(3).
#
# The component map assigns each generator to a component.  For O(2) the
# adjoint action is by a sign, so every stabilizer is finite.

# %%
from ymstrata import O2, O3, BundleData, SolverConfig, classify_point, solve
from ymstrata.catalog import o3_splitting, ramanathan_example

phi = (-1, 1, 1, 1)
for spec in (O2, O3):
    rep = solve(BundleData(spec, 2, phi=phi), SolverConfig(seed=2))
    pc = classify_point(rep)
    print(f"{spec.name}: label={pc.label}  h={pc.h}  top={pc.top}")

# %% [markdown]
# An O(3) point splits into signs and an SO(3) point; stabilizers pick up
# a factor Z/2 from -I.

# %%
rec = o3_splitting(2, phi, n_points=10)
print(rec.passed, rec.data["label_pairs"])

# %% [markdown]
# The Klein four point: irreducible, yet its finite stabilizer moves H^1.

# %%
rec = ramanathan_example()
print(rec.data["label"], rec.data["h"], rec.data["operator_distances"], rec.passed)
