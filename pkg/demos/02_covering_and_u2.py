# %% [markdown]
# Relations between SU(2), SO(3) and U(2).
#
# Every SO(3) point has 2^(2l) lifts to SU(2), all differing by signs.
# U(2) points map to SO(3) by dividing out the centre, and scalar twists
# of the holonomies do not change the image.

# %%
import numpy as np

from ymstrata import SO3, U2, BundleData, SolverConfig, solve
from ymstrata.variety import central_twist, lift_so3_su2, project_su2_so3, quotient_by_central_torus, so3_bundle_type

rot = solve(BundleData(SO3, 2), SolverConfig(seed=3))
lifts, c = lift_so3_su2(rot)
back = max(np.abs(project_su2_so3(r).holonomies - rot.holonomies).max() for r in lifts)
print(f"{len(lifts)} lifts to c = {'I' if c[0, 0].real > 0 else '-I'}, projection error {back:.1e}")

# %%
rng = np.random.default_rng(0)
for c in (np.eye(2), -np.eye(2)):
    rep = solve(BundleData(U2, 2, c), SolverConfig(seed=4))
    image = quotient_by_central_torus(rep)
    twisted = quotient_by_central_torus(central_twist(rep, rng.uniform(-np.pi, np.pi, 4)))
    change = np.abs(image.holonomies - twisted.holonomies).max()
    print(f"c={c[0, 0].real:+.0f}: SO(3) bundle type {so3_bundle_type(image):+d}, twist change {change:.1e}")
