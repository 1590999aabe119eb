# %% [markdown]
# The quadratic local model at a reducible SU(2) point.
#
# At a diagonal point H^2 is one-dimensional and the moment map is a
# quadratic form on H^1.  Directions where it vanishes extend to third
# order after a second-order correction; others only to second order.

# %%
import numpy as np

from ymstrata import BundleData, SU2, cohomology, cone_consistency, quadratic_moment, symplectic_form
from ymstrata.variety import torus_representation

rep = torus_representation(BundleData(SU2, 2), [0.3, 0.7, 1.1, 2.0])
co = cohomology(rep)
Q = quadratic_moment(rep, co)
w, V = np.linalg.eigh(Q.tensor[0])
print("h =", co.dims, " moment form eigenvalues:", np.round(w, 3))

# %%
plus, minus = V[:, np.argmax(w)], V[:, np.argmin(w)]
null = np.sqrt(-w.min()) * plus + np.sqrt(w.max()) * minus
kernel = V[:, np.abs(w) < 1e-9][:, 0]
for name, eta in [("moment zero", kernel + null / np.linalg.norm(null)), ("moment non-zero", plus)]:
    r = cone_consistency(rep, eta / np.linalg.norm(eta), co=co)
    print(f"{name:16s} |Theta|={r.theta_norm:.1e}  slopes plain={r.slope_plain:.2f} corrected={r.slope_corrected:.2f}")

# %% [markdown]
# The antisymmetrized pairing on harmonic H^1 is non-degenerate here too,
# even though the point is reducible.

# %%
form = symplectic_form(rep, co=co)
print("singular values:", np.round(form.singular_values, 3))
