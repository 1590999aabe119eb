# %% [markdown]
# A census: random solves plus hand-built points, aggregated by orbit type,
# with perturbation trials from every lower stratum.

# %%
import json

from ymstrata import BundleData, SU2, SolverConfig, census

report = census(BundleData(SU2, 2), 100, SolverConfig(seed=0), density_trials=20)
for label, row in report.labels.items():
    print(f"{label:6s} count={row['count']:4d} dims={row['stratum_dims']} top={row['top']}")
print("top rule:", report.top_rule)
print(json.dumps(report.density, indent=1, sort_keys=True))
print("volume indicator:", report.volume)
