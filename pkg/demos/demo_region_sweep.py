#!/usr/bin/env python3
"""Miniature harvested-power-region sweep: proposed policy vs both baselines.

A reduced grid and two channel realizations keep this to roughly a minute;
the full experiment goes through `wptregion region --profile desk` (or
`--profile paper` for the complete simulation scale).
"""

from wptregion import GridSpec, sweep_region
from wptregion.config import load_config

cfg = load_config(profile="desk", nt=2, px=5.0, seed=2026, workers=2)
cfg = cfg.__class__(**{
    **cfg.__dict__,
    "weights": (0.0, 0.25, 0.5, 0.75, 1.0),
    "n_realizations": 2,
    "grid": GridSpec(delta_rho=0.5, n_rho=40),
})

result = sweep_region(cfg)
print(f"\n{'scheme':>22} {'xi1':>5} {'e1 (uW)':>10} {'e2 (uW)':>10} {'ok':>3}")
for scheme, xi1, e1, e2, n_ok in sorted(result.rows):
    print(f"{scheme:>22} {xi1:>5.2f} {e1 * 1e6:>10.5f} {e2 * 1e6:>10.5f} {n_ok:>3}")

cells_beta = [c.policy.beta for c in result.cells if c.policy is not None]
print(f"\ntime-sharing active (beta < 1) in "
      f"{sum(1 for b in cells_beta if b < 1.0)}/{len(cells_beta)} cells")
