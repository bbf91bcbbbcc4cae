#!/usr/bin/env python3
"""Best weighted harvested power vs transmit power for one channel draw.

Uses an artificially strong channel (x40 gain) so the curve saturates inside
a short grid; at realistic distances saturation needs hundreds of watts.
"""

import numpy as np

from wptregion import (
    ChannelConfig,
    ChannelPair,
    GridSpec,
    RectennaParams,
    Weights,
    build_phi_curve,
    draw_channel_pair,
)

params = RectennaParams()
base = draw_channel_pair(ChannelConfig(n_t=4, seed=7), 0)
pair = ChannelPair(g1=base.g1 * 40, g2=base.g2 * 40, n_t=4)
weights = Weights(0.5, 0.5)

curve = build_phi_curve(pair, weights, params, GridSpec(delta_rho=0.25, n_rho=40), seed=1)
print(f"curve: {len(curve.points)} grid points, saturated={curve.saturated}\n")
print(f"{'nu (W)':>8} {'value (uW)':>11} {'region':>8} {'eig ratio':>10} {'sca iters':>10}")
for pt in curve.points[:: max(1, len(curve.points) // 18)]:
    print(f"{pt.nu:>8.2f} {pt.value * 1e6:>11.5f} {str(pt.region):>8} "
          f"{pt.eig_ratio:>10.2e} {pt.n_iter:>10}")
