"""Harvested-power region of a two-user multi-antenna WPT system with
nonlinear energy harvesters: transfer-function model, two-mass-point transmit
policies, SDR+SCA beamforming, and Monte-Carlo region sweeps."""

__version__ = "0.1.0"

from .beamdesign import ChannelPair, PhiPoint, Weights, compute_phi_point, psi_of_w
from .channel import ChannelConfig, draw_channel_pair, path_loss_linear
from .ehmodel import RectennaParams, phi, phi_prime, varphi, weighted_psi
from .region import (
    GridSpec,
    PhiCurve,
    RegionPoint,
    TwoPointPolicy,
    average_powers,
    baseline_linear_eh,
    baseline_single_beam,
    build_phi_curve,
    solve_policy,
    sweep_region,
)
from .twopoint import SampledCurve, TwoPointMass, expected_value, slope, solve_two_point

__all__ = [
    "ChannelConfig",
    "ChannelPair",
    "GridSpec",
    "PhiCurve",
    "PhiPoint",
    "RectennaParams",
    "RegionPoint",
    "SampledCurve",
    "TwoPointMass",
    "TwoPointPolicy",
    "Weights",
    "average_powers",
    "baseline_linear_eh",
    "baseline_single_beam",
    "build_phi_curve",
    "compute_phi_point",
    "draw_channel_pair",
    "expected_value",
    "path_loss_linear",
    "phi",
    "phi_prime",
    "psi_of_w",
    "slope",
    "solve_policy",
    "solve_two_point",
    "sweep_region",
    "varphi",
    "weighted_psi",
    "__version__",
]
