"""Command-line front end: run the pipeline and write machine-readable outputs.

Subcommands
-----------
eh-curve    sample the harvester transfer function over a power range
phi-curve   power-to-value curve and beamformers for one realization
point       solve one (weight, realization) cell, print policy + powers as JSON
region      full weight x realization sweep -> region.csv + policies.json
channels    dump generated channel vectors

Every run writes a manifest.json with the resolved configuration; progress
goes to stderr, machine output only to files (or stdout for `point`).
"""

import argparse
import json
import logging
import os
import sys

import numpy as np

from . import __version__, channel, config as config_mod, ehmodel, region
from .beamdesign import Weights

logger = logging.getLogger("wptregion")

__all__ = ["main", "write_outputs"]


def _complex_vec(w):
    return [[float(z.real), float(z.imag)] for z in np.asarray(w).ravel()]


def _write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")


def _write_manifest(outdir, command, cfg):
    manifest = {
        "command": command,
        "version": __version__,
        "config": config_mod.config_to_dict(cfg),
    }
    _write_json(os.path.join(outdir, "manifest.json"), manifest)


def _policy_record(cell):
    pol = cell.policy
    return {
        "xi1": cell.xi1,
        "realization": cell.realization,
        "beta": pol.beta,
        "nu1": pol.nu1,
        "nu2": pol.nu2,
        "grid_nu1": pol.grid_nu1,
        "grid_nu2": pol.grid_nu2,
        "w1": _complex_vec(pol.w1),
        "w2": _complex_vec(pol.w2),
        "region1": list(pol.region1),
        "region2": list(pol.region2),
        "eig_ratio1": pol.eig_ratio1,
        "eig_ratio2": pol.eig_ratio2,
        "curve_saturated": cell.saturated,
    }


def write_outputs(result, outdir, cfg):
    """region.csv (averaged rows, sorted by scheme then weight) and
    policies.json (per-cell proposed policies)."""
    os.makedirs(outdir, exist_ok=True)
    rows = sorted(result.rows, key=lambda r: (r[0], r[1]))
    csv_path = os.path.join(outdir, "region.csv")
    with open(csv_path, "w") as fh:
        fh.write("scheme,xi1,e1_watts,e2_watts,n_ok_realizations\n")
        for scheme, xi1, e1, e2, n_ok in rows:
            fh.write(f"{scheme},{xi1!r},{e1!r},{e2!r},{n_ok}\n")
    policies = [_policy_record(c) for c in result.cells if c.policy is not None]
    _write_json(os.path.join(outdir, "policies.json"), {"policies": policies})
    _write_manifest(outdir, "region", cfg)
    return csv_path


def _cmd_region(cfg, _args):
    result = region.sweep_region(cfg)
    path = write_outputs(result, cfg.output_dir, cfg)
    logger.info("wrote %s", path)
    return 0


def _cmd_eh_curve(cfg, args):
    os.makedirs(cfg.output_dir, exist_ok=True)
    powers = np.linspace(args.pmin, args.pmax, args.n_samples)
    path = os.path.join(cfg.output_dir, "eh_curve.csv")
    with open(path, "w") as fh:
        fh.write("p_watts,phi_watts,varphi_watts,phi_prime\n")
        for p in powers:
            p = float(p)
            fh.write(
                f"{p!r},{ehmodel.phi(p, cfg.rectenna)!r},"
                f"{ehmodel.varphi(p, cfg.rectenna)!r},"
                f"{ehmodel.phi_prime(p, cfg.rectenna)!r}\n"
            )
    _write_manifest(cfg.output_dir, "eh-curve", cfg)
    logger.info("wrote %s", path)
    return 0


def _cmd_phi_curve(cfg, args):
    os.makedirs(cfg.output_dir, exist_ok=True)
    weights = Weights(args.xi1, 1.0 - args.xi1)
    channels = channel.draw_channel_pair(cfg.channel, args.realization)
    curve = region.build_phi_curve(
        channels, weights, cfg.rectenna, cfg.grid,
        seed=(cfg.seed, int(round(args.xi1 * 1e9)), args.realization),
        epsilon=cfg.sca_epsilon, max_iter=cfg.sca_max_iter,
    )
    path = os.path.join(cfg.output_dir, "phi_curve.csv")
    with open(path, "w") as fh:
        fh.write("nu_watts,phi_watts,region_i,region_j,eig_ratio,n_sca_iter\n")
        for pt in curve.points:
            fh.write(
                f"{pt.nu!r},{pt.value!r},{pt.region[0]},{pt.region[1]},"
                f"{pt.eig_ratio!r},{pt.n_iter}\n"
            )
    _write_json(
        os.path.join(cfg.output_dir, "phi_beamformers.json"),
        {
            "xi1": args.xi1,
            "realization": args.realization,
            "saturated": curve.saturated,
            "beamformers": [_complex_vec(pt.w) for pt in curve.points],
        },
    )
    _write_manifest(cfg.output_dir, "phi-curve", cfg)
    logger.info("wrote %s (%d points, saturated=%s)", path, len(curve.points), curve.saturated)
    return 0


def _cmd_point(cfg, args):
    os.makedirs(cfg.output_dir, exist_ok=True)
    cell = region._run_cell((cfg, args.xi1, args.realization))
    if "proposed" not in cell.powers:
        logger.error("cell failed: %s", cell.errors)
        return 1
    payload = _policy_record(cell)
    payload["e1_watts"], payload["e2_watts"] = cell.powers["proposed"]
    json.dump(payload, sys.stdout, indent=1, sort_keys=True)
    sys.stdout.write("\n")
    _write_manifest(cfg.output_dir, "point", cfg)
    return 0


def _cmd_channels(cfg, _args):
    os.makedirs(cfg.output_dir, exist_ok=True)
    records = []
    for r in range(cfg.n_realizations):
        pair = channel.draw_channel_pair(cfg.channel, r)
        records.append(
            {"realization": r, "g1": _complex_vec(pair.g1), "g2": _complex_vec(pair.g2)}
        )
    path = os.path.join(cfg.output_dir, "channels.json")
    _write_json(path, {"n_t": cfg.channel.n_t, "channels": records})
    _write_manifest(cfg.output_dir, "channels", cfg)
    logger.info("wrote %s", path)
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="wptregion",
        description="Harvested-power region solver for two-user wireless power transfer",
    )
    parser.add_argument("--config", help="INI config file or manifest.json to replay")
    parser.add_argument("--profile", choices=sorted(config_mod.PROFILES))
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--px", type=float, help="transmit power budget in watts")
    parser.add_argument("--nt", type=int, help="number of transmit antennas")
    parser.add_argument("--workers", type=int)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eh = sub.add_parser("eh-curve", help="sample the harvester transfer function")
    p_eh.add_argument("--pmin", type=float, default=0.0)
    p_eh.add_argument("--pmax", type=float, default=50e-6)
    p_eh.add_argument("--n-samples", type=int, default=101)

    p_phi = sub.add_parser("phi-curve", help="power-to-value curve for one realization")
    p_phi.add_argument("--xi1", type=float, default=0.5)
    p_phi.add_argument("--realization", type=int, default=0)

    p_point = sub.add_parser("point", help="solve one (weight, realization) cell")
    p_point.add_argument("--xi1", type=float, default=0.5)
    p_point.add_argument("--realization", type=int, default=0)

    sub.add_parser("region", help="full region sweep")
    sub.add_parser("channels", help="dump generated channels")
    return parser


_COMMANDS = {
    "eh-curve": _cmd_eh_curve,
    "phi-curve": _cmd_phi_curve,
    "point": _cmd_point,
    "region": _cmd_region,
    "channels": _cmd_channels,
}


def main(argv=None):
    args = _build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        cfg = config_mod.load_config(
            args.config,
            profile=args.profile,
            output_dir=args.out,
            seed=args.seed,
            px=args.px,
            nt=args.nt,
            workers=args.workers,
        )
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](cfg, args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
