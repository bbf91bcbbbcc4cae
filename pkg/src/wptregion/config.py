"""Experiment configuration: defaults, profiles, INI files, and manifests.

Every field has a simulation-ready default, so `wptregion region` runs with
no config file at all.  A config file is flat key = value INI with sections;
a manifest.json written by a previous run can be passed back through
--config to replay it bit-for-bit.
"""

from dataclasses import dataclass
import configparser
import json
import os

from .channel import ChannelConfig
from .ehmodel import RectennaParams
from .region import GridSpec

__all__ = ["ExperimentConfig", "PROFILES", "load_config", "config_to_dict"]

PROFILES = {
    # full simulation scale
    "paper": dict(delta_rho=0.1, n_rho=1000, n_realizations=100, weight_step=0.05),
    # minutes-scale profile used by the acceptance suite
    "desk": dict(delta_rho=0.25, n_rho=200, n_realizations=10, weight_step=0.25),
}

_DEFAULTS = dict(
    px=5.0,
    nt=4,
    seed=12345,
    n_realizations=100,
    workers=1,
    output_dir="out",
    a=1.29,
    b=1.55e3,
    i_s=5e-6,
    r_l=1e4,
    p_sat=25e-6,
    d1=10.0,
    d2=25.0,
    rician_k=1.0,
    delta_rho=0.1,
    n_rho=1000,
    sca_epsilon=1e-3,
    sca_max_iter=100,
    weight_start=0.0,
    weight_stop=1.0,
    weight_step=0.05,
    weight_list=None,
)


@dataclass(frozen=True)
class ExperimentConfig:
    rectenna: RectennaParams
    channel: ChannelConfig
    p_x: float
    grid: GridSpec
    sca_epsilon: float
    sca_max_iter: int
    weights: tuple
    n_realizations: int
    output_dir: str
    seed: int
    workers: int

    def __post_init__(self):
        if self.p_x < 0.0:
            raise ValueError(f"p_x must be >= 0, got {self.p_x}")
        if self.n_realizations < 1:
            raise ValueError("n_realizations must be >= 1")
        for xi in self.weights:
            if not 0.0 <= xi <= 1.0:
                raise ValueError(f"weights must lie in [0, 1], got {xi}")


def _weight_grid(raw):
    if raw["weight_list"] is not None:
        return tuple(float(x) for x in raw["weight_list"])
    start, stop, step = raw["weight_start"], raw["weight_stop"], raw["weight_step"]
    if step <= 0.0:
        raise ValueError("weight step must be positive")
    out = []
    k = 0
    while True:
        x = start + k * step
        if x > stop + 1e-12:
            break
        out.append(round(min(x, stop), 12))
        k += 1
    return tuple(out)


def _raw_from_ini(path):
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    with open(path) as fh:
        parser.read_file(fh)
    out = {}
    mapping = {
        ("experiment", "px"): ("px", float),
        ("experiment", "nt"): ("nt", int),
        ("experiment", "seed"): ("seed", int),
        ("experiment", "n_realizations"): ("n_realizations", int),
        ("experiment", "workers"): ("workers", int),
        ("experiment", "output_dir"): ("output_dir", str),
        ("rectenna", "a"): ("a", float),
        ("rectenna", "b"): ("b", float),
        ("rectenna", "i_s"): ("i_s", float),
        ("rectenna", "r_l"): ("r_l", float),
        ("rectenna", "p_sat"): ("p_sat", float),
        ("channel", "d1"): ("d1", float),
        ("channel", "d2"): ("d2", float),
        ("channel", "rician_k"): ("rician_k", float),
        ("grid", "delta_rho"): ("delta_rho", float),
        ("grid", "n_rho"): ("n_rho", int),
        ("sca", "epsilon"): ("sca_epsilon", float),
        ("sca", "max_iter"): ("sca_max_iter", int),
        ("weights", "start"): ("weight_start", float),
        ("weights", "stop"): ("weight_stop", float),
        ("weights", "step"): ("weight_step", float),
    }
    for (section, key), (name, conv) in mapping.items():
        if parser.has_option(section, key):
            out[name] = conv(parser.get(section, key))
    if parser.has_option("weights", "list"):
        out["weight_list"] = [
            float(x) for x in parser.get("weights", "list").replace(",", " ").split()
        ]
    return out


def _raw_from_manifest(path):
    with open(path) as fh:
        manifest = json.load(fh)
    cfg = manifest.get("config", manifest)
    known = set(_DEFAULTS)
    return {k: v for k, v in cfg.items() if k in known}


def load_config(path=None, profile=None, **overrides):
    """Resolve a configuration: defaults <- profile <- file <- overrides."""
    raw = dict(_DEFAULTS)
    if profile is not None:
        if profile not in PROFILES:
            raise ValueError(f"unknown profile {profile!r}; choose from {sorted(PROFILES)}")
        raw.update(PROFILES[profile])
    if path is not None:
        if not os.path.exists(path):
            raise FileNotFoundError(f"config file not found: {path}")
        if str(path).endswith(".json"):
            raw.update(_raw_from_manifest(path))
        else:
            raw.update(_raw_from_ini(path))
    for key, val in overrides.items():
        if val is None:
            continue
        if key not in raw:
            raise ValueError(f"unknown config override {key!r}")
        raw[key] = val
    rectenna = RectennaParams(a=raw["a"], b=raw["b"], i_s=raw["i_s"],
                              r_l=raw["r_l"], p_sat=raw["p_sat"])
    chan = ChannelConfig(n_t=int(raw["nt"]), d1=raw["d1"], d2=raw["d2"],
                         rician_k=raw["rician_k"], seed=int(raw["seed"]))
    grid = GridSpec(delta_rho=raw["delta_rho"], n_rho=int(raw["n_rho"]))
    return ExperimentConfig(
        rectenna=rectenna,
        channel=chan,
        p_x=float(raw["px"]),
        grid=grid,
        sca_epsilon=float(raw["sca_epsilon"]),
        sca_max_iter=int(raw["sca_max_iter"]),
        weights=_weight_grid(raw),
        n_realizations=int(raw["n_realizations"]),
        output_dir=str(raw["output_dir"]),
        seed=int(raw["seed"]),
        workers=int(raw["workers"]),
    )


def config_to_dict(config):
    """Flat dict capturing everything needed to replay a run."""
    return dict(
        px=config.p_x,
        nt=config.channel.n_t,
        seed=config.seed,
        n_realizations=config.n_realizations,
        workers=config.workers,
        output_dir=config.output_dir,
        a=config.rectenna.a,
        b=config.rectenna.b,
        i_s=config.rectenna.i_s,
        r_l=config.rectenna.r_l,
        p_sat=config.rectenna.p_sat,
        d1=config.channel.d1,
        d2=config.channel.d2,
        rician_k=config.channel.rician_k,
        delta_rho=config.grid.delta_rho,
        n_rho=config.grid.n_rho,
        sca_epsilon=config.sca_epsilon,
        sca_max_iter=config.sca_max_iter,
        weight_list=list(config.weights),
    )
