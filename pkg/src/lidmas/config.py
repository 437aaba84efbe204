"""Run configuration: one JSON document covering every knob.

Absent fields take the shipped calibrated defaults; unknown keys are
rejected so typos cannot silently fall back to defaults.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields, replace
from typing import Any, Dict, Optional

import numpy as np

from .analysis import BoundaryTargets
from .injection import RusConfig
from .noise import NoiseParams
from .outer_code import OuterCodeParams
from .sweep import GridSpec


class ConfigError(ValueError):
    """Configuration problem, keyed by the offending field."""

    def __init__(self, key: str, message: str):
        super().__init__(f"config key {key!r}: {message}")
        self.key = key


@dataclass(frozen=True)
class RunConfig:
    grid: GridSpec = field(default_factory=GridSpec)
    noise: NoiseParams = field(default_factory=NoiseParams)
    outer_code: OuterCodeParams = field(default_factory=OuterCodeParams)
    rus: RusConfig = field(default_factory=RusConfig)
    targets: BoundaryTargets = field(default_factory=BoundaryTargets)
    out_dir: str = "out"
    # True when the document explicitly set grid.master_seed (the CLI seed
    # precedence needs to distinguish "configured" from "defaulted").
    seed_was_explicit: bool = False


_SECTION_TYPES = {
    "grid": GridSpec,
    "noise": NoiseParams,
    "outer_code": OuterCodeParams,
    "rus": RusConfig,
    "targets": BoundaryTargets,
}

# keys that need coercion from JSON-friendly forms
_TUPLE_KEYS = {("grid", "s_db"), ("grid", "p_base"), ("grid", "d")}


def _parse_input_state(value: Any) -> np.ndarray:
    if value == "plus":
        return np.array([1, 1], dtype=complex) / np.sqrt(2)
    if isinstance(value, list) and len(value) == 4:
        return np.array([value[0] + 1j * value[1], value[2] + 1j * value[3]],
                        dtype=complex)
    raise ConfigError("rus.input_state",
                      'must be "plus" or a list [re0, im0, re1, im1]')


def _build_section(name: str, data: Dict[str, Any]):
    cls = _SECTION_TYPES[name]
    known = {f.name for f in fields(cls)}
    kwargs = {}
    for key, value in data.items():
        if key not in known:
            raise ConfigError(f"{name}.{key}", "unknown key")
        if (name, key) in _TUPLE_KEYS:
            value = tuple(value)
        if name == "rus" and key == "input_state":
            value = _parse_input_state(value)
        kwargs[key] = value
    try:
        return cls(**kwargs)
    except (ValueError, TypeError) as exc:
        raise ConfigError(name, str(exc)) from exc


def config_from_dict(doc: Dict[str, Any]) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError("<root>", "top-level document must be an object")
    known = set(_SECTION_TYPES) | {"out_dir"}
    for key in doc:
        if key not in known:
            raise ConfigError(key, "unknown key")
    sections = {}
    for name in _SECTION_TYPES:
        sub = doc.get(name, {})
        if not isinstance(sub, dict):
            raise ConfigError(name, "section must be an object")
        sections[name] = _build_section(name, sub)
    out_dir = doc.get("out_dir", "out")
    if not isinstance(out_dir, str):
        raise ConfigError("out_dir", "must be a string")
    explicit_seed = "master_seed" in doc.get("grid", {})
    return RunConfig(grid=sections["grid"], noise=sections["noise"],
                     outer_code=sections["outer_code"], rus=sections["rus"],
                     targets=sections["targets"], out_dir=out_dir,
                     seed_was_explicit=explicit_seed)


def load_config(path: str) -> RunConfig:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise ConfigError("<file>", f"config file not found: {path!r}")
    except json.JSONDecodeError as exc:
        raise ConfigError("<file>", f"cannot parse {path!r}: {exc}") from exc
    return config_from_dict(doc)


def config_to_dict(cfg: RunConfig) -> Dict[str, Any]:
    """Canonical plain-dict form (used for hashing and manifests)."""
    psi = np.asarray(cfg.rus.input_state, dtype=complex)
    return {
        "grid": {
            "s_db": list(cfg.grid.s_db), "p_base": list(cfg.grid.p_base),
            "d": list(cfg.grid.d), "n_trials": cfg.grid.n_trials,
            "master_seed": cfg.grid.master_seed,
            "common_random_numbers": cfg.grid.common_random_numbers,
            "workers": cfg.grid.workers,
        },
        "noise": {
            "alpha_s": cfg.noise.alpha_s, "beta": cfg.noise.beta,
            "alpha_ls": cfg.noise.alpha_ls,
            "p_dep_data": cfg.noise.p_dep_data,
            "p_dep_ancilla": cfg.noise.p_dep_ancilla,
            "p_dep_out": cfg.noise.p_dep_out,
        },
        "outer_code": {
            "prefactor": cfg.outer_code.prefactor, "p_th": cfg.outer_code.p_th,
            "w_z": cfg.outer_code.w_z, "w_p": cfg.outer_code.w_p,
        },
        "rus": {
            "r_max": cfg.rus.r_max, "branch_policy": cfg.rus.branch_policy,
            "p_branch_fail": cfg.rus.p_branch_fail,
            "input_state": [psi[0].real, psi[0].imag, psi[1].real, psi[1].imag],
            "single_loss_draw": cfg.rus.single_loss_draw,
            "depol_out_after_feedforward": cfg.rus.depol_out_after_feedforward,
        },
        "targets": {"p_star": cfg.targets.p_star, "f_star": cfg.targets.f_star},
        "out_dir": cfg.out_dir,
    }


def with_overrides(cfg: RunConfig, seed: Optional[int] = None,
                   out_dir: Optional[str] = None,
                   trials: Optional[int] = None) -> RunConfig:
    grid = cfg.grid
    if seed is not None:
        grid = replace(grid, master_seed=seed)
    if trials is not None:
        grid = replace(grid, n_trials=trials)
    return replace(cfg, grid=grid,
                   out_dir=out_dir if out_dir is not None else cfg.out_dir,
                   seed_was_explicit=cfg.seed_was_explicit or seed is not None)
