"""Effective noise model: experimental knobs to channel parameters.

Squeezing (in dB) maps to a dephasing probability through an exponential
proxy, baseline loss couples to that dephasing to give a heralded erasure
probability, and the composite channel applies erasure stochastically but
the Pauli channels as exact mixed-state maps (a variance-reduced but
unbiased estimator of the same averaged metrics; only erasure gates the
repeat-until-success control flow, so only erasure is sampled).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .qmath import dephasing_channel, depolarizing_channel


@dataclass(frozen=True)
class NoiseParams:
    """All effective-noise knobs for one grid point.

    s_db and p_base are the swept coordinates; the remaining fields are
    calibration constants shared across a sweep.
    """

    s_db: float = 12.0
    p_base: float = 0.02
    alpha_s: float = 0.2
    beta: float = 0.25
    alpha_ls: float = 1.0
    p_dep_data: float = 0.23
    p_dep_ancilla: float = 0.02
    p_dep_out: float = 0.08

    def __post_init__(self):
        if self.s_db < 0:
            raise ValueError("s_db must be >= 0")
        if not 0.0 <= self.p_base <= 1.0:
            raise ValueError("p_base must be in [0, 1]")
        if self.alpha_s <= 0:
            raise ValueError("alpha_s must be > 0")
        if self.beta <= 0:
            raise ValueError("beta must be > 0")
        if self.alpha_ls < 0:
            raise ValueError("alpha_ls must be >= 0")
        for name in ("p_dep_data", "p_dep_ancilla", "p_dep_out"):
            v = getattr(self, name)
            if not 0.0 <= v <= 0.75:
                raise ValueError(f"{name} must be in [0, 3/4]")

    @property
    def p_z(self) -> float:
        return p_z_of_squeezing(self.s_db, self.alpha_s, self.beta)

    @property
    def p_e(self) -> float:
        return erasure_prob(self.p_base, self.alpha_ls, self.p_z)


@dataclass(frozen=True)
class ChannelDraw:
    """Outcome of one composite-channel application: erased, or passed
    with the post-channel state."""

    erased: bool
    rho: Optional[np.ndarray] = None


def p_z_of_squeezing(s_db: float, alpha_s: float, beta: float) -> float:
    """Dephasing probability min(0.5, alpha_s * exp(-beta * s_db))."""
    if s_db < 0:
        raise ValueError(f"s_db must be >= 0, got {s_db}")
    return min(0.5, alpha_s * np.exp(-beta * s_db))


def erasure_prob(p_base: float, alpha_ls: float, p_z: float) -> float:
    """Heralded erasure probability min(1, p_base * (1 + alpha_ls * p_z))."""
    return min(1.0, p_base * (1.0 + alpha_ls * p_z))


def sample_composite(rho: np.ndarray, p_e: float, p_z: float, p_dep: float,
                     rng: np.random.Generator) -> ChannelDraw:
    """One composite-map draw; consumes exactly one uniform variate.

    With probability p_e the qubit is erased; otherwise the dephasing and
    depolarizing maps are applied deterministically, in that order.
    """
    u = rng.random()
    if u < p_e:
        return ChannelDraw(erased=True)
    return ChannelDraw(erased=False,
                       rho=depolarizing_channel(dephasing_channel(rho, p_z), p_dep))


def trial_rng(master_seed: int, point_index: int, trial_index: int) -> np.random.Generator:
    """Independent substream for one (grid point, trial) pair.

    Keyed purely by the three integers, so results do not depend on
    scheduling or worker count.
    """
    return np.random.default_rng((master_seed, point_index, trial_index))
