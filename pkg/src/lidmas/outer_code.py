"""Surface-code scaling-law abstraction for the outer code.

No stabilizers, syndromes or decoders: the logical error rate is the
standard A * (p/p_th)^((d+1)/2) law, and protected fidelity mixes the
injected fidelity with the maximally mixed floor of 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True)
class OuterCodeParams:
    distance: int = 1
    prefactor: float = 0.1
    p_th: float = 0.11
    w_z: float = 1.0
    w_p: float = 1.0

    def __post_init__(self):
        if self.distance < 1 or self.distance % 2 == 0:
            raise ValueError("distance must be an odd positive integer")
        if self.prefactor <= 0:
            raise ValueError("prefactor must be > 0")
        if not 0.0 < self.p_th < 1.0:
            raise ValueError("p_th must be in (0, 1)")
        if self.w_z < 0 or self.w_p < 0:
            raise ValueError("weights must be >= 0")


def effective_phys_rate(p_z: float, p_dep: float, params: OuterCodeParams) -> float:
    """Weighted residual rate w_z * p_z + w_p * p_dep, clamped to [0, 1]."""
    return min(1.0, max(0.0, params.w_z * p_z + params.w_p * p_dep))


def logical_error_rate(p_phys: float, params: OuterCodeParams) -> Tuple[float, bool]:
    """Scaling-law logical error rate and an above-threshold flag.

    Returns (p_l, above_threshold); the value is clamped at 1 rather than
    raising when p_phys >= p_th.
    """
    if p_phys < 0:
        raise ValueError("p_phys must be >= 0")
    above = p_phys >= params.p_th
    exponent = (params.distance + 1) / 2.0
    p_l = min(1.0, params.prefactor * (p_phys / params.p_th) ** exponent)
    return p_l, above


def protect_fidelity(f_inj: float, p_l: float) -> float:
    """(1 - p_l) * f_inj + p_l / 2."""
    if not 0.0 <= f_inj <= 1.0:
        raise ValueError("f_inj must be in [0, 1]")
    if not 0.0 <= p_l <= 1.0:
        raise ValueError("p_l must be in [0, 1]")
    return (1.0 - p_l) * f_inj + p_l * 0.5
