"""T-gate injection gadget with Clifford feedforward and the RUS loop.

One attempt: noisy data qubit and noisy magic ancilla |A> = T|+>, a CNOT
with the data as control, an X-basis branch on the ancilla, and on the
designated branch the conditional map S^dag T rho T^dag S with the S^dag
frame recorded for later undoing. Erasure on either qubit aborts the
attempt; the complementary branch counts as a failed attempt.

The noise channels are deterministic maps, so everything about an attempt
except the erasure and branch draws is a pure function of the parameters.
That is exploited by precomputing an attempt kernel once per parameter
set; the sampled control flow (and its exact uniform-draw sequence) is
unchanged, so results are bit-identical to the naive per-attempt rebuild.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import qmath
from .noise import ChannelDraw, NoiseParams, sample_composite
from .qmath import ATOL, CNOT, S, S_DAG, T, fidelity_pure, pure_state_density

BORN = "born"
DESIGNATED = "designated"


@dataclass(frozen=True)
class RusConfig:
    r_max: int = 10
    branch_policy: str = DESIGNATED
    p_branch_fail: float = 0.115
    input_state: np.ndarray = field(default_factory=lambda: qmath.KET_PLUS.copy())
    single_loss_draw: bool = False
    depol_out_after_feedforward: bool = True

    def __post_init__(self):
        if self.r_max < 1:
            raise ValueError("r_max must be >= 1")
        if self.branch_policy not in (BORN, DESIGNATED):
            raise ValueError(f"unknown branch policy: {self.branch_policy}")
        if not 0.0 <= self.p_branch_fail <= 1.0:
            raise ValueError("p_branch_fail must be in [0, 1]")
        psi = np.asarray(self.input_state, dtype=complex)
        if psi.shape != (2,) or abs(np.vdot(psi, psi).real - 1.0) > ATOL:
            raise ValueError("input_state must be a unit-norm 2-vector")


@dataclass(frozen=True)
class AttemptOutcome:
    """Tagged result of one injection attempt."""

    kind: str  # "erased" | "wrong_branch" | "success"
    rho_out: Optional[np.ndarray] = None
    frame: Optional[np.ndarray] = None  # Clifford to undo before comparing


@dataclass(frozen=True)
class RusRecord:
    succeeded: bool
    rounds_used: int
    fidelity: Optional[float] = None


@dataclass(frozen=True)
class PointStats:
    """Sufficient statistics over independent RUS trials at one point."""

    n_trials: int
    successes: int
    round_sum: int
    round_sumsq: int
    fid_sum: float
    fid_sumsq: float


@dataclass(frozen=True)
class _AttemptKernel:
    p_e: float
    p_plus: float
    p_success_branch: float
    rho_success: Optional[np.ndarray]  # post-feedforward, post-depol state
    frame: np.ndarray
    success_fidelity: float  # frame-undone fidelity against T|psi>
    single_loss_draw: bool


def prepare_magic_ancilla(noise: NoiseParams, rng: np.random.Generator) -> ChannelDraw:
    """Build |A><A| = T|+><+|T^dag and pass it through the ancilla channel."""
    rho_a = pure_state_density(T @ qmath.KET_PLUS)
    return sample_composite(rho_a, noise.p_e, noise.p_z, noise.p_dep_ancilla, rng)


def _build_kernel(cfg: RusConfig, noise: NoiseParams) -> _AttemptKernel:
    p_z, p_e = noise.p_z, noise.p_e
    rho_in = pure_state_density(np.asarray(cfg.input_state, dtype=complex))

    rho_d = qmath.depolarizing_channel(qmath.dephasing_channel(rho_in, p_z),
                                       noise.p_dep_data)
    rho_a = qmath.depolarizing_channel(
        qmath.dephasing_channel(pure_state_density(T @ qmath.KET_PLUS), p_z),
        noise.p_dep_ancilla)

    joint = qmath.apply_unitary(np.kron(rho_d, rho_a), CNOT)
    p_plus, rho_plus, _, _ = qmath.measure_ancilla_x(joint)

    if cfg.branch_policy == BORN:
        p_success_branch = p_plus
    else:
        p_success_branch = (1.0 - cfg.p_branch_fail) if p_plus > ATOL else 0.0

    frame = S_DAG
    if rho_plus is None:
        rho_success = None
        success_fidelity = 0.0
    else:
        rho_success = qmath.apply_unitary(rho_plus, S_DAG @ T)
        if cfg.depol_out_after_feedforward:
            rho_success = qmath.depolarizing_channel(rho_success, noise.p_dep_out)
        else:
            # depolarizing commutes with unitaries, so this branch only
            # changes where the map sits in the trajectory, not the metrics
            rho_success = qmath.apply_unitary(
                qmath.depolarizing_channel(rho_plus, noise.p_dep_out), S_DAG @ T)
        target = T @ np.asarray(cfg.input_state, dtype=complex)
        success_fidelity = fidelity_pure(qmath.apply_unitary(rho_success, S), target)

    return _AttemptKernel(p_e=p_e, p_plus=p_plus,
                          p_success_branch=p_success_branch,
                          rho_success=rho_success, frame=frame,
                          success_fidelity=success_fidelity,
                          single_loss_draw=cfg.single_loss_draw)


def _sample_attempt(kernel: _AttemptKernel, rng: np.random.Generator) -> str:
    """Draw one attempt's control flow; returns the outcome kind."""
    if rng.random() < kernel.p_e:  # data qubit (or the collapsed single draw)
        return "erased"
    if not kernel.single_loss_draw and rng.random() < kernel.p_e:  # ancilla
        return "erased"
    if kernel.rho_success is None or rng.random() >= kernel.p_success_branch:
        return "wrong_branch"
    return "success"


def injection_attempt(rho_data: np.ndarray, noise: NoiseParams, cfg: RusConfig,
                      rng: np.random.Generator) -> AttemptOutcome:
    """Run one injection attempt on an arbitrary data state.

    The data state is pushed through its composite channel, the ancilla is
    prepared and pushed through its own, the gadget is applied, and the
    branch is sampled according to the configured policy.
    """
    qmath.validate_density(rho_data)
    p_z, p_e = noise.p_z, noise.p_e

    draw_d = sample_composite(rho_data, p_e, p_z, noise.p_dep_data, rng)
    if draw_d.erased:
        return AttemptOutcome(kind="erased")

    if cfg.single_loss_draw:
        rho_a = qmath.depolarizing_channel(
            qmath.dephasing_channel(pure_state_density(T @ qmath.KET_PLUS), p_z),
            noise.p_dep_ancilla)
    else:
        draw_a = prepare_magic_ancilla(noise, rng)
        if draw_a.erased:
            return AttemptOutcome(kind="erased")
        rho_a = draw_a.rho

    joint = qmath.apply_unitary(np.kron(draw_d.rho, rho_a), CNOT)
    p_plus, rho_plus, _, _ = qmath.measure_ancilla_x(joint)

    if cfg.branch_policy == BORN:
        p_success_branch = p_plus
    else:
        p_success_branch = (1.0 - cfg.p_branch_fail) if p_plus > ATOL else 0.0

    if rho_plus is None or rng.random() >= p_success_branch:
        return AttemptOutcome(kind="wrong_branch")

    rho_out = qmath.apply_unitary(rho_plus, S_DAG @ T)
    if cfg.depol_out_after_feedforward:
        rho_out = qmath.depolarizing_channel(rho_out, noise.p_dep_out)
    else:
        rho_out = qmath.apply_unitary(
            qmath.depolarizing_channel(rho_plus, noise.p_dep_out), S_DAG @ T)
    return AttemptOutcome(kind="success", rho_out=rho_out, frame=S_DAG)


def _rus_with_kernel(kernel: _AttemptKernel, r_max: int,
                     rng: np.random.Generator) -> RusRecord:
    for r in range(1, r_max + 1):
        outcome = _sample_attempt(kernel, rng)
        if outcome == "success":
            return RusRecord(succeeded=True, rounds_used=r,
                             fidelity=kernel.success_fidelity)
    return RusRecord(succeeded=False, rounds_used=r_max)


def rus_inject(cfg: RusConfig, noise: NoiseParams,
               rng: np.random.Generator) -> RusRecord:
    """Repeat injection attempts on fresh input copies until success or r_max."""
    kernel = _build_kernel(cfg, noise)
    return _rus_with_kernel(kernel, cfg.r_max, rng)


def estimate_point(cfg: RusConfig, noise: NoiseParams, n_trials: int,
                   substream) -> PointStats:
    """Aggregate n_trials independent RUS trials.

    substream is a callable mapping trial_index -> numpy Generator; each
    trial runs on its own stream so aggregation is order-insensitive.
    """
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    kernel = _build_kernel(cfg, noise)
    successes = 0
    round_sum = 0
    round_sumsq = 0
    fid_sum = 0.0
    fid_sumsq = 0.0
    for t in range(n_trials):
        rec = _rus_with_kernel(kernel, cfg.r_max, substream(t))
        if rec.succeeded:
            successes += 1
            round_sum += rec.rounds_used
            round_sumsq += rec.rounds_used ** 2
            fid_sum += rec.fidelity
            fid_sumsq += rec.fidelity ** 2
    return PointStats(n_trials=n_trials, successes=successes,
                      round_sum=round_sum, round_sumsq=round_sumsq,
                      fid_sum=fid_sum, fid_sumsq=fid_sumsq)
