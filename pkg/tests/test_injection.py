import math
from dataclasses import replace

import numpy as np
import pytest

from lidmas.injection import (BORN, DESIGNATED, RusConfig, estimate_point,
                              injection_attempt, prepare_magic_ancilla,
                              rus_inject)
from lidmas.noise import NoiseParams, trial_rng
from lidmas.qmath import KET_PLUS, T, fidelity_pure, pure_state_density

from util import gadget_branch_probs_oracle, random_pure, truncated_geometric_oracle

# alpha_s must stay positive; a huge squeezing value turns dephasing off
NOISELESS = NoiseParams(s_db=1e6, p_base=0.0, alpha_ls=0.0,
                        p_dep_data=0.0, p_dep_ancilla=0.0, p_dep_out=0.0)


def designated(p_fail, **kw):
    return RusConfig(branch_policy=DESIGNATED, p_branch_fail=p_fail, **kw)


def test_prepare_magic_ancilla_noiseless():
    draw = prepare_magic_ancilla(NOISELESS, np.random.default_rng(0))
    assert not draw.erased
    assert fidelity_pure(draw.rho, T @ KET_PLUS) == pytest.approx(1.0, abs=1e-12)
    # |A><A| off-diagonal entry
    assert draw.rho[0, 1] == pytest.approx(np.exp(-1j * np.pi / 4) / 2, abs=1e-12)


def test_prepare_magic_ancilla_certain_loss():
    noise = replace(NOISELESS, p_base=1.0)
    assert prepare_magic_ancilla(noise, np.random.default_rng(0)).erased


def test_noiseless_attempt_is_exact_t_gate():
    rng = np.random.default_rng(1)
    cfg = designated(0.0)
    rho_in = pure_state_density(KET_PLUS)
    out = injection_attempt(rho_in, NOISELESS, cfg, rng)
    assert out.kind == "success"
    undone = out.frame.conj().T @ out.rho_out @ out.frame
    assert fidelity_pure(undone, T @ KET_PLUS) == pytest.approx(1.0, abs=1e-10)


def test_certain_data_loss_consumes_single_draw():
    noise = replace(NOISELESS, p_base=1.0)
    cfg = designated(0.0)
    rng = np.random.default_rng(2)
    out = injection_attempt(pure_state_density(KET_PLUS), noise, cfg, rng)
    assert out.kind == "erased"
    ref = np.random.default_rng(2)
    ref.random()  # only the data-location draw was consumed
    assert rng.random() == ref.random()


def test_born_branch_frequencies_match_physical_probability():
    # The X-basis branch on a noiseless gadget succeeds with probability
    # (2 + sqrt(2)) / 4, per the independent amplitude-level oracle.
    p_plus, _ = gadget_branch_probs_oracle()
    cfg = RusConfig(branch_policy=BORN)
    rho_in = pure_state_density(KET_PLUS)
    rng = np.random.default_rng(3)
    n = 100_000
    wins = sum(
        injection_attempt(rho_in, NOISELESS, cfg, rng).kind == "success"
        for _ in range(n))
    sigma = math.sqrt(p_plus * (1 - p_plus) / n)
    assert abs(wins / n - p_plus) < 3 * sigma


def test_noiseless_identity_random_inputs():
    rng = np.random.default_rng(4)
    for _ in range(100):
        psi = random_pure(rng)
        cfg = designated(0.0, input_state=psi)
        rec = rus_inject(cfg, NOISELESS, rng)
        assert rec.succeeded and rec.rounds_used == 1
        assert rec.fidelity == pytest.approx(1.0, abs=1e-10)


def test_rus_certain_failure():
    cfg = designated(1.0, r_max=7)
    rec = rus_inject(cfg, NOISELESS, np.random.default_rng(5))
    assert not rec.succeeded
    assert rec.rounds_used == 7
    assert rec.fidelity is None


@pytest.mark.parametrize("f", [0.1, 0.3, 0.5])
@pytest.mark.parametrize("r_max", [1, 3, 10])
def test_truncated_geometric_law(f, r_max):
    cfg = designated(f, r_max=r_max)
    n = 5000
    stats = estimate_point(cfg, NOISELESS, n,
                           lambda t: trial_rng(99, 0, t))
    p_succ_oracle, mean_oracle = truncated_geometric_oracle(1.0 - f, r_max)
    p_hat = stats.successes / n
    se_p = math.sqrt(p_succ_oracle * (1 - p_succ_oracle) / n) or 1e-12
    assert abs(p_hat - p_succ_oracle) <= 3 * se_p
    mean_hat = stats.round_sum / stats.successes
    var_hat = (stats.round_sumsq - stats.successes * mean_hat ** 2) \
        / max(1, stats.successes - 1)
    se_m = math.sqrt(max(var_hat, 1e-24) / stats.successes)
    assert abs(mean_hat - mean_oracle) <= max(3 * se_m, 1e-12)


def test_rus_geometric_with_loss_locations():
    # per-attempt success (1 - p_E)^2 (1 - p_branch_fail)
    noise = replace(NOISELESS, p_base=0.02)
    cfg = designated(0.1, r_max=10)
    n = 5000
    stats = estimate_point(cfg, noise, n, lambda t: trial_rng(7, 0, t))
    p_att = (1 - 0.02) ** 2 * 0.9
    p_succ_oracle, mean_oracle = truncated_geometric_oracle(p_att, 10)
    se_p = math.sqrt(p_succ_oracle * (1 - p_succ_oracle) / n)
    assert abs(stats.successes / n - p_succ_oracle) <= 3 * se_p
    mean_hat = stats.round_sum / stats.successes
    var_hat = (stats.round_sumsq - stats.successes * mean_hat ** 2) \
        / (stats.successes - 1)
    assert abs(mean_hat - mean_oracle) <= 3 * math.sqrt(var_hat / stats.successes)


def test_single_loss_draw_flag():
    noise = replace(NOISELESS, p_base=0.3)
    cfg = designated(0.0, r_max=1, single_loss_draw=True)
    n = 5000
    stats = estimate_point(cfg, noise, n, lambda t: trial_rng(8, 0, t))
    p = 1 - 0.3  # one loss location only
    se = math.sqrt(p * (1 - p) / n)
    assert abs(stats.successes / n - p) <= 3 * se


def test_loss_does_not_affect_success_quality():
    # with zero loss-squeezing coupling, conditional fidelity must not
    # depend on p_base (here it is exactly deterministic)
    noise_a = NoiseParams(s_db=10.0, p_base=0.01, alpha_ls=0.0)
    noise_b = NoiseParams(s_db=10.0, p_base=0.03, alpha_ls=0.0)
    cfg = designated(0.1)
    sub = lambda t: trial_rng(11, 0, t)
    sa = estimate_point(cfg, noise_a, 2000, sub)
    sb = estimate_point(cfg, noise_b, 2000, sub)
    assert sa.fid_sum / sa.successes == pytest.approx(
        sb.fid_sum / sb.successes, abs=1e-12)


def test_rounds_and_fidelity_ranges():
    noise = NoiseParams(s_db=8.0, p_base=0.03)
    cfg = designated(0.3, r_max=4)
    rng = np.random.default_rng(12)
    for _ in range(500):
        rec = rus_inject(cfg, noise, rng)
        assert 1 <= rec.rounds_used <= 4
        if rec.succeeded:
            assert 0.0 <= rec.fidelity <= 1.0


def test_estimate_point_noiseless_aggregates():
    cfg = designated(0.0)
    stats = estimate_point(cfg, NOISELESS, 50, lambda t: trial_rng(13, 0, t))
    assert stats.successes == 50
    assert stats.round_sum == 50
    assert stats.fid_sum == pytest.approx(50.0, abs=1e-9)
    assert stats.fid_sumsq == pytest.approx(50.0, abs=1e-9)


def test_estimate_point_certain_failure_aggregates():
    cfg = designated(1.0)
    stats = estimate_point(cfg, NOISELESS, 50, lambda t: trial_rng(14, 0, t))
    assert (stats.successes, stats.round_sum, stats.fid_sum,
            stats.fid_sumsq) == (0, 0, 0.0, 0.0)


def test_estimate_point_matches_direct_loop():
    noise = NoiseParams(s_db=10.0, p_base=0.02)
    cfg = designated(0.115)
    stats = estimate_point(cfg, noise, 200, lambda t: trial_rng(21, 5, t))
    successes = round_sum = 0
    fid_sum = 0.0
    for t in range(200):
        rec = rus_inject(cfg, noise, trial_rng(21, 5, t))
        if rec.succeeded:
            successes += 1
            round_sum += rec.rounds_used
            fid_sum += rec.fidelity
    assert stats.successes == successes
    assert stats.round_sum == round_sum
    assert stats.fid_sum == fid_sum  # bit-for-bit


def test_config_validation():
    with pytest.raises(ValueError):
        RusConfig(r_max=0)
    with pytest.raises(ValueError):
        RusConfig(branch_policy="majority")
    with pytest.raises(ValueError):
        RusConfig(input_state=np.array([1.0, 1.0]))
