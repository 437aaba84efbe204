import math

import numpy as np
import pytest

from lidmas.noise import (NoiseParams, erasure_prob, p_z_of_squeezing,
                          sample_composite, trial_rng)
from lidmas.qmath import validate_density

from util import random_density


def test_p_z_examples():
    assert p_z_of_squeezing(200.0, 0.35, 0.25) < 1e-20
    assert p_z_of_squeezing(0.0, 0.6, 0.25) == 0.5  # clamp active
    assert p_z_of_squeezing(8.0, 0.35, 0.25) == pytest.approx(
        0.35 * math.exp(-2.0), abs=1e-15)


def test_p_z_domain_and_monotonicity():
    with pytest.raises(ValueError):
        p_z_of_squeezing(-1.0, 0.35, 0.25)
    grid = np.linspace(0, 30, 200)
    vals = [p_z_of_squeezing(s, 0.6, 0.25) for s in grid]
    assert all(b <= a for a, b in zip(vals, vals[1:]))
    unclamped = [v for v in vals if v < 0.5]
    assert all(b < a for a, b in zip(unclamped, unclamped[1:]))


def test_erasure_prob_examples():
    assert erasure_prob(0.02, 0.0, 0.37) == 0.02
    assert erasure_prob(0.02, 5.0, 0.0) == 0.02
    assert erasure_prob(0.02, 1.0, 0.05) == pytest.approx(0.021, abs=1e-15)
    assert erasure_prob(0.9, 3.0, 0.5) == 1.0  # clamp


def test_erasure_prob_monotone():
    rng = np.random.default_rng(0)
    for _ in range(200):
        p, a, z = rng.uniform(0, 0.5), rng.uniform(0, 2), rng.uniform(0, 0.5)
        dp, da, dz = rng.uniform(0, 0.1, size=3)
        base = erasure_prob(p, a, z)
        assert erasure_prob(p + dp, a, z) >= base
        assert erasure_prob(p, a + da, z) >= base
        assert erasure_prob(p, a, z + dz) >= base
        assert base >= p


def test_sample_composite_edge_cases():
    rng = np.random.default_rng(1)
    rho = random_density(rng)
    assert sample_composite(rho, 1.0, 0.1, 0.1, rng).erased
    draw = sample_composite(rho, 0.0, 0.0, 0.0, rng)
    assert not draw.erased
    np.testing.assert_allclose(draw.rho, rho, atol=1e-15)


def test_sample_composite_erasure_fraction():
    rng = np.random.default_rng(2)
    rho = random_density(rng)
    n = 100_000
    p = 0.3
    erased = sum(sample_composite(rho, p, 0.0, 0.0, rng).erased
                 for _ in range(n))
    sigma = math.sqrt(p * (1 - p) / n)
    assert abs(erased / n - p) < 3 * sigma


def test_sample_composite_consumes_one_draw():
    rho = random_density(np.random.default_rng(3))
    for p_e in (0.0, 0.5, 1.0):
        rng = np.random.default_rng(7)
        sample_composite(rho, p_e, 0.1, 0.1, rng)
        ref = np.random.default_rng(7)
        ref.random()  # the single erasure draw
        assert rng.random() == ref.random()


def test_passed_states_valid():
    rng = np.random.default_rng(4)
    for _ in range(200):
        draw = sample_composite(random_density(rng), 0.2,
                                rng.uniform(0, 0.5), rng.uniform(0, 0.75), rng)
        if not draw.erased:
            validate_density(draw.rho)


def test_noise_params_validation():
    NoiseParams()  # defaults are valid
    with pytest.raises(ValueError):
        NoiseParams(s_db=-1)
    with pytest.raises(ValueError):
        NoiseParams(p_dep_out=0.8)
    with pytest.raises(ValueError):
        NoiseParams(alpha_s=0.0)


def test_trial_rng_reproducible_and_independent():
    a = trial_rng(42, 0, 0).random(4)
    b = trial_rng(42, 0, 0).random(4)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, trial_rng(42, 0, 1).random(4))
    assert not np.array_equal(a, trial_rng(42, 1, 0).random(4))
    assert not np.array_equal(a, trial_rng(43, 0, 0).random(4))
