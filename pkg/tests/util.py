"""Shared test helpers and independent oracles.

Everything here is deliberately written from first principles (explicit
amplitude lists, brute-force sums) so it cannot share a bug with the
library code it checks.
"""

import numpy as np


def random_density(rng, dim=2):
    """Random valid density matrix via M M^dag / tr."""
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = m @ m.conj().T
    return rho / np.trace(rho)


def random_pure(rng):
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return v / np.linalg.norm(v)


def truncated_geometric_oracle(p_attempt, r_max):
    """(P_succ, E[R | success]) by direct summation of the distribution."""
    f = 1.0 - p_attempt
    p_succ = 1.0 - f ** r_max
    mean = sum(r * f ** (r - 1) * p_attempt for r in range(1, r_max + 1)) / p_succ
    return p_succ, mean


def gadget_branch_probs_oracle():
    """X-basis branch probabilities of the noiseless injection gadget.

    Writes out CNOT (|+> (x) |A>) as four explicit amplitudes in the
    computational basis (data, ancilla) and projects the ancilla onto
    |+-> by hand.
    """
    w = np.exp(1j * np.pi / 4)
    # |+>|A> = (|00> + w|01> + |10> + w|11>) / 2; CNOT (data control,
    # ancilla target) swaps the ancilla bit on the data=1 half.
    amp = {(0, 0): 0.5, (0, 1): 0.5 * w, (1, 0): 0.5 * w, (1, 1): 0.5}
    p = {}
    for sign, label in [(1.0, "plus"), (-1.0, "minus")]:
        total = 0.0
        for data_bit in (0, 1):
            a = (amp[(data_bit, 0)] + sign * amp[(data_bit, 1)]) / np.sqrt(2)
            total += abs(a) ** 2
        p[label] = total
    return p["plus"], p["minus"]
