"""Dense complex linear algebra for one- and two-qubit density matrices.

Everything here is a pure function on small (2x2 or 4x4) numpy arrays.
States are density matrices; validity means Hermitian, unit trace and
positive semidefinite, each to an absolute tolerance of 1e-12.
"""

from __future__ import annotations

import numpy as np

ATOL = 1e-12

# Single-qubit gates
I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S = np.array([[1, 0], [0, 1j]], dtype=complex)
S_DAG = S.conj().T
T = np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex)
T_DAG = T.conj().T

# CNOT on (control x target) ordering; here always data (x) ancilla
CNOT = np.array(
    [[1, 0, 0, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0]], dtype=complex)

# Computational and X-basis states
KET_0 = np.array([1, 0], dtype=complex)
KET_1 = np.array([0, 1], dtype=complex)
KET_PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)
KET_MINUS = np.array([1, -1], dtype=complex) / np.sqrt(2)

PROJ_PLUS = np.outer(KET_PLUS, KET_PLUS.conj())
PROJ_MINUS = np.outer(KET_MINUS, KET_MINUS.conj())


def pure_state_density(psi: np.ndarray) -> np.ndarray:
    """|psi><psi| for a unit-norm amplitude vector."""
    psi = np.asarray(psi, dtype=complex)
    if abs(np.vdot(psi, psi).real - 1.0) > ATOL:
        raise ValueError("state vector is not unit norm")
    return np.outer(psi, psi.conj())


def is_unitary(u: np.ndarray, atol: float = ATOL) -> bool:
    u = np.asarray(u, dtype=complex)
    return bool(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))) <= atol)


def min_eigenvalue(rho: np.ndarray) -> float:
    """Smallest eigenvalue of a Hermitian matrix.

    For 2x2 the closed-form formula is used; larger matrices fall back to
    numpy's symmetric eigensolver.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape == (2, 2):
        tr = rho[0, 0].real + rho[1, 1].real
        det = (rho[0, 0] * rho[1, 1] - rho[0, 1] * rho[1, 0]).real
        disc = max(0.0, (tr / 2.0) ** 2 - det)
        return tr / 2.0 - np.sqrt(disc)
    return float(np.linalg.eigvalsh(rho)[0])


def validate_density(rho: np.ndarray, atol: float = ATOL) -> np.ndarray:
    """Check Hermiticity, unit trace and PSD; return the array unchanged."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] not in (2, 4):
        raise ValueError(f"expected a 2x2 or 4x4 matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > atol:
        raise ValueError("density matrix is not Hermitian within tolerance")
    if abs(np.trace(rho).real - 1.0) > atol or abs(np.trace(rho).imag) > atol:
        raise ValueError("density matrix does not have unit trace")
    if min_eigenvalue(rho) < -atol:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


def bloch_vector(rho: np.ndarray) -> np.ndarray:
    """(x, y, z) Bloch components of a 2x2 density matrix."""
    return np.array([
        np.trace(rho @ X).real,
        np.trace(rho @ Y).real,
        np.trace(rho @ Z).real,
    ])


def fidelity_pure(rho: np.ndarray, target: np.ndarray) -> float:
    """Squared overlap <target|rho|target> against a pure target state."""
    validate_density(rho)
    target = np.asarray(target, dtype=complex)
    if abs(np.vdot(target, target).real - 1.0) > ATOL:
        raise ValueError("target state is not unit norm")
    f = np.vdot(target, rho @ target)
    if abs(f.imag) > ATOL:
        raise ValueError("fidelity has a non-negligible imaginary part")
    return float(f.real)


def dephasing_channel(rho: np.ndarray, p_z: float) -> np.ndarray:
    """Pauli-Z channel (1-p)rho + p Z rho Z."""
    if not 0.0 <= p_z <= 0.5:
        raise ValueError(f"p_z must be in [0, 0.5], got {p_z}")
    return (1.0 - p_z) * rho + p_z * (Z @ rho @ Z)


def depolarizing_channel(rho: np.ndarray, p_dep: float) -> np.ndarray:
    """Isotropic Pauli channel (1-p)rho + p/3 (XrhoX + YrhoY + ZrhoZ)."""
    if not 0.0 <= p_dep <= 0.75:
        raise ValueError(f"p_dep must be in [0, 3/4], got {p_dep}")
    pauli_sum = X @ rho @ X + Y @ rho @ Y + Z @ rho @ Z
    return (1.0 - p_dep) * rho + (p_dep / 3.0) * pauli_sum


def apply_unitary(state: np.ndarray, u: np.ndarray) -> np.ndarray:
    """U rho U^dagger with dimension and unitarity checks."""
    state = np.asarray(state, dtype=complex)
    u = np.asarray(u, dtype=complex)
    if u.shape != state.shape:
        raise ValueError(f"dimension mismatch: state {state.shape}, unitary {u.shape}")
    if not is_unitary(u):
        raise ValueError("matrix is not unitary within tolerance")
    return u @ state @ u.conj().T


def partial_trace_ancilla(joint: np.ndarray) -> np.ndarray:
    """Trace out the second (ancilla) qubit of a data (x) ancilla state."""
    out = np.zeros((2, 2), dtype=complex)
    for k in (0, 1):
        idx = [k, 2 + k]
        out += joint[np.ix_(idx, idx)]
    return out


def measure_ancilla_x(joint: np.ndarray):
    """Projective X-basis measurement of the ancilla of a joint state.

    Returns (p_plus, rho_plus, p_minus, rho_minus) where rho_+- is the
    normalized data-qubit state after projecting the ancilla onto |+-> and
    tracing it out, or None when the branch probability vanishes.
    """
    validate_density(joint)
    out = []
    for proj in (PROJ_PLUS, PROJ_MINUS):
        big = np.kron(I2, proj)
        sub = big @ joint @ big
        p = float(np.trace(sub).real)
        if p > ATOL:
            out.append((p, partial_trace_ancilla(sub) / p))
        else:
            out.append((max(p, 0.0), None))
    (p_plus, rho_plus), (p_minus, rho_minus) = out
    return p_plus, rho_plus, p_minus, rho_minus
