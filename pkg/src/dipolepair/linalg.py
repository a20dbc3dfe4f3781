"""Dense complex linear algebra for two-qubit operator work.

Basis convention throughout: the computational basis is ordered
|00>, |01>, |10>, |11> with qubit A the first tensor factor.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

HERMITIAN_INPUT_TOL = 1e-10
HERMITIAN_OUTPUT_TOL = 1e-12

# resolution used when breaking eigenvalue ties deterministically
_TIE_DECIMALS = 9

_PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)


class BellLabel(IntEnum):
    """The four Bell states; integer order is the canonical tie-breaking order."""

    PHI_PLUS = 0
    PHI_MINUS = 1
    PSI_PLUS = 2
    PSI_MINUS = 3


_INV_SQRT2 = 1.0 / math.sqrt(2.0)

_BELL_VECTORS = {
    BellLabel.PHI_PLUS: np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) * _INV_SQRT2,
    BellLabel.PHI_MINUS: np.array([1.0, 0.0, 0.0, -1.0], dtype=complex) * _INV_SQRT2,
    BellLabel.PSI_PLUS: np.array([0.0, 1.0, 1.0, 0.0], dtype=complex) * _INV_SQRT2,
    BellLabel.PSI_MINUS: np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) * _INV_SQRT2,
}


def pauli(index: int) -> np.ndarray:
    """Pauli matrix by index: 0 -> identity, 1 -> x, 2 -> y, 3 -> z."""
    if index not in (0, 1, 2, 3):
        raise ValueError(f"Pauli index must be 0..3, got {index!r}")
    return _PAULI[index].copy()


def kron(a, b) -> np.ndarray:
    """Tensor product with the first argument acting on the first factor."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def bell_state(label: BellLabel) -> np.ndarray:
    """Ket vector of the requested Bell state."""
    return _BELL_VECTORS[BellLabel(label)].copy()


def projector(vec) -> np.ndarray:
    """Rank-one projector |v><v| of a (normalized) ket."""
    v = np.asarray(vec, dtype=complex)
    return np.outer(v, v.conj())


def dag(m) -> np.ndarray:
    return np.asarray(m).conj().T


def hermiticity_defect(m) -> float:
    """Largest entrywise deviation between m and its conjugate transpose."""
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T)))


def require_hermitian(m, tol: float = HERMITIAN_INPUT_TOL, name: str = "matrix") -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    defect = hermiticity_defect(m)
    if defect > tol:
        raise ValueError(
            f"{name} is not Hermitian: max |m - m^dag| = {defect:.3e} exceeds {tol:.0e}"
        )
    return m


def require_density_matrix(m, tol: float = HERMITIAN_INPUT_TOL, name: str = "density matrix") -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity (within tol); return as complex array."""
    rho = require_hermitian(m, tol, name)
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > tol:
        raise ValueError(f"{name} must have unit trace, got {tr!r}")
    evals = np.linalg.eigvalsh((rho + rho.conj().T) / 2.0)
    if float(evals[0]) < -tol:
        raise ValueError(f"{name} is not positive semidefinite: min eigenvalue {evals[0]:.3e}")
    return rho


def partial_transpose_a(rho) -> np.ndarray:
    """Partial transpose over the first qubit: out[ab, gd] = rho[gb, ad]."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 two-qubit matrix, got shape {rho.shape}")
    return rho.reshape(2, 2, 2, 2).transpose(2, 1, 0, 3).reshape(4, 4).copy()


@dataclass(frozen=True)
class EigenSystem:
    """Eigendecomposition of a Hermitian matrix; column k pairs with eigenvalues[k]."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _canonical_phase(col: np.ndarray) -> np.ndarray:
    # rotate so the largest-magnitude entry is real positive
    idx = int(np.argmax(np.abs(col)))
    ref = col[idx]
    if abs(ref) == 0.0:
        return col
    return col * (abs(ref) / ref)


def _tie_key(val: float, col: np.ndarray):
    ent = np.round(col, _TIE_DECIMALS)
    return (round(float(val), _TIE_DECIMALS),) + tuple(
        (float(z.real), float(z.imag)) for z in ent
    )


def hermitian_eig(m, tol: float = HERMITIAN_INPUT_TOL) -> EigenSystem:
    """Eigendecomposition with deterministic ordering.

    Eigenvalues ascend; near-degenerate values (equal after rounding to
    1e-9) are ordered by lexicographic comparison of the phase-fixed,
    rounded eigenvectors so repeated calls agree column for column.
    """
    m = require_hermitian(m, tol)
    sym = (m + m.conj().T) / 2.0
    vals, vecs = np.linalg.eigh(sym)
    cols = [_canonical_phase(vecs[:, k]) for k in range(vecs.shape[1])]
    order = sorted(range(len(vals)), key=lambda k: _tie_key(vals[k], cols[k]))
    return EigenSystem(
        eigenvalues=np.array([float(vals[k]) for k in order]),
        eigenvectors=np.column_stack([cols[k] for k in order]),
    )


def trace_norm_hermitian(m, tol: float = HERMITIAN_INPUT_TOL) -> float:
    """Trace norm (sum of absolute eigenvalues) of a Hermitian matrix."""
    m = require_hermitian(m, tol)
    evals = np.linalg.eigvalsh((m + m.conj().T) / 2.0)
    return float(np.sum(np.abs(evals)))


def gibbs(h, tol: float = HERMITIAN_INPUT_TOL) -> np.ndarray:
    """Thermal density matrix e^{-h} / Tr e^{-h} of a dimensionless Hamiltonian.

    The minimum eigenvalue is subtracted before exponentiating, so entries
    stay finite over the whole admissible coupling range instead of
    overflowing for eigenvalue spreads of order 10^3.
    """
    sys = hermitian_eig(h, tol)
    w = np.exp(-(sys.eigenvalues - float(sys.eigenvalues.min())))
    rho = (sys.eigenvectors * w) @ sys.eigenvectors.conj().T
    rho /= float(np.trace(rho).real)
    return (rho + rho.conj().T) / 2.0


def reduce_sphere_angles(theta: float, phi: float) -> tuple[float, float]:
    """Map arbitrary (theta, phi) to the canonical patch [0, pi] x [0, 2*pi)."""
    two_pi = 2.0 * math.pi
    t = math.fmod(float(theta), two_pi)
    if t < 0.0:
        t += two_pi
    p = float(phi)
    if t > math.pi:
        # (theta, phi) and (2*pi - theta, phi + pi) point the same way
        t = two_pi - t
        p += math.pi
    p = math.fmod(p, two_pi)
    if p < 0.0:
        p += two_pi
    if p >= two_pi:
        p = 0.0
    return t, p


def bloch_to_state(theta: float, phi: float) -> np.ndarray:
    """Qubit ket cos(t/2)|0> + e^{i p} sin(t/2)|1> at Bloch angles (theta, phi)."""
    t, p = reduce_sphere_angles(theta, phi)
    return np.array(
        [math.cos(t / 2.0), cmath.exp(1j * p) * math.sin(t / 2.0)], dtype=complex
    )
