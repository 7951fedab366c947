"""Concurrence, the PPT certificate and separable decompositions of two-qubit states."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, QJSDError
from .linalg import PSD_TOL, DensityMatrix, as_array, ptranspose

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = np.stack([PAULI_X, PAULI_Y, PAULI_Z])
SPIN_FLIP = np.kron(PAULI_Y, PAULI_Y)
# eigenvalues at or below this are treated as round-off zeros
RANK_TOL = 1e-14


def _two_qubit(rho) -> np.ndarray:
    a = as_array(rho)
    if a.shape != (4, 4):
        raise DimensionMismatch(f"expected a two-qubit (4x4) state, got shape {a.shape}")
    return a


def concurrence(rho: DensityMatrix) -> float:
    """Wootters concurrence max(0, l1 - l2 - l3 - l4).

    The l_i are the decreasing square roots of the eigenvalues of
    rho (Y x Y) rho* (Y x Y).  They are obtained as the singular values of
    A^T (Y x Y) A with rho = A A^dag, which avoids square roots of
    round-off eigenvalues for rank-deficient states.
    """
    a = _two_qubit(rho)
    lam, vecs = np.linalg.eigh(0.5 * (a + a.conj().T))
    keep = lam > RANK_TOL
    amp = vecs[:, keep] * np.sqrt(lam[keep])
    l = np.zeros(4)
    if amp.shape[1]:
        l[: amp.shape[1]] = np.linalg.svd(amp.T @ SPIN_FLIP @ amp, compute_uv=False)
    return float(max(0.0, l[0] - l[1] - l[2] - l[3]))


class PPTResult(NamedTuple):
    ppt: bool
    min_eigenvalue: float


def is_ppt(rho, dims=(2, 2)) -> PPTResult:
    """Peres-Horodecki test; exact separability criterion for 2x2 and 2x3."""
    lam_min = float(np.linalg.eigvalsh(ptranspose(as_array(rho), dims, "B"))[0])
    return PPTResult(lam_min >= -PSD_TOL, lam_min)


def bloch_projectors(v: np.ndarray) -> np.ndarray:
    """(I + v.sigma)/2 for unit Bloch vectors; trailing axis of size 3."""
    v = np.asarray(v, dtype=float)
    return 0.5 * (np.eye(2) + np.einsum("...k,kij->...ij", v, PAULIS))


def product_projectors(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """|a><a| x |b><b| from single-qubit projectors, batched."""
    t = np.einsum("...ij,...kl->...ikjl", a, b)
    return t.reshape(t.shape[:-4] + (4, 4))


@dataclass(frozen=True, eq=False)
class SeparableDecomposition:
    """Convex mixture of two-qubit product pure states.

    ``bloch_a[i]`` and ``bloch_b[i]`` are the Bloch vectors of the pure states
    of qubits A and B in term ``i``.
    """

    weights: np.ndarray
    bloch_a: np.ndarray
    bloch_b: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).reshape(-1)
        a = np.array(self.bloch_a, dtype=float).reshape(-1, 3)
        b = np.array(self.bloch_b, dtype=float).reshape(-1, 3)
        if not (len(w) == len(a) == len(b)) or len(w) == 0:
            raise QJSDError("weights and Bloch vectors must have the same positive length")
        if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
            raise QJSDError("weights must be non-negative and sum to 1")
        for v in (a, b):
            if np.max(np.abs(np.linalg.norm(v, axis=1) - 1.0)) > 1e-9:
                raise QJSDError("Bloch vectors must have unit length")
        for name, arr in (("weights", w), ("bloch_a", a), ("bloch_b", b)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __len__(self):
        return len(self.weights)

    def matrix(self) -> np.ndarray:
        q = product_projectors(bloch_projectors(self.bloch_a), bloch_projectors(self.bloch_b))
        return np.einsum("k,kij->ij", self.weights, q)


def materialize(dec: SeparableDecomposition) -> DensityMatrix:
    """sum_i w_i |a_i><a_i| x |b_i><b_i| as a density matrix."""
    return DensityMatrix(dec.matrix())


def random_decomposition(rng: np.random.Generator, terms: int = 16) -> SeparableDecomposition:
    """Dirichlet weights and isotropic Bloch vectors."""
    w = rng.dirichlet(np.ones(terms))
    a = rng.standard_normal((terms, 3))
    b = rng.standard_normal((terms, 3))
    a /= np.linalg.norm(a, axis=1, keepdims=True)
    b /= np.linalg.norm(b, axis=1, keepdims=True)
    return SeparableDecomposition(w / w.sum(), a, b)
