"""Bell basis, the two-qubit state families, and random state samplers."""
from __future__ import annotations

import numpy as np

from .errors import BadRank, ParameterOutOfRange, UnknownFamily
from .linalg import DensityMatrix, dagger, purity

_S = 1.0 / np.sqrt(2.0)

PHI_PLUS = np.array([_S, 0.0, 0.0, _S], dtype=complex)
PHI_MINUS = np.array([_S, 0.0, 0.0, -_S], dtype=complex)
PSI_PLUS = np.array([0.0, _S, _S, 0.0], dtype=complex)
PSI_MINUS = np.array([0.0, _S, -_S, 0.0], dtype=complex)

BELL_NAMES = ("phi+", "phi-", "psi+", "psi-")
# columns are the Bell vectors in BELL_NAMES order
BELL_BASIS = np.column_stack([PHI_PLUS, PHI_MINUS, PSI_PLUS, PSI_MINUS])

FAMILIES = ("werner", "mem", "pdc")


def projector(ket) -> np.ndarray:
    ket = np.asarray(ket, dtype=complex)
    return np.outer(ket, ket.conj())


def pure_state(ket) -> DensityMatrix:
    ket = np.asarray(ket, dtype=complex)
    return DensityMatrix(projector(ket / np.linalg.norm(ket)))


def singlet() -> DensityMatrix:
    """The normalization reference |psi-><psi-|."""
    return DensityMatrix(projector(PSI_MINUS))


def maximally_mixed(n: int) -> DensityMatrix:
    if n < 1:
        raise ValueError("dimension must be positive")
    return DensityMatrix(np.eye(n, dtype=complex) / n)


def to_bell_basis(rho) -> np.ndarray:
    """Matrix elements of a two-qubit operator in the (phi+, phi-, psi+, psi-) basis."""
    a = np.asarray(rho.mat if isinstance(rho, DensityMatrix) else rho, dtype=complex)
    return BELL_BASIS.conj().T @ a @ BELL_BASIS


def bell_offdiagonal(rho) -> float:
    """Largest off-diagonal magnitude in the Bell basis."""
    b = to_bell_basis(rho)
    return float(np.max(np.abs(b - np.diag(np.diag(b)))))


def _check_unit(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ParameterOutOfRange(f"{name} must lie in [0, 1], got {value}")
    return value


def werner_state(x: float) -> DensityMatrix:
    """x |psi-><psi-| + (1 - x) I/4; separable iff x <= 1/3."""
    x = _check_unit("x", x)
    return DensityMatrix(x * projector(PSI_MINUS) + (1.0 - x) * np.eye(4) / 4.0)


def mem_state(gamma: float) -> DensityMatrix:
    """Munro-James maximally entangled mixed state with concurrence ``gamma``.

    In the computational basis::

        [[g, 0, 0, gamma/2], [0, 1-2g, 0, 0], [0, 0, 0, 0], [gamma/2, 0, 0, g]]

    with g = gamma/2 for gamma >= 2/3 and g = 1/3 otherwise.  The |01><01|
    weight makes the state non-diagonal in the Bell basis unless gamma = 1.
    """
    gamma = _check_unit("gamma", gamma)
    g = gamma / 2.0 if gamma >= 2.0 / 3.0 else 1.0 / 3.0
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = g
    m[1, 1] = 1.0 - 2.0 * g
    m[0, 3] = m[3, 0] = gamma / 2.0
    return DensityMatrix(m)


def pdc_state(lam: float) -> DensityMatrix:
    """lam |phi+><phi+| + (1 - lam)(|01><01| + |10><10|)/2."""
    lam = _check_unit("lam", lam)
    noise = np.diag([0.0, 0.5, 0.5, 0.0]).astype(complex)
    return DensityMatrix(lam * projector(PHI_PLUS) + (1.0 - lam) * noise)


_CONSTRUCTORS = {"werner": werner_state, "mem": mem_state, "pdc": pdc_state}


def family_state(family: str, value: float) -> DensityMatrix:
    try:
        build = _CONSTRUCTORS[family.lower()]
    except KeyError:
        raise UnknownFamily(f"unknown family {family!r}; choose from {FAMILIES}") from None
    return build(value)


def linear_entropy(rho: DensityMatrix) -> float:
    """(N/(N-1)) (1 - tr rho^2), scaled to [0, 1]."""
    n = rho.dim
    return n / (n - 1.0) * (1.0 - purity(rho))


def ginibre(shape, rng: np.random.Generator) -> np.ndarray:
    """Standard complex Gaussian entries with E|z|^2 = 1."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_density_array(n: int, count: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Stack of ``count`` Hilbert-Schmidt-induced states of the given rank."""
    rank = n if rank is None else int(rank)
    if not 1 <= rank <= n:
        raise BadRank(f"rank must be in [1, {n}], got {rank}")
    g = ginibre((count, n, rank), rng)
    rho = g @ dagger(g)
    rho = 0.5 * (rho + dagger(rho))
    return rho / np.trace(rho, axis1=-2, axis2=-1).real[:, None, None]


def random_density(n: int, rank: int | None = None, rng: np.random.Generator | None = None) -> DensityMatrix:
    """G G^dag / tr(G G^dag) with G an n x rank complex Ginibre matrix."""
    rng = np.random.default_rng() if rng is None else rng
    return DensityMatrix(random_density_array(n, 1, rng, rank)[0])


def random_unitary_array(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitaries from the QR decomposition of Ginibre matrices."""
    q, r = np.linalg.qr(ginibre((count, n, n), rng))
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[:, None, :]


def random_unitary(n: int, rng: np.random.Generator | None = None) -> np.ndarray:
    rng = np.random.default_rng() if rng is None else rng
    return random_unitary_array(n, 1, rng)[0]
