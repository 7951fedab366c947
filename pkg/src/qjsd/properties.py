"""Monte Carlo checks of the QJSD properties and of the triangle inequality for sqrt(QJSD).

Every check is vectorized over trials.  A violation is the amount by which a
trial breaks the property (absolute difference for identities, positive part
of ``lhs - rhs`` for inequalities); failures are reported, never raised.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .divergences import js_distance_array, js_operators
from .entanglement import PAULI_Z, PAULIS
from .errors import DimensionMismatch
from .families import random_density_array, random_unitary_array
from .linalg import dagger, ptrace

PROPERTY_TAGS = ("i", "ii", "iii", "iv", "v", "vi", "vii")
CHANNEL_STRENGTHS = (0.1, 0.5, 0.9)
TRIANGLE_TOL = 1e-9

PairSampler = Callable[[int, np.random.Generator], tuple[np.ndarray, np.ndarray]]


def hs_pairs(n: int = 4) -> PairSampler:
    """Pairs of independent full-rank Hilbert-Schmidt states of dimension n."""

    def sample(count, rng):
        return random_density_array(n, count, rng), random_density_array(n, count, rng)

    return sample


def depolarizing(p: float) -> np.ndarray:
    """rho -> (1 - p) rho + p I/2."""
    return np.concatenate([[np.sqrt(1 - 0.75 * p) * np.eye(2)], np.sqrt(p / 4) * PAULIS])


def dephasing(p: float) -> np.ndarray:
    """rho -> (1 - p) rho + p Z rho Z."""
    return np.array([np.sqrt(1 - p) * np.eye(2), np.sqrt(p) * PAULI_Z])


def amplitude_damping(p: float) -> np.ndarray:
    return np.array([[[1, 0], [0, np.sqrt(1 - p)]], [[0, np.sqrt(p)], [0, 0]]], dtype=complex)


def channel_set() -> dict[str, np.ndarray]:
    """Single-qubit Kraus sets tested for monotonicity, keyed by name."""
    out = {}
    for p in CHANNEL_STRENGTHS:
        out[f"depolarizing({p})"] = depolarizing(p)
        out[f"dephasing({p})"] = dephasing(p)
        out[f"amplitude_damping({p})"] = amplitude_damping(p)
    return out


def apply_local_channel(kraus: np.ndarray, rhos: np.ndarray, qubit: str = "A") -> np.ndarray:
    """(K x I) rho (K x I)^dag summed over Kraus operators, for two-qubit stacks."""
    ops = [np.kron(k, np.eye(2)) if qubit == "A" else np.kron(np.eye(2), k) for k in kraus]
    return sum(op @ rhos @ op.conj().T for op in ops)


@dataclass
class PropertyReport:
    property: str
    trials: int
    max_violation: float
    tolerance: float
    witness: tuple[np.ndarray, np.ndarray] | None = None

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tolerance


@dataclass
class TriangleReport:
    dim: int
    rank: int
    trials: int
    worst_slack: float
    violations: int
    witness: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None

    @property
    def name(self) -> str:
        return f"triangle_n{self.dim}_rank{self.rank}"

    @property
    def max_violation(self) -> float:
        return max(0.0, -self.worst_slack)

    @property
    def passed(self) -> bool:
        return self.violations == 0


def _nonnegativity(rhos, sigmas, rng):
    return np.maximum(-js_operators(rhos, sigmas), np.abs(js_operators(rhos, rhos)))


def _unitary_invariance(rhos, sigmas, rng):
    u = random_unitary_array(rhos.shape[-1], len(rhos), rng)
    ud = dagger(u)
    return np.abs(js_operators(u @ rhos @ ud, u @ sigmas @ ud) - js_operators(rhos, sigmas))


def _partial_trace_monotone(rhos, sigmas, rng):
    full = js_operators(rhos, sigmas)
    viol = np.zeros(len(rhos))
    for keep in ("A", "B"):
        reduced = js_operators(ptrace(rhos, (2, 2), keep), ptrace(sigmas, (2, 2), keep))
        viol = np.maximum(viol, reduced - full)
    return np.maximum(viol, 0.0)


def _joint_convexity(rhos, sigmas, rng, sampler):
    count = len(rhos)
    viol = np.zeros(count)
    # first half of the trials mixes 2 pairs, second half mixes 3
    for k, sl in ((2, slice(0, count // 2 + count % 2)), (3, slice(count // 2 + count % 2, count))):
        m = sl.stop - sl.start
        if m == 0:
            continue
        extra = [sampler(m, rng) for _ in range(k - 1)]
        rs = np.stack([rhos[sl]] + [e[0] for e in extra])
        ss = np.stack([sigmas[sl]] + [e[1] for e in extra])
        alpha = rng.dirichlet(np.ones(k), size=m).T
        lhs = js_operators(np.einsum("km,kmij->mij", alpha, rs), np.einsum("km,kmij->mij", alpha, ss))
        rhs = np.sum(alpha * js_operators(rs, ss), axis=0)
        viol[sl] = np.maximum(lhs - rhs, 0.0)
    return viol


def _channel_monotone(rhos, sigmas, rng):
    full = js_operators(rhos, sigmas)
    viol = np.maximum(_partial_trace_monotone(rhos, sigmas, rng), 0.0)
    for kraus in channel_set().values():
        for qubit in ("A", "B"):
            out = js_operators(apply_local_channel(kraus, rhos, qubit), apply_local_channel(kraus, sigmas, qubit))
            viol = np.maximum(viol, out - full)
        both = lambda x: apply_local_channel(kraus, apply_local_channel(kraus, x, "A"), "B")  # noqa: E731
        viol = np.maximum(viol, js_operators(both(rhos), both(sigmas)) - full)
    return np.maximum(viol, 0.0)


def _projector_additivity(rhos, sigmas, rng):
    count, n = len(rhos), rhos.shape[-1]
    u = random_unitary_array(n, count, rng)
    # random partition of each trial's basis into contiguous blocks
    cuts = [np.sort(rng.choice(np.arange(1, n), size=rng.integers(1, n), replace=False)) for _ in range(count)]
    lhs_r, lhs_s = np.zeros_like(rhos), np.zeros_like(sigmas)
    rhs = np.zeros(count)
    blocks = []
    for t in range(count):
        edges = np.concatenate([[0], cuts[t], [n]])
        blocks.append([u[t][:, a:b] @ u[t][:, a:b].conj().T for a, b in zip(edges[:-1], edges[1:])])
    for t in range(count):
        pr = np.array([p @ rhos[t] @ p for p in blocks[t]])
        ps = np.array([p @ sigmas[t] @ p for p in blocks[t]])
        lhs_r[t], lhs_s[t] = pr.sum(axis=0), ps.sum(axis=0)
        rhs[t] = js_operators(pr, ps).sum()
    return np.abs(js_operators(lhs_r, lhs_s) - rhs)


def _projector_tensor_invariance(rhos, sigmas, rng):
    count = len(rhos)
    base = js_operators(rhos, sigmas)
    viol = np.zeros(count)
    for t in range(count):
        m = 2 + t % 3
        rank = 1 if t % 2 == 0 else int(rng.integers(1, m + 1))
        v = random_unitary_array(m, 1, rng)[0][:, :rank]
        # rank > 1 projectors are normalized so the tensor product is a state
        p = v @ v.conj().T / rank
        lhs = js_operators(np.kron(rhos[t], p), np.kron(sigmas[t], p))
        viol[t] = abs(lhs - base[t])
    return viol


def verify_property(
    tag: str,
    sampler: PairSampler | None = None,
    trials: int = 1000,
    tol: float = 1e-10,
    rng: np.random.Generator | None = None,
) -> PropertyReport:
    """Check one numbered QJSD property on ``trials`` sampled state pairs.

    Properties iii and v need two-qubit pairs; the default sampler draws
    4-dimensional Hilbert-Schmidt states.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng() if rng is None else rng
    sampler = hs_pairs(4) if sampler is None else sampler
    rhos, sigmas = sampler(trials, rng)
    checks = {
        "i": _nonnegativity,
        "ii": _unitary_invariance,
        "iii": _partial_trace_monotone,
        "iv": lambda r, s, g: _joint_convexity(r, s, g, sampler),
        "v": _channel_monotone,
        "vi": _projector_additivity,
        "vii": _projector_tensor_invariance,
    }
    try:
        check = checks[tag]
    except KeyError:
        raise ValueError(f"unknown property tag {tag!r}; expected one of {PROPERTY_TAGS}") from None
    viol = check(rhos, sigmas, rng)
    worst = int(np.argmax(viol))
    report = PropertyReport(tag, trials, float(viol[worst]), tol)
    if not report.passed:
        report.witness = (rhos[worst], sigmas[worst])
    return report


def triangle_check(
    n: int,
    trials: int,
    rng: np.random.Generator,
    rank: int | None = None,
) -> TriangleReport:
    """d(rho, tau) <= d(rho, sigma) + d(sigma, tau) on random triples.

    Slack is ``d(rho, sigma) + d(sigma, tau) - d(rho, tau)``; slack below
    -1e-9 counts as a violation.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if n < 2:
        raise DimensionMismatch("triangle check needs dimension at least 2")
    rank = n if rank is None else rank
    rho, sigma, tau = (random_density_array(n, trials, rng, rank) for _ in range(3))
    slack = js_distance_array(rho, sigma) + js_distance_array(sigma, tau) - js_distance_array(rho, tau)
    worst = int(np.argmin(slack))
    violations = int(np.sum(slack < -TRIANGLE_TOL))
    witness = (rho[worst], sigma[worst], tau[worst]) if violations else None
    return TriangleReport(n, rank, trials, float(slack[worst]), violations, witness)
