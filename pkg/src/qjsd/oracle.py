"""Brute-force reference minimizer for the distance to the separable set.

Independent of the annealer: candidates are PPT-filtered Hilbert-Schmidt
samples (PPT is exact for two qubits), and the best few are polished with
SLSQP over sigma = T T^dag / tr(T T^dag) under the constraint that the
partial transpose stays positive.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize

from .divergences import js_operators, root_fidelity_array
from .families import random_density_array
from .linalg import as_array, ptranspose, sqrtm_psd


def js_to_stack(rho: np.ndarray, sigmas: np.ndarray) -> np.ndarray:
    return js_operators(np.broadcast_to(rho, sigmas.shape), sigmas)


def bures_to_stack(rho: np.ndarray, sigmas: np.ndarray) -> np.ndarray:
    root_f = np.minimum(root_fidelity_array(np.broadcast_to(rho, sigmas.shape), sigmas), 1.0)
    return np.sqrt(np.clip(2.0 - 2.0 * root_f, 0.0, None))


METRICS = {"js": js_to_stack, "bures": bures_to_stack}


@lru_cache(maxsize=4)
def separable_pool(samples: int = 10**6, seed: int = 0, chunk: int = 100_000) -> np.ndarray:
    """PPT-filtered Hilbert-Schmidt two-qubit states (read-only stack)."""
    rng = np.random.default_rng(seed)
    kept = []
    for start in range(0, samples, chunk):
        rhos = random_density_array(4, min(chunk, samples - start), rng)
        lam_min = np.linalg.eigvalsh(ptranspose(rhos, (2, 2)))[:, 0]
        kept.append(rhos[lam_min >= 0.0])
    pool = np.concatenate(kept)
    pool.setflags(write=False)
    return pool


def _unpack(x: np.ndarray) -> np.ndarray:
    t = (x[:16] + 1j * x[16:]).reshape(4, 4)
    s = t @ t.conj().T
    return s / np.trace(s).real


def _pack(sigma: np.ndarray) -> np.ndarray:
    t = sqrtm_psd(sigma).reshape(-1)
    return np.concatenate([t.real, t.imag])


def polish(rho, start, metric: str = "js") -> tuple[float, np.ndarray]:
    """Local SLSQP refinement of a separable starting point."""
    rho = as_array(rho)
    dist = METRICS[metric]

    def objective(x):
        return float(dist(rho, _unpack(x)[None])[0])

    def ppt_margin(x):
        return float(np.linalg.eigvalsh(ptranspose(_unpack(x), (2, 2)))[0])

    res = minimize(
        objective,
        _pack(as_array(start)),
        method="SLSQP",
        constraints=[{"type": "ineq", "fun": ppt_margin}],
        options={"ftol": 1e-13, "maxiter": 1000},
    )
    sigma = _unpack(res.x)
    if ppt_margin(res.x) < -1e-9:
        # constraint not honoured: fall back to the start
        start = as_array(start)
        return float(dist(rho, start[None])[0]), start
    return objective(res.x), sigma


@dataclass(frozen=True)
class OracleResult:
    value: float
    sample_value: float
    closest_state: np.ndarray


def brute_force_minimum(
    rho,
    metric: str = "js",
    samples: int = 10**6,
    seed: int = 0,
    starts: int = 4,
) -> OracleResult:
    """Minimum distance from ``rho`` to the separable set by sampling + polish."""
    rho = as_array(rho)
    pool = separable_pool(samples, seed)
    dist = METRICS[metric]
    values = np.concatenate([dist(rho, pool[i : i + 50_000]) for i in range(0, len(pool), 50_000)])
    order = np.argsort(values, kind="stable")[:starts]
    best_value, best_state = float(values[order[0]]), pool[order[0]]
    sample_value = best_value
    for idx in order:
        value, sigma = polish(rho, pool[idx], metric)
        if value < best_value:
            best_value, best_state = value, sigma
    return OracleResult(best_value, sample_value, best_state)
