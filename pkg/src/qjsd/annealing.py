"""Simulated-annealing search for the closest separable two-qubit state.

The search variable is a 16-term separable decomposition (weights plus a pair
of Bloch vectors per term), so every candidate is separable by construction.
Restart chains are run in lockstep as numpy batches; several target states
can share one batch.  Each restart ``r`` owns a generator seeded by
``(seed, r)``, so results do not depend on how targets are batched.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from .entanglement import SeparableDecomposition, bloch_projectors, product_projectors
from .errors import DimensionMismatch, QJSDError, ScheduleInvalid
from .families import PSI_MINUS, projector
from .linalg import DensityMatrix, as_array, dagger, entropy_of_eigenvalues, operator_entropy, sqrtm_psd

TERMS = 16
WEIGHT_MOVE_PROB = 0.2
TIE_TOL = 1e-12
CONVERGENCE_TOL = 1e-4
METRICS = ("js", "bures")


@dataclass(frozen=True)
class AnnealingSchedule:
    """Geometric cooling schedule; temperatures are in units of the metric.

    Move sizes shrink as ``step * (T / t_initial) ** step_power``.
    """

    t_initial: float = 0.01
    t_final: float = 1e-6
    cooling: float = 0.93
    sweeps: int = 200
    moves_per_sweep: int = 200
    bloch_step: float = 0.5
    weight_step: float = 0.05
    restarts: int = 4
    seed: int = 0
    step_power: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.t_final < self.t_initial:
            raise ScheduleInvalid("need 0 < t_final < t_initial")
        if not 0.0 < self.cooling < 1.0:
            raise ScheduleInvalid("cooling factor must lie in (0, 1)")
        for name in ("sweeps", "moves_per_sweep", "restarts"):
            if int(getattr(self, name)) < 1:
                raise ScheduleInvalid(f"{name} must be at least 1")
        if self.bloch_step <= 0 or self.weight_step <= 0 or self.step_power <= 0:
            raise ScheduleInvalid("step scales and step_power must be positive")

    def temperature(self, sweep: int) -> float:
        return max(self.t_final, self.t_initial * self.cooling**sweep)


CALIBRATION_OVERRIDES = {"restarts": 16, "sweeps": 400}


def calibration_schedule(schedule: AnnealingSchedule) -> AnnealingSchedule:
    return replace(schedule, **CALIBRATION_OVERRIDES)


@dataclass
class EntanglementResult:
    raw_value: float
    normalized_value: float
    closest_state: DensityMatrix
    decomposition: SeparableDecomposition
    converged: bool
    evaluations: int
    metric: str = "js"
    calibration: float = math.nan
    restart_values: list[float] = field(default_factory=list)
    seed: int = 0


def initial_decomposition_arrays():
    """Computational product states, each repeated 4 times; mixture is I/4."""
    z = np.array([0.0, 0.0, 1.0])
    pairs = [(z, z), (z, -z), (-z, z), (-z, -z)] * (TERMS // 4)
    a = np.array([p[0] for p in pairs])
    b = np.array([p[1] for p in pairs])
    return np.full(TERMS, 1.0 / TERMS), a, b


class _JSObjective:
    def __init__(self, targets: np.ndarray):
        self.targets = targets
        self.h_target = operator_entropy(targets)

    def __call__(self, sigmas: np.ndarray) -> np.ndarray:
        c = len(sigmas)
        stack = np.concatenate([sigmas, 0.5 * (self.targets + sigmas)])
        h = entropy_of_eigenvalues(np.linalg.eigvalsh(stack))
        return h[c:] - 0.5 * (self.h_target + h[:c])


class _BuresObjective:
    def __init__(self, targets: np.ndarray):
        self.roots = sqrtm_psd(targets)
        self.roots_dag = dagger(self.roots)

    def __call__(self, sigmas: np.ndarray) -> np.ndarray:
        m = self.roots @ sigmas @ self.roots_dag
        lam = np.linalg.eigvalsh(0.5 * (m + dagger(m)))
        root_f = np.minimum(np.sqrt(np.clip(lam, 0.0, None)).sum(axis=-1), 1.0)
        return np.sqrt(np.clip(2.0 - 2.0 * root_f, 0.0, None))


def _objective(metric: str, targets: np.ndarray):
    if metric == "js":
        return _JSObjective(targets)
    if metric == "bures":
        return _BuresObjective(targets)
    raise QJSDError(f"unknown metric {metric!r}; choose from {METRICS}")


def _draw(rng: np.random.Generator, moves: int):
    return (
        rng.random(moves),
        rng.integers(TERMS, size=moves),
        rng.standard_normal((moves, 3)),
        rng.standard_normal(moves),
        rng.integers(TERMS - 1, size=moves),
        rng.standard_normal(moves),
        rng.random(moves),
    )


def _rotate(v: np.ndarray, tangent_noise: np.ndarray, angle: np.ndarray) -> np.ndarray:
    """Rotate unit vectors v by ``angle`` towards a random tangent direction."""
    t = tangent_noise - np.sum(tangent_noise * v, axis=-1, keepdims=True) * v
    norm = np.linalg.norm(t, axis=-1, keepdims=True)
    t = t / np.where(norm > 0, norm, 1.0)
    out = np.cos(angle)[:, None] * v + np.sin(angle)[:, None] * t
    return out / np.linalg.norm(out, axis=-1, keepdims=True)


def _anneal(targets: np.ndarray, metric: str, schedule: AnnealingSchedule):
    """Run ``restarts`` chains per target; return per-chain best states and values."""
    n_targets, n_restarts = len(targets), schedule.restarts
    n_chains = n_targets * n_restarts
    chain_restart = np.tile(np.arange(n_restarts), n_targets)
    objective = _objective(metric, np.repeat(targets, n_restarts, axis=0))
    rngs = [np.random.default_rng([schedule.seed, r]) for r in range(n_restarts)]
    ar = np.arange(n_chains)

    w0, a0, b0 = initial_decomposition_arrays()
    W = np.tile(w0, (n_chains, 1))
    A = np.tile(a0, (n_chains, 1, 1))
    B = np.tile(b0, (n_chains, 1, 1))
    PA, PB = bloch_projectors(A), bloch_projectors(B)
    Q = product_projectors(PA, PB)
    sigma = np.einsum("ck,ckab->cab", W, Q)
    f = objective(sigma)
    best_f, best_W, best_A, best_B = f.copy(), W.copy(), A.copy(), B.copy()
    evaluations = 1

    # one forced Bloch move per chain decorrelates the restarts
    kick = [(rng.integers(TERMS), rng.standard_normal(3), rng.standard_normal()) for rng in rngs]
    j = np.array([kick[r][0] for r in chain_restart])
    g = np.array([kick[r][1] for r in chain_restart])
    th = schedule.bloch_step * np.array([kick[r][2] for r in chain_restart])
    A[ar, j] = _rotate(A[ar, j], g, th)
    PA[ar, j] = bloch_projectors(A[ar, j])
    Q[ar, j] = product_projectors(PA[ar, j], PB[ar, j])
    sigma = np.einsum("ck,ckab->cab", W, Q)
    f = objective(sigma)
    evaluations += 1
    better = f < best_f
    best_f[better], best_W[better], best_A[better], best_B[better] = f[better], W[better], A[better], B[better]

    moves = schedule.moves_per_sweep
    for sweep in range(schedule.sweeps):
        temp = schedule.temperature(sweep)
        scale = (temp / schedule.t_initial) ** schedule.step_power
        draws = [_draw(rng, moves) for rng in rngs]
        kind_u, J, TAN, ANG, K, WG, U = (np.stack([d[k] for d in draws])[chain_restart] for k in range(7))
        for m in range(moves):
            j = J[:, m]
            is_w = kind_u[:, m] < WEIGHT_MOVE_PROB
            is_a = ~is_w & (kind_u[:, m] < WEIGHT_MOVE_PROB + 0.5 * (1.0 - WEIGHT_MOVE_PROB))
            pa_j, pb_j, q_j = PA[ar, j], PB[ar, j], Q[ar, j]

            v = np.where(is_a[:, None], A[ar, j], B[ar, j])
            v_new = _rotate(v, TAN[:, m], schedule.bloch_step * scale * ANG[:, m])
            p_new = bloch_projectors(v_new)
            q_new = product_projectors(
                np.where(is_a[:, None, None], p_new, pa_j),
                np.where(is_a[:, None, None], pb_j, p_new),
            )
            # weight move: shift mass from term i to term j, clipped so both stay >= 0;
            # the clip lets a term reach exactly zero weight
            i = (j + 1 + K[:, m]) % TERMS
            shift = np.clip(schedule.weight_step * scale * WG[:, m], -W[ar, j], W[ar, i])
            w_new = W.copy()
            w_new[ar, j] += shift
            w_new[ar, i] -= shift

            sigma_bloch = sigma + W[ar, j][:, None, None] * (q_new - q_j)
            sigma_weight = sigma + shift[:, None, None] * (q_j - Q[ar, i])
            sigma_new = np.where(is_w[:, None, None], sigma_weight, sigma_bloch)
            f_new = objective(sigma_new)

            delta = f_new - f
            with np.errstate(over="ignore"):
                accept = (delta <= 0) | (U[:, m] < np.exp(-delta / temp))
            if not accept.any():
                continue
            acc_a = accept & is_a
            acc_b = accept & ~is_a & ~is_w
            acc_q = acc_a | acc_b
            A[ar[acc_a], j[acc_a]] = v_new[acc_a]
            PA[ar[acc_a], j[acc_a]] = p_new[acc_a]
            B[ar[acc_b], j[acc_b]] = v_new[acc_b]
            PB[ar[acc_b], j[acc_b]] = p_new[acc_b]
            Q[ar[acc_q], j[acc_q]] = q_new[acc_q]
            acc_w = accept & is_w
            W[acc_w] = w_new[acc_w]
            sigma[accept] = sigma_new[accept]
            f[accept] = f_new[accept]

            better = accept & (f_new < best_f)
            if better.any():
                best_f[better] = f_new[better]
                best_W[better], best_A[better], best_B[better] = W[better], A[better], B[better]
        evaluations += moves
        # drop accumulated round-off from incremental updates
        sigma = np.einsum("ck,ckab->cab", W, Q)
        f = objective(sigma)

    best_W = best_W / best_W.sum(axis=1, keepdims=True)
    best_A /= np.linalg.norm(best_A, axis=-1, keepdims=True)
    best_B /= np.linalg.norm(best_B, axis=-1, keepdims=True)
    sigmas = np.einsum("ck,ckab->cab", best_W, product_projectors(bloch_projectors(best_A), bloch_projectors(best_B)))
    values = objective(sigmas)
    shape = (n_targets, n_restarts)
    return (
        values.reshape(shape),
        best_W.reshape(shape + (TERMS,)),
        best_A.reshape(shape + (TERMS, 3)),
        best_B.reshape(shape + (TERMS, 3)),
        evaluations * n_restarts,
    )


def _select(values: np.ndarray) -> int:
    """Lowest value; near-ties go to the lower restart index."""
    return int(np.flatnonzero(values <= values.min() + TIE_TOL)[0])


@lru_cache(maxsize=None)
def singlet_calibration(metric: str, schedule: AnnealingSchedule) -> float:
    """Raw minimum for |psi-><psi-|, computed with the high-effort schedule."""
    values, *_ = _anneal(projector(PSI_MINUS)[None], metric, calibration_schedule(schedule))
    return float(values[0].min())


def _check_targets(rhos) -> np.ndarray:
    targets = np.array([as_array(r) for r in rhos], dtype=complex)
    if targets.ndim != 3 or targets.shape[1:] != (4, 4):
        raise DimensionMismatch("closest-separable search needs two-qubit (4x4) states")
    return targets


def minimize_distance_batch(
    rhos,
    metric: str = "js",
    schedule: AnnealingSchedule | None = None,
    calibrate: bool = True,
) -> list[EntanglementResult]:
    """Closest separable state for each two-qubit state in ``rhos``."""
    schedule = AnnealingSchedule() if schedule is None else schedule
    if metric not in METRICS:
        raise QJSDError(f"unknown metric {metric!r}; choose from {METRICS}")
    targets = _check_targets(rhos)
    values, W, A, B, evaluations = _anneal(targets, metric, schedule)
    calibration = singlet_calibration(metric, schedule) if calibrate else math.nan
    results = []
    for s in range(len(targets)):
        r = _select(values[s])
        dec = SeparableDecomposition(W[s, r], A[s, r], B[s, r])
        raw = float(values[s, r])
        ordered = np.sort(values[s])
        converged = len(ordered) > 1 and ordered[1] - ordered[0] <= CONVERGENCE_TOL
        results.append(
            EntanglementResult(
                raw_value=raw,
                normalized_value=raw / calibration if calibrate else math.nan,
                closest_state=DensityMatrix(dec.matrix()),
                decomposition=dec,
                converged=bool(converged),
                evaluations=evaluations,
                metric=metric,
                calibration=calibration,
                restart_values=[float(v) for v in values[s]],
                seed=schedule.seed,
            )
        )
    return results


def minimize_distance(
    rho,
    metric: str = "js",
    schedule: AnnealingSchedule | None = None,
    calibrate: bool = True,
) -> EntanglementResult:
    """Minimum of ``metric`` between ``rho`` and the separable set.

    ``metric`` is ``"js"`` (the QJSD in bits) or ``"bures"`` (the Bures
    distance sqrt(2 - 2 sqrt F)).  The normalized value divides by the cached
    singlet calibration for the same metric and seed.
    """
    return minimize_distance_batch([rho], metric, schedule, calibrate)[0]


def entanglement_js(rho, schedule: AnnealingSchedule | None = None) -> EntanglementResult:
    return minimize_distance(rho, "js", schedule)


def entanglement_bures(rho, schedule: AnnealingSchedule | None = None) -> EntanglementResult:
    return minimize_distance(rho, "bures", schedule)

