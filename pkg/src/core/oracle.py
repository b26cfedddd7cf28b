"""
Independent checks: see-saw maximization of a Bell expression over qubit
observables at a fixed state, and the guessing probability recomputed from
eigenvector projectors
"""

from typing import List, Optional, Tuple

import numpy as np

from src.core.tolerances import STRUCTURAL_TOL
from src.models.bell_types import BellCoefficients, MeasurementSet
from src.models.quantum_types import PAULIS, DichotomicObservable, TwoQubitState
from src.models.results import SeesawResult
from src.utils.logger import get_logger
from src.workers.pool import ComputePool

logger = get_logger(__name__)

DEFAULT_RESTARTS = 20
DEFAULT_MAX_ITER = 500
DEFAULT_TOL = 1e-10
DEFAULT_SEED = 20240101


def _random_unit_vectors(rng: np.random.Generator, count: int) -> np.ndarray:
    vectors = rng.normal(size=(count, 3))
    return vectors / np.linalg.norm(vectors, axis=1, keepdims=True)


def _bloch_matrices(vectors: np.ndarray) -> np.ndarray:
    return np.einsum('ki,ijl->kjl', vectors, np.asarray(PAULIS))


def _spectral_sign(operator: np.ndarray, previous: np.ndarray) -> np.ndarray:
    """
    Bloch vector of P+ - P- for the traceless part of a 2x2 Hermitian operator

    R - tr(R)/2 I has eigenvalues +-sqrt(-det), so the sign matrix is
    (R - tr(R)/2 I) / sqrt(-det); its Bloch vector is returned. A vanishing
    traceless part leaves the previous vector in place.
    """
    traceless = operator - np.trace(operator) / 2 * np.eye(2)
    radius_sq = float(-np.linalg.det(traceless).real)
    if radius_sq <= STRUCTURAL_TOL ** 2:
        return previous
    radius = np.sqrt(radius_sq)
    return np.array([
        traceless[0, 1].real,
        -traceless[0, 1].imag,
        traceless[0, 0].real,
    ]) / radius


def _alice_operators(alpha: np.ndarray, bob: np.ndarray, rho4: np.ndarray) -> np.ndarray:
    """R_x with tr[(A (x) sum_y alpha_xy B_y) rho] = tr[A R_x]"""
    combos = np.einsum('xy,ykl->xkl', alpha, bob)
    return np.einsum('xkl,jlik->xji', combos, rho4)


def _bob_operators(alpha: np.ndarray, alice: np.ndarray, rho4: np.ndarray) -> np.ndarray:
    """S_y with tr[(sum_x alpha_xy A_x (x) B) rho] = tr[B S_y]"""
    combos = np.einsum('xy,xij->yij', alpha, alice)
    return np.einsum('yij,jlik->ylk', combos, rho4)


def _value(operators: np.ndarray, observables: np.ndarray) -> float:
    return float(np.einsum('kij,kji->', observables, operators).real)


def _single_run(alpha: np.ndarray, rho4: np.ndarray, rng: np.random.Generator,
                max_iter: int, tol: float) -> Tuple[float, np.ndarray, np.ndarray, int, bool, List[float]]:
    n, m = alpha.shape
    alice_vecs = _random_unit_vectors(rng, n)
    bob_vecs = _random_unit_vectors(rng, m)
    trace: List[float] = []
    previous = -np.inf
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        r_ops = _alice_operators(alpha, _bloch_matrices(bob_vecs), rho4)
        alice_vecs = np.array([_spectral_sign(r_ops[x], alice_vecs[x]) for x in range(n)])
        s_ops = _bob_operators(alpha, _bloch_matrices(alice_vecs), rho4)
        bob_vecs = np.array([_spectral_sign(s_ops[y], bob_vecs[y]) for y in range(m)])
        value = _value(s_ops, _bloch_matrices(bob_vecs))
        trace.append(value)
        if value - previous < tol:
            converged = True
            break
        previous = value
    return trace[-1], alice_vecs, bob_vecs, iterations, converged, trace


def seesaw_max_violation(coefficients: BellCoefficients, state: TwoQubitState,
                         restarts: int = DEFAULT_RESTARTS, max_iter: int = DEFAULT_MAX_ITER,
                         tol: float = DEFAULT_TOL, seed: int = DEFAULT_SEED) -> SeesawResult:
    """
    Alternating maximization of tr[B rho] over traceless qubit observables

    With Bob fixed, A_x enters linearly as tr[A_x R_x], maximized by the sign
    of R_x's traceless part; Bob is updated the same way. Each half-step is an
    exact argmax, so the value never decreases within a run. Runs stop when
    the improvement falls below tol or after max_iter iterations. Restart k
    draws its initial Bloch vectors from stream k of SeedSequence(seed).

    Args:
        coefficients: Bell coefficient table
        state: fixed two-qubit state
        restarts: number of independent random starts (>= 1)
        max_iter: iteration cap per run
        tol: stopping threshold on the per-iteration improvement
        seed: root seed

    Returns:
        SeesawResult of the best run (ties go to the lowest restart index)
    """
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    alpha = np.asarray(coefficients.alpha, dtype=float)
    rho4 = state.density_matrix().reshape(2, 2, 2, 2)
    streams = np.random.SeedSequence(seed).spawn(restarts)

    runs = ComputePool.map_ordered(
        lambda ss: _single_run(alpha, rho4, np.random.default_rng(ss), max_iter, tol),
        streams,
    )
    best_index = max(range(len(runs)), key=lambda k: (runs[k][0], -k))
    value, alice_vecs, bob_vecs, iterations, converged, trace = runs[best_index]

    measurements = MeasurementSet(
        alice=tuple(DichotomicObservable.from_bloch(v) for v in alice_vecs),
        bob=tuple(DichotomicObservable.from_bloch(v) for v in bob_vecs),
    )
    if not converged:
        logger.warning(f"See-saw best run hit max_iter={max_iter} without converging")
    logger.info(
        f"See-saw {coefficients.n}x{coefficients.m}: best {value:.12g} "
        f"from restart {best_index} of {restarts} after {iterations} iterations"
    )
    return SeesawResult(
        best_violation=value,
        measurements=measurements,
        iterations=iterations,
        restarts_used=restarts,
        converged=converged,
        seed=seed,
        trace=tuple(trace),
    )


def _eigen_projectors(observable: DichotomicObservable) -> Tuple[np.ndarray, np.ndarray]:
    """(projector for +1, projector for -1) from eigenvectors"""
    values, vectors = np.linalg.eigh(observable.matrix)
    plus = vectors[:, int(np.argmax(values))]
    minus = vectors[:, int(np.argmin(values))]
    return np.outer(plus, plus.conj()), np.outer(minus, minus.conj())


def brute_force_pmax(coefficients: Optional[BellCoefficients], state: TwoQubitState,
                     measurements: MeasurementSet) -> float:
    """
    Maximum of the full joint table built from eigenvector projectors

    No closed forms and no (I +- O)/2 projectors are used on this path.
    """
    if coefficients is not None:
        measurements.check_matches(coefficients)
    rho = state.density_matrix()
    alice = [_eigen_projectors(obs) for obs in measurements.alice]
    bob = [_eigen_projectors(obs) for obs in measurements.bob]
    best = 0.0
    for a_pair in alice:
        for b_pair in bob:
            for pa in a_pair:
                for pb in b_pair:
                    best = max(best, float(np.trace(rho @ np.kron(pa, pb)).real))
    return best
