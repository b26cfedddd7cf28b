"""
Joint outcome statistics, guessing probability and min-entropy for the
tilted-CHSH optimal measurements on the maximally entangled and Werner states
"""

import math
from typing import Dict, Optional, Tuple

import numpy as np

from src.core.bell_families import family_tilted, violation
from src.core.oracle import brute_force_pmax
from src.core.quantum_core import maximally_entangled, projector, werner
from src.core.sos_engine import solve_family_measurements
from src.core.tolerances import STRUCTURAL_TOL, VERIFY_TOL
from src.models.bell_types import MeasurementSet
from src.models.errors import ParameterRangeError
from src.models.quantum_types import TwoQubitState
from src.models.results import (
    OUTCOMES,
    JointProbabilityTable,
    RandomnessReport,
    SweepResult,
    SweepRow,
)
from src.utils.logger import get_logger
from src.workers.pool import ComputePool

logger = get_logger(__name__)


def joint_probabilities(state: TwoQubitState, measurements: MeasurementSet) -> JointProbabilityTable:
    """
    p(a, b | x, y) = tr[rho (Pi^a_{A_x} (x) Pi^b_{B_y})] for every outcome and setting pair
    """
    rho = state.density_matrix()
    n, m = len(measurements.alice), len(measurements.bob)
    entries = np.zeros((2, 2, n, m))
    alice_proj = [[projector(obs, a) for a in OUTCOMES] for obs in measurements.alice]
    bob_proj = [[projector(obs, b) for b in OUTCOMES] for obs in measurements.bob]
    for x in range(n):
        for y in range(m):
            for ai in range(2):
                for bi in range(2):
                    joint = np.kron(alice_proj[x][ai], bob_proj[y][bi])
                    entries[ai, bi, x, y] = float(np.trace(rho @ joint).real)
    return JointProbabilityTable(entries)


def guessing_probability(table: JointProbabilityTable) -> Tuple[float, Tuple[int, int, int, int]]:
    """
    Largest entry and its (a, b, x, y) index

    Entries within 1e-12 of the maximum count as ties; ties go to the
    lexicographically smallest (x, y, a, b), with +1 ordered before -1.
    """
    best = float(np.max(table.entries))
    for x in range(table.n):
        for y in range(table.m):
            for ai, a in enumerate(OUTCOMES):
                for bi, b in enumerate(OUTCOMES):
                    if table.entries[ai, bi, x, y] >= best - STRUCTURAL_TOL:
                        return best, (a, b, x, y)
    return best, (1, 1, 0, 0)


def min_entropy(p_max: float) -> float:
    """
    -log2(p_max) in bits

    Raises:
        ParameterRangeError: if p_max is outside (0, 1]
    """
    if not (0.0 < p_max <= 1.0):
        raise ParameterRangeError(f"Guessing probability must lie in (0, 1], got {p_max}")
    return max(0.0, -math.log2(p_max))


def _require_alpha(alpha: float) -> None:
    if not (math.isfinite(alpha) and alpha >= 1.0):
        raise ParameterRangeError(f"alpha must be >= 1, got {alpha}")


def _require_visibility(p: float) -> None:
    if not (0.0 <= p <= 1.0):
        raise ParameterRangeError(f"Werner visibility must lie in [0, 1], got {p}")


def cos_u(alpha: float) -> float:
    """cos u = alpha / sqrt(alpha^2 + 1)"""
    return alpha / math.sqrt(alpha ** 2 + 1)


def tilted_pmax_closed_form(alpha: float) -> float:
    """
    (1 + cos u) / 4 with cos u = alpha / sqrt(alpha^2 + 1)

    Raises:
        ParameterRangeError: if alpha < 1
    """
    _require_alpha(alpha)
    return (1 + cos_u(alpha)) / 4


def werner_pmax_closed_form(alpha: float, p: float) -> float:
    """
    (1 + p cos u) / 4

    Raises:
        ParameterRangeError: if alpha < 1 or p outside [0, 1]
    """
    _require_alpha(alpha)
    _require_visibility(p)
    return (1 + p * cos_u(alpha)) / 4


def werner_violation_threshold(alpha: float) -> float:
    """
    Visibility above which the Werner statistics beat the classical bound:
    p * 2 sqrt(alpha^2 + 1) > 2 alpha, i.e. p > cos u
    """
    _require_alpha(alpha)
    return cos_u(alpha)


def tilted_probability_classes(alpha: float, p: float = 1.0) -> Dict[str, float]:
    """
    The four distinct values among the 16 joint probabilities

    Correlators are +-p cos u on the A0 settings and +-p sin u on the A1
    settings, and every marginal is 1/2, so each entry is (1 +- p cos u)/4 or
    (1 +- p sin u)/4. On u in (0, pi/4] the largest is (1 + p cos u)/4.
    """
    _require_alpha(alpha)
    _require_visibility(p)
    c = cos_u(alpha)
    s = 1 / math.sqrt(alpha ** 2 + 1)
    return {
        'cos_plus': (1 + p * c) / 4,
        'cos_minus': (1 - p * c) / 4,
        'sin_plus': (1 + p * s) / 4,
        'sin_minus': (1 - p * s) / 4,
    }


def tilted_optimal_measurements(alpha: float) -> MeasurementSet:
    """A = (Z, X) with Bob's observables derived for maximal violation on Phi+"""
    measurements, _, _ = solve_family_measurements(family_tilted(alpha))
    return measurements


def randomness_report(alpha: float, werner_p: Optional[float] = None) -> RandomnessReport:
    """
    Closed-form guessing probability cross-checked against the explicit table

    Without werner_p the state is Phi+; with it, the Werner state
    p |psi-><psi-| + (1-p) I/4 measured with the same observables. The
    Werner family is built on the singlet while the observables were derived
    on Phi+, so tr(B rho) is negative there; its magnitude is reported with
    the sign kept separately.
    """
    _require_alpha(alpha)
    family = family_tilted(alpha)
    measurements = tilted_optimal_measurements(alpha)
    if werner_p is None:
        state = maximally_entangled()
        p_max = tilted_pmax_closed_form(alpha)
    else:
        _require_visibility(werner_p)
        state = werner(werner_p)
        p_max = werner_pmax_closed_form(alpha, werner_p)
        if werner_p <= werner_violation_threshold(alpha):
            logger.warning(
                f"Visibility {werner_p:g} is at or below {werner_violation_threshold(alpha):.6g}: "
                f"no violation of the classical bound"
            )

    table = joint_probabilities(state, measurements)
    table_max, argmax = guessing_probability(table)
    p_max_brute = brute_force_pmax(family.coefficients, state, measurements)
    verified = abs(p_max - p_max_brute) <= VERIFY_TOL and abs(table_max - p_max_brute) <= VERIFY_TOL

    value = violation(family.coefficients, measurements, state)
    report = RandomnessReport(
        p_max=p_max,
        argmax=argmax,
        r_min_bits=min_entropy(p_max),
        alpha=float(alpha),
        cos_u=cos_u(alpha),
        p=None if werner_p is None else float(werner_p),
        p_max_brute=p_max_brute,
        verified=verified,
        violation=abs(value),
        violation_sign=-1 if value < 0 else 1,
        violates_lhv=abs(value) > family.lhv_bound + VERIFY_TOL,
    )
    if not verified:
        logger.error(f"Closed form {p_max:.12g} disagrees with brute force {p_max_brute:.12g}")
    return report


def _require_grid(low: float, high: float, steps: int) -> np.ndarray:
    if isinstance(steps, bool) or int(steps) != steps or steps < 2:
        raise ParameterRangeError(f"steps must be an integer >= 2, got {steps}")
    if not low < high:
        raise ParameterRangeError(f"Range start {low} must be below range end {high}")
    return np.linspace(low, high, int(steps))


def _sweep_row(alpha: float, p: Optional[float]) -> SweepRow:
    family = family_tilted(alpha)
    measurements = tilted_optimal_measurements(alpha)
    if p is None:
        state = maximally_entangled()
        p_max = tilted_pmax_closed_form(alpha)
    else:
        state = werner(p)
        p_max = werner_pmax_closed_form(alpha, p)
    p_max_brute = brute_force_pmax(family.coefficients, state, measurements)
    return SweepRow(
        alpha=float(alpha),
        p=1.0 if p is None else float(p),
        p_max=p_max,
        p_max_brute=p_max_brute,
        r_min_bits=min_entropy(p_max),
        verified=abs(p_max - p_max_brute) <= VERIFY_TOL,
        violates_lhv=p is None or p > werner_violation_threshold(alpha),
    )


def _finish_sweep(variable: str, rows) -> SweepResult:
    rows = tuple(rows)
    r_min = [row.r_min_bits for row in rows]
    monotone = all(later < earlier for earlier, later in zip(r_min, r_min[1:]))
    result = SweepResult(
        variable=variable,
        rows=rows,
        monotone=monotone,
        all_verified=all(row.verified for row in rows),
    )
    if result.unverified_rows:
        logger.error(f"{len(result.unverified_rows)} sweep rows failed verification: {result.unverified_rows}")
    logger.info(f"Sweep over {variable}: {len(rows)} rows, monotone={monotone}, verified={result.all_verified}")
    return result


def sweep_alpha(low: float, high: float, steps: int) -> SweepResult:
    """
    Phi+ statistics on an even alpha grid; r_min falls as alpha grows

    Raises:
        ParameterRangeError: unless 1 <= low < high and steps >= 2
    """
    grid = _require_grid(low, high, steps)
    _require_alpha(low)
    rows = ComputePool.map_ordered(lambda a: _sweep_row(float(a), None), list(grid))
    return _finish_sweep('alpha', rows)


def sweep_p(alpha: float, low: float, high: float, steps: int) -> SweepResult:
    """
    Werner statistics on an even visibility grid at fixed alpha

    Rows at or below the violation threshold are kept and flagged with
    violates_lhv = False.

    Raises:
        ParameterRangeError: unless 0 <= low < high <= 1, alpha >= 1 and steps >= 2
    """
    _require_alpha(alpha)
    grid = _require_grid(low, high, steps)
    _require_visibility(low)
    _require_visibility(high)
    rows = ComputePool.map_ordered(lambda p: _sweep_row(alpha, float(p)), list(grid))
    below = sum(1 for row in rows if not row.violates_lhv)
    if below:
        logger.warning(f"{below} sweep rows lie at or below the violation threshold p = {werner_violation_threshold(alpha):.6g}")
    return _finish_sweep('p', rows)
