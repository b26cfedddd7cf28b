"""
Bell operator assembly, classical bounds by deterministic-strategy enumeration
and the five supported inequality families
"""

import math
from typing import Optional

import numpy as np

from src.models.bell_types import BellCoefficients, BellFamily, FamilyId, MeasurementSet
from src.models.errors import ParameterRangeError
from src.models.quantum_types import ComplexMatrix, TwoQubitState
from src.core.quantum_core import expectation
from src.utils.logger import get_logger

logger = get_logger(__name__)

# 2^(n+m) strategies; beyond this the enumeration is refused
MAX_ENUMERATED_SETTINGS = 26

# Rows: Alice settings A1..A3, columns: Bob settings B1..B4
EBI_TABLE = (
    (1, 1, -1, -1),
    (1, -1, 1, -1),
    (1, -1, -1, 1),
)


def bell_operator(coefficients: BellCoefficients, measurements: MeasurementSet) -> ComplexMatrix:
    """
    sum_xy alpha_xy A_x (x) B_y as a Hermitian 4x4 matrix

    Raises:
        DimensionError: if measurement counts do not match the table
    """
    measurements.check_matches(coefficients)
    operator = np.zeros((4, 4), dtype=complex)
    for x, a_obs in enumerate(measurements.alice):
        for y, b_obs in enumerate(measurements.bob):
            weight = coefficients.alpha[x, y]
            if weight != 0.0:
                operator += weight * np.kron(a_obs.matrix, b_obs.matrix)
    return operator


def violation(coefficients: BellCoefficients, measurements: MeasurementSet, state: TwoQubitState) -> float:
    """beta = tr[B rho]"""
    return expectation(bell_operator(coefficients, measurements), state)


def lhv_bound(coefficients: BellCoefficients) -> float:
    """
    Maximum of sum_xy alpha_xy a_x b_y over deterministic a_x, b_y in {+1, -1}

    The party with fewer settings is enumerated explicitly; for each of its
    assignments the other party's best response is sign-matching, which
    contributes sum |column sum|. This covers all 2^(n+m) strategies exactly.

    Raises:
        ParameterRangeError: if n + m exceeds 26
    """
    n, m = coefficients.n, coefficients.m
    if n + m > MAX_ENUMERATED_SETTINGS:
        raise ParameterRangeError(
            f"Enumeration limited to n + m <= {MAX_ENUMERATED_SETTINGS}, got {n + m}"
        )
    table = coefficients.alpha if n <= m else coefficients.alpha.T
    rows = table.shape[0]
    codes = np.arange(2 ** rows, dtype=np.int64)[:, None]
    signs = 1.0 - 2.0 * ((codes >> np.arange(rows)) & 1)
    values = np.abs(signs @ table).sum(axis=1)
    best = float(np.max(values))
    logger.debug(f"LHV enumeration over {2 ** (n + m)} strategies ({n}x{m}): {best:.12g}")
    return best


def lhv_strategy_count(coefficients: BellCoefficients) -> int:
    return 2 ** (coefficients.n + coefficients.m)


def _make_family(family_id: FamilyId, table, quantum_bound: float, **parameters) -> BellFamily:
    coefficients = BellCoefficients(np.asarray(table, dtype=float))
    family = BellFamily(
        family_id=family_id,
        coefficients=coefficients,
        lhv_bound=lhv_bound(coefficients),
        quantum_bound=float(quantum_bound),
        parameters=dict(parameters),
    )
    if not family.lhv_bound < family.quantum_bound:
        logger.warning(f"{family.label}: LHV bound {family.lhv_bound} is not below quantum bound {family.quantum_bound}")
    return family


def _require_setting_count(name: str, n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 2:
        raise ParameterRangeError(f"{name} requires an integer n >= 2, got {n}")
    return int(n)


def family_chsh() -> BellFamily:
    """A0B0 + A0B1 + A1B0 - A1B1"""
    return _make_family(FamilyId.CHSH, [[1, 1], [1, -1]], 2 * math.sqrt(2))


def family_tilted(alpha: float) -> BellFamily:
    """
    alpha A0B0 + alpha A0B1 + A1B0 - A1B1

    Raises:
        ParameterRangeError: if alpha < 1
    """
    if not (math.isfinite(alpha) and alpha >= 1.0):
        raise ParameterRangeError(f"Tilted CHSH requires alpha >= 1, got {alpha}")
    return _make_family(
        FamilyId.TILTED,
        [[alpha, alpha], [1, -1]],
        2 * math.sqrt(alpha ** 2 + 1),
        alpha=float(alpha),
    )


def family_ebi() -> BellFamily:
    """Elegant Bell inequality, three Alice and four Bob settings"""
    return _make_family(FamilyId.EBI, EBI_TABLE, 4 * math.sqrt(3))


def gisin_table(n: int) -> np.ndarray:
    """alpha_ij = +1 for j <= n + 1 - i, -1 otherwise (1-based i, j)"""
    i = np.arange(1, n + 1)[:, None]
    j = np.arange(1, n + 1)[None, :]
    return np.where(j <= n + 1 - i, 1.0, -1.0)


def family_gisin(n: int) -> BellFamily:
    """
    Raises:
        ParameterRangeError: if n < 2
    """
    n = _require_setting_count("Gisin family", n)
    bound = 2 * n * math.cos(math.pi / (2 * n)) / math.sin(math.pi / n)
    return _make_family(FamilyId.GISIN, gisin_table(n), bound, n=n)


def chained_table(n: int) -> np.ndarray:
    """
    sum_{k<n} (A_k B_k + A_{k+1} B_k) + A_n B_n - A_1 B_n
    """
    table = np.zeros((n, n))
    for k in range(n - 1):
        table[k, k] = 1.0
        table[k + 1, k] = 1.0
    table[n - 1, n - 1] += 1.0
    table[0, n - 1] -= 1.0
    return table


def family_chained(n: int) -> BellFamily:
    """
    Raises:
        ParameterRangeError: if n < 2
    """
    n = _require_setting_count("Chained family", n)
    return _make_family(FamilyId.CHAINED, chained_table(n), 2 * n * math.cos(math.pi / (2 * n)), n=n)


def family_by_id(family_id, alpha: Optional[float] = None, n: Optional[int] = None) -> BellFamily:
    """
    Dispatch to the family constructor; alpha defaults to 1, n to 3

    Raises:
        ParameterRangeError: for unknown ids or out-of-range parameters
    """
    try:
        fid = FamilyId(family_id)
    except ValueError:
        raise ParameterRangeError(f"Unknown family '{family_id}'")
    if fid is FamilyId.CHSH:
        return family_chsh()
    if fid is FamilyId.TILTED:
        return family_tilted(1.0 if alpha is None else alpha)
    if fid is FamilyId.EBI:
        return family_ebi()
    if fid is FamilyId.GISIN:
        return family_gisin(3 if n is None else n)
    return family_chained(3 if n is None else n)
