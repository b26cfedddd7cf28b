"""
Two-qubit linear algebra: tensor products, state norms, expectations,
projectors, anticommutators, planar observable construction and the two
canonical states
"""

from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from src.core.tolerances import SPECTRAL_TOL, STRUCTURAL_TOL
from src.models.errors import DimensionError, InfeasibleGramError, PreconditionError
from src.models.quantum_types import (
    IDENTITY2,
    BlochVector,
    ComplexMatrix,
    DichotomicObservable,
    TwoQubitState,
)
from src.utils.logger import get_logger

logger = get_logger(__name__)

# Anchor angles for planar_vectors_from_gram
GISIN3_ANCHOR = np.pi / 3
CHAINED_ANCHOR = 0.0

# (i, j, value): required inner product r_i . r_j, 0-based indices
GramTarget = Tuple[int, int, float]


def _as_matrix(m) -> np.ndarray:
    if isinstance(m, DichotomicObservable):
        return np.asarray(m.matrix)
    return np.asarray(m, dtype=complex)


def tensor(a, b) -> ComplexMatrix:
    """
    Kronecker product A (x) B of two 2x2 operators

    Raises:
        DimensionError: if either operand is not 2x2
    """
    ma, mb = _as_matrix(a), _as_matrix(b)
    if ma.shape != (2, 2) or mb.shape != (2, 2):
        raise DimensionError(f"tensor expects two 2x2 operands, got {ma.shape} and {mb.shape}")
    return np.kron(ma, mb)


def _require_4x4(o) -> np.ndarray:
    m = _as_matrix(o)
    if m.shape != (4, 4):
        raise DimensionError(f"Expected a 4x4 operator, got {m.shape}")
    return m


def state_norm(o: ComplexMatrix, state: TwoQubitState) -> float:
    """
    ||O|psi>|| = sqrt(<psi|O^+ O|psi>)

    Raises:
        DimensionError: if O is not 4x4
        PreconditionError: if the state is mixed
    """
    m = _require_4x4(o)
    if not state.is_pure:
        raise PreconditionError("state_norm is defined for pure states only")
    return float(np.linalg.norm(m @ state.amplitudes))


def expectation(o: ComplexMatrix, state: TwoQubitState) -> float:
    """
    tr[O rho] for a Hermitian 4x4 operator

    Raises:
        DimensionError: if O is not 4x4
        PreconditionError: if the trace has an imaginary part above 1e-10
    """
    m = _require_4x4(o)
    if state.is_pure:
        psi = state.amplitudes
        value = complex(np.vdot(psi, m @ psi))
    else:
        value = complex(np.trace(m @ state.density))
    if abs(value.imag) > SPECTRAL_TOL:
        raise PreconditionError(f"Operator is not Hermitian: tr[O rho] has imaginary part {value.imag:.3g}")
    return float(value.real)


def projector(observable: DichotomicObservable, outcome: int) -> ComplexMatrix:
    """
    Projector onto the eigenspace of the given outcome: (I + outcome * O) / 2

    Example:
        >>> projector(DichotomicObservable.from_bloch((0, 0, 1)), 1)
        array([[1.+0.j, 0.+0.j],
               [0.+0.j, 0.+0.j]])
    """
    if outcome not in (1, -1):
        raise PreconditionError(f"Outcome must be +1 or -1, got {outcome}")
    return (IDENTITY2 + outcome * observable.matrix) / 2


def anticommutator(o1: DichotomicObservable, o2: DichotomicObservable) -> ComplexMatrix:
    """O1 O2 + O2 O1"""
    m1, m2 = _as_matrix(o1), _as_matrix(o2)
    return m1 @ m2 + m2 @ m1


def _placement_order(count: int, normalized: List[GramTarget]) -> List[GramTarget]:
    """
    Traversal of the undirected target graph from vector 0, as (vector, base, value)

    Each step takes the lowest-indexed unplaced vector adjacent to a placed one,
    linked through the first target joining them, so inputs where every vector
    links to a lower index are placed in index order.
    """
    placed = {0}
    order = []
    while len(placed) < count:
        step = None
        for j in range(count):
            if j in placed:
                continue
            for lo, hi, value in normalized:
                other = hi if j == lo else lo if j == hi else None
                if other is not None and other in placed:
                    step = (j, other, value)
                    break
            if step:
                break
        if step is None:
            missing = min(j for j in range(count) if j not in placed)
            raise InfeasibleGramError(f"Vector {missing} is not connected to vector 0 by any target")
        placed.add(step[0])
        order.append(step)
    return order


def planar_angles_from_gram(targets: Iterable[GramTarget], anchor: float = 0.0) -> List[float]:
    """
    Angles theta_i of x-z plane unit vectors (sin theta, 0, cos theta)
    realizing every inner-product target, with theta_0 = anchor

    Vectors are placed along a traversal of the target graph from vector 0.
    Each takes its angle from the target linking it to an already placed
    vector b, trying theta_b + arccos(value) before theta_b - arccos(value);
    all targets among placed vectors are then re-checked and the search
    backtracks on failure.

    Args:
        targets: (i, j, value) triples with 0-based indices, |value| <= 1
        anchor: angle of vector 0

    Returns:
        List of angles, one per vector

    Raises:
        InfeasibleGramError: if a value exceeds 1 in magnitude, a vector is not
            connected to vector 0, or no sign choice satisfies all targets
    """
    normalized = []
    for i, j, value in targets:
        if i == j:
            raise InfeasibleGramError(f"Target ({i}, {j}) relates a vector to itself")
        if abs(value) > 1 + STRUCTURAL_TOL:
            raise InfeasibleGramError(f"Target r_{i}.r_{j} = {value} exceeds 1 in magnitude")
        lo, hi = sorted((int(i), int(j)))
        normalized.append((lo, hi, float(np.clip(value, -1.0, 1.0))))
    if not normalized:
        return [anchor]

    count = 1 + max(hi for _, hi, _ in normalized)
    order = _placement_order(count, normalized)

    def consistent(angles: Dict[int, float]) -> Tuple[bool, str]:
        for lo, hi, value in normalized:
            if lo in angles and hi in angles:
                actual = np.cos(angles[hi] - angles[lo])
                if abs(actual - value) > SPECTRAL_TOL:
                    return False, f"r_{lo}.r_{hi} = {actual:.12g}, required {value:.12g}"
        return True, ""

    last_failure = ["no assignment found"]

    def place(angles: Dict[int, float], step: int) -> Dict[int, float]:
        if step == len(order):
            return angles
        j, base, value = order[step]
        delta = float(np.arccos(value))
        candidates = [angles[base] + delta]
        if delta > STRUCTURAL_TOL and abs(delta - np.pi) > STRUCTURAL_TOL:
            candidates.append(angles[base] - delta)
        for theta in candidates:
            trial = {**angles, j: theta}
            ok, reason = consistent(trial)
            if not ok:
                last_failure[0] = reason
                continue
            result = place(trial, step + 1)
            if result:
                return result
        return {}

    placed = place({0: float(anchor)}, 0)
    if not placed:
        raise InfeasibleGramError(f"No planar angle assignment exists: {last_failure[0]}")
    angles = [placed[j] for j in range(count)]
    logger.debug(f"Planar angles from {len(normalized)} targets: {[f'{a:.6f}' for a in angles]}")
    return angles


def planar_vectors_from_gram(targets: Iterable[GramTarget], anchor: float = 0.0) -> List[BlochVector]:
    """Unit x-z plane Bloch vectors realizing the targets (see planar_angles_from_gram)"""
    return [BlochVector.planar(theta) for theta in planar_angles_from_gram(targets, anchor)]


def gisin3_targets() -> List[GramTarget]:
    """{A1,A2} = {A2,A3} = -{A1,A3} = I, i.e. inner products 1/2, 1/2, -1/2"""
    return [(0, 1, 0.5), (1, 2, 0.5), (0, 2, -0.5)]


def chained_targets(n: int) -> List[GramTarget]:
    """{A_k,A_k+1} = -{A_1,A_n} = 2 cos(pi/n) I"""
    c = float(np.cos(np.pi / n))
    targets = [(k, k + 1, c) for k in range(n - 1)]
    if n > 2:
        targets.append((0, n - 1, -c))
    return targets


def maximally_entangled() -> TwoQubitState:
    """(|00> + |11>) / sqrt(2)"""
    s = 1 / np.sqrt(2)
    return TwoQubitState.pure([s, 0, 0, s])


def singlet() -> TwoQubitState:
    """(|01> - |10>) / sqrt(2)"""
    s = 1 / np.sqrt(2)
    return TwoQubitState.pure([0, s, -s, 0])


def werner(p: float) -> TwoQubitState:
    """
    p |psi-><psi-| + (1 - p) I / 4

    Raises:
        PreconditionError: if p is outside [0, 1]
    """
    if not (0.0 <= p <= 1.0):
        raise PreconditionError(f"Werner visibility must lie in [0, 1], got {p}")
    psi_minus = singlet().amplitudes
    rho = p * np.outer(psi_minus, psi_minus.conj()) + (1 - p) * np.eye(4) / 4
    return TwoQubitState.mixed(rho)


def transpose_swap_residual(m: ComplexMatrix) -> float:
    """||(I (x) M - M (x) I)|Phi+>|| evaluated directly, with no hypothesis check"""
    mat = _as_matrix(m)
    if mat.shape != (2, 2):
        raise DimensionError(f"Expected a 2x2 matrix, got {mat.shape}")
    op = np.kron(IDENTITY2, mat) - np.kron(mat, IDENTITY2)
    return float(np.linalg.norm(op @ maximally_entangled().amplitudes))


def transpose_swap_check(m: ComplexMatrix) -> float:
    """
    ||(I (x) M - M (x) I)|Phi+>|| for a transpose-symmetric M (m_ij = m_ji)

    Raises:
        PreconditionError: if M is not transpose-symmetric in the computational basis
    """
    mat = _as_matrix(m)
    if mat.shape != (2, 2):
        raise DimensionError(f"Expected a 2x2 matrix, got {mat.shape}")
    if np.max(np.abs(mat - mat.T)) > STRUCTURAL_TOL:
        raise PreconditionError("Matrix is not transpose-symmetric (m_ij != m_ji)")
    return transpose_swap_residual(mat)


def observables_from_vectors(vectors: Sequence[BlochVector]) -> Tuple[DichotomicObservable, ...]:
    return tuple(DichotomicObservable.from_bloch(v) for v in vectors)
