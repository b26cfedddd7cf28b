"""
Weighted sum-of-squares certificates for full-correlation Bell operators

For a pure state |psi> and weights

    omega_x = || sum_y alpha_xy I (x) B_y |psi> ||

the residual operators

    M_x = (1/omega_x) sum_y alpha_xy I (x) B_y - A_x (x) I

satisfy, whenever every A_x squares to the identity,

    <psi| (sum_x omega_x) I - B |psi> = sum_x (omega_x / 2) <psi| M_x^+ M_x |psi>

so sum_x omega_x is the value of the Bell expression exactly when every
M_x |psi> vanishes. On the maximally entangled state that condition fixes one
party's observables from the other's: (O (x) I)|Phi+> = (I (x) O^T)|Phi+>, so

    A_x = (1/omega_x) sum_y alpha_xy B_y^T

and symmetrically for Bob. For observables in the x-z plane the transpose is
the identity map; it flips the sign of any Y component.
"""

import math
from typing import Sequence, Tuple

import numpy as np

from src.core.bell_families import violation
from src.core.quantum_core import (
    CHAINED_ANCHOR,
    GISIN3_ANCHOR,
    chained_targets,
    gisin3_targets,
    maximally_entangled,
    observables_from_vectors,
    planar_vectors_from_gram,
)
from src.core.tolerances import DEGENERACY_TOL, SATURATION_TOL, SPECTRAL_TOL
from src.models.bell_types import BellCoefficients, BellFamily, FamilyId, MeasurementSet
from src.models.errors import (
    DegenerateWeightError,
    DimensionError,
    NotDichotomicError,
    NotInvolutiveError,
    PreconditionError,
    UnsupportedFamilyError,
    VerificationError,
)
from src.models.quantum_types import (
    IDENTITY2,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    ComplexMatrix,
    DichotomicObservable,
    TwoQubitState,
)
from src.models.results import SosCertificate
from src.utils.logger import get_logger

logger = get_logger(__name__)


def _require_pure(state: TwoQubitState) -> np.ndarray:
    if not state.is_pure:
        raise PreconditionError("SOS weights are defined on pure states only")
    return state.amplitudes


def _weighted_sum(weights: Sequence[float], observables: Sequence[DichotomicObservable]) -> np.ndarray:
    total = np.zeros((2, 2), dtype=complex)
    for w, obs in zip(weights, observables):
        total += w * obs.matrix
    return total


def _check_count(expected: int, observables: Sequence[DichotomicObservable], party: str) -> None:
    if len(observables) != expected:
        raise DimensionError(f"Expected {expected} {party} observables, got {len(observables)}")


def _check_index(index: int, size: int, label: str) -> int:
    if isinstance(index, bool) or not isinstance(index, (int, np.integer)) or not 0 <= index < size:
        raise DimensionError(f"{label} index {index} outside range(0, {size})")
    return int(index)


def _checked_weight(value: float, label: str) -> float:
    if value < DEGENERACY_TOL:
        raise DegenerateWeightError(f"Weight {label} = {value:.3g} vanishes; residual operators are undefined")
    return value


def omega_per_alice(coefficients: BellCoefficients, bob: Sequence[DichotomicObservable],
                    state: TwoQubitState, x: int) -> float:
    """
    omega_x = || sum_y alpha_xy I (x) B_y |psi> ||

    Raises:
        DimensionError: if x is outside range(n)
        PreconditionError: if the state is mixed
        DegenerateWeightError: if omega_x < 1e-12
    """
    psi = _require_pure(state)
    _check_count(coefficients.m, bob, "Bob")
    x = _check_index(x, coefficients.n, "Alice setting")
    row = _weighted_sum(coefficients.alpha[x, :], bob)
    value = float(np.linalg.norm(np.kron(IDENTITY2, row) @ psi))
    return _checked_weight(value, f"omega_{x} (Alice row)")


def omega_per_bob(coefficients: BellCoefficients, alice: Sequence[DichotomicObservable],
                  state: TwoQubitState, y: int) -> float:
    """
    omega_y = || sum_x alpha_xy A_x (x) I |psi> ||

    Raises:
        DimensionError: if y is outside range(m)
        PreconditionError: if the state is mixed
        DegenerateWeightError: if omega_y < 1e-12
    """
    psi = _require_pure(state)
    _check_count(coefficients.n, alice, "Alice")
    y = _check_index(y, coefficients.m, "Bob setting")
    column = _weighted_sum(coefficients.alpha[:, y], alice)
    value = float(np.linalg.norm(np.kron(column, IDENTITY2) @ psi))
    return _checked_weight(value, f"omega_{y} (Bob column)")


def omega_from_anticommutators(weights: Sequence[float], observables: Sequence[DichotomicObservable],
                               state: TwoQubitState, side: str = "bob") -> float:
    """
    Expanded weight: [sum_i w_i^2 + sum_{i<j} w_i w_j <{O_i, O_j}>]^(1/2)

    Args:
        weights: one coefficient row (or column)
        observables: the observables the weights multiply
        state: pure state
        side: 'bob' places the operators as I (x) O, 'alice' as O (x) I
    """
    psi = _require_pure(state)

    def lift(op: np.ndarray) -> np.ndarray:
        return np.kron(IDENTITY2, op) if side == "bob" else np.kron(op, IDENTITY2)

    total = float(np.sum(np.square(weights)))
    for i in range(len(observables)):
        for j in range(i + 1, len(observables)):
            anti = observables[i].matrix @ observables[j].matrix + observables[j].matrix @ observables[i].matrix
            total += weights[i] * weights[j] * float(np.vdot(psi, lift(anti) @ psi).real)
    return math.sqrt(max(total, 0.0))


def residual(coefficients: BellCoefficients, measurements: MeasurementSet,
             state: TwoQubitState, x: int) -> ComplexMatrix:
    """M_x = (1/omega_x) sum_y alpha_xy I (x) B_y - A_x (x) I"""
    measurements.check_matches(coefficients)
    omega = omega_per_alice(coefficients, measurements.bob, state, x)
    row = _weighted_sum(coefficients.alpha[x, :], measurements.bob)
    return np.kron(IDENTITY2, row) / omega - np.kron(measurements.alice[x].matrix, IDENTITY2)


def residual_bob(coefficients: BellCoefficients, measurements: MeasurementSet,
                 state: TwoQubitState, y: int) -> ComplexMatrix:
    """M_y = I (x) B_y - (1/omega_y) sum_x alpha_xy A_x (x) I"""
    measurements.check_matches(coefficients)
    omega = omega_per_bob(coefficients, measurements.alice, state, y)
    column = _weighted_sum(coefficients.alpha[:, y], measurements.alice)
    return np.kron(IDENTITY2, measurements.bob[y].matrix) - np.kron(column, IDENTITY2) / omega


def verify_sos(coefficients: BellCoefficients, measurements: MeasurementSet,
               state: TwoQubitState, beta: float) -> SosCertificate:
    """
    Check the weighted sum-of-squares identity and the saturation conditions

    The identity is evaluated against sum(omega), its true right-hand side;
    the distance between sum(omega) and the requested beta is reported
    separately as beta_mismatch.

    Raises:
        PreconditionError: if the state is mixed
        NotInvolutiveError: if some A_x does not square to the identity
        DegenerateWeightError: if some omega_x vanishes
    """
    psi = _require_pure(state)
    measurements.check_matches(coefficients)
    for x, a_obs in enumerate(measurements.alice):
        if a_obs.squared_deviation > SPECTRAL_TOL:
            raise NotInvolutiveError(f"A_{x} does not square to the identity")

    omegas = []
    norms = []
    sos_value = 0.0
    for x in range(coefficients.n):
        omega = omega_per_alice(coefficients, measurements.bob, state, x)
        m_x = residual(coefficients, measurements, state, x)
        norm = float(np.linalg.norm(m_x @ psi))
        omegas.append(omega)
        norms.append(norm)
        sos_value += omega / 2 * norm ** 2

    omega_sum = float(sum(omegas))
    value = violation(coefficients, measurements, state)
    gap = abs((omega_sum - value) - sos_value)
    certificate = SosCertificate(
        beta=float(beta),
        omegas=tuple(omegas),
        residual_norms=tuple(norms),
        identity_gap=float(gap),
        saturated=all(nm <= SATURATION_TOL for nm in norms),
        omega_sum=omega_sum,
        beta_mismatch=abs(omega_sum - beta),
        violation=value,
    )
    if not certificate.beta_matches:
        logger.info(f"Requested beta {beta:.12g} differs from sum of weights {omega_sum:.12g}")
    logger.debug(f"SOS check: gap {gap:.3g}, max residual {max(norms):.3g}")
    return certificate


def _derive(weights_matrix: np.ndarray, sources: Sequence[DichotomicObservable],
            party: str, source_party: str) -> Tuple[DichotomicObservable, ...]:
    """
    Rows of weights_matrix index the derived observables, columns the sources.
    The state is Phi+, so each weight is || sum w_k O_k || with
    ||(I (x) O)|Phi+>||^2 = tr(O^+ O) / 2.
    """
    state = maximally_entangled()
    psi = state.amplitudes
    derived = []
    for i, weights in enumerate(weights_matrix):
        combination = _weighted_sum(weights, sources)
        omega = _checked_weight(
            float(np.linalg.norm(np.kron(IDENTITY2, combination) @ psi)),
            f"omega_{i} ({party} from {source_party})",
        )
        candidate = combination.T / omega
        if np.max(np.abs(candidate @ candidate - IDENTITY2)) > SPECTRAL_TOL:
            raise NotInvolutiveError(
                f"Derived {party} observable {i} is not an involution; "
                f"the {source_party} observables cannot saturate this expression"
            )
        try:
            observable = DichotomicObservable.from_matrix(candidate)
        except NotDichotomicError as e:
            raise NotInvolutiveError(f"Derived {party} observable {i}: {e}")
        # (C^T/omega (x) I) Phi+ = (I (x) C/omega) Phi+
        annihilation = np.linalg.norm(
            (np.kron(candidate, IDENTITY2) - np.kron(IDENTITY2, combination) / omega) @ psi
        )
        if annihilation > SATURATION_TOL:
            raise VerificationError(f"Derived {party} observable {i} leaves residual {annihilation:.3g}")
        derived.append(observable)
    return tuple(derived)


def derive_alice_from_bob(coefficients: BellCoefficients,
                          bob: Sequence[DichotomicObservable]) -> Tuple[DichotomicObservable, ...]:
    """
    A_x = (1/omega_x) sum_y alpha_xy B_y^T, saturating M_x |Phi+> = 0

    Raises:
        DegenerateWeightError: if some combination vanishes
        NotInvolutiveError: if a derived operator is not an involution
    """
    _check_count(coefficients.m, bob, "Bob")
    return _derive(coefficients.alpha, bob, "Alice", "Bob")


def derive_bob_from_alice(coefficients: BellCoefficients,
                          alice: Sequence[DichotomicObservable]) -> Tuple[DichotomicObservable, ...]:
    """
    B_y = (1/omega_y) sum_x alpha_xy A_x^T, saturating M_y |Phi+> = 0

    Raises:
        DegenerateWeightError: if some combination vanishes
        NotInvolutiveError: if a derived operator is not an involution
    """
    _check_count(coefficients.n, alice, "Alice")
    return _derive(coefficients.alpha.T, alice, "Bob", "Alice")


def _fixed_alice(family: BellFamily) -> Tuple[DichotomicObservable, ...]:
    if family.family_id is FamilyId.TILTED:
        return (DichotomicObservable.from_matrix(PAULI_Z), DichotomicObservable.from_matrix(PAULI_X))
    if family.family_id is FamilyId.EBI:
        return tuple(DichotomicObservable.from_matrix(p) for p in (PAULI_X, PAULI_Y, PAULI_Z))
    if family.family_id is FamilyId.GISIN:
        return observables_from_vectors(planar_vectors_from_gram(gisin3_targets(), GISIN3_ANCHOR))
    n = int(family.parameters['n'])
    return observables_from_vectors(planar_vectors_from_gram(chained_targets(n), CHAINED_ANCHOR))


def solve_family_measurements(family: BellFamily) -> Tuple[MeasurementSet, TwoQubitState, SosCertificate]:
    """
    Optimal measurements on Phi+ with their saturated certificate

    CHSH fixes Bob = (X, Z) and derives Alice; every other family fixes Alice
    (tilted: Z, X; EBI: X, Y, Z; Gisin n=3 and chained: planar vectors with the
    required anticommutators) and derives Bob.

    Raises:
        UnsupportedFamilyError: for Gisin with n != 3
    """
    coefficients = family.coefficients
    if family.family_id is FamilyId.GISIN and int(family.parameters.get('n', 0)) != 3:
        raise UnsupportedFamilyError(
            f"Solved measurements for the Gisin family are available for n = 3 only, got {family.label}"
        )

    if family.family_id is FamilyId.CHSH:
        bob = (DichotomicObservable.from_matrix(PAULI_X), DichotomicObservable.from_matrix(PAULI_Z))
        alice = derive_alice_from_bob(coefficients, bob)
    else:
        alice = _fixed_alice(family)
        bob = derive_bob_from_alice(coefficients, alice)

    measurements = MeasurementSet(alice=alice, bob=bob)
    state = maximally_entangled()
    certificate = verify_sos(coefficients, measurements, state, family.quantum_bound)
    logger.info(
        f"Solved {family.label}: violation {certificate.violation:.12g}, "
        f"bound {family.quantum_bound:.12g}, saturated {certificate.saturated}"
    )
    return measurements, state, certificate
