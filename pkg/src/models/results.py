"""
Result data types: SOS certificates, probability tables, randomness reports,
see-saw results and sweep rows
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from src.core.tolerances import SPECTRAL_TOL, STRUCTURAL_TOL
from src.models.bell_types import MeasurementSet
from src.models.errors import ProbabilityTableError

# Outcome labels in table index order: index 0 -> +1, index 1 -> -1
OUTCOMES = (1, -1)


def outcome_index(outcome: int) -> int:
    if outcome == 1:
        return 0
    if outcome == -1:
        return 1
    raise ValueError(f"Outcome must be +1 or -1, got {outcome}")


@dataclass(frozen=True, eq=False)
class SosCertificate:
    """
    Outcome of checking the weighted sum-of-squares identity on a pure state

    Attributes:
        beta: requested bound
        omegas: weights omega_x, one per Alice setting
        residual_norms: ||M_x |psi>|| per Alice setting
        identity_gap: |<beta' I - B> - sum (omega_x/2) <M_x^+ M_x>| with beta' = sum omega
        saturated: all residual norms within tolerance
        omega_sum: sum of the weights
        beta_mismatch: |omega_sum - beta|
        violation: <psi|B|psi>
    """

    beta: float
    omegas: Tuple[float, ...]
    residual_norms: Tuple[float, ...]
    identity_gap: float
    saturated: bool
    omega_sum: float
    beta_mismatch: float
    violation: float

    @property
    def beta_matches(self) -> bool:
        return self.beta_mismatch <= SPECTRAL_TOL

    def to_dict(self) -> dict:
        return {
            'beta': self.beta,
            'omegas': list(self.omegas),
            'residual_norms': list(self.residual_norms),
            'identity_gap': self.identity_gap,
            'saturated': self.saturated,
            'omega_sum': self.omega_sum,
            'beta_mismatch': self.beta_mismatch,
        }


@dataclass(frozen=True, eq=False)
class JointProbabilityTable:
    """
    p(a, b | x, y) for a, b in {+1, -1}

    Attributes:
        entries: array of shape (2, 2, n, m) indexed [a_idx, b_idx, x, y]
            with outcome index 0 for +1 and 1 for -1

    Entries slightly outside [0, 1] (numerical noise) are clamped after the check.
    """

    entries: np.ndarray

    def __post_init__(self):
        table = np.array(self.entries, dtype=float)
        if table.ndim != 4 or table.shape[:2] != (2, 2):
            raise ProbabilityTableError(f"Table must have shape (2, 2, n, m), got {table.shape}")
        if np.min(table) < -STRUCTURAL_TOL or np.max(table) > 1 + STRUCTURAL_TOL:
            raise ProbabilityTableError(
                f"Probabilities outside [0, 1]: min {np.min(table):.3g}, max {np.max(table):.3g}"
            )
        table = np.clip(table, 0.0, 1.0)

        sums = table.sum(axis=(0, 1))
        if np.max(np.abs(sums - 1.0)) > SPECTRAL_TOL:
            raise ProbabilityTableError("Probabilities do not sum to 1 for every setting pair")

        alice_marginals = table.sum(axis=1)  # (a, x, y)
        if np.max(np.abs(alice_marginals - alice_marginals[:, :, :1])) > SPECTRAL_TOL:
            raise ProbabilityTableError("Alice's marginals depend on Bob's setting (signaling)")
        bob_marginals = table.sum(axis=0)  # (b, x, y)
        if np.max(np.abs(bob_marginals - bob_marginals[:, :1, :])) > SPECTRAL_TOL:
            raise ProbabilityTableError("Bob's marginals depend on Alice's setting (signaling)")

        table.setflags(write=False)
        object.__setattr__(self, 'entries', table)

    @property
    def n(self) -> int:
        return int(self.entries.shape[2])

    @property
    def m(self) -> int:
        return int(self.entries.shape[3])

    def probability(self, a: int, b: int, x: int, y: int) -> float:
        return float(self.entries[outcome_index(a), outcome_index(b), x, y])

    def correlator(self, x: int, y: int) -> float:
        """<A_x B_y> = sum_ab a b p(a, b | x, y)"""
        block = self.entries[:, :, x, y]
        return float(block[0, 0] + block[1, 1] - block[0, 1] - block[1, 0])


@dataclass(frozen=True)
class RandomnessReport:
    """
    Guessing probability and min-entropy of the tilted-CHSH optimal statistics

    Attributes:
        p_max: closed-form maximal joint probability
        argmax: (a, b, x, y) of the maximal table entry
        r_min_bits: -log2(p_max)
        alpha: tilt parameter
        cos_u: alpha / sqrt(alpha^2 + 1)
        p: Werner visibility, None for the maximally entangled state
        p_max_brute: maximum of the explicitly computed table
        verified: closed form and brute force agree within tolerance
        violation: |tr(B rho)| at the optimal measurements
        violation_sign: sign of tr(B rho) (negative on the singlet-based Werner family)
        violates_lhv: violation exceeds the classical bound
    """

    p_max: float
    argmax: Tuple[int, int, int, int]
    r_min_bits: float
    alpha: float
    cos_u: float
    p: Optional[float]
    p_max_brute: float
    verified: bool
    violation: float
    violation_sign: int
    violates_lhv: bool

    def to_dict(self) -> dict:
        return {
            'p_max': self.p_max,
            'p_max_brute': self.p_max_brute,
            'argmax': {'a': self.argmax[0], 'b': self.argmax[1], 'x': self.argmax[2], 'y': self.argmax[3]},
            'r_min_bits': self.r_min_bits,
            'verified': self.verified,
            'closed_form_params': {'alpha': self.alpha, 'cos_u': self.cos_u, 'p': self.p},
            'violation': self.violation,
            'violation_sign': self.violation_sign,
            'violates_lhv': self.violates_lhv,
        }


@dataclass(frozen=True, eq=False)
class SeesawResult:
    """
    Best Bell value found by alternating optimization at fixed state

    Attributes:
        best_violation: largest value over all restarts
        measurements: measurements attaining it
        iterations: iterations used by the winning restart
        restarts_used: number of restarts run
        converged: winning restart stopped on the tolerance rather than max_iter
        seed: root seed of the per-restart random streams
        trace: Bell value after every iteration of the winning restart
    """

    best_violation: float
    measurements: MeasurementSet
    iterations: int
    restarts_used: int
    converged: bool
    seed: int
    trace: Tuple[float, ...] = ()

    def to_dict(self) -> dict:
        return {
            'best_violation': self.best_violation,
            'iterations': self.iterations,
            'restarts_used': self.restarts_used,
            'converged': self.converged,
            'seed': self.seed,
            'measurements': self.measurements.to_dict(),
        }


@dataclass(frozen=True)
class SweepRow:
    """One grid point of an alpha or visibility sweep"""

    alpha: float
    p: float
    p_max: float
    p_max_brute: float
    r_min_bits: float
    verified: bool
    violates_lhv: bool = True

    def to_csv_row(self) -> List[str]:
        return [
            f"{self.alpha:.12g}",
            f"{self.p:.12g}",
            f"{self.p_max:.12g}",
            f"{self.r_min_bits:.12g}",
            '1' if self.verified else '0',
        ]


@dataclass(frozen=True)
class SweepResult:
    """
    Attributes:
        variable: 'alpha' or 'p'
        rows: grid rows in grid order
        monotone: r_min strictly decreasing along the grid
        all_verified: every row verified
    """

    variable: str
    rows: Tuple[SweepRow, ...] = field(default_factory=tuple)
    monotone: bool = True
    all_verified: bool = True

    @property
    def unverified_rows(self) -> List[int]:
        return [i for i, row in enumerate(self.rows) if not row.verified]
