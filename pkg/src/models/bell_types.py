"""
Bell expression data types: coefficient tables, families and measurement sets
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Tuple

import numpy as np

from src.models.errors import DimensionError, PreconditionError
from src.models.quantum_types import DichotomicObservable


class FamilyId(str, Enum):
    """Supported Bell inequality families"""
    CHSH = "chsh"
    TILTED = "tilted"
    EBI = "ebi"
    GISIN = "gisin"
    CHAINED = "chained"


@dataclass(frozen=True, eq=False)
class BellCoefficients:
    """
    Real n x m table alpha[x][y] of a full-correlation Bell operator
    sum_xy alpha_xy A_x (x) B_y

    Attributes:
        alpha: read-only float array, rows = Alice settings, columns = Bob settings
    """

    alpha: np.ndarray

    def __post_init__(self):
        table = np.array(self.alpha, dtype=float)
        if table.ndim != 2 or table.shape[0] < 1 or table.shape[1] < 1:
            raise DimensionError(f"Coefficient table must be a non-empty 2D array, got shape {table.shape}")
        if not np.all(np.isfinite(table)):
            raise PreconditionError("Coefficient table contains non-finite entries")
        if not np.any(table):
            raise PreconditionError("Coefficient table is all zero")
        table.setflags(write=False)
        object.__setattr__(self, 'alpha', table)

    @property
    def n(self) -> int:
        """Number of Alice settings"""
        return int(self.alpha.shape[0])

    @property
    def m(self) -> int:
        """Number of Bob settings"""
        return int(self.alpha.shape[1])

    def transposed(self) -> 'BellCoefficients':
        """Same expression with the parties' roles swapped"""
        return BellCoefficients(self.alpha.T)

    def to_list(self) -> list:
        return self.alpha.tolist()


@dataclass(frozen=True, eq=False)
class BellFamily:
    """
    A concrete member of one of the supported inequality families

    Attributes:
        family_id: family identifier
        parameters: {"alpha": ...} for tilted, {"n": ...} for gisin/chained, empty otherwise
        coefficients: coefficient table
        lhv_bound: classical bound from deterministic-strategy enumeration
        quantum_bound: maximal quantum value (Tsirelson-type bound)
    """

    family_id: FamilyId
    coefficients: BellCoefficients
    lhv_bound: float
    quantum_bound: float
    parameters: Dict[str, float] = field(default_factory=dict)

    @property
    def label(self) -> str:
        if not self.parameters:
            return self.family_id.value
        params = ", ".join(f"{k}={v:g}" for k, v in self.parameters.items())
        return f"{self.family_id.value}({params})"


@dataclass(frozen=True, eq=False)
class MeasurementSet:
    """
    Alice's and Bob's dichotomic observables, indexed like the coefficient table

    Attributes:
        alice: observables A_0 .. A_{n-1}
        bob: observables B_0 .. B_{m-1}
    """

    alice: Tuple[DichotomicObservable, ...]
    bob: Tuple[DichotomicObservable, ...]

    def __post_init__(self):
        alice = tuple(self.alice)
        bob = tuple(self.bob)
        if not alice or not bob:
            raise DimensionError("Both parties need at least one observable")
        for obs in alice + bob:
            if not isinstance(obs, DichotomicObservable):
                raise PreconditionError(f"Expected DichotomicObservable, got {type(obs).__name__}")
        object.__setattr__(self, 'alice', alice)
        object.__setattr__(self, 'bob', bob)

    def check_matches(self, coefficients: BellCoefficients) -> None:
        """
        Raises:
            DimensionError: if setting counts differ from the coefficient table
        """
        if len(self.alice) != coefficients.n or len(self.bob) != coefficients.m:
            raise DimensionError(
                f"Measurement counts ({len(self.alice)}, {len(self.bob)}) do not match "
                f"coefficient table ({coefficients.n}, {coefficients.m})"
            )

    def to_dict(self) -> dict:
        return {
            'alice': [obs.bloch.to_list() for obs in self.alice],
            'bob': [obs.bloch.to_list() for obs in self.bob],
        }
