"""
Immutable data types for qubit observables and two-qubit states

Matrices are plain numpy complex arrays (2x2 or 4x4) marked read-only once
they are stored inside one of these types.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.core.tolerances import SPECTRAL_TOL, STRUCTURAL_TOL
from src.models.errors import DimensionError, NotDichotomicError, PreconditionError

# 2x2 or 4x4 complex matrix
ComplexMatrix = np.ndarray

IDENTITY2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)

for _m in (IDENTITY2, PAULI_X, PAULI_Y, PAULI_Z):
    _m.setflags(write=False)


def _frozen(matrix: np.ndarray) -> np.ndarray:
    """Return a read-only complex copy"""
    copy = np.array(matrix, dtype=complex)
    copy.setflags(write=False)
    return copy


def is_hermitian(matrix: ComplexMatrix, tol: float = STRUCTURAL_TOL) -> bool:
    """True if matrix equals its conjugate transpose entry-wise within tol"""
    m = np.asarray(matrix)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and bool(
        np.max(np.abs(m - m.conj().T), initial=0.0) <= tol
    )


@dataclass(frozen=True)
class BlochVector:
    """
    Real 3-vector r such that r . (X, Y, Z) is a qubit observable

    Attributes:
        x: coefficient of X
        y: coefficient of Y
        z: coefficient of Z
    """

    x: float
    y: float
    z: float

    @classmethod
    def from_array(cls, values) -> 'BlochVector':
        arr = np.asarray(values, dtype=float).reshape(-1)
        if arr.shape != (3,):
            raise DimensionError(f"Bloch vector needs 3 components, got {arr.shape}")
        return cls(float(arr[0]), float(arr[1]), float(arr[2]))

    @classmethod
    def planar(cls, theta: float) -> 'BlochVector':
        """Unit vector (sin theta, 0, cos theta) in the x-z plane"""
        return cls(float(np.sin(theta)), 0.0, float(np.cos(theta)))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def norm(self) -> float:
        return float(np.linalg.norm(self.as_array()))

    def dot(self, other: 'BlochVector') -> float:
        return float(np.dot(self.as_array(), other.as_array()))

    def to_list(self) -> list:
        return [self.x, self.y, self.z]


@dataclass(frozen=True, eq=False)
class DichotomicObservable:
    """
    Hermitian 2x2 involution with eigenvalues +1 and -1

    The trivial involutions +I and -I are rejected: a measurement must split
    the qubit space into one +1 and one -1 eigenspace.

    Attributes:
        matrix: read-only 2x2 complex matrix
        bloch: Bloch vector r with matrix = r . sigma
    """

    matrix: ComplexMatrix
    bloch: Optional[BlochVector] = None

    @classmethod
    def from_bloch(cls, r) -> 'DichotomicObservable':
        """
        Build r . sigma from a unit Bloch vector

        Raises:
            NotDichotomicError: if |r| differs from 1 by more than the spectral tolerance
        """
        vec = r if isinstance(r, BlochVector) else BlochVector.from_array(r)
        if abs(vec.norm() - 1.0) > SPECTRAL_TOL:
            raise NotDichotomicError(f"Bloch vector norm {vec.norm():.12g} is not 1")
        matrix = vec.x * PAULI_X + vec.y * PAULI_Y + vec.z * PAULI_Z
        return cls(matrix=_frozen(matrix), bloch=vec)

    @classmethod
    def from_matrix(cls, matrix: ComplexMatrix) -> 'DichotomicObservable':
        """
        Validate a 2x2 matrix as a dichotomic observable and attach its Bloch vector

        Raises:
            DimensionError: if matrix is not 2x2
            NotDichotomicError: if not Hermitian, not an involution, or +/-I
        """
        m = np.asarray(matrix, dtype=complex)
        if m.shape != (2, 2):
            raise DimensionError(f"Observable must be 2x2, got {m.shape}")
        if not is_hermitian(m, SPECTRAL_TOL):
            raise NotDichotomicError("Observable is not Hermitian")
        if np.max(np.abs(m @ m - IDENTITY2)) > SPECTRAL_TOL:
            raise NotDichotomicError("Observable does not square to the identity")
        if abs(np.trace(m)) > SPECTRAL_TOL:
            raise NotDichotomicError("Observable has no +1/-1 rank split (it is +I or -I)")
        bloch = BlochVector(
            float(m[0, 1].real),
            float(-m[0, 1].imag),
            float(m[0, 0].real),
        )
        return cls(matrix=_frozen(m), bloch=bloch)

    @property
    def squared_deviation(self) -> float:
        """max |O^2 - I| entry"""
        return float(np.max(np.abs(self.matrix @ self.matrix - IDENTITY2)))

    def __repr__(self) -> str:
        if self.bloch is None:
            return f"DichotomicObservable({self.matrix.tolist()})"
        return f"DichotomicObservable(bloch=({self.bloch.x:.6g}, {self.bloch.y:.6g}, {self.bloch.z:.6g}))"


@dataclass(frozen=True, eq=False)
class TwoQubitState:
    """
    Two-qubit state held either as 4 amplitudes (pure) or a 4x4 density matrix

    Basis order is |00>, |01>, |10>, |11> with Alice as the left tensor factor.
    """

    amplitudes: Optional[np.ndarray] = None
    density: Optional[np.ndarray] = None

    @classmethod
    def pure(cls, amplitudes) -> 'TwoQubitState':
        """
        Raises:
            DimensionError: if not 4 amplitudes
            PreconditionError: if the squared norm is not 1 within 1e-12
        """
        psi = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if psi.shape != (4,):
            raise DimensionError(f"Pure two-qubit state needs 4 amplitudes, got {psi.shape}")
        norm_sq = float(np.vdot(psi, psi).real)
        if abs(norm_sq - 1.0) > STRUCTURAL_TOL:
            raise PreconditionError(f"State is not normalized (norm^2 = {norm_sq:.15g})")
        return cls(amplitudes=_frozen(psi))

    @classmethod
    def mixed(cls, rho) -> 'TwoQubitState':
        """
        Raises:
            DimensionError: if rho is not 4x4
            PreconditionError: if rho is not Hermitian, unit trace and PSD
        """
        m = np.asarray(rho, dtype=complex)
        if m.shape != (4, 4):
            raise DimensionError(f"Density matrix must be 4x4, got {m.shape}")
        if not is_hermitian(m):
            raise PreconditionError("Density matrix is not Hermitian")
        trace = np.trace(m)
        if abs(trace - 1.0) > STRUCTURAL_TOL:
            raise PreconditionError(f"Density matrix trace is {trace.real:.15g}, expected 1")
        min_eig = float(np.min(np.linalg.eigvalsh(m)))
        if min_eig < -SPECTRAL_TOL:
            raise PreconditionError(f"Density matrix has negative eigenvalue {min_eig:.3g}")
        return cls(density=_frozen(m))

    @property
    def is_pure(self) -> bool:
        return self.amplitudes is not None

    def density_matrix(self) -> np.ndarray:
        """rho, computed as |psi><psi| for pure states"""
        if self.amplitudes is not None:
            return np.outer(self.amplitudes, self.amplitudes.conj())
        return np.array(self.density)

    def eigenvalues(self) -> Tuple[float, ...]:
        return tuple(float(v) for v in np.linalg.eigvalsh(self.density_matrix()))
