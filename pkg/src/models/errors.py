"""
Exception hierarchy for Bell operator, certificate and randomness computations
"""


class BellSosError(Exception):
    """Base class for all errors raised by the library"""
    pass


class DimensionError(BellSosError):
    """Operand shape does not match the operation (2x2 / 4x4 / setting counts)"""
    pass


class PreconditionError(BellSosError):
    """A documented hypothesis of an operation does not hold"""
    pass


class NotDichotomicError(BellSosError):
    """Matrix is not a Hermitian involution with a +1/-1 rank split"""
    pass


class DegenerateWeightError(BellSosError):
    """A weight omega vanished; the residual operators divide by it"""
    pass


class NotInvolutiveError(BellSosError):
    """A derived or supplied observable fails O^2 = I"""
    pass


class InfeasibleGramError(BellSosError):
    """No planar angle assignment realizes the requested inner products"""
    pass


class UnsupportedFamilyError(BellSosError):
    """Family or parameter combination has no solved measurement construction"""
    pass


class ParameterRangeError(BellSosError):
    """Numeric parameter outside its admissible range"""
    pass


class ProbabilityTableError(BellSosError):
    """Joint probability table breaks positivity, normalization or no-signaling"""
    pass


class VerificationError(BellSosError):
    """Closed form and brute-force evaluation disagree"""
    pass
