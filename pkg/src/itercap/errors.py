"""Exception types shared across the package.

Every domain-validation failure raises a subclass of :class:`ItercapError`;
the CLI maps these to exit code 2 and I/O or parse failures to exit code 1.
"""


class ItercapError(Exception):
    """Base class for all domain errors raised by this package."""


class DimensionMismatchError(ItercapError):
    """Operands have incompatible dimensions."""


class NotTracePreservingError(ItercapError):
    """Kraus operators do not sum to the identity (sum K^dag K != 1)."""


class NotCompletelyPositiveError(ItercapError):
    """Choi matrix has a negative eigenvalue beyond tolerance."""


class ResourceLimitError(ItercapError):
    """Requested dense representation exceeds the configured dimension cap."""


class SigmaNotFullRankError(ItercapError):
    """Reference state is singular where a full-rank state is required."""


class NumericalFailureError(ItercapError):
    """A spectral computation produced no usable result (broken input)."""


class NotGnsSymmetricError(ItercapError):
    """Channel fails the GNS-symmetry identity for the given state."""


class IllConditionedSpectrumError(ItercapError):
    """Eigenvalue moduli cluster at the peripheral threshold."""


class StructureInconsistentError(ItercapError):
    """Peripheral block decomposition failed an internal consistency check."""


class NegativeTimeError(ItercapError):
    """Iteration count or semigroup time is negative."""


class DeltaOutOfRangeError(ItercapError):
    """One-shot error parameter outside its admissible interval."""


class ZeroGapError(ItercapError):
    """Spectral gap is zero; the stabilization threshold is undefined."""


class FractionalPowerOfNegativeError(ItercapError):
    """Non-integer channel power requested with a negative eigenvalue."""


class InvalidEigenvaluesError(ItercapError):
    """Pauli eigenvalue triple lies outside the valid-channel region."""


class NotInNormalizerError(ItercapError):
    """Pauli string anticommutes with a stabilizer generator."""


class SeriesMissingError(ItercapError):
    """Named series is absent from a bound curve."""
