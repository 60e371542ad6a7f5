"""Exceptions shared across the package."""


class MMCharError(Exception):
    """Base class for all package errors."""


class ZeroSeries(MMCharError):
    """Inversion of a series with no nonzero coefficient within truncation."""


class GridMismatch(MMCharError):
    """Two series whose supports cannot be placed on a common exponent grid."""


class InvalidWeight(MMCharError):
    """Eisenstein weight that is odd, negative, or otherwise unsupported."""


class InsufficientTruncation(MMCharError):
    """Numeric evaluation where the series tail bound exceeds the requested precision."""


class IndexOutOfRange(MMCharError):
    """Character label outside 1..M (or 1..mu-1 x 1..nu-1)."""


class InconsistentSystem(MMCharError):
    """An exact linear system that should be solvable is not."""


class NotApplicable(MMCharError):
    """Operation requested for a model where it is undefined (e.g. no cusp slot)."""


class UnknownIdentity(MMCharError):
    """Identity name not present in the verification catalog."""


class PoleHit(MMCharError):
    """Random rational evaluation point hit a pole too many times in a row."""


class ZeroDenominator(MMCharError):
    """Rational-function expansion with identically vanishing denominator."""


class RootTrackingLost(MMCharError):
    """Roots of a perturbed cubic could not be matched to the base frame."""


class UnsupportedDim(MMCharError):
    """Frobenius matrix dimension outside the supported range."""


class NonRationalSpectrum(MMCharError):
    """Eigenvalue computation hit an irrational spectrum."""
