"""Exception types shared across the package."""


class KhocoError(Exception):
    """Base class for all library errors."""


class MalformedDiagram(KhocoError):
    """Arc slots of a diagram do not form a valid closed 1-manifold."""


class OrientationError(KhocoError):
    """Crossing data is inconsistent with arc orientations."""


class BadBraidWord(KhocoError):
    """Braid word token is malformed or its generator index is out of range."""


class UnknownArc(KhocoError):
    """An operation referenced an arc id that is not part of the diagram."""


class NoBasepoint(KhocoError):
    """A reduced complex was requested for a diagram without a basepoint."""


class NotAnnular(KhocoError):
    """An annular complex was requested for a diagram without ray counts."""


class NotApplicable(KhocoError):
    """Hypothesis of the requested check does not hold for this input."""


class FieldMismatch(KhocoError):
    """Two objects over different ground fields were combined."""


class BadFamily(KhocoError):
    """Unknown code-family name."""


class Unsupported(KhocoError):
    """Input is outside the supported (desk-scale) range."""


class OracleRefused(KhocoError):
    """Brute-force oracle guard tripped: the space is too large to enumerate."""


class UnsupportedFoam(KhocoError):
    """Closed foam lies outside the restricted evaluable class."""
