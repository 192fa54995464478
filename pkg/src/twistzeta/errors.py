"""Error taxonomy.

Everything raised on purpose by this package derives from TwistZetaError,
so frontends can map library failures to exit codes without matching on
messages.
"""


class TwistZetaError(Exception):
    """Base class for all library errors."""


class FieldMismatch(TwistZetaError):
    """Arithmetic mixed elements of two different cyclotomic fields."""


class ZeroInverse(TwistZetaError, ZeroDivisionError):
    """Inverse, or negative power, of the zero element."""


class DimensionMismatch(TwistZetaError):
    """Operands disagree on variable count or tuple length."""


class RestrictionRange(TwistZetaError):
    """A fixed boundary coordinate lies outside its {1..a_j} range."""


class TwistIsOne(TwistZetaError):
    """A twist equals 1; every series handled here requires mu_n != 1."""


class MuPowerIsOne(TwistZetaError):
    """The requested shift a has mu^a = 1, which degenerates the relation."""


class NotLinearForm(TwistZetaError):
    """The linear fast path was invoked on an unsupported factor."""


class DependencyConditionViolated(TwistZetaError):
    """Some variable occurs in none of the linear factors."""


class OrthogonalityViolated(TwistZetaError):
    """A structured-quadratic square term is not orthogonal to the shift."""


class ApproxIllConditioned(TwistZetaError):
    """|1 - mu^a| is below tolerance for every candidate shift."""


class EngineError(TwistZetaError):
    """Defensive failure inside the evaluator."""


class DocumentError(TwistZetaError):
    """Malformed problem document."""
