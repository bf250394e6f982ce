"""Exception hierarchy shared by all modules.

Three top-level families matter to callers (and to the CLI exit codes):
input/domain problems, violated mathematical hypotheses, and exhausted
certified precision.
"""


class CrossRatioLabError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CrossRatioLabError):
    """Input outside the mathematical domain of an operation."""


class FieldMismatchError(DomainError):
    """Arithmetic between quadratic extensions with different radicands."""


class ChartMismatchError(DomainError):
    """Operation on points living in different charts."""


class DegenerateInputError(DomainError):
    """Reference foliation projectively equal to a fixed point."""


class UndefinedCrossRatioError(DomainError):
    """Cross-ratio denominator i(x, z) * i(y, w) vanishes."""


class NotFillingError(DomainError):
    """Curve system with a zero row or column cannot fill."""


class ConfigError(CrossRatioLabError):
    """Malformed or inconsistent CLI/experiment configuration."""


class HypothesisViolationError(CrossRatioLabError):
    """A precondition (pseudo-Anosov, primitivity, convexity, sign
    convention) failed, so the requested conclusion is not certified."""


class DependenceError(HypothesisViolationError):
    """Two mapping classes share a fixed foliation."""


class PrecisionExhaustedError(CrossRatioLabError):
    """Refinement budget ran out before a sign or digit was certified."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
