"""
Error hierarchy shared by every app.

Each error carries the process exit code the management commands return
when it escapes a run: 2 for invalid input, 3 for numerical failures,
4 for a failing check suite.
"""


class PointInteractionError(Exception):
    """Base class for all domain errors."""
    exit_code = 1


# ===========================================
# Invalid input (exit 2)
# ===========================================

class ValidationFailure(PointInteractionError):
    exit_code = 2


class ConstraintViolation(ValidationFailure):
    """Joining-condition parameters violate alpha*gamma - beta*delta = 1."""


class NonPositiveScale(ValidationFailure):
    pass


class NotParityEven(ValidationFailure):
    pass


class NotMaximalTV(ValidationFailure):
    """phi is not pi/2, so time reversal is not maximally broken."""


class NoBoundState(ValidationFailure):
    pass


class UnsupportedMoment(ValidationFailure):
    pass


class UnsupportedScheme(ValidationFailure):
    pass


class InvalidScale(ValidationFailure):
    pass


class NonPerturbative(ValidationFailure):
    """|kappa0 * a_theta| > 1 has no real renormalized couplings."""


class ZeroScatteringLength(ValidationFailure):
    pass


class NotAnEigenvalue(ValidationFailure):
    pass


class PoleArgument(ValidationFailure):
    """Gamma function evaluated at a nonpositive integer."""


class DegenerateMixing(ValidationFailure):
    """Mixing angle is zero and the relative phase is undefined."""


# ===========================================
# Numerical failure (exit 3)
# ===========================================

class NumericalFailure(PointInteractionError):
    exit_code = 3


class ZeroDenominator(NumericalFailure):
    pass


class LandauPole(NumericalFailure):
    pass


class DictionarySingular(NumericalFailure):
    pass


class NoInverse(NumericalFailure):
    pass


class ConvergenceFailure(NumericalFailure):
    pass


class NoSignChange(NumericalFailure):
    pass


class GammaRatioInfinite(NumericalFailure):
    """Gamma ratio evaluated at a pole of its numerator."""


class NonFiniteValue(NumericalFailure):
    pass


class IoFailure(NumericalFailure):
    pass


# ===========================================
# Verification (exit 4)
# ===========================================

class CheckFailure(PointInteractionError):
    exit_code = 4
