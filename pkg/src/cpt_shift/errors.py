"""Exception hierarchy shared by the solvers and the command-line front end."""


class CptShiftError(Exception):
    """Base class for all errors raised by :mod:`cpt_shift`."""


class InvalidParameters(CptShiftError, ValueError):
    """Model parameters violate a hard invariant."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class NumericalError(CptShiftError, ArithmeticError):
    """A numerical procedure could not produce a trustworthy result."""


class SingularSystem(NumericalError):
    pass


class IllConditioned(NumericalError):
    """Raised (in strict mode) when a linear system is too ill-conditioned.

    The computed solution is still attached as ``result`` so callers can
    inspect it.
    """

    def __init__(self, message, condition_number=None, result=None):
        super().__init__(message)
        self.condition_number = condition_number
        self.result = result


class StepTooLarge(CptShiftError, ValueError):
    pass


class DegenerateReduction(NumericalError):
    pass


class ZeroDrive(CptShiftError, ValueError):
    pass


class Unsupported(CptShiftError, ValueError):
    pass


class FitDegenerate(NumericalError):
    pass


class FitIllConditioned(NumericalError):
    pass


class NoZeroInWindow(NumericalError):
    pass


class NoRealRootInWindow(NumericalError):
    """No admissible extremum of the absorption profile: the resonance is gone."""


class PolynomialIllConditioned(NumericalError):
    pass


class NoExtremum(NumericalError):
    pass


class ResonanceAbsent(NumericalError):
    pass


class ConfigError(CptShiftError, ValueError):
    pass
