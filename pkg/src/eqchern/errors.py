"""Exception hierarchy shared across the package."""


class EqchernError(Exception):
    pass


class RankMismatch(EqchernError, ValueError):
    pass


class ArityMismatch(EqchernError, ValueError):
    pass


class SingularMatrix(EqchernError, ValueError):
    pass


class NotDivisible(EqchernError, ArithmeticError):
    """Raised by exact division when the divisor does not divide the numerator.

    ``remainder`` is the nonzero remainder of multivariate reduction.
    """

    def __init__(self, remainder, message=None):
        self.remainder = remainder
        super().__init__(message or f"not divisible, remainder {remainder}")


class ExactButNonIntegral(EqchernError, ArithmeticError):
    """The quotient exists over the rationals but has non-integer coefficients.

    ``quotient`` holds the rational quotient as a ``{exponents: Fraction}`` dict.
    """

    def __init__(self, quotient):
        self.quotient = quotient
        super().__init__("quotient has non-integral coefficients")


class InvalidDataset(EqchernError, ValueError):
    pass


class IndexRequiresDivision(EqchernError, ValueError):
    pass


class NonRealizableData(EqchernError):
    """A Chern number needed by a decision procedure is not a polynomial."""

    def __init__(self, omega, detail=""):
        self.omega = tuple(omega)
        self.detail = detail
        msg = f"c_omega is not polynomial at omega={self.omega}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class EmptyInput(EqchernError, ValueError):
    pass


class ConfigInvalid(EqchernError, ValueError):
    pass
