"""Exception hierarchy shared by every module."""


class PadicHeisError(Exception):
    """Base class for all library errors."""


class WitnessError(PadicHeisError):
    """An error that carries a concrete counterexample."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# exact arithmetic
class InvalidPrime(PadicHeisError, ValueError):
    pass


class IndistinguishableFromZero(PadicHeisError, ArithmeticError):
    pass


class DivisionByZero(PadicHeisError, ZeroDivisionError):
    pass


class CannotCertifyConvergence(PadicHeisError):
    pass


class InsufficientPrecision(PadicHeisError):
    pass


class PrimeMismatch(PadicHeisError, ValueError):
    pass


# rings
class DimensionError(PadicHeisError, ValueError):
    pass


class RequiresIdentity(PadicHeisError):
    pass


class RequiresFiniteRing(PadicHeisError):
    pass


class HomDomainError(PadicHeisError, TypeError):
    pass


class RingMismatch(PadicHeisError, TypeError):
    pass


class NonInvertibleDegree(PadicHeisError, ArithmeticError):
    def __init__(self, degree, ring=None):
        super().__init__(f"cannot divide by {degree} in {ring}")
        self.degree = degree


class NotBilinear(WitnessError):
    pass


# groups
class GroupMismatch(PadicHeisError, TypeError):
    pass


class UnsupportedForCocycleLaw(PadicHeisError):
    pass


class RequiresFiniteModel(PadicHeisError):
    pass


class NotCompatible(WitnessError):
    pass


class NotACocycle(WitnessError):
    pass


class TooLargeToEnumerate(PadicHeisError):
    pass


# metrics
class NeedMorePrefix(PadicHeisError):
    pass


class GaugeRequiresIntegralForm(PadicHeisError):
    pass


class OutsideIntegralDomain(PadicHeisError):
    pass


# measure
class OverlapError(PadicHeisError):
    pass


class NotARefinement(PadicHeisError):
    pass


class RefinementTooCoarse(PadicHeisError):
    pass


# calculus
class NotComposable(PadicHeisError):
    pass


class NotConvergentOnDomain(WitnessError):
    pass


class OutsideDomain(PadicHeisError):
    pass


# cli / parsing
class ParseError(PadicHeisError, ValueError):
    pass
