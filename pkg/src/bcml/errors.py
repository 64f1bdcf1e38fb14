"""Exception hierarchy shared by all bcml modules."""


class BicomplexError(Exception):
    """Base class for every error raised by this package."""


class NonFinite(BicomplexError, ValueError):
    """A construction received NaN or infinite coefficients."""


class ParseError(BicomplexError, ValueError):
    """Text could not be parsed as a bicomplex number or series."""


class NullConeError(BicomplexError, ArithmeticError):
    """Base for operations undefined on the null cone (zero divisors)."""


class NullConeDivisor(NullConeError):
    """Division by a null-cone element.

    `component` is 1 or 2 for the vanishing idempotent component, or 0 when
    both vanish.
    """

    def __init__(self, message, component=0):
        super().__init__(message)
        self.component = component


class NullConeArgument(NullConeError):
    """Hyperbolic argument requested on the null cone."""


class NullConeRoot(NullConeError):
    """Fractional power or root requested on the null cone."""


class GammaPole(BicomplexError, ValueError):
    """Gamma evaluated at a non-positive integer."""


class BCGammaPole(GammaPole):
    """Bicomplex Gamma pole.

    `component` names the offending idempotent component (1 or 2); `m` and
    `l` are the nearest pole indices with xi1 = -m, xi2 = -l (None when that
    component is off the pole set).
    """

    def __init__(self, message, component=0, m=None, l=None):
        super().__init__(message)
        self.component = component
        self.m = m
        self.l = l


class IntegralDomain(BicomplexError, ValueError):
    """Integral representation requested outside its domain of validity."""


class DomainAlpha(BicomplexError, ValueError):
    """Mittag-Leffler parameter outside the admissible region."""


class NotConverged(BicomplexError, ArithmeticError):
    """A truncated evaluation could not reach the requested tolerance.

    Raised both when the term cap is hit with a large tail and when
    floating-point cancellation makes the requested relative tolerance
    unattainable.  `tail` carries the final error estimate when known.
    """

    def __init__(self, message, tail=None):
        super().__init__(message)
        self.tail = tail


class Divergent(BicomplexError, ArithmeticError):
    """Series evaluation outside the radius of convergence."""


class PoleOnContour(BicomplexError, ArithmeticError):
    """A quadrature node fell on (or too close to) an integrand pole."""


class OutsideDisk(BicomplexError, ValueError):
    """Argument outside the unit-disk style domain of a closed form."""
