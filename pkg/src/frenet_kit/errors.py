"""Exception types raised across the package."""


class FrenetError(Exception):
    """Base class for all errors raised by frenet_kit."""


# -- jets ---------------------------------------------------------------------

class DivisionByZeroConstantTerm(FrenetError, ZeroDivisionError):
    pass


class DomainError(FrenetError, ValueError):
    """An elementary function was evaluated outside its domain.

    ``value`` is the offending constant term; ``component`` and ``t0`` are
    filled in when the error surfaces while evaluating a curve component.
    """

    def __init__(self, message, value=None, component=None, t0=None):
        super().__init__(message)
        self.value = value
        self.component = component
        self.t0 = t0


class OrderTooLow(FrenetError, ValueError):
    pass


# -- parsing ------------------------------------------------------------------

class ParseError(FrenetError, ValueError):
    """Malformed curve text.

    Attributes
    ----------
    position : int
        0-based character offset of the offending token.
    expected : tuple of str
        Descriptions of tokens that would have been accepted.
    found : str
        Description of the token actually found.
    source : str
        The full input text, used for caret diagnostics.
    """

    def __init__(self, message, position, expected=(), found="", source=""):
        super().__init__(message)
        self.position = position
        self.expected = tuple(expected)
        self.found = found
        self.source = source

    def diagnostic(self):
        """Two-line rendering of the input with a caret under the error."""
        line = self.source.replace("\n", " ")
        return f"{line}\n{' ' * self.position}^ {self}"


class ArityError(FrenetError, ValueError):
    pass


# -- linear algebra -----------------------------------------------------------

class NonSquare(FrenetError, ValueError):
    pass


class DimensionMismatch(FrenetError, ValueError):
    pass


class ZeroFirstColumn(FrenetError, ValueError):
    pass


# -- curve geometry -----------------------------------------------------------

class ZeroVelocity(FrenetError, ValueError):
    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class OrderDeficient(FrenetError, ValueError):
    """The curve does not have the regularity order an operation needs."""

    def __init__(self, message, t=None, order=None):
        super().__init__(message)
        self.t = t
        self.order = order


class WrongDimension(FrenetError, ValueError):
    pass


class StepUnderflow(FrenetError, ArithmeticError):
    pass


class NonOrthonormalInitialFrame(FrenetError, ValueError):
    pass
