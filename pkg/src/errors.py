"""Exception hierarchy shared by the library and the command line."""


class VersalError(Exception):
    """Base class for all expected failures.

    Each subclass carries the process exit code the CLI reports for it.
    """

    exit_code = 1
    kind = 'error'

    @property
    def reason(self) -> str:
        """Get the one-line, machine-readable reason."""
        detail = ' '.join(str(self).split())
        return f'{self.kind}: {detail}' if detail else self.kind


class StructuralError(VersalError, ValueError):
    """Arity, chart variable or index mismatch between operands."""

    kind = 'structural'


class ValidationError(VersalError):
    """Gluing data violating the normal form or the bundle twists."""

    exit_code = 2
    kind = 'validation'


class NotLauferError(ValidationError):
    """Laufer-only operation called on general gluing data."""

    kind = 'not-laufer'


class IntegrabilityError(VersalError):
    """Equation field whose Jacobian is not symmetric."""

    exit_code = 3
    kind = 'integrability'

    def __init__(self, message: str, i: int = -1, j: int = -1, difference=None):
        super().__init__(message)
        self.i = i
        self.j = j
        self.difference = difference


class NotCalabiYauError(VersalError):
    """Superpotential requested on a non-square system (m - n != -2)."""

    exit_code = 4
    kind = 'not-calabi-yau'


class ExprParseError(VersalError):
    """Syntax error in a polynomial expression."""

    exit_code = 5
    kind = 'parse'

    def __init__(self, message: str, position: int = 0, source: str = ''):
        if position:
            message = f'{message} at offset {position}'
        super().__init__(message)
        self.position = position
        self.source = source


class NotACoboundaryError(VersalError):
    """Cochain passed to the E0 lift has H^1 components."""

    kind = 'not-a-coboundary'


class UnsupportedCompositionError(VersalError):
    """Composition with a series carrying negative w-exponents."""

    kind = 'unsupported-composition'


class ConvergenceError(VersalError):
    """Fixed-point inversion of L did not stabilise."""

    kind = 'convergence'


class CheckFailure(VersalError):
    """A numerical or re-substitution consistency check failed."""

    kind = 'check-failed'
