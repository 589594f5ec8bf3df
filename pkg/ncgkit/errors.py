"""
Error Types
Exception hierarchy shared by the library modules and the command-line front end
"""


class NcgkitError(Exception):
    """Base class for every error raised by ncgkit.

    Attributes:
        exit_code: Process exit code used by the CLI when the error escapes a command
    """

    exit_code = 2

    def __init__(self, message: str, details: str = ''):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        return {'error': self.message, 'details': self.details, 'type': type(self).__name__}


class RewriteBudgetExceeded(NcgkitError):
    """Normal form computation did not finish within the step budget."""


class ConfluenceError(NcgkitError):
    """A rewrite system has unresolved critical pairs."""


class RuleOrderError(NcgkitError):
    """A rewrite rule does not decrease the monomial order."""
    exit_code = 3


class PoleError(NcgkitError):
    """Fractional-linear action hit c*theta + d = 0."""


class DivergentNomeError(NcgkitError):
    """Theta series nome of modulus >= 1."""


class DegreeError(NcgkitError):
    """Nonpositive degree or inhomogeneous input."""
    exit_code = 3


class DimensionMismatch(NcgkitError):
    """Vector or matrix sizes do not agree."""


class ClassCountMismatch(NcgkitError):
    """Packet residue class count differs from the module parameter c."""


class InvariantViolation(NcgkitError):
    """A type invariant (unitarity, symmetry, decay, determinant) fails."""
    exit_code = 3


class ParameterDomainError(NcgkitError):
    """Parameters outside the domain an operation accepts."""
    exit_code = 3


class ParseError(ParameterDomainError):
    """Malformed parameter string."""
