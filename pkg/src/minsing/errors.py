"""Exception hierarchy.

Everything raised on purpose by this package derives from
:class:`MinsingError`; the CLI maps subclasses to exit codes.
"""


class MinsingError(Exception):
    """Base class for domain errors."""


class ValidationError(MinsingError):
    def __init__(self, message, vertices=()):
        super().__init__(message)
        self.vertices = tuple(vertices)

    @property
    def kind(self):
        return type(self).__name__


class MalformedInput(ValidationError):
    pass


class NotATree(ValidationError):
    pass


class NotMinimalResolution(ValidationError):
    pass


class NotMinimal(ValidationError):
    pass


class DegenerateGraph(ValidationError):
    pass


class InternalError(MinsingError):
    """Invariant broken on validated input; indicates a bug."""


class DefinitenessFailure(InternalError):
    pass


class SingularSystem(InternalError):
    pass


class NegativeBranchCount(InternalError):
    pass


class InconsistentCounts(InternalError):
    pass


class UltrametricViolation(InternalError):
    pass


class IdentityViolation(InternalError):
    def __init__(self, identity, message):
        super().__init__(f"{identity}: {message}")
        self.identity = identity


class GraphMismatch(MinsingError):
    pass


class EmissionUnrealized(MinsingError):
    pass


class OracleError(MinsingError):
    pass


class TruncationExhausted(OracleError):
    pass


class NotAtOrigin(OracleError):
    pass


class BadParameters(MinsingError):
    pass


class UnsupportedFamily(MinsingError):
    pass
