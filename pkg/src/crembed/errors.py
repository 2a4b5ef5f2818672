"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class CREmbedError(Exception):
    exit_code = 3


class AlgebraInvalid(CREmbedError):
    exit_code = 1


class CRStructureInvalid(CREmbedError):
    exit_code = 2


class FactorizationError(CREmbedError):
    """Raised when an ordered exponential factorization does not terminate."""

    exit_code = 3


class VerificationFailure(CREmbedError):
    exit_code = 4


class SchemaError(CREmbedError):
    exit_code = 5
