"""Exception hierarchy for qwdefect."""

from typing import Optional


class QwDefectError(Exception):
    """Base class for every error raised by the library."""

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.field = field

    def to_record(self) -> dict:
        return {
            "error": type(self).__name__,
            "field": self.field,
            "message": self.message,
        }


class NotUnitaryError(QwDefectError):
    pass


class SingularBasisError(QwDefectError):
    """The defect coin has a zero entry, so P0, Q0, R0, S0 is not used as a basis."""


class TooLargeError(QwDefectError):
    pass


class BranchAmbiguityError(QwDefectError):
    """A unit-circle point was requested without a radial approach."""


class PoleHitError(QwDefectError):
    pass


class DeterminantMismatchError(QwDefectError):
    pass


class PreconditionError(QwDefectError):
    pass


class ParseError(QwDefectError):
    pass


class VerificationFailure(QwDefectError):
    pass
