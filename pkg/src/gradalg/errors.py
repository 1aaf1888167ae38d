"""Exception hierarchy.

Every error carries a stable machine name (``code``) that the command line
prints and that tests match on.
"""

from __future__ import annotations


class GradalgError(Exception):
    code = "error"

    def __init__(self, message: str = "", witness=None):
        super().__init__(message or self.code)
        self.witness = witness


class InvalidParameter(GradalgError):
    code = "invalid-parameter"


class NoCharacter(GradalgError):
    code = "no-character"


class InvalidBicharacter(GradalgError):
    code = "invalid-bicharacter"


class InvalidField(GradalgError):
    code = "invalid-field"


class Unsupported(GradalgError):
    code = "unsupported"


class InternalError(GradalgError):
    code = "internal-error"


class NotSelfPaired(GradalgError):
    code = "not-self-paired"


class SplittingViolation(GradalgError):
    code = "splitting-violation"


class NoForm(GradalgError):
    code = "no-form"


class NoInvolution(GradalgError):
    code = "no-involution"


class RejectedParameters(GradalgError):
    code = "rejected-parameters"


class VerificationFailure(GradalgError):
    code = "verification-failure"


class ParseError(GradalgError):
    code = "parse-error"
