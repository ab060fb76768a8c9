"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` (used in CLI error
JSON) and an ``exit_code`` for the command line.
"""

from __future__ import annotations


class LdpcError(Exception):
    code = "error"
    exit_code = 1

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


class InvalidArgument(LdpcError, ValueError):
    code = "invalid-argument"
    exit_code = 4


class UnsupportedModulus(LdpcError, ValueError):
    code = "unsupported-modulus"
    exit_code = 4


class UnsupportedPrime(LdpcError, ValueError):
    code = "unsupported-prime"
    exit_code = 4


class InvalidParameters(LdpcError, ValueError):
    code = "invalid-parameters"
    exit_code = 4


class InternalConsistencyError(LdpcError, RuntimeError):
    code = "internal-consistency"
    exit_code = 1


class InvalidPlan(LdpcError, ValueError):
    code = "invalid-plan"
    exit_code = 4


class InvalidFactor(LdpcError, ValueError):
    code = "invalid-factor"
    exit_code = 4


class UnsupportedDegreeProfile(LdpcError, ValueError):
    code = "unsupported-degree-profile"
    exit_code = 3


class SearchExhausted(LdpcError, RuntimeError):
    code = "search-exhausted"
    exit_code = 3


class InvalidDDP(LdpcError, ValueError):
    code = "invalid-ddp"
    exit_code = 4


class UnsupportedDDP(LdpcError, ValueError):
    code = "unsupported-ddp"
    exit_code = 3


class SupercriticalEpsilon(LdpcError, ValueError):
    code = "supercritical-epsilon"
    exit_code = 4


class GirthBudgetExceeded(LdpcError, ValueError):
    code = "girth-budget-exceeded"
    exit_code = 4


class SizeLimit(LdpcError, ValueError):
    code = "size-limit"
    exit_code = 4


class AlistParseError(LdpcError, ValueError):
    code = "parse-error"
    exit_code = 5

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class AlistValidationError(LdpcError, ValueError):
    code = "validation-error"
    exit_code = 5
