"""
Error types for the GBS toolkit
Every domain failure carries a stable code that the CLI reports as {"error": code, "detail": ...}
"""

from typing import Any


class GbsError(Exception):
    """Base class for all domain errors"""

    code = "GbsError"

    def __init__(self, detail: Any = None):
        self.detail = detail
        super().__init__(f"{self.code}: {detail}" if detail is not None else self.code)


class MalformedInput(GbsError):
    code = "MalformedInput"


class ZeroLabel(GbsError):
    code = "ZeroLabel"


class Disconnected(GbsError):
    code = "Disconnected"


class EmptyGraph(GbsError):
    code = "EmptyGraph"


class DuplicateId(GbsError):
    code = "DuplicateId"


class ZeroInput(GbsError):
    code = "ZeroInput"


class EmptyInput(GbsError):
    code = "EmptyInput"


class NonPositiveInput(GbsError):
    code = "NonPositiveInput"


class DividesModulus(GbsError):
    code = "DividesModulus"


class InvalidPrimeSet(GbsError):
    code = "InvalidPrimeSet"


class IsLoop(GbsError):
    code = "IsLoop"


class LabelNotUnit(GbsError):
    code = "LabelNotUnit"


class UnknownTarget(GbsError):
    code = "UnknownTarget"


class NotDefined(GbsError):
    code = "NotDefined"


class ModularImageTooBig(GbsError):
    code = "ModularImageTooBig"


class Elementary(GbsError):
    code = "Elementary"


class ConditionFails(GbsError):
    code = "ConditionFails"


class NotAPath(GbsError):
    code = "NotAPath"


class PreconditionViolated(GbsError):
    code = "PreconditionViolated"


class UsageError(GbsError):
    code = "UsageError"


class InvariantViolation(GbsError):
    """Raised when an internal invariant breaks; never a user input problem"""

    code = "InvariantViolation"
