"""Exception hierarchy.

Every domain error carries a stable ``code`` so the CLI can emit a
machine-readable error object without string matching.
"""


class LogFrobError(ValueError):
    code = "LogFrobError"

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self)}


class PrecisionMismatch(LogFrobError):
    code = "PrecisionMismatch"


class PrecisionLoss(LogFrobError):
    code = "PrecisionLoss"


class NotAUnit(LogFrobError):
    code = "NotAUnit"


class NotPrincipal(LogFrobError):
    code = "NotPrincipal"


class ZeroNorm(LogFrobError):
    code = "ZeroNorm"


class InvalidField(LogFrobError):
    code = "InvalidField"


class FrobeniusUndefined(LogFrobError):
    code = "FrobeniusUndefined"


class NotCoprime(LogFrobError):
    code = "NotCoprime"


class RayConditionFailed(LogFrobError):
    code = "RayConditionFailed"


class RayConditionUnverifiable(LogFrobError):
    code = "RayConditionUnverifiable"
