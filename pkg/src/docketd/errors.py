"""Shared exception hierarchy."""


class DocketError(Exception):
    """Base class for all engine errors."""

    code = "DocketError"

    def __str__(self):
        msg = super().__str__()
        return f"{self.code}: {msg}" if msg else self.code


class ValidationFailed(DocketError):
    code = "ValidationFailed"

    def __init__(self, violations):
        super().__init__("; ".join(v.code for v in violations))
        self.violations = violations


class FutureFilingDate(DocketError):
    code = "FutureFilingDate"


class NonMonotoneHearings(DocketError):
    code = "NonMonotoneHearings"


class DanglingAppealRef(DocketError):
    code = "DanglingAppealRef"


class DisposedCase(DocketError):
    code = "DisposedCase"


class CaseNotPending(DocketError):
    code = "CaseNotPending"


class DuplicateCaseId(DocketError):
    code = "DuplicateCaseId"


class CaseNotFound(DocketError):
    code = "CaseNotFound"


class AlreadyDisposed(DocketError):
    code = "AlreadyDisposed"


class NotFound(DocketError):
    code = "NotFound"


class NotAnAppeal(DocketError):
    code = "NotAnAppeal"


class NoSittingDayWithinHorizon(DocketError):
    code = "NoSittingDayWithinHorizon"


class StorageFailure(DocketError):
    code = "StorageFailure"


class AdapterUnavailable(DocketError):
    code = "AdapterUnavailable"


class InvalidDistribution(DocketError):
    code = "InvalidDistribution"
