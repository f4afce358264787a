"""Case domain model: records, validation, and derived classifications.

All dates are pure calendar dates; the engine never looks at a wall clock,
every operation takes an explicit reference date.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from datetime import date
from enum import Enum
from typing import Callable, Optional

from .errors import DisposedCase, FutureFilingDate


class CaseType(str, Enum):
    CRIMINAL = "Criminal"
    CIVIL = "Civil"
    FAMILY = "Family"


class Severity(str, Enum):
    HIGH = "High"
    MEDIUM = "Medium"
    LOW = "Low"


class PriorityLevel(str, Enum):
    URGENT = "Urgent"
    MEDIUM = "Medium"
    ORDINARY = "Ordinary"


class CaseStatus(str, Enum):
    PENDING = "Pending"
    DISPOSED = "Disposed"


class HearingOutcome(str, Enum):
    ADJOURNED = "Adjourned"
    NEXT_HEARING_DIRECTED = "NextHearingDirected"
    DISPOSED = "Disposed"


class CreatedBy(str, Enum):
    REGISTRAR = "Registrar"
    ADVOCATE = "AdvocateOnRecord"


class Pool(str, Enum):
    FRESH = "Fresh"
    OLD = "Old"


@dataclass(frozen=True)
class LegalSectionRef:
    """A statute/section pair, canonically rendered "STATUTE:SECTION"."""

    statute: str
    section: str

    def __post_init__(self):
        if not self.statute or not self.section:
            raise ValueError("statute and section must be non-empty")

    @property
    def canonical(self) -> str:
        return f"{self.statute}:{self.section}".upper()

    @classmethod
    def parse(cls, text: str) -> "LegalSectionRef":
        statute, sep, section = text.partition(":")
        if not sep:
            raise ValueError(f"not a STATUTE:SECTION string: {text!r}")
        return cls(statute.strip().upper(), section.strip().upper())


@dataclass(frozen=True)
class HearingEntry:
    date: date
    outcome: HearingOutcome
    directive_after_days: Optional[int] = None

    def __post_init__(self):
        directed = self.outcome is HearingOutcome.NEXT_HEARING_DIRECTED
        if directed and (self.directive_after_days is None or self.directive_after_days < 1):
            raise ValueError("NextHearingDirected requires a positive directive_after_days")
        if not directed and self.directive_after_days is not None:
            raise ValueError("directive_after_days only allowed with NextHearingDirected")


@dataclass(frozen=True)
class CaseRecord:
    case_id: str
    case_type: CaseType
    filing_date: date
    severity: Severity
    priority_level: PriorityLevel
    legal_sections: tuple[LegalSectionRef, ...] = ()
    hearings: tuple[HearingEntry, ...] = ()
    status: CaseStatus = CaseStatus.PENDING
    appeal_of: Optional[str] = None
    judge_id: str = ""
    created_by: CreatedBy = CreatedBy.REGISTRAR

    @property
    def last_activity_date(self) -> date:
        """Last hearing date, or filing date if the case was never heard."""
        return self.hearings[-1].date if self.hearings else self.filing_date

    def with_hearing(self, entry: HearingEntry) -> "CaseRecord":
        return replace(self, hearings=self.hearings + (entry,))


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    fatal: bool = True


def validate_case(
    draft: CaseRecord,
    today: date,
    disposed_lookup: Optional[Callable[[str], bool]] = None,
) -> list[Violation]:
    """Check every CaseRecord invariant; returns the named violations.

    An empty list (or warnings only) means the draft is acceptable.
    ``disposed_lookup`` answers "is this case_id a known disposal?"; when
    absent, appeal references cannot be verified and are flagged.
    """
    violations = []
    if draft.filing_date > today:
        violations.append(Violation("FutureFilingDate", f"filing_date {draft.filing_date} is after {today}"))
    prev = None
    for h in draft.hearings:
        if h.date < draft.filing_date or (prev is not None and h.date <= prev):
            violations.append(Violation("NonMonotoneHearings", "hearing dates must strictly ascend from filing_date"))
            break
        prev = h.date
    if draft.appeal_of is not None:
        known = disposed_lookup is not None and disposed_lookup(draft.appeal_of)
        if not known:
            violations.append(Violation("DanglingAppealRef", f"appeal_of {draft.appeal_of!r} is not a disposed case"))
    if not draft.legal_sections:
        violations.append(Violation("EmptySections", "no legal sections; default section weight applies", fatal=False))
    return violations


def case_age_days(case: CaseRecord, today: date) -> int:
    """Whole days between filing_date and today (pure date arithmetic)."""
    days = (today - case.filing_date).days
    if days < 0:
        raise FutureFilingDate(f"{case.case_id}: filed {case.filing_date}, reference {today}")
    return days


def pendency_days(case: CaseRecord, today: date) -> int:
    """Days since the last hearing, or since filing if never heard."""
    days = (today - case.last_activity_date).days
    return max(days, 0)


def classify_pool(case: CaseRecord) -> Pool:
    """Fresh iff the pending case has no recorded hearings."""
    if case.status is not CaseStatus.PENDING:
        raise DisposedCase(case.case_id)
    return Pool.FRESH if not case.hearings else Pool.OLD


# --- canonical serialized form -------------------------------------------
# One flat JSON object per case, ISO-8601 dates, "STATUTE:SECTION" strings.
# This exact form is shared by the store, the API, and the simulator.

def case_to_dict(case: CaseRecord) -> dict:
    return {
        "case_id": case.case_id,
        "case_type": case.case_type.value,
        "filing_date": case.filing_date.isoformat(),
        "severity": case.severity.value,
        "priority_level": case.priority_level.value,
        "legal_sections": [s.canonical for s in case.legal_sections],
        "hearings": [
            {
                "date": h.date.isoformat(),
                "outcome": h.outcome.value,
                "directive_after_days": h.directive_after_days,
            }
            for h in case.hearings
        ],
        "status": case.status.value,
        "appeal_of": case.appeal_of,
        "judge_id": case.judge_id,
        "created_by": case.created_by.value,
    }


def case_from_dict(data: dict) -> CaseRecord:
    return CaseRecord(
        case_id=data["case_id"],
        case_type=CaseType(data["case_type"]),
        filing_date=date.fromisoformat(data["filing_date"]),
        severity=Severity(data["severity"]),
        priority_level=PriorityLevel(data["priority_level"]),
        legal_sections=tuple(LegalSectionRef.parse(s) for s in data.get("legal_sections", [])),
        hearings=tuple(
            HearingEntry(
                date=date.fromisoformat(h["date"]),
                outcome=HearingOutcome(h["outcome"]),
                directive_after_days=h.get("directive_after_days"),
            )
            for h in data.get("hearings", [])
        ),
        status=CaseStatus(data.get("status", "Pending")),
        appeal_of=data.get("appeal_of"),
        judge_id=data.get("judge_id", ""),
        created_by=CreatedBy(data.get("created_by", "Registrar")),
    )


def canonical_json(payload: dict) -> str:
    """Deterministic rendering used for NDJSON lines and digests."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def case_to_json(case: CaseRecord) -> str:
    return canonical_json(case_to_dict(case))
