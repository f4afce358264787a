from datetime import date

import pytest

from docketd.model import (
    CaseRecord,
    CaseType,
    HearingEntry,
    HearingOutcome,
    LegalSectionRef,
    PriorityLevel,
    Severity,
)

REFERENCE_DATE = date(2025, 7, 1)


def make_case(cid, case_type, filed, severity, priority, sections, hearing_dates, judge="J-01"):
    return CaseRecord(
        case_id=cid,
        case_type=CaseType(case_type),
        filing_date=filed,
        severity=Severity(severity),
        priority_level=PriorityLevel(priority),
        legal_sections=tuple(LegalSectionRef.parse(s) for s in sections),
        hearings=tuple(HearingEntry(d, HearingOutcome.ADJOURNED) for d in hearing_dates),
        judge_id=judge,
    )


@pytest.fixture
def table1_cases():
    """The five illustrative cases; hearing counts are given, concrete
    hearing dates are plausible monthly ones with recent last activity."""
    return [
        make_case("001", "Criminal", date(2024, 1, 1), "High", "Urgent",
                  ["IPC:302", "IPC:34"],
                  [date(2024, 9, 2), date(2024, 12, 2), date(2025, 3, 3), date(2025, 6, 2)]),
        make_case("002", "Civil", date(2025, 2, 1), "Low", "Ordinary",
                  ["ICA-1872:73"], []),
        make_case("003", "Family", date(2024, 6, 1), "Medium", "Medium",
                  ["HMA-1955:13"],
                  [date(2024, 10, 1), date(2025, 2, 3), date(2025, 6, 2)]),
        make_case("004", "Criminal", date(2024, 2, 1), "High", "Urgent",
                  ["IPC:420", "IPC:406"],
                  [date(2024, 8, 1), date(2024, 11, 4), date(2025, 1, 6),
                   date(2025, 4, 7), date(2025, 6, 2)]),
        make_case("005", "Criminal", date(2025, 4, 1), "Medium", "Ordinary",
                  ["IPC:323", "CRPC:200"],
                  [date(2025, 5, 5), date(2025, 6, 2)]),
    ]
