"""System of record: pending cases, disposals, assignments, audit log.

Persistence sits behind a journal port with two backends: in-memory (tests
and simulation) and append-only NDJSON files. State is rebuilt by replay
on open; the files are the source of truth between restarts.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from dataclasses import dataclass, replace
from datetime import date, datetime, timezone
from typing import Callable, Optional

from .errors import (
    AlreadyDisposed,
    CaseNotFound,
    DuplicateCaseId,
    NonMonotoneHearings,
    NotFound,
    StorageFailure,
)
from .model import (
    CaseRecord,
    CaseStatus,
    HearingEntry,
    canonical_json,
    case_from_dict,
    case_to_dict,
)
from .scheduler import HearingAssignment

CASES = "cases"
DISPOSED = "disposed"
ASSIGNMENTS = "assignments"
AUDIT = "audit"
STREAMS = (CASES, DISPOSED, ASSIGNMENTS, AUDIT)


@dataclass(frozen=True)
class DisposalRecord:
    case_id: str
    disposal_date: date
    final_outcome: str
    disposal_latency_days: int
    snapshot: CaseRecord

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "disposal_date": self.disposal_date.isoformat(),
            "final_outcome": self.final_outcome,
            "disposal_latency_days": self.disposal_latency_days,
            "snapshot": case_to_dict(self.snapshot),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DisposalRecord":
        return cls(
            case_id=data["case_id"],
            disposal_date=date.fromisoformat(data["disposal_date"]),
            final_outcome=data["final_outcome"],
            disposal_latency_days=data["disposal_latency_days"],
            snapshot=case_from_dict(data["snapshot"]),
        )


@dataclass(frozen=True)
class AuditEvent:
    sequence_number: int
    timestamp: str
    actor: str
    action: str
    payload_digest: str

    def to_dict(self) -> dict:
        return {
            "sequence_number": self.sequence_number,
            "timestamp": self.timestamp,
            "actor": self.actor,
            "action": self.action,
            "payload_digest": self.payload_digest,
        }


class MemoryJournal:
    """Keeps appended records in lists; nothing survives the process."""

    def __init__(self):
        self._streams = {name: [] for name in STREAMS}

    def append(self, stream: str, record: dict) -> None:
        self._streams[stream].append(record)

    def replay(self, stream: str) -> list[dict]:
        return list(self._streams[stream])


class FileJournal:
    """One NDJSON file per stream under a directory.

    A partially written trailing line (interrupted append) is detected and
    ignored on replay; a corrupt line anywhere else is a hard failure.
    """

    def __init__(self, directory):
        self.directory = str(directory)
        os.makedirs(self.directory, exist_ok=True)

    def _path(self, stream: str) -> str:
        return os.path.join(self.directory, f"{stream}.ndjson")

    def append(self, stream: str, record: dict) -> None:
        try:
            with open(self._path(stream), "a", encoding="utf-8") as fh:
                fh.write(canonical_json(record) + "\n")
                fh.flush()
        except OSError as exc:
            raise StorageFailure(str(exc)) from exc

    def replay(self, stream: str) -> list[dict]:
        path = self._path(stream)
        if not os.path.exists(path):
            return []
        records = []
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        for i, line in enumerate(lines):
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError:
                if i == len(lines) - 1:
                    break  # torn trailing write, drop it
                raise StorageFailure(f"corrupt record at {path}:{i + 1}")
        return records


def _digest(payload: dict) -> str:
    return hashlib.sha256(canonical_json(payload).encode()).hexdigest()


class DocketStore:
    """Single-writer, multi-reader store; every mutation is audited.

    ``outcome_sink``, when set, is called exactly once per disposal with
    the DisposalRecord so the weight engine can learn from it.
    """

    def __init__(self, journal=None, outcome_sink: Optional[Callable] = None, clock=None):
        self.journal = journal if journal is not None else MemoryJournal()
        self.outcome_sink = outcome_sink
        self._clock = clock or (lambda: datetime.now(timezone.utc).isoformat())
        self._lock = threading.RLock()
        self._pending: dict[str, CaseRecord] = {}
        self._disposed: dict[str, DisposalRecord] = {}
        self._assignments: list[HearingAssignment] = []
        self._audit_seq = 0
        self._replay()

    def _replay(self) -> None:
        for data in self.journal.replay(CASES):
            case = case_from_dict(data)
            self._pending[case.case_id] = case
        for data in self.journal.replay(DISPOSED):
            rec = DisposalRecord.from_dict(data)
            self._pending.pop(rec.case_id, None)
            self._disposed[rec.case_id] = rec
        for data in self.journal.replay(ASSIGNMENTS):
            self._assignments.append(HearingAssignment.from_dict(data))
        self._audit_seq = len(self.journal.replay(AUDIT))

    def _audit(self, actor: str, action: str, payload: dict) -> AuditEvent:
        self._audit_seq += 1
        event = AuditEvent(
            sequence_number=self._audit_seq,
            timestamp=self._clock(),
            actor=actor,
            action=action,
            payload_digest=_digest(payload),
        )
        self.journal.append(AUDIT, event.to_dict())
        return event

    # --- cases ------------------------------------------------------------

    def put_case(self, case: CaseRecord, actor: str = "system") -> str:
        with self._lock:
            if case.case_id in self._pending or case.case_id in self._disposed:
                raise DuplicateCaseId(case.case_id)
            self._pending[case.case_id] = case
            payload = case_to_dict(case)
            self.journal.append(CASES, payload)
            self._audit(actor, "put_case", payload)
            return case.case_id

    def get_case(self, case_id: str) -> CaseRecord:
        case = self._pending.get(case_id)
        if case is None:
            raise CaseNotFound(case_id)
        return case

    def has_case(self, case_id: str) -> bool:
        return case_id in self._pending or case_id in self._disposed

    def list_pending(self, case_type=None) -> list[CaseRecord]:
        cases = self._pending.values()
        if case_type is not None:
            cases = (c for c in cases if c.case_type == case_type)
        return sorted(cases, key=lambda c: c.case_id)

    def record_hearing(self, case_id: str, entry: HearingEntry, actor: str = "system") -> CaseRecord:
        with self._lock:
            case = self.get_case(case_id)
            if case.hearings and entry.date < case.hearings[-1].date:
                raise NonMonotoneHearings(f"{case_id}: {entry.date} before {case.hearings[-1].date}")
            if entry.date < case.filing_date:
                raise NonMonotoneHearings(f"{case_id}: hearing before filing date")
            updated = case.with_hearing(entry)
            self._pending[case_id] = updated
            payload = case_to_dict(updated)
            self.journal.append(CASES, payload)
            self._audit(actor, "record_hearing", payload)
            return updated

    # --- disposal and appeals --------------------------------------------

    def dispose_case(
        self, case_id: str, disposal_date: date, outcome: str, actor: str = "system"
    ) -> DisposalRecord:
        with self._lock:
            if case_id in self._disposed:
                raise AlreadyDisposed(case_id)
            case = self._pending.get(case_id)
            if case is None:
                raise CaseNotFound(case_id)
            snapshot = replace(case, status=CaseStatus.DISPOSED)
            record = DisposalRecord(
                case_id=case_id,
                disposal_date=disposal_date,
                final_outcome=outcome,
                disposal_latency_days=(disposal_date - case.filing_date).days,
                snapshot=snapshot,
            )
            del self._pending[case_id]
            self._disposed[case_id] = record
            payload = record.to_dict()
            self.journal.append(DISPOSED, payload)
            self._audit(actor, "dispose_case", payload)
        if self.outcome_sink is not None:
            self.outcome_sink(record)
        return record

    def fetch_disposed(self, case_id: str) -> DisposalRecord:
        record = self._disposed.get(case_id)
        if record is None:
            raise NotFound(case_id)
        return record

    def file_appeal(self, disposed_case_id: str, draft: CaseRecord, actor: str = "system") -> CaseRecord:
        """New pending case inheriting substantive facts from the disposal
        snapshot (type, severity, sections unless overridden), with
        procedural state reset: no hearings, fresh pool, appeal_of set."""
        origin = self.fetch_disposed(disposed_case_id).snapshot
        appeal = replace(
            draft,
            case_type=draft.case_type or origin.case_type,
            severity=draft.severity or origin.severity,
            legal_sections=draft.legal_sections or origin.legal_sections,
            hearings=(),
            status=CaseStatus.PENDING,
            appeal_of=disposed_case_id,
        )
        self.put_case(appeal, actor=actor)
        return appeal

    # --- assignments ------------------------------------------------------

    def record_assignment(self, assignment: HearingAssignment, actor: str = "system") -> None:
        with self._lock:
            self._assignments.append(assignment)
            payload = assignment.to_dict()
            self.journal.append(ASSIGNMENTS, payload)
            self._audit(actor, "record_assignment", payload)

    def assignments(self) -> list[HearingAssignment]:
        return list(self._assignments)

    def pending_count(self) -> int:
        return len(self._pending)

    def disposed_count(self) -> int:
        return len(self._disposed)

    def audit_log(self) -> list[dict]:
        return self.journal.replay(AUDIT)

    @property
    def audit_sequence(self) -> int:
        return self._audit_seq

    def audit_config_change(self, actor: str, what: str, prior, new) -> AuditEvent:
        return self._audit(actor, f"config_change:{what}", {"prior": prior, "new": new})
