"""HTTP boundary for registrars, judges, and admin tooling.

Handlers are thin: every response is reproducible by calling the module
operations directly. Mutations funnel through the store's single-writer
lock; scheduling runs take an advisory lock so they never interleave with
decision endpoints.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from datetime import date, timedelta
from typing import Optional

from fastapi import Depends, FastAPI, Header, HTTPException, Query, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .errors import (
    AlreadyDisposed,
    CaseNotFound,
    DocketError,
    DuplicateCaseId,
    NoSittingDayWithinHorizon,
    NotAnAppeal,
    NotFound,
)
from .metrics import OperationTimings
from .model import (
    CaseRecord,
    HearingEntry,
    HearingOutcome,
    case_age_days,
    case_from_dict,
    case_to_dict,
    classify_pool,
    validate_case,
)
from .notify import Outbox, ConsoleAdapter
from .scheduler import (
    CapacityConfig,
    CourtCalendar,
    LoadLedger,
    allocate_hearings,
    daily_counts,
    schedule_directive,
)
from .store import DocketStore
from .weights import (
    AgingPolicy,
    OutcomeSample,
    SectionWeightTable,
    WeightModel,
    disposal_target,
    feature_vector,
    rank_cases,
    update_coefficients,
)

AGE_BUCKETS = ((0, 90), (91, 180), (181, 365), (366, 730), (731, None))

_STATUS = {
    "DuplicateCaseId": 409,
    "AlreadyDisposed": 409,
    "CaseNotFound": 404,
    "NotFound": 404,
    "NotAnAppeal": 400,
    "NoSittingDayWithinHorizon": 409,
    "NonMonotoneHearings": 400,
    "CaseNotPending": 409,
}


@dataclass
class AppState:
    store: DocketStore = field(default_factory=DocketStore)
    calendar: CourtCalendar = field(default_factory=CourtCalendar)
    capacity: CapacityConfig = field(default_factory=CapacityConfig)
    table: SectionWeightTable = field(default_factory=SectionWeightTable.default)
    policy: Optional[AgingPolicy] = field(default_factory=AgingPolicy)
    outbox: Outbox = field(default_factory=Outbox)
    timings: OperationTimings = field(default_factory=OperationTimings)
    model: WeightModel = field(default_factory=WeightModel)
    ledgers: dict = field(default_factory=dict)
    schedule_lock: threading.Lock = field(default_factory=threading.Lock)

    def __post_init__(self):
        if self.store.outcome_sink is None:
            self.store.outcome_sink = self._learn_from_disposal

    def _learn_from_disposal(self, record):
        fv = feature_vector(record.snapshot, record.disposal_date, self.table)
        target = disposal_target(record.disposal_latency_days, record.snapshot.priority_level)
        prior = self.model.coefficients
        self.model = update_coefficients(self.model, OutcomeSample(features=fv, target=target))
        self.store.audit_config_change(
            "weight-engine", "coefficients", list(prior), list(self.model.coefficients)
        )

    def ledger(self, judge_id: str) -> LoadLedger:
        return self.ledgers.setdefault(judge_id, LoadLedger())

    def known_judges(self) -> set[str]:
        judges = {c.judge_id for c in self.store.list_pending() if c.judge_id}
        judges.update(a.judge_id for a in self.store.assignments())
        judges.update(self.calendar.judge_leaves)
        return judges


class DecisionRequest(BaseModel):
    action: str  # Dispose | NextHearingAfterDays
    after_days: Optional[int] = None
    outcome_code: Optional[str] = None
    as_of: Optional[date] = None


class AppealRequest(BaseModel):
    disposed_case_id: str
    higher_court_id: str = "HC-01"
    draft: dict


class HolidaysRequest(BaseModel):
    dates: list[date]


class SectionWeightsRequest(BaseModel):
    entries: dict[str, float]
    default_weight: float = 0.3


def _error(code: str, message: str, details=None, status: int = 400) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "details": details or []},
    )


def create_app(state: Optional[AppState] = None) -> FastAPI:
    state = state or AppState()
    app = FastAPI(title="docketd")
    app.state.engine = state

    def require_role(*allowed: str):
        def check(x_role: str = Header(default=None, alias="X-Role")):
            if x_role is None:
                raise HTTPException(status_code=401, detail="X-Role header required")
            if x_role not in allowed:
                raise HTTPException(status_code=403, detail=f"role {x_role} not allowed")
            return x_role

        return check

    @app.exception_handler(DocketError)
    async def docket_error_handler(request: Request, exc: DocketError):
        return _error(exc.code, str(exc), status=_STATUS.get(exc.code, 400))

    @app.post("/cases", status_code=201)
    def post_case(
        draft: dict,
        as_of: Optional[date] = Query(default=None),
        role: str = Depends(require_role("Registrar", "Admin")),
    ):
        with state.timings.timed("post_case"):
            today = as_of or date.today()
            try:
                case = case_from_dict(draft)
            except (KeyError, ValueError) as exc:
                return _error("MalformedCase", str(exc))
            violations = validate_case(case, today, disposed_lookup=lambda cid: _is_disposed(cid))
            fatal = [v for v in violations if v.fatal]
            if fatal:
                return _error(
                    "ValidationFailed",
                    "case draft violates invariants",
                    details=[{"code": v.code, "message": v.message} for v in fatal],
                )
            state.store.put_case(case, actor=role)
            return case_to_dict(case)

    def _is_disposed(case_id: str) -> bool:
        try:
            state.store.fetch_disposed(case_id)
            return True
        except NotFound:
            return False

    @app.get("/cases/{case_id}")
    def get_case(case_id: str):
        try:
            return case_to_dict(state.store.get_case(case_id))
        except CaseNotFound:
            return case_to_dict(state.store.fetch_disposed(case_id).snapshot)

    @app.get("/docket")
    def get_docket(judge: str, date_: date = Query(alias="date")):
        with state.timings.timed("get_docket"):
            if judge not in state.known_judges():
                raise HTTPException(status_code=404, detail=f"unknown judge {judge}")
            todays = sorted(
                (a for a in state.store.assignments() if a.judge_id == judge and a.date == date_),
                key=lambda a: (a.rank_at_assignment, a.case_id),
            )
            rows = []
            for a in todays:
                try:
                    case = state.store.get_case(a.case_id)
                except CaseNotFound:
                    case = state.store.fetch_disposed(a.case_id).snapshot
                rows.append(
                    {
                        "case_id": a.case_id,
                        "type": case.case_type.value,
                        "weight": a.weight_snapshot,
                        "pool": a.pool.value,
                        "sections": [s.canonical for s in case.legal_sections],
                        "age_days": case_age_days(case, date_),
                    }
                )
            fresh, old, total = daily_counts(date_, todays)
            return {
                "date": date_.isoformat(),
                "judge_id": judge,
                "rows": rows,
                "counts": {"fresh": fresh, "old": old, "total": total},
                "version": state.store.audit_sequence,
            }

    @app.post("/cases/{case_id}/decision")
    def post_decision(
        case_id: str,
        body: DecisionRequest,
        role: str = Depends(require_role("Judge", "Admin")),
    ):
        with state.timings.timed("post_decision"), state.schedule_lock:
            as_of = body.as_of or date.today()
            if body.action == "Dispose":
                if body.after_days is not None:
                    return _error("MalformedDecision", "after_days not allowed with Dispose")
                record = state.store.dispose_case(
                    case_id, as_of, body.outcome_code or "Resolved", actor=role
                )
                return {"disposed": True, "disposal_date": record.disposal_date.isoformat()}
            if body.action == "NextHearingAfterDays":
                if body.after_days is None or body.after_days < 1:
                    return _error("MalformedDecision", "after_days required and must be >= 1")
                case = state.store.get_case(case_id)
                state.store.record_hearing(
                    case_id,
                    HearingEntry(
                        date=as_of,
                        outcome=HearingOutcome.NEXT_HEARING_DIRECTED,
                        directive_after_days=body.after_days,
                    ),
                    actor=role,
                )
                assignment = schedule_directive(
                    case_id, as_of, body.after_days, case.judge_id,
                    state.calendar, state.capacity, state.ledger(case.judge_id),
                )
                state.store.record_assignment(assignment, actor=role)
                state.outbox.enqueue_for_assignment(assignment)
                return {"assignment": assignment.to_dict()}
            return _error("MalformedDecision", f"unknown action {body.action!r}")

    @app.post("/appeals", status_code=201)
    def post_appeal(body: AppealRequest, role: str = Depends(require_role("Registrar", "Admin"))):
        with state.timings.timed("post_appeal"):
            origin = state.store.fetch_disposed(body.disposed_case_id).snapshot
            merged = dict(case_to_dict(origin))
            merged.update(body.draft)
            merged["hearings"] = []
            merged["status"] = "Pending"
            draft = case_from_dict(merged)
            appeal = state.store.file_appeal(body.disposed_case_id, draft, actor=role)
            notice = state.outbox.appeal_notice(appeal, body.higher_court_id)
            return {
                "case": case_to_dict(appeal),
                "notification_id": notice.notification_id if notice else None,
            }

    @app.post("/schedule/run")
    def schedule_run(as_of: date, role: str = Depends(require_role("Admin", "Registrar"))):
        with state.timings.timed("schedule_run"), state.schedule_lock:
            assigned_ids = {
                a.case_id for a in state.store.assignments() if a.date >= as_of
            }
            backlog = [c for c in state.store.list_pending() if c.case_id not in assigned_ids]
            by_judge: dict[str, list[CaseRecord]] = {}
            for case in backlog:
                by_judge.setdefault(case.judge_id, []).append(case)
            made = []
            for judge_id in sorted(by_judge):
                group = by_judge[judge_id]
                ranked = rank_cases(group, as_of, state.model, state.table, state.policy)
                pools = {c.case_id: classify_pool(c) for c in group}
                triples = [(cid, pools[cid], w) for cid, w in ranked]
                for assignment in allocate_hearings(
                    triples, as_of, judge_id, state.calendar, state.capacity,
                    state.ledger(judge_id),
                ):
                    state.store.record_assignment(assignment, actor=role)
                    state.outbox.enqueue_for_assignment(assignment)
                    made.append(assignment.to_dict())
            return {"assigned": len(made), "assignments": made}

    @app.post("/calendar/holidays")
    def post_holidays(body: HolidaysRequest, role: str = Depends(require_role("Admin"))):
        prior = sorted(d.isoformat() for d in state.calendar.holidays)
        state.calendar.holidays.update(body.dates)
        state.calendar.invalidate()
        state.store.audit_config_change(
            role, "holidays", prior, sorted(d.isoformat() for d in state.calendar.holidays)
        )
        return {"holidays": sorted(d.isoformat() for d in state.calendar.holidays)}

    @app.put("/config/section-weights")
    def put_section_weights(body: SectionWeightsRequest, role: str = Depends(require_role("Admin"))):
        try:
            table = SectionWeightTable(
                entries={k.upper(): v for k, v in body.entries.items()},
                default_weight=body.default_weight,
            )
        except ValueError as exc:
            return _error("InvalidSectionWeights", str(exc))
        prior = {"entries": state.table.entries, "default_weight": state.table.default_weight}
        state.table = table
        state.store.audit_config_change(
            role, "section-weights", prior,
            {"entries": table.entries, "default_weight": table.default_weight},
        )
        return {"entries": table.entries, "default_weight": table.default_weight}

    @app.get("/notifications")
    def get_notifications():
        return {"notifications": [n.to_dict() for n in state.outbox.all()]}

    @app.get("/metrics")
    def get_metrics(as_of: Optional[date] = None):
        today = as_of or date.today()
        per_day: dict[str, int] = {}
        for a in state.store.assignments():
            per_day[a.date.isoformat()] = per_day.get(a.date.isoformat(), 0) + 1
        histogram = {}
        for low, high in AGE_BUCKETS:
            label = f"{low}-{high}" if high is not None else f"{low}+"
            histogram[label] = 0
        for case in state.store.list_pending():
            age = max(0, (today - case.filing_date).days)
            for low, high in AGE_BUCKETS:
                if age >= low and (high is None or age <= high):
                    label = f"{low}-{high}" if high is not None else f"{low}+"
                    histogram[label] += 1
                    break
        return {
            "operations": state.timings.report(),
            "cases_scheduled_per_day": dict(sorted(per_day.items())),
            "pending_age_histogram": histogram,
            "pending_count": len(state.store.list_pending()),
        }

    return app


def main() -> None:
    """Console entry point: serve the API with uvicorn."""
    import uvicorn

    uvicorn.run(create_app(), host="127.0.0.1", port=8000)
