"""Seeded synthetic caseload generator and day-by-day simulation driver.

The RNG is numpy's PCG64 seeded with a 64-bit integer; every draw happens
in a fixed order, so a config (seed included) maps to exactly one stream
of cases, decisions, and assignments.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from datetime import date, timedelta
from typing import Optional

import numpy as np

from .errors import InvalidDistribution
from .metrics import OperationTimings
from .model import (
    CaseRecord,
    CaseStatus,
    CaseType,
    CreatedBy,
    HearingEntry,
    HearingOutcome,
    LegalSectionRef,
    PriorityLevel,
    Severity,
    classify_pool,
)
from .notify import NullAdapter, Outbox
from .scheduler import (
    CapacityConfig,
    CourtCalendar,
    HearingAssignment,
    LoadLedger,
    allocate_hearings,
    schedule_directive,
)
from .store import DocketStore, MemoryJournal
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

SECTION_CHOICES = {
    CaseType.CRIMINAL: ("IPC:302", "IPC:34", "IPC:420", "IPC:406", "IPC:323", "CRPC:200"),
    CaseType.CIVIL: ("ICA-1872:73",),
    CaseType.FAMILY: ("HMA-1955:13",),
}


def _check_mix(name: str, mix: dict) -> None:
    total = sum(mix.values())
    if abs(total - 1.0) > 1e-9 or any(p < 0 for p in mix.values()):
        raise InvalidDistribution(f"{name} must be a probability distribution, got {mix}")


@dataclass
class SimConfig:
    n_cases: int = 10000
    seed: int = 42
    days_to_simulate: int = 250
    start_date: date = date(2025, 7, 1)
    capacity: CapacityConfig = field(default_factory=CapacityConfig)
    calendar: CourtCalendar = field(default_factory=CourtCalendar)
    judges: tuple[str, ...] = ("J-01",)
    type_mix: dict = field(
        default_factory=lambda: {CaseType.CRIMINAL: 0.5, CaseType.CIVIL: 0.3, CaseType.FAMILY: 0.2}
    )
    severity_mix: dict = field(
        default_factory=lambda: {Severity.HIGH: 0.2, Severity.MEDIUM: 0.5, Severity.LOW: 0.3}
    )
    priority_mix: dict = field(
        default_factory=lambda: {PriorityLevel.URGENT: 0.15, PriorityLevel.MEDIUM: 0.45, PriorityLevel.ORDINARY: 0.4}
    )
    dispose_probability_per_hearing: float = 0.3
    directive_min_days: int = 7
    directive_max_days: int = 30
    filing_window_days: int = 730
    aging: Optional[AgingPolicy] = field(default_factory=AgingPolicy)
    model: WeightModel = field(default_factory=WeightModel)
    table: SectionWeightTable = field(default_factory=SectionWeightTable.default)
    learning_enabled: bool = True

    def __post_init__(self):
        if self.n_cases < 0:
            raise InvalidDistribution("n_cases must be >= 0")
        _check_mix("type_mix", self.type_mix)
        _check_mix("severity_mix", self.severity_mix)
        _check_mix("priority_mix", self.priority_mix)
        if not 0.0 <= self.dispose_probability_per_hearing <= 1.0:
            raise InvalidDistribution("dispose_probability_per_hearing must be in [0,1]")


@dataclass
class SimulationMetrics:
    generated: int = 0
    disposals: int = 0
    notifications_sent: int = 0
    starvation_count: int = 0
    mean_age_at_first_hearing: float = 0.0
    max_age_at_first_hearing: int = 0
    bottom_decile_max_wait_days: int = 0
    scheduled_per_day: dict = field(default_factory=dict)
    operation_timings: dict = field(default_factory=dict)
    runtime_seconds: float = 0.0

    def to_dict(self) -> dict:
        return {
            "generated": self.generated,
            "disposals": self.disposals,
            "notifications_sent": self.notifications_sent,
            "starvation_count": self.starvation_count,
            "mean_age_at_first_hearing": self.mean_age_at_first_hearing,
            "max_age_at_first_hearing": self.max_age_at_first_hearing,
            "bottom_decile_max_wait_days": self.bottom_decile_max_wait_days,
            "scheduled_per_day": self.scheduled_per_day,
            "operation_timings": self.operation_timings,
            "runtime_seconds": self.runtime_seconds,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SimulationMetrics":
        return cls(**data)


@dataclass
class SimResult:
    metrics: SimulationMetrics
    assignments: list[HearingAssignment]


def _draw(rng, mix: dict):
    keys = list(mix.keys())
    probs = np.array([mix[k] for k in keys])
    return keys[rng.choice(len(keys), p=probs)]


def generate_cases(config: SimConfig, rng=None) -> list[CaseRecord]:
    """n_cases fresh records drawn from the configured mixes; deterministic
    per seed, filing dates uniform over the window before start_date."""
    if rng is None:
        rng = np.random.Generator(np.random.PCG64(config.seed))
    n = config.n_cases
    if n == 0:
        return []
    type_keys = list(config.type_mix)
    sev_keys = list(config.severity_mix)
    pri_keys = list(config.priority_mix)
    types = rng.choice(len(type_keys), size=n, p=[config.type_mix[k] for k in type_keys])
    sevs = rng.choice(len(sev_keys), size=n, p=[config.severity_mix[k] for k in sev_keys])
    pris = rng.choice(len(pri_keys), size=n, p=[config.priority_mix[k] for k in pri_keys])
    offsets = rng.integers(1, config.filing_window_days + 1, size=n)
    judge_idx = rng.integers(len(config.judges), size=n)
    cases = []
    for i in range(n):
        case_type = type_keys[types[i]]
        severity = sev_keys[sevs[i]]
        priority = pri_keys[pris[i]]
        offset = int(offsets[i])
        pool = SECTION_CHOICES[case_type]
        first = int(rng.integers(len(pool)))
        picks = [first]
        if len(pool) > 1 and int(rng.integers(2)):
            second = int(rng.integers(len(pool) - 1))
            picks.append(second + 1 if second >= first else second)
        sections = tuple(LegalSectionRef.parse(pool[j]) for j in sorted(picks))
        judge = config.judges[int(judge_idx[i])]
        cases.append(
            CaseRecord(
                case_id=f"SIM-{i:06d}",
                case_type=case_type,
                filing_date=config.start_date - timedelta(days=offset),
                severity=severity,
                priority_level=priority,
                legal_sections=sections,
                judge_id=judge,
                created_by=CreatedBy.REGISTRAR,
            )
        )
    return cases


def run_simulation(config: SimConfig) -> SimResult:
    """Drive the engine day by day: schedule the unassigned backlog, hold
    the day's hearings, let the simulated judge dispose or direct the next
    hearing, and learn from every disposal."""
    t_start = time.perf_counter()
    rng = np.random.Generator(np.random.PCG64(config.seed))
    timings = OperationTimings()

    model = [config.model]

    def outcome_sink(record):
        if not config.learning_enabled:
            return
        fv = feature_vector(record.snapshot, record.disposal_date, config.table)
        target = disposal_target(record.disposal_latency_days, record.snapshot.priority_level)
        model[0] = update_coefficients(model[0], OutcomeSample(features=fv, target=target))

    store = DocketStore(MemoryJournal(), outcome_sink=outcome_sink, clock=lambda: "sim")
    adapter = NullAdapter()
    outbox = Outbox()

    with timings.timed("generate_cases"):
        cases = generate_cases(config, rng)
    for case in cases:
        store.put_case(case, actor="simulator")

    # bottom decile by initial base weight, for the anti-starvation metric
    decile_ids: set[str] = set()
    if cases:
        neutral = rank_cases(cases, config.start_date, config.model, config.table, policy=None)
        k = max(1, len(neutral) // 10)
        decile_ids = {cid for cid, _ in neutral[-k:]}

    ledgers = {j: LoadLedger() for j in config.judges}
    by_date: dict[date, list[HearingAssignment]] = {}
    first_assignment: dict[str, date] = {}
    all_assignments: list[HearingAssignment] = []
    unassigned = {c.case_id for c in cases}

    def record(assignment: HearingAssignment) -> None:
        store.record_assignment(assignment, actor="simulator")
        all_assignments.append(assignment)
        by_date.setdefault(assignment.date, []).append(assignment)
        first_assignment.setdefault(assignment.case_id, assignment.date)
        outbox.enqueue_for_assignment(assignment)

    end_date = config.start_date + timedelta(days=config.days_to_simulate)
    day = config.start_date
    while day < end_date:
        if unassigned:
            with timings.timed("schedule_run"):
                backlog = [store.get_case(cid) for cid in sorted(unassigned)]
                by_judge: dict[str, list[CaseRecord]] = {}
                for case in backlog:
                    by_judge.setdefault(case.judge_id, []).append(case)
                for judge_id in sorted(by_judge):
                    group = by_judge[judge_id]
                    ranked = rank_cases(group, day, model[0], config.table, config.aging)
                    pools = {c.case_id: classify_pool(c) for c in group}
                    triples = [(cid, pools[cid], w) for cid, w in ranked]
                    for assignment in allocate_hearings(
                        triples, day, judge_id, config.calendar, config.capacity, ledgers[judge_id]
                    ):
                        record(assignment)
                        unassigned.discard(assignment.case_id)
        outbox.drain(adapter)

        with timings.timed("hold_hearings"):
            for assignment in by_date.get(day, ()):
                case = store.get_case(assignment.case_id)
                if rng.random() < config.dispose_probability_per_hearing:
                    store.record_hearing(
                        case.case_id,
                        HearingEntry(date=day, outcome=HearingOutcome.DISPOSED),
                        actor="simulator",
                    )
                    store.dispose_case(case.case_id, day, "Resolved", actor="simulator")
                else:
                    after = int(rng.integers(config.directive_min_days, config.directive_max_days + 1))
                    store.record_hearing(
                        case.case_id,
                        HearingEntry(
                            date=day,
                            outcome=HearingOutcome.NEXT_HEARING_DIRECTED,
                            directive_after_days=after,
                        ),
                        actor="simulator",
                    )
                    record(
                        schedule_directive(
                            case.case_id, day, after, case.judge_id, config.calendar,
                            config.capacity, ledgers[case.judge_id],
                            weight_snapshot=assignment.weight_snapshot,
                        )
                    )
        outbox.drain(adapter)

        # conservation: every generated case is pending or disposed
        if store.pending_count() + store.disposed_count() != config.n_cases:
            raise AssertionError("case conservation violated")
        day += timedelta(days=1)

    # per-judge-per-day capacity ceiling
    per_day: dict[tuple[str, date], int] = {}
    for a in all_assignments:
        per_day[(a.judge_id, a.date)] = per_day.get((a.judge_id, a.date), 0) + 1
    if any(n > config.capacity.daily_total for n in per_day.values()):
        raise AssertionError("daily capacity ceiling violated")

    waits = {
        cid: (assigned - store_case_filing(store, cid)).days
        for cid, assigned in first_assignment.items()
    }
    decile_waits = [w for cid, w in waits.items() if cid in decile_ids]
    scheduled_per_day = {}
    d = config.start_date
    while d < end_date:
        day_assignments = by_date.get(d, ())
        fresh = sum(1 for a in day_assignments if a.pool.value == "Fresh")
        old = len(day_assignments) - fresh
        if day_assignments:
            scheduled_per_day[d.isoformat()] = [fresh, old, fresh + old]
        d += timedelta(days=1)

    aging_threshold = config.aging.threshold_days if config.aging else AgingPolicy().threshold_days
    starvation = 0
    for case in store.list_pending():
        if case.case_id not in first_assignment and (end_date - case.last_activity_date).days > 2 * aging_threshold:
            starvation += 1

    metrics = SimulationMetrics(
        generated=config.n_cases,
        disposals=store.disposed_count(),
        notifications_sent=adapter.delivered,
        starvation_count=starvation,
        mean_age_at_first_hearing=round(sum(waits.values()) / len(waits), 3) if waits else 0.0,
        max_age_at_first_hearing=max(waits.values()) if waits else 0,
        bottom_decile_max_wait_days=max(decile_waits) if decile_waits else 0,
        scheduled_per_day=scheduled_per_day,
        operation_timings=timings.report(),
        runtime_seconds=time.perf_counter() - t_start,
    )
    return SimResult(metrics=metrics, assignments=all_assignments)


def store_case_filing(store: DocketStore, case_id: str) -> date:
    try:
        return store.get_case(case_id).filing_date
    except Exception:
        return store.fetch_disposed(case_id).snapshot.filing_date


def report(metrics: SimulationMetrics, format: str = "table") -> str:
    """Stable, diff-friendly rendering; the json form round-trips."""
    if format == "json":
        return json.dumps(metrics.to_dict(), sort_keys=True, indent=2)
    lines = [
        "metric                          value",
        "------                          -----",
        f"generated                       {metrics.generated}",
        f"disposals                       {metrics.disposals}",
        f"notifications_sent              {metrics.notifications_sent}",
        f"starvation_count                {metrics.starvation_count}",
        f"mean_age_at_first_hearing       {metrics.mean_age_at_first_hearing}",
        f"max_age_at_first_hearing        {metrics.max_age_at_first_hearing}",
        f"bottom_decile_max_wait_days     {metrics.bottom_decile_max_wait_days}",
        f"busiest_day_total               {max((v[2] for v in metrics.scheduled_per_day.values()), default=0)}",
        f"runtime_seconds                 {round(metrics.runtime_seconds, 3)}",
    ]
    return "\n".join(lines)
