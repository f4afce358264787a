"""Capacity-constrained hearing-date allocation on a court calendar.

Ranked cases take the earliest sitting day with room in their pool
(fresh/old); an exhausted pool may borrow the other pool's unused slots
when spill is enabled, never exceeding the daily total. Everything is
deterministic: same inputs, same assignments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date, timedelta
from typing import Iterable, Optional

from .errors import NoSittingDayWithinHorizon
from .model import Pool

HORIZON_DAYS = 366


@dataclass
class CourtCalendar:
    holidays: set[date] = field(default_factory=set)
    judge_leaves: dict[str, set[date]] = field(default_factory=dict)
    # weekday numbers that never sit (Monday=0 .. Sunday=6)
    weekend_rule: frozenset[int] = frozenset({5, 6})
    # memoized next-sitting-day lookups; invalidated on calendar edits
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    def invalidate(self) -> None:
        self._memo.clear()

    @classmethod
    def load(cls, holidays_path=None, leaves_path=None) -> "CourtCalendar":
        """Holiday file: one ISO date per line. Leave file: "judge_id,date" lines."""
        cal = cls()
        if holidays_path is not None:
            with open(holidays_path, encoding="utf-8") as fh:
                for line in fh:
                    line = line.split("#", 1)[0].strip()
                    if line:
                        cal.holidays.add(date.fromisoformat(line))
        if leaves_path is not None:
            with open(leaves_path, encoding="utf-8") as fh:
                for line in fh:
                    line = line.split("#", 1)[0].strip()
                    if not line:
                        continue
                    judge_id, day = line.split(",", 1)
                    cal.judge_leaves.setdefault(judge_id.strip(), set()).add(
                        date.fromisoformat(day.strip())
                    )
        return cal


@dataclass(frozen=True)
class CapacityConfig:
    daily_total: int = 100
    fresh_cap: int = 50
    old_cap: int = 50
    spill_enabled: bool = True

    def __post_init__(self):
        if self.daily_total < 1 or self.fresh_cap < 0 or self.old_cap < 0:
            raise ValueError("capacities must be positive")
        if self.fresh_cap + self.old_cap != self.daily_total:
            raise ValueError("fresh_cap + old_cap must equal daily_total")


@dataclass(frozen=True)
class HearingAssignment:
    case_id: str
    date: date
    pool: Pool
    rank_at_assignment: int
    weight_snapshot: float
    judge_id: str = ""

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "date": self.date.isoformat(),
            "pool": self.pool.value,
            "rank": self.rank_at_assignment,
            "weight": self.weight_snapshot,
            "judge_id": self.judge_id,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "HearingAssignment":
        return cls(
            case_id=data["case_id"],
            date=date.fromisoformat(data["date"]),
            pool=Pool(data["pool"]),
            rank_at_assignment=data["rank"],
            weight_snapshot=data["weight"],
            judge_id=data.get("judge_id", ""),
        )


class LoadLedger:
    """Per-date (fresh, old) assignment counts for one judge calendar."""

    def __init__(self):
        self._counts: dict[date, list[int]] = {}

    def counts(self, day: date) -> tuple[int, int]:
        fresh, old = self._counts.get(day, (0, 0))
        return fresh, old

    def add(self, day: date, pool: Pool) -> None:
        entry = self._counts.setdefault(day, [0, 0])
        entry[0 if pool is Pool.FRESH else 1] += 1

    def has_room(self, day: date, pool: Pool, capacity: CapacityConfig) -> bool:
        fresh, old = self.counts(day)
        if fresh + old >= capacity.daily_total:
            return False
        own_used, own_cap = (fresh, capacity.fresh_cap) if pool is Pool.FRESH else (old, capacity.old_cap)
        return own_used < own_cap or capacity.spill_enabled


def is_sitting_day(day: date, judge_id: str, calendar: CourtCalendar) -> bool:
    if day.weekday() in calendar.weekend_rule:
        return False
    if day in calendar.holidays:
        return False
    return day not in calendar.judge_leaves.get(judge_id, ())


def next_sitting_day(from_date: date, judge_id: str, calendar: CourtCalendar) -> date:
    cached = calendar._memo.get((judge_id, from_date))
    if cached is not None:
        return cached
    day = from_date
    for _ in range(HORIZON_DAYS):
        if is_sitting_day(day, judge_id, calendar):
            calendar._memo[(judge_id, from_date)] = day
            return day
        day += timedelta(days=1)
    raise NoSittingDayWithinHorizon(f"no sitting day within {HORIZON_DAYS} days of {from_date}")


def _earliest_slot(
    from_date: date,
    pool: Pool,
    judge_id: str,
    calendar: CourtCalendar,
    capacity: CapacityConfig,
    load: LoadLedger,
) -> date:
    day = from_date
    scanned = 0
    while True:
        day = next_sitting_day(day, judge_id, calendar)
        if load.has_room(day, pool, capacity):
            return day
        day += timedelta(days=1)
        scanned += 1
        if scanned > HORIZON_DAYS * 10:
            raise NoSittingDayWithinHorizon(f"no capacity within horizon of {from_date}")


def allocate_hearings(
    ranked: Iterable[tuple[str, Pool, float]],
    start_date: date,
    judge_id: str,
    calendar: CourtCalendar,
    capacity: CapacityConfig,
    existing_load: Optional[LoadLedger] = None,
) -> list[HearingAssignment]:
    """Assign each ranked case the earliest feasible sitting day >= start_date.

    Per-pool candidate days only move forward, so a higher-ranked case never
    lands later than a lower-ranked one of the same pool. Mutates
    existing_load so repeated runs share one capacity ledger.
    """
    load = existing_load if existing_load is not None else LoadLedger()
    # earliest possibly-feasible day per pool; feasibility never comes back
    # once a day fills, so these pointers are safe to advance monotonically
    cursor = {Pool.FRESH: start_date, Pool.OLD: start_date}
    assignments = []
    for rank, (case_id, pool, weight) in enumerate(ranked, start=1):
        day = _earliest_slot(cursor[pool], pool, judge_id, calendar, capacity, load)
        cursor[pool] = day
        load.add(day, pool)
        assignments.append(
            HearingAssignment(
                case_id=case_id,
                date=day,
                pool=pool,
                rank_at_assignment=rank,
                weight_snapshot=weight,
                judge_id=judge_id,
            )
        )
    return assignments


def schedule_directive(
    case_id: str,
    decision_date: date,
    after_days: int,
    judge_id: str,
    calendar: CourtCalendar,
    capacity: CapacityConfig,
    existing_load: LoadLedger,
    weight_snapshot: float = 0.0,
) -> HearingAssignment:
    """Earliest sitting day >= decision_date + after_days with Old-pool room."""
    if after_days < 1:
        raise ValueError("after_days must be >= 1")
    target = decision_date + timedelta(days=after_days)
    day = _earliest_slot(target, Pool.OLD, judge_id, calendar, capacity, existing_load)
    existing_load.add(day, Pool.OLD)
    return HearingAssignment(
        case_id=case_id,
        date=day,
        pool=Pool.OLD,
        rank_at_assignment=0,
        weight_snapshot=weight_snapshot,
        judge_id=judge_id,
    )


def daily_counts(day: date, assignments: Iterable[HearingAssignment]) -> tuple[int, int, int]:
    fresh = old = 0
    for a in assignments:
        if a.date == day:
            if a.pool is Pool.FRESH:
                fresh += 1
            else:
                old += 1
    return fresh, old, fresh + old
