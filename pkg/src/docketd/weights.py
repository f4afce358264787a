"""Priority weight engine.

A case's weight is a convex combination of five normalized features
(severity, input priority, age, legal sections, hearing count), boosted
multiplicatively once its pendency exceeds the aging threshold. The
coefficient vector is adjusted online from disposal outcomes under
simplex constraints (nonnegative, sum to one).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from datetime import date
from typing import Iterable, Optional

import numpy as np

from . import kernel
from .model import (
    CaseRecord,
    LegalSectionRef,
    PriorityLevel,
    Severity,
    case_age_days,
    pendency_days,
)

log = logging.getLogger(__name__)

SEVERITY_SCORES = {Severity.HIGH: 1.0, Severity.MEDIUM: 0.6, Severity.LOW: 0.2}
PRIORITY_SCORES = {PriorityLevel.URGENT: 1.0, PriorityLevel.MEDIUM: 0.6, PriorityLevel.ORDINARY: 0.2}

DEFAULT_COEFFICIENTS = (0.30, 0.25, 0.20, 0.15, 0.10)
DEFAULT_AGE_CAP_DAYS = 730
DEFAULT_HEARING_CAP = 10

# Starter table covering only the illustrative sections; courts are
# expected to replace it with their own expert-validated configuration.
DEFAULT_SECTION_WEIGHTS = {
    "IPC:302": 1.0,
    "IPC:34": 0.7,
    "IPC:420": 0.8,
    "IPC:406": 0.7,
    "IPC:323": 0.4,
    "CRPC:200": 0.3,
    "HMA-1955:13": 0.5,
    "ICA-1872:73": 0.3,
}


def enum_scores(severity: Severity, priority_level: PriorityLevel) -> tuple[float, float]:
    return SEVERITY_SCORES[severity], PRIORITY_SCORES[priority_level]


@dataclass
class SectionWeightTable:
    """Editable map from canonical "STATUTE:SECTION" strings to [0,1] weights."""

    entries: dict[str, float] = field(default_factory=dict)
    default_weight: float = 0.3

    def __post_init__(self):
        for key, w in self.entries.items():
            if not 0.0 <= w <= 1.0:
                raise ValueError(f"section weight out of [0,1]: {key}={w}")
        if not 0.0 <= self.default_weight <= 1.0:
            raise ValueError(f"default_weight out of [0,1]: {self.default_weight}")

    @classmethod
    def default(cls) -> "SectionWeightTable":
        return cls(entries=dict(DEFAULT_SECTION_WEIGHTS), default_weight=0.3)

    def weight_for(self, section: LegalSectionRef) -> float:
        return self.entries.get(section.canonical, self.default_weight)

    # plain key=value config file; "default" names the fallback weight
    @classmethod
    def load(cls, path) -> "SectionWeightTable":
        entries = {}
        default_weight = 0.3
        with open(path, encoding="utf-8") as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                key, sep, value = line.partition("=")
                if not sep:
                    raise ValueError(f"bad section-weight line: {raw!r}")
                key = key.strip().upper()
                weight = float(value.strip())
                if key == "DEFAULT":
                    default_weight = weight
                else:
                    entries[key] = weight
        return cls(entries=entries, default_weight=default_weight)

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"default = {self.default_weight}\n")
            for key in sorted(self.entries):
                fh.write(f"{key} = {self.entries[key]}\n")


def section_score(sections: Iterable[LegalSectionRef], table: SectionWeightTable) -> float:
    """Max configured weight over the case's sections; table default if empty."""
    weights = [table.weight_for(s) for s in sections]
    return max(weights) if weights else table.default_weight


@dataclass(frozen=True)
class FeatureVector:
    sev: float
    pri: float
    age: float
    sec: float
    hear: float

    def __post_init__(self):
        for name in ("sev", "pri", "age", "sec", "hear"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"feature {name} out of [0,1]: {v}")

    def as_array(self) -> np.ndarray:
        return np.array([self.sev, self.pri, self.age, self.sec, self.hear])


def feature_vector(
    case: CaseRecord,
    today: date,
    table: SectionWeightTable,
    age_cap_days: int = DEFAULT_AGE_CAP_DAYS,
    hearing_cap: int = DEFAULT_HEARING_CAP,
) -> FeatureVector:
    sev, pri = enum_scores(case.severity, case.priority_level)
    return FeatureVector(
        sev=sev,
        pri=pri,
        age=min(1.0, case_age_days(case, today) / age_cap_days),
        sec=section_score(case.legal_sections, table),
        hear=min(1.0, len(case.hearings) / hearing_cap),
    )


@dataclass(frozen=True)
class WeightModel:
    """Convex coefficient vector over (sev, pri, age, sec, hear)."""

    coefficients: tuple[float, ...] = DEFAULT_COEFFICIENTS
    learning_rate: float = 0.05
    samples_seen: int = 0

    def __post_init__(self):
        if len(self.coefficients) != 5:
            raise ValueError("expected 5 coefficients")
        if any(c < 0 for c in self.coefficients):
            raise ValueError("coefficients must be nonnegative")
        if abs(sum(self.coefficients) - 1.0) > 1e-9:
            raise ValueError(f"coefficients must sum to 1, got {sum(self.coefficients)}")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")

    def as_array(self) -> np.ndarray:
        return np.array(self.coefficients)


@dataclass(frozen=True)
class AgingPolicy:
    """Multiplicative priority boost per completed pendency period, capped."""

    threshold_days: int = 180
    multiplier: float = 1.25
    cap: float = 1.0

    def __post_init__(self):
        if self.threshold_days < 1:
            raise ValueError("threshold_days must be >= 1")
        if self.multiplier <= 1.0:
            raise ValueError("multiplier must be > 1")

    @classmethod
    def disabled(cls) -> Optional["AgingPolicy"]:
        return None


@dataclass(frozen=True)
class OutcomeSample:
    features: FeatureVector
    target: float

    def __post_init__(self):
        if not 0.0 <= self.target <= 1.0:
            raise ValueError(f"target out of [0,1]: {self.target}")


def base_weight(f: FeatureVector, m: WeightModel) -> float:
    """Dot product of coefficients and features; in [0,1] by convexity."""
    return float(f.as_array() @ m.as_array())


def aging_boost(base: float, days_since_last_activity: int, policy: Optional[AgingPolicy]) -> float:
    """min(cap, base * multiplier^k) with k completed threshold periods."""
    if policy is None or days_since_last_activity < policy.threshold_days:
        return base
    k = days_since_last_activity // policy.threshold_days
    return min(policy.cap, base * policy.multiplier**k)


def disposal_target(
    disposal_latency_days: int,
    priority_level: PriorityLevel,
    age_cap_days: int = DEFAULT_AGE_CAP_DAYS,
) -> float:
    """Urgency label for online learning: fast disposals read as urgent,
    blended 50/50 with the input priority score."""
    latency_part = 1.0 - min(1.0, disposal_latency_days / age_cap_days)
    return 0.5 * latency_part + 0.5 * PRIORITY_SCORES[priority_level]


def update_coefficients(m: WeightModel, sample: OutcomeSample) -> WeightModel:
    """One SGD step on squared error, then project back onto the simplex
    by clamping negatives to zero and renormalizing the sum to one."""
    f = sample.features.as_array()
    w = m.as_array()
    prediction = float(w @ f)
    w = w + 2.0 * m.learning_rate * (sample.target - prediction) * f
    np.clip(w, 0.0, None, out=w)
    total = w.sum()
    w = w / total if total > 0 else np.full(5, 0.2)
    return WeightModel(
        coefficients=tuple(float(c) for c in w),
        learning_rate=m.learning_rate,
        samples_seen=m.samples_seen + 1,
    )


def rank_cases(
    cases: Iterable[CaseRecord],
    today: date,
    model: WeightModel,
    table: SectionWeightTable,
    policy: Optional[AgingPolicy] = None,
    age_cap_days: int = DEFAULT_AGE_CAP_DAYS,
    hearing_cap: int = DEFAULT_HEARING_CAP,
) -> list[tuple[str, float]]:
    """Pending cases ordered by effective weight descending.

    Ties break by earlier filing_date, then lexicographically smaller
    case_id, so the order is a strict total one. A case whose features
    cannot be computed is logged and skipped, not fatal.
    """
    scored = []
    features = []
    pendency = []
    for case in cases:
        try:
            fv = feature_vector(case, today, table, age_cap_days, hearing_cap)
        except Exception as exc:
            log.warning("skipping unscorable case %s: %s", case.case_id, exc)
            continue
        scored.append(case)
        features.append(fv.as_array())
        pendency.append(pendency_days(case, today))
    if not scored:
        return []

    threshold = policy.threshold_days if policy else 0
    multiplier = policy.multiplier if policy else 1.0
    cap = policy.cap if policy else 1.0
    _, eff = kernel.batch_weights(
        np.array(features), model.as_array(), np.array(pendency, dtype=np.int64),
        threshold, multiplier, cap,
    )
    order = sorted(
        range(len(scored)),
        key=lambda i: (-eff[i], scored[i].filing_date, scored[i].case_id),
    )
    return [(scored[i].case_id, float(eff[i])) for i in order]
