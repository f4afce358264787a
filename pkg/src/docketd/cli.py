"""docket-sim command line driver.

Runs the seeded simulation and writes metrics.json plus an
assignments.ndjson file. Wall-clock fields are zeroed in the files so two
runs with the same configuration are byte-identical; the measured runtime
is printed to the console instead.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from datetime import date

try:
    import tomllib
except ImportError:
    import tomli as tomllib

from .errors import DocketError
from .scheduler import CapacityConfig, CourtCalendar
from .sim import SimConfig, SimulationMetrics, report, run_simulation
from .weights import AgingPolicy


def load_config_file(path) -> dict:
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def build_config(args) -> SimConfig:
    kwargs = {}
    if args.config:
        raw = load_config_file(args.config)
        if "n_cases" in raw:
            kwargs["n_cases"] = int(raw["n_cases"])
        if "seed" in raw:
            kwargs["seed"] = int(raw["seed"])
        if "days" in raw:
            kwargs["days_to_simulate"] = int(raw["days"])
        if "start_date" in raw:
            kwargs["start_date"] = date.fromisoformat(str(raw["start_date"]))
        if "judges" in raw:
            kwargs["judges"] = tuple(raw["judges"])
        if "dispose_probability" in raw:
            kwargs["dispose_probability_per_hearing"] = float(raw["dispose_probability"])
        cap = raw.get("capacity", {})
        if cap:
            kwargs["capacity"] = CapacityConfig(
                daily_total=int(cap.get("daily_total", 100)),
                fresh_cap=int(cap.get("fresh_cap", 50)),
                old_cap=int(cap.get("old_cap", 50)),
                spill_enabled=bool(cap.get("spill_enabled", True)),
            )
        cal = raw.get("calendar", {})
        if cal:
            calendar = CourtCalendar()
            for d in cal.get("holidays", []):
                calendar.holidays.add(date.fromisoformat(str(d)))
            for judge_id, days in cal.get("judge_leaves", {}).items():
                calendar.judge_leaves[judge_id] = {date.fromisoformat(str(d)) for d in days}
            kwargs["calendar"] = calendar
        aging = raw.get("aging", {})
        if aging.get("enabled", True) is False:
            kwargs["aging"] = None
        elif aging:
            kwargs["aging"] = AgingPolicy(
                threshold_days=int(aging.get("threshold_days", 180)),
                multiplier=float(aging.get("multiplier", 1.25)),
            )
    if args.cases is not None:
        kwargs["n_cases"] = args.cases
    if args.seed is not None:
        kwargs["seed"] = args.seed
    if args.days is not None:
        kwargs["days_to_simulate"] = args.days
    if args.no_aging:
        kwargs["aging"] = None
    return SimConfig(**kwargs)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="docket-sim", description=__doc__)
    parser.add_argument("--cases", type=int, default=None, help="number of synthetic cases")
    parser.add_argument("--seed", type=int, default=None, help="64-bit RNG seed (PCG64)")
    parser.add_argument("--days", type=int, default=None, help="days to simulate")
    parser.add_argument("--config", default=None, help="TOML config file")
    parser.add_argument("--out", default="metrics.json", help="metrics output path")
    parser.add_argument("--assignments-out", default=None,
                        help="assignments NDJSON path (default: alongside --out)")
    parser.add_argument("--no-aging", action="store_true", help="disable the aging boost")
    parser.add_argument("--format", choices=("table", "json"), default="table",
                        help="console report format")
    args = parser.parse_args(argv)

    try:
        config = build_config(args)
        result = run_simulation(config)
    except (DocketError, AssertionError, ValueError) as exc:
        print(f"docket-sim: {exc}", file=sys.stderr)
        return 1

    metrics = result.metrics
    frozen = replace(metrics, runtime_seconds=0.0, operation_timings={})
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(report(frozen, "json") + "\n")

    assignments_path = args.assignments_out or (
        args.out.rsplit(".", 1)[0] + ".assignments.ndjson"
    )
    from .model import canonical_json

    with open(assignments_path, "w", encoding="utf-8") as fh:
        for a in result.assignments:
            fh.write(canonical_json(a.to_dict()) + "\n")

    print(report(metrics, args.format))
    print(f"wrote {args.out} and {assignments_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
