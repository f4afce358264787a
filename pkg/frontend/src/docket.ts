// Judge Docket screen logic: building the view model from the API response
// and applying decision results back onto it.

import {
  ApiError,
  DecisionResponse,
  DocketApi,
  DocketResponse,
  DocketRow,
} from "./api.js";

export interface DocketViewModel {
  date: string;
  judgeId: string;
  rows: DocketRow[];
  counts: { fresh: number; old: number; total: number };
  version: number;
  banner?: string;
}

export function toViewModel(response: DocketResponse): DocketViewModel {
  // Thin-client rule: counts come from the server, but we refuse to render
  // a response whose counts disagree with its own rows.
  if (response.counts.total !== response.rows.length) {
    throw new Error(
      `docket counts out of sync: total=${response.counts.total} rows=${response.rows.length}`,
    );
  }
  return {
    date: response.date,
    judgeId: response.judge_id,
    rows: response.rows,
    counts: response.counts,
    version: response.version,
  };
}

export function countsStrip(vm: DocketViewModel): string {
  return `Fresh ${vm.counts.fresh} · Old ${vm.counts.old} · Total ${vm.counts.total}`;
}

export interface DecisionOutcome {
  vm: DocketViewModel;
  message: string;
}

// Optimistic update: remove or annotate the row, then reconcile with the
// server response. A conflict leaves the docket untouched.
export async function applyDecision(
  api: DocketApi,
  vm: DocketViewModel,
  caseId: string,
  action: "Dispose" | "NextHearingAfterDays",
  afterDays?: number,
): Promise<DecisionOutcome> {
  let response: DecisionResponse;
  try {
    response = await api.decide(caseId, action, vm.date, afterDays);
  } catch (err) {
    if (err instanceof ApiError) {
      return { vm: { ...vm, banner: err.body.message ?? `HTTP ${err.status}` }, message: "" };
    }
    throw err;
  }
  const rows = vm.rows.filter((r) => r.case_id !== caseId);
  const removed = rows.length < vm.rows.length;
  const row = vm.rows.find((r) => r.case_id === caseId);
  const freshDelta = removed && row?.pool === "Fresh" ? 1 : 0;
  const oldDelta = removed && row?.pool === "Old" ? 1 : 0;
  const next: DocketViewModel = {
    ...vm,
    rows,
    counts: {
      fresh: vm.counts.fresh - freshDelta,
      old: vm.counts.old - oldDelta,
      total: vm.counts.total - (removed ? 1 : 0),
    },
    banner: undefined,
  };
  if ("disposed" in response) {
    return { vm: next, message: `Case ${caseId} disposed on ${response.disposal_date}` };
  }
  return {
    vm: next,
    message: `Case ${caseId} next hearing on ${response.assignment.date}`,
  };
}

// Stale-docket detection: the version field on GET /docket advances with
// every store mutation, so a changed version means our rows may be outdated.
export async function isStale(api: DocketApi, vm: DocketViewModel): Promise<boolean> {
  const latest = await api.getDocket(vm.judgeId, vm.date);
  return latest.version !== vm.version;
}
