// Thin HTTP client for the docketd API. The UI performs no scoring or
// scheduling itself; every number rendered comes from these calls.

export type Role = "Registrar" | "Judge" | "Admin";

export interface CaseDraft {
  case_id: string;
  case_type: string;
  filing_date: string;
  severity: string;
  priority: string;
  legal_sections: string[];
  hearings: unknown[];
}

export interface DocketRow {
  case_id: string;
  type: string;
  weight: number;
  pool: string;
  sections: string[];
  age_days: number;
}

export interface DocketResponse {
  date: string;
  judge_id: string;
  rows: DocketRow[];
  counts: { fresh: number; old: number; total: number };
  version: number;
}

export interface AssignmentInfo {
  case_id: string;
  date: string;
  pool: string;
  rank: number;
  weight: number;
  judge_id: string;
}

export type DecisionResponse =
  | { disposed: true; disposal_date: string }
  | { assignment: AssignmentInfo };

export interface ApiErrorBody {
  code?: string;
  message?: string;
  details?: Record<string, string>;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ApiErrorBody,
  ) {
    super(body.message ?? `HTTP ${status}`);
  }
}

export class DocketApi {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async request<T>(
    method: string,
    path: string,
    role?: Role,
    body?: unknown,
  ): Promise<T> {
    const headers: Record<string, string> = {};
    if (role) headers["X-Role"] = role;
    if (body !== undefined) headers["Content-Type"] = "application/json";
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json().catch(() => ({}));
    if (!response.ok) {
      throw new ApiError(response.status, payload as ApiErrorBody);
    }
    return payload as T;
  }

  createCase(draft: CaseDraft, asOf: string): Promise<CaseDraft> {
    return this.request("POST", `/cases?as_of=${asOf}`, "Registrar", draft);
  }

  getDocket(judge: string, date: string): Promise<DocketResponse> {
    const q = `judge=${encodeURIComponent(judge)}&date=${date}`;
    return this.request("GET", `/docket?${q}`);
  }

  decide(
    caseId: string,
    action: "Dispose" | "NextHearingAfterDays",
    asOf: string,
    afterDays?: number,
  ): Promise<DecisionResponse> {
    const body: Record<string, unknown> = { action, as_of: asOf };
    if (afterDays !== undefined) body["after_days"] = afterDays;
    return this.request("POST", `/cases/${caseId}/decision`, "Judge", body);
  }

  setHolidays(dates: string[]): Promise<{ holidays: string[] }> {
    return this.request("POST", "/calendar/holidays", "Admin", { dates });
  }
}
