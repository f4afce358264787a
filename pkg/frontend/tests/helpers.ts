// Shared mock-fetch plumbing: the thin-client rule says every number the UI
// shows comes from the API, so the tests stub fetch and record each request.

export interface RecordedRequest {
  url: string;
  method: string;
  headers: Record<string, string>;
  body?: unknown;
}

export interface CannedResponse {
  status?: number;
  body: unknown;
}

export function mockFetch(
  responder: (req: RecordedRequest) => CannedResponse,
): { fetchImpl: typeof fetch; requests: RecordedRequest[] } {
  const requests: RecordedRequest[] = [];
  const fetchImpl = (async (input: RequestInfo | URL, init?: RequestInit) => {
    const req: RecordedRequest = {
      url: String(input),
      method: init?.method ?? "GET",
      headers: (init?.headers as Record<string, string>) ?? {},
      body: init?.body ? JSON.parse(String(init.body)) : undefined,
    };
    requests.push(req);
    const canned = responder(req);
    const status = canned.status ?? 200;
    return {
      ok: status < 400,
      status,
      json: async () => canned.body,
    } as Response;
  }) as typeof fetch;
  return { fetchImpl, requests };
}
