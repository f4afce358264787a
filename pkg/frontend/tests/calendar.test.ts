import { describe, expect, it } from "vitest";

import { DocketApi } from "../src/api.js";
import { parseDateList, uploadHolidays } from "../src/calendar.js";
import { mockFetch } from "./helpers.js";

describe("parseDateList", () => {
  it("accepts ISO dates and skips comments and blanks", () => {
    const text = "2025-08-15\n\n# independence day\n2025-10-02\n";
    expect(parseDateList(text)).toEqual({
      dates: ["2025-08-15", "2025-10-02"],
      errors: [],
    });
  });

  it("reports malformed lines with their line number", () => {
    const parsed = parseDateList("2025-08-15\n15/08/2025\n");
    expect(parsed.dates).toEqual(["2025-08-15"]);
    expect(parsed.errors).toEqual(["line 2: not an ISO date: 15/08/2025"]);
  });
});

describe("uploadHolidays", () => {
  it("posts as Admin and reports the configured count", async () => {
    const { fetchImpl, requests } = mockFetch(() => ({
      body: { holidays: ["2025-08-15", "2025-10-02"] },
    }));
    const api = new DocketApi("", fetchImpl);
    const result = await uploadHolidays(api, "2025-08-15\n2025-10-02\n");
    expect(result).toEqual({ uploaded: 2, errors: [] });
    expect(requests[0]!.headers["X-Role"]).toBe("Admin");
    expect(requests[0]!.body).toEqual({ dates: ["2025-08-15", "2025-10-02"] });
  });

  it("refuses to upload when any line is malformed", async () => {
    const { fetchImpl, requests } = mockFetch(() => ({ body: {} }));
    const api = new DocketApi("", fetchImpl);
    const result = await uploadHolidays(api, "yesterday\n");
    expect(result.uploaded).toBe(0);
    expect(result.errors).toHaveLength(1);
    expect(requests).toHaveLength(0);
  });
});
