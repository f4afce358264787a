import { describe, expect, it } from "vitest";

import { ApiError, DocketApi } from "../src/api.js";
import {
  RegistrarForm,
  formToDraft,
  localValidate,
  serverErrorsToFields,
  submitCase,
} from "../src/registrar.js";
import { mockFetch } from "./helpers.js";

// Reference family case: Medium severity/priority, filed 2024-06-01.
const case003: RegistrarForm = {
  caseId: "003",
  caseType: "Family",
  filingDate: "2024-06-01",
  severity: "Medium",
  priority: "Medium",
  sectionsText: "HMA-1955:13\n",
};

describe("formToDraft", () => {
  it("maps form fields 1:1 onto the case draft", () => {
    expect(formToDraft(case003)).toEqual({
      case_id: "003",
      case_type: "Family",
      filing_date: "2024-06-01",
      severity: "Medium",
      priority: "Medium",
      legal_sections: ["HMA-1955:13"],
      hearings: [],
    });
  });

  it("splits multi-line sections and drops blanks", () => {
    const draft = formToDraft({ ...case003, sectionsText: "IPC:302\n\n  IPC:34  \n" });
    expect(draft.legal_sections).toEqual(["IPC:302", "IPC:34"]);
  });
});

describe("localValidate", () => {
  it("flags a blank filing date", () => {
    expect(localValidate({ ...case003, filingDate: "" })).toEqual({
      filingDate: "required",
    });
  });

  it("passes a complete form", () => {
    expect(localValidate(case003)).toEqual({});
  });
});

describe("submitCase", () => {
  it("creates case 003 via POST /cases", async () => {
    const { fetchImpl, requests } = mockFetch(() => ({
      status: 201,
      body: formToDraft(case003),
    }));
    const api = new DocketApi("", fetchImpl);
    const result = await submitCase(api, case003, "2025-07-01");
    expect(result).toEqual({ created: true, caseId: "003" });
    expect(requests).toHaveLength(1);
    const req = requests[0]!;
    expect(req.method).toBe("POST");
    expect(req.url).toBe("/cases?as_of=2025-07-01");
    expect(req.headers["X-Role"]).toBe("Registrar");
    expect(req.body).toEqual(formToDraft(case003));
  });

  it("renders server validation errors against the offending field", async () => {
    const { fetchImpl } = mockFetch(() => ({
      status: 400,
      body: {
        code: "ValidationFailed",
        message: "case failed validation",
        details: { filing_date: "filing date is in the future" },
      },
    }));
    const api = new DocketApi("", fetchImpl);
    const result = await submitCase(api, { ...case003, filingDate: "2099-01-01" }, "2025-07-01");
    expect(result.created).toBe(false);
    expect(result.errors).toEqual({ filingDate: "filing date is in the future" });
  });

  it("pins a duplicate-id conflict to the case id field", async () => {
    const { fetchImpl } = mockFetch(() => ({
      status: 409,
      body: { code: "DuplicateCaseId", message: "case 003 already exists" },
    }));
    const api = new DocketApi("", fetchImpl);
    const result = await submitCase(api, case003, "2025-07-01");
    expect(result.errors).toEqual({ caseId: "case 003 already exists" });
  });

  it("does not call the API when local validation fails", async () => {
    const { fetchImpl, requests } = mockFetch(() => ({ body: {} }));
    const api = new DocketApi("", fetchImpl);
    await submitCase(api, { ...case003, caseId: "  " }, "2025-07-01");
    expect(requests).toHaveLength(0);
  });
});

describe("serverErrorsToFields", () => {
  it("maps draft keys to form fields", () => {
    const error = new ApiError(400, {
      details: { case_id: "bad id", legal_sections: "unparsable" },
    });
    expect(serverErrorsToFields(error)).toEqual({
      caseId: "bad id",
      sectionsText: "unparsable",
    });
  });
});
