// Registrar Entry screen logic: mapping form fields to the case draft JSON
// and turning server validation errors into per-field messages.

import { ApiError, CaseDraft, DocketApi } from "./api.js";

export interface RegistrarForm {
  caseId: string;
  caseType: string;
  filingDate: string;
  severity: string;
  priority: string;
  // one canonical "STATUTE:SECTION" reference per line
  sectionsText: string;
}

export type FieldErrors = Partial<Record<keyof RegistrarForm, string>>;

export function formToDraft(form: RegistrarForm): CaseDraft {
  const sections = form.sectionsText
    .split("\n")
    .map((line) => line.trim())
    .filter((line) => line.length > 0);
  return {
    case_id: form.caseId.trim(),
    case_type: form.caseType,
    filing_date: form.filingDate,
    severity: form.severity,
    priority: form.priority,
    legal_sections: sections,
    hearings: [],
  };
}

// Local checks mirror only what is needed for inline hints; the server
// remains the authority and its error bodies are rendered verbatim.
export function localValidate(form: RegistrarForm): FieldErrors {
  const errors: FieldErrors = {};
  if (!form.caseId.trim()) errors.caseId = "required";
  if (!form.filingDate) errors.filingDate = "required";
  return errors;
}

const FIELD_BY_DRAFT_KEY: Record<string, keyof RegistrarForm> = {
  case_id: "caseId",
  case_type: "caseType",
  filing_date: "filingDate",
  severity: "severity",
  priority: "priority",
  legal_sections: "sectionsText",
};

export function serverErrorsToFields(error: ApiError): FieldErrors {
  const errors: FieldErrors = {};
  for (const [key, message] of Object.entries(error.body.details ?? {})) {
    const field = FIELD_BY_DRAFT_KEY[key];
    if (field) errors[field] = message;
  }
  if (Object.keys(errors).length === 0) {
    // e.g. a 409 duplicate id has no field map; pin it to the case id
    errors.caseId = error.body.message ?? `HTTP ${error.status}`;
  }
  return errors;
}

export interface SubmitResult {
  created: boolean;
  caseId?: string;
  errors?: FieldErrors;
}

export async function submitCase(
  api: DocketApi,
  form: RegistrarForm,
  asOf: string,
): Promise<SubmitResult> {
  const local = localValidate(form);
  if (Object.keys(local).length > 0) {
    return { created: false, errors: local };
  }
  try {
    const created = await api.createCase(formToDraft(form), asOf);
    return { created: true, caseId: created.case_id };
  } catch (err) {
    if (err instanceof ApiError) {
      return { created: false, errors: serverErrorsToFields(err) };
    }
    throw err;
  }
}
