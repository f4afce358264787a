// DOM wiring for the three screens. All decision and display logic lives in
// registrar.ts / docket.ts / calendar.ts so it can be tested without a DOM.

import { DocketApi } from "./api.js";
import { RegistrarForm, submitCase } from "./registrar.js";
import { DocketViewModel, applyDecision, countsStrip, isStale, toViewModel } from "./docket.js";
import { uploadHolidays } from "./calendar.js";

const api = new DocketApi("");

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function today(): string {
  return new Date().toISOString().slice(0, 10);
}

function readRegistrarForm(): RegistrarForm {
  return {
    caseId: el<HTMLInputElement>("case-id").value,
    caseType: el<HTMLSelectElement>("case-type").value,
    filingDate: el<HTMLInputElement>("filing-date").value,
    severity: el<HTMLSelectElement>("severity").value,
    priority: el<HTMLSelectElement>("priority").value,
    sectionsText: el<HTMLTextAreaElement>("sections").value,
  };
}

async function onRegistrarSubmit(event: Event): Promise<void> {
  event.preventDefault();
  for (const node of document.querySelectorAll(".field-error")) node.textContent = "";
  const result = await submitCase(api, readRegistrarForm(), today());
  if (result.created) {
    el("registrar-status").textContent = `Created case ${result.caseId}`;
    (el("registrar-form") as HTMLFormElement).reset();
    return;
  }
  for (const [field, message] of Object.entries(result.errors ?? {})) {
    const slot = document.getElementById(`error-${field}`);
    if (slot) slot.textContent = message;
  }
}

let currentDocket: DocketViewModel | null = null;

function renderDocket(vm: DocketViewModel): void {
  currentDocket = vm;
  el("counts-strip").textContent = countsStrip(vm);
  el("docket-banner").textContent = vm.banner ?? "";
  const tbody = el<HTMLTableSectionElement>("docket-rows");
  tbody.replaceChildren();
  for (const row of vm.rows) {
    const tr = document.createElement("tr");
    tr.innerHTML =
      `<td>${row.case_id}</td><td>${row.type}</td><td>${row.weight.toFixed(4)}</td>` +
      `<td>${row.pool}</td><td>${row.sections.join(", ")}</td><td>${row.age_days}</td>` +
      `<td><input type="number" value="15" min="1" class="after-days"> ` +
      `<button data-action="after" data-case="${row.case_id}">Next hearing</button> ` +
      `<button data-action="dispose" data-case="${row.case_id}">Dispose</button></td>`;
    tbody.appendChild(tr);
  }
}

async function onLoadDocket(): Promise<void> {
  const judge = el<HTMLInputElement>("judge-id").value;
  const date = el<HTMLInputElement>("docket-date").value;
  renderDocket(toViewModel(await api.getDocket(judge, date)));
}

async function onDocketClick(event: Event): Promise<void> {
  const target = event.target as HTMLElement;
  const caseId = target.dataset["case"];
  if (!caseId || !currentDocket) return;
  if (await isStale(api, currentDocket)) {
    await onLoadDocket();
  }
  if (!currentDocket) return;
  const action = target.dataset["action"] === "dispose" ? "Dispose" : "NextHearingAfterDays";
  const daysInput = target.parentElement?.querySelector<HTMLInputElement>(".after-days");
  const afterDays = action === "NextHearingAfterDays" ? Number(daysInput?.value ?? 15) : undefined;
  const outcome = await applyDecision(api, currentDocket, caseId, action, afterDays);
  renderDocket(outcome.vm);
  el("docket-toast").textContent = outcome.message;
}

async function onUploadHolidays(): Promise<void> {
  const text = el<HTMLTextAreaElement>("holiday-list").value;
  const result = await uploadHolidays(api, text);
  el("calendar-status").textContent = result.errors.length
    ? result.errors.join("; ")
    : `${result.uploaded} holidays configured`;
}

export function boot(): void {
  el("registrar-form").addEventListener("submit", onRegistrarSubmit);
  el("load-docket").addEventListener("click", onLoadDocket);
  el("docket-rows").addEventListener("click", onDocketClick);
  el("upload-holidays").addEventListener("click", onUploadHolidays);
  el<HTMLInputElement>("docket-date").value = today();
}

if (typeof document !== "undefined" && document.readyState !== "loading") {
  boot();
} else if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", boot);
}
