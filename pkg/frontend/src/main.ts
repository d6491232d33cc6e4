/**
 * Single-page calculator app: three modes over (p, prior, FPR), design
 * inputs, the reporting sentence, and the standard curves with the
 * current result highlighted. All numbers come from the service.
 */

import { ApiClient, ApiError, type CalcResponse, type CurvesResponse } from "./api.js";
import { buildChartModel, legendEntries, renderChart } from "./chart.js";
import {
  buildRequest,
  computedField,
  defaultForm,
  editableFields,
  MODE_HASHES,
  MODE_LABELS,
  modeFromHash,
  RequestSequencer,
  validateForm,
  type FormState,
  type FormValues,
} from "./form.js";
import { full, percent, sig } from "./format.js";

type Figure = "fig1" | "fig2" | "fig3";

const api = new ApiClient("");
const state: FormState = defaultForm();
const sequencer = new RequestSequencer();
const curveSequencer = new RequestSequencer();

let lastResult: CalcResponse | null = null;
let activeFigure: Figure = "fig2";
let lastCurves: CurvesResponse | null = null;

function $(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

function input(id: string): HTMLInputElement {
  return $(id) as HTMLInputElement;
}

const FIELD_IDS: Record<keyof FormValues, string> = {
  p: "field-p",
  prior: "field-prior",
  fpr: "field-fpr",
  n: "field-n",
  es: "field-es",
};

function syncModeUi(): void {
  const editable = editableFields(state.mode);
  const computed = computedField(state.mode);
  for (const field of ["p", "prior", "fpr"] as const) {
    const node = input(FIELD_IDS[field]);
    const isEditable = (editable as readonly string[]).includes(field);
    node.disabled = !isEditable;
    node.closest(".field")?.classList.toggle("computed", field === computed);
  }
  for (const radio of document.querySelectorAll<HTMLInputElement>("input[name=mode]")) {
    radio.checked = radio.value === state.mode;
  }
  $("mode-summary").textContent = `computes the ${
    { p: "required p value", prior: "required prior", fpr: "false positive risk" }[computed]
  }`;
  window.location.hash = MODE_HASHES[state.mode];
}

function showErrors(errors: Partial<Record<keyof FormValues, string>>): void {
  for (const field of Object.keys(FIELD_IDS) as (keyof FormValues)[]) {
    const message = errors[field] ?? "";
    const node = $(`error-${field}`);
    node.textContent = message;
    input(FIELD_IDS[field]).classList.toggle("invalid", message !== "");
  }
}

function renderResult(result: CalcResponse): void {
  lastResult = result;
  const rows: [string, number, string][] = [
    ["p value", result.p_value, full(result.p_value)],
    ["prior P(H1)", result.prior, full(result.prior)],
    ["false positive risk", result.fpr, full(result.fpr)],
    ["likelihood ratio L10", result.l10, full(result.l10)],
    ["L01", result.l01, full(result.l01)],
    ["power at alpha 0.05", result.power_at_005, full(result.power_at_005)],
  ];
  const table = $("result-table");
  table.innerHTML = "";
  for (const [label, value, fullText] of rows) {
    const row = document.createElement("tr");
    const name = document.createElement("td");
    name.textContent = label;
    const val = document.createElement("td");
    val.textContent = label === "false positive risk" || label === "prior P(H1)"
      ? `${sig(value)} (${percent(value)})`
      : sig(value, 3);
    val.title = fullText; // full precision on hover
    val.className = "value";
    row.append(name, val);
    table.appendChild(row);
  }
  const computed = computedField(state.mode);
  const computedValue = { p: result.p_value, prior: result.prior, fpr: result.fpr }[computed];
  const display = input(FIELD_IDS[computed]);
  display.value = sig(computedValue, 4);
  display.title = full(computedValue);
  $("statement").textContent = result.statement;
  $("result-notes").textContent = result.notes.join("; ");
  $("result-panel").classList.remove("empty");
  void refreshCurves();
}

async function submit(): Promise<void> {
  const errors = validateForm(state);
  showErrors(errors);
  if (Object.keys(errors).length > 0) return; // nothing sent to the service
  const id = sequencer.next();
  $("submit").setAttribute("aria-busy", "true");
  try {
    const result = await api.calc(buildRequest(state));
    if (!sequencer.isCurrent(id)) return; // stale response discarded
    renderResult(result);
  } catch (error) {
    if (!sequencer.isCurrent(id)) return;
    if (error instanceof ApiError) {
      const field = fieldForErrorCode(error.code);
      if (field) {
        showErrors({ [field]: error.message });
      } else {
        $("statement").textContent = `service error [${error.code}]: ${error.message}`;
      }
    } else {
      $("statement").textContent = "the calculation service is unreachable";
    }
  } finally {
    $("submit").removeAttribute("aria-busy");
  }
}

function fieldForErrorCode(code: string): keyof FormValues | null {
  switch (code) {
    case "bad_p":
    case "sellke_berger_range":
      return "p";
    case "bad_prior":
      return "prior";
    case "bad_fpr":
    case "no_solution":
      return "fpr";
    default:
      return null;
  }
}

function currentPointFor(figure: Figure): { x: number; y: number } | null {
  if (!lastResult) return null;
  const r = lastResult;
  switch (figure) {
    case "fig1":
      return { x: r.request.effect_size_normalized, y: r.fpr };
    case "fig2":
      return { x: r.request.n_per_group, y: r.fpr };
    case "fig3":
      return { x: r.p_value, y: r.fpr };
  }
}

async function refreshCurves(): Promise<void> {
  const id = curveSequencer.next();
  const figure = activeFigure;
  const params: Record<string, number> = {};
  if (lastResult) {
    if (figure === "fig2") {
      params.p = lastResult.p_value;
      params.prior = lastResult.prior;
      params.es = lastResult.request.effect_size_normalized;
    } else if (figure === "fig3") {
      params.prior = lastResult.prior;
      params.n = lastResult.request.n_per_group;
      params.es = lastResult.request.effect_size_normalized;
    } else {
      params.p = lastResult.p_value;
      params.prior = lastResult.prior;
    }
  }
  try {
    const response = await api.curves(figure, params);
    if (!curveSequencer.isCurrent(id) || figure !== activeFigure) return;
    lastCurves = response;
    drawCurves(response);
    $("chart-error").textContent = "";
  } catch (error) {
    if (!curveSequencer.isCurrent(id)) return;
    // keep the previous chart; just surface the failure
    $("chart-error").textContent = error instanceof ApiError
      ? `curve request rejected [${error.code}]: ${error.message}`
      : "curve service unreachable";
    if (!lastCurves) {
      $("chart-host").innerHTML = "<p class='empty-chart'>no curve data yet</p>";
    }
  }
}

function drawCurves(response: CurvesResponse): void {
  const model = buildChartModel(response, currentPointFor(activeFigure));
  const host = $("chart-host");
  host.innerHTML = "";
  host.appendChild(renderChart(model));
  const legend = $("chart-legend");
  legend.innerHTML = "";
  for (const entry of legendEntries(model)) {
    const item = document.createElement("span");
    item.className = "legend-item";
    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.background = entry.color;
    item.append(swatch, document.createTextNode(entry.name));
    legend.appendChild(item);
  }
  if (response.minimum) {
    $("chart-note").textContent =
      `evidence against the null is weakest near the dip; ` +
      `minimum FPR ${sig(response.minimum.fpr, 3)} at n = ${response.minimum.n}`;
  } else {
    $("chart-note").textContent = "";
  }
}

function wire(): void {
  state.mode = modeFromHash(window.location.hash);
  for (const radio of document.querySelectorAll<HTMLInputElement>("input[name=mode]")) {
    radio.addEventListener("change", () => {
      state.mode = radio.value as FormState["mode"];
      // entered values persist across mode switches; only editability changes
      syncModeUi();
      showErrors({});
    });
  }
  for (const [field, id] of Object.entries(FIELD_IDS) as [keyof FormValues, string][]) {
    input(id).value = state.values[field];
    input(id).addEventListener("input", () => {
      state.values[field] = input(id).value;
    });
  }
  ($("field-method") as HTMLSelectElement).addEventListener("change", () => {
    state.method = ($("field-method") as HTMLSelectElement).value as FormState["method"];
  });
  $("calc-form").addEventListener("submit", (event) => {
    event.preventDefault();
    void submit();
  });
  for (const tab of document.querySelectorAll<HTMLButtonElement>(".fig-tab")) {
    tab.addEventListener("click", () => {
      activeFigure = tab.dataset.figure as Figure;
      for (const other of document.querySelectorAll(".fig-tab")) {
        other.classList.toggle("active", other === tab);
      }
      void refreshCurves();
    });
  }
  window.addEventListener("hashchange", () => {
    const mode = modeFromHash(window.location.hash);
    if (mode !== state.mode) {
      state.mode = mode;
      syncModeUi();
    }
  });
  syncModeUi();
  void refreshCurves();
}

document.addEventListener("DOMContentLoaded", wire);
