/**
 * Calculator form state: which of {p, prior, FPR} is computed, which are
 * entered, and client-side validation mirroring the service's ranges.
 */

import type { CalcRequest, Method, Mode } from "./api.js";

export interface FormValues {
  p: string;
  prior: string;
  fpr: string;
  n: string;
  es: string;
}

export interface FormState {
  mode: Mode;
  method: Method;
  values: FormValues;
}

export const MODE_LABELS: Record<Mode, string> = {
  fpr_from_p_prior: "false positive risk from (p, prior)",
  p_from_fpr_prior: "required p from (FPR, prior)",
  prior_from_p_fpr: "required prior from (p, FPR)",
};

export const MODE_HASHES: Record<Mode, string> = {
  fpr_from_p_prior: "#fpr",
  p_from_fpr_prior: "#p",
  prior_from_p_fpr: "#prior",
};

export function modeFromHash(hash: string): Mode {
  for (const [mode, h] of Object.entries(MODE_HASHES) as [Mode, string][]) {
    if (h === hash) return mode;
  }
  return "fpr_from_p_prior";
}

/** The two triple fields a mode takes as input (the third is computed). */
export function editableFields(mode: Mode): ["p" | "prior" | "fpr", "p" | "prior" | "fpr"] {
  switch (mode) {
    case "fpr_from_p_prior":
      return ["p", "prior"];
    case "p_from_fpr_prior":
      return ["fpr", "prior"];
    case "prior_from_p_fpr":
      return ["p", "fpr"];
  }
}

export function computedField(mode: Mode): "p" | "prior" | "fpr" {
  switch (mode) {
    case "fpr_from_p_prior":
      return "fpr";
    case "p_from_fpr_prior":
      return "p";
    case "prior_from_p_fpr":
      return "prior";
  }
}

export function defaultForm(): FormState {
  return {
    mode: "fpr_from_p_prior",
    method: "p_equals",
    values: { p: "0.05", prior: "0.5", fpr: "0.05", n: "16", es: "1" },
  };
}

const E_INV = 1 / Math.E;

function parseNumber(raw: string): number | null {
  const trimmed = raw.trim();
  if (trimmed === "") return null;
  const value = Number(trimmed);
  return Number.isFinite(value) ? value : null;
}

/** Per-field validation; ranges match what the service enforces. */
export function validateField(
  field: keyof FormValues,
  raw: string,
  state: FormState,
): string | null {
  const value = parseNumber(raw);
  if (value === null) return "enter a number";
  switch (field) {
    case "p":
      if (!(value > 0 && value < 1)) return "p must be in (0, 1)";
      if (state.method === "sellke_berger" && value >= E_INV) {
        return "this bound needs p < 1/e (about 0.3679)";
      }
      return null;
    case "fpr":
      if (!(value > 0 && value < 1)) return "FPR must be in (0, 1)";
      return null;
    case "prior":
      if (state.mode === "fpr_from_p_prior") {
        if (!(value >= 0 && value <= 1)) return "prior must be in [0, 1]";
      } else if (!(value > 0 && value < 1)) {
        return "prior must be in (0, 1) for this mode";
      }
      return null;
    case "n":
      if (!(value >= 2)) return "need at least 2 per group";
      return null;
    case "es":
      if (!(value > 0)) return "effect size must be > 0";
      return null;
  }
}

export type ValidationErrors = Partial<Record<keyof FormValues, string>>;

/** Validate everything the current mode needs; {} means submittable. */
export function validateForm(state: FormState): ValidationErrors {
  const errors: ValidationErrors = {};
  const fields: (keyof FormValues)[] = [...editableFields(state.mode), "n", "es"];
  for (const field of fields) {
    const message = validateField(field, state.values[field], state);
    if (message) errors[field] = message;
  }
  return errors;
}

/** Build the service request; call only when validateForm returned {}. */
export function buildRequest(state: FormState): CalcRequest {
  const request: CalcRequest = {
    mode: state.mode,
    method: state.method,
    n_per_group: Number(state.values.n),
    effect_size_normalized: Number(state.values.es),
  };
  for (const field of editableFields(state.mode)) {
    const value = Number(state.values[field]);
    if (field === "p") request.p_value = value;
    else if (field === "prior") request.prior = value;
    else request.fpr = value;
  }
  return request;
}

/**
 * Latest-wins request sequencing: submissions get increasing ids and
 * only the newest id may apply its response.
 */
export class RequestSequencer {
  private issued = 0;

  next(): number {
    this.issued += 1;
    return this.issued;
  }

  isCurrent(id: number): boolean {
    return id === this.issued;
  }
}
