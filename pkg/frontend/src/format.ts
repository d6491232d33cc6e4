/**
 * Display formatting: 2 significant figures in the panels (hover titles
 * carry full precision), percentages for probabilities where natural.
 */

export function sig(value: number, digits = 2): string {
  if (!Number.isFinite(value)) return String(value);
  if (value === 0) return "0";
  const formatted = value.toPrecision(digits);
  // strip exponent notation for mid-range magnitudes
  const abs = Math.abs(value);
  if (abs >= 1e-4 && abs < 1e6) {
    return String(Number(formatted));
  }
  return formatted;
}

export function percent(value: number, digits = 2): string {
  return `${sig(100 * value, digits)}%`;
}

/** Full-precision string for title/hover attributes. */
export function full(value: number): string {
  return String(value);
}
