/**
 * Axis scales and tick generation for the SVG charts (pure math, no DOM).
 */

export interface Scale {
  toPixel(value: number): number;
  ticks(): number[];
  readonly kind: "linear" | "log";
}

export function linearScale(
  lo: number,
  hi: number,
  pixelLo: number,
  pixelHi: number,
): Scale {
  const span = hi - lo;
  return {
    kind: "linear",
    toPixel(value: number): number {
      return pixelLo + ((value - lo) / span) * (pixelHi - pixelLo);
    },
    ticks(): number[] {
      const step = niceStep(span / 5);
      const first = Math.ceil(lo / step) * step;
      const out: number[] = [];
      for (let v = first; v <= hi + 1e-12 * Math.abs(span); v += step) {
        out.push(round12(v));
      }
      return out;
    },
  };
}

export function logScale(
  lo: number,
  hi: number,
  pixelLo: number,
  pixelHi: number,
): Scale {
  if (!(lo > 0 && hi > lo)) {
    throw new Error(`log scale needs 0 < lo < hi, got [${lo}, ${hi}]`);
  }
  const llo = Math.log10(lo);
  const lhi = Math.log10(hi);
  return {
    kind: "log",
    toPixel(value: number): number {
      return pixelLo + ((Math.log10(value) - llo) / (lhi - llo)) * (pixelHi - pixelLo);
    },
    ticks(): number[] {
      // Number("1e-4") parses the decimal literal; 10 ** -4 is one ulp off.
      const decade = (e: number): number => Number(`1e${e}`);
      const out: number[] = [];
      for (let e = Math.ceil(llo - 1e-9); e <= Math.floor(lhi + 1e-9); e += 1) {
        out.push(decade(e));
      }
      // a sparse decade axis gets 1-2-5 subdivisions
      if (out.length <= 2) {
        const fine: number[] = [];
        for (let e = Math.floor(llo) - 1; e <= Math.ceil(lhi); e += 1) {
          for (const m of [1, 2, 5]) {
            const v = m * decade(e);
            if (v >= lo * (1 - 1e-9) && v <= hi * (1 + 1e-9)) fine.push(v);
          }
        }
        return fine;
      }
      return out;
    },
  };
}

function niceStep(rough: number): number {
  const power = 10 ** Math.floor(Math.log10(rough));
  const unit = rough / power;
  if (unit <= 1) return power;
  if (unit <= 2) return 2 * power;
  if (unit <= 5) return 5 * power;
  return 10 * power;
}

function round12(v: number): number {
  return Number(v.toPrecision(12));
}

/** Padded [min, max] of a data range, in log or linear space. */
export function dataExtent(values: number[], log: boolean): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (log && !(v > 0)) continue;
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!(lo < hi)) {
    hi = lo > 0 ? lo * 2 : lo + 1;
    lo = log ? lo / 2 : lo - 1;
  }
  if (log) {
    return [lo / 1.15, hi * 1.15];
  }
  const pad = 0.05 * (hi - lo);
  return [lo - pad, hi + pad];
}
