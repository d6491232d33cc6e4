/**
 * Curve charts: a pure model layer (testable without a browser) and a
 * thin SVG renderer. Fig2/fig3 draw on log-log axes; fig3 carries the
 * fpr = p reference line; fig2 marks the minimum with its tooltip.
 */

import type { CurvesResponse } from "./api.js";
import { sig, full } from "./format.js";
import { dataExtent, linearScale, logScale, type Scale } from "./scale.js";

export interface SeriesModel {
  name: string;
  points: [number, number][];
  reference: boolean; // drawn dashed (the fpr = p identity line)
}

export interface MarkerModel {
  x: number;
  y: number;
  tooltip: string;
  kind: "minimum" | "current";
}

export interface ChartModel {
  figure: string;
  xLabel: string;
  yLabel: string;
  logX: boolean;
  logY: boolean;
  series: SeriesModel[];
  markers: MarkerModel[];
}

const X_LABELS: Record<string, string> = {
  fig1: "normalized effect size",
  fig2: "n per group",
  fig3: "observed p value",
};

/** Build the chart model from a curves response. */
export function buildChartModel(
  response: CurvesResponse,
  current?: { x: number; y: number } | null,
): ChartModel {
  const figure = response.figure;
  const logAxes = figure !== "fig1";
  const series: SeriesModel[] = response.series.map((s) => ({
    name: s.name,
    points: s.points,
    reference: s.name === "identity",
  }));
  const markers: MarkerModel[] = [];
  if (response.minimum) {
    markers.push({
      x: response.minimum.n,
      y: response.minimum.fpr,
      tooltip: minimumTooltip(response.minimum),
      kind: "minimum",
    });
  }
  if (current) {
    markers.push({
      x: current.x,
      y: current.y,
      tooltip: `your result: FPR = ${sig(current.y)} at ${X_LABELS[figure]} = ${sig(
        current.x, 4,
      )}`,
      kind: "current",
    });
  }
  return {
    figure,
    xLabel: X_LABELS[figure] ?? "x",
    yLabel: "false positive risk",
    logX: logAxes,
    logY: logAxes,
    series,
    markers,
  };
}

export function minimumTooltip(minimum: { n: number; fpr: number }): string {
  return `minimum: n = ${minimum.n}, FPR = ${sig(minimum.fpr, 3)}`;
}

const WIDTH = 640;
const HEIGHT = 360;
const MARGIN = { left: 58, right: 16, top: 12, bottom: 40 };

const SERIES_COLORS: Record<string, string> = {
  p_equals: "#1c5fae",
  p_less_than: "#7aa6d6",
  sellke_berger: "#b3552f",
  goodman: "#2e8b57",
  identity: "#c03030",
};

function makeScales(model: ChartModel): { sx: Scale; sy: Scale } {
  const xs = model.series.flatMap((s) => s.points.map((p) => p[0]))
    .concat(model.markers.map((m) => m.x));
  const ys = model.series.flatMap((s) => s.points.map((p) => p[1]))
    .concat(model.markers.map((m) => m.y));
  const [x0, x1] = dataExtent(xs, model.logX);
  const [y0, y1] = dataExtent(ys, model.logY);
  const sx = model.logX
    ? logScale(x0, x1, MARGIN.left, WIDTH - MARGIN.right)
    : linearScale(x0, x1, MARGIN.left, WIDTH - MARGIN.right);
  const sy = model.logY
    ? logScale(y0, y1, HEIGHT - MARGIN.bottom, MARGIN.top)
    : linearScale(y0, y1, HEIGHT - MARGIN.bottom, MARGIN.top);
  return { sx, sy };
}

const SVG_NS = "http://www.w3.org/2000/svg";

function el(name: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

/** Render the model into a fresh <svg> element. */
export function renderChart(model: ChartModel): SVGElement {
  const { sx, sy } = makeScales(model);
  const svg = el("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "chart",
    role: "img",
  });

  for (const tick of sx.ticks()) {
    const px = sx.toPixel(tick);
    svg.appendChild(el("line", {
      x1: String(px), x2: String(px),
      y1: String(MARGIN.top), y2: String(HEIGHT - MARGIN.bottom),
      class: "grid",
    }));
    const label = el("text", {
      x: String(px), y: String(HEIGHT - MARGIN.bottom + 16),
      class: "tick", "text-anchor": "middle",
    });
    label.textContent = sig(tick, 3);
    svg.appendChild(label);
  }
  for (const tick of sy.ticks()) {
    const py = sy.toPixel(tick);
    svg.appendChild(el("line", {
      x1: String(MARGIN.left), x2: String(WIDTH - MARGIN.right),
      y1: String(py), y2: String(py),
      class: "grid",
    }));
    const label = el("text", {
      x: String(MARGIN.left - 6), y: String(py + 4),
      class: "tick", "text-anchor": "end",
    });
    label.textContent = sig(tick, 3);
    svg.appendChild(label);
  }

  const xTitle = el("text", {
    x: String((MARGIN.left + WIDTH - MARGIN.right) / 2),
    y: String(HEIGHT - 6),
    class: "axis-title", "text-anchor": "middle",
  });
  xTitle.textContent = model.xLabel + (model.logX ? " (log)" : "");
  svg.appendChild(xTitle);
  const yTitle = el("text", {
    x: "14", y: String((MARGIN.top + HEIGHT - MARGIN.bottom) / 2),
    class: "axis-title", "text-anchor": "middle",
    transform: `rotate(-90 14 ${(MARGIN.top + HEIGHT - MARGIN.bottom) / 2})`,
  });
  yTitle.textContent = model.yLabel + (model.logY ? " (log)" : "");
  svg.appendChild(yTitle);

  for (const series of model.series) {
    const path = series.points
      .filter(([x, y]) => (!model.logX || x > 0) && (!model.logY || y > 0))
      .map(([x, y], i) => `${i === 0 ? "M" : "L"}${sx.toPixel(x).toFixed(2)} ${sy
        .toPixel(y).toFixed(2)}`)
      .join(" ");
    const node = el("path", {
      d: path,
      fill: "none",
      stroke: SERIES_COLORS[series.name] ?? "#555",
      "stroke-width": series.reference ? "1" : "2",
      class: series.reference ? "series reference" : "series",
      "data-series": series.name,
    });
    if (series.reference) node.setAttribute("stroke-dasharray", "5 4");
    svg.appendChild(node);
  }

  for (const marker of model.markers) {
    const cx = sx.toPixel(marker.x);
    const cy = sy.toPixel(marker.y);
    const dot = el("circle", {
      cx: String(cx), cy: String(cy),
      r: marker.kind === "current" ? "6" : "5",
      class: `marker ${marker.kind}`,
      "data-tooltip": marker.tooltip,
    });
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = marker.tooltip;
    dot.appendChild(title);
    svg.appendChild(dot);
  }

  return svg;
}

/** Legend entries (name + color) for the rendered series. */
export function legendEntries(model: ChartModel): { name: string; color: string }[] {
  return model.series.map((s) => ({
    name: s.name.replace(/_/g, "-"),
    color: SERIES_COLORS[s.name] ?? "#555",
  }));
}

export { full as fullPrecision };
