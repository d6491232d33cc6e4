"""Generators for the false-positive-risk curves.

Three curve families, matching the package's standard figures:

* fig1 -- FPR against normalized effect size at constant power, with the
  per-group n re-solved for every effect size (both the p-equals and the
  p-less-than calibrations).
* fig2 -- FPR against n at fixed effect size (p-equals), including the
  location of the minimum over integer n, where the evidence against the
  null is weakest before large samples turn a fixed p into evidence for
  the null.
* fig3 -- FPR against the observed p value for the p-equals, Sellke-Berger
  and Goodman calibrations, plus the fpr = p identity reference.

Series serialize to self-describing CSV (one file per series).
"""

import io
import math
from dataclasses import dataclass, field

from . import core
from .core import StudyDesign
from .errors import DomainError, NoSolutionError
from .rootfind import brent, expand_bracket

CSV_COLUMNS = ("x", "fpr", "method", "p", "prior", "power", "n", "es")

_N_MAX = 1e7


@dataclass(frozen=True)
class CurveSeries:
    """A named (x, fpr) series with the fixed parameters that produced it.

    ``aux`` holds per-point columns that vary along the series (for
    example the solved n in the constant-power curve); fixed values live
    in ``params``.
    """

    name: str
    x_label: str
    points: tuple
    params: dict = field(default_factory=dict)
    aux: dict = field(default_factory=dict)

    def __post_init__(self):
        xs = [x for x, _ in self.points]
        if xs != sorted(xs):
            raise DomainError(f"series {self.name}: points must be ordered by x")
        for _, f in self.points:
            if not (0.0 < f <= 1.0):
                raise DomainError(f"series {self.name}: fpr {f!r} outside (0, 1]")

    def to_csv(self):
        """Render as CSV text with 10-significant-digit numbers."""
        out = io.StringIO()
        out.write(",".join(CSV_COLUMNS) + "\n")
        for i, (x, fpr) in enumerate(self.points):
            row = {"x": _fmt(x), "fpr": _fmt(fpr), "method": self.name}
            for col in ("p", "prior", "power", "n", "es"):
                if col in self.aux:
                    row[col] = _fmt(self.aux[col][i])
                elif col in self.params:
                    row[col] = _fmt(self.params[col])
                else:
                    row[col] = ""
            out.write(",".join(row[c] for c in CSV_COLUMNS) + "\n")
        return out.getvalue()


def _fmt(v):
    if isinstance(v, str):
        return v
    return format(float(v), ".10g")


def parse_csv(text):
    """Parse a series CSV back into (header, rows-of-strings)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = tuple(lines[0].split(","))
    if header != CSV_COLUMNS:
        raise DomainError(f"unexpected CSV header {header!r}", code="bad_csv")
    return header, [tuple(ln.split(",")) for ln in lines[1:]]


def n_for_power(target_power, es, alpha=0.05):
    """Per-group n (continuous, >= 2) giving the target power at alpha.

    Power is monotone increasing in n; this is asserted while the
    bracket is grown. Unreachable targets raise NoSolutionError.
    """
    target_power = float(target_power)
    if not (0.0 < target_power < 1.0):
        raise DomainError(f"target power must be in (0, 1), got {target_power!r}")
    es = float(es)
    if not (es > 0.0) or not math.isfinite(es):
        raise DomainError(f"effect size must be > 0, got {es!r}")

    def gap(n):
        return core.power(StudyDesign(n, es), alpha) - target_power

    g2 = gap(2.0)
    if g2 >= 0.0:
        if g2 == 0.0:
            return 2.0
        raise NoSolutionError(
            f"power at the minimum n = 2 already exceeds {target_power:g}"
        )
    last = g2
    try:
        lo, hi = expand_bracket(gap, 2.0, 4.0, _N_MAX)
    except NoSolutionError:
        raise NoSolutionError(
            f"target power {target_power:g} unreachable with n <= {_N_MAX:g} "
            f"at effect size {es:g}"
        ) from None
    # Monotonicity assertion along the solved bracket.
    if gap(hi) < last:
        raise DomainError("power is not increasing in n; cannot solve")
    return brent(gap, lo, hi, xtol=1e-9)


def curve_fpr_vs_es(p=0.05, prior=0.5, target_power=0.78, es_grid=None, alpha=0.05):
    """Constant-power FPR vs effect size: (p_equals series, p_less_than series)."""
    p = float(p)
    prior = float(prior)
    if es_grid is None:
        es_grid = default_es_grid()
    es_grid = [float(e) for e in es_grid]
    if not es_grid:
        raise DomainError("empty effect-size grid", code="empty_grid")
    if any(not (0.0 < e <= 5.0) for e in es_grid):
        raise DomainError("effect-size grid must lie in (0, 5]", code="bad_grid")
    es_grid = sorted(es_grid)

    ns, pe_points, plt_points = [], [], []
    for es in es_grid:
        n = n_for_power(target_power, es, alpha)
        design = StudyDesign(n, es)
        pe_points.append((es, core.fpr_from_lr(core.lr_p_equals(p, design), prior)))
        plt_points.append((es, core.fpr_from_lr(core.lr_p_less_than(p, design), prior)))
        ns.append(n)

    params = {"p": p, "prior": prior, "power": target_power}
    aux = {"n": ns, "es": es_grid}
    return (
        CurveSeries("p_equals", "effect_size_normalized", tuple(pe_points), params, aux),
        CurveSeries("p_less_than", "effect_size_normalized", tuple(plt_points), params, aux),
    )


def curve_fpr_vs_n(p=0.05, prior=0.5, es=1.0, n_range=None):
    """P-equals FPR vs per-group n, plus the minimum over integer n.

    Returns (series, (n_at_minimum, fpr_at_minimum)). The minimum search
    scans integers across the range, stopping once the (unimodal) FPR has
    risen well past the best value seen.
    """
    p = float(p)
    prior = float(prior)
    es = float(es)
    if n_range is None:
        n_grid = default_n_grid()
    else:
        n_grid = sorted(float(n) for n in n_range)
    if not n_grid:
        raise DomainError("empty n grid", code="empty_grid")
    if n_grid[0] < 2.0 or n_grid[-1] > 1e6:
        raise DomainError("n grid must lie within [2, 1e6]", code="bad_grid")

    def fpr_at(n):
        return core.fpr_from_lr(core.lr_p_equals(p, StudyDesign(n, es)), prior)

    points = [(n, fpr_at(n)) for n in n_grid]
    powers = [core.power(StudyDesign(n, es), 0.05) for n in n_grid]

    # Integer minimum: scan with an early stop once clearly past the dip.
    n_lo, n_hi = int(math.ceil(n_grid[0])), int(math.floor(n_grid[-1]))
    best_n, best_f = None, math.inf
    rising = 0
    for n in range(max(2, n_lo), n_hi + 1):
        f = fpr_at(float(n))
        if f < best_f:
            best_n, best_f = n, f
            rising = 0
        else:
            rising += 1
            if rising >= 8 and f > 2.0 * best_f:
                break

    params = {"p": p, "prior": prior, "es": es}
    aux = {"n": n_grid, "power": powers}
    series = CurveSeries("p_equals", "n_per_group", tuple(points), params, aux)
    return series, (best_n, best_f)


def curve_fpr_vs_p(design=None, prior=0.5, p_grid=None):
    """FPR vs observed p for three calibrations plus the fpr = p identity.

    Returns a list of four CurveSeries: p_equals, sellke_berger, goodman,
    identity. The Sellke-Berger series is restricted to p < 1/e; the grid
    must start below that bound.
    """
    if design is None:
        design = StudyDesign(16, 1.0)
    prior = float(prior)
    if p_grid is None:
        p_grid = default_p_grid()
    p_grid = sorted(float(p) for p in p_grid)
    if not p_grid:
        raise DomainError("empty p grid", code="empty_grid")
    if any(not (0.0 < p < 1.0) for p in p_grid):
        raise DomainError("p grid must lie within (0, 1)", code="bad_grid")
    sb_grid = [p for p in p_grid if p < 1.0 / math.e]
    if not sb_grid:
        raise DomainError(
            "p grid entirely at or above 1/e: the Sellke-Berger bound is undefined there",
            code="sellke_berger_range",
        )

    pwr = core.power(design, 0.05)
    params = {"prior": prior, "n": design.n_per_group,
              "es": design.effect_size_normalized, "power": pwr}

    def series(name, grid, fn):
        pts = tuple((p, fn(p)) for p in grid)
        return CurveSeries(name, "p_value", pts, dict(params), {"p": list(grid)})

    out = [
        series("p_equals", p_grid,
               lambda p: core.fpr_from_lr(core.lr_p_equals(p, design), prior)),
        series("sellke_berger", sb_grid,
               lambda p: core.fpr_from_lr(core.lr_sellke_berger(p), prior)),
        series("goodman", p_grid,
               lambda p: core.fpr_from_lr(core.lr_goodman(p), prior)),
        series("identity", p_grid, lambda p: p),
    ]
    return out


def default_es_grid(start=0.1, stop=2.0, step=0.05):
    n = int(round((stop - start) / step))
    return [round(start + i * step, 10) for i in range(n + 1)]


def default_n_grid():
    # Log-spaced 4..64 joined with all integers 4..20.
    logs = [4.0 * (16.0 ** (i / 24.0)) for i in range(25)]
    grid = sorted(set(round(v, 6) for v in logs) | set(float(n) for n in range(4, 21)))
    return grid


def default_p_grid(p_min=1e-4, p_max=0.3, points=61):
    if points < 2:
        return [float(p_min)]
    ratio = (p_max / p_min) ** (1.0 / (points - 1))
    return [p_min * ratio ** i for i in range(points)]


def write_series_csv(series_list, out_dir, figure):
    """Write one `<figure>-<method>.csv` per series; returns the paths."""
    import os

    paths = []
    os.makedirs(out_dir, exist_ok=True)
    for s in series_list:
        path = os.path.join(out_dir, f"{figure}-{s.name}.csv")
        with open(path, "w") as fh:
            fh.write(s.to_csv())
        paths.append(path)
    return paths
