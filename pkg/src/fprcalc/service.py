"""Stateless HTTP JSON facade over the calculator, t test, curves, and simulator.

Every numeric value in a response is rounded to at most 12 significant
digits (plain JSON numbers, never strings) by ``round_sig``; the CLI's
JSON output reuses the same builders, so service responses and CLI
output are bit-for-bit identical for the same inputs.
"""

import math
import os
from dataclasses import dataclass

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field
from typing import Literal, Optional

from . import __version__, core, curves, simulate as sim, ttest
from .core import StudyDesign
from .errors import FprError

SCHEMA_VERSION = "1"

API_PREFIX = "/api/v1"


def round_sig(x, digits=12):
    """Round a float to ``digits`` significant digits (response precision)."""
    if x == 0 or not math.isfinite(x):
        return float(x)
    return round(x, digits - 1 - math.floor(math.log10(abs(x))))


def _sig2(x):
    return format(float(x), ".2g")


# Reporting sentences keyed by calculator mode: state the computed member
# of the (p, prior, FPR) triple in plain language.
STATEMENTS = {
    "fpr_from_p_prior": (
        "The observation of p = {p} implies a false positive risk of {fpr} "
        "(the probability that a claimed effect is actually chance) when the "
        "prior probability of a real effect is {prior}."
    ),
    "fpr_from_p_prior_mfpr": (
        "The observation of p = {p} implies a minimum false positive risk of "
        "{fpr}: even granting a real effect a 50:50 prior chance, there is a "
        "{fpr_pct}% risk that a claimed effect is actually chance."
    ),
    "prior_from_p_fpr": (
        "With an observation of p = {p}, keeping the false positive risk down "
        "to {fpr} would require assuming a prior probability of {prior} that "
        "a real effect exists before the experiment."
    ),
    "p_from_fpr_prior": (
        "With a prior probability of {prior} that a real effect exists, it "
        "would be necessary to observe p = {p} to bring the false positive "
        "risk down to {fpr}."
    ),
}


def statement_for(result):
    """Render the reporting sentence for a completed calculation."""
    t = result.triple
    key = result.mode
    if key == "fpr_from_p_prior" and t.prior == 0.5:
        key = "fpr_from_p_prior_mfpr"
    return STATEMENTS[key].format(
        p=_sig2(t.p_value),
        prior=_sig2(t.prior),
        fpr=_sig2(t.fpr),
        fpr_pct=_sig2(100.0 * t.fpr),
    )


# ---------------------------------------------------------------------------
# Response builders (shared with the CLI)
# ---------------------------------------------------------------------------

_MODE_INPUTS = {
    "fpr_from_p_prior": ("p_value", "prior"),
    "p_from_fpr_prior": ("fpr", "prior"),
    "prior_from_p_fpr": ("p_value", "fpr"),
}


def build_calc_response(result):
    t = result.triple
    echo = {
        "mode": result.mode,
        "method": result.method,
        "n_per_group": round_sig(result.design.n_per_group),
        "effect_size_normalized": round_sig(result.design.effect_size_normalized),
    }
    given = {"p_value": t.p_value, "prior": t.prior, "fpr": t.fpr}
    for name in _MODE_INPUTS[result.mode]:
        echo[name] = round_sig(given[name])
    return {
        "schema_version": SCHEMA_VERSION,
        "request": echo,
        "p_value": round_sig(t.p_value),
        "prior": round_sig(t.prior),
        "fpr": round_sig(t.fpr),
        "l10": round_sig(result.lr.l10),
        "l01": round_sig(result.lr.l01),
        "power_at_005": round_sig(result.power),
        "statement": statement_for(result),
        "notes": list(result.notes),
    }


def build_ttest_response(summary, prior=0.5):
    """Test summary plus the FPR supplement at the given prior."""
    lr = core.LikelihoodRatio(
        l10=_lr_p_equals_observed(summary), method="p_equals"
    )
    fpr = core.fpr_from_lr(lr, prior)
    required_prior = core.prior_for_fpr(lr, 0.05)
    fake = core.CalcResult(
        mode="fpr_from_p_prior",
        method="p_equals",
        design=StudyDesign(max(summary.n_a, 2), abs(summary.effect_size_normalized) or 1.0),
        triple=core.EvidenceTriple(summary.p_two_sided, prior, fpr),
        lr=lr,
        power=summary.post_hoc_power,
        notes=(),
    )
    return {
        "schema_version": SCHEMA_VERSION,
        "summary": {
            "n_a": summary.n_a,
            "n_b": summary.n_b,
            "mean_a": round_sig(summary.mean_a),
            "mean_b": round_sig(summary.mean_b),
            "sd_a": round_sig(summary.sd_a),
            "sd_b": round_sig(summary.sd_b),
            "pooled_sd": round_sig(summary.pooled_sd),
            "effect_size": round_sig(summary.effect_size),
            "se_effect": round_sig(summary.se_effect),
            "effect_size_normalized": round_sig(summary.effect_size_normalized),
            "df": round_sig(summary.df),
            "t_value": round_sig(summary.t_value),
            "p_two_sided": round_sig(summary.p_two_sided),
            "post_hoc_power": round_sig(summary.post_hoc_power),
        },
        "fpr_supplement": {
            "prior": round_sig(prior),
            "fpr": round_sig(fpr),
            "l10": round_sig(lr.l10),
            "l01": round_sig(lr.l01),
            "required_prior_for_fpr_005": round_sig(required_prior),
            "statement": statement_for(fake),
        },
    }


def _lr_p_equals_observed(summary):
    """P-equals likelihood ratio from the observed df and t (as ncp)."""
    from . import dist

    t_crit = dist.t_quantile(1.0 - summary.p_two_sided / 2.0, summary.df)
    y0 = dist.t_pdf(t_crit, summary.df)
    y1 = dist.nct_pdf(t_crit, summary.df, abs(summary.t_value))
    return y1 / (2.0 * y0)


def _series_payload(series):
    return {
        "name": series.name,
        "x_label": series.x_label,
        "points": [[round_sig(x), round_sig(f)] for x, f in series.points],
        "params": {k: round_sig(v) for k, v in series.params.items()},
    }


def build_curves_response(figure, series_list, minimum=None):
    payload = {
        "schema_version": SCHEMA_VERSION,
        "figure": figure,
        "series": [_series_payload(s) for s in series_list],
    }
    if minimum is not None:
        payload["minimum"] = {"n": minimum[0], "fpr": round_sig(minimum[1])}
    return payload


def build_simulate_response(result):
    d = result.to_dict()

    def walk(v):
        if isinstance(v, dict):
            return {k: walk(x) for k, x in v.items()}
        if isinstance(v, float):
            return round_sig(v)
        return v

    return {"schema_version": SCHEMA_VERSION, "result": walk(d)}


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    cors_origin: str = "*"
    max_sims: int = 200_000
    static_dir: str = "frontend/dist"


def load_config(path=None):
    """Read `key = value` lines (# comments allowed) plus env overrides.

    Recognized keys: host, port, cors_origin, max_sims, static_dir.
    FPR_HOST and FPR_PORT environment variables override the file.
    """
    cfg = ServiceConfig()
    if path is not None:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise FprError(
                        f"{path}:{lineno}: expected 'key = value'", code="bad_config"
                    )
                key, value = (s.strip() for s in line.split("=", 1))
                if key in ("port", "max_sims"):
                    setattr(cfg, key, int(value))
                elif key in ("host", "cors_origin", "static_dir"):
                    setattr(cfg, key, value)
                else:
                    raise FprError(f"{path}:{lineno}: unknown key {key!r}",
                                   code="bad_config")
    if os.environ.get("FPR_HOST"):
        cfg.host = os.environ["FPR_HOST"]
    if os.environ.get("FPR_PORT"):
        cfg.port = int(os.environ["FPR_PORT"])
    return cfg


# ---------------------------------------------------------------------------
# Request models
# ---------------------------------------------------------------------------

_MODES = Literal["fpr_from_p_prior", "p_from_fpr_prior", "prior_from_p_fpr"]
_METHODS = Literal["p_equals", "p_less_than", "sellke_berger", "goodman"]


class CalcRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    mode: _MODES
    n_per_group: float = Field(ge=2)
    effect_size_normalized: float = Field(gt=0)
    p_value: Optional[float] = None
    prior: Optional[float] = None
    fpr: Optional[float] = None
    method: _METHODS = "p_equals"


class TTestRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    a: list[float]
    b: list[float]
    prior: float = Field(default=0.5, ge=0, le=1)


class SimulateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n_per_group: int = Field(ge=2)
    effect_size_normalized: float = Field(gt=0)
    n_sims: int = Field(ge=1)
    seed: int = Field(ge=0)
    band_center: float = 0.05
    band_half_width: float = 0.0025


# ---------------------------------------------------------------------------
# Application
# ---------------------------------------------------------------------------

def create_app(config=None):
    cfg = config or ServiceConfig()
    app = FastAPI(
        title="False positive risk service",
        version=__version__,
        openapi_url=f"{API_PREFIX}/spec",
        docs_url=None,
        redoc_url=None,
    )
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[cfg.cors_origin] if cfg.cors_origin != "*" else ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(FprError)
    async def _domain_error(request: Request, exc: FprError):
        return JSONResponse(
            status_code=400,
            content={"error": {"code": exc.code, "message": str(exc)}},
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={
                "error": {
                    "code": "validation_error",
                    "message": "; ".join(
                        f"{'.'.join(str(p) for p in e['loc'])}: {e['msg']}"
                        for e in exc.errors()
                    ),
                }
            },
        )

    def _check_query(request: Request, allowed):
        unknown = set(request.query_params) - set(allowed)
        if unknown:
            raise FprError(
                f"unknown query parameters: {sorted(unknown)}", code="validation_error"
            )

    @app.get(f"{API_PREFIX}/health")
    async def health():
        return {"status": "ok", "version": __version__,
                "schema_version": SCHEMA_VERSION}

    @app.post(f"{API_PREFIX}/calc")
    async def calc(req: CalcRequest):
        design = StudyDesign(req.n_per_group, req.effect_size_normalized)
        result = core.calc(
            req.mode, design, p=req.p_value, prior=req.prior, fpr=req.fpr,
            method=req.method,
        )
        return build_calc_response(result)

    @app.post(f"{API_PREFIX}/ttest")
    async def ttest_endpoint(req: TTestRequest):
        summary = ttest.two_sample_t(req.a, req.b)
        return build_ttest_response(summary, prior=req.prior)

    @app.post(f"{API_PREFIX}/simulate")
    async def simulate_endpoint(req: SimulateRequest):
        if req.n_sims > cfg.max_sims:
            raise FprError(
                f"n_sims {req.n_sims} exceeds the service budget of {cfg.max_sims}",
                code="budget_exceeded",
            )
        config = sim.SimConfig(
            design=StudyDesign(req.n_per_group, req.effect_size_normalized),
            n_sims=req.n_sims,
            seed=req.seed,
            band_center=req.band_center,
            band_half_width=req.band_half_width,
        )
        return build_simulate_response(sim.simulate(config))

    @app.get(f"{API_PREFIX}/curves/fig1")
    async def curves_fig1(
        request: Request,
        p: float = 0.05, prior: float = 0.5, power: float = 0.78,
        es_min: float = 0.1, es_max: float = 2.0, es_step: float = 0.05,
    ):
        _check_query(request, {"p", "prior", "power", "es_min", "es_max", "es_step"})
        grid = curves.default_es_grid(es_min, es_max, es_step)
        pe, plt_ = curves.curve_fpr_vs_es(p, prior, power, grid)
        return build_curves_response("fig1", [pe, plt_])

    @app.get(f"{API_PREFIX}/curves/fig2")
    async def curves_fig2(
        request: Request,
        p: float = 0.05, prior: float = 0.5, es: float = 1.0,
        n_min: float = 4, n_max: float = 64,
    ):
        _check_query(request, {"p", "prior", "es", "n_min", "n_max"})
        if n_min > n_max:
            raise FprError("n_min must not exceed n_max", code="bad_grid")
        if n_min == 4 and n_max == 64:
            grid = curves.default_n_grid()
        else:
            grid = [n for n in curves.default_n_grid() if n_min <= n <= n_max]
            grid = sorted(set(grid) | {float(n_min), float(n_max)})
        series, minimum = curves.curve_fpr_vs_n(p, prior, es, grid)
        return build_curves_response("fig2", [series], minimum)

    @app.get(f"{API_PREFIX}/curves/fig3")
    async def curves_fig3(
        request: Request,
        prior: float = 0.5, n: float = 16, es: float = 1.0,
        p_min: float = 1e-4, p_max: float = 0.3, points: int = 61,
    ):
        _check_query(request, {"prior", "n", "es", "p_min", "p_max", "points"})
        if points < 1:
            raise FprError("points must be >= 1", code="empty_grid")
        grid = curves.default_p_grid(p_min, p_max, points)
        series_list = curves.curve_fpr_vs_p(StudyDesign(n, es), prior, grid)
        return build_curves_response("fig3", series_list)

    static_dir = cfg.static_dir
    if static_dir and os.path.isdir(static_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
