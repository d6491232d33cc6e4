"""Command-line front door.

Subcommands: ``calc`` (three-way p/prior/FPR calculator), ``ttest``
(two-group CSV in, summary plus FPR supplement out), ``curve`` (figure
data as CSV files), ``simulate`` (Monte Carlo runs), and ``serve`` (the
HTTP service).

Exit codes: 0 success, 1 domain or runtime error, 2 usage error.
JSON output (--format json) is bit-for-bit the service response schema.
"""

import functools
import json
import math
import sys

import click

from . import __version__, core, curves, ttest
from .core import StudyDesign
from .errors import FprError
from .service import (
    build_calc_response,
    build_curves_response,
    build_simulate_response,
    build_ttest_response,
    load_config,
)

_MODE_NAMES = {"fpr": "fpr_from_p_prior", "p": "p_from_fpr_prior",
               "prior": "prior_from_p_fpr"}

_PROB_OPEN = click.FloatRange(0, 1, min_open=True, max_open=True)
_PRIOR_RANGE = click.FloatRange(0, 1, max_open=True)


def _domain_errors(fn):
    """Map library domain errors to exit code 1 with the message on stderr."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except FprError as exc:
            raise click.ClickException(f"[{exc.code}] {exc}") from exc
        except OSError as exc:
            raise click.ClickException(str(exc)) from exc

    return wrapper


def _sig(x, digits=3):
    return format(float(x), f".{digits}g")


@click.group()
@click.version_option(version=__version__, prog_name="fpr")
def main():
    """False positive risk toolkit for two-sample t tests."""


@main.command()
@click.option("--mode", type=click.Choice(sorted(_MODE_NAMES)), required=True,
              help="Quantity to compute: fpr, p, or prior.")
@click.option("--p", "p_value", type=_PROB_OPEN, default=None,
              help="Observed two-sided p value.")
@click.option("--prior", type=_PRIOR_RANGE, default=None,
              help="Prior probability of a real effect, P(H1).")
@click.option("--fpr", type=_PROB_OPEN, default=None,
              help="Target false positive risk.")
@click.option("--n", "n_per_group", type=click.FloatRange(min=2), default=None,
              help="Observations per group.")
@click.option("--es", "effect_size", type=click.FloatRange(min=0, min_open=True),
              required=True, help="Normalized effect size (SD units).")
@click.option("--design-from-power", "design_power", type=_PROB_OPEN, default=None,
              help="Solve n from this power (at alpha 0.05) instead of --n.")
@click.option("--method", type=click.Choice(core.METHODS), default="p_equals",
              show_default=True)
@click.option("--format", "fmt", type=click.Choice(["human", "json", "csv"]),
              default="human", show_default=True)
@_domain_errors
def calc(mode, p_value, prior, fpr, n_per_group, effect_size, design_power,
         method, fmt):
    """Complete the (p, prior, FPR) triple from any two of its members."""
    long_mode = _MODE_NAMES[mode]
    needed = {
        "fpr_from_p_prior": ("--p", "--prior"),
        "p_from_fpr_prior": ("--fpr", "--prior"),
        "prior_from_p_fpr": ("--p", "--fpr"),
    }[long_mode]
    have = {"--p": p_value, "--prior": prior, "--fpr": fpr}
    missing = [k for k in needed if have[k] is None]
    extra = [k for k, v in have.items() if k not in needed and v is not None]
    if missing or extra:
        raise click.UsageError(
            f"mode '{mode}' needs exactly {' and '.join(needed)}"
            + (f"; missing {' '.join(missing)}" if missing else "")
            + (f"; unexpected {' '.join(extra)}" if extra else "")
        )
    if (n_per_group is None) == (design_power is None):
        raise click.UsageError("give exactly one of --n or --design-from-power")
    if design_power is not None:
        n_per_group = curves.n_for_power(design_power, effect_size, alpha=0.05)

    design = StudyDesign(n_per_group, effect_size)
    result = core.calc(long_mode, design, p=p_value, prior=prior, fpr=fpr,
                       method=method)
    payload = build_calc_response(result)

    if fmt == "json":
        click.echo(json.dumps(payload, indent=2))
    elif fmt == "csv":
        click.echo("p,prior,fpr,l10,l01,power")
        click.echo(",".join(format(payload[k], ".10g") for k in
                            ("p_value", "prior", "fpr", "l10", "l01",
                             "power_at_005")))
    else:
        t = result.triple
        click.echo(f"mode    : {long_mode}  (method: {method})")
        click.echo(f"design  : n = {_sig(design.n_per_group, 6)} per group, "
                   f"normalized effect size = {_sig(design.effect_size_normalized)}")
        click.echo(f"p       = {_sig(t.p_value)}")
        click.echo(f"prior   = {_sig(t.prior)}")
        click.echo(f"FPR     = {_sig(t.fpr)}")
        click.echo(f"L10     = {_sig(result.lr.l10)}   (L01 = {_sig(result.lr.l01)})")
        click.echo(f"power   = {_sig(result.power)}   (at alpha 0.05)")
        click.echo("")
        click.echo(payload["statement"])
        for note in payload["notes"]:
            click.echo(f"note: {note}")


@main.command("ttest")
@click.argument("csv_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--prior", type=_PRIOR_RANGE, default=0.5, show_default=True,
              help="Prior probability of a real effect for the FPR supplement.")
@click.option("--format", "fmt", type=click.Choice(["human", "json"]),
              default="human", show_default=True)
@_domain_errors
def ttest_cmd(csv_path, prior, fmt):
    """Two-sample t test from a CSV with header 'group,value'."""
    a, b, labels = ttest.read_samples_csv(csv_path)
    summary = ttest.two_sample_t(a, b)
    payload = build_ttest_response(summary, prior=prior)

    if fmt == "json":
        click.echo(json.dumps(payload, indent=2))
        return
    s = summary
    sup = payload["fpr_supplement"]
    click.echo("Two-sample t test (pooled variance)")
    click.echo(f"group {labels[0]}: n = {s.n_a}, mean = {_sig(s.mean_a, 4)}, "
               f"SD = {_sig(s.sd_a, 4)}")
    click.echo(f"group {labels[1]}: n = {s.n_b}, mean = {_sig(s.mean_b, 4)}, "
               f"SD = {_sig(s.sd_b, 4)}")
    click.echo(f"pooled SD = {_sig(s.pooled_sd, 4)}")
    click.echo(f"effect size ({labels[1]} - {labels[0]}) = {_sig(s.effect_size, 4)} "
               f"(SE {_sig(s.se_effect, 4)}); normalized = "
               f"{_sig(s.effect_size_normalized, 4)}")
    click.echo(f"t({_sig(s.df, 4)}) = {_sig(s.t_value, 5)}, two-sided "
               f"p = {_sig(s.p_two_sided, 4)}")
    click.echo(f"post-hoc power (alpha 0.05) = {_sig(s.post_hoc_power, 2)}")
    click.echo("")
    label = "minimum FPR (prior 0.5)" if prior == 0.5 else f"FPR (prior {_sig(prior)})"
    click.echo(f"{label} = {_sig(sup['fpr'], 2)}; L10 = {_sig(sup['l10'])}; "
               f"prior needed for FPR 0.05 = "
               f"{_sig(sup['required_prior_for_fpr_005'], 2)}")
    click.echo(sup["statement"])


@main.command()
@click.argument("figure", type=click.Choice(["fig1", "fig2", "fig3"]))
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=".",
              show_default=True, help="Directory for the CSV files.")
@click.option("--p", type=_PROB_OPEN, default=0.05, show_default=True)
@click.option("--prior", type=_PROB_OPEN, default=0.5, show_default=True)
@click.option("--es", type=click.FloatRange(min=0, min_open=True), default=1.0,
              show_default=True, help="Effect size (fig2/fig3).")
@click.option("--n", type=click.FloatRange(min=2), default=16.0, show_default=True,
              help="Per-group n (fig3).")
@click.option("--power", type=_PROB_OPEN, default=0.78, show_default=True,
              help="Constant power (fig1).")
@click.option("--p-min", type=float, default=1e-4, show_default=True,
              help="Smallest p (fig3).")
@click.option("--p-max", type=float, default=0.3, show_default=True,
              help="Largest p (fig3).")
@click.option("--points", type=click.IntRange(min=1), default=61, show_default=True,
              help="Grid size (fig3).")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True, help="csv writes files; json prints the series.")
@_domain_errors
def curve(figure, out_dir, p, prior, es, n, power, p_min, p_max, points, fmt):
    """Emit the data behind one of the standard figures."""
    if figure == "fig3":
        if not (0.0 < p_min < p_max < 1.0):
            raise click.BadParameter("need 0 < p-min < p-max < 1")
        if p_min >= 1.0 / math.e:
            raise click.BadParameter(
                "p-min is at or above 1/e (~0.3679), outside the "
                "Sellke-Berger bound's validity range"
            )

    minimum = None
    if figure == "fig1":
        pe, plt_ = curves.curve_fpr_vs_es(p, prior, power)
        series_list = [pe, plt_]
    elif figure == "fig2":
        series_list, minimum = curves.curve_fpr_vs_n(p, prior, es)
        series_list = [series_list]
    else:
        grid = curves.default_p_grid(p_min, p_max, points)
        series_list = curves.curve_fpr_vs_p(StudyDesign(n, es), prior, grid)

    if fmt == "json":
        click.echo(json.dumps(build_curves_response(figure, series_list, minimum),
                              indent=2))
        return
    paths = curves.write_series_csv(series_list, out_dir, figure)
    for path in paths:
        click.echo(f"wrote {path}")
    if minimum is not None:
        click.echo(f"minimum FPR {_sig(minimum[1])} at n = {minimum[0]}")


@main.command()
@click.option("--n", "n_per_group", type=click.IntRange(min=2), required=True)
@click.option("--es", "effect_size", type=click.FloatRange(min=0, min_open=True),
              required=True)
@click.option("--sims", type=click.IntRange(min=1), default=100_000,
              show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--band-center", type=_PROB_OPEN, default=0.05, show_default=True)
@click.option("--band-half-width", type=click.FloatRange(min=0, min_open=True),
              default=0.0025, show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
              help="Write the JSON result here instead of stdout.")
@_domain_errors
def simulate(n_per_group, effect_size, sims, seed, band_center, band_half_width,
             out_path):
    """Monte Carlo two-sample t tests under H0 and H1; prints JSON."""
    from .simulate import SimConfig, simulate as run_sim

    config = SimConfig(
        design=StudyDesign(n_per_group, effect_size),
        n_sims=sims,
        seed=seed,
        band_center=band_center,
        band_half_width=band_half_width,
    )
    payload = build_simulate_response(run_sim(config))
    text = json.dumps(payload, indent=2)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
        click.echo(f"wrote {out_path}")
    else:
        click.echo(text)


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Key = value configuration file.")
@_domain_errors
def serve(config_path):
    """Run the HTTP service (blocks until interrupted)."""
    import uvicorn

    from .service import create_app

    cfg = load_config(config_path)
    click.echo(f"serving on http://{cfg.host}:{cfg.port}", err=True)
    uvicorn.run(create_app(cfg), host=cfg.host, port=cfg.port, log_level="warning")


if __name__ == "__main__":
    sys.exit(main())
