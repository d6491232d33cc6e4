"""False positive risk machinery.

Converts an observed p value into a likelihood ratio for a point null
against a simple alternative and from there into a false positive risk
(FPR), given a prior probability that a real effect exists. Any two of
{p, prior, FPR} determine the third. Four likelihood-ratio methods are
provided:

* ``p_equals``      -- density ratio at the critical t (the calibration
                       appropriate for interpreting a single experiment)
* ``p_less_than``   -- tail ratio power/p (a long-run error-rate view)
* ``sellke_berger`` -- the -e*p*log(p) upper bound, valid for p < 1/e
* ``goodman``       -- exp(z^2/2)/2, the normal-theory maximum at the
                       observed effect size

All functions are pure and reentrant.
"""

import math
from dataclasses import dataclass

from . import dist
from .errors import DomainError, NoSolutionError
from .rootfind import brent

METHODS = ("p_equals", "p_less_than", "sellke_berger", "goodman")

#: Modes of the three-way calculator: compute the named quantity from the
#: other two members of the (p, prior, fpr) triple.
MODES = ("fpr_from_p_prior", "p_from_fpr_prior", "prior_from_p_fpr")

_E = math.e


@dataclass(frozen=True)
class StudyDesign:
    """The fixed simple alternative: n per group and a normalized effect.

    ``n_per_group`` is an integer in ordinary use but real values are
    accepted so constant-power curve solving can treat n as continuous.
    """

    n_per_group: float
    effect_size_normalized: float

    def __post_init__(self):
        n = float(self.n_per_group)
        es = float(self.effect_size_normalized)
        if not math.isfinite(n) or n < 2.0:
            raise DomainError(f"n_per_group must be >= 2, got {self.n_per_group!r}")
        if not math.isfinite(es) or es <= 0.0:
            raise DomainError(
                f"effect_size_normalized must be > 0, got {self.effect_size_normalized!r}"
            )
        object.__setattr__(self, "n_per_group", n)
        object.__setattr__(self, "effect_size_normalized", es)

    @property
    def df(self):
        return 2.0 * (self.n_per_group - 1.0)

    @property
    def ncp(self):
        # effect / SE(effect) with SE = sigma*sqrt(2/n)
        return self.effect_size_normalized / math.sqrt(2.0 / self.n_per_group)


@dataclass(frozen=True)
class LikelihoodRatio:
    """Odds on the alternative provided by the data, tagged with its method."""

    l10: float
    method: str

    def __post_init__(self):
        if self.method not in METHODS:
            raise DomainError(f"unknown method {self.method!r}", code="bad_method")
        if not (self.l10 > 0.0) or not math.isfinite(self.l10):
            raise DomainError(f"likelihood ratio must be finite and > 0, got {self.l10!r}")

    @property
    def l01(self):
        return 1.0 / self.l10


@dataclass(frozen=True)
class EvidenceTriple:
    """A mutually consistent (p value, prior, FPR) triple."""

    p_value: float
    prior: float
    fpr: float


def _check_p(p):
    p = float(p)
    if not (0.0 < p < 1.0):
        raise DomainError(f"p value must be in (0, 1), got {p!r}", code="bad_p")
    return p


def _check_prior_closed(prior):
    prior = float(prior)
    if not (0.0 <= prior <= 1.0):
        raise DomainError(f"prior must be in [0, 1], got {prior!r}", code="bad_prior")
    return prior


def power_at(df, ncp, alpha=0.05):
    """Two-sided rejection probability at significance alpha, given df and ncp."""
    alpha = float(alpha)
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must be in (0, 1), got {alpha!r}", code="bad_alpha")
    t_crit = dist.t_quantile(1.0 - alpha / 2.0, df)
    return (1.0 - dist.nct_cdf(t_crit, df, ncp)) + dist.nct_cdf(-t_crit, df, ncp)


def power(design, alpha=0.05):
    """Power of the design's t test: P(|t| exceeds the alpha critical value | H1)."""
    return power_at(design.df, design.ncp, alpha)


def lr_p_equals(p, design):
    """Likelihood ratio of the observed p under H1 vs H0 (density ratio).

    y1 / (2*y0) with y0, y1 the central and noncentral t densities at the
    critical t for the observed two-sided p; the factor 2 counts both
    tails under the null.
    """
    p = _check_p(p)
    t_crit = dist.t_quantile(1.0 - p / 2.0, design.df)
    y0 = dist.t_pdf(t_crit, design.df)
    y1 = dist.nct_pdf(t_crit, design.df, design.ncp)
    return LikelihoodRatio(l10=y1 / (2.0 * y0), method="p_equals")


def lr_p_less_than(p, design):
    """Likelihood ratio of observing p or smaller: power(alpha=p) / p."""
    p = _check_p(p)
    return LikelihoodRatio(l10=power(design, alpha=p) / p, method="p_less_than")


def lr_sellke_berger(p):
    """Upper bound on the likelihood ratio over all priors: 1/(-e*p*log p)."""
    p = _check_p(p)
    if p >= 1.0 / _E:
        raise DomainError(
            f"the Sellke-Berger bound requires p < 1/e (~0.3679), got {p!r}",
            code="sellke_berger_range",
        )
    return LikelihoodRatio(l10=-1.0 / (_E * p * math.log(p)), method="sellke_berger")


def lr_goodman(p):
    """Normal-theory maximum likelihood ratio exp(z^2/2)/2 at the observed z."""
    p = _check_p(p)
    z = dist.norm_quantile(1.0 - p / 2.0)
    return LikelihoodRatio(l10=math.exp(0.5 * z * z) / 2.0, method="goodman")


def likelihood_ratio(p, design=None, method="p_equals"):
    """Dispatch to the named likelihood-ratio method.

    ``design`` is required for the two t-based methods and ignored by the
    design-independent bounds.
    """
    if method == "p_equals":
        if design is None:
            raise DomainError("method p_equals needs a study design", code="bad_method")
        return lr_p_equals(p, design)
    if method == "p_less_than":
        if design is None:
            raise DomainError("method p_less_than needs a study design", code="bad_method")
        return lr_p_less_than(p, design)
    if method == "sellke_berger":
        return lr_sellke_berger(p)
    if method == "goodman":
        return lr_goodman(p)
    raise DomainError(f"unknown method {method!r}", code="bad_method")


def _l10_of(lr):
    return lr.l10 if isinstance(lr, LikelihoodRatio) else float(lr)


def fpr_from_lr(lr, prior):
    """False positive risk 1 / (1 + L10 * prior/(1-prior)).

    prior = 0.5 gives the minimum FPR 1/(1+L10); prior = 1 returns 0 by
    continuity (a certain prior leaves no room for false positives).
    """
    prior = _check_prior_closed(prior)
    if prior == 1.0:
        return 0.0
    l10 = _l10_of(lr)
    return 1.0 / (1.0 + l10 * prior / (1.0 - prior))


def prior_for_fpr(lr, fpr):
    """Reverse Bayes: the prior needed to reach the target FPR.

    Exact inverse of ``fpr_from_lr`` in the prior argument:
    P(H1) = (1-FPR) / ((1-FPR) + L10*FPR).
    """
    fpr = float(fpr)
    if not (0.0 < fpr < 1.0):
        raise DomainError(f"target fpr must be in (0, 1), got {fpr!r}", code="bad_fpr")
    l10 = _l10_of(lr)
    return (1.0 - fpr) / ((1.0 - fpr) + l10 * fpr)


_P_FLOOR = 1e-12
_P_CEIL = 0.5


def p_for_fpr(fpr, prior, design, method="p_equals"):
    """The p value that would give the target FPR at the given prior.

    Root-solved in log10(p) over [1e-12, 0.5]. Assumes the FPR is
    monotone increasing in p over the bracket, which holds for the
    p_equals method on designs of moderate power (the regime where the
    solve is meaningful) and for both design-independent bounds.
    """
    fpr = float(fpr)
    if not (0.0 < fpr < 1.0):
        raise DomainError(f"target fpr must be in (0, 1), got {fpr!r}", code="bad_fpr")
    prior = float(prior)
    if not (0.0 < prior < 1.0):
        raise DomainError(f"prior must be in (0, 1), got {prior!r}", code="bad_prior")

    def gap(log10_p):
        lr = likelihood_ratio(10.0 ** log10_p, design, method)
        return fpr_from_lr(lr, prior) - fpr

    ceil = _P_CEIL
    if method == "sellke_berger":
        ceil = (1.0 - 1e-9) / _E  # the bound is undefined from 1/e up
    lo, hi = math.log10(_P_FLOOR), math.log10(ceil)
    g_lo, g_hi = gap(lo), gap(hi)
    if g_lo > 0.0 or g_hi < 0.0:
        raise NoSolutionError(
            f"no p in [{_P_FLOOR:g}, {_P_CEIL:g}] gives FPR {fpr:g} at prior "
            f"{prior:g} for this design"
        )
    u = brent(gap, lo, hi, xtol=1e-12)
    return 10.0 ** u


@dataclass(frozen=True)
class CalcResult:
    """Completed calculator output: the triple, the LR behind it, and power."""

    mode: str
    method: str
    design: StudyDesign
    triple: EvidenceTriple
    lr: LikelihoodRatio
    power: float
    notes: tuple = ()


def calc(mode, design, p=None, prior=None, fpr=None, method="p_equals"):
    """Three-way calculator: complete the (p, prior, fpr) triple.

    Exactly the two inputs required by ``mode`` must be given; the third
    must be None. The response always carries the likelihood ratio and
    the design's power at alpha = 0.05.
    """
    if mode not in MODES:
        raise DomainError(f"unknown mode {mode!r}", code="bad_mode")
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}", code="bad_method")

    needed = {
        "fpr_from_p_prior": ("p", "prior"),
        "p_from_fpr_prior": ("fpr", "prior"),
        "prior_from_p_fpr": ("p", "fpr"),
    }[mode]
    given = {"p": p, "prior": prior, "fpr": fpr}
    missing = [k for k in needed if given[k] is None]
    extra = [k for k, v in given.items() if k not in needed and v is not None]
    if missing or extra:
        raise DomainError(
            f"mode {mode} needs exactly {needed}; missing {missing}, unexpected {extra}",
            code="bad_arguments",
        )

    notes = []
    if mode == "fpr_from_p_prior":
        prior = _check_prior_closed(prior)
        lr = likelihood_ratio(p, design, method)
        fpr = fpr_from_lr(lr, prior)
        if prior == 1.0:
            notes.append("prior = 1 asserts a certain effect; FPR is 0 by continuity")
    elif mode == "prior_from_p_fpr":
        lr = likelihood_ratio(p, design, method)
        prior = prior_for_fpr(lr, fpr)
    else:  # p_from_fpr_prior
        p = p_for_fpr(fpr, prior, design, method)
        lr = likelihood_ratio(p, design, method)

    return CalcResult(
        mode=mode,
        method=method,
        design=design,
        triple=EvidenceTriple(p_value=float(p), prior=float(prior), fpr=float(fpr)),
        lr=lr,
        power=power(design, alpha=0.05),
        notes=tuple(notes),
    )
