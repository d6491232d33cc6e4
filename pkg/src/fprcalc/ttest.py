"""Two-sample pooled-variance Student t test from raw observations.

Produces every intermediate quantity the false-positive-risk workflow
needs: group means and SDs, the pooled SD, the effect size (group B minus
group A), its standard error, the normalized effect size, t, the
two-sided p, and the post-hoc power at alpha = 0.05.

Deliberately the equal-variance test only; no Welch correction, no
paired or one-sample variants.
"""

import csv
import math
from dataclasses import dataclass

from . import core, dist
from .errors import DegenerateDataError, DomainError


@dataclass(frozen=True)
class TestSummary:
    """Full output of a two-sample pooled-variance t test."""

    n_a: int
    n_b: int
    mean_a: float
    mean_b: float
    sd_a: float
    sd_b: float
    pooled_sd: float
    effect_size: float            # mean_b - mean_a, in response units
    se_effect: float              # pooled_sd * sqrt(1/n_a + 1/n_b)
    effect_size_normalized: float  # effect_size / pooled_sd
    df: float
    t_value: float
    p_two_sided: float
    post_hoc_power: float         # at alpha = 0.05, observed effect as truth


def _validate_sample(values, name):
    vals = [float(v) for v in values]
    if len(vals) < 2:
        raise DomainError(
            f"sample {name} needs at least 2 observations, got {len(vals)}",
            code="sample_too_small",
        )
    for v in vals:
        if not math.isfinite(v):
            raise DomainError(f"sample {name} contains a non-finite value {v!r}")
    return vals


def _mean_and_var(vals):
    n = len(vals)
    m = math.fsum(vals) / n
    ss = math.fsum((v - m) ** 2 for v in vals)
    return m, ss / (n - 1)


def two_sample_t(a, b):
    """Run the pooled-variance two-sample t test of group B against group A."""
    a = _validate_sample(a, "A")
    b = _validate_sample(b, "B")
    n_a, n_b = len(a), len(b)
    mean_a, var_a = _mean_and_var(a)
    mean_b, var_b = _mean_and_var(b)
    df = n_a + n_b - 2
    pooled_var = ((n_a - 1) * var_a + (n_b - 1) * var_b) / df
    pooled_sd = math.sqrt(pooled_var)
    if pooled_sd == 0.0:
        raise DegenerateDataError("all observations identical: pooled SD is zero")
    effect = mean_b - mean_a
    se = pooled_sd * math.sqrt(1.0 / n_a + 1.0 / n_b)
    t_value = effect / se
    p = 2.0 * (1.0 - dist.t_cdf(abs(t_value), df))
    power = core.power_at(df, abs(t_value), alpha=0.05)
    return TestSummary(
        n_a=n_a,
        n_b=n_b,
        mean_a=mean_a,
        mean_b=mean_b,
        sd_a=math.sqrt(var_a),
        sd_b=math.sqrt(var_b),
        pooled_sd=pooled_sd,
        effect_size=effect,
        se_effect=se,
        effect_size_normalized=effect / pooled_sd,
        df=float(df),
        t_value=t_value,
        p_two_sided=p,
        post_hoc_power=power,
    )


def read_samples_csv(path):
    """Read a two-group CSV with header ``group,value``.

    Groups are ordered by sorted label; with the conventional A/B labels
    the first returned sample is A. Raises DomainError with row/column
    diagnostics on malformed input.
    """
    groups = {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header] != ["group", "value"]:
            raise DomainError(
                f"expected header 'group,value', got {header!r}", code="bad_csv"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 2:
                raise DomainError(
                    f"row {lineno}: expected 2 columns, got {len(row)}",
                    code="bad_csv",
                )
            label = row[0].strip()
            if not label:
                raise DomainError(f"row {lineno}: empty group label", code="bad_csv")
            try:
                value = float(row[1])
            except ValueError:
                raise DomainError(
                    f"row {lineno}, column 2: {row[1]!r} is not a number",
                    code="bad_csv",
                ) from None
            groups.setdefault(label, []).append(value)
    if len(groups) != 2:
        raise DomainError(
            f"need exactly two groups, found {sorted(groups)}", code="bad_csv"
        )
    label_a, label_b = sorted(groups)
    return groups[label_a], groups[label_b], (label_a, label_b)
