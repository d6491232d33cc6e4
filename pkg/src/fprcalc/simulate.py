"""Monte Carlo oracle for the t-test calibrations.

Simulates repeated two-sample t tests under both the null (equal means)
and the alternative (means separated by the design's normalized effect,
sigma = 1), giving empirical p-value distributions, powers, and a
band-based estimate of the p-equals likelihood ratio.

Reproducibility: the generator is Philox (counter-based), keyed by
(seed, hypothesis, block-index) over fixed-size blocks, so results are
bit-identical for a given (seed, n_sims) no matter how blocks would be
sharded, and every hypothesis/block pair is an independent substream.
Normal variates come from an inverse-CDF transform of open-interval
uniforms built from 53-bit integers.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtri, stdtr

from .core import StudyDesign
from .errors import DomainError, LowStatisticsError

BLOCK_SIZE = 1 << 17

_H0, _H1 = 0, 1
_KEY_SALT = 0x9E3779B97F4A7C15  # fixed salt so keys never collide with bare seeds

DEFAULT_THRESHOLDS = (0.05, 0.01, 0.001, 0.0001)


@dataclass(frozen=True)
class SimConfig:
    design: StudyDesign
    n_sims: int
    seed: int
    band_center: float = 0.05
    band_half_width: float = 0.0025
    thresholds: tuple = DEFAULT_THRESHOLDS

    def __post_init__(self):
        if self.n_sims < 1:
            raise DomainError(f"n_sims must be >= 1, got {self.n_sims!r}")
        if not (0 <= int(self.seed) < 2 ** 64):
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.band_half_width <= 0.0:
            raise DomainError("band_half_width must be > 0")
        lo = self.band_center - self.band_half_width
        hi = self.band_center + self.band_half_width
        if not (0.0 < lo and hi < 1.0):
            raise DomainError(f"band [{lo:g}, {hi:g}] must lie inside (0, 1)")
        for thr in self.thresholds:
            if not (0.0 < thr < 1.0):
                raise DomainError(f"threshold {thr!r} outside (0, 1)")


@dataclass
class SimResult:
    """Counts and derived fractions from a simulation run.

    ``frac_below[h][thr]`` is the fraction of p values below thr under
    hypothesis h ("h0"/"h1"); ``frac_se`` the matching binomial standard
    errors. ``empirical_lr`` is the H1/H0 rate ratio for p falling in the
    band (None when the H0 band is empty).
    """

    config: SimConfig
    frac_below: dict
    frac_se: dict
    band_counts: dict
    empirical_lr: float | None
    empirical_lr_se: float | None
    below_counts: dict = field(default_factory=dict)

    def to_dict(self):
        cfg = self.config
        return {
            "config": {
                "n_per_group": cfg.design.n_per_group,
                "effect_size_normalized": cfg.design.effect_size_normalized,
                "n_sims": cfg.n_sims,
                "seed": cfg.seed,
                "band_center": cfg.band_center,
                "band_half_width": cfg.band_half_width,
                "thresholds": list(cfg.thresholds),
            },
            "frac_below": {h: {str(t): v for t, v in d.items()}
                           for h, d in self.frac_below.items()},
            "frac_se": {h: {str(t): v for t, v in d.items()}
                        for h, d in self.frac_se.items()},
            "below_counts": {h: {str(t): v for t, v in d.items()}
                             for h, d in self.below_counts.items()},
            "band_counts": dict(self.band_counts),
            "empirical_lr": self.empirical_lr,
            "empirical_lr_se": self.empirical_lr_se,
        }


def _block_rng(seed, hypothesis, block_index):
    # 128-bit key from the seed; (hypothesis, block) live in the high
    # counter words, giving every substream 2^128 draws of headroom.
    key = np.array([seed, _KEY_SALT], dtype=np.uint64)
    counter = np.array([0, 0, block_index, hypothesis], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key, counter=counter))


def _uniform_open(rng, shape):
    # 53-bit integers + 1/2 ulp keeps the stream strictly inside (0, 1).
    ints = rng.integers(0, 1 << 53, size=shape, dtype=np.int64)
    return (ints.astype(np.float64) + 0.5) * (0.5 ** 53)


def _pvalues_block(design, hypothesis, seed, block_index, m):
    """Two-sided pooled-t p values for m replicates of one block."""
    n = int(round(design.n_per_group))
    rng = _block_rng(seed, hypothesis, block_index)
    za = ndtri(_uniform_open(rng, (m, n)))
    zb = ndtri(_uniform_open(rng, (m, n)))
    if hypothesis == _H1:
        zb += design.effect_size_normalized
    ma = za.mean(axis=1)
    mb = zb.mean(axis=1)
    va = ((za - ma[:, None]) ** 2).sum(axis=1)
    vb = ((zb - mb[:, None]) ** 2).sum(axis=1)
    df = 2 * (n - 1)
    pooled_var = (va + vb) / df
    se = np.sqrt(pooled_var * (2.0 / n))
    t = (mb - ma) / se
    return 2.0 * stdtr(df, -np.abs(t))


def draw_pvalues(design, n_sims, seed, hypothesis):
    """All simulated p values under one hypothesis ("h0" or "h1")."""
    hyp = {"h0": _H0, "h1": _H1}[hypothesis]
    if int(round(design.n_per_group)) != design.n_per_group:
        raise DomainError("simulation needs an integer per-group n")
    out = np.empty(n_sims, dtype=np.float64)
    pos = 0
    block = 0
    while pos < n_sims:
        m = min(BLOCK_SIZE, n_sims - pos)
        out[pos:pos + m] = _pvalues_block(design, hyp, seed, block, m)
        pos += m
        block += 1
    return out


def simulate(config):
    """Run the full simulation under both hypotheses and tally counts."""
    design = config.design
    if int(round(design.n_per_group)) != design.n_per_group:
        raise DomainError("simulation needs an integer per-group n")
    lo = config.band_center - config.band_half_width
    hi = config.band_center + config.band_half_width
    thresholds = tuple(config.thresholds)

    below = {"h0": {t: 0 for t in thresholds}, "h1": {t: 0 for t in thresholds}}
    band = {"h0": 0, "h1": 0}
    for hname, hyp in (("h0", _H0), ("h1", _H1)):
        pos = 0
        block = 0
        while pos < config.n_sims:
            m = min(BLOCK_SIZE, config.n_sims - pos)
            p = _pvalues_block(design, hyp, config.seed, block, m)
            for thr in thresholds:
                below[hname][thr] += int((p < thr).sum())
            band[hname] += int(((p >= lo) & (p <= hi)).sum())
            pos += m
            block += 1

    n = config.n_sims
    frac = {h: {t: below[h][t] / n for t in thresholds} for h in below}
    se = {h: {t: math.sqrt(frac[h][t] * (1.0 - frac[h][t]) / n) for t in thresholds}
          for h in frac}
    if band["h0"] > 0 and band["h1"] > 0:
        lr = band["h1"] / band["h0"]
        lr_se = lr * math.sqrt(1.0 / band["h1"] + 1.0 / band["h0"])
    else:
        lr = lr_se = None
    return SimResult(
        config=config,
        frac_below=frac,
        frac_se=se,
        band_counts=band,
        empirical_lr=lr,
        empirical_lr_se=lr_se,
        below_counts=below,
    )


def empirical_lr_p_equals(config, min_h0_band=100):
    """Band-ratio estimate of the p-equals likelihood ratio.

    Rate of p in [center +- half_width] under H1 divided by the same rate
    under H0; converges to the analytic p-equals ratio as the band
    shrinks. Raises LowStatisticsError when the H0 band holds fewer than
    ``min_h0_band`` replicates: widen the band or raise n_sims.
    """
    result = simulate(config)
    if result.band_counts["h0"] < min_h0_band:
        raise LowStatisticsError(
            f"only {result.band_counts['h0']} null p values in the band "
            f"(need >= {min_h0_band}); widen the band or raise n_sims"
        )
    return result.empirical_lr
