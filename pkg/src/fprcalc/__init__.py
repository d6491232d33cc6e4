"""False positive risk toolkit for two-sample t tests.

Converts observed p values into false positive risks via likelihood
ratios under a point null and a simple alternative, with reverse-Bayes
prior solving, constant-power curve generation, a Monte Carlo oracle,
an HTTP service, and a CLI.
"""

__version__ = "0.1.0"

from .core import (  # noqa: F401
    CalcResult,
    EvidenceTriple,
    LikelihoodRatio,
    StudyDesign,
    calc,
    fpr_from_lr,
    lr_goodman,
    lr_p_equals,
    lr_p_less_than,
    lr_sellke_berger,
    p_for_fpr,
    power,
    prior_for_fpr,
)
from .errors import (  # noqa: F401
    ConvergenceError,
    DegenerateDataError,
    DomainError,
    FprError,
    LowStatisticsError,
    NoSolutionError,
)
from .ttest import TestSummary, two_sample_t  # noqa: F401
