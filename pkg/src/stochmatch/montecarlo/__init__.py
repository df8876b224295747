"""Monte Carlo estimation of matching and unmatched probabilities."""

from stochmatch.montecarlo.analysis import RatioEstimate, compare_with_bounds, ratio_report
from stochmatch.montecarlo.estimate import (
    TrialOutcome,
    default_grid,
    estimate,
    simulate_trial,
    validate_grid,
)
from stochmatch.montecarlo.report import EstimateReport, standard_error

__all__ = [
    "EstimateReport",
    "RatioEstimate",
    "TrialOutcome",
    "compare_with_bounds",
    "default_grid",
    "estimate",
    "ratio_report",
    "simulate_trial",
    "standard_error",
    "validate_grid",
]
