"""Hoeffding kernels and the one-term Edgeworth expansion for L-statistics
of samples drawn without replacement from a finite population."""

from ._backend import BACKEND
from .edgeworth import (
    EdgeworthModel,
    build_model,
    charfn_diagnostics,
    charfn_sup,
    edgeworth_cdf,
    edgeworth_quantile,
    kappa,
    linear_moments,
    sigma_tilde,
)
from .errors import CapacityError, DegenerateStatisticError, DomainError, LStatError, PopulationParseError
from .hypergeom import hypergeom_pmf
from .kernels import KernelSet, expected_L, expected_spacing_given, g1_table, g2_at, g2_table, g3_at
from .montecarlo import EmpiricalCdf, SimulationPlan, draw_sample, empirical_quantile, l_statistic, simulate_cdf
from .population import Population, ghm_at, load_population, moment, simulate_logistic
from .weights import WeightScheme, difference, smoothness_constants, weights_from_score

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CapacityError",
    "DegenerateStatisticError",
    "DomainError",
    "EdgeworthModel",
    "EmpiricalCdf",
    "KernelSet",
    "LStatError",
    "Population",
    "PopulationParseError",
    "SimulationPlan",
    "WeightScheme",
    "build_model",
    "charfn_diagnostics",
    "charfn_sup",
    "difference",
    "draw_sample",
    "edgeworth_cdf",
    "edgeworth_quantile",
    "empirical_quantile",
    "expected_L",
    "expected_spacing_given",
    "g1_table",
    "g2_at",
    "g2_table",
    "g3_at",
    "ghm_at",
    "hypergeom_pmf",
    "kappa",
    "l_statistic",
    "linear_moments",
    "load_population",
    "moment",
    "sigma_tilde",
    "simulate_cdf",
    "simulate_logistic",
    "smoothness_constants",
    "weights_from_score",
]
