"""Performance analysis of cyclic polling systems with two priority classes.

Exact transform-based measures (waiting-time means/variances, queue lengths,
cycle/visit/intervisit moments, workload conservation) and an independent
discrete-event simulator for cross-validation.
"""

from .analytic import Analyzer, ClassResult, PerfReport, QueuePeriods, pcl_check
from .busyperiod import BusyPeriod, busy_period_lst, completion_time_lst
from .distributions import (Deterministic, Distribution, Erlang, Exponential,
                            Hyperexponential, Uniform, distribution_from_config)
from .errors import (IllConditioned, NoConvergence, NonpositiveParameter,
                     PriopollError, UnstableSystem, UnsupportedEvaluation,
                     ZeroSwitchover)
from .gf import GfEvaluator
from .model import (DISCIPLINES, EXHAUSTIVE, GATED, MIXED, DerivedRates,
                    PollingModel, QueueSpec, load_model, model_from_config,
                    model_to_config, validate)
from .moments import MomentEstimate, TransformHandle, lst_moment
from .sim import SimStats, replicate, run
from .vacation import vacation_crossover, vacation_mean_wait_low

__all__ = [
    "Analyzer", "PerfReport", "ClassResult", "QueuePeriods", "pcl_check",
    "BusyPeriod", "busy_period_lst", "completion_time_lst",
    "Distribution", "Deterministic", "Exponential", "Erlang",
    "Hyperexponential", "Uniform", "distribution_from_config",
    "GfEvaluator", "TransformHandle", "MomentEstimate", "lst_moment",
    "PollingModel", "QueueSpec", "DerivedRates", "validate", "load_model",
    "model_from_config", "model_to_config",
    "GATED", "EXHAUSTIVE", "MIXED", "DISCIPLINES",
    "SimStats", "run", "replicate",
    "vacation_mean_wait_low", "vacation_crossover",
    "PriopollError", "NonpositiveParameter", "ZeroSwitchover",
    "UnstableSystem", "NoConvergence", "UnsupportedEvaluation", "IllConditioned",
]

__version__ = "0.1.0"
