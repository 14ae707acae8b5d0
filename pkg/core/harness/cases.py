"""
Registry of property cases.

A case is a function taking a seeded generator and an arithmetic mode and
returning a nonnegative residual: how far one random instance is from
satisfying the property. Cases register in definition order; a case's index
in that order picks its sub-seed, so appending cases never changes the
instances earlier cases see.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from core.prng import XorShift64Star, sub_seed
from core.utils import ArithmeticMode, catch_internal_errors, is_exact, max_abs, qa_error, relative_difference

log = logging.getLogger(__name__)

SUITES = ("spinfactor", "normlab", "clifford", "observer")
ALL_SUITES = "all"

cases = {}
case_names_list = []


@dataclass(frozen=True)
class Case:
    name: str
    suite: str
    func: Callable
    # None: the run tolerance in float mode, exact (0) in integer mode
    tolerance: Optional[float] = None
    # None: follow the run's arithmetic mode
    mode: Optional[ArithmeticMode] = None
    max_trials: Optional[int] = None
    trial_factor: int = 1

    @property
    def index(self):
        return case_names_list.index(self.name)

    def run_mode(self, requested):
        return self.mode or requested

    def trial_count(self, requested):
        count = requested * self.trial_factor
        if self.max_trials is not None:
            count = min(count, self.max_trials)
        return count

    def effective_tolerance(self, run_tolerance, mode):
        if self.tolerance is not None:
            return self.tolerance
        if mode is ArithmeticMode.INTEGER:
            return 0.0
        return run_tolerance

    def max_residual(self, seed, trials, mode):
        rng = XorShift64Star(sub_seed(seed, self.index))
        check = catch_internal_errors(self.func)
        worst = 0.0
        for _ in range(trials):
            residual = float(check(rng, mode))
            if math.isnan(residual):
                residual = math.inf
            worst = max(worst, residual)
        return worst


def case(suite, *, tolerance=None, mode=None, max_trials=None, trial_factor=1):
    def decorator(func):
        if suite not in SUITES:
            qa_error(f"Unknown suite {suite!r} for case {func.__name__}")
        name = f"{suite}.{func.__name__}"
        if name in cases:
            qa_error(f"Case {name} registered twice")
        cases[name] = Case(
            name=name,
            suite=suite,
            func=func,
            tolerance=tolerance,
            mode=mode,
            max_trials=max_trials,
            trial_factor=trial_factor,
        )
        case_names_list.append(name)
        return func

    return decorator


def cases_in_suite(suite):
    return [cases[name] for name in case_names_list if suite == ALL_SUITES or cases[name].suite == suite]


def residual(actual, expected):
    """Exact absolute difference for integer arrays, relative difference otherwise."""
    actual, expected = np.asarray(actual), np.asarray(expected)
    if is_exact(actual) and is_exact(expected):
        return max_abs(actual - expected)
    return relative_difference(actual, expected)


def violations(*conditions):
    """Number of failed conditions, for properties that are plain yes/no facts."""
    return float(sum(not c for c in conditions))
