"""
Seeded property runner over the algebra modules.

Every case gets its own generator seeded from (run seed, case index), so a
run is fully determined by its RunConfig and the set of registered cases.
Cases run one after another in registration order.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from core.harness import suites  # noqa: F401  (registers the cases)
from core.harness.cases import ALL_SUITES, SUITES, cases_in_suite
from core.harness.report import FAIL, PASS, CaseResult, SuiteReport
from core.prng import MASK64
from core.utils import AlgebraError, ArithmeticMode, UsageError

log = logging.getLogger(__name__)

DEFAULT_SEED = 42
DEFAULT_TRIALS = 200
DEFAULT_TOLERANCE = 1e-9


class HarnessError(AlgebraError):
    pass


class UnknownSuite(HarnessError, UsageError):
    pass


class InvalidRunConfig(HarnessError, UsageError):
    pass


@dataclass(frozen=True)
class RunConfig:
    suite: str = ALL_SUITES
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    tol: float = DEFAULT_TOLERANCE
    json_path: Optional[str] = None
    arithmetic_mode: ArithmeticMode = ArithmeticMode.FLOAT

    def __post_init__(self):
        if not isinstance(self.trials, int) or self.trials < 1:
            raise InvalidRunConfig(f"trials must be a positive integer, got {self.trials!r}")
        if not self.tol > 0:
            raise InvalidRunConfig(f"tol must be positive, got {self.tol!r}")
        if not 0 <= self.seed <= MASK64:
            raise InvalidRunConfig(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        object.__setattr__(self, "arithmetic_mode", ArithmeticMode(self.arithmetic_mode))


def suite_names():
    return SUITES + (ALL_SUITES,)


def run_case(case, cfg):
    mode = case.run_mode(cfg.arithmetic_mode)
    trials = case.trial_count(cfg.trials)
    tolerance = case.effective_tolerance(cfg.tol, mode)
    worst = case.max_residual(cfg.seed, trials, mode)
    status = PASS if worst <= tolerance else FAIL
    if status == FAIL:
        log.warning("%s failed: max residual %.3e over %s trials exceeds %.3e", case.name, worst, trials, tolerance)
    else:
        log.debug("%s passed: max residual %.3e over %s trials", case.name, worst, trials)
    return CaseResult(name=case.name, status=status, max_residual=worst)


def run_suite(cfg):
    if cfg.suite not in suite_names():
        raise UnknownSuite(f"Unknown suite {cfg.suite!r}, choose from {', '.join(suite_names())}")

    log.info("Running suite %s with seed %s, %s trials, mode %s", cfg.suite, cfg.seed, cfg.trials, cfg.arithmetic_mode.value)
    report = SuiteReport(
        suite=cfg.suite,
        seed=cfg.seed,
        trials=cfg.trials,
        tolerance=cfg.tol,
        cases=tuple(run_case(case, cfg) for case in cases_in_suite(cfg.suite)),
    )
    if cfg.json_path:
        report.write(cfg.json_path)
        log.info("Wrote report to %s", cfg.json_path)
    return report
