import json
import math
from dataclasses import dataclass
from pathlib import Path

PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True)
class CaseResult:
    name: str
    status: str
    max_residual: float

    @property
    def passed(self):
        return self.status == PASS

    def to_dict(self):
        # JSON has no infinity; a case that crashed reports null
        residual = self.max_residual if math.isfinite(self.max_residual) else None
        return dict(name=self.name, status=self.status, max_residual=residual)


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    seed: int
    trials: int
    tolerance: float
    cases: tuple

    @property
    def passed(self):
        return all(result.passed for result in self.cases)

    @property
    def failures(self):
        return [result for result in self.cases if not result.passed]

    def to_dict(self):
        return dict(
            suite=self.suite,
            seed=self.seed,
            trials=self.trials,
            tolerance=self.tolerance,
            cases=[result.to_dict() for result in self.cases],
            passed=self.passed,
        )

    def dumps(self):
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False, allow_nan=False) + "\n"

    def write(self, path):
        Path(path).write_text(self.dumps(), encoding="utf-8")

    def summary(self):
        lines = [
            f"{result.status.upper():4}  {result.name:<50} {result.max_residual:.3e}"
            for result in self.cases
        ]
        verdict = "PASSED" if self.passed else f"FAILED ({len(self.failures)} of {len(self.cases)} cases)"
        lines.append(f"suite {self.suite}, seed {self.seed}, trials {self.trials}: {verdict}")
        return "\n".join(lines)
