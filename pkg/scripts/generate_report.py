"""
Regenerate the JSON property report for a seed, e.g.

    poetry run python -m scripts.generate_report --seed 42 --out reports/report-42.json

The file is byte-identical for a fixed seed, trial count and set of cases,
so it can be committed and diffed to spot behaviour changes.
"""

import argparse
import logging
import sys
from pathlib import Path

from littleutils import file_to_json

from core import harness

log = logging.getLogger(__name__)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--seed", type=int, default=harness.DEFAULT_SEED)
    parser.add_argument("--trials", type=int, default=harness.DEFAULT_TRIALS)
    parser.add_argument("--suite", default=harness.ALL_SUITES)
    parser.add_argument("--out", type=Path, default=Path("reports") / "report.json")
    args = parser.parse_args()

    logging.basicConfig(level=logging.INFO)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    previous = file_to_json(args.out) if args.out.exists() else None

    cfg = harness.RunConfig(suite=args.suite, seed=args.seed, trials=args.trials, json_path=str(args.out))
    report = harness.run_suite(cfg)
    if previous is not None and previous != report.to_dict():
        log.warning("Report %s changed", args.out)
    print(report.summary())
    sys.exit(0 if report.passed else 1)


if __name__ == "__main__":
    main()
