"""
Command line front end.

    spacetime verify [--suite NAME] [--seed N] [--trials N] [--tol X] [--json PATH] [--mode integer|float] [--list]
    spacetime norm --point σ,s1,s2,s3 [--steps N]
    spacetime quad --a w0,w1,w2,w3 --b w0,w1,w2,w3 [--v V]
    spacetime uncurl [--signature M,N] [--samples N] [--seed N]

Exit codes: 0 success, 1 a property or evaluation failed, 2 usage error.
"""

import argparse
import logging
import os
import sys

import numpy as np

from core import harness
from core import normlab as nl
from core import observer as ob
from core import spinfactor as sf
from core.harness.cases import case_names_list, cases_in_suite
from core.prng import XorShift64Star, sub_seed
from core.utils import AlgebraError, ArithmeticMode, UsageError, is_exact

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
HELD_OUT_POINTS = 100
INT64_MAX = np.iinfo(np.int64).max


def parse_numbers(text, length):
    """
    Comma separated numbers as an int64 array when all are integers that fit
    in int64, else float64.
    """
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != length:
        raise UsageError(f"Expected {length} comma separated numbers, got {text!r}")
    try:
        integers = [int(part) for part in parts]
    except ValueError:
        pass
    else:
        if all(abs(x) <= INT64_MAX for x in integers):
            return np.array(integers, dtype=np.int64)
        log.info("%r does not fit in int64, reading it as floats", text)
        return np.array(integers, dtype=np.float64)
    try:
        return np.array([float(part) for part in parts])
    except ValueError:
        raise UsageError(f"Could not parse {text!r} as {length} numbers") from None


def parse_signature(text):
    try:
        return sf.Signature.parse(text)
    except ValueError:
        raise UsageError(f"Signature must look like M,N, got {text!r}") from None


def format_number(x):
    if is_exact(np.asarray(x)):
        return str(int(x))
    return f"{float(x):.12g}"


def verify(args):
    if args.list:
        if args.suite not in harness.suite_names():
            raise harness.UnknownSuite(f"Unknown suite {args.suite!r}")
        names = case_names_list if args.suite == harness.ALL_SUITES else [c.name for c in cases_in_suite(args.suite)]
        print("\n".join(names))
        return EXIT_OK

    cfg = harness.RunConfig(
        suite=args.suite,
        seed=args.seed,
        trials=args.trials,
        tol=args.tol,
        json_path=args.json,
        arithmetic_mode=ArithmeticMode(args.mode),
    )
    report = harness.run_suite(cfg)
    print(report.summary())
    return EXIT_OK if report.passed else EXIT_FAILURE


def eval_norm(args):
    point = parse_numbers(args.point, sf.SPACE.algebra_dimension).astype(np.float64)
    if args.steps < 1:
        raise UsageError(f"--steps must be positive, got {args.steps}")
    s = sf.from_coordinates(point, sf.SPACE)
    L = nl.solve_uncurling(sf.SPACE).L
    result = nl.unital_norm(s, L, steps=args.steps)
    closed = nl.closed_form_norm(s)
    print(f"integrated:  {format_number(result.value)}")
    print(f"closed form: {format_number(closed)}")
    print(f"difference:  {abs(result.value - closed):.3e}")
    log.info("Quadrature residual estimate %.3e", result.residual_estimate)
    return EXIT_OK


def eval_quad(args):
    velocity = ob.BoostVelocity(args.v)
    a_coords = parse_numbers(args.a, 4)
    b_coords = parse_numbers(args.b, 4)
    exact = is_exact(a_coords) and is_exact(b_coords)
    if exact and not ob.fits_exactly(a_coords, b_coords):
        log.info("Integer inputs are too large for exact evaluation, switching to floats")
        exact = False
        a_coords, b_coords = a_coords.astype(np.float64), b_coords.astype(np.float64)
    frame = ob.ObserverFrame.standard(ArithmeticMode.INTEGER if exact else ArithmeticMode.FLOAT)
    a, b = frame.vector(a_coords), frame.vector(b_coords)

    # raises EvaluationMismatch when the wedge and determinant paths disagree
    ob.quad_product(a, b, frame)
    boosted = ob.quad_product(ob.boost(a, velocity, frame), ob.boost(b, velocity, frame), frame)
    print(f"wedges:       {format_number(ob.quad_by_wedges(a, b, frame))}")
    print(f"determinants: {format_number(ob.quad_by_determinants(a, b, frame))}")
    print(f"boosted:      {format_number(boosted)}")
    return EXIT_OK


def uncurl(args):
    signature = parse_signature(args.signature)
    cfg = nl.SolverConfig(sample_count=args.samples, seed=args.seed)
    solution = nl.solve_uncurling(signature, cfg)
    held_out = nl.sample_units(signature, HELD_OUT_POINTS, XorShift64Star(sub_seed(args.seed, 1)))
    print(f"signature:               {signature}")
    print(f"curl null space dim:     {solution.curl_nullspace_dim}")
    print(f"solution dim:            {solution.solution_dim}")
    print(f"constraint residual:     {solution.constraint_residual:.3e}")
    print(f"held-out residual:       {nl.metric_constraint_residual(solution.L, held_out):.3e}")
    print("L =")
    print(np.array2string(solution.L.matrix, precision=10, suppress_small=True))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="spacetime", description="Spin factor and spacetime algebra checks")
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        default=os.environ.get("SPACETIME_LOG_LEVEL", "WARNING").upper(),
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    verify_parser = subparsers.add_parser("verify", help="run the seeded property suites")
    verify_parser.add_argument("--suite", default=harness.ALL_SUITES)
    verify_parser.add_argument("--seed", type=int, default=harness.DEFAULT_SEED)
    verify_parser.add_argument("--trials", type=int, default=harness.DEFAULT_TRIALS)
    verify_parser.add_argument("--tol", type=float, default=harness.DEFAULT_TOLERANCE)
    verify_parser.add_argument("--json", metavar="PATH")
    verify_parser.add_argument("--mode", choices=[m.value for m in ArithmeticMode], default=ArithmeticMode.FLOAT.value)
    verify_parser.add_argument("--list", action="store_true", help="print the case names and exit")
    verify_parser.set_defaults(func=verify)

    norm_parser = subparsers.add_parser("norm", help="integrate the unital norm at a point")
    norm_parser.add_argument("--point", required=True, metavar="σ,s1,s2,s3")
    norm_parser.add_argument("--steps", type=int, default=nl.DEFAULT_STEPS)
    norm_parser.set_defaults(func=eval_norm)

    quad_parser = subparsers.add_parser("quad", help="evaluate the quad product before and after a boost")
    quad_parser.add_argument("--a", required=True, metavar="w0,w1,w2,w3")
    quad_parser.add_argument("--b", required=True, metavar="w0,w1,w2,w3")
    quad_parser.add_argument("--v", type=float, default=0.0)
    quad_parser.set_defaults(func=eval_quad)

    uncurl_parser = subparsers.add_parser("uncurl", help="solve for the uncurling metric")
    uncurl_parser.add_argument("--signature", default="3,0", metavar="M,N")
    uncurl_parser.add_argument("--samples", type=int, default=nl.DEFAULT_SAMPLE_COUNT)
    uncurl_parser.add_argument("--seed", type=int, default=nl.DEFAULT_SEED)
    uncurl_parser.set_defaults(func=uncurl)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code

    logging.basicConfig(
        level=args.log_level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except AlgebraError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILURE
