# Copyright 2026 The dimcert developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Command line driver. Every subcommand prints one JSON document on stdout; logs and errors go to stderr.

Report schemas (all floats carry 17 significant digits, +inf is written as {"unbounded": true}):
  bound     raw_bound, dimension_lb, denominator, trivial_ub, q_source, q_used[, optimizer]
  bell      bound_eq1, bound_eq2, best, best_integer, winner, argmax_settings
  witness   one WitnessReport (witness_kind, value, implied_dimension_lb, triggered, details) or, with
            --kind all, {"witnesses": {kind: report or error}}
  generate  a PM correlation document {"type": "pm", "N", "M", "K", "p"}
  realize   status, residual, restarts_used, seed, dim, best_restart, annotation, lower_bound[, realization]
  rac-scan  {"m", "rows": [{beta, eq3_raw, eq3_lb, nayak_lb, winner}], "intervals": {winner: [[lo, hi], ...]}}
  transform a Bell correlation document {"type": "bell", "XA", "YB", "A", "B", "r"}
"""

import argparse
import datetime
import io
import logging
import os
import sys
import traceback

from dimcert.bounds import witnesses
from dimcert.bounds.bell_bounds import bell_bound
from dimcert.bounds.pm_bound import fidelity_matrix, pm_bound
from dimcert.bounds.simplex_optimizer import optimize_q
from dimcert.correlations import generators
from dimcert.correlations.io import load_pm, load_bell, save_pm, save_bell, parse_json, read_source, write_target
from dimcert.correlations.model import SimplexWeights, no_signaling_violations
from dimcert.defaults import PROBABILITY_TOL, EXACT_MAX_N, HEURISTIC_RESTARTS, SEED, SEARCH_RESTARTS, \
    SEARCH_TOL_TARGET, SEARCH_MAX_ITER
from dimcert.exceptions import DimcertError, ParseError
from dimcert.realization.realization import save_realization
from dimcert.realization.search import search_realization
from dimcert.serialization import dumps, format_float
from dimcert.transforms import Compose, PMToBellTransform, SwapPartiesTransform, PermutePreparationsTransform, \
    DeleteMeasurementTransform

WITNESS_FUNCTIONS = {
    "compressibility": lambda p, args: witnesses.check_incompressible(p),
    "quadratic": lambda p, args: witnesses.quadratic_witness(p, args.d),
    "det-w2": lambda p, args: witnesses.det_w2_witness(p),
    "psdrank": lambda p, args: witnesses.psd_rank_lower_bound(p),
    "nayak": lambda p, args: witnesses.nayak_witness(p),
}

RAC_CSV_COLUMNS = ("beta", "eq3_raw", "eq3_lb", "nayak_lb", "winner")


def _int_list(text):
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma separated integers, got %r" % text)


def _float_list(text):
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma separated numbers, got %r" % text)


def _common_options(with_tol=True):
    common = argparse.ArgumentParser(add_help=False)
    if with_tol:
        common.add_argument("--tol", type=float, default=PROBABILITY_TOL,
                            help="validation tolerance for probabilities (default %(default)g)")
    common.add_argument("-v", "--verbose", action="store_true", help="human readable summary on stderr")
    common.add_argument("--json-errors", action="store_true", help="report errors as JSON objects on stderr")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker processes, never changes the result (default: number of cores)")
    common.add_argument("--timestamps", action="store_true", help="add a generated_at field to the report")
    return common


def _input_options():
    inputs = argparse.ArgumentParser(add_help=False)
    inputs.add_argument("file", help="input file, '-' reads stdin")
    inputs.add_argument("--format", choices=("json", "csv"), default=None,
                        help="input format, guessed from the extension if omitted")
    inputs.add_argument("--dims", type=_int_list, default=None, help="N,M,K for CSV input")
    return inputs


def _q_option(parser):
    parser.add_argument("--q", default="uniform",
                        help="uniform, optimize, @file.json holding a list of weights, or comma separated weights")


def build_parser():
    common = _common_options()
    inputs = _input_options()
    parser = argparse.ArgumentParser(prog="dimcert", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    bound = sub.add_parser("bound", parents=[common, inputs], help="fidelity lower bound on D(p)")
    _q_option(bound)
    bound.add_argument("--exact-threshold", type=int, default=EXACT_MAX_N)
    bound.add_argument("--restarts", type=int, default=HEURISTIC_RESTARTS)
    bound.add_argument("--seed", type=int, default=SEED)

    bell = sub.add_parser("bell", parents=[common], help="lower bounds on the local dimensions of a Bell correlation")
    bell.add_argument("file", help="input file, '-' reads stdin")

    witness = sub.add_parser("witness", parents=[common, inputs], help="dimension witnesses")
    witness.add_argument("--kind", choices=sorted(WITNESS_FUNCTIONS) + ["all"], default="all")
    witness.add_argument("--d", type=int, default=2, help="dimension tested by the quadratic witness")

    generate = sub.add_parser("generate", help="write example correlations")
    families = generate.add_subparsers(dest="family", metavar="family")
    families.required = True
    gen_common = argparse.ArgumentParser(add_help=False, parents=[common])
    gen_common.add_argument("-o", "--output", default="-", help="output file, .csv selects CSV (default stdout)")
    toy = families.add_parser("toy", parents=[gen_common])
    toy.add_argument("--m", type=int, required=True)
    rac = families.add_parser("rac", parents=[gen_common])
    rac.add_argument("--m", type=int, required=True)
    rac.add_argument("--beta", type=float, required=True)
    degraded = families.add_parser("degraded-rac", parents=[gen_common])
    degraded.add_argument("--m", type=int, required=True)
    degraded.add_argument("--beta", type=float, required=True)
    degraded.add_argument("--n-degraded", type=int, required=True)
    degraded.add_argument("--degraded-beta", type=float, required=True)
    nonconvexity = families.add_parser("nonconvexity", parents=[gen_common])
    nonconvexity.add_argument("--mix", type=_float_list, default=[0.5, 0.5], help="weights w1,w2")
    nonconvexity.add_argument("--component", type=int, choices=(1, 2), default=None,
                              help="emit p_1 or p_2 instead of the mixture")

    realize = sub.add_parser("realize", parents=[_common_options(with_tol=False), inputs],
                             help="search for a d-dimensional realization")
    realize.add_argument("--dim", type=int, required=True)
    realize.add_argument("--restarts", type=int, default=SEARCH_RESTARTS)
    realize.add_argument("--seed", type=int, default=SEED)
    realize.add_argument("--tol", dest="tol_target", type=float, default=SEARCH_TOL_TARGET,
                         help="largest residual accepted as found (default %(default)g)")
    realize.add_argument("--validation-tol", dest="tol", type=float, default=PROBABILITY_TOL)
    realize.add_argument("--max-iter", type=int, default=SEARCH_MAX_ITER)
    realize.add_argument("--force", action="store_true", help="search even if a lower bound exceeds --dim")
    realize.add_argument("-o", "--output", default=None,
                         help="also write the realization found to this file, the report always contains it")

    scan = sub.add_parser("rac-scan", parents=[common], help="fidelity bound against Nayak's bound on RACs")
    scan.add_argument("--m", type=int, default=2)
    scan.add_argument("--beta-min", type=float, default=0.85)
    scan.add_argument("--beta-max", type=float, default=0.99)
    scan.add_argument("--step", type=float, default=1e-4)
    scan.add_argument("--csv", default=None, help="also write the rows as CSV to this file, '-' replaces the JSON")

    transform = sub.add_parser("transform", parents=[common, inputs], help="PM correlation -> Bell correlation")
    _q_option(transform)
    transform.add_argument("--permute-preparations", type=_int_list, default=None)
    transform.add_argument("--delete-measurement", type=int, default=None)
    transform.add_argument("--swap-parties", action="store_true")
    return parser


def _load_pm(args):
    dims = tuple(args.dims) if args.dims is not None else None
    return load_pm(args.file, fmt=args.format, dims=dims, tol=args.tol)


def _parse_q(text, n):
    if text == "uniform":
        return None
    if text.startswith("@"):
        doc = parse_json(read_source(text[1:]))
        weights = doc.get("q") if isinstance(doc, dict) else doc
        if not isinstance(weights, list):
            raise ParseError("q file must hold a list of weights or an object with field q", field="q")
        return SimplexWeights(weights)
    try:
        weights = [float(v) for v in text.split(",")]
    except ValueError:
        raise ParseError("cannot parse q %r" % text, field="q")
    return SimplexWeights(weights)


def cmd_bound(args):
    p = _load_pm(args)
    fid = fidelity_matrix(p)
    if args.q == "optimize":
        result = optimize_q(fid, exact_threshold=args.exact_threshold, restarts=args.restarts, seed=args.seed,
                            num_threads=args.threads)
        report = pm_bound(p, result.q_star, fidelity=fid, q_source="optimized", optimizer=result)
    else:
        q = _parse_q(args.q, p.n_preparations)
        report = pm_bound(p, q, fidelity=fid)
    logging.info("bound: D(p) >= %s, rounded up to %d (N = %d)" %
                 (format_float(report.raw_bound), report.dimension_lb, p.n_preparations))
    return report.to_dict()


def cmd_bell(args):
    r = load_bell(args.file, tol=args.tol)
    no_signaling_violations(r, tol=args.tol)
    report = bell_bound(r)
    logging.info("bell: best bound %s from %s" % (format_float(report.best), report.winner))
    return report.to_dict()


def cmd_witness(args):
    p = _load_pm(args)
    if args.kind != "all":
        report = WITNESS_FUNCTIONS[args.kind](p, args)
        logging.info("witness %s: triggered = %s" % (args.kind, report.triggered))
        return report.to_dict()
    ret = {}
    for kind in sorted(WITNESS_FUNCTIONS):
        try:
            ret[kind] = WITNESS_FUNCTIONS[kind](p, args).to_dict()
        except DimcertError as e:
            ret[kind] = e.to_dict()
        logging.info("witness %s: %s" % (kind, ret[kind].get("triggered", ret[kind].get("error"))))
    return {"witnesses": ret}


def cmd_generate(args):
    if args.family == "toy":
        p = generators.gen_toy(args.m)
    elif args.family == "rac":
        p = generators.gen_rac(args.m, args.beta)
    elif args.family == "degraded-rac":
        p = generators.gen_degraded_rac(args.m, args.beta, args.n_degraded, args.degraded_beta)
    else:
        pair = generators.gen_nonconvexity_pair()
        p = pair[args.component - 1] if args.component is not None else generators.mix(pair, args.mix)
    logging.info("generate: %s with (N, M, K) = %s" % (args.family, p.shape))
    return p


def cmd_realize(args):
    p = _load_pm(args)
    outcome = search_realization(p, args.dim, restarts=args.restarts, seed=args.seed, tol_target=args.tol_target,
                                 force=args.force, max_iter=args.max_iter, num_threads=args.threads)
    ret = outcome.to_dict()
    if outcome.found:
        ret["realization"] = outcome.realization.to_dict()
        if args.output not in (None, "-"):
            save_realization(outcome.realization, args.output)
    logging.info("realize: %s at d = %d, residual %s" % (outcome.status, args.dim, format_float(outcome.residual)))
    return ret


def _rac_csv(rows):
    out = io.StringIO()
    out.write(",".join(RAC_CSV_COLUMNS) + "\n")
    for row in rows:
        out.write("%s,%s,%d,%d,%s\n" % (format_float(row["beta"]), format_float(row["eq3_raw"]), row["eq3_lb"],
                                         row["nayak_lb"], row["winner"]))
    return out.getvalue()


def cmd_rac_scan(args):
    rows = witnesses.compare_rac_bounds(args.m, witnesses.beta_grid(args.beta_min, args.beta_max, args.step))
    intervals = dict((w, witnesses.winning_intervals(rows, w)) for w in ("eq3", "nayak", "tie"))
    logging.info("rac-scan: nayak wins on %s" % intervals["nayak"])
    if args.csv == "-":
        return _rac_csv(rows)
    if args.csv is not None:
        write_target(_rac_csv(rows), args.csv)
    return {"m": args.m, "rows": rows, "intervals": intervals}


def cmd_transform(args):
    p = _load_pm(args)
    steps = []
    if args.permute_preparations is not None:
        steps.append(PermutePreparationsTransform(args.permute_preparations))
    if args.delete_measurement is not None:
        steps.append(DeleteMeasurementTransform(args.delete_measurement))
    steps.append(PMToBellTransform())
    if args.swap_parties:
        steps.append(SwapPartiesTransform())
    data = Compose(steps)(pm=p, q=_parse_q(args.q, p.n_preparations))
    return data["bell"]


COMMANDS = {
    "bound": cmd_bound,
    "bell": cmd_bell,
    "witness": cmd_witness,
    "generate": cmd_generate,
    "realize": cmd_realize,
    "rac-scan": cmd_rac_scan,
    "transform": cmd_transform,
}


def _emit(args, result, stdout):
    if result is None:
        return
    if isinstance(result, str):
        stdout.write(result)
        return
    if args.command == "generate":
        if args.output == "-":
            save_pm(result, stdout, fmt="json")
        else:
            save_pm(result, args.output)
        return
    if args.command == "transform":
        save_bell(result, stdout)
        return
    if args.timestamps:
        result["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    stdout.write(dumps(result) + "\n")


def _report_error(args, e, exit_code, stderr):
    if getattr(args, "json_errors", False):
        payload = e.to_dict() if isinstance(e, DimcertError) else {"error": type(e).__name__, "message": str(e)}
        payload["exit_code"] = exit_code
        stderr.write(dumps(payload) + "\n")
    else:
        stderr.write("dimcert: error: %s\n" % e)


def main(argv=None, stdout=None, stderr=None):
    """Runs one command and returns the process exit code."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    handler = logging.StreamHandler(stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    root = logging.getLogger()
    old_level = root.level
    root.addHandler(handler)
    root.setLevel(logging.INFO if args.verbose else logging.WARNING)
    try:
        _emit(args, COMMANDS[args.command](args), stdout)
        return 0
    except DimcertError as e:
        _report_error(args, e, e.exit_code, stderr)
        return e.exit_code
    except Exception as e:
        logging.debug(traceback.format_exc())
        _report_error(args, e, 1, stderr)
        return 1
    finally:
        root.removeHandler(handler)
        root.setLevel(old_level)


def console_entry():
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
