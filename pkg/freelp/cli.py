#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
The ``freelp`` command line: norm computations, verification suites and
random tensor files.

Usage::

    freelp compute --input t.json --norm intersection --p 4
    freelp compute --input t.json --norm lp --p inf --depth 8 --format csv
    freelp verify counterexample --seed 0 --output report.json
    freelp random --n 3 --d 2 --m 2 --alphabet signed --seed 7 --output t.json

    mpirun -np 4 freelp verify lower-estimate

Exit codes: 0 success, 1 failed verification suite, 2 invalid input,
3 cap or node budget exceeded, 4 unconverged result under ``--strict``.
"""

import os
import sys
import json
import argparse

from mpi4py import MPI

import freelp.utils.tracing as tracing

from freelp import __VERSION__
from freelp.utils import default_params, load_params, create_output_path
from freelp.utils.datalog import dlog, Collect, TextPrinter, StoreToTxt, StoreToH5
from freelp.utils.instances import random_tensor
from freelp.errors import CapExceededError
from freelp.tensors import (GENERATORS, ALPHABETS, PartitionSplit, load_tensor, save_tensor,
                            tensor_to_json)
from freelp.schatten import (Exponent, intersection_norm, sum_norm, partition_spectrum,
                             split_report)
from freelp.operators import FreeOperator
from freelp.truncation import opnorm_lower_trunc
from freelp.khintchine import khintchine_report, DEFAULT_DEPTH
from freelp.report import FORMATS, write_report
from freelp.verify import run_suite, SUITE_ORDER

NORMS = ("intersection", "sum", "spectrum", "lp", "opnorm-lower")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_UNCONVERGED = 4

VERBOSE_TABLES = ['sum_norm.*', 'moment.nodes', 'truncation.value', 'khintchine.*', 'suite.case']


def parse_alpha(text):
    """ "1,3" -> (1, 3); the empty string is the empty alpha. """
    try:
        return tuple(int(k) for k in text.split(",") if k.strip())
    except ValueError:
        raise argparse.ArgumentTypeError("alpha must be a comma separated list of positions: %r"
                                         % text)


def parse_exponent(text):
    try:
        return Exponent(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _common(parser):
    parser.add_argument("--output", "-o", default=None, help="output file (default: stdout)")
    parser.add_argument("--format", choices=FORMATS, default="json", help="report format")
    parser.add_argument("--seed", type=int, default=None, help="seed of all random choices")
    parser.add_argument("--tol", type=float, default=None, help="solver tolerance (default 1e-8)")
    parser.add_argument("--max-iter", type=int, default=None, help="solver iteration limit")
    parser.add_argument("--node-budget", type=int, default=None, help="moment DFS node budget")
    parser.add_argument("--params", default=None, help="parameter file overriding the defaults")
    parser.add_argument("--verbose", "-v", action="store_true", help="print solver progress")
    parser.add_argument("--log", default=None,
                        help="write all logged values to this file (HDF5 tables for *.h5)")
    parser.add_argument("--trace", default=None, metavar="DIR",
                        help="write per-rank trace files into DIR")


def build_parser():
    parser = argparse.ArgumentParser(prog="freelp",
                                     description="Khintchine-type norms of free group polynomials")
    parser.add_argument("--version", action="version", version="freelp " + __VERSION__)
    sub = parser.add_subparsers(dest="command")
    sub.required = True

    p = sub.add_parser("compute", help="compute a norm of a tensor file")
    p.add_argument("--input", "-i", required=True, help="JSON tensor file")
    p.add_argument("--norm", choices=NORMS, default="intersection")
    p.add_argument("--p", type=parse_exponent, default=Exponent(2), help="exponent (number or inf)")
    p.add_argument("--alpha", type=parse_alpha, default=None,
                   help="explicit split k1,k2,... (intersection/spectrum only)")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="ball radius for p = inf")
    p.add_argument("--separated", action="store_true",
                   help="also compute the separated-alphabet norm (--norm lp)")
    p.add_argument("--strict", action="store_true", help="fail on unconverged results")
    _common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITE_ORDER + ["all"])
    p.add_argument("--cases", type=int, default=None, help="seeded instances per configuration")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("random", help="write a seeded random tensor file")
    p.add_argument("--n", type=int, required=True, help="number of generators")
    p.add_argument("--d", type=int, required=True, help="degree")
    p.add_argument("--m", type=int, default=1, help="coefficient size")
    p.add_argument("--alphabet", choices=ALPHABETS, default=GENERATORS)
    p.add_argument("--density", type=float, default=1., help="inclusion probability of an index")
    _common(p)
    p.set_defaults(func=cmd_random)
    return parser


def resolve_params(args):
    """ default_params < parameter file < explicit flags. """
    params = load_params(args.params) if args.params else dict(default_params)
    for key in ('seed', 'tol', 'max_iter', 'node_budget'):
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    return params


#=============================================================================
# Commands


def cmd_compute(args, params):
    t = load_tensor(args.input)
    p = args.p
    converged = True

    if args.alpha is not None:
        if args.norm not in ("intersection", "spectrum"):
            raise ValueError("--alpha applies to --norm intersection or spectrum")
        doc = split_report(t, PartitionSplit(t.d, args.alpha), p,
                           cap=params['dense_cap']).to_json()
    elif args.norm == "intersection":
        doc = intersection_norm(t, p, cap=params['dense_cap']).to_json()
    elif args.norm == "spectrum":
        doc = partition_spectrum(t, p, cap=params['dense_cap']).to_json()
    elif args.norm == "sum":
        history = dlog.set_handler('sum_norm.gap', Collect)
        try:
            report = sum_norm(t, p, tol=params['tol'], max_iter=params['max_iter'],
                              random_duals=params['random_duals'], seed=params['seed'],
                              cap=params['dense_cap'], verbose=args.verbose)
        finally:
            dlog.remove_handler(history)
        converged = report.converged
        doc = report.to_json()
        if history is not None:
            doc["gap_history"] = history.values('sum_norm.gap')
    elif args.norm == "lp":
        doc = khintchine_report(t, p, depth=args.depth, node_budget=params['node_budget'],
                                tol=params['tol'], max_iter=params['max_iter'],
                                seed=params['seed'], dense_cap=params['dense_cap'],
                                ball_cap=params['ball_cap'],
                                separated=args.separated).to_json()
    else:
        result = opnorm_lower_trunc(FreeOperator.from_tensor(t), args.depth, tol=params['tol'],
                                    max_iter=params['max_iter'], seed=params['seed'],
                                    cap=params['ball_cap'])
        converged = result.converged
        doc = {
            "p": "inf",
            "lower": result.value,
            "radius": result.radius,
            "size": result.size,
            "method": result.method,
            "iterations": result.iterations,
            "converged": result.converged,
        }

    write_report(doc, args.output, args.format)
    if args.strict and not converged:
        return EXIT_UNCONVERGED
    return EXIT_OK


def cmd_verify(args, params):
    result = run_suite(args.suite, seed=params['seed'], cases=args.cases, verbose=args.verbose)
    fname = args.output
    if fname is None:
        fname = os.path.join(create_output_path("verify-" + args.suite),
                             "%s.%s" % (args.suite, args.format))
    write_report(result.to_json(), fname, args.format)

    dlog.progress("%s: %d cases, %d failed -> %s" % (args.suite, len(result.cases),
                                                   len(result.failures), fname))
    for case in result.failures:
        dlog.progress("FAIL %s [%s: %s] (observed %s, expected %s)" %
                      (case.description, case.anchor, case.claim, case.observed, case.expected))
    return EXIT_OK if result.passed else EXIT_FAILED


def cmd_random(args, params):
    t = random_tensor(args.n, args.d, args.m, args.alphabet, seed=params['seed'],
                      density=args.density)
    if MPI.COMM_WORLD.rank != 0:
        return EXIT_OK
    if args.output is None:
        sys.stdout.write(json.dumps(tensor_to_json(t), indent=1) + "\n")
    else:
        save_tensor(t, args.output)
    return EXIT_OK


#=============================================================================
# Entry point


def _error(message):
    if MPI.COMM_WORLD.rank == 0:
        sys.stderr.write("freelp: error: %s\n" % message)


def main(argv=None):
    """ Run the command line and return the exit code. """
    args = build_parser().parse_args(argv)

    if args.trace:
        tracing.set_tracedir(args.trace)
    if args.verbose:
        dlog.set_handler(VERBOSE_TABLES, TextPrinter)
    if args.log:
        store = StoreToH5 if args.log.endswith(".h5") else StoreToTxt
        dlog.set_handler('*', store, args.log)

    saved = dict(default_params)
    try:
        params = resolve_params(args)
        default_params.update(params)
        return args.func(args, params)
    except CapExceededError as e:
        _error(e)
        return EXIT_CAP
    except (ValueError, OSError) as e:
        _error(e)
        return EXIT_INPUT
    finally:
        default_params.clear()
        default_params.update(saved)
        for name, (_, seconds) in sorted(tracing.close().items()):
            dlog.append('trace.' + name, seconds)
        dlog.close()
