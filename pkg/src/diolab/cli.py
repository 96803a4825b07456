"""Command-line surface: one verb per computed object.

Every subcommand assembles a scan configuration (the same JSON shape accepted
by `diolab run`), validates it against the published schema, and executes it.
Exit codes: 0 success, 2 invalid input, 3 budget exhaustion that prevented
the summary.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import load_config
from .errors import ConfigError
from .harness import run
from .report import compare_baseline


def _add_output_options(sp):
    sp.add_argument("--format", choices=("csv", "json"), default="csv",
                    help="report body format")
    sp.add_argument("--out", default=None, help="output path (default: stdout)")
    sp.add_argument("--baseline", default=None,
                    help="baseline file: compare tracked statistics, or record "
                         "them on first use")
    sp.add_argument("--baseline-tolerance", type=float, default=0.02)
    sp.add_argument("--parallelism", type=int, default=1)


def _number_help(role: str) -> str:
    return (f"{role}: an integer, 'r/s', 'phi', 'sqrt(n)', 'root(m,d)' for "
            "m**(1/d), or 'quad(a,b,c,d)' for (a+b*sqrt(d))/c")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="diolab",
        description="Exact-arithmetic scans for Diophantine approximation: "
                    "S-parts, continued fractions, approximation exponents, "
                    "and logarithmic-form bound evaluators.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("factor", help="budgeted integer factorization with an "
                                       "explicit unfactored remainder")
    sp.add_argument("n", type=int)
    sp.add_argument("--trial-bound", type=int, default=None)
    sp.add_argument("--rho-iterations", type=int, default=None)
    _add_output_options(sp)

    sp = sub.add_parser("spart", help="the largest divisor of n supported on a "
                                      "prime set, with exponents")
    sp.add_argument("--primes", required=True, help="comma-separated primes")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int)
    group.add_argument("--range", nargs=2, type=int, metavar=("FROM", "TO"))
    _add_output_options(sp)

    sp = sub.add_parser("cf", help="continued fraction convergents with "
                                   "certified error enclosures")
    sp.add_argument("number", help=_number_help("the number to expand"))
    sp.add_argument("--count", type=int, default=10)
    _add_output_options(sp)

    sp = sub.add_parser("exponents", help="empirical approximation-exponent series")
    kinds = sp.add_subparsers(dest="series", required=True)

    s = kinds.add_parser("mu", help="rational-approximation exponent along "
                                    "convergents")
    s.add_argument("number", help=_number_help("target"))
    s.add_argument("--count", type=int, default=30)
    _add_output_options(s)

    s = kinds.add_parser("vb", help="distance of b^n * theta to the integers, "
                                    "normalized by n log b")
    s.add_argument("number", help=_number_help("target"))
    s.add_argument("--base", type=int, required=True)
    s.add_argument("--n-max", type=int, default=100)
    _add_output_options(s)

    s = kinds.add_parser("simul", help="simultaneous rational approximation "
                                       "to a pair by a common denominator")
    s.add_argument("xi", help=_number_help("first target"))
    s.add_argument("zeta", help=_number_help("second target"))
    s.add_argument("--q-max", type=int, default=10**4)
    s.add_argument("--witness-exponent", type=float, default=1.4)
    _add_output_options(s)

    s = kinds.add_parser("nu", help="distance of xi^n to the integers, "
                                    "normalized by n")
    s.add_argument("number", help=_number_help("target > 1"))
    s.add_argument("--n-max", type=int, default=100)
    _add_output_options(s)

    s = kinds.add_parser("pmult", help="p-adic valuation of b*alpha - a over "
                                       "integer pairs, against log|ab|")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--trace", type=int, default=0,
                   help="t of the defining polynomial X^2 - tX + m")
    s.add_argument("--norm", type=int, required=True,
                   help="m of the defining polynomial X^2 - tX + m")
    s.add_argument("--branch", type=int, choices=(0, 1), default=0)
    s.add_argument("--bound", type=int, required=True, help="scan |ab| <= bound")
    s.add_argument("--precision", type=int, default=32)
    _add_output_options(s)

    sp = sub.add_parser("bounds", help="logarithmic-form bound evaluators")
    kinds = sp.add_subparsers(dest="mode", required=True)

    s = kinds.add_parser("eval", help="evaluate the bound family on one input")
    s.add_argument("--coefficients", required=True, help="comma-separated integers")
    s.add_argument("--heights", required=True,
                   help="comma-separated clamped heights (each >= 1)")
    s.add_argument("--degree", type=int, default=1)
    s.add_argument("--p", type=int, default=None)
    s.add_argument("--delta", type=float, default=None)
    s.add_argument("--b-n", type=float, default=None)
    s.add_argument("--variants", default=None,
                   help="comma-separated subset of eq1..eq5,eqYu,bula")
    s.add_argument("--delta-hypothesis", type=float, default=None,
                   help="also invert the smallness hypothesis into a "
                        "coefficient bound")
    _add_output_options(s)

    s = kinds.add_parser("invert", help="largest x with x <= K*log(x/H)^e")
    s.add_argument("--K", type=float, required=True)
    s.add_argument("--H", type=float, required=True)
    s.add_argument("--e", type=int, choices=(1, 2), required=True)
    s.add_argument("--x-min", type=float, default=None)
    _add_output_options(s)

    sp = sub.add_parser("scan", help="structured integer family scans")
    kinds = sp.add_subparsers(dest="family", required=True)

    s = kinds.add_parser("sparse", help="base-b integers with at most k nonzero "
                                        "digits and unit digit nonzero")
    s.add_argument("--base", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--primes", default=None)
    _add_output_options(s)

    s = kinds.add_parser("recurrence", help="integer linear recurrence values "
                                            "with dominant-root analysis")
    s.add_argument("--coefficients", required=True)
    s.add_argument("--initial", required=True)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--primes", default=None)
    _add_output_options(s)

    s = kinds.add_parser("powersum", help="a^m + b^n + 1 grid with the "
                                          "size-comparison case split")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--m-max", type=int, required=True)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--primes", required=True)
    _add_output_options(s)

    s = kinds.add_parser("tunits", help="sums of coprime integer T-units with "
                                        "S-part decompositions")
    s.add_argument("--t-primes", required=True)
    s.add_argument("--s-primes", required=True)
    s.add_argument("--bound", type=int, required=True)
    _add_output_options(s)

    s = kinds.add_parser("poly", help="S-parts of polynomial values over an "
                                      "integer range")
    s.add_argument("--coefficients", required=True,
                   help="ascending coefficients c0,c1,...")
    s.add_argument("--n-min", type=int, default=0)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--primes", required=True)
    _add_output_options(s)

    s = kinds.add_parser("form", help="S-parts of binary form values over "
                                      "primitive pairs")
    s.add_argument("--coefficients", required=True,
                   help="coefficients of sum c_i x^(d-i) y^i")
    s.add_argument("--height-bound", type=int, required=True)
    s.add_argument("--primes", required=True)
    _add_output_options(s)

    s = kinds.add_parser("convergents", help="S-parts and prime content of "
                                             "convergent numerators and "
                                             "denominators")
    s.add_argument("number", help=_number_help("target"))
    s.add_argument("--primes", required=True)
    s.add_argument("--n-max", type=int, required=True)
    _add_output_options(s)

    s = kinds.add_parser("triples", help="consecutive convergent-denominator "
                                         "products and their S-parts")
    s.add_argument("number", help=_number_help("target"))
    s.add_argument("--primes", required=True)
    s.add_argument("--n-max", type=int, required=True)
    _add_output_options(s)

    s = kinds.add_parser("frontier", help="per prime exponent q, the y "
                                          "minimizing the height of n/y^q")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q-max", type=int, required=True)
    s.add_argument("--y-max", type=int, required=True)
    _add_output_options(s)

    sp = sub.add_parser("sunit", help="bounded-radius solver for "
                                      "a1*x1 + a2*x2 = 1 in S-units")
    sp.add_argument("--a1", required=True)
    sp.add_argument("--a2", required=True)
    sp.add_argument("--primes", required=True)
    sp.add_argument("--radius", type=int, required=True)
    _add_output_options(sp)

    sp = sub.add_parser("run", help="execute a JSON scan configuration")
    sp.add_argument("config", help="path to a config validated against the "
                                   "published schema")
    return ap


def _config_from_args(args) -> dict:
    params: dict = {}
    budgets: dict = {}
    if args.command == "factor":
        kind = "factor"
        params["n"] = args.n
        if args.trial_bound is not None:
            budgets["trial_bound"] = args.trial_bound
        if args.rho_iterations is not None:
            budgets["rho_iterations"] = args.rho_iterations
    elif args.command == "spart":
        kind = "spart"
        params["primes"] = args.primes
        if args.n is not None:
            params["n"] = args.n
        else:
            params["from"], params["to"] = args.range
    elif args.command == "cf":
        kind = "cf"
        params = {"number": args.number, "count": args.count}
    elif args.command == "exponents":
        kind = f"exponents-{args.series}"
        if args.series == "mu":
            params = {"number": args.number, "count": args.count}
        elif args.series == "vb":
            params = {"number": args.number, "base": args.base, "n_max": args.n_max}
        elif args.series == "simul":
            params = {"xi": args.xi, "zeta": args.zeta, "q_max": args.q_max,
                      "witness_exponent": args.witness_exponent}
        elif args.series == "nu":
            params = {"number": args.number, "n_max": args.n_max}
        else:
            params = {"p": args.p, "trace": args.trace, "norm": args.norm,
                      "branch": args.branch, "bound": args.bound,
                      "precision": args.precision}
    elif args.command == "bounds":
        kind = f"bounds-{args.mode}"
        if args.mode == "eval":
            params = {"coefficients": args.coefficients,
                      "heights": [float(h) for h in args.heights.split(",")],
                      "degree": args.degree}
            if args.p is not None:
                params["p"] = args.p
            if args.delta is not None:
                params["delta"] = args.delta
            if args.b_n is not None:
                params["b_n"] = args.b_n
            if args.variants:
                params["variants"] = args.variants.split(",")
            if args.delta_hypothesis is not None:
                params["delta_hypothesis"] = args.delta_hypothesis
        else:
            params = {"K": args.K, "H": args.H, "e": args.e}
            if args.x_min is not None:
                params["x_min"] = args.x_min
    elif args.command == "scan":
        kind = f"scan-{args.family}"
        if args.family == "sparse":
            params = {"base": args.base, "k": args.k, "count": args.count}
            if args.primes:
                params["primes"] = args.primes
        elif args.family == "recurrence":
            params = {"coefficients": args.coefficients, "initial": args.initial,
                      "n_max": args.n_max}
            if args.primes:
                params["primes"] = args.primes
        elif args.family == "powersum":
            params = {"a": args.a, "b": args.b, "m_max": args.m_max,
                      "n_max": args.n_max, "primes": args.primes}
        elif args.family == "tunits":
            params = {"t_primes": args.t_primes, "s_primes": args.s_primes,
                      "bound": args.bound}
        elif args.family == "poly":
            params = {"coefficients": args.coefficients, "n_min": args.n_min,
                      "n_max": args.n_max, "primes": args.primes}
        elif args.family == "form":
            params = {"coefficients": args.coefficients,
                      "height_bound": args.height_bound, "primes": args.primes}
        elif args.family in ("convergents", "triples"):
            params = {"number": args.number, "primes": args.primes,
                      "n_max": args.n_max}
        else:
            params = {"n": args.n, "q_max": args.q_max, "y_max": args.y_max}
    else:
        kind = "sunit"
        params = {"a1": args.a1, "a2": args.a2, "primes": args.primes,
                  "radius": args.radius}
    config = {"schema_version": 1, "kind": kind, "params": params,
              "output": {"format": args.format, "path": args.out},
              "parallelism": args.parallelism}
    if budgets:
        config["budgets"] = budgets
    if args.baseline:
        config["baseline"] = args.baseline
        config["baseline_tolerance"] = args.baseline_tolerance
    return config


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        try:
            config = load_config(args.config)
        except ConfigError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    else:
        config = _config_from_args(args)
    envelope, code = run(config)
    if code != 0:
        print(f"error: {envelope.summary.get('error')}", file=sys.stderr)
        return code
    output = config.get("output") or {}
    fmt = output.get("format", "csv")
    path = output.get("path")
    if path:
        envelope.write(path, fmt)
    else:
        sys.stdout.write(envelope.to_csv() if fmt == "csv" else envelope.to_json())
    baseline = config.get("baseline")
    if baseline:
        comparison = compare_baseline(envelope, baseline,
                                      config.get("baseline_tolerance", 0.02))
        for stat, status, base_val, new_val in comparison.results:
            print(f"baseline {stat}: {status} (stored={base_val} new={new_val})",
                  file=sys.stderr)
        if not comparison.passed:
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
