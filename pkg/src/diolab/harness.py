"""Scan orchestration: one runner per configuration kind.

run() executes a validated config and returns (envelope, exit code):
0 on success, 2 on invalid input, 3 when a budget exhaustion prevented the
summary. Row-level budget flags never fail a run. Runners are deterministic;
parallelism only changes how index ranges are partitioned, not any output.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import __version__
from .bounds import (LogFormInput, baker73_B_bound, bula_bound,
                     invert_linear_log, lower_bound, quantity_B,
                     quantity_Bdoubleprime, quantity_Bprime, yu_bound)
from .cfrac import (cf_expand, irrationality_exponent_series, nu_series,
                    simultaneous_scan, vb_series)
from .config import (budget_from_config, constants_from_config, parse_int_tuple,
                     parse_primes, parse_real, validate_config)
from .convergents import convergent_spart_scan, triple_decompose_scan
from .errors import (ConfigError, DiolabError, DomainError, FactorBudgetError,
                     PrecisionBudgetError, ZeroInputError)
from .exactarith import factorize, s_part
from .padic import hensel_root, mult_exponent_scan
from .report import (ReportEnvelope, config_hash, parallel_map, split_range)
from .sequences import (RecurrenceSpec, SparseDigitSpec, almost_power_frontier,
                        dominant_root, poly_value_scan, power_sum_grid,
                        recurrence_values, spart_exponent_series,
                        sparse_digit_sequence, srl_delta, sunit_solve,
                        t_unit_sum_scan, binary_form_scan, binary_form_value,
                        polynomial_value)


def _req(params: dict, key: str):
    if key not in params:
        raise ConfigError(f"missing required parameter {key!r}")
    return params[key]


def _run_factor(params, config):
    n = int(_req(params, "n"))
    fm = factorize(n, budget_from_config(config))
    rows = [{"prime": p, "exponent": e} for p, e in fm.pairs]
    summary = {"n": n, "complete": fm.complete, "unfactored_part": fm.unfactored_part}
    return ("prime", "exponent"), rows, summary, {}


def _run_spart(params, config):
    primes = parse_primes(_req(params, "primes"))
    budget_degree = int(config.get("parallelism", 1))
    if "n" in params:
        lo = hi = int(params["n"])
    else:
        lo, hi = int(_req(params, "from")), int(_req(params, "to"))

    def chunk_rows(bounds):
        out = []
        for n in range(bounds[0], bounds[1] + 1):
            dec = s_part(n, primes)
            exponent = (math.log(dec.s_part) / math.log(abs(n))
                        if abs(n) > 1 else None)
            out.append({"n": n, "s_part": dec.s_part, "cofactor": dec.cofactor,
                        "exponents": ";".join(str(e) for e in dec.exponents),
                        "exponent": exponent})
        return out

    chunks = parallel_map(chunk_rows, split_range(lo, hi, 4 * budget_degree),
                          budget_degree)
    rows = [r for c in chunks for r in c]
    included = [r["exponent"] for r in rows if r["exponent"] is not None]
    tail = included[len(included) // 2:]
    summary = {"rows": len(rows)}
    tracked = {}
    if tail:
        summary["tail_max_exponent"] = max(tail)
        tracked["tail_max_exponent"] = max(tail)
    return ("n", "s_part", "cofactor", "exponents", "exponent"), rows, summary, tracked


def _run_cf(params, config):
    number = parse_real(str(_req(params, "number")))
    count = int(_req(params, "count"))
    expansion = cf_expand(number, count)
    rows = [{"n": rec.n, "a": rec.a, "p": rec.p, "q": rec.q,
             "error_low": rec.error.lo, "error_high": rec.error.hi}
            for rec in expansion]
    summary = {"terms": len(rows)}
    if expansion.period is not None:
        start, cycle = expansion.period
        summary["period_start"] = start
        summary["period"] = ";".join(str(a) for a in cycle)
    return ("n", "a", "p", "q", "error_low", "error_high"), rows, summary, {}


def _series_rows(series):
    rows = []
    for e in series.entries:
        key = e.key if isinstance(e.key, int) else str(e.key)
        rows.append({"index": key, "value": e.value, "low": e.lo, "high": e.hi})
    return rows


def _series_summary(series):
    summary = {"entries": len(series.entries), "excluded": len(series.excluded)}
    tracked = {}
    if series.tail_max is not None:
        summary["tail_max"] = series.tail_max
        tracked["tail_max"] = series.tail_max
    for k, v in series.references.items():
        summary[f"reference_{k}"] = v
    return summary, tracked


def _run_exponents_mu(params, config):
    series = irrationality_exponent_series(
        parse_real(str(_req(params, "number"))), int(_req(params, "count")))
    summary, tracked = _series_summary(series)
    return ("index", "value", "low", "high"), _series_rows(series), summary, tracked


def _run_exponents_vb(params, config):
    series = vb_series(parse_real(str(_req(params, "number"))),
                       int(_req(params, "base")), int(_req(params, "n_max")))
    summary, tracked = _series_summary(series)
    return ("index", "value", "low", "high"), _series_rows(series), summary, tracked


def _run_exponents_simul(params, config):
    scan = simultaneous_scan(parse_real(str(_req(params, "xi"))),
                             parse_real(str(_req(params, "zeta"))),
                             int(_req(params, "q_max")))
    threshold = float(params.get("witness_exponent", 1.4))
    rows = [{"q": e.q, "p": e.p, "r": e.r,
             "max_int_distance": e.max_int_distance, "exponent": e.exponent}
            for e in scan.entries]
    witnesses = scan.witnesses(threshold)
    summary, tracked = _series_summary(scan.series)
    summary.update({
        "witness_exponent": threshold,
        "witness_count": len(witnesses),
        "first_witness_q": witnesses[0].q if witnesses else None,
        "last_witness_q": witnesses[-1].q if witnesses else None,
        "best_q": scan.best.q if scan.best else None,
        "best_exponent": scan.best.exponent if scan.best else None,
    })
    tracked["witness_count"] = float(len(witnesses))
    return (("q", "p", "r", "max_int_distance", "exponent"), rows, summary, tracked)


def _run_exponents_nu(params, config):
    series = nu_series(parse_real(str(_req(params, "number"))),
                       int(_req(params, "n_max")))
    summary, tracked = _series_summary(series)
    return ("index", "value", "low", "high"), _series_rows(series), summary, tracked


def _run_exponents_pmult(params, config):
    p = int(_req(params, "p"))
    t = int(params.get("trace", 0))
    m = int(_req(params, "norm"))
    branch = int(params.get("branch", 0))
    start_precision = int(params.get("precision", 32))
    alpha = hensel_root(t, m, p, start_precision, branch)
    scan = mult_exponent_scan(alpha, int(_req(params, "bound")),
                              int(params.get("max_precision", 4096)))
    rows = [{"a": e.a, "b": e.b, "valuation": e.valuation,
             "exponent": e.exponent, "saturated": e.saturated}
            for e in scan.entries]
    summary = {
        "pairs_with_zero_valuation": scan.zero_valuation_pairs,
        "excluded": len(scan.excluded),
        "tail_threshold": scan.tail_threshold,
        "final_precision": scan.final_precision,
    }
    tracked = {}
    if scan.tail_max is not None:
        summary["tail_max"] = scan.tail_max
        tracked["tail_max"] = scan.tail_max
    best = scan.best
    if best is not None:
        summary["best_exponent"] = best.exponent
        summary["best_pair"] = f"({best.a},{best.b})"
    return (("a", "b", "valuation", "exponent", "saturated"), rows, summary, tracked)


def _log_form_input(params) -> LogFormInput:
    return LogFormInput(
        coefficients=parse_int_tuple(_req(params, "coefficients")),
        heights=tuple(float(h) for h in _req(params, "heights")),
        degree=int(params.get("degree", 1)),
        p=int(params["p"]) if "p" in params else None,
        delta=float(params["delta"]) if "delta" in params else None,
        b_n_cap=float(params["b_n"]) if "b_n" in params else None)


def _run_bounds_eval(params, config):
    inp = _log_form_input(params)
    constants = constants_from_config(config)
    variants = params.get("variants",
                          ["eq1", "eq2", "eq3", "eq4", "eq5", "eqYu", "bula"])
    rows = []
    for variant in variants:
        try:
            if variant == "eqYu":
                rep = yu_bound(inp, constants)
            elif variant == "bula":
                b1, b2 = abs(inp.coefficients[0]), abs(inp.coefficients[-1])
                rep = bula_bound(max(b1, 1), max(b2, 1), inp.heights[0],
                                 inp.heights[-1], inp.p or 2, inp.degree,
                                 constants.c1)
            else:
                rep = lower_bound(inp, constants, variant)
        except (DomainError, ValueError) as exc:
            rows.append({"variant": variant, "rhs": None, "rhs_double_entry": None,
                         "branch": None, "consistent": None, "note": str(exc)})
            continue
        rows.append({"variant": rep.bound_id, "rhs": rep.rhs,
                     "rhs_double_entry": rep.rhs_double_entry,
                     "branch": rep.branch, "consistent": rep.consistent(),
                     "note": ";".join(rep.floored)})
    summary = {"B": quantity_B(inp)}
    try:
        summary["Bprime"] = quantity_Bprime(inp)
    except DomainError:
        pass
    summary["Bdoubleprime"] = quantity_Bdoubleprime(inp)
    if "delta_hypothesis" in params:
        rep = baker73_B_bound(inp, constants, float(params["delta_hypothesis"]))
        summary["coefficient_bound"] = rep.bound
        summary["coefficient_bound_ratio"] = rep.ratio_to_hn
    return (("variant", "rhs", "rhs_double_entry", "branch", "consistent", "note"),
            rows, summary, {})


def _run_bounds_invert(params, config):
    K = float(_req(params, "K"))
    H = float(_req(params, "H"))
    e = int(_req(params, "e"))
    x_min = float(params["x_min"]) if "x_min" in params else None
    x = invert_linear_log(K, H, e, x_min)
    rows = [{"K": K, "H": H, "e": e, "x_star": x}]
    return ("K", "H", "e", "x_star"), rows, {"solved": x is not None}, {}


def _run_scan_sparse(params, config):
    spec = SparseDigitSpec(int(_req(params, "base")), int(_req(params, "k")))
    count = int(_req(params, "count"))
    members = sparse_digit_sequence(spec, count)
    primes = parse_primes(params["primes"]) if "primes" in params else None
    rows = []
    if primes is None:
        rows = [{"j": j + 1, "u": u} for j, u in enumerate(members)]
        return ("j", "u"), rows, {"count": len(rows)}, {}
    series = spart_exponent_series(
        "sparse_digit_spart", ((j + 1, u) for j, u in enumerate(members)), primes)
    by_key = {e.key: e.value for e in series.entries}
    for j, u in enumerate(members):
        dec = s_part(u, primes)
        rows.append({"j": j + 1, "u": u, "s_part": dec.s_part,
                     "exponent": by_key.get(j + 1)})
    summary, tracked = _series_summary(series)
    return ("j", "u", "s_part", "exponent"), rows, summary, tracked


def _run_scan_recurrence(params, config):
    spec = RecurrenceSpec(parse_int_tuple(_req(params, "coefficients")),
                          parse_int_tuple(_req(params, "initial")))
    n_max = int(_req(params, "n_max"))
    values = recurrence_values(spec, n_max)
    primes = parse_primes(params["primes"]) if "primes" in params else None
    rows = []
    tracked = {}
    if primes is None:
        rows = [{"n": n, "u": u} for n, u in enumerate(values)]
        columns = ("n", "u")
        summary = {}
    else:
        series = spart_exponent_series(
            "recurrence_spart", ((n, u) for n, u in enumerate(values)), primes)
        by_key = {e.key: e.value for e in series.entries}
        for n, u in enumerate(values):
            dec = s_part(u, primes)
            rows.append({"n": n, "u": u, "s_part": dec.s_part,
                         "exponent": by_key.get(n)})
        columns = ("n", "u", "s_part", "exponent")
        summary, tracked = _series_summary(series)
        delta = srl_delta(spec, primes)
        summary["delta"] = delta if isinstance(delta, str) else delta
    report = dominant_root(spec)
    summary["dominant"] = report.is_dominant
    summary["dominant_simple"] = report.simple
    summary["degenerate"] = str(report.degenerate)
    return columns, rows, summary, tracked


def _run_scan_powersum(params, config):
    a, b = int(_req(params, "a")), int(_req(params, "b"))
    cells = power_sum_grid(a, b, int(_req(params, "m_max")), int(_req(params, "n_max")))
    primes = parse_primes(_req(params, "primes"))
    series = spart_exponent_series(
        "power_sum_spart", (((c.m, c.n), c.value) for c in cells), primes)
    by_key = {e.key: e.value for e in series.entries}
    rows = []
    for c in cells:
        dec = s_part(c.value, primes)
        rows.append({"m": c.m, "n": c.n, "value": c.value, "case": c.case,
                     "s_part": dec.s_part, "exponent": by_key.get((c.m, c.n))})
    summary, tracked = _series_summary(series)
    summary["cases_first"] = sum(1 for c in cells if c.case == "first")
    summary["cases_second"] = sum(1 for c in cells if c.case == "second")
    summary["cases_comparable"] = sum(1 for c in cells if c.case == "comparable")
    return (("m", "n", "value", "case", "s_part", "exponent"), rows, summary, tracked)


def _run_scan_tunits(params, config):
    t_primes = parse_primes(_req(params, "t_primes"))
    s_primes = parse_primes(_req(params, "s_primes"))
    rows_raw = t_unit_sum_scan(t_primes, int(_req(params, "bound")), s_primes)
    series = spart_exponent_series(
        "t_unit_sum_spart", (((r.x, r.y), r.total) for r in rows_raw), s_primes)
    by_key = {e.key: e.value for e in series.entries}
    rows = [{"x": r.x, "y": r.y, "sum": r.total,
             "s_part": r.decomposition.s_part,
             "cofactor": r.decomposition.cofactor,
             "exponent": by_key.get((r.x, r.y))} for r in rows_raw]
    summary, tracked = _series_summary(series)
    return (("x", "y", "sum", "s_part", "cofactor", "exponent"), rows, summary, tracked)


def _run_scan_poly(params, config):
    coeffs = parse_int_tuple(_req(params, "coefficients"))
    n_min, n_max = int(params.get("n_min", 0)), int(_req(params, "n_max"))
    primes = parse_primes(_req(params, "primes"))
    degree = int(config.get("parallelism", 1))
    series = poly_value_scan(coeffs, n_min, n_max, primes)
    by_key = {e.key: e.value for e in series.entries}

    def chunk_rows(bounds):
        out = []
        for n in range(bounds[0], bounds[1] + 1):
            v = polynomial_value(coeffs, n)
            dec = s_part(v, primes)
            out.append({"n": n, "value": v, "s_part": dec.s_part,
                        "exponent": by_key.get(n)})
        return out

    chunks = parallel_map(chunk_rows, split_range(n_min, n_max, 4 * degree), degree)
    rows = [r for c in chunks for r in c]
    summary, tracked = _series_summary(series)
    return ("n", "value", "s_part", "exponent"), rows, summary, tracked


def _run_scan_form(params, config):
    coeffs = parse_int_tuple(_req(params, "coefficients"))
    bound = int(_req(params, "height_bound"))
    primes = parse_primes(_req(params, "primes"))
    series = binary_form_scan(coeffs, bound, primes)
    by_key = {e.key: e.value for e in series.entries}
    rows = []
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            if (x, y) == (0, 0) or math.gcd(x, y) != 1:
                continue
            v = binary_form_value(coeffs, x, y)
            dec = s_part(v, primes)
            rows.append({"x": x, "y": y, "value": v, "s_part": dec.s_part,
                         "exponent": by_key.get((x, y))})
    summary, tracked = _series_summary(series)
    return ("x", "y", "value", "s_part", "exponent"), rows, summary, tracked


def _run_scan_convergents(params, config):
    scan = convergent_spart_scan(parse_real(str(_req(params, "number"))),
                                 parse_primes(_req(params, "primes")),
                                 int(_req(params, "n_max")),
                                 budget_from_config(config))
    rows = [{"n": r.n, "p": r.p, "q": r.q,
             "spart_p": r.spart_p.s_part, "spart_q": r.spart_q.s_part,
             "spart_pq": r.spart_pq, "exponent": r.exponent,
             "gpf": r.gpf, "gpf_is_lower_bound": r.gpf_is_lower_bound}
            for r in scan.rows]
    summary, tracked = _series_summary(scan.series)
    summary["rows_with_gpf_lower_bound_only"] = sum(
        1 for r in scan.rows if r.gpf_is_lower_bound)
    return (("n", "p", "q", "spart_p", "spart_q", "spart_pq", "exponent",
             "gpf", "gpf_is_lower_bound"), rows, summary, tracked)


def _run_scan_triples(params, config):
    scan = triple_decompose_scan(parse_real(str(_req(params, "number"))),
                                 parse_primes(_req(params, "primes")),
                                 int(_req(params, "n_max")))
    rows = [{"n": r.n, "Q": r.Q, "A": r.A, "s_part": r.spart,
             "B": r.B, "h_star_A": r.h_star_A, "exponent": r.exponent}
            for r in scan.rows]
    summary, tracked = _series_summary(scan.series)
    return (("n", "Q", "A", "s_part", "B", "h_star_A", "exponent"),
            rows, summary, tracked)


def _run_scan_frontier(params, config):
    rows_raw = almost_power_frontier(int(_req(params, "n")),
                                     int(_req(params, "q_max")),
                                     int(_req(params, "y_max")))
    rows = [{"q": r.q, "y": r.y, "A": r.scale, "height": r.scale_height,
             "h_star": r.clamped_height, "ratio": r.ratio} for r in rows_raw]
    summary = {"max_ratio": max((r.ratio for r in rows_raw), default=None)}
    return ("q", "y", "A", "height", "h_star", "ratio"), rows, summary, {}


def _run_sunit(params, config):
    result = sunit_solve(Fraction(str(_req(params, "a1"))),
                         Fraction(str(_req(params, "a2"))),
                         parse_primes(_req(params, "primes")),
                         int(_req(params, "radius")))
    rows = [{"x1": s.x1, "x2": s.x2, "h1": s.h1, "h2": s.h2}
            for s in result.solutions]
    summary = {"solutions": len(rows), "radius": result.radius,
               "max_height": result.max_height}
    tracked = {"solutions": float(len(rows))}
    return ("x1", "x2", "h1", "h2"), rows, summary, tracked


_RUNNERS = {
    "factor": _run_factor,
    "spart": _run_spart,
    "cf": _run_cf,
    "exponents-mu": _run_exponents_mu,
    "exponents-vb": _run_exponents_vb,
    "exponents-simul": _run_exponents_simul,
    "exponents-nu": _run_exponents_nu,
    "exponents-pmult": _run_exponents_pmult,
    "bounds-eval": _run_bounds_eval,
    "bounds-invert": _run_bounds_invert,
    "scan-sparse": _run_scan_sparse,
    "scan-recurrence": _run_scan_recurrence,
    "scan-powersum": _run_scan_powersum,
    "scan-tunits": _run_scan_tunits,
    "scan-poly": _run_scan_poly,
    "scan-form": _run_scan_form,
    "scan-convergents": _run_scan_convergents,
    "scan-triples": _run_scan_triples,
    "scan-frontier": _run_scan_frontier,
    "sunit": _run_sunit,
}


def run(config: dict) -> tuple[ReportEnvelope | None, int]:
    """Execute a scan configuration; returns (envelope, exit code)."""
    try:
        validate_config(config)
        runner = _RUNNERS[config["kind"]]
        columns, rows, summary, tracked = runner(config.get("params", {}), config)
    except (ConfigError, ValueError, ZeroInputError, DomainError) as exc:
        err = ReportEnvelope.build(config.get("kind", "invalid"), "", ("error",),
                                   [{"error": str(exc)}], {"error": str(exc)},
                                   version=__version__)
        return err, 2
    except (FactorBudgetError, PrecisionBudgetError) as exc:
        err = ReportEnvelope.build(config.get("kind", "budget"), "", ("error",),
                                   [{"error": str(exc)}], {"error": str(exc)},
                                   version=__version__)
        return err, 3
    envelope = ReportEnvelope.build(config["kind"], config_hash(config),
                                    columns, rows, summary, tracked,
                                    version=__version__)
    return envelope, 0
