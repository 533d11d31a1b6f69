"""Command-line interface: analyze / scan / verify / walk.

Exit codes: 0 success, 1 verification failure, 2 usage error.  JSON output
is canonical (sorted keys, two-space indent) and byte-stable for a fixed
input and schema version, except for the "timing" block.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import math
import sys
import time

from . import classify, walk
from .arithmetic import is_prime, totient
from .checks import CHECKS
from .graphs import build_zero_divisor_graph
from .spectral import ExactInteger, ExactQuadratic

SCHEMA_VERSION = "1"

CSV_COLUMNS = ["n", "vertex_count", "xi", "candidates", "verdict", "tau_min", "justification"]


def _fmt(x: float | None) -> str | None:
    return None if x is None else f"{x:.12g}"


def _poly_str(coeffs) -> str:
    """Ascending integer coefficients -> human polynomial in x."""
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = f"{mag}"
        elif k == 1:
            body = "x" if mag == 1 else f"{mag}x"
        else:
            body = f"x^{k}" if mag == 1 else f"{mag}x^{k}"
        parts.append(("-" if c < 0 else "+") + body)
    if not parts:
        return "0"
    head = parts[0].lstrip("+")
    return head + "".join(parts[1:])


def _spectrum_entries(spectrum) -> list[dict]:
    out = []
    for r, m in spectrum.entries:
        if isinstance(r, ExactInteger):
            tag = "integer"
        elif isinstance(r, ExactQuadratic):
            tag = "quadratic"
        else:
            tag = "numeric"
        form = str(r) if tag != "numeric" else f"root-of:{_poly_str(r.factor)}"
        out.append(
            {"value": _fmt(r.value()), "exact": tag, "form": form, "multiplicity": m}
        )
    return out


def _periodicity_dict(p) -> dict | None:
    if p is None:
        return None
    return {
        "periodic": p.periodic,
        "period": _fmt(p.period),
        "period_exact": p.period_exact.render() if p.period_exact else None,
        "reason": p.reason,
    }


def _outcome_dict(o: walk.FrOutcome | None) -> dict | None:
    if o is None:
        return None
    return {
        "kind": o.kind,
        "alpha_abs": _fmt(abs(o.alpha)),
        "beta_abs": _fmt(abs(o.beta)),
        "residual": _fmt(o.residual),
    }


def _verdict_dict(tv: classify.TransferVerdict) -> dict:
    return {
        "pair": list(tv.pair) if tv.pair else None,
        "verdict": tv.verdict,
        "justification": list(tv.justification),
        "tau": _fmt(tv.tau),
        "tau_exact": tv.tau_exact.render() if tv.tau_exact else None,
        "gamma": _fmt(tv.gamma),
        "gamma_exact": classify.render_gamma(tv.gamma_exact)
        if tv.gamma_exact is not None
        else None,
        "alpha_abs": _fmt(tv.alpha_abs),
        "beta_abs": _fmt(tv.beta_abs),
        "periodicity": _periodicity_dict(tv.periodicity),
        "numeric_confirmation": _outcome_dict(tv.numeric_confirmation),
    }


def report_document(rep: classify.AnalysisReport, elapsed: float) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "n": rep.n,
        "vertex_count": rep.vertex_count,
        "xi": rep.xi,
        "cells": rep.cells,
        "spectrum": _spectrum_entries(rep.spectrum),
        "quotient": {
            "charpoly": list(rep.quotient_charpoly),
            "charpoly_str": _poly_str(rep.quotient_charpoly),
            "zero_in_spectrum": rep.zero_in_quotient,
            "minus_one_in_spectrum": rep.minus_one_in_quotient,
        },
        "family_check": {
            "family": rep.family_check.family,
            "closed_form_excludes_minus_one": rep.family_check.closed_form_excludes,
            "closed_form_value": rep.family_check.closed_form_value,
            "exact_value": rep.family_check.exact_value,
            "agrees": rep.family_check.agrees,
        },
        "candidates": [list(p) for p in rep.candidates],
        "pairs": [_verdict_dict(tv) for tv in rep.pair_verdicts],
        "pst": _verdict_dict(rep.pst),
        "bipartite": None
        if rep.bipartite is None
        else {
            "family": rep.bipartite.family,
            "is_periodic": rep.bipartite.is_periodic,
            "has_proper_fr": rep.bipartite.has_proper_fr,
        },
        "numeric_attached": rep.numeric_attached,
        "timing": {"seconds": elapsed},
    }


def dump_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _render_human(rep: classify.AnalysisReport, elapsed: float, out) -> None:
    print(f"Gamma(Z_{rep.n}): {rep.vertex_count} vertices, xi = {rep.xi}", file=out)
    print("cells (divisor, size, kind):", file=out)
    for c in rep.cells:
        print(f"  V_{c['divisor']:<4} size {c['size']:<5} {c['kind']}", file=out)
    print("spectrum:", file=out)
    for e in _spectrum_entries(rep.spectrum):
        print(f"  {e['value']:>18}  x{e['multiplicity']:<4} {e['form']}", file=out)
    q = rep.quotient_charpoly
    print(f"quotient charpoly: {_poly_str(q)}", file=out)
    print(
        f"quotient contains 0: {rep.zero_in_quotient}; contains -1: {rep.minus_one_in_quotient}"
        f"  (family {rep.family_check.family}, agreement {rep.family_check.agrees})",
        file=out,
    )
    if rep.bipartite:
        print(
            f"bipartite ({rep.bipartite.family}): periodic={rep.bipartite.is_periodic},"
            f" proper FR={rep.bipartite.has_proper_fr}",
            file=out,
        )
    if not rep.candidates:
        print("no size-2 cells: no pair can carry PST or proper FR", file=out)
    for tv in rep.pair_verdicts:
        line = f"pair {tv.pair}: {tv.verdict}"
        if tv.tau is not None:
            line += f"  tau={tv.tau:.6f}"
            if tv.tau_exact:
                line += f" ({tv.tau_exact.render()})"
        if tv.gamma_exact is not None:
            line += f"  gamma={classify.render_gamma(tv.gamma_exact)}"
        if tv.periodicity is not None:
            line += f"  periodic={tv.periodicity.periodic}"
        if tv.numeric_confirmation is not None:
            line += f"  [walk: {tv.numeric_confirmation.kind}]"
        print(line, file=out)
        print(f"    rules: {', '.join(tv.justification)}", file=out)
    pv = rep.pst
    if pv.verdict == classify.VERDICT_PST:
        print(
            f"PST: pair {pv.pair} at tau = {pv.tau:.6f}"
            + (f" ({pv.tau_exact.render()})" if pv.tau_exact else ""),
            file=out,
        )
    else:
        print(f"PST: none ({', '.join(pv.justification)})", file=out)
    print(f"elapsed: {elapsed:.3f}s", file=out)


def cmd_analyze(args, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    n = args.n
    if n < 4 or is_prime(n):
        print(f"error: Gamma(Z_{n}) has no vertices (need composite n >= 4)", file=err)
        return 2
    started = time.perf_counter()
    rep = classify.analyze(n, numeric=not args.no_numeric)
    elapsed = time.perf_counter() - started
    if args.json:
        out.write(dump_json(report_document(rep, elapsed)))
    else:
        _render_human(rep, elapsed, out)
    return 0


def _scan_row(args_tuple) -> dict:
    n, numeric = args_tuple
    rep = classify.analyze(n, numeric=numeric)
    ranked = sorted(
        rep.pair_verdicts, key=lambda tv: classify._VERDICT_RANK[tv.verdict], reverse=True
    )
    best = ranked[0] if ranked else rep.pst
    has_pst = rep.pst.verdict == classify.VERDICT_PST
    has_fr = has_pst or any(
        tv.verdict == classify.VERDICT_PROPER_FR for tv in rep.pair_verdicts
    )
    has_periodic = any(
        tv.periodicity is not None and tv.periodicity.periodic
        for tv in rep.pair_verdicts
    )
    summary = best.verdict if rep.pair_verdicts else classify.VERDICT_NONE
    return {
        "n": n,
        "vertex_count": rep.vertex_count,
        "xi": rep.xi,
        "candidates": [list(p) for p in rep.candidates],
        "verdict": summary,
        "tau_min": _fmt(best.tau) if rep.pair_verdicts else None,
        "justification": list(best.justification),
        "has_pst": has_pst,
        "has_proper_fr": has_fr,
        "has_periodic_pair": has_periodic,
    }


def cmd_scan(args, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    if not (4 <= args.start <= args.stop):
        print("error: need 4 <= from <= to", file=err)
        return 2
    ns = [n for n in range(args.start, args.stop + 1) if not is_prime(n)]
    work = [(n, not args.no_numeric) for n in ns]
    if args.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_scan_row, work))
    else:
        rows = [_scan_row(w) for w in work]
    rows.sort(key=lambda r: r["n"])

    keep = {
        "all": lambda r: True,
        "pst": lambda r: r["has_pst"],
        "fr": lambda r: r["has_proper_fr"],
        "periodic": lambda r: r["has_periodic_pair"],
    }[args.filter]
    rows = [r for r in rows if keep(r)]

    if args.json:
        out.write(dump_json({"schema_version": SCHEMA_VERSION, "rows": rows}))
    else:
        out.write(",".join(CSV_COLUMNS) + "\n")
        for r in rows:
            cand = ";".join(f"{u}-{v}" for u, v in r["candidates"])
            just = "|".join(r["justification"])
            out.write(
                f"{r['n']},{r['vertex_count']},{r['xi']},{cand},"
                f"{r['verdict']},{r['tau_min'] or ''},{just}\n"
            )
    return 0


def cmd_verify(args, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    fn = CHECKS.get(args.check)
    if fn is None:
        print(f"error: unknown check {args.check!r}; known: {', '.join(sorted(CHECKS))}", file=err)
        return 2
    kwargs = {}
    if args.nmax is not None and args.check in ("spectrum-thm", "quotient-walk", "minus-one", "strong-cospectral"):
        kwargs["nmax"] = args.nmax
    if args.check == "quartic":
        if args.pmax is not None:
            kwargs["pmax"] = args.pmax
        if args.qmax is not None:
            kwargs["qmax"] = args.qmax
    started = time.perf_counter()
    result = fn(**kwargs)
    elapsed = time.perf_counter() - started
    status = "PASS" if result.passed else "FAIL"
    print(f"{result.check}: {status} ({result.summary}) [{elapsed:.2f}s]", file=out)
    for failure in result.failures[:10]:
        print(f"  failure: {failure}", file=out)
    return 0 if result.passed else 1


def cmd_walk(args, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    n = args.n
    if n < 4 or is_prime(n):
        print(f"error: Gamma(Z_{n}) has no vertices (need composite n >= 4)", file=err)
        return 2
    try:
        u_str, v_str = args.pair.split(",")
        u, v = int(u_str), int(v_str)
    except ValueError:
        print("error: --pair expects two residues, e.g. --pair 9,18", file=err)
        return 2
    if n - totient(n) - 1 > classify.dense_cap():
        print(
            f"error: {n - totient(n) - 1} vertices exceeds the dense cap "
            f"({classify.dense_cap()}); set ZDGQ_DENSE_CAP to override",
            file=err,
        )
        return 2
    g = build_zero_divisor_graph(n)
    if not (g.has_vertex(u) and g.has_vertex(v)):
        print(f"error: {u} or {v} is not a vertex of Gamma(Z_{n})", file=err)
        return 2
    alpha = walk.amplitude(g, u, u, args.time)
    beta = walk.amplitude(g, u, v, args.time)
    outcome = walk.classify_amplitudes(alpha, beta)
    doc = {
        "n": n,
        "pair": [u, v],
        "time": _fmt(args.time),
        "alpha": {"re": _fmt(alpha.real), "im": _fmt(alpha.imag), "abs": _fmt(abs(alpha))},
        "beta": {"re": _fmt(beta.real), "im": _fmt(beta.imag), "abs": _fmt(abs(beta))},
        "alpha_sq": _fmt(abs(alpha) ** 2),
        "beta_sq": _fmt(abs(beta) ** 2),
        "residual": _fmt(outcome.residual),
        "kind": outcome.kind,
    }
    if args.json:
        out.write(dump_json(doc))
    else:
        print(
            f"H(t) on Gamma(Z_{n}), pair ({u},{v}), t = {args.time:.12g}:\n"
            f"  alpha = H_uu = {alpha:.12g}  |alpha|^2 = {abs(alpha)**2:.12g}\n"
            f"  beta  = H_uv = {beta:.12g}  |beta|^2 = {abs(beta)**2:.12g}\n"
            f"  residual |1-|a|^2-|b|^2| = {outcome.residual:.3e}  -> {outcome.kind}",
            file=out,
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="zdgq",
        description="Zero-divisor graph spectra and quantum-walk transfer analysis.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full analysis of one Gamma(Z_n)")
    a.add_argument("n", type=int)
    a.add_argument("--json", action="store_true")
    a.add_argument("--no-numeric", action="store_true",
                   help="skip walk-engine confirmations")
    a.set_defaults(fn=cmd_analyze)

    s = sub.add_parser("scan", help="scan a range of n")
    s.add_argument("start", type=int)
    s.add_argument("stop", type=int)
    s.add_argument("--filter", choices=["pst", "fr", "periodic", "all"], default="all")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--csv", action="store_true", help="CSV output (default)")
    s.add_argument("--json", action="store_true")
    s.add_argument("--no-numeric", action="store_true")
    s.set_defaults(fn=cmd_scan)

    v = sub.add_parser("verify", help="run a named verification sweep")
    v.add_argument("check", type=str)
    v.add_argument("--nmax", type=int, default=None)
    v.add_argument("--pmax", type=int, default=None)
    v.add_argument("--qmax", type=int, default=None)
    v.set_defaults(fn=cmd_verify)

    w = sub.add_parser("walk", help="raw walk amplitudes at one time")
    w.add_argument("n", type=int)
    w.add_argument("--pair", type=str, required=True)
    w.add_argument("--time", type=float, required=True)
    w.add_argument("--json", action="store_true")
    w.set_defaults(fn=cmd_walk)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
