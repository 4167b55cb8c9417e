"""Command-line front end: ``mtzeta coeff | eval | verify``.

Exit codes: 0 on success (for ``verify``: every asserted check passed),
1 on usage errors, 2 on domain or computation errors and failed checks.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from pathlib import Path

from mpmath import mp, mpf

from . import __version__
from .identities import DEFAULT_GRIDS, SUITES, run_suite
from .mteval import (
    bbb_rhs,
    euler_double_zeta,
    lambda_eval,
    mt_zeta_fast,
    mt_zeta_oracle,
    xi_mt_eval,
    xi_mt_g_eval,
)
from .numerics import GUARD_BITS, DomainError, PrecisionError, ValueWithError, parse_complex
from .series import IndexVector, akmt_coefficients

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2
MIN_PREC, MAX_PREC = 64, 4096


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments; usage errors here exit with 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def output_digits(prec: int) -> int:
    """Decimal digits printed for a ``prec``-bit result."""
    return int(math.floor(prec * math.log10(2))) - 2


def format_real(x, digits: int) -> str:
    return mp.nstr(mpf(x), digits, strip_zeros=False, min_fixed=-4, max_fixed=digits)


def format_bound(x) -> str:
    return mp.nstr(mpf(x), 3, strip_zeros=False, min_fixed=1, max_fixed=0)


def certified_digits(v: ValueWithError, prec: int) -> int:
    """``output_digits(prec)``, reduced when the error bound is larger."""
    digits = output_digits(prec)
    with mp.workprec(prec + GUARD_BITS):
        size = abs(v.estimate)
        if v.abs_error > 0 and size > 0:
            digits = min(digits, max(1, int(mp.floor(mp.log10(size / v.abs_error)))))
    return digits


def value_record(v: ValueWithError, prec: int) -> dict:
    digits = certified_digits(v, prec)
    with mp.workprec(prec + GUARD_BITS):
        est = v.estimate
        if isinstance(est, mp.mpc) and est.imag != 0:
            value = {"re": format_real(est.real, digits), "im": format_real(est.imag, digits)}
        else:
            value = {"re": format_real(mp.re(est), digits), "im": "0"}
        return {
            "value": value,
            "digits": digits,
            "error_bound": format_bound(v.abs_error),
            "rigorous": bool(v.rigorous),
        }


def _int_list(text: str, name: str) -> tuple[int, ...]:
    try:
        items = tuple(int(p) for p in text.replace(" ", "").split(",") if p != "")
    except ValueError:
        raise UsageError(f"--{name} expects comma-separated integers, got {text!r}") from None
    if not items:
        raise UsageError(f"--{name} is empty")
    return items


def _complex_arg(text: str, name: str):
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise UsageError(f"--{name}: {exc}") from None


def _check_prec(prec: int):
    if not MIN_PREC <= prec <= MAX_PREC:
        raise UsageError(f"--prec must be between {MIN_PREC} and {MAX_PREC} bits")


# --------------------------------------------------------------------------
# coeff


def cmd_coeff(args) -> int:
    index = _int_list(args.k, "k")
    if any(k < 1 for k in index):
        raise UsageError("--k entries must be positive integers")
    if args.count < 0:
        raise UsageError("--count must be >= 0")
    rows = akmt_coefficients(IndexVector(index), args.count)
    if args.csv:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["m", "numerator", "denominator"])
        for m, c in enumerate(rows):
            w.writerow([m, c.numerator, c.denominator])
    elif args.json:
        rec = {
            "command": "coeff",
            "parameters": {"k": list(index), "count": args.count},
            "result": [{"m": m, "numerator": str(c.numerator), "denominator": str(c.denominator)}
                       for m, c in enumerate(rows)],
        }
        print(json.dumps(rec, indent=2))
    else:
        for m, c in enumerate(rows):
            print(f"{m}\t{c.numerator}\t{c.denominator}")
    return EXIT_OK


# --------------------------------------------------------------------------
# eval


def _eval_mt(args, prec):
    if args.exponents is None or args.last is None:
        raise UsageError("eval mt needs --exponents and --last")
    parts = [p for p in args.exponents.replace(" ", "").split(",") if p]
    if not parts:
        raise UsageError("--exponents is empty")
    exps = [_complex_arg(p, "exponents") for p in parts]
    last = _complex_arg(args.last, "last")
    integral = all(mp.im(e) == 0 and mp.isint(mp.re(e)) and mp.re(e) >= 0 for e in exps)
    method = args.method or ("fast" if integral else "oracle")
    params = {"exponents": parts, "last": args.last, "method": method}
    if method == "fast":
        if not integral:
            raise DomainError("the fast path needs nonnegative integer exponents")
        v = mt_zeta_fast([int(mp.re(e)) for e in exps], last, prec=prec, m_max=args.mmax)
    elif method == "oracle":
        v = mt_zeta_oracle(exps, last, cutoff=args.mmax, prec=prec)
    else:
        raise UsageError("--method for mt is 'fast' or 'oracle'")
    return params, v


def _eval_xi(args, prec):
    if not args.k or args.s is None:
        raise UsageError("eval xi needs --k and --s")
    if len(args.k) != 1:
        raise UsageError("eval xi takes a single --k")
    index = _int_list(args.k[0], "k")
    s = _complex_arg(args.s, "s")
    method = args.method or "gamma"
    if method not in ("gamma", "quad"):
        raise UsageError("--method for xi is 'gamma' or 'quad'")
    try:
        IndexVector(index).require_positive()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return {"k": list(index), "s": args.s, "method": method}, xi_mt_eval(index, s, prec=prec, method=method)


def _eval_xig(args, prec):
    if args.s is None:
        raise UsageError("eval xig needs --s")
    indices = []
    for text in args.k or []:
        full = _int_list(text, "k")
        try:
            indices.append(IndexVector.lam(full).require_positive())
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    s = _complex_arg(args.s, "s")
    method = args.method or "gamma"
    if method not in ("gamma", "quad"):
        raise UsageError("--method for xig is 'gamma' or 'quad'")
    params = {"k": [list(i.entries) + [i.tail] for i in indices], "s": args.s, "method": method}
    return params, xi_mt_g_eval(indices, s, prec=prec, method=method)


def _eval_lambda(args, prec):
    if not args.k or args.z is None:
        raise UsageError("eval lambda needs --k and --z")
    full = _int_list(args.k[0], "k")
    try:
        index = IndexVector.lam(full).require_positive()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    z = _complex_arg(args.z, "z")
    return {"k": list(full), "z": args.z}, lambda_eval(index, z, prec=prec)


def _eval_zeta2(args, prec):
    if args.a is None or args.b is None:
        raise UsageError("eval zeta2 needs --a and --b")
    params = {"a": args.a, "b": args.b, "closed_form": bool(args.closed_form)}
    if args.closed_form:
        return params, bbb_rhs(args.a, args.b, prec=prec)
    return params, euler_double_zeta(args.a, args.b, prec=prec)


EVALUATORS = {
    "mt": _eval_mt,
    "xi": _eval_xi,
    "xig": _eval_xig,
    "lambda": _eval_lambda,
    "zeta2": _eval_zeta2,
}


def cmd_eval(args) -> int:
    _check_prec(args.prec)
    t0 = time.perf_counter()
    params, value = EVALUATORS[args.kind](args, args.prec)
    elapsed = (time.perf_counter() - t0) * 1000
    rec = {
        "command": f"eval {args.kind}",
        "parameters": params,
        "prec": args.prec,
        "result": value_record(value, args.prec),
    }
    if args.json:
        out = dict(rec, elapsed_ms=round(elapsed, 1))
        print(json.dumps(out, indent=2))
    else:
        res = rec["result"]
        v = res["value"]
        shown = v["re"] if v["im"] == "0" else f"{v['re']} + {v['im']}i"
        print(f"value     {shown}")
        print(f"error  <= {res['error_bound']} ({'rigorous' if res['rigorous'] else 'estimated'})")
        print(f"digits    {res['digits']}")
        print(f"elapsed   {elapsed:.1f} ms")
    return EXIT_OK


# --------------------------------------------------------------------------
# verify


def _parse_grid(items: list[str], suite: str) -> list[dict]:
    overrides = {}
    for item in items:
        if "=" not in item:
            raise UsageError(f"--grid expects key=value, got {item!r}")
        key, val = item.split("=", 1)
        overrides[key.strip()] = val.strip()
    base = DEFAULT_GRIDS[suite]
    known = set().union(*(d.keys() for d in base))
    bad = set(overrides) - known
    if bad:
        raise UsageError(f"unknown grid key(s) for {suite}: {', '.join(sorted(bad))}")
    out = []
    for d in base:
        new = dict(d)
        for key, val in overrides.items():
            new[key] = _coerce_like(d.get(key), val, key)
        if new not in out:
            out.append(new)
    return out


def _coerce_like(example, text: str, key: str):
    if isinstance(example, list):
        return [] if text in ("", "[]") else list(_int_list(text.strip("[]"), key))
    if isinstance(example, str):
        _complex_arg(text, key)
        return text
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"grid key {key} expects an integer") from None


def report_record(rep) -> dict:
    digits = output_digits(rep.prec)
    params = {}
    for k, v in rep.parameters.items():
        if isinstance(v, (mp.mpf, mp.mpc)):
            params[k] = mp.nstr(v, 15)
        else:
            params[k] = v
    return {
        "identity_id": rep.identity_id,
        "parameters": params,
        "lhs": value_record(rep.lhs, rep.prec),
        "rhs": value_record(rep.rhs, rep.prec),
        "residual": format_bound(rep.residual),
        "budget": format_bound(rep.budget),
        "slack": format_bound(rep.slack),
        "pass": bool(rep.passed),
        "asserted": bool(rep.asserted),
        "conditions": {name: bool(ok) for name, ok in rep.conditions},
        "details": rep.details,
        "digits": digits,
    }


def cmd_verify(args) -> int:
    _check_prec(args.prec)
    suites = list(SUITES) if "all" in args.suites else args.suites
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)} or all")
    grids = {}
    if args.grid:
        if len(suites) != 1:
            raise UsageError("--grid applies to a single suite")
        grids[suites[0]] = _parse_grid(args.grid, suites[0])
    try:
        slack = mpf(args.slack)
    except (ValueError, TypeError):
        raise UsageError("--slack expects a decimal number") from None
    if slack < 0:
        raise UsageError("--slack must be >= 0")

    t0 = time.perf_counter()
    records = []
    by_suite: dict[str, list] = {}
    for name in suites:
        reps = run_suite([name], prec=args.prec, slack=slack, grids=grids)
        recs = [report_record(r) for r in reps]
        by_suite[name] = recs
        records.extend(recs)
    elapsed = (time.perf_counter() - t0) * 1000
    asserted = [r for r in records if r["asserted"]]
    failed = [r for r in asserted if not r["pass"]]
    summary = {"total": len(records), "asserted": len(asserted),
               "passed": len(asserted) - len(failed), "failed": len(failed),
               "all_pass": not failed}
    payload = {"command": "verify", "suites": suites, "prec": args.prec,
               "slack": format_bound(slack), "reports": records, "summary": summary}

    if args.update_golden:
        _write_golden(Path(args.update_golden), by_suite, args.prec, slack)

    if args.json:
        print(json.dumps(dict(payload, elapsed_ms=round(elapsed, 1)), indent=2))
    else:
        for r in records:
            tag = "PASS" if r["pass"] else "FAIL"
            if not r["asserted"]:
                tag += "*"
            p = " ".join(f"{k}={v}" for k, v in r["parameters"].items())
            extra = "".join(f" {k}={'ok' if ok else 'no'}" for k, ok in r["conditions"].items())
            print(f"{tag:5} {r['identity_id']:12} {p:28} residual={r['residual']:>9} "
                  f"budget={r['budget']:>9}{extra}")
        print(f"{summary['passed']}/{summary['asserted']} asserted checks passed"
              f" ({summary['total']} reports, {elapsed / 1000:.1f} s)")
        if summary["total"] != summary["asserted"]:
            print("* reported only, not asserted")
    return EXIT_OK if summary["all_pass"] else EXIT_COMPUTE


def golden_payload(name: str, recs: list[dict], prec: int, slack) -> dict:
    return {"suite": name, "prec": prec, "slack": format_bound(slack), "reports": recs}


def _write_golden(directory: Path, by_suite: dict, prec: int, slack):
    directory.mkdir(parents=True, exist_ok=True)
    for name, recs in by_suite.items():
        path = directory / f"verify_{name}.json"
        path.write_text(json.dumps(golden_payload(name, recs, prec, slack), indent=2) + "\n")
        print(f"wrote {path}", file=sys.stderr)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mtzeta", description="Mordell-Tornheim zeta values, xi-functions and identity checks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("coeff", help="exact coefficients C_m of prod Li_k(1-e^-t)/(e^t-1)")
    c.add_argument("--k", required=True, help="index, e.g. 1,2")
    c.add_argument("--count", type=int, default=10, help="largest m (default 10)")
    fmt = c.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_coeff)

    e = sub.add_parser("eval", help="evaluate one function value")
    e.add_argument("kind", choices=sorted(EVALUATORS))
    e.add_argument("--exponents", help="mt: s_1,...,s_r")
    e.add_argument("--last", help="mt: the exponent of m_1+...+m_r")
    e.add_argument("--k", action="append",
                   help="xi: index k_1,...,k_r; lambda/xig: k_1,...,k_r,tail (repeat for xig)")
    e.add_argument("--s", help="complex argument, e.g. 3, 7/2, 3+0.5i")
    e.add_argument("--z", help="lambda: point in [0, 1)")
    e.add_argument("--a", type=int, help="zeta2: first exponent")
    e.add_argument("--b", type=int, help="zeta2: second exponent")
    e.add_argument("--closed-form", action="store_true", help="zeta2: evaluate the odd-weight closed form")
    e.add_argument("--method", help="mt: fast|oracle; xi, xig: gamma|quad")
    e.add_argument("--mmax", type=int, help="mt: summation cutoff override")
    e.add_argument("--prec", type=int, default=256, help="target precision in bits (64-4096)")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", help="run identity checks")
    v.add_argument("suites", nargs="+", help=f"one or more of: {', '.join(SUITES)}, all")
    v.add_argument("--prec", type=int, default=256)
    v.add_argument("--slack", default="1e-10")
    v.add_argument("--grid", action="append", help="override a grid parameter, key=value")
    v.add_argument("--json", action="store_true")
    v.add_argument("--update-golden", metavar="DIR", help="write golden files for the selected suites")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"mtzeta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, PrecisionError, ZeroDivisionError) as exc:
        print(f"mtzeta: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except ValueError as exc:
        print(f"mtzeta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
