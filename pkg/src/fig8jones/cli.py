"""Command-line front end.

    fig8jones eval --r 1 --N 3
    fig8jones predict --r 9/10
    fig8jones scan --r 1 --N 1000,10000,100000 --mode product-only --format csv
    fig8jones verify --suite appendix
    fig8jones table --r 9/10 --N 90
    fig8jones imaginary --s 1 --N 1000,10000

Exit status: 0 success, 1 a verification suite failed, 2 invalid input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import warnings
from typing import Optional

import mpmath

from . import __version__
from . import asymptotics as asy
from . import harness
from .evaluator import (
    IMAGINARY,
    NearZeroWarning,
    Parameter,
    critical_indices,
    jones_value,
    sign_table_check,
)
from .golden import verify_golden
from .special import PrecisionConfig

EXIT_OK, EXIT_FAILED, EXIT_INVALID = 0, 1, 2

PRECISION_ENV = "FIG8JONES_BITS"

CSV_COLUMNS = ("N", "r_kind", "r", "mode", "log_abs", "s_N", "prediction", "abs_error", "subseq_class")

SUITES = ("appendix", "special", "continuity", "sandwich", "rational", "small-r", "maxima",
          "imaginary", "golden", "all")


class ParameterParseError(ValueError):
    def __init__(self, text: str, position: int, reason: str):
        super().__init__(f"cannot parse parameter {text!r} at position {position}: {reason}")
        self.text = text
        self.position = position


_RATIONAL = re.compile(r"\s*([+-]?\d+)\s*/\s*([+-]?\d+)\s*$")
_INTEGER = re.compile(r"\s*\+?\d+\s*$")
_DECIMAL = re.compile(r"\s*\+?(\d+\.\d*|\.\d+|\d+(\.\d*)?[eE][+-]?\d+|\d+\.\d*[eE][+-]?\d+)\s*$")
_IMAG = re.compile(r"\s*(?:[iI]\s*(?P<a>[^iI]+?)|(?P<b>[^iI]+?)\s*[iI])\s*$")


def parse_parameter(text: str) -> Parameter:
    """Parse "9/10" (exact), "0.9" (real), "i0.5" / "0.5i" (imaginary).

    A bare integer such as "1" is exact, i.e. the rational n/1.
    """
    m = _IMAG.match(text)
    if m:
        body = m.group("a") or m.group("b")
        if not _DECIMAL.match(body) and not _INTEGER.match(body):
            raise ParameterParseError(text, text.find(body.strip()), "imaginary magnitude must be a decimal")
        s = float(body)
        if not (math.isfinite(s) and s > 0):
            raise ParameterParseError(text, text.find(body.strip()), "imaginary magnitude must be > 0")
        return Parameter.imaginary(s)
    m = _RATIONAL.match(text)
    if m:
        q, p = int(m.group(1)), int(m.group(2))
        if p == 0:
            raise ParameterParseError(text, m.start(2), "zero denominator")
        if p < 0:
            raise ParameterParseError(text, m.start(2), "denominator must be positive")
        if q < 0:
            raise ParameterParseError(text, m.start(1), "r must be >= 0")
        return Parameter.rational(q, p)
    if _INTEGER.match(text):
        return Parameter.rational(int(text), 1)
    if _DECIMAL.match(text):
        r = float(text)
        if not math.isfinite(r):
            raise ParameterParseError(text, 0, "not finite")
        return Parameter.real(r)
    pos = 0
    stripped = text.lstrip()
    pos = len(text) - len(stripped)
    for i, ch in enumerate(stripped):
        if not (ch.isdigit() or ch in "./eE+"):
            pos += i
            break
    else:
        pos = len(text)
    raise ParameterParseError(text, pos, "expected a decimal, q/p, or an i-suffixed magnitude")


def parse_N_list(text: str) -> list:
    """"100", "100,200,400", "100:1000:100" (inclusive), or "1000:1000000:x10" (geometric)."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ":" in part:
            a, b, step = (x.strip() for x in part.split(":"))
            a, b = int(a), int(b)
            if step.startswith("x"):
                factor = float(step[1:])
                if factor <= 1:
                    raise ValueError("geometric factor must exceed 1")
                n = a
                while n <= b:
                    out.append(n)
                    n = max(n + 1, int(round(n * factor)))
            else:
                st = int(step)
                if st <= 0:
                    raise ValueError("step must be positive")
                out.extend(range(a, b + 1, st))
        else:
            out.append(int(part))
    if any(n < 1 for n in out):
        raise ValueError("N must be positive")
    return sorted(set(out))


def _precision(args) -> PrecisionConfig:
    bits = args.bits
    if bits is None:
        env = os.environ.get(PRECISION_ENV)
        bits = int(env) if env else 128
    return PrecisionConfig(working_bits=bits)


def _clean(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def _meta(command: str, param: Optional[Parameter] = None, regime: Optional[asy.Regime] = None, **extra) -> dict:
    meta = {"tool": "fig8jones", "version": __version__, "command": command}
    if param is not None:
        meta["parameter"] = param.label()
        meta["r_kind"] = param.kind
    if regime is not None:
        meta["regime"] = regime.tag
        meta["prediction_scale"] = regime.scale
    meta.update(extra)
    return meta


def _dump_json(meta: dict, rows: list) -> str:
    doc = {"meta": meta, "rows": [{k: _clean(v) for k, v in row.items()} for row in rows]}
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return "" if math.isnan(v) else repr(v)
    return str(v)


def scan_rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        w.writerow([_fmt(row.N), row.r_kind, row.r, row.mode, _fmt(row.log_abs), _fmt(row.s_N),
                    _fmt(row.prediction), _fmt(row.abs_error), row.subseq_class])
    return buf.getvalue()


def _report_rows(report: harness.SuiteReport) -> list:
    return [{"suite": report.name, "description": c.description, "passed": c.passed,
             "measured": c.measured, "bound": c.bound} for c in report.checks]


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _value_str(v, bits: int = 128) -> str:
    # values that are integers up to the last few working bits print as integers
    n = mpmath.nint(v)
    if abs(n) < 10 ** 15 and abs(v - n) <= mpmath.ldexp(max(1, abs(n)), 10 - bits):
        return str(int(n))
    return mpmath.nstr(v, 20)


def cmd_eval(args) -> int:
    param = parse_parameter(args.r)
    cfg = _precision(args)
    N = args.N
    ev = jones_value(param, N, cfg)
    scale = 1.0 if param.kind == IMAGINARY else 2.0 * math.pi
    growth = scale * ev.log_abs / N if ev.value != 0 else None
    row = {"N": N, "r_kind": param.kind, "r": param.label(), "value": _value_str(ev.value, cfg.working_bits),
           "log_abs": ev.log_abs if ev.value != 0 else None, "s_N": growth,
           "precision_bits": ev.precision_bits_used}
    if args.format == "json":
        _emit(args, _dump_json(_meta("eval", param), [row]))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(row), lineterminator="\r\n")
        w.writeheader()
        w.writerow({k: _fmt(v) for k, v in row.items()})
        _emit(args, buf.getvalue())
    else:
        lines = [f"J_{N}(E; r={param.label()}) = {row['value']}"]
        if growth is not None:
            lines.append(f"log|J_N| = {ev.log_abs!r}")
            lines.append(("log J_N / N" if param.kind == IMAGINARY else "2 pi log|J_N| / N") + f" = {growth!r}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_predict(args) -> int:
    param = parse_parameter(args.r)
    cfg = _precision(args)
    regime = asy.classify(param, cfg)
    row = {"r": param.label(), "r_kind": param.kind, "regime": regime.tag,
           "limsup_prediction": regime.limsup_prediction, "liminf_prediction": regime.liminf_prediction,
           "limit_exists": regime.limit_exists, "scale": regime.scale}
    if param.is_circular and param.value > 0:
        try:
            row["vhat"] = asy.vhat_value(param.value, cfg)
            row["cone_angle"] = 2 * math.pi * abs(1 - param.value)
        except asy.DomainError:
            pass
    if args.format == "json":
        _emit(args, _dump_json(_meta("predict", param, regime), [row]))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(row), lineterminator="\r\n")
        w.writeheader()
        w.writerow({k: _fmt(v) for k, v in row.items()})
        _emit(args, buf.getvalue())
    else:
        _emit(args, "".join(f"{k}: {_fmt(v) if v is not None else '-'}\n" for k, v in row.items()))
    return EXIT_OK


def _emit_scan(args, command, param, regime, rows) -> int:
    if args.format == "json":
        _emit(args, _dump_json(_meta(command, param, regime, mode=rows[0].mode if rows else None),
                               [r.as_dict() for r in rows]))
    elif args.format == "csv":
        _emit(args, scan_rows_to_csv(rows))
    else:
        lines = [f"r={param.label()} regime={regime.tag} scale={regime.scale}"]
        for row in rows:
            lines.append(f"N={row.N:>9d}  s_N={_fmt(row.s_N):>22s}  pred={_fmt(row.prediction):>20s}  "
                         f"err={_fmt(row.abs_error)}" + (f"  [{row.error}]" if row.error else ""))
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if all(r.error is None for r in rows) else EXIT_FAILED


def cmd_scan(args) -> int:
    param = parse_parameter(args.r)
    cfg = _precision(args)
    Ns = parse_N_list(args.N)
    rows = harness.growth_scan(param, Ns, args.mode, cfg, workers=args.workers, full_sum_cap=args.full_sum_cap)
    return _emit_scan(args, "scan", param, asy.classify(param, cfg), rows)


def cmd_imaginary(args) -> int:
    param = parse_parameter(args.s if args.s.strip().lower().endswith("i") or args.s.strip().lower().startswith("i")
                            else "i" + args.s)
    cfg = _precision(args)
    rows = harness.imaginary_scan(param.value, parse_N_list(args.N), cfg, workers=args.workers)
    return _emit_scan(args, "imaginary", param, asy.classify(param, cfg), rows)


def cmd_table(args) -> int:
    param = parse_parameter(args.r)
    if not param.is_circular:
        raise ValueError("sign tables need a circular parameter")
    rep = sign_table_check(param, args.N)
    idx = critical_indices(param, args.N)
    row = {"r": param.label(), "N": args.N, "table": rep.table, "passed": rep.passed,
           "checked": rep.checked, "first_violation": rep.first_violation,
           **{f"index_{k}": v for k, v in idx.present().items()},
           "boundary_hits": ";".join(f"{j}:{name}" for j, name, _ in rep.boundary_hits)}
    if args.format == "json":
        _emit(args, _dump_json(_meta("table", param), [row]))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(row), lineterminator="\r\n")
        w.writeheader()
        w.writerow({k: _fmt(v) for k, v in row.items()})
        _emit(args, buf.getvalue())
    else:
        _emit(args, "".join(f"{k}: {_fmt(v)}\n" for k, v in row.items()))
    return EXIT_OK if rep.passed else EXIT_FAILED


def _suite_reports(args, cfg) -> list:
    suite = args.suite
    param = parse_parameter(args.r) if args.r else None
    N = args.N
    out = []

    def want(name):
        return suite in (name, "all")

    if want("special"):
        out.append(harness.special_function_suite(cfg))
    if want("appendix"):
        out.append(harness.appendix_suite(cfg))
    if want("continuity"):
        out.append(harness.continuity_suite(cfg))
    if want("golden"):
        out.append(verify_golden(cfg))
    if want("sandwich"):
        params = [param] if param else [Parameter.real(0.9), Parameter.rational(1), Parameter.real(1.1)]
        for p in params:
            for n in ([N] if N else [50, 200, 1000, 2000]):
                out.append(harness.sandwich_check(p, n, cfg))
    if want("rational"):
        p = param or Parameter.rational(9, 10)
        probes = (91, 901) if param is None else ()
        out.append(harness.subsequence_analysis(p, N or 900, cfg, probe_N=probes))
    if want("small-r"):
        cases = [(param, N or 1000)] if param else [(Parameter.real(0.1), 1000), (Parameter.rational(0), 5),
                                                    (Parameter.real(0.15), 2000)]
        out.extend(harness.small_r_check(p, n, cfg) for p, n in cases)
    if want("maxima"):
        params = [param] if param else [Parameter.real(0.8), Parameter.real(1.2)]
        out.extend(harness.local_maxima_audit(p, N or 2000, cfg) for p in params)
    if want("imaginary"):
        if param is not None:
            if param.kind != IMAGINARY:
                raise ValueError("the imaginary suite needs an imaginary parameter such as i1.0")
            out.append(harness.imaginary_check(param.value, N or 10 ** 5, cfg))
        else:
            out.append(harness.imaginary_check(1.0, 10 ** 5, cfg))
            out.append(harness.imaginary_check(0.1, 10 ** 4, cfg))
    return out


def cmd_verify(args) -> int:
    cfg = _precision(args)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NearZeroWarning)
        reports = _suite_reports(args, cfg)
    skipped = [r for r in reports if r.skipped]
    ok = all(r.overall for r in reports)
    if args.format == "json":
        meta = _meta("verify", suite=args.suite, overall=ok,
                     suites=[{"name": r.name, "overall": r.overall, "skipped": r.skipped, "notes": r.notes}
                             for r in reports])
        rows = [row for r in reports for row in _report_rows(r)]
        _emit(args, _dump_json(meta, rows))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(("suite", "description", "passed", "measured", "bound"))
        for r in reports:
            for row in _report_rows(r):
                w.writerow([row["suite"], row["description"], row["passed"], _fmt(row["measured"]), _fmt(row["bound"])])
        _emit(args, buf.getvalue())
    else:
        lines = []
        for r in reports:
            status = "SKIP" if r.skipped else ("PASS" if r.overall else "FAIL")
            lines.append(f"[{status}] {r.name}" + (f": {r.skipped}" if r.skipped else ""))
            for c in r.checks:
                lines.append(f"    {'ok  ' if c.passed else 'FAIL'} {c.description}  "
                             f"(measured {_fmt(c.measured)}, bound {_fmt(c.bound)})")
            for note in r.notes:
                lines.append(f"    note: {note}")
        lines.append("overall: " + ("PASS" if ok else "FAIL"))
        _emit(args, "\n".join(lines) + "\n")
    if skipped and len(skipped) == len(reports):
        return EXIT_INVALID
    return EXIT_OK if ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fig8jones", description=__doc__.split("\n")[0] if __doc__ else None)
    ap.add_argument("--version", action="version", version=f"fig8jones {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json", "csv")):
        p.add_argument("--bits", type=int, default=None,
                       help=f"significand bits for high-precision sums (default ${PRECISION_ENV} or 128)")
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--out", default=None, help="write output here instead of stdout")

    p = sub.add_parser("eval", help="evaluate J_N(E; t) by the Habiro-Le sum")
    p.add_argument("--r", required=True, help='parameter: "0.9", "9/10", or "i0.5"')
    p.add_argument("--N", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("predict", help="regime and predicted growth constant")
    p.add_argument("--r", required=True)
    common(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("scan", help="growth scan over N")
    p.add_argument("--r", required=True)
    p.add_argument("--N", required=True, help='"1000,2000", "100:1000:100" or "1000:1000000:x10"')
    p.add_argument("--mode", choices=(harness.PRODUCT_ONLY, harness.FULL_SUM), default=harness.PRODUCT_ONLY)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--full-sum-cap", type=int, default=harness.FULL_SUM_CAP)
    common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--r", default=None, help="override the suite's default parameter")
    p.add_argument("--N", type=int, default=None, help="override the suite's default N")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="check g(j) against its sign table")
    p.add_argument("--r", required=True)
    p.add_argument("--N", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("imaginary", help="scan at t = exp(2 pi s / N)")
    p.add_argument("--s", required=True, help='magnitude, "1.0" or "i1.0"')
    p.add_argument("--N", required=True)
    p.add_argument("--workers", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_imaginary)
    return ap


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INVALID
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        # DomainError, ParameterParseError and RegimeError are ValueErrors
        print(f"fig8jones: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
