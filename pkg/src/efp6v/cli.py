"""Command-line front end.

    efp6v efp eval   --r 2 --s 1 --q 0 --alpha 1/2
    efp6v efp poly   --r 2 --s 1 --q 0
    efp6v verify sigma-form|oracles|alpha0|alpha1 ...
    efp6v asym disordered|ordered|fredholm|saddle|hyp ...

Global flags (--precision-bits, --format, --out, --jobs) may appear before or
after the subcommand.  Reports are deterministic: the same arguments always
produce the same bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Callable, Iterable

import mpmath

from .exact_core import DEFAULT_PRECISION_BITS, as_fraction, precision, to_mpf

SCHEMA = "efp-report/1"


class UsageError(Exception):
    """Invalid command-line input; reported as structured JSON on stderr."""

    def __init__(self, message: str, hint: str | None = None):
        super().__init__(message)
        self.hint = hint


# parsing helpers ---------------------------------------------------------------

def parse_alpha(text: str) -> Fraction:
    try:
        a = as_fraction(text)
    except ValueError as exc:
        raise UsageError(str(exc), hint="write alpha as an exact rational, e.g. --alpha 1/16") from None
    if not 0 <= a <= 1:
        raise UsageError(f"alpha = {a} is outside [0, 1]")
    return a


def parse_int_list(text: str) -> list[int]:
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None
    if not values:
        raise UsageError("empty list")
    return values


def fmt_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Cell:
    """A floating value together with the precision it was computed at."""

    __slots__ = ("value", "bits", "digits")

    def __init__(self, value, bits: int, digits: int):
        self.value, self.bits, self.digits = value, bits, digits

    def text(self) -> str:
        if self.value is None:
            return ""
        return mpmath.nstr(self.value, self.digits, strip_zeros=False)

    def as_json(self):
        return {"value": self.text(), "precision_bits": self.bits}


def _jsonable(v):
    if isinstance(v, Cell):
        return v.as_json()
    if isinstance(v, Fraction):
        return fmt_rational(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _csv_text(v) -> str:
    if isinstance(v, Cell):
        return v.text()
    if isinstance(v, Fraction):
        return fmt_rational(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return " ".join(_csv_text(x) for x in v)
    return "" if v is None else str(v)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        doc = {"schema": SCHEMA}
        doc.update({k: _jsonable(v) for k, v in report.items()})
        return json.dumps(doc, indent=2) + "\n"
    rows = report["results"]
    columns: list[str] = ["key"]
    for row in rows.values():
        for k in row:
            if k not in columns:
                columns.append(k)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for key, row in rows.items():
        w.writerow([key] + [_csv_text(row.get(c)) for c in columns[1:]])
    return buf.getvalue()


def _map(fn: Callable, items: Iterable, jobs: int) -> list:
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))  # map keeps input order


def _fitted_exponents(xs: list, errs: list) -> list:
    out = [None]
    for i in range(1, len(xs)):
        e0, e1 = abs(errs[i - 1]), abs(errs[i])
        if e0 == 0 or e1 == 0:
            out.append(None)
        else:
            out.append(mpmath.log(e1 / e0) / mpmath.log(mpmath.mpf(xs[i]) / xs[i - 1]))
    return out


# efp ---------------------------------------------------------------------------

def _params(args):
    from .efp_exact import EfpParams

    try:
        return EfpParams(args.r, args.s, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_efp(args) -> tuple[dict, int]:
    from .efp_exact import efp_eval, efp_polynomial

    p = _params(args)
    bits, digits = args.precision_bits, args.digits
    key = f"r={p.r},s={p.s},q={p.q}"
    row: dict[str, Any] = {}
    if args.action == "eval":
        alpha = parse_alpha(args.alpha)
        key += f",alpha={fmt_rational(alpha)}"
        F = efp_eval(p, alpha)
        row["F"] = F
        with precision(bits):
            row["F_decimal"] = Cell(to_mpf(F), bits, digits)
        if args.coeffs:
            row["coefficients"] = list(efp_polynomial(p).coeffs)
    else:
        poly = efp_polynomial(p)
        row["coefficients"] = list(poly.coeffs) if not poly.is_zero() else [Fraction(0)]
        row["degree"] = max(poly.degree, 0)
    if p.s > p.r:
        row["note"] = "s > r: the frozen block does not fit, F is identically 0"
    elif p.s == 0:
        row["note"] = "s = 0: empty frozen block, F is identically 1"
    return {"command": f"efp {args.action}", "results": {key: row}}, 0


# verify ------------------------------------------------------------------------

def _grid(max_n: int, min_s: int = 1, r_ge_s: bool = True):
    from .efp_exact import EfpParams

    out = []
    for n in range(1, max_n + 1):
        for s in range(min_s, n):
            for q in range(0, n - s):
                r = n - s - q
                if r >= 1 and (not r_ge_s or r >= s):
                    out.append(EfpParams(r, s, q))
    return out


def _verify_sigma(p):
    from .efp_exact import efp_polynomial
    from .p6_sigma import ratfun_equal_zero, sigma_form_residual, sigma_from_efp

    res = sigma_form_residual(sigma_from_efp(efp_polynomial(p), p))
    ok = ratfun_equal_zero(res)
    return {"pass": ok, "residual_numerator_degree": res.num.degree}


_ORACLE_ALPHAS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


def _verify_oracles(p):
    from .efp_exact import MAX_INTEGRAL_S, efp_enumerate, efp_multi_integral, efp_polynomial

    F = efp_polynomial(p)
    enum_ok = all(efp_enumerate(p, a) == F(a) for a in _ORACLE_ALPHAS)
    integral = "skipped" if p.s > MAX_INTEGRAL_S else efp_multi_integral(p) == F
    return {"pass": enum_ok and integral is not False, "enumeration": enum_ok, "multi_integral": integral}


def _verify_alpha0(p):
    from .critical import taylor_alpha0_efp

    try:
        exponent, coeff = taylor_alpha0_efp(p)
    except ArithmeticError as exc:
        return {"pass": False, "detail": str(exc)}
    return {"pass": True, "exponent": exponent, "coefficient": coeff}


def _verify_alpha1(p):
    from .critical import crs_constant, taylor_alpha1_coeffs, taylor_alpha1_efp

    try:
        c1, c2 = taylor_alpha1_coeffs(p)
        series = taylor_alpha1_efp(p)
    except ArithmeticError as exc:
        return {"pass": False, "detail": str(exc)}
    return {"pass": True, "C_rs": crs_constant(p.r, p.s), "c1": c1, "c2": c2, "series": series}


def cmd_verify(args) -> tuple[dict, int]:
    from .efp_exact import EfpParams

    if args.check == "sigma-form":
        cases, fn = _grid(args.max_n), _verify_sigma
    elif args.check == "oracles":
        if args.max_n > 6:
            raise UsageError("lattice enumeration is limited to r+s+q <= 6", hint="use --max-n 6 or less")
        cases, fn = _grid(args.max_n, min_s=0, r_ge_s=False), _verify_oracles
    elif args.check == "alpha0":
        cases = [EfpParams(r, s, q) for r in range(1, args.max_r + 1) for s in range(1, r + 1) for q in range(args.max_q + 1)]
        fn = _verify_alpha0
    else:
        cases = [EfpParams(r, s, 0) for r in range(1, args.max_r + 1) for s in range(1, r + 1)]
        fn = _verify_alpha1
    outcomes = _map(fn, cases, args.jobs)
    results = {f"r={p.r},s={p.s},q={p.q}": o for p, o in zip(cases, outcomes)}
    failed = sum(1 for o in outcomes if not o["pass"])
    report = {
        "command": f"verify {args.check}",
        "summary": {"cases": len(cases), "failed": failed, "pass": failed == 0},
        "results": results,
    }
    return report, 0 if failed == 0 else 1


# asym --------------------------------------------------------------------------

def _v_from(args) -> Fraction:
    v = parse_alpha(args.v) if args.v else None
    if v is None or not 0 < v < 1:
        raise UsageError("--v must be a rational in (0, 1)")
    return v


def _r_of(s: int, v: Fraction) -> int:
    r = Fraction(s) / v
    if r.denominator != 1:
        raise UsageError(f"s = {s} and v = {fmt_rational(v)} do not give an integer r")
    return int(r)


def _regime(alpha: Fraction, v: Fraction) -> str:
    from .disordered import GeometryParams

    with precision(256):
        return GeometryParams.make(alpha, v).regime


def _asym_disordered(args, bits, digits):
    from .disordered import logF_disordered
    from .efp_exact import EfpParams, efp_eval

    alpha, v = parse_alpha(args.alpha), _v_from(args)
    if _regime(alpha, v) != "disordered":
        raise UsageError("alpha and v are not in the disordered regime (need v > u)")
    svals = parse_int_list(args.s_values)
    rows, errs = {}, []
    with precision(bits):
        for s in svals:
            p = EfpParams(_r_of(s, v), s, 0)
            F = efp_eval(p, alpha)
            exact = mpmath.log(mpmath.mpf(F.numerator)) - mpmath.log(F.denominator)
            pred = logF_disordered(p, alpha, args.order)
            errs.append(exact - pred)
            rows[f"s={s},r={p.r}"] = {"s": s, "r": p.r, "exact_logF": exact, "predicted": pred}
        _finish_rows(rows, errs, svals, bits, digits, scale_power=2 * args.order + 2)
    return rows


def _asym_ordered(args, bits, digits):
    from .efp_exact import EfpParams
    from .ordered import log1mF_exact, log1mF_ordered

    alpha, v = parse_alpha(args.alpha), _v_from(args)
    if _regime(alpha, v) != "ordered":
        raise UsageError("alpha and v are not in the ordered regime (need v < u)")
    svals = parse_int_list(args.s_values)
    rows, errs = {}, []
    with precision(bits):
        for s in svals:
            p = EfpParams(_r_of(s, v), s, 0)
            exact = log1mF_exact(p, alpha)
            pred = log1mF_ordered(p, alpha, args.order)
            errs.append(exact - pred)
            rows[f"s={s},r={p.r}"] = {"s": s, "r": p.r, "exact_log1mF": exact, "predicted": pred}
        _finish_rows(rows, errs, svals, bits, digits, scale_power=args.order + 1)
    return rows


def _asym_saddle(args, bits, digits):
    from .efp_exact import EfpParams
    from .fredholm import trace_K_exact
    from .saddle import trK_saddle

    alpha, v = parse_alpha(args.alpha), _v_from(args)
    if _regime(alpha, v) != "ordered":
        raise UsageError("the saddle-point expansion needs the ordered regime (v < u)")
    svals = parse_int_list(args.s_values)
    rows, errs = {}, []
    with precision(bits):
        for s in svals:
            p = EfpParams(_r_of(s, v), s, 0)
            t = trace_K_exact(p, alpha)
            pred = trK_saddle(alpha, v, s, args.order)
            rel = pred / to_mpf(t) - 1
            errs.append(rel)
            rows[f"s={s},r={p.r}"] = {"s": s, "r": p.r, "trK_exact": t, "trK_saddle": pred}
        _finish_rows(rows, errs, svals, bits, digits, scale_power=args.order + 1, label="rel_err")
    return rows


def _finish_rows(rows, errs, xs, bits, digits, scale_power, label="abs_err"):
    fits = _fitted_exponents(xs, errs)
    for (key, row), e, fit, x in zip(rows.items(), errs, fits, xs):
        for k, val in list(row.items()):
            if isinstance(val, mpmath.mpf):
                row[k] = Cell(val, bits, digits)
        row[label] = Cell(abs(e), bits, digits)
        row[f"{label}_times_s^{scale_power}"] = Cell(abs(e) * mpmath.mpf(x) ** scale_power, bits, digits)
        row["fitted_exponent"] = Cell(fit, bits, 6)
        row["precision_bits"] = bits


def _asym_fredholm(args, bits, digits):
    from .efp_exact import EfpParams, efp_eval
    from .fredholm import ContourGrid, kernel_data, nystrom_det

    alpha = parse_alpha(args.alpha)
    if not 0 < alpha < 1:
        raise UsageError("need 0 < alpha < 1")
    p = _params(args)
    rho = parse_alpha(args.rho) if args.rho else alpha / 2
    mvals = parse_int_list(args.m_values)
    kd = kernel_data(p, alpha)
    F = efp_eval(p, alpha)
    rows, errs = {}, []
    with precision(bits):
        for m in mvals:
            res = nystrom_det(kd, ContourGrid(rho, m), bits)
            err = abs(res.value - to_mpf(F))
            errs.append(err)
            rows[f"m={m}"] = {
                "m": m,
                "rho": rho,
                "nystrom": Cell(res.value, bits, digits),
                "imag": Cell(res.imag, bits, 6),
                "exact_F": F,
                "abs_err": Cell(err, bits, 6),
                "ball_radius": Cell(res.radius, bits, 6),
            }
        prev = None
        for row, e in zip(rows.values(), errs):
            row["ratio_to_previous"] = Cell(e / prev if prev else None, bits, 6)
            row["precision_bits"] = bits
            prev = e
    return rows


def _asym_hyp(args, bits, digits):
    from .efp_exact import EfpParams, efp_eval
    from .fredholm import trace_K_exact
    from .hypergeom import ordered_correction

    alpha, v = parse_alpha(args.alpha), _v_from(args)
    if _regime(alpha, v) != "ordered":
        raise UsageError("the integral representation needs the ordered regime (v < u)")
    rows = {}
    with precision(bits):
        for s in parse_int_list(args.s_values):
            p = EfpParams(_r_of(s, v), s, 0)
            F = efp_eval(p, alpha)
            exact = mpmath.log(to_mpf(F))
            corr, nodes = ordered_correction(p, alpha)
            tr = to_mpf(trace_K_exact(p, alpha))
            rows[f"s={s},r={p.r}"] = {
                "s": s,
                "r": p.r,
                "exact_logF": Cell(exact, bits, digits),
                "ordered_correction": Cell(corr, bits, digits),
                "minus_trK": Cell(-tr, bits, digits),
                "abs_err": Cell(abs(corr - exact), bits, 6),
                "trK_squared": Cell(tr * tr, bits, 6),
                "quadrature_nodes": nodes,
                "precision_bits": bits,
            }
    return rows


_ASYM = {
    "disordered": _asym_disordered,
    "ordered": _asym_ordered,
    "fredholm": _asym_fredholm,
    "saddle": _asym_saddle,
    "hyp": _asym_hyp,
}


def cmd_asym(args) -> tuple[dict, int]:
    rows = _ASYM[args.table](args, args.precision_bits, args.digits)
    return {"command": f"asym {args.table}", "precision_bits": args.precision_bits, "results": rows}, 0


# argument parser ---------------------------------------------------------------

def _global_flags(top: bool) -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    default = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    g.add_argument("--precision-bits", type=int, default=default(DEFAULT_PRECISION_BITS),
                   help="binary precision for floating output (default 512)")
    g.add_argument("--format", choices=("json", "csv"), default=default("json"))
    g.add_argument("--out", default=default(None), help="write the report here instead of stdout")
    g.add_argument("--jobs", type=int, default=default(1), help="worker processes for verify grids")
    g.add_argument("--digits", type=int, default=default(20), help="significant digits in decimal cells")
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(top=False)
    parser = argparse.ArgumentParser(prog="efp6v", parents=[_global_flags(top=True)],
                                     description=__doc__.split("\n\n")[0])
    groups = parser.add_subparsers(dest="group", required=True)

    efp = groups.add_parser("efp", help="exact EFP values")
    efp_sub = efp.add_subparsers(dest="action", required=True)
    for name in ("eval", "poly"):
        sp = efp_sub.add_parser(name, parents=[common])
        sp.add_argument("--r", type=int, required=True)
        sp.add_argument("--s", type=int, required=True)
        sp.add_argument("--q", type=int, default=0)
        if name == "eval":
            sp.add_argument("--alpha", required=True, help="exact rational such as 1/2")
            sp.add_argument("--coeffs", action="store_true", help="also dump the polynomial")
        sp.set_defaults(func=cmd_efp)

    ver = groups.add_parser("verify", help="exact identity checks over parameter grids")
    ver_sub = ver.add_subparsers(dest="check", required=True)
    for name, flag, default in (("sigma-form", "--max-n", 10), ("oracles", "--max-n", 6)):
        sp = ver_sub.add_parser(name, parents=[common])
        sp.add_argument(flag, type=int, default=default, dest="max_n")
        sp.set_defaults(func=cmd_verify)
    sp = ver_sub.add_parser("alpha0", parents=[common])
    sp.add_argument("--max-r", type=int, default=10)
    sp.add_argument("--max-q", type=int, default=2)
    sp.set_defaults(func=cmd_verify)
    sp = ver_sub.add_parser("alpha1", parents=[common])
    sp.add_argument("--max-r", type=int, default=10)
    sp.set_defaults(func=cmd_verify)

    asym = groups.add_parser("asym", help="asymptotic expansions against exact values")
    asym_sub = asym.add_subparsers(dest="table", required=True)
    defaults = {
        "disordered": ("1/2", "1/2", "4,8,12,16,20"),
        "ordered": ("1/16", "1/2", "4,8,12,16"),
        "saddle": ("1/16", "1/2", "4,8,16"),
        "hyp": ("1/16", "1/2", "2,4"),
    }
    for name, (a, v, svals) in defaults.items():
        sp = asym_sub.add_parser(name, parents=[common])
        sp.add_argument("--alpha", default=a)
        sp.add_argument("--v", default=v, help="s/r as an exact rational")
        sp.add_argument("--s", dest="s_values", default=svals, help="comma-separated s values")
        if name != "hyp":
            sp.add_argument("--order", type=int, default=2)
        sp.set_defaults(func=cmd_asym)
    sp = asym_sub.add_parser("fredholm", parents=[common])
    sp.add_argument("--r", type=int, default=6)
    sp.add_argument("--s", type=int, default=3)
    sp.add_argument("--q", type=int, default=0)
    sp.add_argument("--alpha", default="1/2")
    sp.add_argument("--rho", default=None, help="contour radius (default alpha/2)")
    sp.add_argument("--m", dest="m_values", default="32,64,128,256")
    sp.set_defaults(func=cmd_asym)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.precision_bits < 53:
            raise UsageError("--precision-bits must be at least 53")
        report, code = args.func(args)
    except UsageError as exc:
        err = {"schema": SCHEMA, "error": str(exc)}
        if exc.hint:
            err["hint"] = exc.hint
        print(json.dumps(err), file=sys.stderr)
        return 2
    except ValueError as exc:
        print(json.dumps({"schema": SCHEMA, "error": str(exc)}), file=sys.stderr)
        return 2
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
