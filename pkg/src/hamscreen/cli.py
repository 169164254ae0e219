"""Command-line entry point: ``hamscreen <command> ...``."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction as F
from pathlib import Path

from . import design as design_mod
from .exactnum.mpoly import MPoly
from .exactnum.numbers import GRat, Surd, as_field, format_rat
from .homopot import PotentialError, parse_expression, parse_potential
from .hypergeom import (
    NoSolution,
    exponent_differences,
    exponent_str,
    l4_degree1_test,
    l4_exponents,
    riemann_scheme,
    tau_squared,
)
from .mrtable import ROWS, GaFiniteConflict, TableError, classify_matches, lambda_of, lookup, paired_row, symmetry_image
from .odesolve import Unsupported, psi_rational_test
from .spectral import _scalar_from_json, matrix_from_json
from .verdict import exit_code, screen_potential

log = logging.getLogger("hamscreen")

EXIT_OK, EXIT_USAGE, EXIT_NONINTEGRABLE, EXIT_INCONCLUSIVE = 0, 1, 10, 20
SUITES = ("symmetry", "disjointness", "l4", "psi")


class UsageError(Exception):
    pass


def _setup_logging():
    level = os.environ.get("SCREENER_LOG", "off").strip().lower()
    levels = {"off": None, "info": logging.INFO, "debug": logging.DEBUG}
    if level not in levels:
        raise UsageError(f"SCREENER_LOG must be off, info or debug, got {level!r}")
    if levels[level] is None:
        logging.getLogger("hamscreen").setLevel(logging.CRITICAL + 1)
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger("hamscreen")
    root.handlers[:] = [handler]
    root.setLevel(levels[level])


# input helpers


def _read(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"{path}: no such file")
    try:
        return p.read_text()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from exc


def _load_json(path: str):
    text = _read(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc


def _expression_line(path: str, text: str) -> tuple[int, str]:
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise UsageError(f"{path}: empty file")
    if len(lines) > 1:
        raise UsageError(f"{path}:{lines[1][0]}: expected a single expression line")
    return lines[0]


def _load_potential(source: str):
    """A potential from a file (JSON document or one-line expression) or from literal text."""
    p = Path(source)
    if not p.is_file():
        if source.endswith((".json", ".txt")):
            raise UsageError(f"{source}: no such file")
        try:
            return parse_potential(source)
        except PotentialError as exc:
            raise UsageError(f"<argument>: {exc}") from exc
    text = _read(source)
    if text.lstrip().startswith(("{", "[")):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{source}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc
        if not isinstance(doc, dict):
            raise UsageError(f"{source}:1: a potential document must be a JSON object")
        if doc.get("k") == 0:
            raise UsageError(f"{source}: degree k = 0 is excluded")
        try:
            if "expr" in doc:
                return parse_potential(doc["expr"], n=doc.get("n"), name=doc.get("name", ""))
            return parse_potential(doc, name=doc.get("name", ""))
        except PotentialError as exc:
            raise UsageError(f"{source}:{_key_line(text, 'expr' if 'expr' in doc else 'numerator')}: {exc}") from exc
    line, expr = _expression_line(source, text)
    try:
        return parse_potential(expr)
    except PotentialError as exc:
        raise UsageError(f"{source}:{line}: {exc}") from exc


def _key_line(text: str, key: str) -> int:
    for i, ln in enumerate(text.splitlines()):
        if f'"{key}"' in ln:
            return i + 1
    return 1


def _scalar(text: str, what: str):
    try:
        r = parse_expression(str(text), n=2)
    except PotentialError as exc:
        raise UsageError(f"{what}: {exc}") from exc
    if not (r.is_polynomial() and r.num.is_constant()):
        raise UsageError(f"{what}: expected a number, got {text!r}")
    return as_field(r.num.constant_term())


def _degree(text: str) -> int:
    try:
        k = int(text)
    except ValueError as exc:
        raise UsageError(f"degree must be an integer, got {text!r}") from exc
    if k == 0:
        raise UsageError("degree k = 0 is excluded")
    return k


def _vector(doc, where: str) -> list:
    if isinstance(doc, dict) and "c" in doc:
        doc = doc["c"]
    if not isinstance(doc, list) or not doc:
        raise UsageError(f"{where}: expected a non-empty JSON array of coordinates")
    try:
        return [_scalar_from_json(x) for x in doc]
    except (ValueError, KeyError, ZeroDivisionError, TypeError) as exc:
        raise UsageError(f"{where}: bad coordinate: {exc}") from exc


def _load_points(path: str) -> list:
    doc = _load_json(path)
    if not isinstance(doc, list):
        raise UsageError(f"{path}:1: the points file must be a JSON array of coordinate vectors")
    return [_vector(v, f"{path}: point {j + 1}") for j, v in enumerate(doc)]


def _load_phase(path: str) -> MPoly:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"{path}: no such file")
    text = _read(path)
    try:
        if text.lstrip().startswith("{"):
            doc = _load_json(path)
            if "expr" in doc:
                n = doc.get("n")
                return design_mod.parse_phase_function(doc["expr"], n)
            n = int(doc["n"])
            return MPoly.from_json(2 * n, doc["terms"])
        line, expr = _expression_line(path, text)
        return design_mod.parse_phase_function(expr)
    except (PotentialError, ValueError, KeyError) as exc:
        raise UsageError(f"{path}: {exc}") from exc


# output


def _emit(args, payload, text: str | None = None):
    if args.json or text is None:
        out = json.dumps(payload, indent=2, sort_keys=True)
    else:
        out = text
    if args.out:
        Path(args.out).write_text(out + "\n")
    else:
        print(out)


def _sval(x) -> str:
    if isinstance(x, F):
        return format_rat(x)
    return str(as_field(x)) if isinstance(x, (GRat, Surd)) else str(x)


# commands


def cmd_screen(args) -> int:
    V = _load_potential(args.potential)
    points = _load_points(args.points) if args.points else None
    log.info("screening %s (n=%d, k=%d)", V.to_str(), V.n, V.k)
    report = screen_potential(V, points=points)
    lines = [f"potential: {report.potential}", f"degree: {report.k}"]
    for rec in report.points:
        eig = ", ".join(
            f"{e.eig.label() if e.eig.is_algebraic else _sval(e.eig.value)} blocks {list(e.blocks)}" for e in rec.eigens
        )
        lines.append(f"point ({', '.join(_sval(x) for x in rec.c)}): {eig} -> {rec.verdict.kind.value}")
    if report.unresolved:
        lines.append("unscreened: " + "; ".join(report.unresolved))
    lines.append(f"verdict: {report.verdict.kind.value}")
    if report.verdict.witness:
        lines.append("witness: " + json.dumps(report.verdict.witness, sort_keys=True))
    if report.verdict.reason:
        lines.append("reason: " + report.verdict.reason)
    _emit(args, report.to_json(), "\n".join(lines))
    return exit_code(report.verdict)


def cmd_table(args) -> int:
    k = _degree(args.k)
    lam = _scalar(args.lam, "lambda")
    try:
        matches = lookup(k, lam)
        group = str(classify_matches(matches))
    except TableError as exc:
        raise UsageError(str(exc)) from exc
    payload = [m.to_json() for m in matches]
    _emit(args, payload)  # always JSON
    log.info("group type %s", group)
    return EXIT_OK


def cmd_exponents(args) -> int:
    k = _degree(args.k)
    lam = _scalar(args.lam, "lambda")
    if isinstance(lam, Surd):
        raise UsageError("lambda must lie in Q(i)")
    lam_arg = lam.re if lam.im == 0 else lam
    try:
        rs = riemann_scheme(k, lam_arg)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    diffs = exponent_differences(k, lam_arg)
    l4 = l4_exponents(k, lam_arg)
    payload = {
        "k": k,
        "lambda": _sval(lam),
        "tau2": _sval(tau_squared(k, lam_arg)),
        "scheme": {"0": [exponent_str(x) for x in rs.at0], "1": [exponent_str(x) for x in rs.at1],
                   "inf": [exponent_str(x) for x in rs.atinf]},
        "differences": {
            "0": exponent_str(diffs.delta0),
            "1": exponent_str(diffs.delta1),
            "inf": exponent_str(diffs.delta_inf),
            "inf_reduced": None if diffs.delta_inf_reduced is None else exponent_str(diffs.delta_inf_reduced),
        },
        "l4": {"0": [exponent_str(x) for x in l4.at0], "1": [exponent_str(x) for x in l4.at1],
               "inf": [exponent_str(x) for x in l4.atinf]},
    }
    if lam.im == 0:
        payload["l4_affine"] = l4_degree1_test(k, lam.re).to_json()["solution"]
    _emit(args, payload)
    return EXIT_OK


def cmd_design(args) -> int:
    c = _vector(_load_json(args.c), args.c)
    try:
        A = matrix_from_json(_load_json(args.A))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{args.A}: {exc}") from exc
    k = _degree(args.k)
    try:
        V = design_mod.design_potential(c, A, k)
    except (design_mod.ConstraintViolation, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    doc = V.to_json()
    doc["expr"] = V.to_str()
    _emit(args, doc)
    return EXIT_OK


def cmd_bracket(args) -> int:
    H = _load_phase(args.H)
    G = _load_phase(args.F)
    n = max(H.n, G.n) // 2
    H, G = H.extend(2 * n) if H.n < 2 * n else H, G.extend(2 * n) if G.n < 2 * n else G
    B = design_mod.poisson_bracket(H, G)
    text = "0" if B.is_zero() else design_mod.phase_str(B)
    _emit(args, {"bracket": text, "zero": B.is_zero(), "terms": B.to_json()}, text)
    return EXIT_OK


def _sweep_symmetry(kmax, pmax):
    checked, failures = 0, []
    for row in ROWS.values():
        if row.row == 1:
            continue
        ks = [k for k in range(-kmax, kmax + 1) if k and row.accepts_k(k)]
        for k in ks:
            ps = [None] if not row.has_p else [p for p in range(-pmax, pmax + 1) if p not in row.exclusions]
            for p in ps:
                checked += 1
                lam = lambda_of(row.row, k, p)
                if not any(m.row == row.row and m.p == p for m in lookup(k, lam)):
                    failures.append({"row": row.row, "k": k, "p": p, "problem": "lookup does not invert lambda_of"})
                    continue
                k2, lam2 = symmetry_image(k, lam)
                want_row, want_p = paired_row(row.row, p)
                if not any(m.row == want_row and (want_p is None or m.p == want_p) for m in lookup(k2, lam2)):
                    failures.append({"row": row.row, "k": k, "p": p, "problem": f"image misses row {want_row}"})
    return checked, failures, []


def _sweep_disjointness(kmax, pmax):
    checked, failures = 0, []
    for row in ROWS.values():
        if row.row == 1 or not row.has_p:
            continue
        for k in range(-kmax, kmax + 1):
            if abs(k) < 3 or not row.accepts_k(k):
                continue
            for p in range(-pmax, pmax + 1):
                if p in row.exclusions:
                    continue
                checked += 1
                lam = lambda_of(row.row, k, p)
                try:
                    classify_matches(lookup(k, lam))
                except GaFiniteConflict as exc:
                    failures.append({"k": k, "lambda": format_rat(lam), "problem": str(exc)})
    return checked, failures, []


def _sweep_l4(kmax, pmax):
    checked, failures = 0, []
    for row in ROWS.values():
        if row.row < 7:
            continue
        for k in range(-kmax, kmax + 1):
            if not k or not row.accepts_k(k):
                continue
            for p in range(0, pmax + 1):
                checked += 1
                lam = lambda_of(row.row, k, p)
                res = l4_degree1_test(k, lam)
                if not isinstance(res, NoSolution):
                    failures.append({"row": row.row, "k": k, "p": p, "solution": res.to_json()["solution"]})
    return checked, failures, []


def _sweep_psi(kmax, pmax):
    checked, failures, undecided = 0, [], []
    for k in range(3, kmax + 1):
        for p in range(0, pmax + 1):
            checked += 1
            try:
                f = psi_rational_test(k, p)
            except Unsupported as exc:
                undecided.append({"k": k, "p": p, "reason": str(exc)})
                continue
            if f is not None:
                failures.append({"k": k, "p": p, "solution": f.to_str()})
    return checked, failures, undecided


_SWEEPS = {
    "symmetry": _sweep_symmetry,
    "disjointness": _sweep_disjointness,
    "l4": _sweep_l4,
    "psi": _sweep_psi,
}


def cmd_sweep(args) -> int:
    if args.kmax < 1 or args.pmax < 0:
        raise UsageError("--kmax must be positive and --pmax non-negative")
    suites = args.suite or list(SUITES)
    payload = {"kmax": args.kmax, "pmax": args.pmax, "suites": {}}
    lines = []
    any_fail = any_undecided = False
    for name in suites:
        log.info("running sweep %s", name)
        checked, failures, undecided = _SWEEPS[name](args.kmax, args.pmax)
        any_fail |= bool(failures)
        any_undecided |= bool(undecided)
        payload["suites"][name] = {"checked": checked, "failures": failures, "undecided": undecided}
        status = "FAIL" if failures else ("UNDECIDED" if undecided else "ok")
        lines.append(f"{name}: {checked} cases, {len(failures)} failures, {len(undecided)} undecided -> {status}")
    _emit(args, payload, "\n".join(lines))
    if any_fail:
        return EXIT_NONINTEGRABLE
    if any_undecided and args.fail_on_inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")

    parser = argparse.ArgumentParser(prog="hamscreen", description="Exact integrability screening of homogeneous potentials.")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("screen", parents=[common], help="screen a potential")
    s.add_argument("potential", help="JSON potential file, one-line expression file, or literal expression")
    s.add_argument("--points", metavar="PATH", help="JSON array of Darboux points to screen")
    s.set_defaults(func=cmd_screen)

    t = sub.add_parser("table", parents=[common], help="look up (k, lambda) in the admissible table")
    t.add_argument("k")
    t.add_argument("lam", metavar="lambda")
    t.set_defaults(func=cmd_table)

    e = sub.add_parser("exponents", parents=[common], help="Riemann scheme and L4 exponents")
    e.add_argument("k")
    e.add_argument("lam", metavar="lambda")
    e.set_defaults(func=cmd_exponents)

    d = sub.add_parser("design", parents=[common], help="potential with a prescribed Hessian at c")
    d.add_argument("c", help="JSON array with the point c")
    d.add_argument("A", help="JSON matrix document")
    d.add_argument("k")
    d.set_defaults(func=cmd_design)

    b = sub.add_parser("bracket", parents=[common], help="Poisson bracket of two phase functions")
    b.add_argument("H")
    b.add_argument("F")
    b.set_defaults(func=cmd_bracket)

    w = sub.add_parser("sweep", parents=[common], help="run the property sweeps")
    w.add_argument("--kmax", type=int, default=5)
    w.add_argument("--pmax", type=int, default=5)
    w.add_argument("--suite", action="append", choices=SUITES)
    w.add_argument("--fail-on-inconclusive", action="store_true", help="exit 20 when a case could not be decided")
    w.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        _setup_logging()
        code = args.func(args)
    except UsageError as exc:
        print(f"hamscreen: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code


if __name__ == "__main__":
    sys.exit(main())
