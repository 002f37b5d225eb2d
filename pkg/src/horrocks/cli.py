"""Command-line front end.

Exit codes: 0 success, 2 usage or input error, 3 unclassified shapes,
4 a verification check failed, 5 a check could not be decided.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from . import enumerator, family, graded, spectra
from .polyring import DEFAULT_CHAR, check_char

EXIT_OK, EXIT_USAGE, EXIT_UNCLASSIFIED, EXIT_FAILED, EXIT_UNDECIDED = 0, 2, 3, 4, 5
MAX_C2 = 24


class UsageError(Exception):
    pass


def _c2(value: str) -> int:
    n = int(value)
    if not 1 <= n <= MAX_C2:
        raise argparse.ArgumentTypeError(f"c2 must be between 1 and {MAX_C2}")
    return n


def _char(value: str) -> int:
    try:
        return check_char(int(value))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _family_a(value: str) -> int:
    n = int(value)
    if n < 3:
        raise argparse.ArgumentTypeError("a must be >= 3")
    return n


# -- spectra ---------------------------------------------------------------------


def cmd_spectra(args, out) -> int:
    rows = []
    for i, sp in enumerate(spectra.enumerate_spectra(args.c2), start=1):
        rows.append({"index": i, "label": spectra.label(sp), "spectrum": sp.half_form(), "text": sp.text()})
    if args.format == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["index", "label", "spectrum", "text"])
        for r in rows:
            w.writerow([r["index"], r["label"] or "", r["spectrum"], r["text"]])
    else:
        out.write("| # | Label | Spectrum |\n|---|---|---|\n")
        for r in rows:
            out.write(f"| {r['index']} | {r['label'] or '-'} | {r['spectrum']} |\n")
    return EXIT_OK


# -- enumerate -------------------------------------------------------------------


def cmd_enumerate(args, out) -> int:
    chosen = None
    if args.catalogued:
        if args.c2 not in spectra.CATALOGUE:
            raise UsageError(f"no catalogued spectra for c2 = {args.c2}")
        chosen = list(spectra.CATALOGUE[args.c2])
    report = enumerator.table3_report(args.c2, spectra=chosen)
    out.write(enumerator.format_report(report, args.format, args.include_eliminated))
    if not report.complete:
        try:
            raise enumerator.ClassificationError(report)
        except enumerator.ClassificationError as exc:
            print(str(exc), file=sys.stderr)
        return EXIT_UNCLASSIFIED
    return EXIT_OK


# -- verify ----------------------------------------------------------------------


def _fmt_flag(v) -> str:
    return "undecided" if v is None else ("pass" if v else "FAIL")


def verify_monad(m: graded.MonadPresentation, degree_cap: int | None = None) -> tuple:
    """Return (exit code, result dict) for a presentation."""
    res: dict = {"field_char": m.field_char}
    rep = graded.validate_monad(m, degree_cap)
    res["checks"] = rep.flags()
    res["beta_minors"] = str(rep.beta_verdict) if rep.beta_verdict else None
    res["alpha_minors"] = str(rep.alpha_verdict) if rep.alpha_verdict else None
    code = EXIT_OK
    if not rep.passed:
        code = EXIT_FAILED if any(v is False for v in rep.flags().values()) else EXIT_UNDECIDED
        return code, res
    c1 = graded.monad_c1(m)
    res["c1"] = c1
    if c1 != 0:
        res["error"] = "c1 is not zero"
        return EXIT_FAILED, res
    res["c2"] = graded.monad_c2(m)
    try:
        h0 = graded.h0_E(m, 0)
    except graded.InconsistentMonadError as exc:
        res["error"] = str(exc)
        return EXIT_FAILED, res
    res["stable"] = h0 == 0
    lo = -2 * m.max_degree()
    table = graded.cohomology_table(m, range(lo, 3))
    res["cohomology"] = {str(l): list(v) for l, v in table.items()}
    res["euler_ok"] = all(
        h[0] - h[1] + h[2] - h[3] == graded.euler_characteristic(m, l) for l, h in table.items()
    )
    if not res["stable"]:
        res["error"] = "h0(E) > 0, bundle not stable"
        return EXIT_FAILED, res
    try:
        sp = graded.spectrum_of(m)
    except graded.SpectrumError as exc:
        res["error"] = str(exc)
        return EXIT_FAILED, res
    res["spectrum"] = sp.text()
    res["spectrum_label"] = spectra.label(sp)
    if not res["euler_ok"]:
        return EXIT_FAILED, res
    return code, res


def _render_verify(res: dict) -> str:
    lines = [f"field characteristic: {res['field_char']}"]
    for k, v in res["checks"].items():
        lines.append(f"{k}: {_fmt_flag(v)}")
    if res.get("beta_minors"):
        lines.append(f"beta maximal minors: {res['beta_minors']}")
    if res.get("alpha_minors"):
        lines.append(f"alpha maximal minors: {res['alpha_minors']}")
    if "c2" in res:
        lines.append(f"c2: {res['c2']}")
    if "stable" in res:
        lines.append(f"stable: {'yes' if res['stable'] else 'no'}")
    if "cohomology" in res:
        lines.append("")
        lines.append("| l | h0 | h1 | h2 | h3 |")
        lines.append("|---|---|---|---|---|")
        for l, h in res["cohomology"].items():
            lines.append(f"| {l} | " + " | ".join(map(str, h)) + " |")
        lines.append(f"Euler characteristic identity: {'pass' if res['euler_ok'] else 'FAIL'}")
    if "spectrum" in res:
        tag = f" ({res['spectrum_label']})" if res.get("spectrum_label") else ""
        lines.append(f"spectrum: {res['spectrum']}{tag}")
    if "error" in res:
        lines.append(f"error: {res['error']}")
    return "\n".join(lines) + "\n"


def cmd_verify(args, out) -> int:
    try:
        text = sys.stdin.read() if args.path == "-" else Path(args.path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.path}: {exc.strerror}") from exc
    try:
        m = graded.monad_from_json(text)
    except (graded.MonadFormatError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    if args.char is not None:
        m = m.with_char(args.char)
    code, res = verify_monad(m, args.degree_cap)
    if args.format == "json":
        res["exit_code"] = code
        out.write(json.dumps(res, indent=2) + "\n")
    else:
        out.write(_render_verify(res))
    return code


# -- family / dimension / report ---------------------------------------------------


def cmd_family(args, out) -> int:
    char = args.char if args.char is not None else DEFAULT_CHAR
    m = family.build_ein_x11(char) if args.ein else family.build_family_monad(args.a, char)
    text = graded.monad_to_json(m)
    if args.emit and args.emit != "-":
        Path(args.emit).write_text(text)
        out.write(f"wrote {m.name} to {args.emit}\n")
    else:
        out.write(text)
    return EXIT_OK


def cmd_dimension(args, out) -> int:
    d = family.family_dimension(args.a)
    expected, positive = family.exceeds_expected(args.a)
    if args.format == "json":
        out.write(json.dumps(d.as_dict()) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(list(d.as_dict()))
        w.writerow(list(d.as_dict().values()))
    else:
        out.write(f"a = {args.a}, c2 = {4 * args.a - 3}\n")
        for k, v in d.as_dict().items():
            out.write(f"{k}: {v}\n")
        out.write(f"dimV - expected = {d.dimV - expected} ({'exceeds' if positive else 'does not exceed'})\n")
    return EXIT_OK


def cmd_report(args, out) -> int:
    if args.c2 != 9:
        raise UsageError("report is only available for c2 = 9")
    rep = family.component_report(args.c2)
    if args.format == "json":
        out.write(json.dumps(rep.as_dict(), indent=2) + "\n")
    else:
        out.write(rep.format())
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="horrocks", description="Minimal Horrocks monads with c1 = 0 on P^3.")
    p.add_argument("--time", action="store_true", help="print elapsed time to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp, choices=("md", "csv", "json")):
        sp.add_argument("--format", choices=choices, default="md")

    s = sub.add_parser("spectra", help="list admissible spectra")
    s.add_argument("--c2", type=_c2, required=True)
    fmt(s)
    s.set_defaults(func=cmd_spectra)

    s = sub.add_parser("enumerate", help="classify candidate monad shapes")
    s.add_argument("--c2", type=_c2, required=True)
    s.add_argument("--include-eliminated", action="store_true")
    s.add_argument("--catalogued", action="store_true", help="only the catalogued spectra for this c2")
    fmt(s)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("verify", help="verify a monad given as JSON")
    s.add_argument("path")
    s.add_argument("--char", type=_char, default=None)
    s.add_argument("--degree-cap", type=_positive, default=None)
    fmt(s, ("md", "json"))
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("family", help="emit a built-in monad as JSON")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--a", type=_family_a)
    g.add_argument("--ein", action="store_true")
    s.add_argument("--emit", metavar="PATH", help="write to PATH instead of stdout ('-' means stdout)")
    s.add_argument("--char", type=_char, default=None)
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("dimension", help="dimension count of the family")
    s.add_argument("--a", type=_family_a, required=True)
    fmt(s)
    s.set_defaults(func=cmd_dimension)

    s = sub.add_parser("report", help="component summary")
    s.add_argument("--c2", type=_c2, default=9)
    fmt(s, ("md", "json"))
    s.set_defaults(func=cmd_report)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        code = args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.time:
        print(f"elapsed {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


def run(argv: list) -> tuple:
    """Call ``main`` capturing stdout; handy in tests."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
