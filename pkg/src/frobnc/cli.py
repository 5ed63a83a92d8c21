"""Command-line interface: ``frobnc check|gen|points|census|lines|blocking|verify``.

Exit codes: 0 success, 2 verification failure, 3 input error, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import __version__
from .errors import BudgetExceeded, FrobError, VerificationFailure

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_INPUT = 3
EXIT_BUDGET = 4


class Report:
    """Common envelope for every command: echo, digest, version, timing and verdict sections."""

    def __init__(self, command: list, digest_source: str):
        self.command = list(command)
        self.input_digest = "sha256:" + hashlib.sha256(digest_source.encode()).hexdigest()
        self.sections: dict = {}
        self._t0 = time.perf_counter()

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "input_digest": self.input_digest,
            "version": __version__,
            "seconds": round(time.perf_counter() - self._t0, 3),
            "sections": self.sections,
        }


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _human(report: Report) -> str:
    lines = [f"frobnc {__version__}: {' '.join(report.command)}", f"input {report.input_digest}"]
    for name, body in report.sections.items():
        lines.append(f"== {name}")
        lines.extend(_flatten(body, "  "))
    return "\n".join(lines)


def _flatten(obj, indent):
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{indent}{k}:")
                out.extend(_flatten(v, indent + "  "))
            else:
                out.append(f"{indent}{k}: {v}")
        return out
    if isinstance(obj, list):
        out = []
        for v in obj:
            if isinstance(v, (dict, list)):
                sub = _flatten(v, indent + "  ")
                out.append(indent + "- " + sub[0].lstrip() if sub else indent + "-")
                out.extend(sub[1:])
            else:
                out.append(f"{indent}- {v}")
        return out
    return [f"{indent}{obj}"]


def _emit(report: Report, args, out=None):
    out = out or sys.stdout
    print(_dump(report.to_json()) if args.json else _human(report), file=out)


def _read_file(path):
    from .mpoly import read_poly_file

    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    field, n, polys = read_poly_file(text)
    if not polys:
        raise _InputError(f"{path}: no polynomial after the header")
    return text, field, n, polys


class _InputError(Exception):
    pass


# ------------------------------------------------------------ commands

def cmd_check(args, argv) -> int:
    from .analysis.points import point_count_report
    from .analysis.smooth import best_smoothness
    from .analysis.structure import matching_clause, separated_variables_detect
    from .frobcore import is_frobenius_nonclassical
    from .gf import extension_of
    from .mpoly import change_field, format_poly, is_pth_power

    text, K, n, polys = _read_file(args.file)
    report = Report(argv, text)
    exts = sorted(set([1] + list(args.ext or [])))
    results = []
    for F in polys:
        cls = {}
        for m in exts:
            L = extension_of(K, m)
            cls[str(L.q)] = is_frobenius_nonclassical(change_field(F, L), L.q).to_json()
        sep = separated_variables_detect(F)
        entry = {
            "polynomial": format_poly(F),
            "field": {"p": K.p, "k": K.k, "q": K.q},
            "n": n,
            "degree": F.degree,
            "classification": cls,
            "pth_power": bool(is_pth_power(F)),
            "smoothness": best_smoothness(F).to_json(),
            "points": point_count_report(F, tuple(exts)).to_json(),
            "separated_variables": None if sep is None else sep.to_json(),
        }
        if n == 2 and F.degree in (K.q + 1, K.q + 2) or n % 2 and F.degree == K.q + 1:
            entry["normal_form"] = matching_clause(F)
        results.append(entry)
    report.sections["check"] = results if len(results) > 1 else results[0]
    _emit(report, args)
    return EXIT_OK


def _parse_params(items):
    params = {}
    for item in items or ():
        if "=" not in item:
            raise _InputError(f"parameter {item!r} is not key=value")
        k, v = item.split("=", 1)
        params[k.strip()] = v.strip()
    return params


def cmd_gen(args, argv) -> int:
    from .families import generate
    from .mpoly import write_poly_file

    params = _parse_params(args.params)
    report = Report(argv, json.dumps([args.family, params], sort_keys=True))
    inst = generate(args.family, params)
    text = write_poly_file([inst.polynomial])
    manifest = inst.manifest()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        with open(args.out + ".manifest.json", "w", encoding="utf-8") as fh:
            fh.write(_dump(manifest) + "\n")
    report.sections["manifest"] = manifest
    code = EXIT_OK
    if args.verify:
        checks = inst.check()
        report.sections["verification"] = [{"property": str(p), "ok": ok} for p, ok in checks]
        if not all(ok for _, ok in checks):
            code = EXIT_VERIFY
    if args.json:
        _emit(report, args)
    elif not args.out:
        sys.stdout.write(text)
    else:
        _emit(report, args)
    return code


def cmd_points(args, argv) -> int:
    from .analysis.points import count_points, point_count_report

    text, K, n, polys = _read_file(args.file)
    report = Report(argv, text)
    exts = tuple(sorted(set([1] + list(args.ext or []))))
    out = []
    for F in polys:
        rep = point_count_report(F, exts).to_json()
        if args.threads > 1:
            rep["counts"] = {str(m): count_points(F, m, args.threads) for m in exts}
        out.append(rep)
    report.sections["points"] = out if len(out) > 1 else out[0]
    _emit(report, args)
    return EXIT_OK


def _plane(polys, n):
    if n != 2:
        raise _InputError(f"expected a plane curve (n = 2), got n = {n}")
    return polys


def cmd_lines(args, argv) -> int:
    from .analysis.lines import line_incidence

    text, K, n, polys = _read_file(args.file)
    report = Report(argv, text)
    out = []
    for F in _plane(polys, n):
        rep = line_incidence(F, assume_irreducible=args.irreducible, assume_reduced=args.reduced)
        out.append(rep.to_json(lines=args.all_lines))
    report.sections["lines"] = out if len(out) > 1 else out[0]
    _emit(report, args)
    return EXIT_OK


def cmd_blocking(args, argv) -> int:
    from .analysis.lines import blocking_verdict

    text, K, n, polys = _read_file(args.file)
    report = Report(argv, text)
    out = [blocking_verdict(F).to_json() for F in polys]
    report.sections["blocking"] = out if len(out) > 1 else out[0]
    _emit(report, args)
    return EXIT_OK


def _shard(text):
    try:
        i, n = (int(x) for x in text.split("/"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"shard must look like i/N, got {text!r}") from None
    if n < 1 or not 0 <= i < n:
        raise argparse.ArgumentTypeError(f"need 0 <= i < N, got {text!r}")
    return i, n


def cmd_census(args, argv) -> int:
    from .analysis.census import census
    from .gf import make_field

    K = make_field(args.p, args.k)
    res = census(K, args.n, args.d, args.filter, shard=args.shard, budget=args.budget, threads=args.threads)
    body = res.jsonl()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
        report = Report(argv, body)
        report.sections["census"] = res.summary()
        _emit(report, args, sys.stderr if not args.json else None)
    else:
        sys.stdout.write(body)
    return EXIT_OK


def cmd_verify(args, argv) -> int:
    from .suites import SUITES, run_suite

    ids = list(SUITES) if args.suite == "all" else [args.suite]
    report = Report(argv, " ".join(ids))
    results = [run_suite(s) for s in ids]
    if args.json:
        report.sections["verify"] = [r.to_json() for r in results]
        _emit(report, args)
    else:
        for r in results:
            print(r.line())
            for c in r.checks:
                mark = "ok  " if c.ok else "FAIL"
                print(f"    {mark} {c.label}" + (f"  [{c.detail}]" if c.detail else ""))
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


# ------------------------------------------------------------ entry point

def build_parser() -> argparse.ArgumentParser:
    from .analysis.census import DEFAULT_BUDGET

    ap = argparse.ArgumentParser(prog="frobnc", description="Frobenius nonclassical hypersurfaces over finite fields.")
    ap.add_argument("--version", action="version", version=f"frobnc {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        return p

    p = common(sub.add_parser("check", help="classify the polynomials in a file"))
    p.add_argument("file")
    p.add_argument("--ext", type=int, action="append", help="also work over F_{q^m} (repeatable)")

    p = common(sub.add_parser("gen", help="generate a family member"))
    p.add_argument("family")
    p.add_argument("params", nargs="*", help="key=value parameters")
    p.add_argument("--out", help="write the polynomial file here and the manifest next to it")
    p.add_argument("--verify", action="store_true", help="check the asserted properties")

    p = common(sub.add_parser("points", help="point counts and bound comparisons"))
    p.add_argument("file")
    p.add_argument("--ext", type=int, action="append", help="also count over F_{q^m} (repeatable)")
    p.add_argument("--threads", type=int, default=1)

    p = common(sub.add_parser("census", help="exhaustive census of forms"))
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--filter", default="fn", help="comma-separated filters")
    p.add_argument("--shard", type=_shard, default=(0, 1), help="i/N")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", help="write JSONL here (summary goes to stderr)")

    p = common(sub.add_parser("lines", help="line incidence of a plane curve"))
    p.add_argument("file")
    p.add_argument("--irreducible", action="store_true", help="assert the curve is irreducible")
    p.add_argument("--reduced", action="store_true", help="assert the curve is reduced")
    p.add_argument("--all-lines", action="store_true", help="list every line")

    p = common(sub.add_parser("blocking", help="blocking-set verdict"))
    p.add_argument("file")

    p = common(sub.add_parser("verify", help="run a verification suite"))
    p.add_argument("suite", help="suite id or 'all'")
    return ap


COMMANDS = {
    "check": cmd_check,
    "gen": cmd_gen,
    "points": cmd_points,
    "census": cmd_census,
    "lines": cmd_lines,
    "blocking": cmd_blocking,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return COMMANDS[args.command](args, ["frobnc"] + argv)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (FrobError, _InputError, OSError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
