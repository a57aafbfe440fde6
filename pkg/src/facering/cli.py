"""Command-line front end.

Exit status: 0 for success (including degenerate-input notices), 1 when a
theorem check fails, 2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Sequence

from .classify import matroid_witness
from .cm import skips_from_m_sequence
from .complex import SimplicialComplex, f_vector, h_vector
from .errors import DegenerateComplex, FaceRingError, ParseError
from .formats import complex_hash, complex_to_doc, dumps, load
from .generators import FAMILIES, FamilySpec
from .homology import as_field
from .verify import MultiplicityReport, fuzz_search, ledger_summary, theorem_suite, verify_conjecture

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _fields(values: list[int] | None) -> list[int]:
    chars = values or [0, 2]
    seen = []
    for c in chars:
        as_field(c)  # validates: 0 or prime
        if c not in seen:
            seen.append(c)
    return seen


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _family(tokens: Sequence[str], seed: int) -> FamilySpec:
    name, *rest = tokens
    if ":" in name:
        return FamilySpec.parse(" ".join(tokens), seed)
    return FamilySpec.from_tokens(name, rest, seed)


def _load_input(args) -> tuple[SimplicialComplex, dict]:
    if args.family:
        spec = _family(args.family, args.seed)
        return spec.build(args.trial), {"family": spec.to_doc(), "trial": args.trial}
    if not args.input:
        raise ParseError("an input file or --family is required")
    return load(args.input), {"input": str(args.input)}


def _degenerate_doc(delta: SimplicialComplex, exc: DegenerateComplex) -> dict:
    return {"complex": complex_to_doc(delta), "hash": complex_hash(delta),
            "degenerate": True, "notice": str(exc)}


# -- text rendering -------------------------------------------------------------------


def _fmt_seq(values) -> str:
    return "(" + ", ".join(str(v) for v in values) + ")"


def _report_text(rep: MultiplicityReport, verbose: bool) -> str:
    s = rep.shifts
    flags = rep.flags
    lines = [
        f"-- field: {rep.field}",
        f"Betti table:\n{rep.table.to_text()}",
        f"m = {_fmt_seq(s.m)}   M = {_fmt_seq(s.M)}",
        f"bounds: lower = {rep.lower}   upper = {rep.upper}   e = {rep.e}",
        f"pure = {rep.pure}   quasi-pure = {rep.quasi_pure}   almost CM = {rep.almost_cm}",
        "flags: " + "  ".join(
            f"{k}={v}" for k, v in flags.to_doc().items() if k != "field"
        ),
    ]
    if rep.connectivity is not None:
        lines.append(f"connectivity q = {_fmt_seq(rep.connectivity.values)}")
    for v in rep.verdicts:
        if v.applicable or verbose:
            extra = "" if v.applicable else f" ({v.detail.get('reason', '')})"
            lines.append(f"  [{v.status:>4}] {v.name}{extra}")
    return "\n".join(lines)


def _header_text(delta: SimplicialComplex) -> str:
    return "\n".join([
        f"complex {complex_hash(delta)}: n = {delta.n}, dim = {delta.dim}, facets = {len(delta.facet_masks)}",
        f"f = {_fmt_seq(f_vector(delta))}   h = {_fmt_seq(h_vector(delta))}",
    ])


# -- subcommands --------------------------------------------------------------------------


def _run_reports(args, suite) -> int:
    delta, source = _load_input(args)
    fields = _fields(args.field)
    try:
        reports = [suite(delta, f) for f in fields]
    except DegenerateComplex as exc:
        if args.format == "doc":
            _emit(json.dumps({"source": source, **_degenerate_doc(delta, exc)}, indent=2) + "\n", args.out)
        else:
            _emit(f"{_header_text(delta)}\nnotice: degenerate input ({exc}); nothing to verify\n", args.out)
        return EXIT_OK
    if args.format == "doc":
        doc = {
            "source": source,
            "complex": complex_to_doc(delta),
            "hash": complex_hash(delta),
            "f_vector": list(f_vector(delta)),
            "h_vector": list(h_vector(delta)),
            "matroid_witness": matroid_witness(delta),
            "reports": [r.to_doc() for r in reports],
            "ok": all(r.ok for r in reports),
        }
        _emit(json.dumps(doc, indent=2, default=list) + "\n", args.out)
    else:
        parts = [_header_text(delta)] + [_report_text(r, args.verbose) for r in reports]
        status = "all applicable checks hold" if all(r.ok for r in reports) else "FAILED checks present"
        _emit("\n".join(parts) + f"\n{status}\n", args.out)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def cmd_analyze(args) -> int:
    return _run_reports(args, verify_conjecture)


def cmd_verify(args) -> int:
    return _run_reports(args, theorem_suite)


def cmd_search(args) -> int:
    tokens = list(args.family)
    trials, seed = args.trials, args.seed
    # accept trials=/seed= inline alongside family parameters
    for tok in list(tokens[1:]):
        key, _, value = tok.partition("=")
        if key in ("trials", "seed") and value:
            tokens.remove(tok)
            if key == "trials":
                trials = int(value)
            else:
                seed = int(value)
    spec = _family(tokens, seed)
    out = args.out or f"ledger-{spec.name}-{seed}.jsonl"
    records = fuzz_search(spec, trials, _fields(args.field), out, workers=args.workers)
    summary = ledger_summary(records)
    sys.stdout.write(f"ledger: {out}\n" + json.dumps(summary, sort_keys=True) + "\n")
    return EXIT_FAIL if summary["fail"] else EXIT_OK


def cmd_generate(args) -> int:
    spec = _family(args.family, args.seed)
    delta = spec.build(args.trial)
    _emit(dumps(delta, "text" if args.format == "text" else "doc"), args.out)
    return EXIT_OK


def cmd_skips(args) -> int:
    values = [int(tok) for raw in args.m for tok in re.split(r"[\s,]+", raw.strip()) if tok]
    table = skips_from_m_sequence(values, args.n, args.d)
    if args.format == "doc":
        _emit(json.dumps(table.to_doc(), indent=2) + "\n", args.out)
    else:
        _emit(table.to_text() + "\n", args.out)
    return EXIT_OK


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="facering",
        description="Face-ring invariants and multiplicity bounds for simplicial complexes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=True):
        p.add_argument("--field", type=int, action="append",
                       help="field characteristic, 0 or a prime (repeatable; default 0 and 2)")
        if formats:
            p.add_argument("--format", choices=("text", "doc"), default="text")
        p.add_argument("--out", help="write output to this file")

    for name, func, text in [
        ("analyze", cmd_analyze, "invariants and conjecture bounds"),
        ("verify", cmd_verify, "every applicable theorem check"),
    ]:
        p = sub.add_parser(name, help=text)
        p.add_argument("input", nargs="?", help="facet file (text) or JSON document")
        p.add_argument("--family", nargs="+", metavar="TOKEN",
                       help="generate the input instead, e.g. --family cross_polytope_boundary 3")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trial", type=int, default=0)
        p.add_argument("-v", "--verbose", action="store_true", help="list inapplicable checks too")
        common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("search", help="randomized conjecture search with a JSON-lines ledger")
    p.add_argument("family", nargs="+", help="family name and parameters, e.g. random_pure n=8 d=2")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    common(p, formats=False)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("generate", help="write a named or random complex")
    p.add_argument("family", nargs="+", help=f"one of: {', '.join(FAMILIES)}")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trial", type=int, default=0)
    p.add_argument("--format", choices=("text", "doc"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("skips", help="skip table of a minimal-shift sequence")
    p.add_argument("m", nargs="+", help="the shifts m_1 < ... < m_c")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--format", choices=("text", "doc"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_skips)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    except FaceRingError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
