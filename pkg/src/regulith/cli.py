"""Command-line front end.

    regulith analyze DESIGN.csv
    regulith subfractions DESIGN.csv --size 4
    regulith decompose DESIGN.csv --size 4 | --greedy
    regulith pb --cols A,B,F,H,I | --classify | --oa-catalog

Exit status: 0 on success, 1 when a search finds nothing, 2 on bad input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from .decompose import Decomposition, decompose_all, decompose_greedy
from .gf2core import MAX_FACTORS, factor_label, levels_of
from .polynomial import CountingPolynomial, Fraction, format_polynomial, from_fraction, orthogonal_strength
from .regular import RegularSpec, find_regular_subfractions, points_of, regularity_of

THREADS_ENV = "REGULITH_THREADS"

_PLUS = {"+1", "1", "+"}
_MINUS = {"-1", "-"}


class InputError(Exception):
    pass


def parse_design(text: str, source: str = "<input>") -> Fraction:
    """Parse CSV runs; levels may be -1/+1, -/+ or 0/1 (0 meaning -1)."""
    rows = []
    width = None
    saw_zero = saw_minus = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "," in line:
            tokens = [t.strip() for t in next(csv.reader([line]))]
        else:
            tokens = line.split()
        levels = []
        bad = None
        zero = minus = False
        for t in tokens:
            if t in _PLUS:
                levels.append(1)
            elif t in _MINUS:
                levels.append(-1)
                minus = True
            elif t == "0":
                levels.append(-1)
                zero = True
            else:
                bad = t
                break
        if bad is not None:
            if not rows and width is None:
                width = len(tokens)  # header line
                continue
            raise InputError(f"{source}:{lineno}: cannot read level {bad!r}")
        saw_zero |= zero
        saw_minus |= minus
        if saw_zero and saw_minus:
            raise InputError(f"{source}:{lineno}: mixes 0/1 and -1/+1 codings")
        if width is None:
            width = len(levels)
        if len(levels) != width:
            raise InputError(f"{source}:{lineno}: expected {width} fields, found {len(levels)}")
        rows.append(levels)
    if not rows:
        raise InputError(f"{source}: no runs found")
    if not 1 <= width <= MAX_FACTORS:
        raise InputError(f"{source}: {width} factors; supported range is 1..{MAX_FACTORS}")
    return Fraction.from_rows(rows)


def read_design(path: str) -> Fraction:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return parse_design(text, path)


def design_csv(rows, m: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"X{j}" for j in range(1, m + 1)])
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def workers_from_env() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise InputError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return min(n, os.cpu_count() or 1)


def poly_json(F: CountingPolynomial) -> dict:
    return {
        "m": F.m,
        "text": format_polynomial(F),
        "terms": [{"alpha": factor_label(a) or "0", "mask": a, "coef": str(c)} for a, c in F.terms()],
    }


def spec_json(r: RegularSpec) -> dict:
    return {
        "generators": [factor_label(g) for g in r.generators],
        "signs": list(r.signs),
        "size": r.size,
        "indicator": str(r),
        "points": [list(levels_of(p, r.m)) for p in points_of(r).masks()],
    }


def _levels_text(p: int, m: int) -> str:
    return "(" + ",".join("+1" if v > 0 else "-1" for v in levels_of(p, m)) + ")"


def _emit(obj, fmt: str, text: str):
    if fmt == "json":
        print(json.dumps(obj, indent=2))
    else:
        print(text)


def _require_set(f: Fraction, what: str):
    if not f.is_set():
        raise InputError(f"{what} needs a design without replicated runs")


def cmd_analyze(args) -> int:
    f = read_design(args.file)
    F = from_fraction(f)
    indicator = F.is_indicator()
    strength = orthogonal_strength(F, counting=not indicator)
    spec = regularity_of(F) if indicator else None
    obj = {
        "m": f.m,
        "runs": f.run_count,
        "distinct_runs": f.distinct_count,
        "indicator": indicator,
        "polynomial": poly_json(F),
        "strength": strength,
        "regular": spec is not None,
        "regular_spec": spec_json(spec) if spec else None,
    }
    kind = "indicator" if indicator else "counting"
    lines = [
        f"factors: {f.m}",
        f"runs: {f.run_count} ({f.distinct_count} distinct)",
        f"{kind} polynomial: {format_polynomial(F)}",
        f"orthogonal strength: {strength}",
    ]
    if spec:
        gens = ", ".join(f"X{factor_label(g)} = {e:+d}" for g, e in zip(spec.generators, spec.signs))
        lines.append(f"regular: yes, {spec}" + (f"  [{gens}]" if gens else ""))
    else:
        lines.append("regular: no" + ("" if indicator else " (replicated runs)"))
    _emit(obj, args.format, "\n".join(lines))
    return 0


def _size_to_k(f: Fraction, size: int) -> int:
    if size < 1 or size & (size - 1):
        raise InputError(f"--size must be a power of two, got {size}")
    if size > f.run_count:
        raise InputError(f"--size {size} exceeds the run count {f.run_count}")
    return f.m - (size.bit_length() - 1)


def cmd_subfractions(args) -> int:
    f = read_design(args.file)
    _require_set(f, "subfraction search")
    k = _size_to_k(f, args.size)
    found = find_regular_subfractions(from_fraction(f), k, workers=workers_from_env())
    obj = {"size": args.size, "count": len(found), "fractions": [spec_json(r) for r in found]}
    lines = [f"{len(found)} regular fraction(s) of size {args.size}"]
    for i, r in enumerate(found, 1):
        pts = " ".join(_levels_text(p, f.m) for p in points_of(r).masks())
        lines.append(f"{i:>3}  {r}  {pts}")
    _emit(obj, args.format, "\n".join(lines))
    return 0 if found else 1


def _decomp_json(d: Decomposition) -> dict:
    return {"parts": [spec_json(r) for r in d.parts], "sizes": d.sizes}


def cmd_decompose(args) -> int:
    f = read_design(args.file)
    _require_set(f, "decomposition")
    F = from_fraction(f)
    if args.greedy:
        d = decompose_greedy(F)
        obj = {"mode": "greedy", "decomposition": _decomp_json(d)}
        lines = [f"greedy decomposition into {len(d)} part(s)"] + [f"  {r}  ({r.size} runs)" for r in d.parts]
        _emit(obj, args.format, "\n".join(lines))
        return 0
    _size_to_k(f, args.size)
    if f.run_count % args.size:
        raise InputError(f"--size {args.size} does not divide the run count {f.run_count}")
    ds = decompose_all(F, args.size, workers=workers_from_env())
    obj = {"mode": "fixed", "size": args.size, "count": len(ds), "decompositions": [_decomp_json(d) for d in ds]}
    lines = [f"{len(ds)} decomposition(s) into regular fractions of size {args.size}"]
    for i, d in enumerate(ds, 1):
        lines.append(f"{i:>3}  " + " | ".join(str(r) for r in d.parts))
    _emit(obj, args.format, "\n".join(lines))
    return 0 if ds else 1


def cmd_pb(args) -> int:
    from . import pbcatalog as pb

    d = pb.build_pb12()
    if args.cols:
        cols = [c for c in args.cols.split(",") if c.strip()]
        try:
            idx = [pb.column_index(c) for c in cols]
            f = pb.project(d, idx)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        rows = [[-1 if r >> (c - 1) & 1 else 1 for c in idx] for r in d.rows]
        if args.format == "json":
            print(json.dumps({"columns": [pb.COLUMN_LABELS[c - 1] for c in idx], "rows": rows}, indent=2))
        else:
            sys.stdout.write(design_csv(rows, f.m))
        return 0
    if args.classify:
        classes = pb.classify_projections(d)
        n12 = sum(1 for c in classes if c.distinct_run_count == 12)
        obj = {
            "projections": sum(c.member_count for c in classes),
            "classes": len(classes),
            "classes_by_distinct_runs": {"12": n12, "11": len(classes) - n12},
            "table": [
                {
                    "id": c.class_id,
                    "members": c.member_count,
                    "distinct_runs": c.distinct_run_count,
                    "columns": ["".join(pb.COLUMN_LABELS[j - 1] for j in cols) for cols in c.members],
                }
                for c in classes
            ],
        }
        lines = ["ID   N  SIZE"] + [f"{c.class_id:>3} {c.member_count:>3} {c.distinct_run_count:>5}" for c in classes]
        lines.append(f"{obj['projections']} projections, {len(classes)} classes: {n12} with 12 distinct runs, {len(classes) - n12} with 11")
        _emit(obj, args.format, "\n".join(lines))
        return 0
    entries = pb.strength2_catalog_entries()
    patterns = pb.alpha_patterns()
    obj = {
        "patterns": [[factor_label(a) for a in p.alphas] for p in patterns],
        "candidates": len(patterns) * 64,
        "count": len(entries),
        "members": [
            {"pattern": e.pattern, "signs": list(e.signs), "polynomial": poly_json(e.polynomial), "parts": [str(r) for r in e.parts]}
            for e in entries
        ],
    }
    lines = [f"{len(entries)} distinct indicator functions from {len(patterns)} patterns x 64 sign vectors"]
    for i, e in enumerate(entries, 1):
        signs = "".join("+" if s > 0 else "-" for s in e.signs)
        lines.append(f"{i:>3}  N={e.pattern:<2} e={signs}  {format_polynomial(e.polynomial)}")
    _emit(obj, args.format, "\n".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="regulith", description="Regular fractions inside two-level designs.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.set_defaults(func=func)
        return sp

    sp = add("analyze", cmd_analyze, "indicator polynomial, strength and regularity of a design")
    sp.add_argument("file", help="CSV of runs ('-' for stdin)")

    sp = add("subfractions", cmd_subfractions, "regular fractions of a given size inside a design")
    sp.add_argument("file")
    sp.add_argument("--size", type=int, required=True)

    sp = add("decompose", cmd_decompose, "partitions into disjoint regular fractions")
    sp.add_argument("file")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--size", type=int)
    g.add_argument("--greedy", action="store_true")

    sp = add("pb", cmd_pb, "12-run Plackett-Burman projections and the strength-2 OA catalog")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--cols", help="five column labels, e.g. A,B,F,H,I")
    g.add_argument("--classify", action="store_true")
    g.add_argument("--oa-catalog", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
        sys.stdout.flush()
        return code
    except InputError as exc:
        print(f"regulith: error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # reader went away (e.g. piped into head); stay quiet
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
