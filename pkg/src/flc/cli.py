"""Command line: ``flc classify | validate | builtin``."""

from __future__ import annotations

import argparse
import json
import sys

from . import builtins
from .classifier import ClassificationReport, DaxOracle, classify
from .groups import FGAbelianGroup, FiniteTableGroup, SelfCentralizingZ, UnsupportedQuery, ValidationError
from .manifold_io import load_manifold, manifold_from_dict, report_to_json

EXIT_OK, EXIT_INVALID, EXIT_UNSUPPORTED = 0, 1, 2


def parse_circle(spec: str, G):
    """``trivial``, ``index:K``, ``vec:a,b,...``, ``c``, ``c^K`` or an element name."""
    if spec == "trivial":
        return G.identity
    if spec.startswith("index:"):
        if not isinstance(G, FiniteTableGroup):
            raise ValueError("index: circles need a finite_table pi1")
        return int(spec[6:])
    if spec.startswith("vec:"):
        if not isinstance(G, FGAbelianGroup):
            raise ValueError("vec: circles need an fg_abelian pi1")
        v = tuple(int(x) for x in spec[4:].split(",") if x.strip())
        if len(v) != G.ngens:
            raise ValueError(f"vec: needs {G.ngens} entries")
        return v
    if isinstance(G, SelfCentralizingZ):
        if spec == "c":
            return 1
        if spec.startswith("c^"):
            return int(spec[2:])
        raise ValueError("circles in an opaque pi1 are trivial, c or c^K")
    if isinstance(G, FiniteTableGroup) and G.names and spec in G.names:
        return G.names.index(spec)
    raise ValueError(f"cannot read circle {spec!r}")


def parse_dax(spec: str | None) -> DaxOracle:
    if spec is None:
        return DaxOracle("absent")
    if spec == "zero":
        return DaxOracle("all-zero")
    if spec == "nonzero":
        return DaxOracle("all-nonzero")
    if spec.startswith("file:"):
        with open(spec[5:], encoding="utf-8") as fh:
            doc = json.load(fh)
        table = doc.get("vanishes", doc) if isinstance(doc, dict) else None
        if not isinstance(table, dict):
            raise ValueError("dax file must map Fix-generator combinations to 0/1")
        return DaxOracle.from_table(table)
    raise ValueError(f"cannot read dax spec {spec!r}")


def _load(args):
    if args.builtin:
        return manifold_from_dict(builtins.builtin(args.builtin, getattr(args, "pi2_rank", None)))
    if args.path:
        return load_manifold(args.path)
    raise ValueError("give a manifold file or --builtin NAME")


def render_text(r: ClassificationReport) -> str:
    fb = r.frame_bundle
    h1 = fb["h1"].get("description", fb["h1"].get("symbolic"))
    b = r.theorem_b_branch
    lines = [
        f"manifold: {r.manifold}",
        f"circle: {r.circle['label']}  (centralizer: {r.circle['centralizer']}; "
        f"Fix_c(pi2): {r.circle['fixed_pi2']['description']})",
        f"spin_alternative: {r.spin_alternative}",
        f"pi1 FrX: {fb['description']}",
        f"H1 FrX: {h1}",
        f"pi0 Imm: {r.pi0_imm.get('count', r.pi0_imm.get('symbolic'))}",
        f"pi1 Imm: {r.pi1_imm['description']}  [{r.pi1_imm['status']}]",
        f"tw_equals_nu: {str(r.tw_equals_nu).lower()}  ({r.tw_justification})",
        f"rot_trivial_imm: {str(r.rot_trivial_imm).lower()}"
        + (f"  (witness b = {r.rot_witness})" if r.rot_witness is not None else ""),
        f"theorem_a_case: {r.theorem_a_case}",
        f"  {r.theorem_a_sequence['sequence']}",
        f"rot_splits: {r.rot_splits}",
        f"theorem_b: part 1: {b['part1']['sequence']}",
        f"theorem_b: part 2: {b['part2']['sequence']}",
    ]
    if b["part2"]["status"] == "conditional":
        lines.append(f"  deciding Fix generators: {b['part2']['deciding_generators']}")
    if "sequence" in b:
        lines.append(f"theorem_b_branch: {b['sequence']}")
    if "isomorphism" in b:
        lines.append(f"  {b['isomorphism']}  (split {b['split_status']})")
    for w in r.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines)


def cmd_classify(args) -> int:
    try:
        X = _load(args)
        c = parse_circle(args.circle, X.pi1)
        dax = parse_dax(args.dax)
        report = classify(X, c, dax)
    except (ValidationError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except UnsupportedQuery as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    print(report_to_json(report) if args.format == "json" else render_text(report))
    if args.strict and report.unsupported:
        return EXIT_UNSUPPORTED
    return EXIT_OK


def cmd_validate(args) -> int:
    try:
        X = load_manifold(args.path, validate=False)
        bad = X.violations()
    except ValidationError as exc:
        bad = exc.violations
    if bad:
        for v in bad:
            print(v)
        return EXIT_INVALID
    print("OK")
    return EXIT_OK


def cmd_builtin(args) -> int:
    if args.action == "list":
        for n in builtins.names():
            print(n)
        return EXIT_OK
    if not args.name:
        print("error: builtin show needs a name", file=sys.stderr)
        return EXIT_INVALID
    try:
        doc = builtins.builtin(args.name)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_INVALID
    print(json.dumps(doc, indent=2, sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flc", description="framed circles in 4-manifolds")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify a framed circle")
    c.add_argument("path", nargs="?", help="manifold JSON file")
    c.add_argument("--builtin", help="use a builtin manifold instead of a file")
    c.add_argument("--pi2-rank", type=int, help="pi2 rank for m_conn_s3s1")
    c.add_argument("--circle", default="trivial", help="trivial | index:K | vec:a,b,... | c | c^K | element name")
    c.add_argument("--dax", help="zero | nonzero | file:PATH (default: absent)")
    c.add_argument("--format", choices=["text", "json"], default="text")
    c.add_argument("--strict", action="store_true", help="exit 2 when some query degraded to symbolic output")
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("validate", help="run every validator on a manifold file")
    v.add_argument("path")
    v.set_defaults(func=cmd_validate)

    b = sub.add_parser("builtin", help="list or show builtin manifolds")
    b.add_argument("action", choices=["list", "show"])
    b.add_argument("name", nargs="?")
    b.set_defaults(func=cmd_builtin)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
