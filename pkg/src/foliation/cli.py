"""Command line front end: ``foliation <command> [options] <file|->``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import algebra as alg
from .blowup import ch_audit, pre_reduce
from .laurent import bernstein_count_oracle, general_position
from .local import AlgebraicTower, NotReduced, classify_point, corner_newton_polygon, degenerate_sides, make_generator
from .parse import InputDocument, ParseError, parse_input
from .polytope import mixed_area, polygon_of, render_ascii
from .projective import (
    VARS,
    ValidationError,
    chart_generator,
    classify_case,
    dichotomy,
    from_holomorphic,
    homogeneous_polygon,
    newton_nondegenerate_everywhere,
    validate,
)

COMMANDS = ("analyze", "polygon", "blowup-tree", "bkk", "dichotomy")


class UsageError(ValueError):
    pass


def _exact(obj):
    """Numbers become exact strings; booleans and None stay."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, (int, Fraction, alg.AlgNum)):
        return alg.scalar_str(obj)
    if isinstance(obj, dict):
        return {k: _exact(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_exact(v) for v in obj]
    return obj


def foliation_of(doc: InputDocument):
    if doc.mode == "logarithmic":
        return validate(*(doc.entries[k] for k in ("A0", "A1", "A2")), context=doc.context)
    if doc.mode == "holomorphic":
        return from_holomorphic(*(doc.entries[k] for k in ("f0", "f1", "f2")), context=doc.context)
    raise UsageError(f"{doc.mode} input does not describe a projective foliation")


def _tree(g, max_depth: int, names=("x1", "x2")) -> dict:
    outcome = pre_reduce(g, max_depth, names)
    out = outcome.to_json()
    if outcome.success:
        ok, witnesses = ch_audit(outcome)
        out["ch"] = {"verdict": ok, "witnesses": [w.to_json() for w in witnesses]}
    return out


def _polygon_section(F) -> dict:
    poly = homogeneous_polygon(F)
    out = poly.to_json()
    out["ascii"] = [render_ascii(c.vertices if not poly.points else _chart_points(poly, i), c) for i, c in enumerate(poly.charts)]
    return out


def _chart_points(poly, i: int):
    return [tuple(v for m, v in enumerate(p) if m != i) for p in poly.points]


def analyze_projective(F, doc: InputDocument, max_depth: int, chart: int | None) -> dict:
    report: dict = {"input_echo": doc.echo(), "d_F": F.d_F, "foliation_degree": F.foliation_degree}
    report["components"] = [{"name": VARS[i], "nature": n} for i, n in enumerate(F.natures)]
    report["polygon"] = _polygon_section(F)
    try:
        rep = dichotomy(F, max_depth)
    except (AlgebraicTower, alg.ZeroDivisorSplit) as exc:
        report["case"] = classify_case(homogeneous_polygon(F)).to_json()
        report["dichotomy"] = {"verdict": "NotApplicable", "reason": f"unsupported algebraic data: {exc}"}
        return report
    report["nnd"] = rep.nnd.to_json()
    report["ch"] = rep.ch.to_json() if rep.ch is not None else {"verdict": None, "witnesses": []}
    report["case"] = rep.case.to_json()
    report["lambda"] = rep.lam.to_json() if rep.lam is not None else None
    report["curves"] = [c.to_json(cert) for c, cert in zip(rep.curves, rep.certificates)]
    report["branches"] = rep.branches
    report["trace_ratios"] = [r.to_json() for r in rep.ratios]
    report["dichotomy"] = rep.verdict_json()
    if chart is not None:
        j, k = [m for m in range(3) if m != chart]
        report["blowup_tree"] = {"chart": chart, **_tree(chart_generator(F, chart), max_depth, (VARS[j], VARS[k]))}
    return report


def analyze_corner(doc: InputDocument, max_depth: int) -> dict:
    g = make_generator(2, doc.entries["a1"], doc.entries["a2"], doc.context)
    poly = corner_newton_polygon(g)
    return {
        "input_echo": doc.echo(),
        "class": classify_point(g).to_json(),
        "components": [{"name": n, "nature": c} for n, c in zip(("x1", "x2"), g.natures)],
        "newton_polygon": {"vertices": [list(v) for v in poly.vertices]},
        "degenerate_sides": [[list(s.a), list(s.b)] for s in degenerate_sides(g)],
        "blowup_tree": _tree(g, max_depth),
    }


def bkk_report(doc: InputDocument) -> dict:
    if doc.mode != "laurent":
        raise UsageError("bkk needs a Laurent pair F1, F2 in u1, u2")
    f1, f2 = doc.entries["F1"], doc.entries["F2"]
    pos = general_position(f1, f2)
    area = mixed_area(polygon_of(f1), polygon_of(f2))
    out: dict = {"input_echo": doc.echo(), "general_position": pos.ok, "mixed_area": area}
    if not pos.ok:
        out["witness"] = {"side": [list(pos.witness.a), list(pos.witness.b)]}
        return out
    if doc.context is None:
        count = bernstein_count_oracle(f1, f2)
        out["oracle_count"] = count
        out["agreement"] = count == area
    return out


def run(doc: InputDocument, command: str, max_depth: int = 64, chart: int | None = None) -> dict:
    if command == "bkk":
        return _exact(bkk_report(doc))
    if doc.mode == "local-corner":
        if command not in ("analyze", "blowup-tree"):
            raise UsageError(f"{command} needs a projective foliation")
        return _exact(analyze_corner(doc, max_depth))
    F = foliation_of(doc)
    if command == "analyze":
        return _exact(analyze_projective(F, doc, max_depth, chart))
    if command == "polygon":
        nnd = newton_nondegenerate_everywhere(F)
        return _exact({"input_echo": doc.echo(), "polygon": _polygon_section(F), "nnd": nnd.to_json()})
    if command == "blowup-tree":
        i = 0 if chart is None else chart
        j, k = [m for m in range(3) if m != i]
        return _exact({"input_echo": doc.echo(), "chart": i, **_tree(chart_generator(F, i), max_depth, (VARS[j], VARS[k]))})
    if command == "dichotomy":
        full = analyze_projective(F, doc, max_depth, None)
        return _exact({"case": full["case"], "dichotomy": full["dichotomy"]})
    raise UsageError(f"unknown command {command}")


def render_text(report: dict) -> str:
    lines: list[str] = []

    def emit(key, value, indent):
        pad = "  " * indent
        if key == "ascii":
            for i, block in enumerate(value):
                lines.append(f"{pad}chart {i}:")
                lines.extend(pad + "  " + row for row in block.splitlines())
        elif isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            for k, v in value.items():
                emit(k, v, indent + 1)
        elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
            lines.append(f"{pad}{key}:")
            for i, v in enumerate(value):
                emit(f"- [{i}]", v, indent + 1)
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: " + ", ".join("-" if v is None else str(v) for v in value))
        else:
            lines.append(f"{pad}{key}: {'-' if value is None else value}")

    for k, v in report.items():
        emit(k, v, 0)
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="foliation", description="Exact analysis of foliations on the projective plane.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", help="input file, or - for stdin")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-depth", type=int, default=64)
    p.add_argument("--chart", type=int, choices=(0, 1, 2), default=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        doc = parse_input(text)
        report = run(doc, args.command, args.max_depth, args.chart)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except (ValidationError, NotReduced) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 1
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        sys.stdout.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(render_text(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
