"""Command-line front end.

Subcommands: ``solve``, ``classify``, ``decompose``, ``project``,
``intersect``, ``asymptote``, and ``gallery``.  Inputs are documents (see
:mod:`fwsets.documents`); reports go to stdout as JSON (the stable machine
contract) or a text summary, diagnostics to stderr.

Exit codes: 0 success, 1 empty or infeasible input, 2 parse error,
3 verdict Unknown, 4 size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import gallery
from .affine import AffineManifold
from .asymptotes import (
    classify_fw_set,
    classify_qfw,
    distance_to_manifold,
    is_f_asymptote,
)
from .documents import format_rational, parse, serialize
from .errors import (
    DocumentError,
    EmptySetError,
    FwsetsError,
    SizeCapError,
)
from .motzkin import MotzkinSet, decompose
from .polyhedra import HPolyhedron, intersect as intersect_h, project_fm
from .setops import (
    affine_image,
    intersect_fwm,
    intersect_subspace_motzkin,
    minimize_on_descriptor,
)

EXIT_OK = 0
EXIT_EMPTY = 1
EXIT_PARSE = 2
EXIT_UNKNOWN = 3
EXIT_CAP = 4

SET_KINDS_FOR_CLI = {
    "hpolyhedron",
    "vpolyhedron",
    "motzkin",
    "quad_sublevel",
    "epigraph",
    "product",
    "union",
    "intersection",
    "affine_image",
}


def _load(path: str, want=None):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from None
    kind, value = parse(text)
    if want is not None and kind not in want:
        raise DocumentError(f"{path}: expected one of {sorted(want)}, got {kind}")
    return kind, value


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, separators=(",", ": "), indent=1))
        return
    for line in _text_lines(report):
        print(line)


def _text_lines(report, indent=0):
    pad = "  " * indent
    lines = []
    for key in sorted(report):
        value = report[key]
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_text_lines(value, indent + 1))
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: {json.dumps(value)}")
        else:
            lines.append(f"{pad}{key}: {value}")
    return lines


def _rat_list(v):
    return [format_rational(x) for x in v]


def _verdict_report(verdict) -> dict:
    if verdict.kind == "attained":
        exact = getattr(verdict, "exact", True)
        return {
            "verdict": "attained",
            "value": format_rational(verdict.value),
            "point": _rat_list(verdict.point),
            "exact": exact,
            "justification": (
                "bounded-below quadratics on polyhedral data attain their "
                "infima (Frank-Wolfe / Kummer); the witness passed exact "
                "stationarity and multiplier checks"
                if exact
                else "grid refinement stabilized within tolerance"
            ),
        }
    if verdict.kind == "unbounded":
        return {
            "verdict": "unbounded_below",
            "base": _rat_list(verdict.base),
            "direction": _rat_list(verdict.direction),
            "justification": verdict.note
            or "objective decreases without bound along the certificate ray",
        }
    if verdict.kind == "not_attained":
        return {
            "verdict": "not_attained",
            "infimum": format_rational(verdict.infimum),
            "justification": "strictly decreasing member values approach the infimum",
        }
    return {"verdict": "unknown", "justification": verdict.reason}


def cmd_solve(args) -> int:
    _, fset = _load(args.set, SET_KINDS_FOR_CLI)
    _, quad = _load(args.quadratic, {"quadratic"})
    tol = Fraction(args.tolerance).limit_denominator(10**15) if args.tolerance else None
    if isinstance(fset, MotzkinSet) and tol is not None:
        from .motzkin import minimize_on_motzkin

        verdict = minimize_on_motzkin(quad, fset, tol=tol)
    else:
        verdict = minimize_on_descriptor(quad, fset)
    report = {"command": "solve", "seed": args.seed, **_verdict_report(verdict)}
    _emit(report, args.format)
    return EXIT_UNKNOWN if verdict.kind == "unknown" else EXIT_OK


def cmd_classify(args) -> int:
    _, fset = _load(args.set, SET_KINDS_FOR_CLI)
    fw = classify_fw_set(fset)
    qfw = classify_qfw(fset)
    report = {
        "command": "classify",
        "seed": args.seed,
        "attainment": {"label": fw.label, "justification": fw.justification},
        "quasi_attainment": {"label": qfw.label, "justification": qfw.justification},
    }
    _emit(report, args.format)
    if fw.label == "Unknown" and qfw.label == "Unknown":
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_decompose(args) -> int:
    _, hpoly = _load(args.hpolyhedron, {"hpolyhedron"})
    mot = decompose(hpoly)
    report = {
        "command": "decompose",
        "seed": args.seed,
        "motzkin": json.loads(serialize("motzkin", mot))["payload"],
        "justification": (
            "every inequality system splits into a polytope plus its "
            "recession cone (Motzkin/Minkowski-Weyl decomposition)"
        ),
    }
    _emit(report, args.format)
    return EXIT_OK


def cmd_project(args) -> int:
    kind, fset = _load(args.set, SET_KINDS_FOR_CLI)
    coords = [int(c) for c in args.coords.split(",") if c.strip()]
    if isinstance(fset, HPolyhedron):
        image = project_fm(fset, coords)
        payload = json.loads(serialize("hpolyhedron", image))["payload"]
        report = {
            "command": "project",
            "seed": args.seed,
            "hpolyhedron": payload,
            "justification": "variable elimination keeps the exact image",
        }
        _emit(report, args.format)
        return EXIT_OK
    if isinstance(fset, MotzkinSet) and fset.is_polyhedral_cone:
        from .affine import AffineMap
        from .linalg import unit

        rows = [unit(fset.dim, c - 1) for c in coords]
        image = affine_image(fset, AffineMap.build(rows))
        report = {
            "command": "project",
            "seed": args.seed,
            "motzkin": json.loads(serialize("motzkin", image))["payload"],
            "justification": "coordinate images of compact-plus-cone sums are computed generator-wise",
        }
        _emit(report, args.format)
        return EXIT_OK
    print("projection is only exact for polyhedral data", file=sys.stderr)
    return EXIT_UNKNOWN


def cmd_intersect(args) -> int:
    kind_a, a = _load(args.left, SET_KINDS_FOR_CLI)
    kind_b, b = _load(args.right, SET_KINDS_FOR_CLI | {"subspace", "manifold"})
    if isinstance(a, HPolyhedron) and isinstance(b, HPolyhedron):
        result = intersect_h(a, b)
        report = {
            "command": "intersect",
            "seed": args.seed,
            "hpolyhedron": json.loads(serialize("hpolyhedron", result))["payload"],
            "justification": "inequality systems intersect by stacking rows",
        }
        _emit(report, args.format)
        return EXIT_OK
    if isinstance(a, MotzkinSet) and isinstance(b, AffineManifold):
        result = intersect_subspace_motzkin(a, b)
        report = {
            "command": "intersect",
            "seed": args.seed,
            "motzkin": json.loads(serialize("motzkin", result))["payload"],
            "justification": (
                "subspace sections of compact-plus-cone sums recompose as a "
                "polytope plus the intersected cone"
            ),
        }
        _emit(report, args.format)
        return EXIT_OK
    if isinstance(a, MotzkinSet) and isinstance(b, MotzkinSet):
        result = intersect_fwm(a, b)
        report = {
            "command": "intersect",
            "seed": args.seed,
            "motzkin": json.loads(serialize("motzkin", result))["payload"],
            "justification": (
                "binary intersections route through the product and the "
                "diagonal subspace"
            ),
        }
        _emit(report, args.format)
        return EXIT_OK
    print("unsupported intersection combination", file=sys.stderr)
    return EXIT_UNKNOWN


def cmd_asymptote(args) -> int:
    _, fset = _load(args.set, SET_KINDS_FOR_CLI)
    _, manifold = _load(args.manifold, {"manifold", "subspace"})
    verdict = is_f_asymptote(fset, manifold)
    dist = distance_to_manifold(fset, manifold)
    detail = {"distance_kind": dist.kind}
    if dist.kind == "positive":
        detail["distance_squared_lower_bound"] = format_rational(dist.lower_bound_sq)
    if dist.kind == "zero_evidence":
        detail["closest_distance_squared"] = format_rational(dist.pairs[-1][2])
    report = {
        "command": "asymptote",
        "seed": args.seed,
        "is_f_asymptote": verdict,
        "justification": (
            "the manifold misses the set while the distance evidence "
            "decreases to zero"
            if verdict
            else "either the set meets the manifold or a positive separation "
            "bound was certified"
            if verdict is False
            else "one leg of the asymptote test is undecided"
        ),
        **detail,
    }
    _emit(report, args.format)
    return EXIT_UNKNOWN if verdict is None else EXIT_OK


def cmd_gallery(args) -> int:
    if args.action == "list":
        report = {"command": "gallery", "cases": gallery.list_cases()}
        _emit(report, args.format)
        return EXIT_OK
    name = args.name or "all"
    reports = gallery.run_all() if name == "all" else [gallery.run_case(name)]
    payload = {
        "command": "gallery",
        "seed": args.seed,
        "cases": {
            r.name: {
                "passed": r.passed,
                "checks": [
                    {
                        "name": c.name,
                        "passed": c.passed,
                        "claimed": c.claimed,
                        "computed": c.computed,
                    }
                    for c in r.checks
                ],
                "references": list(r.references),
            }
            for r in reports
        },
        "all_passed": all(r.passed for r in reports),
    }
    if args.format == "text":
        for r in sorted(reports, key=lambda r: r.name):
            for line in r.lines():
                print(line)
    else:
        _emit(payload, args.format)
    return EXIT_OK if payload["all_passed"] else EXIT_EMPTY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fwsets",
        description=(
            "exact attainment analysis for quadratics on compact-plus-cone "
            "sets, with asymptote and projection diagnostics"
        ),
    )
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.add_argument("--tolerance", type=float, default=None)
    parser.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="minimize a quadratic over a set")
    p.add_argument("set")
    p.add_argument("quadratic")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("classify", help="attainment / quasi-attainment verdicts")
    p.add_argument("set")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("decompose", help="polytope plus recession cone split")
    p.add_argument("hpolyhedron")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("project", help="exact coordinate projection")
    p.add_argument("set")
    p.add_argument("--coords", required=True, help="comma-separated 1-based list")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("intersect", help="intersect two sets (or set and subspace)")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("asymptote", help="flat-asymptote test for a manifold")
    p.add_argument("set")
    p.add_argument("manifold")
    p.set_defaults(func=cmd_asymptote)

    p = sub.add_parser("gallery", help="list or replay the counterexample gallery")
    p.add_argument("action", choices=("list", "run"))
    p.add_argument("name", nargs="?", default=None)
    p.set_defaults(func=cmd_gallery)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        loc = ""
        if exc.line is not None:
            loc = f" (line {exc.line}, column {exc.column})"
        elif exc.path is not None:
            loc = f" (at {exc.path})"
        print(f"parse error: {exc}{loc}", file=sys.stderr)
        return EXIT_PARSE
    except EmptySetError as exc:
        print(f"empty set: {exc}", file=sys.stderr)
        if exc.certificate is not None:
            print(
                f"infeasibility certificate: {[str(x) for x in exc.certificate]}",
                file=sys.stderr,
            )
        return EXIT_EMPTY
    except SizeCapError as exc:
        print(f"size cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except FwsetsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN


if __name__ == "__main__":
    sys.exit(main())
