"""Command-line entry point: batch computations, audits, the verification
runner, and SVG emission of character-sphere sets.

Every command is deterministic given its inputs and seed; the seed appears
in every report.  Exit codes: 0 success, 1 a checked property failed,
2 input error (with a machine-readable diagnostic on standard error).
SIGMA_LOG=1 turns on progress logging to standard error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import actions as ac
from . import jsonio, spaces as sp, svg, treesigma as ts, verify
from .errors import Cat0SigmaError, UnsupportedDimension
from .raag import SimpleGraph, bestvina_brady, connectivity_verdict, coordinate_hemisphere, flag_complex
from .sphere import PolyhedralSet
from .treesigma import GraphOfGroupsSummary, MFPRData

PROG = "cat0sigma"


def _log(msg: str, stderr) -> None:
    if os.environ.get("SIGMA_LOG"):
        print(f"{PROG}: {msg}", file=stderr)


def _dump(payload, out_path, stdout) -> None:
    text = json.dumps(jsonio.jsonable(payload), sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _load(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _length(value):
    if value in ("inf", math.inf):
        return math.inf
    return int(value)


def _space_override(args, data):
    """--space overrides the space named in the data file: either a bare
    name like E2 / H2 or a JSON descriptor for trees."""
    if getattr(args, "space", None):
        text = args.space
        spec = json.loads(text) if text.lstrip().startswith("{") else {"space": text}
        data = dict(data or {})
        data["space"] = spec
    return data


# ---------------------------------------------------------------------------
# Command handlers.  Each returns (exit_code, payload).


def cmd_busemann(args, data):
    space = sp.space_from_json(data["space"])
    ray = jsonio.parse_ray(space, data["ray"])
    points = [jsonio.parse_point(space, p) for p in data.get("points", [])]
    schedule = data.get("schedule") or [1, 2, 5, 10, 20, 40]
    if isinstance(space, sp.TreeSpace):
        schedule = [Fraction(t) for t in schedule]
    exact = isinstance(space, sp.TreeSpace)
    mono_slack = 0 if exact else 1e-12
    bound_slack = 0 if exact else args.tol
    values, audits = [], []
    for p in points:
        closed = sp.busemann(space, ray, p)
        seq = sp.busemann_limit_audit(space, ray, p, schedule)
        vals = [v for _, v in seq]
        monotone = all(vals[i] <= vals[i + 1] + mono_slack for i in range(len(vals) - 1))
        bounded = all(v <= sp.distance(space, ray.base, p) + bound_slack for v in vals)
        values.append(closed)
        audits.append(
            {
                "final": vals[-1] if vals else None,
                "final_gap": abs(float(vals[-1] - closed)) if vals else None,
                "monotone": monotone,
                "bounded": bounded,
            }
        )
    ok = all(a["monotone"] and a["bounded"] for a in audits)
    payload = {
        "command": "busemann",
        "seed": args.seed,
        "space": space.to_json(),
        "values": values,
        "limit_audit": audits,
    }
    return (0 if ok else 1), payload


def cmd_tits(args, data):
    space = sp.space_from_json(data["space"])
    results = []
    ok = True
    for pair in data["pairs"]:
        e1 = jsonio.parse_boundary(space, pair[0])
        e2 = jsonio.parse_boundary(space, pair[1])
        ang = sp.angular_distance(space, e1, e2)
        td = sp.tits_distance(space, e1, e2)
        ok = ok and td >= ang - args.tol
        results.append({"angular": ang, "tits": td})
    payload = {"command": "tits", "seed": args.seed, "space": space.to_json(), "results": results}
    return (0 if ok else 1), payload


def cmd_character(args, data):
    action = ac.action_from_json(data["action"])
    end = jsonio.parse_boundary(action.space, data["end"])
    base = jsonio.parse_point(action.space, data["base"])
    values = {word: ac.character_at_end(action, end, base, word) for word in data["words"]}
    payload = {
        "command": "character",
        "seed": args.seed,
        "end": end,
        "values": values,
    }
    return 0, payload


def cmd_shift(args, data):
    space = sp.space_from_json(data["space"])
    cfg = ac.ControlConfiguration(
        space, {label: jsonio.parse_point(space, p) for label, p in data["config"].items()}
    )
    fmap = {}
    for label, target in data["map"].items():
        fmap[label] = target if isinstance(target, str) and target in cfg.points else jsonio.parse_point(space, target)
    end = jsonio.parse_boundary(space, data["end"])
    report = ac.shift_report(cfg, fmap, end)
    payload = {
        "command": "shift",
        "seed": args.seed,
        "shifts": report.shifts,
        "displacements": report.displacements,
        "gsh": report.gsh,
        "norm": report.norm,
        "is_contraction": report.is_contraction,
    }
    return 0, payload


def cmd_cocompact(args, data):
    action = ac.action_from_json(data["action"])
    base = jsonio.parse_point(action.space, data["base"])
    verdict = ac.cocompactness_witness(action, base, args.radius, depth=args.depth, seed=args.seed)
    payload = {
        "command": "cocompact",
        "seed": args.seed,
        "radius": args.radius,
        "depth": args.depth,
        "verdict": type(verdict).__name__,
        "detail": verdict,
    }
    return 0, payload


def _load_graph(path) -> SimpleGraph:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return SimpleGraph.from_json(json.loads(text))
    return SimpleGraph.from_edge_list(text)


def cmd_raag(args, data):
    graph = _load_graph(args.graph)
    n = args.n if args.n is not None else 1
    verdict = connectivity_verdict(flag_complex(graph), n)
    membership = bestvina_brady(graph, n)
    payload = {
        "command": "raag",
        "seed": args.seed,
        "n": n,
        "membership": membership,
        "verdict": {
            "nonempty": verdict.nonempty,
            "connected": verdict.connected,
            "simply_connected": verdict.simply_connected,
            "homology_vanishing": verdict.homology_vanishing,
        },
    }
    if args.svg:
        k = len(graph.vertices)
        if k > 3:
            raise UnsupportedDimension(f"sphere pictures need at most 3 vertices, graph has {k}")
        chamber = PolyhedralSet.from_clauses(
            k, [[coordinate_hemisphere(graph, v) for v in graph.vertices]]
        )
        svg.emit_sphere_svg(chamber, args.svg)
        payload["svg"] = args.svg
    return 0, payload


def _write_csv(path, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("n,value\n")
        for n, v in rows:
            fh.write(f"{n},{v}\n")


def cmd_tree_sigma(args, data):
    summary = GraphOfGroupsSummary(
        fl_group=_length(data["fl_group"]),
        fl_stabilizers=_length(data["fl_stabilizers"]),
        has_fixed_end=bool(data["has_fixed_end"]),
        cl_character=_length(data["cl_character"]) if data.get("cl_character") is not None else None,
    )
    payload = {"command": "tree-sigma", "seed": args.seed, "summary": data}
    if args.table or args.n is None or args.csv:
        n_max = args.n if args.n is not None else (int(summary.fl_group) if summary.fl_group != math.inf else 8)
        rows = ts.sigma_table(summary, n_max)
        payload["table"] = [{"n": n, "value": v} for n, v in rows]
        if args.csv:
            _write_csv(args.csv, rows)
            payload["csv"] = args.csv
    if args.n is not None and not args.table:
        fn = ts.dynamical_sigma_fixed_end if summary.has_fixed_end else ts.dynamical_sigma_no_fixed_end
        payload["n"] = args.n
        payload["value"] = fn(summary, args.n)
    return 0, payload


def cmd_mfpr(args, data):
    mfpr = MFPRData.from_json(data)
    lengths = ts.mfpr_lengths(mfpr)
    payload = {
        "command": "mfpr",
        "seed": args.seed,
        "lengths": {
            "fl_group": lengths.fl_group,
            "cl_character": lengths.cl_character,
            "fl_base": lengths.fl_base,
        },
        "antipodal_pair": mfpr.has_antipodal_pair(),
    }
    if args.n is not None and not args.table:
        payload["n"] = args.n
        payload["value"] = ts.dynamical_sigma_mfpr(mfpr, args.n)
    else:
        n_max = args.n if args.n is not None else (
            int(lengths.fl_group) if lengths.fl_group != math.inf else 8
        )
        summary = ts.mfpr_summary(mfpr)
        rows = ts.sigma_table(summary, n_max)
        payload["table"] = [{"n": n, "value": v} for n, v in rows]
        if args.csv:
            _write_csv(args.csv, rows)
            payload["csv"] = args.csv
    if args.svg:
        svg.emit_sphere_svg(list(mfpr.complement), args.svg)
        payload["svg"] = args.svg
    return 0, payload


def cmd_audit(args, data):
    space = sp.space_from_json(data["space"])
    exact = isinstance(space, sp.TreeSpace)

    def num(x):
        return Fraction(x) if exact else float(Fraction(x))

    if args.which == "local-busemann":
        report = ac.local_busemann_audit(
            space,
            jsonio.parse_point(space, data["center"]),
            num(data["r"]),
            num(data["eps"]),
            jsonio.parse_boundary(space, data["ends"][0]),
            jsonio.parse_boundary(space, data["ends"][1]),
            samples=int(data.get("samples", 50)),
            seed=args.seed,
        )
    elif args.which == "angle-estimate":
        base = jsonio.parse_point(space, data["base"])
        ray1 = sp.ray_from(space, base, jsonio.parse_boundary(space, data["ends"][0]))
        ray2 = sp.ray_from(space, base, jsonio.parse_boundary(space, data["ends"][1]))
        schedule = [num(t) for t in data.get("schedule", [1, 2, 5, 10])]
        report = ac.angle_estimate_audit(space, ray1, ray2, schedule)
    else:
        raise ValueError(f"unknown audit {args.which!r}")
    payload = {
        "command": "audit",
        "which": args.which,
        "seed": args.seed,
        "passed": report.passed,
        "samples": report.samples,
        "worst_slack": report.worst_slack,
        "details": report.details,
    }
    return (0 if report.passed else 1), payload


def cmd_verify(args, data):
    names = sorted(verify.SUITES) if args.suite == "all" else [args.suite]
    reports = [verify.run_suite(name, seed=args.seed) for name in names]
    ok = all(r.ok for r in reports)
    payload = {
        "command": "verify",
        "seed": args.seed,
        "ok": ok,
        "suites": [r.to_json() for r in reports],
    }
    return (0 if ok else 1), payload


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Boundary geometry of CAT(0) group actions: Busemann "
        "functions, characters, shift calculus and invariant formulas.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, needs_data=True, **extra):
        p = sub.add_parser(name)
        if needs_data:
            p.add_argument("--data", required=name not in ("raag", "verify"), help="input JSON file")
            p.add_argument("--space", help="override the space in the data file (E2, H2, or a JSON descriptor)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--out", help="write the JSON report here instead of stdout")
        return p

    add("busemann")
    add("tits")
    add("character")
    add("shift")
    p = add("cocompact")
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--depth", type=int, default=6)
    p = add("raag", needs_data=False)
    p.add_argument("--graph", required=True, help="graph JSON or edge-list file")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--svg", help="emit the positive coordinate chamber as SVG")
    p = add("tree-sigma")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--table", action="store_true")
    p.add_argument("--csv", help="also write the degree table as CSV")
    p = add("mfpr")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--table", action="store_true")
    p.add_argument("--csv", help="also write the degree table as CSV")
    p.add_argument("--svg", help="emit the complement point set as SVG")
    p = add("audit")
    p.add_argument("--which", required=True, choices=["local-busemann", "angle-estimate"])
    p = add("verify", needs_data=False)
    p.add_argument("--suite", default="all", choices=sorted(verify.SUITES) + ["all"])
    return parser


HANDLERS = {
    "busemann": cmd_busemann,
    "tits": cmd_tits,
    "character": cmd_character,
    "shift": cmd_shift,
    "cocompact": cmd_cocompact,
    "raag": cmd_raag,
    "tree-sigma": cmd_tree_sigma,
    "mfpr": cmd_mfpr,
    "audit": cmd_audit,
    "verify": cmd_verify,
}


def run(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    handler = HANDLERS[args.command]
    try:
        data = _load(args.data) if getattr(args, "data", None) else None
        data = _space_override(args, data)
        _log(f"running {args.command} (seed {args.seed})", stderr)
        code, payload = handler(args, data)
        _dump(payload, args.out, stdout)
        return code
    except (Cat0SigmaError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        diagnostic = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(diagnostic, sort_keys=True), file=stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
