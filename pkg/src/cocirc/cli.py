"""Command-line front end.

Exit codes: 0 success, 2 domain error (non-concave input, no valid
deformation, ...), 3 malformed input, 64 unknown subcommand.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import constructions, serialize
from .deform import deform
from .duality import grid_to_honeycomb, honeycomb_to_grid
from .errors import CocircError, SchemaError
from .extremality import is_vertex, vertex_degrees_of_freedom
from .grid import (
    check_cocirculation,
    integer_edge_sets,
    is_concave,
    random_concave,
    three_side_grid,
    tiling_of,
    validate_grid,
)
from .integralize import Potential, integralize, potential
from .paths import find_legal_path
from .serialize import dumps, frac_to_str

COMMANDS = (
    "validate",
    "dualize",
    "integralize",
    "legal-path",
    "deform",
    "vertex-check",
    "gen",
    "selftest",
)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_grid(path: str, check: bool = True):
    g = serialize.grid_from_json(serialize.loads(_read(path)))
    if check:
        validate_grid(g)
    return g


def _load_cocirc(path: str):
    return serialize.cocirc_from_json(serialize.loads(_read(path)))


def _pot_json(p: Potential) -> dict:
    return {
        "nonintegral_boundary": p.nonintegral_boundary,
        "nonintegral_excess": p.nonintegral_excess,
        "integral_incident": p.integral_incident,
        "value": p.value,
    }


def _trace_lines(trace) -> str:
    rows = []
    for s in trace:
        rows.append(
            dumps(
                {
                    "eps": frac_to_str(s.eps),
                    "kinds": list(s.kinds),
                    "cycle": s.cycle,
                    "before": _pot_json(s.before),
                    "after": _pot_json(s.after),
                }
            )
        )
    return "".join(rows)


def _cmd_validate(args) -> int:
    g = _load_grid(args.grid)
    out = {"ok": True, "triangles": len(g.triangles), "size": g.size}
    if args.infile:
        h = _load_cocirc(args.infile)
        check_cocirculation(g, h)
        out["cocirculation"] = True
        out["concave"] = is_concave(g, h)
    _write(args.out, dumps(out))
    return 0


def _cmd_dualize(args) -> int:
    if args.to == "honeycomb":
        g = _load_grid(args.grid)
        h = _load_cocirc(args.infile)
        hc = grid_to_honeycomb(g, h)
        _write(args.out, dumps(serialize.honeycomb_to_json(hc)))
    else:
        hc = serialize.honeycomb_from_json(serialize.loads(_read(args.infile)))
        g, h = honeycomb_to_grid(hc)
        _write(args.grid, dumps(serialize.grid_to_json(g)))
        _write(args.out, dumps(serialize.cocirc_to_json(h)))
    return 0


def _cmd_integralize(args) -> int:
    g = _load_grid(args.grid)
    h = _load_cocirc(args.infile)
    out, trace = integralize(g, h)
    _write(args.out, dumps(serialize.cocirc_to_json(out)))
    if args.trace:
        _write(args.trace, _trace_lines(trace))
    return 0


def _cmd_legal_path(args) -> int:
    hc = serialize.honeycomb_from_json(serialize.loads(_read(args.infile)))
    p = find_legal_path(hc)
    doc = {"cycle": p.is_cycle, "edges": [serialize.hedge_to_json(e) for e in p.edges]}
    _write(args.out, dumps(doc))
    return 0


def _cmd_deform(args) -> int:
    hc = serialize.honeycomb_from_json(serialize.loads(_read(args.infile)))
    p = find_legal_path(hc)
    before = potential(hc)
    h2, ev = deform(hc, p, args.direction)
    after = potential(h2)
    _write(args.out, dumps(serialize.honeycomb_to_json(h2)))
    if args.trace:
        line = dumps(
            {
                "eps": frac_to_str(ev.eps),
                "kinds": list(ev.kinds),
                "cycle": p.is_cycle,
                "before": _pot_json(before),
                "after": _pot_json(after),
            }
        )
        _write(args.trace, line)
    return 0


def _cmd_vertex_check(args) -> int:
    g = _load_grid(args.grid)
    h = _load_cocirc(args.infile)
    fixed = serialize.edge_list_from_json(serialize.loads(_read(args.fixed)))
    dof = vertex_degrees_of_freedom(g, h, fixed)
    _write(args.out, dumps({"vertex": dof == 0, "degrees_of_freedom": dof}))
    return 0


def _cmd_gen(args) -> int:
    if args.kind == "dualgrid":
        hc = constructions.dual_grid_honeycomb(args.n)
        _write(args.out, dumps(serialize.honeycomb_to_json(hc)))
        return 0
    if args.kind == "hexagon":
        g, h = constructions.hexagon_instance(args.k)
        _write(args.grid, dumps(serialize.grid_to_json(g)))
        _write(args.out, dumps(serialize.cocirc_to_json(h)))
        return 0
    if args.kind == "fractional-vertex":
        g, h, fixed = constructions.fractional_vertex_instance(args.k)
        _write(args.grid, dumps(serialize.grid_to_json(g)))
        _write(args.out, dumps(serialize.cocirc_to_json(h)))
        if args.fixed:
            _write(args.fixed, dumps(serialize.edge_list_to_json(fixed)))
        return 0
    if args.kind == "counterexample":
        g, h = constructions.counterexample_instance()
        _write(args.grid, dumps(serialize.grid_to_json(g)))
        _write(args.out, dumps(serialize.cocirc_to_json(h)))
        return 0
    g = three_side_grid(args.n)
    h = random_concave(g, seed=args.seed)
    _write(args.grid, dumps(serialize.grid_to_json(g)))
    _write(args.out, dumps(serialize.cocirc_to_json(h)))
    return 0


def _selftest_cases():
    def three_vertex_sample():
        hc = constructions.sample_honeycomb()
        assert len(hc.vertices) == 3 and len(hc.edges) == 10
        assert len(hc.boundary) == 7
        g, h = honeycomb_to_grid(hc)
        assert grid_to_honeycomb(g, h) == hc

    def hexagon_stripes():
        g, h = constructions.hexagon_instance(3)
        assert h[(1, 0, 1)] == h[(2, 0, 1)] == h[(3, 0, 1)] == Fraction(-1, 3)
        assert h[(1, -1, 2)] == Fraction(1, 3) and h[(1, -3, 2)] == Fraction(7, 3)
        assert h[(0, -1, 1)] == Fraction(2, 3)
        tiles = tiling_of(g, h)
        assert len(tiles) == 17

    def rigid_half_integer():
        g, h = constructions.counterexample_instance()
        assert is_concave(g, h)
        fixed = [e for e in sorted(g.edges) if h[e].denominator == 1]
        assert is_vertex(g, h, fixed)
        out, _ = integralize(g, h)
        o_set, i_set = integer_edge_sets(g, h)
        assert all(out[e] == h[e] for e in o_set | i_set)
        assert any(out[e] != h[e] for e in fixed)

    return [
        ("three-vertex honeycomb round trip", three_vertex_sample),
        ("hexagon k=3 stripe values", hexagon_stripes),
        ("rigid half-integer instance", rigid_half_integer),
    ]


def _cmd_selftest(args) -> int:
    failed = 0
    for name, fn in _selftest_cases():
        try:
            fn()
            status = "PASS"
        except Exception as ex:  # noqa: BLE001 - report, do not crash
            failed += 1
            status = f"FAIL ({type(ex).__name__}: {ex})"
        print(f"{status:4}  {name}")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cocirc", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, *, grid=False, infile=False, fixed=False, out=True, trace=False):
        if grid:
            p.add_argument("--grid", required=True, help="grid JSON path or -")
        if infile:
            p.add_argument("--in", dest="infile", required=True, help="input JSON path or -")
        if fixed:
            p.add_argument("--fixed", required=True, help="pinned edge list JSON")
        if out:
            p.add_argument("--out", default="-", help="output path (default stdout)")
        if trace:
            p.add_argument("--trace", default=None, help="JSONL trace output path")

    p = sub.add_parser("validate", help="check a grid (and optionally a cocirculation)")
    p.add_argument("--grid", required=True)
    p.add_argument("--in", dest="infile", default=None)
    p.add_argument("--out", default="-")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("dualize", help="convert between grid+cocirculation and honeycomb")
    p.add_argument("--to", choices=("honeycomb", "grid"), required=True)
    p.add_argument("--grid", required=True, help="grid path (input or output by direction)")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(fn=_cmd_dualize)

    p = sub.add_parser("integralize", help="round a concave cocirculation to an integer one")
    common(p, grid=True, infile=True, trace=True)
    p.set_defaults(fn=_cmd_integralize)

    p = sub.add_parser("legal-path", help="emit one legal path of a honeycomb")
    common(p, infile=True)
    p.set_defaults(fn=_cmd_legal_path)

    p = sub.add_parser("deform", help="apply one stopping deformation to a honeycomb")
    common(p, infile=True, trace=True)
    p.add_argument("--direction", choices=("right", "left"), default="right")
    p.set_defaults(fn=_cmd_deform)

    p = sub.add_parser("vertex-check", help="test polytope vertexhood under pinned edges")
    common(p, grid=True, infile=True, fixed=True)
    p.set_defaults(fn=_cmd_vertex_check)

    p = sub.add_parser("gen", help="generate a named instance")
    p.add_argument(
        "--kind",
        choices=("dualgrid", "hexagon", "fractional-vertex", "counterexample", "random-concave"),
        required=True,
    )
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", default="-", help="grid output path where applicable")
    p.add_argument("--fixed", default=None, help="pinned-edges output (fractional-vertex)")
    p.add_argument("--out", default="-")
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("selftest", help="run the pinned fixtures and print a table")
    p.set_defaults(fn=_cmd_selftest)
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and not argv[0].startswith("-") and argv[0] not in COMMANDS:
        print(f"unknown subcommand: {argv[0]}", file=sys.stderr)
        return 64
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except SchemaError as ex:
        _write("-", dumps({"error": str(ex), "kind": "schema"}))
        return 3
    except OSError as ex:
        _write("-", dumps({"error": str(ex), "kind": "io"}))
        return 3
    except CocircError as ex:
        _write("-", dumps({"error": str(ex), "kind": type(ex).__name__}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
