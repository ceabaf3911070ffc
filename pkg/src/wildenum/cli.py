"""Command-line front end.

Exit status: 0 on success (an empty or unsatisfiable answer is still a
success), 1 when ``oracle-check`` finds a disagreement, 2 for unreadable or
malformed input, 3 when an expansion or oracle size limit is hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import families, graph, horn, oracle, packings
from .rows import (
    ExpansionCapError,
    RowFamily,
    family_cardinality,
    family_to_json,
    format_family,
)

EXIT_OK, EXIT_DIFFER, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    path: str
    target: str | None = None
    fmt: str = "text"
    count_only: bool = False
    min_size: int | None = None
    lookahead: int = 1
    cap: int = 1 << 20
    cycle_filter: str = "any"
    hyperplanes: bool = False
    nearest: str | None = None


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _load_graph(path: str) -> graph.Graph:
    try:
        return graph.parse_graph(_read(path))
    except graph.GraphParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _vertex_legend(g: graph.Graph) -> list[str]:
    return [str(v) for v in g.labels]


def _edge_legend(g: graph.Graph) -> list[str]:
    return [g.edge_label(k) for k in range(g.m)]


# -- output helpers -------------------------------------------------------------------


def _emit_family(cfg: RunConfig, fam: RowFamily, legend: list[str], out, extra: dict | None = None):
    total = family_cardinality(fam)
    if cfg.fmt == "json":
        obj = json.loads(family_to_json(fam, legend))
        if cfg.count_only:
            obj.pop("rows")
        obj.update(extra or {})
        print(json.dumps(obj, indent=1), file=out)
    elif cfg.count_only:
        print(total, file=out)
    else:
        print("# positions: " + " ".join(legend), file=out)
        if fam.rows:
            print(format_family(fam).rstrip("\n"), file=out)
        print(f"# rows {len(fam)} total {total}", file=out)


def _emit_list(cfg: RunConfig, items: list[list[str]], key: str, out):
    if cfg.fmt == "json":
        obj = {"count": len(items)}
        if not cfg.count_only:
            obj[key] = items
        print(json.dumps(obj, indent=1), file=out)
    elif cfg.count_only:
        print(len(items), file=out)
    else:
        for it in items:
            print(" ".join(it), file=out)


def _min_size(cfg: RunConfig, width: int, constraints: list | None, fam_thunk) -> RowFamily:
    """Apply ``--min-size``: through the look-ahead engine when the constraints
    have a Horn encoding, otherwise by filtering the finished family."""
    if cfg.min_size is None:
        return fam_thunk()
    if constraints is not None:
        clauses = [c.clauses() for c in constraints]
        if all(cl is not None for cl in clauses):
            cnf = horn.HornCNF(width, tuple(x for cl in clauses for x in cl))
            return horn.enumerate_min_ones(cnf, cfg.min_size, cfg.lookahead)
    return horn.filter_min_ones(fam_thunk(), cfg.min_size)


# -- commands ---------------------------------------------------------------------


def _cmd_paths(cfg: RunConfig, out) -> int:
    g = _load_graph(cfg.path)
    gen = graph.all_chordless_paths if cfg.command == "paths" else graph.all_geodesics
    items = [[str(g.labels[v]) for v in p] for p in gen(g)]
    _emit_list(cfg, items, "paths", out)
    return EXIT_OK


def _cmd_cycles(cfg: RunConfig, out) -> int:
    g = _load_graph(cfg.path)
    forbidden = families.Forbidden(cfg.cycle_filter)
    keep = set(families.cycle_sets(g, forbidden))
    items = [
        [str(g.labels[v]) for v in c.vertices]
        for c in graph.all_chordless_cycles(g)
        if frozenset(c.vertices) in keep
    ]
    _emit_list(cfg, items, "cycles", out)
    return EXIT_OK


def _cmd_enumerate(cfg: RunConfig, out) -> int:
    g = _load_graph(cfg.path)
    kind = families.FamilyKind(cfg.target)
    cons = families.family_constraints(g, kind)
    fam = _min_size(cfg, g.n, cons, lambda: horn.run(g.n, cons))
    _emit_family(cfg, fam, _vertex_legend(g), out)
    return EXIT_OK


def _packing_constraints(g: graph.Graph, which: str) -> list:
    if which == "clique":
        return packings.clipac_constraint_list(g)
    if which == "connected":
        return packings.connpac_constraint_list(g)
    raise InputError(f"unknown packing {which!r}; expected clique or connected")


def _cmd_pack(cfg: RunConfig, out) -> int:
    g = _load_graph(cfg.path)
    cons = _packing_constraints(g, cfg.target)
    fam = _min_size(cfg, g.m, cons, lambda: horn.run(g.m, cons))
    _emit_family(cfg, fam, _edge_legend(g), out)
    return EXIT_OK


def _cmd_flats(cfg: RunConfig, out) -> int:
    g = _load_graph(cfg.path)
    if cfg.nearest is not None:
        try:
            p0 = graph.parse_partition(g, cfg.nearest)
        except ValueError as exc:
            raise InputError(f"bad partition: {exc}") from None
        try:
            p = packings.nearest_coarser_connpac(g, p0)
        except packings.NoUniqueCoarseningError as exc:
            print(f"# {exc}", file=out)
            return EXIT_OK
        text = graph.format_partition(g, p)
        print(json.dumps({"nearest": text}) if cfg.fmt == "json" else text, file=out)
        return EXIT_OK
    if cfg.hyperplanes:
        hps = packings.vertex_hyperplanes(g)
        items = [[graph.format_partition(g, p)] for p in hps]
        _emit_list(cfg, items, "hyperplanes", out)
        return EXIT_OK
    cfg.target = "connected"
    return _cmd_pack(cfg, out)


def _cmd_horn(cfg: RunConfig, out) -> int:
    try:
        cnf = horn.parse_horn(_read(cfg.path))
    except horn.HornParseError as exc:
        raise InputError(f"{cfg.path}: {exc}") from None
    legend = [str(i) for i in range(1, cnf.width + 1)]
    if not horn.horn_satisfiable(cnf):
        if cfg.fmt == "json":
            print(json.dumps({"satisfiable": False, "width": cnf.width, "legend": legend,
                              "row_count": 0, "total": 0}), file=out)
        else:
            print("0" if cfg.count_only else "# unsatisfiable", file=out)
        return EXIT_OK
    if cfg.min_size is not None:
        fam = horn.enumerate_min_ones(cnf, cfg.min_size, cfg.lookahead)
    else:
        fam = horn.enumerate_horn_models(cnf).family
    _emit_family(cfg, fam, legend, out, {"satisfiable": True})
    return EXIT_OK


def _cmd_oracle_check(cfg: RunConfig, out) -> int:
    g = _load_graph(cfg.path)
    token = cfg.target
    if token in ("clique", "clipac", "connected-pack", "connpac"):
        which = "clique" if token in ("clique", "clipac") else "connected"
        fam = horn.run(g.m, _packing_constraints(g, which))
        pred = oracle.Predicate.CLIPAC if which == "clique" else oracle.Predicate.CONNPAC
        ref = oracle.oracle_edge_sets(g, pred)
    else:
        kind = families.FamilyKind(token)
        fam = families.enumerate_family(g, kind)
        ref = oracle.oracle_subsets(g, oracle.Predicate(kind.value))
    cmp = oracle.compare_family(fam, ref, cfg.cap)
    total = family_cardinality(fam)
    if cfg.fmt == "json":
        print(json.dumps({"equal": cmp.equal, "engine": total, "oracle": len(ref),
                          "report": cmp.report()}), file=out)
    else:
        verdict = "agree" if cmp.equal else "DIFFER"
        print(f"{verdict} engine={total} oracle={len(ref)} {cmp.report()}", file=out)
    return EXIT_OK if cmp.equal else EXIT_DIFFER


_COMMANDS = {
    "paths": _cmd_paths,
    "geodesics": _cmd_paths,
    "cycles": _cmd_cycles,
    "enumerate": _cmd_enumerate,
    "pack": _cmd_pack,
    "flats": _cmd_flats,
    "horn": _cmd_horn,
    "oracle-check": _cmd_oracle_check,
}


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        return _COMMANDS[cfg.command](cfg, out)
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except (ExpansionCapError, oracle.OracleSizeError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_CAP
    except (packings.DisconnectedGraphError, packings.InvalidPackingError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT


# -- argument parsing ---------------------------------------------------------------


def _common(p: argparse.ArgumentParser):
    p.add_argument("--count-only", action="store_true", help="print only the number of members")
    p.add_argument("--min-size", type=int, default=None, metavar="K",
                   help="keep members with at least K elements")
    p.add_argument("--lookahead", type=int, default=1, metavar="T",
                   help="look-ahead depth used with --min-size (default 1)")
    p.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    p.add_argument("--cap", type=int, default=1 << 20, help="expansion limit for oracle checks")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wildenum", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    for name, helptext in (("paths", "list chordless paths"), ("geodesics", "list geodesics")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("graph")
        _common(p)

    p = sub.add_parser("cycles", help="list chordless cycles")
    p.add_argument("graph")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--long", dest="cycle_filter", action="store_const", const="long")
    grp.add_argument("--odd", dest="cycle_filter", action="store_const", const="odd")
    grp.add_argument("--triangles", dest="cycle_filter", action="store_const", const="triangle")
    p.set_defaults(cycle_filter="any")
    _common(p)

    p = sub.add_parser("enumerate", help="enumerate an induced-subgraph family")
    p.add_argument("family", choices=[k.value for k in families.FamilyKind])
    p.add_argument("graph")
    _common(p)

    p = sub.add_parser("pack", help="enumerate clique or connected packings")
    p.add_argument("packing", choices=("clique", "connected"))
    p.add_argument("graph")
    _common(p)

    p = sub.add_parser("flats", help="flats of the graphic matroid")
    p.add_argument("graph")
    p.add_argument("--hyperplanes", action="store_true", help="list the vertex hyperplanes")
    p.add_argument("--nearest", metavar="PARTITION",
                   help="finest connected packing coarser than PARTITION, e.g. 1,3|2|4")
    _common(p)

    p = sub.add_parser("horn", help="enumerate models of a Horn CNF file")
    p.add_argument("cnf")
    _common(p)

    p = sub.add_parser("oracle-check", help="compare an enumerator with brute force")
    p.add_argument("target", help="family token, or clique / connpac for packings")
    p.add_argument("graph")
    _common(p)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    path = getattr(ns, "graph", None) or getattr(ns, "cnf", None)
    target = getattr(ns, "family", None) or getattr(ns, "packing", None) or getattr(ns, "target", None)
    return RunConfig(
        command=ns.command,
        path=path,
        target=target,
        fmt=ns.fmt,
        count_only=ns.count_only,
        min_size=ns.min_size,
        lookahead=ns.lookahead,
        cap=ns.cap,
        cycle_filter=getattr(ns, "cycle_filter", "any"),
        hyperplanes=getattr(ns, "hyperplanes", False),
        nearest=getattr(ns, "nearest", None),
    )


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    if ns.lookahead < 1 or (ns.min_size is not None and ns.min_size < 0):
        print("error: need --lookahead >= 1 and --min-size >= 0", file=sys.stderr)
        return EXIT_INPUT
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
