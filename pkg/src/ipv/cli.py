"""Command line interface: ``ipv <subcommand> ...``.

Every command prints JSON lines with a fixed key order.  Wall-clock data is
kept under a separate ``timing`` key so that the rest of a report is
byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from .catalog import alias_report, completeness_report, describe, load_catalog
from .checks import CONDITIONAL, PASS, check_ids, run_check, verify_tables
from .errors import IPVError, UnknownGroup
from .search import default_threads, search_structures
from .todd_coxeter import DEFAULT_MAX_COSETS, group_from_presentation, todd_coxeter

EXIT_OK, EXIT_FOUND, EXIT_ERROR, EXIT_CONDITIONAL = 0, 1, 2, 3


def _emit(obj: dict, out=None) -> None:
    line = json.dumps(obj, separators=(", ", ": "))
    (out or sys.stdout).write(line + "\n")


def _status_code(status: str) -> int:
    return {PASS: EXIT_OK, CONDITIONAL: EXIT_CONDITIONAL}.get(status, EXIT_FOUND)


def cmd_verify_tables(args) -> int:
    r = verify_tables(inject_fault=args.inject_fault)
    _emit(r.to_dict())
    return _status_code(r.status)


def cmd_verify(args) -> int:
    ids = check_ids() if args.check_id == "all" else [args.check_id]
    worst = EXIT_OK
    manifest = None
    for cid in ids:
        if manifest is None:
            manifest = load_catalog(args.catalog, realize_groups=False)
        r = run_check(cid, n=args.n, catalog=args.catalog, threads=args.threads, manifest=manifest)
        _emit(r.to_dict())
        code = _status_code(r.status)
        if code == EXIT_FOUND or (code == EXIT_CONDITIONAL and worst == EXIT_OK):
            worst = code
    return worst


def cmd_search(args) -> int:
    m = load_catalog(args.catalog, realize_groups=False)
    G = m.group(args.group)
    t0 = time.perf_counter()
    r = search_structures(G, args.n, args.genus_floor, threads=args.threads, dedup_conj=args.dedup_conj,
                          name=args.group)
    obj = {"kind": "search", **r.to_dict(), "timing": {"seconds": round(time.perf_counter() - t0, 3)}}
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            _emit(obj, fh)
    _emit(obj)
    return EXIT_OK if r.empty else EXIT_FOUND


def cmd_catalog_check(args) -> int:
    t0 = time.perf_counter()
    m = load_catalog(args.path)
    comp = completeness_report(m, m.expected)
    aliases = alias_report(m)
    for order, entry in comp["orders"].items():
        _emit({"kind": "completeness", "order": int(order), "status": entry["status"],
               "expected": entry["expected"], "found": entry["found"], "problems": entry["problems"],
               "unresolved_after": entry["unresolved_after"]})
    bad_alias = [a for a in aliases if a["status"] != "PASS"]
    status = "PASS" if comp["status"] == "PASS" and not bad_alias else "WARN"
    _emit({"kind": "catalog", "path": str(args.path), "status": status, "groups": len(m.defs),
           "aliases": len(aliases), "alias_failures": bad_alias,
           "timing": {"seconds": round(time.perf_counter() - t0, 3)}})
    return EXIT_OK if status == "PASS" else EXIT_FOUND


def cmd_toddcoxeter(args) -> int:
    text = " ".join(line.split("#", 1)[0] for line in Path(args.file).read_text(encoding="utf-8").splitlines())
    t0 = time.perf_counter()
    T = todd_coxeter(text, args.max_cosets)
    obj = {"kind": "toddcoxeter", "generators": list(T.generator_names), "order": T.live,
           "closed": T.closed, "cosets_defined": T.defined}
    if T.closed:
        G = group_from_presentation(text, args.max_cosets)
        obj["regular_order"] = G.order
        obj["agrees"] = G.order == T.live
    obj["timing"] = {"seconds": round(time.perf_counter() - t0, 3)}
    _emit(obj)
    return EXIT_OK if T.closed and obj.get("agrees") else EXIT_FOUND


def cmd_inspect(args) -> int:
    m = load_catalog(args.catalog, realize_groups=False)
    G = m.group(args.group)
    d = m.defs[args.group]
    _emit({"kind": "inspect", **describe(G), "tags": list(d.tags), "source": d.kind})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ipv", description="Exact checks for free unmixed quotients of curve products.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-tables", help="regenerate the admissible ramification types")
    s.add_argument("--inject-fault", action="store_true", help="negative control: drop the divisibility test")
    s.set_defaults(func=cmd_verify_tables)

    s = sub.add_parser("verify", help="run a registered check (or 'all')")
    s.add_argument("check_id")
    s.add_argument("--n", type=int)
    s.add_argument("--catalog")
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="search one catalog group for a free structure")
    s.add_argument("group")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--genus-floor", type=int, choices=(2, 3), default=3)
    s.add_argument("--dedup-conj", action="store_true", help="restrict the first entry to class representatives")
    s.add_argument("--threads", type=int, default=default_threads())
    s.add_argument("--out")
    s.add_argument("--catalog")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("catalog", help="catalog maintenance")
    csub = s.add_subparsers(dest="catalog_command", required=True)
    c = csub.add_parser("check", help="load, realize and check completeness of a catalog file")
    c.add_argument("path")
    c.set_defaults(func=cmd_catalog_check)

    s = sub.add_parser("toddcoxeter", help="enumerate cosets of a presentation file")
    s.add_argument("file")
    s.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    s.set_defaults(func=cmd_toddcoxeter)

    s = sub.add_parser("inspect", help="print basic data of a catalog group")
    s.add_argument("group")
    s.add_argument("--catalog")
    s.set_defaults(func=cmd_inspect)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (IPVError, OSError, ValueError) as exc:
        kind = "unknown-group" if isinstance(exc, UnknownGroup) else type(exc).__name__
        _emit({"kind": "error", "error": kind, "message": str(exc)}, sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
