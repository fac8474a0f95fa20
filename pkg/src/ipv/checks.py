"""Registered checks: each one re-derives a numbered result and reports PASS/FAIL.

A check returns a :class:`CheckResult`.  Group-level checks that quantify
over every group of some order consult the catalog's completeness report
and downgrade to CONDITIONAL when the catalog cannot vouch for that order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .catalog import CatalogManifest, completeness_report, load_catalog
from .errors import UnknownCheck
from .ledger import (alpha_vectors, candidate_orders, dimension_bound, factorize, n6_arithmetic_gate,
                     raw_dimension_bound)
from .ramification import RamType, alpha_table, enumerate_admissible_types, length_bound, types_for
from .search import enumerate_systems, genus2_closure, search_structures

PASS, FAIL, CONDITIONAL = "PASS", "FAIL", "CONDITIONAL"

# admissible genus-zero types with their alpha values, as tabulated in the literature
EXPECTED_TYPES: dict[tuple[int, ...], int] = {
    (2, 2, 2, 2, 2, 2): 2,
    (2, 2, 2, 2, 2): 4,
    (2, 2, 2, 3): 12, (2, 2, 2, 4): 8, (2, 2, 2, 6): 6, (2, 2, 3, 3): 6, (2, 2, 4, 4): 4, (3, 3, 3, 3): 3,
    (2, 3, 7): 84, (2, 3, 8): 48, (2, 4, 5): 40, (2, 3, 9): 36, (2, 3, 10): 30, (2, 3, 12): 24,
    (2, 4, 6): 24, (3, 3, 4): 24, (2, 5, 5): 20, (2, 3, 18): 18, (2, 4, 8): 16, (3, 3, 5): 15,
    (2, 4, 12): 12, (2, 6, 6): 12, (3, 3, 6): 12, (3, 4, 4): 12, (2, 5, 10): 10, (3, 3, 9): 9,
    (2, 8, 8): 8, (4, 4, 4): 8, (3, 6, 6): 6, (5, 5, 5): 5,
}

# alpha vectors as stated for each order, n -> order -> sorted vectors
STATED_THREE_PRIMES = {4: {60: [(12, 20, 30, 30)], 168: [(8, 84, 84, 84)]}}
STATED_TWO_PRIMES = {
    4: {24: [(8, 12, 12, 12)], 36: [(12, 12, 18, 18)], 40: [(8, 20, 20, 20)],
        48: [(8, 24, 24, 24), (16, 12, 24, 24)], 72: [(8, 36, 36, 36)], 80: [(16, 20, 40, 40)]},
    5: {48: [(16, 24, 24, 24, 24)], 80: [(16, 40, 40, 40, 40)]},
}
STATED_PRIME_POWER = {4: {16: [(8, 8, 8, 8)], 32: [(8, 16, 16, 16)]}, 5: {32: [(16, 16, 16, 16, 16)]}}


@dataclass
class CheckResult:
    check_id: str
    status: str
    details: dict = field(default_factory=dict)
    timing: float = 0.0

    def to_dict(self) -> dict:
        return {"check": self.check_id, "status": self.status, "details": self.details,
                "timing": {"seconds": round(self.timing, 3)}}


@dataclass
class CheckContext:
    n: int | None = None
    catalog: str | None = None
    threads: int = 1
    _manifest: CatalogManifest | None = None

    @property
    def manifest(self) -> CatalogManifest:
        if self._manifest is None:
            self._manifest = load_catalog(self.catalog, realize_groups=False)
        return self._manifest


REGISTRY: dict[str, Callable[[CheckContext], tuple[str, dict]]] = {}


def check(check_id: str):
    def wrap(fn):
        REGISTRY[check_id] = fn
        return fn
    return wrap


def run_check(check_id: str, n: int | None = None, catalog: str | None = None, threads: int = 1,
              manifest: CatalogManifest | None = None) -> CheckResult:
    fn = REGISTRY.get(check_id)
    if fn is None:
        raise UnknownCheck(f"unknown check {check_id!r}; known: {', '.join(sorted(REGISTRY))}")
    ctx = CheckContext(n, catalog, threads, manifest)
    t0 = time.perf_counter()
    status, details = fn(ctx)
    return CheckResult(check_id, status, details, time.perf_counter() - t0)


# -- tables ------------------------------------------------------------------

def verify_tables(inject_fault: bool = False) -> CheckResult:
    """Regenerate the admissible types and diff them against the expected table.

    ``inject_fault`` drops the divisibility requirement, a negative control
    that must produce FAIL.
    """
    t0 = time.perf_counter()
    types = enumerate_admissible_types(check_divisibility=not inject_fault)
    got = {A.orders: int(A.alpha) for A in types if A.alpha.denominator == 1}
    extra = sorted(set(got) - set(EXPECTED_TYPES))
    missing = sorted(set(EXPECTED_TYPES) - set(got))
    wrong = sorted(t for t in set(got) & set(EXPECTED_TYPES) if got[t] != EXPECTED_TYPES[t])
    by_length = {}
    for t in got:
        by_length[len(t)] = by_length.get(len(t), 0) + 1
    details = {
        "count": len(got),
        "by_length": {str(k): by_length[k] for k in sorted(by_length, reverse=True)},
        "alpha_max": max(got.values()),
        "alpha_values": sorted(set(got.values())),
        "length_bound": list(length_bound()),
        "extra": [list(t) for t in extra],
        "missing": [list(t) for t in missing],
        "wrong_alpha": [list(t) for t in wrong],
        "fault_injected": inject_fault,
    }
    ok = not extra and not missing and not wrong and len(got) == 30
    return CheckResult("cor-3.4", PASS if ok else FAIL, details, time.perf_counter() - t0)


@check("cor-3.4")
def _cor_3_4(ctx):
    r = verify_tables()
    return r.status, r.details


# -- arithmetic checks --------------------------------------------------------

def _vectors_by_order(n: int) -> dict[int, list[tuple[int, ...]]]:
    out: dict[int, list[tuple[int, ...]]] = {}
    for v in alpha_vectors(n):
        out.setdefault(v.order, []).append(tuple(sorted(v.alphas)))
    return {o: sorted(vs) for o, vs in out.items()}


def _compare(stated: dict, select: Callable[[int], bool]) -> dict:
    """Compare derived vectors against a stated list for the orders picked by ``select``."""
    report = {}
    for n in (4, 5):
        derived = {o: vs for o, vs in _vectors_by_order(n).items() if select(o)}
        want = {o: sorted(tuple(sorted(v)) for v in vs) for o, vs in stated.get(n, {}).items()}
        extra = {str(o): [list(v) for v in vs if v not in want.get(o, [])] for o, vs in derived.items()}
        missing = {str(o): [list(v) for v in vs if v not in derived.get(o, [])] for o, vs in want.items()}
        report[str(n)] = {
            "derived": {str(o): [list(v) for v in vs] for o, vs in sorted(derived.items())},
            "extra": {o: vs for o, vs in extra.items() if vs},
            "missing": {o: vs for o, vs in missing.items() if vs},
        }
    return report


def _comparison_status(report: dict) -> str:
    return PASS if all(not r["extra"] and not r["missing"] for r in report.values()) else FAIL


@check("cor-4.3")
def _cor_4_3(ctx):
    table = alpha_table()
    details = {
        "alpha_max": max(table),
        "raw_bound": raw_dimension_bound(3),
        "refined_bound": dimension_bound(3),
        "genus_floor_2_bound": dimension_bound(2),
        "two_pow_6_le_84": 2 ** 6 <= 84,
        "two_pow_7_gt_84": 2 ** 7 > 84,
        "alpha_64_in_table": 64 in table,
    }
    ok = (details["raw_bound"] == 7 and details["refined_bound"] == 6 and details["genus_floor_2_bound"] is None
          and not details["alpha_64_in_table"])
    return (PASS if ok else FAIL), details


@check("prop-4.4")
def _prop_4_4(ctx):
    gate = n6_arithmetic_gate()
    six = alpha_vectors(6)
    gate["alpha_vectors_n6_count"] = len(six)
    return (PASS if gate["passed"] and not six else FAIL), gate


@check("lemma-5.1")
def _lemma_5_1(ctx):
    bad = {}
    orders = {}
    for n in (4, 5):
        cands = candidate_orders(n)
        orders[str(n)] = sorted(cands)
        for o in cands:
            if not set(factorize(o)) <= {2, 3, 5, 7}:
                bad.setdefault(str(n), []).append(o)
    return (PASS if not bad else FAIL), {"orders": orders, "violations": bad}


@check("lemma-5.2")
def _lemma_5_2(ctx):
    three = {}
    bad = {}
    for n in (4, 5):
        for o in candidate_orders(n):
            k = len(factorize(o))
            if k > 3:
                bad.setdefault(str(n), []).append(o)
            if k == 3:
                three.setdefault(str(n), []).append(o)
    ok = not bad and three == {"4": [60, 168]}
    return (PASS if ok else FAIL), {"three_prime_orders": three, "violations": bad}


@check("lemma-5.3")
def _lemma_5_3(ctx):
    report = _compare(STATED_THREE_PRIMES, lambda o: len(factorize(o)) == 3)
    return _comparison_status(report), report


@check("lemma-5.4")
def _lemma_5_4(ctx):
    report = _compare(STATED_TWO_PRIMES, lambda o: len(factorize(o)) == 2)
    status = _comparison_status(report)
    if status == FAIL:
        report["note"] = ("the two primitive constraints admit vectors that the stated case analysis "
                          "omits; every such order is covered by the group-level search in thm-1.1")
    return status, report


@check("lemma-5.6")
def _lemma_5_6(ctx):
    report = _compare(STATED_PRIME_POWER, lambda o: len(factorize(o)) == 1)
    return _comparison_status(report), report


# -- group-level helpers ------------------------------------------------------

def _completeness(ctx: CheckContext, orders) -> dict:
    return completeness_report(ctx.manifest, orders)


def _status_with_completeness(ok: bool, comp: dict) -> str:
    if not ok:
        return FAIL
    return PASS if comp["status"] == "PASS" else CONDITIONAL


def _search_orders(ctx: CheckContext, orders, ns, floor: int = 3, only=None) -> dict:
    m = ctx.manifest
    per_order = {}
    witnesses = []
    for o in sorted(orders):
        names = m.names(o)
        if only is not None:
            names = [nm for nm in names if only(m.group(nm))]
        entry = {"groups": len(names), "searched": 0}
        for nm in names:
            G = m.group(nm)
            for n in ns:
                r = search_structures(G, n, floor, threads=ctx.threads, name=nm)
                entry["searched"] += 1
                if not r.empty:
                    witnesses.append({"group": nm, "n": n, "witness": r.witness.to_dict()})
        per_order[str(o)] = entry
    return {"orders": per_order, "witnesses": witnesses}


def _realizable(G, A: RamType) -> bool:
    return next(iter(enumerate_systems(G, A, dedup_conj=True)), None) is not None


@check("lemma-4.1")
def _lemma_4_1(ctx):
    m = ctx.manifest
    witnesses = []
    checked = []
    for nm in m.names():
        if m.defs[nm].order > 60:
            continue
        G = m.group(nm)
        if not G.is_cyclic():
            continue
        checked.append(nm)
        for n in (2, 3, 4, 5):
            r = search_structures(G, n, 2, name=nm)
            if not r.empty:
                witnesses.append({"group": nm, "n": n})
    return (PASS if not witnesses else FAIL), {"cyclic_groups": checked, "witnesses": witnesses}


@check("prop-4.2")
def _prop_4_2(ctx):
    orders = sorted(alpha_table())
    m = ctx.manifest
    comp = _completeness(ctx, orders)
    acting = []
    witnesses = []
    for o in orders:
        for nm in m.names(o):
            info = genus2_closure(m.group(nm))
            if info["acts_on_genus2"]:
                acting.append({"group": nm, "order": o, "types": info["genus2_types"],
                               "genus2_sigma_sets": info["genus2_sigma_sets"],
                               "genus2_intersection_size": info["genus2_intersection"]})
            if info["witness"] is not None:
                witnesses.append({"group": nm, **info["witness"]})
    details = {"orders": orders, "groups_acting_on_genus2": acting, "witnesses": witnesses,
               "completeness": comp["status"]}
    return _status_with_completeness(not witnesses, comp), details


@check("lemma-5.5")
def _lemma_5_5(ctx):
    m = ctx.manifest
    comp = _completeness(ctx, [80])
    types = [str(A) for A in alpha_table().get(40, [])]
    realized = []
    for nm in m.names(80):
        G = m.group(nm)
        for A in types_for(80, 40, G.spectrum):
            if _realizable(G, A):
                realized.append({"group": nm, "type": str(A)})
    details = {"alpha": 40, "types": types, "genus3_actions": realized, "completeness": comp["status"]}
    return _status_with_completeness(not realized, comp), details


@check("lemma-5.7")
def _lemma_5_7(ctx):
    orders = sorted(set(candidate_orders(4)) | set(candidate_orders(5)))
    comp = _completeness(ctx, orders)
    res = _search_orders(ctx, orders, (4, 5), only=lambda G: G.is_abelian())
    res["completeness"] = comp["status"]
    return _status_with_completeness(not res["witnesses"], comp), res


def _order_check(orders, ns):
    def run(ctx):
        comp = _completeness(ctx, orders)
        res = _search_orders(ctx, orders, ns)
        res["completeness"] = comp["status"]
        return _status_with_completeness(not res["witnesses"], comp), res
    return run


check("thm-5.8")(_order_check([60, 168], (4,)))
check("thm-5.9")(_order_check([36, 40, 72, 80], (4, 5)))
check("thm-5.10")(_order_check([16, 32], (4, 5)))
check("thm-5.11")(_order_check([24], (4,)))
check("thm-5.12")(_order_check([48], (4, 5)))


@check("thm-1.1")
def _thm_1_1(ctx):
    ns = [ctx.n] if ctx.n is not None else [4, 5]
    if any(n < 4 for n in ns):
        raise ValueError("thm-1.1 concerns n >= 4")
    details: dict = {"n": ns}
    status_ok = True
    # no genus-2 factor: justifies the genus floor 3 below
    g2_status, g2 = _prop_4_2(ctx)
    details["genus2_excluded"] = g2_status
    status_ok &= g2_status != FAIL
    all_orders = set()
    per_n = {}
    for n in ns:
        cands = candidate_orders(n)
        stated = set(STATED_THREE_PRIMES.get(n, {})) | set(STATED_TWO_PRIMES.get(n, {})) | \
            set(STATED_PRIME_POWER.get(n, {}))
        per_n[str(n)] = {"candidate_orders": sorted(cands),
                         "beyond_stated_lemmas": sorted(set(cands) - stated)}
        all_orders |= set(cands)
    details["ledger"] = per_n
    comp = _completeness(ctx, all_orders)
    details["completeness"] = {o: e["status"] for o, e in comp["orders"].items()}
    m = ctx.manifest
    witnesses = []
    searched = 0
    for n in ns:
        for o in sorted(candidate_orders(n)):
            for nm in m.names(o):
                r = search_structures(m.group(nm), n, 3, threads=ctx.threads, name=nm)
                searched += 1
                if not r.empty:
                    witnesses.append({"group": nm, "n": n, "witness": r.witness.to_dict()})
    details["searches"] = searched
    details["witnesses"] = witnesses
    status_ok &= not witnesses
    if not status_ok:
        return FAIL, details
    conditional = comp["status"] != "PASS" or g2_status == CONDITIONAL
    return (CONDITIONAL if conditional else PASS), details


def check_ids() -> list[str]:
    return sorted(REGISTRY)
