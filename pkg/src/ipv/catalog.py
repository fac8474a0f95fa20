"""Group catalog: parsing, realization, completeness, and an on-disk cache.

File format (UTF-8, line oriented, ``#`` starts a comment)::

    expect order 16 count 14
    group SG16_1 order 16
    tags smallgroup:16,1 structure:C16
    perm degree 16
    (0 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15)
    group Dic3 order 12
    tags alias-of:SG12_1 named
    pres
    < x, y | x^6 = 1, y^2 = x^3, y*x*y^-1 = x^-1 >

``tags`` is optional.  An entry tagged ``alias-of:<name>`` is a second name
for a group already in the catalog and does not count towards completeness.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

from .errors import (CacheCorrupt, DuplicateName, OrderExceeded, OrderMismatch, ParseError, UnknownGroup)
from .groups import HARD_MAX_ORDER, Perm, PermGroup, abelian_invariants, bits_to_indices, derived_subgroup
from .presentation import parse_presentation
from .todd_coxeter import group_from_presentation

log = logging.getLogger(__name__)

CACHE_MAGIC = "IPV1"

_HEADER_RE = re.compile(r"group\s+(\S+)\s+order\s+(\d+)$")
_EXPECT_RE = re.compile(r"expect\s+order\s+(\d+)\s+count\s+(\d+)$")
_PERM_RE = re.compile(r"perm\s+degree\s+(\d+)$")


@dataclass(frozen=True)
class GroupDef:
    name: str
    order: int
    kind: str  # "perm" or "pres"
    degree: int | None = None
    generators: tuple[str, ...] = ()
    presentation: str | None = None
    tags: tuple[str, ...] = ()
    line: int = 0

    @property
    def alias_of(self) -> str | None:
        for t in self.tags:
            if t.startswith("alias-of:"):
                return t.split(":", 1)[1]
        return None

    def source_text(self) -> str:
        if self.kind == "perm":
            return f"perm degree {self.degree}\n" + "\n".join(self.generators)
        return f"pres\n{self.presentation}"

    def source_hash(self) -> str:
        return hashlib.sha256(self.source_text().encode()).hexdigest()

    def to_text(self) -> str:
        lines = [f"group {self.name} order {self.order}"]
        if self.tags:
            lines.append("tags " + " ".join(self.tags))
        lines.append(self.source_text())
        return "\n".join(lines) + "\n"


@dataclass
class CatalogManifest:
    path: str
    expected: dict[int, int]
    defs: dict[str, GroupDef]
    groups: dict[str, PermGroup] = field(default_factory=dict)

    def group(self, name: str) -> PermGroup:
        if name not in self.defs:
            raise UnknownGroup(f"no group named {name!r} in {self.path}")
        G = self.groups.get(name)
        if G is None:
            G = self.groups[name] = cached_realize(self.defs[name])
        return G

    def names(self, order: int | None = None, aliases: bool = False) -> list[str]:
        return [n for n, d in self.defs.items()
                if (order is None or d.order == order) and (aliases or d.alias_of is None)]

    def orders(self) -> list[int]:
        return sorted({d.order for d in self.defs.values()})


# -- parsing -----------------------------------------------------------------

def parse_catalog(text: str, source: str = "<string>") -> tuple[dict[int, int], dict[str, GroupDef]]:
    expected: dict[int, int] = {}
    defs: dict[str, GroupDef] = {}
    current: dict | None = None

    def finish():
        nonlocal current
        if current is None:
            return
        c = current
        current = None
        if c["kind"] is None:
            raise ParseError(f"{source}: group {c['name']} has no source", c["line"], 1)
        if c["kind"] == "pres" and c["presentation"] is None:
            raise ParseError(f"{source}: group {c['name']} has an empty presentation", c["line"], 1)
        if c["kind"] == "perm" and not c["generators"]:
            c["generators"] = ["()"]
        if c["name"] in defs:
            raise DuplicateName(f"{source}:{c['line']}: duplicate group name {c['name']!r}")
        defs[c["name"]] = GroupDef(c["name"], c["order"], c["kind"], c["degree"], tuple(c["generators"]),
                                   c["presentation"], tuple(c["tags"]), c["line"])

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("expect"):
            m = _EXPECT_RE.match(line)
            if not m:
                raise ParseError(f"{source}: bad expect line", lineno, 1)
            order, count = int(m.group(1)), int(m.group(2))
            if expected.get(order, count) != count:
                raise ParseError(f"{source}: conflicting expect lines for order {order}", lineno, 1)
            expected[order] = count
            continue
        if line.startswith("group"):
            finish()
            m = _HEADER_RE.match(line)
            if not m:
                raise ParseError(f"{source}: bad group header", lineno, 1)
            current = {"name": m.group(1), "order": int(m.group(2)), "kind": None, "degree": None,
                       "generators": [], "presentation": None, "tags": [], "line": lineno}
            continue
        if current is None:
            raise ParseError(f"{source}: line outside a group block", lineno, 1)
        if line.startswith("tags") and current["kind"] is None:
            current["tags"].extend(line.split()[1:])
        elif line.startswith("perm") and current["kind"] is None:
            m = _PERM_RE.match(line)
            if not m:
                raise ParseError(f"{source}: bad perm line", lineno, 1)
            current["kind"] = "perm"
            current["degree"] = int(m.group(1))
        elif line == "pres" and current["kind"] is None:
            current["kind"] = "pres"
        elif current["kind"] == "perm":
            try:
                Perm.from_cycles(line, current["degree"])
            except Exception as exc:
                raise ParseError(f"{source}: {exc}", lineno, 1) from None
            current["generators"].append(line)
        elif current["kind"] == "pres":
            if current["presentation"] is not None:
                raise ParseError(f"{source}: a pres block takes exactly one presentation line", lineno, 1)
            try:
                parse_presentation(line)
            except ParseError as exc:
                raise ParseError(f"{source}: {exc}", lineno, exc.column) from None
            current["presentation"] = line
        else:
            raise ParseError(f"{source}: expected 'perm degree <d>', 'pres' or 'tags'", lineno, 1)
    finish()
    for d in defs.values():
        target = d.alias_of
        if target is not None and target not in defs:
            raise ParseError(f"{source}: {d.name} is an alias of unknown group {target!r}", d.line, 1)
    return expected, defs


def default_catalog_path() -> Path:
    return Path(str(resources.files("ipv") / "data" / "catalog.txt"))


def load_catalog(path: str | Path | None = None, realize_groups: bool = True,
                 orders: Iterable[int] | None = None, use_cache: bool = True) -> CatalogManifest:
    """Parse a catalog file and realize its groups (all, or those of ``orders``)."""
    path = Path(path) if path is not None else default_catalog_path()
    expected, defs = parse_catalog(path.read_text(encoding="utf-8"), str(path))
    m = CatalogManifest(str(path), expected, defs)
    if realize_groups:
        wanted = None if orders is None else set(orders)
        for name, d in defs.items():
            if wanted is None or d.order in wanted:
                m.groups[name] = cached_realize(d) if use_cache else realize(d)
    return m


# -- realization and cache ---------------------------------------------------

def realize(d: GroupDef) -> PermGroup:
    """Build the group of a definition and check its order."""
    try:
        if d.kind == "perm":
            gens = [Perm.from_cycles(g, d.degree) for g in d.generators]
            G = PermGroup(d.degree, gens, max_order=min(max(d.order, 1) + 1, HARD_MAX_ORDER), name=d.name)
        else:
            G = group_from_presentation(d.presentation, max_cosets=max(10000, 20 * d.order), name=d.name)
    except OrderExceeded:
        raise OrderMismatch(d.name, d.order, f"more than {d.order}") from None
    if G.order != d.order:
        raise OrderMismatch(d.name, d.order, G.order)
    return G


def cache_dir() -> Path:
    env = os.environ.get("IPV_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "ipv"


def _table_digest(G: PermGroup) -> str:
    h = hashlib.sha256()
    for a in range(G.order):
        h.update(",".join(str(G.mul(a, b)) for b in range(G.order)).encode())
        h.update(b";")
    return h.hexdigest()


def _cache_payload(d: GroupDef, G: PermGroup) -> dict:
    return {
        "hash": d.source_hash(),
        "name": d.name,
        "order": G.order,
        "degree": G.degree,
        "generators": [list(g) for g in G.generators],
        "presentation": d.presentation,
        "element_orders": G.element_orders,
        "classes": G.classes,
        "table_sha256": _table_digest(G),
    }


def _read_cache(file: Path, d: GroupDef) -> PermGroup:
    try:
        with open(file, encoding="utf-8") as fh:
            magic = fh.readline().rstrip("\n")
            if magic != CACHE_MAGIC:
                raise CacheCorrupt(f"{file}: bad magic {magic!r}")
            data = json.loads(fh.read())
    except (OSError, ValueError) as exc:
        raise CacheCorrupt(f"{file}: {exc}") from None
    if data.get("hash") != d.source_hash():
        raise CacheCorrupt(f"{file}: source hash mismatch")
    try:
        G = PermGroup(data["degree"], data["generators"], max_order=data["order"], name=d.name)
    except Exception as exc:
        raise CacheCorrupt(f"{file}: {exc}") from None
    if (G.order != data["order"] or G.element_orders != data["element_orders"]
            or G.classes != data["classes"] or _table_digest(G) != data["table_sha256"]):
        raise CacheCorrupt(f"{file}: stored tables disagree with the rebuilt group")
    if d.presentation is not None:
        G.presentation = parse_presentation(d.presentation)
    return G


def cache_file(d: GroupDef) -> Path:
    return cache_dir() / f"{d.source_hash()}.ipv"


def cached_realize(d: GroupDef) -> PermGroup:
    """Realize through the cache; corrupt or stale entries are rebuilt and rewritten."""
    file = cache_file(d)
    if file.exists():
        try:
            G = _read_cache(file, d)
            if G.order != d.order:
                raise OrderMismatch(d.name, d.order, G.order)
            return G
        except CacheCorrupt as exc:
            log.warning("rebuilding cache entry for %s: %s", d.name, exc)
    G = realize(d)
    try:
        file.parent.mkdir(parents=True, exist_ok=True)
        tmp = file.with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(CACHE_MAGIC + "\n")
            json.dump(_cache_payload(d, G), fh, separators=(",", ":"))
        os.replace(tmp, file)
    except OSError as exc:
        log.warning("could not write cache for %s: %s", d.name, exc)
    return G


_DEFAULT: CatalogManifest | None = None


def default_manifest() -> CatalogManifest:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = load_catalog(realize_groups=False)
    return _DEFAULT


def cached_group(name: str, manifest: CatalogManifest | None = None) -> PermGroup:
    """Realized group by catalog name, via the on-disk cache."""
    return (manifest or default_manifest()).group(name)


# -- invariants and completeness --------------------------------------------

def cheap_signature(G: PermGroup) -> tuple:
    """Element-order statistics, class sizes and abelianization."""
    return (G.order, tuple(G.order_statistics().items()), tuple(sorted(G.class_sizes())),
            abelian_invariants(G))


def class_signature(G: PermGroup) -> tuple:
    """Per class: order, size, prime power-map targets, and product statistics.

    For a class representative a, the multiset of (order b, order ab, ab == ba)
    over all b is a class function, so the sorted list is an isomorphism
    invariant.
    """
    eo = G.element_orders
    out = []
    for cls in G.classes:
        a = cls[0]
        o = eo[a]
        powers = tuple((p, eo[G.power(a, p)], len(G.classes[G.class_of[G.power(a, p)]]))
                       for p in (2, 3, 5, 7) if o % p == 0)
        stats = Counter((eo[b], eo[G.mul(a, b)], G.mul(a, b) == G.mul(b, a)) for b in range(G.order))
        out.append((o, len(cls), powers, tuple(sorted(stats.items()))))
    return tuple(sorted(out))


def pair_signature(G: PermGroup) -> tuple:
    """Per class: multiset of (order b, |<a, b>|) over all b."""
    eo = G.element_orders
    out = []
    for cls in G.classes:
        a = cls[0]
        stats = Counter((eo[b], G.closure_bits([a, b]).bit_count()) for b in range(G.order))
        out.append((eo[a], len(cls), tuple(sorted(stats.items()))))
    return tuple(sorted(out))


def full_signature(G: PermGroup) -> tuple:
    return cheap_signature(G), class_signature(G), pair_signature(G)


SIGNATURE_LEVELS = (("cheap", cheap_signature), ("classes", class_signature), ("pairs", pair_signature))


def distinguish(groups: dict[str, PermGroup]) -> tuple[list[list[str]], dict[str, int]]:
    """Split groups by successively stronger invariants.

    Each level is computed only for groups still colliding after the previous
    one.  Returns the remaining collision buckets and, per level, how many
    buckets were still unresolved after it.
    """
    buckets = [sorted(groups)]
    unresolved: dict[str, int] = {}
    keys: dict[str, tuple] = {n: () for n in groups}
    for level, fn in SIGNATURE_LEVELS:
        nxt = []
        for b in buckets:
            if len(b) < 2:
                continue
            split: dict[tuple, list[str]] = {}
            for n in b:
                keys[n] = keys[n] + (fn(groups[n]),)
                split.setdefault(keys[n], []).append(n)
            nxt.extend(v for v in split.values() if len(v) > 1)
        buckets = nxt
        unresolved[level] = len(buckets)
    return buckets, unresolved


def completeness_report(m: CatalogManifest, orders: Iterable[int]) -> dict:
    """Per-order PASS/WARN: entry count matches the declaration and entries are invariant-distinct."""
    report = {"status": "PASS", "orders": {}}
    for order in sorted(set(orders)):
        names = m.names(order)
        expected = m.expected.get(order)
        entry = {"expected": expected, "found": len(names)}
        groups = {n: m.group(n) for n in names}
        collisions, unresolved = distinguish(groups)
        entry["unresolved_after"] = unresolved
        entry["collisions"] = collisions
        problems = []
        if expected is None:
            problems.append("no expect line")
        elif expected != len(names):
            problems.append(f"expected {expected} entries, found {len(names)}")
        if collisions:
            problems.append("entries not pairwise distinguished")
        entry["status"] = "WARN" if problems else "PASS"
        entry["problems"] = problems
        if problems:
            report["status"] = "WARN"
        report["orders"][str(order)] = entry
    return report


def alias_report(m: CatalogManifest) -> list[dict]:
    """Check every alias against its target with the full invariant signature."""
    out = []
    for name, d in m.defs.items():
        target = d.alias_of
        if target is None:
            continue
        A, B = m.group(name), m.group(target)
        ok = A.order == B.order and full_signature(A) == full_signature(B)
        out.append({"name": name, "target": target, "status": "PASS" if ok else "FAIL"})
    return out


def subgroup_signature(G: PermGroup, bits: int) -> tuple:
    idx = bits_to_indices(bits)
    return len(idx), tuple(sorted(Counter(G.element_orders[i] for i in idx).items()))


def describe(G: PermGroup) -> dict:
    """Summary used by ``ipv inspect``."""
    return {
        "name": G.name,
        "order": G.order,
        "degree": G.degree,
        "spectrum": sorted(G.spectrum),
        "order_statistics": {str(k): v for k, v in G.order_statistics().items()},
        "class_sizes": G.class_sizes(),
        "class_orders": [G.element_orders[c[0]] for c in G.classes],
        "center": sorted(G.center),
        "center_order": len(G.center),
        "derived_order": len(derived_subgroup(G)),
        "abelian_invariants": list(abelian_invariants(G)),
    }
