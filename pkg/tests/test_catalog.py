import logging

import pytest

from ipv.catalog import (alias_report, cache_file, cached_realize, completeness_report, load_catalog,
                         parse_catalog, realize)
from ipv.errors import DuplicateName, OrderMismatch, ParseError, UnknownGroup

SMALL = """\
expect order 4 count 2
group C4 order 4
perm degree 4
(0 1 2 3)
group V4 order 4
tags abelian
perm degree 4
(0 1)(2 3)
(0 2)(1 3)
group Q8 order 8
pres
< x, y | x^4 = 1, y^2 = x^2, y*x*y^-1 = x^-1 >
group Klein order 4
tags alias-of:V4
pres
< a, b | a^2 = b^2 = [a,b] = 1 >
"""


def write(tmp_path, text, name="cat.txt"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_parse_small_catalog():
    expected, defs = parse_catalog(SMALL)
    assert expected == {4: 2}
    assert list(defs) == ["C4", "V4", "Q8", "Klein"]
    assert defs["Klein"].alias_of == "V4"
    assert defs["Q8"].kind == "pres"


@pytest.mark.parametrize("text", [
    "group A order x\nperm degree 2\n(0 1)\n",
    "perm degree 2\n",
    "group A order 2\nperm degree 2\n(0 5)\n",
    "group A order 2\n",
    "group A order 2\npres\n< x | x^2 = q >\n",
    "group A order 2\npres\n< x | x^2 >\n< x | x^2 >\n",
    "expect order 2 count 1\nexpect order 2 count 3\n",
    "group A order 2\ntags alias-of:B\nperm degree 2\n(0 1)\n",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_catalog(text)


def test_duplicate_name():
    with pytest.raises(DuplicateName):
        parse_catalog("group A order 2\nperm degree 2\n(0 1)\ngroup A order 2\nperm degree 2\n(0 1)\n")


def test_order_mismatch(tmp_path):
    _, defs = parse_catalog("group A order 3\nperm degree 2\n(0 1)\ngroup B order 2\nperm degree 3\n(0 1 2)\n")
    with pytest.raises(OrderMismatch):
        realize(defs["A"])
    with pytest.raises(OrderMismatch):
        realize(defs["B"])


def test_load_and_aliases(tmp_path):
    m = load_catalog(write(tmp_path, SMALL))
    assert m.groups["Q8"].order == 8
    assert m.names(4) == ["C4", "V4"]
    assert m.names(4, aliases=True) == ["C4", "V4", "Klein"]
    assert [a["status"] for a in alias_report(m)] == ["PASS"]
    with pytest.raises(UnknownGroup):
        m.group("nope")


def test_completeness_pass_and_warn(tmp_path):
    m = load_catalog(write(tmp_path, SMALL))
    assert completeness_report(m, [4])["status"] == "PASS"
    r = completeness_report(m, [4, 8])
    assert r["status"] == "WARN" and r["orders"]["8"]["problems"] == ["no expect line"]
    # removing one entry of a complete order is reported
    m2 = load_catalog(write(tmp_path, SMALL.replace("group C4 order 4\nperm degree 4\n(0 1 2 3)\n", ""), "b.txt"))
    r2 = completeness_report(m2, [4])
    assert r2["status"] == "WARN" and "expected 2 entries, found 1" in r2["orders"]["4"]["problems"]
    # two copies of the same group are caught as a collision
    dup = SMALL.replace("(0 1 2 3)", "(0 1)(2 3)\n(0 2)(1 3)")
    r3 = completeness_report(load_catalog(write(tmp_path, dup, "c.txt")), [4])
    assert r3["orders"]["4"]["collisions"] == [["C4", "V4"]]


def test_cache_round_trip_and_rebuild(tmp_path, monkeypatch, caplog):
    monkeypatch.setenv("IPV_CACHE_DIR", str(tmp_path / "cache"))
    _, defs = parse_catalog(SMALL)
    d = defs["Q8"]
    G1 = cached_realize(d)
    f = cache_file(d)
    assert f.exists() and f.read_text().startswith("IPV1\n")
    G2 = cached_realize(d)
    assert G2.elements == G1.elements and G2.classes == G1.classes and G2.table == G1.table
    for junk in ["garbage", "IPV1\n{not json", "IPV1\n" + f.read_text().split("\n", 1)[1].replace('"order":8', '"order":9')]:
        f.write_text(junk)
        with caplog.at_level(logging.WARNING):
            G3 = cached_realize(d)
        assert G3.elements == G1.elements
        assert "rebuilding cache entry" in caplog.text
        assert f.read_text().startswith("IPV1\n")
        caplog.clear()


def test_bundled_catalog(manifest):
    assert manifest.expected[60] == 13 and manifest.expected[168] == 57
    assert len(manifest.names(96)) == 231 and len(manifest.names(144)) == 197
    names60 = set(manifest.names(60, aliases=True))
    assert {"A5", "D30", "Z3:Dic5", "Z5:Dic3"} <= names60
    assert manifest.group("PSL(2,7)").order == 168


@pytest.mark.parametrize("alias,target", [("Dic6", "SG24_4"), ("Dic6-as-printed", "SG24_5"),
                                          ("GL(2,3)", "SG48_29"), ("H48", "SG48_33")])
def test_named_aliases(manifest, alias, target):
    assert manifest.defs[alias].alias_of == target


def test_bundled_completeness_small_orders(manifest):
    r = completeness_report(manifest, [8, 12, 16, 24])
    assert r["status"] == "PASS"
    assert r["orders"]["16"]["found"] == 14
