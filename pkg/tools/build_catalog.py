"""Assemble src/ipv/data/catalog.txt from a small-groups export plus named groups.

Usage:
    python tools/build_catalog.py /tmp/smallgroups.txt > src/ipv/data/catalog.txt

The export is produced by tools/export_smallgroups.g (GAP, run once offline).
Named groups are appended as alias entries; each alias is checked against its
target with the full invariant signature before it is written.
"""

from __future__ import annotations

import sys

from ipv.catalog import full_signature, parse_catalog, realize
from ipv.todd_coxeter import group_from_presentation

# name, target, presentation (None: copy the target's permutation generators), note
NAMED = [
    ("Z2xZ2", "SG4_2", None, "Klein four-group"),
    ("D3", "SG6_1", "< x, y | x^3 = y^2 = 1, y*x*y = x^-1 >", "dihedral of order 6"),
    ("Q8", "SG8_4", "< x, y | x^4 = 1, y^2 = x^2, y*x*y^-1 = x^-1 >", "quaternion"),
    ("D4", "SG8_3", "< x, y | x^4 = y^2 = 1, y*x*y = x^-1 >", "dihedral of order 8"),
    ("Z2xZ6", "SG12_5", "< x, y | x^2 = y^6 = [x,y] = 1 >", ""),
    ("D6", "SG12_4", "< x, y | x^6 = y^2 = 1, y*x*y = x^-1 >", "dihedral of order 12"),
    ("D_{4,3,-1}", "SG12_1", "< x, y | x^4 = y^3 = 1, x*y*x^-1 = y^-1 >", "isomorphic to Dic3"),
    ("Dic3", "SG12_1", "< x, y | x^6 = 1, y^2 = x^3, y*x*y^-1 = x^-1 >", ""),
    ("A4", "SG12_3", None, ""),
    ("D_{2,8,3}", "SG16_8", "< x, y | x^2 = y^8 = 1, x*y*x^-1 = y^3 >", "quasidihedral"),
    ("D_{2,8,5}", "SG16_6", "< x, y | x^2 = y^8 = 1, x*y*x^-1 = y^5 >", ""),
    ("D_{4,4,-1}", "SG16_4", "< x, y | x^4 = y^4 = 1, x*y*x^-1 = y^-1 >", ""),
    ("Z4xZ4", "SG16_2", "< x, y | x^4 = y^4 = [x,y] = 1 >", ""),
    ("Dic5", "SG20_1", "< x, y | x^10 = 1, y^2 = x^5, y*x*y^-1 = x^-1 >", ""),
    ("Z5:Z4", "SG20_3", "< a, b | a^5 = b^4 = 1, b*a*b^-1 = a^3 >", "Frobenius group of order 20"),
    ("D_{2,12,5}", "SG24_5", "< x, y | x^2 = y^12 = 1, x*y*x^-1 = y^5 >", ""),
    ("Dic6", "SG24_4", "< x, y | x^12 = 1, y^2 = x^6, y*x*y^-1 = x^-1 >", "dicyclic of order 24"),
    ("Dic6-as-printed", "SG24_5", "< x, y | x^12 = 1, y^2 = x^6, y*x*y = x^-1 >",
     "printed relation y*x*y = x^-1 gives Z4 x S3"),
    ("Z3:Z8", "SG24_1", "< x, y | x^3 = y^8 = 1, y*x*y^-1 = x^-1 >", ""),
    ("D12", "SG24_6", "< x, y | x^12 = y^2 = 1, y*x*y = x^-1 >", "dihedral of order 24"),
    ("Z3:D4", "SG24_8",
     "< x, y, z, w | x^2 = y^2 = z^2 = w^3 = [x,y] = [y,z] = [y,w] = [z,w] = 1, z^x = z*y, w^x = w^2 >", ""),
    ("Z3:D4(b)", "SG24_8", "< x, y, z | x^3 = y^4 = z^2 = 1, y*x*y^-1 = z*x*z = x^-1, z*y*z = y^-1 >",
     "second presentation of Z3:D4"),
    ("SL(2,3)", "SG24_3", None, ""),
    ("S4", "SG24_12", None, ""),
    ("Z2|x(Z2xZ8)", "SG32_9", "< x, y, z | x^2 = y^2 = z^8 = [y,z] = [x,y] = 1, x*z*x = y*z^3 >", ""),
    ("Z2|xD_{2,8,5}", "SG32_11",
     "< x, y, z | x^2 = y^2 = z^8 = 1, y*z*y = z^5, x*y*x = y*z^4, x*z*x = y*z^3 >", ""),
    ("Dic10", "SG40_4", "< a, b | a^20 = 1, b^2 = a^10, b*a*b^-1 = a^-1 >", ""),
    ("Z5:D4", "SG40_8", "< a, b, c | a^5 = b^4 = c^2 = 1, b*a*b^-1 = c*a*c = a^-1, c*b*c = b^-1 >", ""),
    ("Z5:Z8", "SG40_3", "< a, b | a^5 = b^8 = 1, b*a*b^-1 = a^3 >", ""),
    ("Z5:2Z8", "SG40_1", "< a, b | a^5 = b^8 = 1, b*a*b^-1 = a^-1 >", ""),
    ("Z5:(Z2xZ4)", "SG40_12",
     "< a, b, c | a^2 = b^5 = c^4 = 1, a*b = b*a, a*c = c*a, c*b*c^-1 = b^3 >", ""),
    ("Z2xDic5", "SG40_7",
     "< a, b, c | a^2 = b^10 = 1, c^2 = b^5, a*b = b*a, a*c = c*a, c*b*c^-1 = b^-1 >", ""),
    ("Z4^2:Z3", "SG48_3", "< x, y, z | x^3 = y^4 = z^4 = [y,z] = 1, x*y*x^-1 = z, x*z*x^-1 = (y*z)^-1 >", ""),
    ("H48", "SG48_33",
     "< x, y, z, w, t | x^2 = z^2 = w^2 = t, y^3 = t^2 = [x,y] = [x,z] = 1, "
     "y*z*y^-1 = w, y*w*y^-1 = z*w, z*w*z^-1 = w*t >", ""),
    ("GL(2,3)", "SG48_29", None, ""),
    ("Z3:Dic5", "SG60_3", "< a, b | a^30 = 1, b^2 = a^15, b*a*b^-1 = a^-1 >", "dicyclic of order 60"),
    ("Z5:Dic3", "SG60_7",
     "< a, b, c | a^3 = b^5 = c^4 = 1, a*b = b*a, c*a*c^-1 = a^-1, c*b*c^-1 = b^3 >", ""),
    ("A5", "SG60_5", None, ""),
    ("D30", "SG60_12", "< x, y | x^30 = y^2 = 1, y*x*y = x^-1 >", "dihedral of order 60"),
    ("PSL(2,7)", "SG168_42", None, ""),
]

HEADER = """\
# Group catalog.
#
# Complete isomorphism-class lists (entries SG<order>_<id>) were exported once
# from the GAP small groups library with tools/export_smallgroups.g and are
# frozen here as permutation generators.  Entries tagged alias-of:<name> are
# additional names for a group already listed; they do not count towards
# completeness.  Named presentations are kept exactly as printed in the
# literature, including one variant (Dic6-as-printed) whose relations define
# a different group from its name.
"""


def main(argv: list[str]) -> int:
    text = open(argv[1], encoding="utf-8").read().replace("\\\n", "")
    expected, defs = parse_catalog(text)
    out = [HEADER]
    for order, count in sorted(expected.items()):
        out.append(f"expect order {order} count {count}")
    out.append("")
    for d in defs.values():
        out.append(d.to_text())
    groups = {}
    for name, target, pres, note in NAMED:
        base = defs[target]
        G = realize(base)
        sig = groups.setdefault(target, full_signature(G))
        if pres is None:
            lines = [f"group {name} order {base.order}", f"tags alias-of:{target}", f"perm degree {base.degree}"]
            lines += list(base.generators)
        else:
            H = group_from_presentation(pres)
            if H.order != base.order or full_signature(H) != sig:
                raise SystemExit(f"{name} does not match {target}")
            lines = [f"group {name} order {base.order}", f"tags alias-of:{target} named", "pres", pres]
        if note:
            lines.insert(1, f"# {note}")
        out.append("\n".join(lines) + "\n")
    sys.stdout.write("\n".join(out))
    return 0


if __name__ == "__main__":
    raise SystemExit(main(sys.argv))
