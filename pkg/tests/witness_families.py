"""Explicit D_3 and octahedral families printed for the non-abelian kills.

Each builder returns (group, j, kind, family).  ``kind`` is "dp" or "o2".
"""

from nichols.groups import label_representative as rep
from nichols.groups import load_group
from nichols.permcore import inverse, parse_cycles, power
from nichols.rack import DpFamily, O2Family, rack_op


def P(group, text):
    return parse_cycles(text, load_group(group).degree)


def _d3(s, x):
    return DpFamily(3, (s, x, rack_op(s, x)))


def _chain(s1, s2):
    s3 = rack_op(s2, s1)
    s4 = rack_op(s3, s1)
    return [s1, s2, s3, s4, rack_op(s4, s1)]


def _fifth_powers(group, s, second, d):
    sig = _chain(s, P(group, second)) + [power(s, d)]
    return O2Family(tuple(sig), tuple(power(x, 5) for x in sig))


# reconstructed: only sigma_2 is printed for this class, see test_rack
M23_S9 = "(1,4,6,23,10,17,11,20)(2,19,7,9)(3,16,12,5,14,22,21,13)(8,15)"
M23_SIGMA2 = "(1,3,5,20,10,14,13,23)(2,15,7,8)(4,22,12,6,17,16,21,11)(9,19)"


def families():
    out = [
        ("m11", 10, "dp", _d3(rep("m11", 10), P("m11", "(1,6,8)(2,5,3,4,10,9)(7,11)"))),
        ("m12", 2, "dp", _d3(rep("m12", 2), P("m12", "(1,2,12,11,8,10)(3,6,9)(4,5)"))),
        ("m12", 14, "o2", _fifth_powers("m12", rep("m12", 14), "(1,3,5,11,4,8,10,12)(7,9)", 3)),
        ("m12", 5, "o2", _fifth_powers("m12", rep("m12", 5), "(1,4,12,7)(2,6,3,8,11,10,9,5)", 3)),
        ("m22", 4, "o2", _fifth_powers(
            "m22", rep("m22", 4), "(1,5,13,10,11,7,12,22)(2,9)(3,21,19,15,17,18,6,8)(4,14,20,16)", 7)),
        ("m23", 9, "o2", _fifth_powers("m23", P("m23", M23_S9), M23_SIGMA2, 7)),
        ("m24", 14, "o2", _fifth_powers(
            "m24", rep("m24", 14), "(2,4,18,15,20,6,16,10)(3,12,13,21,7,17,5,11)(8,9)(14,22,24,23)", 3)),
        ("m24", 17, "o2", _fifth_powers(
            "m24", rep("m24", 17), "(1,9,13,3,17,14,10,19,5,21,23,12)(2,18)(4,8,20,15)(6,11,7,16,22,24)", 7)),
        ("m24", 18, "o2", _fifth_powers(
            "m24", rep("m24", 18), "(1,2,10,14,17,22,8,18,11,12,6,5)(3,15,20,4,21,9,24,13,19,16,7,23)", 7)),
    ]
    # M24 j=6: sextet from s_6 and a second element, tau from inverses, plus g
    s6 = P("m24", "(1,9,20,17)(2,6)(3,10)(4,8)(5,24,19,7)(11,14,18,23)(12,21,13,15)(16,22)")
    sig = _chain(s6, P("m24", "(1,9,20,17)(2,11)(3,14)(4,18)(5,19,7,24)(6,10,8,22)(12,21,15,13)(16,23)"))
    sig.append(rack_op(sig[1], sig[2]))
    inv = [inverse(x) for x in sig]
    tau = (inv[5], inv[3], inv[4], inv[1], inv[2], inv[0])
    g = P("m24", "(3,16)(5,12)(6,8)(7,15)(9,17)(13,19)(14,23)(21,24)")
    out.append(("m24", 6, "o2", O2Family(tuple(sig), tau, g)))
    s8 = P("m24", "(1,4,24,14)(2,21,15,6)(3,16,8,12)(5,11,23,20)(7,18,17,13)(9,10,22,19)")
    x8 = P("m24", "(1,2,24,15)(3,5,8,23)(4,19,14,10)(6,22,21,9)(7,16,17,12)(11,13,20,18)")
    out.append(("m24", 8, "dp", _d3(s8, x8)))
    s19 = P("m24", "(1,5,20,23,19,2,18,7,17,9,21,24,6,12)(3,14,8,15,13,11,16)(4,22)")
    x19 = P("m24", "(1,14,20,15,19,11,18,3,17,8,21,13,6,16)(2,12,7,5,9,23,24)(4,10)")
    d19 = _d3(s19, x19)
    out.append(("m24", 19, "dp", d19))
    out.append(("m24", 20, "dp", DpFamily(3, tuple(inverse(y) for y in d19.elements))))
    return out
