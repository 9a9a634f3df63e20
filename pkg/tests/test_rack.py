import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from nichols import groups
from nichols.groups import label_representative as rep
from nichols.permcore import (
    centralizer_elements, class_meet_centralizer, commute, conjugate, format_cycles, from_cycles,
    identity, inverse, mul, parse_cycles, power,
)
from nichols.rack import (
    ANTIPODE, OCT_TABLE, OCTAHEDRAL, DpFamily, O2Family, abelian_witness, braid_candidates, close_tau,
    dp_violation, gamma, is_abelian_subrack, iter_o2, make_witness, o2_violation, octahedral_sextet,
    rack_op, rack_table, search_dp, search_o2, verify_dp, verify_dp2, verify_o2, verify_type_O,
)
from witness_families import M23_S9, M23_SIGMA2, families

ACCEPTANCE_CLASSES = {"m11": [4, 5, 6, 7, 10], "m12": [2, 5, 7, 13, 14], "m22": [4, 10],
                      "m23": [9, 12, 13], "m24": [2, 6, 8]}


def class_sample(group, j, rng, n=3):
    G = groups.load_group(group)
    it = G.random_elements(seed=rng.randrange(1 << 30))
    s = rep(group, j)
    return [conjugate(it.next(), s) for _ in range(n)]


@settings(max_examples=40)
@given(st.sampled_from([(g, j) for g, js in ACCEPTANCE_CLASSES.items() for j in js]), st.randoms())
def test_rack_axioms_on_classes(gj, rng):
    x, y, z = class_sample(*gj, rng)
    # self-distributivity
    assert rack_op(x, rack_op(y, z)) == rack_op(rack_op(x, y), rack_op(x, z))
    # x |> - is a bijection with inverse x^-1 |> -
    assert rack_op(inverse(x), rack_op(x, y)) == y
    assert rack_op(x, x) == x
    # the class is closed under |>
    reg = groups.load_classes(gj[0])
    assert reg.class_of(rack_op(x, y)) == reg.class_of(rep(*gj))


def test_rack_op_trivial_cases():
    x = parse_cycles("(1,2,3)", 4)
    assert rack_op(x, x) == x
    assert rack_op(identity(4), x) == x


def test_abelian_subrack_examples():
    s4 = rep("m11", 4)
    assert is_abelian_subrack([s4])
    assert is_abelian_subrack([s4, inverse(s4)])
    s5 = rep("m11", 5)
    a = parse_cycles("(4,10)(5,8)(6,7)(9,11)", 11)
    b = parse_cycles("(1,2)(5,7)(6,8)(9,11)", 11)
    assert is_abelian_subrack([s5, a, b])
    assert mul(a, b) == s5
    assert not is_abelian_subrack([rep("m11", 10), parse_cycles("(1,6,8)(2,5,3,4,10,9)(7,11)", 11)])


def test_witness_singleton():
    G = groups.load_group("m12")
    inter = class_meet_centralizer(G, rep("m12", 7))
    w = abelian_witness(inter, [0])
    assert w.gammas[0][0] == rep("m12", 7)


def test_witness_m11_j5_relations():
    s = rep("m11", 5)
    a = parse_cycles("(4,10)(5,8)(6,7)(9,11)", 11)
    b = parse_cycles("(1,2)(5,7)(6,8)(9,11)", 11)
    g2 = parse_cycles("(1,9)(2,11)(4,10)(5,7)", 11)
    g3 = parse_cycles("(1,2)(4,9)(6,7)(10,11)", 11)
    w = make_witness(s, [s, a, b], [identity(11), g2, g3])
    sig = w.elements
    # sigma_k g_l = g_l gamma_{k,l}, with the printed right-hand sides
    want = [[s, a, b], [a, s, a], [b, b, s]]
    for k in range(3):
        for l in range(3):
            assert mul(sig[k], w.reps[l]) == mul(w.reps[l], want[k][l])
            assert w.gammas[k][l] == gamma(sig[k], w.reps[l]) == want[k][l]


def test_make_witness_rejects_bad_conjugator():
    s = rep("m11", 5)
    a = parse_cycles("(4,10)(5,8)(6,7)(9,11)", 11)
    with pytest.raises(ValueError):
        make_witness(s, [s, a], [identity(11), identity(11)])


@settings(max_examples=30)
@given(st.randoms())
def test_gamma_lies_in_centralizer(rng):
    G = groups.load_group("m12")
    s = rep("m12", 4)
    inter = class_meet_centralizer(G, s)
    m = inter.members
    i = rng.randrange(len(m))
    js = [j for j in range(len(m)) if commute(m[i], m[j])]
    j = rng.choice(js)
    y = gamma(m[i], inter.reps[j])
    assert commute(y, s)
    assert y in set(inter.members)


def test_dp_trivial_rejections():
    s = rep("m11", 10)
    assert not verify_dp(DpFamily(1, (s,)))
    c = (s, power(s, 5), s)
    assert not verify_dp(DpFamily(3, c))
    s5 = rep("m11", 5)
    a = parse_cycles("(4,10)(5,8)(6,7)(9,11)", 11)
    b = parse_cycles("(1,2)(5,7)(6,8)(9,11)", 11)
    assert dp_violation(DpFamily(3, (s5, a, b))) is not None


def test_dp2_in_dihedral_group():
    # reflections r^k f of the hexagon: sigma_i = r^(2i) f, tau_j = r^(2j+3) f
    r = from_cycles([(1, 2, 3, 4, 5, 6)], 6)
    f = from_cycles([(2, 6), (3, 5)], 6)
    refl = lambda k: mul(power(r, k), f)
    sigma = DpFamily(3, tuple(refl(2 * i) for i in range(3)))
    tau = DpFamily(3, tuple(refl(2 * j + 3) for j in range(3)))
    assert verify_dp(sigma) and verify_dp(tau)
    assert verify_dp2(sigma, tau)
    assert not verify_dp2(sigma, sigma)
    shifted = DpFamily(3, tuple(refl(2 * j + 1) for j in range(3)))
    assert verify_dp(shifted) and not verify_dp2(sigma, shifted)


def test_octahedral_reference_table():
    T = rack_table(OCTAHEDRAL)
    assert T == OCT_TABLE
    assert ANTIPODE == (5, 3, 4, 1, 2, 0)
    assert OCT_TABLE[1][2] == 5
    for x in range(6):
        for y in range(6):
            if ANTIPODE[x] != y and x != y:
                assert OCT_TABLE[x][OCT_TABLE[y][x]] == y
    assert verify_type_O(OCTAHEDRAL) == tuple(range(6))


def test_type_O_examples():
    # all six 4-cycles of S4 in an arbitrary order
    c = from_cycles([(1, 2, 3, 4)], 4)
    fours = sorted({conjugate(g, c) for g in itertools.permutations(range(4))})
    assert len(fours) == 6
    assert verify_type_O(fours) is not None
    commuting = [from_cycles([(i,)], 6) for i in range(1, 7)]
    assert verify_type_O(commuting) is None
    fam = {(g, j): f for g, j, k, f in families()}
    assert verify_type_O(fam[("m12", 14)].sigma) is not None


def test_octahedral_sextet_and_closure():
    f = {(g, j): f for g, j, k, f in families()}[("m22", 4)]
    sig = octahedral_sextet(f.sigma[0], f.sigma[1])
    assert sig == f.sigma
    assert close_tau(sig, f.tau[0]) == f.tau
    assert octahedral_sextet(f.sigma[0], f.sigma[5]) is None


@pytest.mark.parametrize("group,j,kind,fam", families(), ids=[f"{g}-j{j}" for g, j, _, _ in families()])
def test_printed_families(group, j, kind, fam):
    G = groups.load_group(group)
    reg = groups.load_classes(group)
    s = rep(group, j) if (group, j) != ("m23", 9) else parse_cycles(M23_S9, 23)
    els = fam.elements if kind == "dp" else fam.sigma + fam.tau
    for x in els:
        assert x in G
        assert reg.class_of(x) == reg.class_of(s)
    if kind == "dp":
        assert dp_violation(fam) is None
    else:
        assert o2_violation(fam) is None
        assert verify_type_O(fam.sigma) is not None and verify_type_O(fam.tau) is not None


@settings(max_examples=25)
@given(st.sampled_from(families()), st.randoms())
def test_families_survive_relabeling(item, rng):
    group, j, kind, fam = item
    g = groups.load_group(group).random_elements(seed=rng.randrange(1 << 30)).next()
    c = lambda x: conjugate(g, x)
    if kind == "dp":
        assert verify_dp(DpFamily(fam.p, tuple(map(c, fam.elements))))
    else:
        h = None if fam.g is None else c(fam.g)
        assert verify_o2(O2Family(tuple(map(c, fam.sigma)), tuple(map(c, fam.tau)), h))


@pytest.mark.parametrize("index", range(3))
def test_tampered_family_fails(index):
    fams = [f for f in families() if f[2] == "o2"]
    group, j, _, fam = fams[index]
    sig = list(fam.sigma)
    sig[2], sig[3] = sig[3], sig[2]
    assert o2_violation(O2Family(tuple(sig), fam.tau)) is not None
    tau = list(fam.tau)
    tau[0] = inverse(tau[0])
    assert o2_violation(O2Family(fam.sigma, tuple(tau))) is not None


def test_m23_s9_reconstruction():
    # only sigma_2 is printed; recover sigma_1 from the recipe sigma_6 = sigma_1^-1, tau = sigma^5
    G = groups.load_group("m23")
    reg = groups.load_classes("m23")
    x = parse_cycles(M23_SIGMA2, 23)
    cent = centralizer_elements(G, x)
    found = set()
    for b in braid_candidates(G, x, cent, reg):
        for h in cent:
            s = conjugate(h, b)
            sig = [s, x]
            for _ in range(3):
                sig.append(rack_op(sig[-1], s))
            sig.append(inverse(s))
            if verify_o2(O2Family(tuple(sig), tuple(power(y, 5) for y in sig))):
                found.add(format_cycles(s))
                break
    assert M23_S9 in found
    assert reg.class_of(parse_cycles(M23_S9, 23)) == reg.class_of(rep("m23", 9))


def test_search_dp_examples():
    G = groups.load_group("m11")
    reg = groups.load_classes("m11")
    f = search_dp(G, rep("m11", 10), 3, registry=reg)
    assert f is not None and verify_dp(f) and f.elements[0] == rep("m11", 10)
    G12 = groups.load_group("m12")
    f = search_dp(G12, rep("m12", 2), 3, registry=groups.load_classes("m12"))
    assert f is not None and verify_dp(f)
    # a central element: the whole class is one point
    assert search_dp(G, G.identity, 3, registry=reg) is None


def test_search_dp_none_for_survivors():
    G = groups.load_group("m11")
    reg = groups.load_classes("m11")
    for j in (4, 6, 7):
        assert search_dp(G, rep("m11", j), registry=reg) is None


def _search_o2(group, j):
    G = groups.load_group(group)
    reg = groups.load_classes(group)
    s = rep(group, j)
    return s, list(iter_o2(G, s, class_meet_centralizer(G, s), reg))


def test_search_o2_small_class():
    G = groups.load_group("m11")
    assert search_o2(G, G.identity, class_meet_centralizer(G, G.identity), groups.load_classes("m11")) is None


def test_search_o2_m22_recipe():
    s, fams = _search_o2("m22", 4)
    assert fams and all(verify_o2(f) for f in fams)
    assert any(f.sigma[5] == inverse(s) and f.tau == tuple(power(x, 5) for x in f.sigma) for f in fams)


def test_search_o2_m23_recipe():
    s, fams = _search_o2("m23", 9)
    assert fams and all(verify_o2(f) for f in fams)
    assert any(f.sigma[5] == inverse(s) and f.tau == tuple(power(x, 5) for x in f.sigma) for f in fams)


def test_search_o2_none_for_survivor():
    _, fams = _search_o2("m12", 13)
    assert fams == []
