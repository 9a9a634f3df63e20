import random

import pytest
from hypothesis import given, strategies as st

from nichols import groups
from nichols.groups import label_representative as rep
from nichols.permcore import (
    BudgetExceeded, build_group, centralizer, centralizer_elements, class_meet_centralizer, compose,
    conjugacy_classes, conjugate, conjugation_orbit, cycle_type, element_order, format_cycles,
    identity, inverse, is_conjugate, is_identity, is_real_class, mul, orbit_witness, parse_cycles,
    power,
)


def perms(n_min=1, n_max=9):
    return st.integers(n_min, n_max).flatmap(lambda n: st.permutations(range(n)).map(tuple))


def pairs(n_max=9):
    return st.integers(1, n_max).flatmap(
        lambda n: st.tuples(st.permutations(range(n)).map(tuple), st.permutations(range(n)).map(tuple)))


def test_compose_hand_example():
    p = (1, 0, 2)  # (0 1)
    q = (0, 2, 1)  # (1 2)
    assert compose(p, q) == (1, 2, 0)


@given(perms())
def test_identity_and_inverse_laws(p):
    e = identity(len(p))
    assert compose(e, p) == p == compose(p, e)
    assert compose(p, inverse(p)) == e
    assert conjugate(e, p) == p
    assert conjugate(p, p) == p


@given(pairs())
def test_conjugation_preserves_cycle_type(gx):
    g, x = gx
    y = conjugate(g, x)
    assert cycle_type(y) == cycle_type(x)
    assert element_order(y) == element_order(x)
    assert y == mul(mul(g, x), inverse(g))


@given(perms(), st.integers(-30, 30))
def test_power_agrees_with_repeated_product(p, k):
    q = identity(len(p))
    base = p if k >= 0 else inverse(p)
    for _ in range(abs(k)):
        q = mul(q, base)
    assert power(p, k) == q


@given(perms())
def test_cycle_text_round_trip(p):
    assert parse_cycles(format_cycles(p), len(p)) == p


def test_format_identity():
    assert format_cycles(identity(5)) == "()"
    assert is_identity(parse_cycles("()", 5))
    with pytest.raises(ValueError):
        parse_cycles("(1,2,2)", 4)


@pytest.mark.parametrize("name,order", [("m11", 7920), ("m12", 95040), ("m22", 443520),
                                        ("m23", 10200960), ("m24", 244823040)])
def test_group_orders(name, order):
    assert groups.load_group(name).order == order


def test_m11_from_printed_generators():
    G = build_group(11, [parse_cycles("(1,2,3,4,5,6,7,8,9,10,11)", 11), parse_cycles("(3,7,11,8)(4,10,5,6)", 11)])
    assert G.order == 7920


def test_membership():
    G = groups.load_group("m11")
    for g in G.generators:
        assert g in G
    assert parse_cycles("(1,2)", 11) not in G


def test_element_orders_of_representatives():
    assert element_order(rep("m11", 4)) == 4
    assert element_order(rep("m11", 6)) == 8
    assert element_order(identity(7)) == 1


def test_class_counts():
    assert len(groups.load_classes("m11")) == 10
    assert len(groups.load_classes("m24")) == 26
    triv = build_group(3, [identity(3)])
    cl = conjugacy_classes(triv)
    assert len(cl) == 1 and cl[0].size == 1


def test_centralizer_orders():
    assert centralizer(groups.load_group("m11"), rep("m11", 4)).order == 8
    assert centralizer(groups.load_group("m12"), rep("m12", 4)).order == 192
    G = groups.load_group("m11")
    assert centralizer(G, G.identity) is G


def test_is_conjugate_witnesses():
    G = groups.load_group("m11")
    x = rep("m11", 2)
    assert is_conjugate(G, x, x) == G.identity
    y = power(x, 3)
    g = is_conjugate(G, x, y)
    assert g is not None and conjugate(g, x) == y
    assert is_conjugate(G, x, inverse(x)) is None


def test_is_conjugate_against_full_orbit():
    # brute force: conjugate s_8 by every element of M11
    G = groups.load_group("m11")
    s = rep("m11", 8)
    orbit = {conjugate(g, s) for g in G.elements()}
    assert len(orbit) == 440
    for k in range(1, 3):
        assert (power(s, k) in orbit) == (is_conjugate(G, s, power(s, k)) is not None)
    rng = random.Random(5)
    els = G.elements()
    for _ in range(30):
        y = conjugate(rng.choice(els), rng.choice(els))
        assert (y in orbit) == (is_conjugate(G, s, y) is not None)


def test_class_meet_centralizer_examples():
    G = groups.load_group("m11")
    assert len(class_meet_centralizer(G, rep("m11", 5))) == 13
    s4 = rep("m11", 4)
    assert set(class_meet_centralizer(G, s4).members) == {s4, inverse(s4)}
    assert len(class_meet_centralizer(groups.load_group("m24"), rep("m24", 2))) == 281


def test_class_meet_centralizer_witnesses():
    G = groups.load_group("m12")
    s = rep("m12", 7)
    inter = class_meet_centralizer(G, s)
    assert inter.members[0] == s and is_identity(inter.reps[0])
    for x, g in zip(inter.members, inter.reps):
        assert conjugate(g, s) == x
        assert mul(x, s) == mul(s, x)


def test_real_classes():
    G = groups.load_group("m11")
    assert is_real_class(G, rep("m11", 5))
    assert is_real_class(G, rep("m11", 8))
    assert not is_real_class(G, rep("m11", 2))


@pytest.mark.parametrize("name", groups.BUILTIN)
def test_orbit_stabilizer_on_all_classes(name):
    G = groups.load_group(name)
    reg = groups.load_classes(name)
    assert sum(c.size for c in reg) == G.order
    for c in reg:
        assert c.size * c.centralizer_order == G.order
        if c.centralizer_order <= 2000 and not is_identity(c.representative):
            assert len(centralizer_elements(G, c.representative)) == c.centralizer_order
        if c.size <= 20000:
            orb = conjugation_orbit(G, c.representative)
            assert len(orb) == c.size
            for y, _, _ in list(orb.values())[:50]:
                assert conjugate(orbit_witness(G, orb, y), c.representative) == y


def test_class_identification():
    G = groups.load_group("m12")
    reg = groups.load_classes("m12")
    rng = G.random_elements(seed=3)
    for _ in range(40):
        x = rng.next()
        assert x in G
        i = reg.class_of(x)
        assert cycle_type(reg[i].representative) == cycle_type(x)
        assert is_conjugate(G, reg[i].representative, x) is not None


def test_orbit_budget():
    G = groups.load_group("m24")
    with pytest.raises(BudgetExceeded):
        conjugation_orbit(G, rep("m24", 2), budget=100)
