import dataclasses
import itertools
import math
from collections import Counter
import random

import pytest

from nichols import criteria
from nichols.chartab import character_at, eigenvalue_multiset, q_ss
from nichols.criteria import (
    ABELIAN, INFINITE, NEGATIVE, NONABELIAN, CartanSubspace, CertificateError, DpCertificate,
    IdentityClass, O2General, O2Special, PowerScalar, RealScalar, classify_group, classify_pair,
    context, negative_check, nonabelian_stage, rule_identity, rule_power, rule_real, verify_certificate,
)
from nichols.cyclo import root_of_unity
from nichols.permcore import conjugate, element_order, inverse, mul, power
from nichols.rack import DpFamily, O2Family, gamma

FAST = ("m11", "m12", "m22")


@pytest.fixture(scope="module")
def sweeps():
    return {g: classify_group(g) for g in FAST}


def _irreps(ctx):
    return ctx.table.irreps()


def test_rule_identity(tmp_path):
    assert isinstance(rule_identity(context("m11", 1)), IdentityClass)
    assert rule_identity(context("m11", 5)) is None
    f = tmp_path / "trivial.grp"
    f.write_text("3\n()\n")
    ctx = criteria.ClassContext(str(f), 1)
    assert ctx.G.order == 1
    assert isinstance(rule_identity(ctx), IdentityClass)


def test_rule_real():
    ctx = context("m11", 8)
    assert len(_irreps(ctx)) == 9
    assert all(isinstance(rule_real(ctx, r), RealScalar) for r in _irreps(ctx))
    ctx = context("m11", 6)
    assert all(rule_real(ctx, r) is None for r in _irreps(ctx) if q_ss(r, ctx.s_class) == -1)
    ctx = context("m11", 2)
    assert ctx.real_witness is None
    assert all(rule_real(ctx, r) is None for r in _irreps(ctx))


def test_rule_power():
    ctx = context("m11", 2)
    ks = {k for k, _ in ctx.power_witnesses}
    assert {3, 9} <= ks
    assert all(isinstance(rule_power(ctx, r), PowerScalar) for r in _irreps(ctx))
    ctx = context("m22", 5)
    assert {2, 4} <= {k for k, _ in ctx.power_witnesses}
    assert all(rule_power(ctx, r) is not None for r in _irreps(ctx))
    ctx = context("m11", 4)  # only s^-1, and q = -1 for the survivors
    surv = [r for r in _irreps(ctx) if q_ss(r, ctx.s_class) == -1]
    assert all(rule_power(ctx, r) is None for r in surv)


def test_classify_pair_examples():
    v = classify_pair("m11", 1, 3)
    assert v.outcome == INFINITE and isinstance(v.certificate, IdentityClass)
    ctx = context("m11", 4)
    ks = [i + 1 for i, r in enumerate(_irreps(ctx)) if q_ss(r, ctx.s_class) == -1]
    for k in ks:
        assert classify_pair("m11", 4, k).outcome == NEGATIVE
    ctx = context("m11", 5)
    for i, r in enumerate(_irreps(ctx)):
        if r.degree == 2 and q_ss(r, ctx.s_class) == -1:
            v = classify_pair("m11", 5, i + 1)
            assert isinstance(v.certificate, CartanSubspace)
            assert verify_certificate(v)


def test_m24_j2_pairs_are_infinite():
    for v in classify_group("m24", classes=[2]):
        assert v.outcome == INFINITE and v.stage == ABELIAN
        assert v.certificate.kind in ("real", "power", "cartan", "hecke")


def test_negative_check_examples():
    ctx = context("m11", 6)
    assert len(ctx.inter) == 2
    (chi,) = [r for r in _irreps(ctx) if q_ss(r, ctx.s_class) == -1]
    assert negative_check(ctx, chi)
    ctx = context("m24", 8)
    assert len(ctx.inter) == 32
    hits = [r for r in _irreps(ctx) if r.degree == 1 and q_ss(r, ctx.s_class) == -1]
    assert hits and all(negative_check(ctx, r) for r in hits)
    ctx = context("m12", 7)
    for r in _irreps(ctx):
        if q_ss(r, ctx.s_class) == -1:
            assert not negative_check(ctx, r)


def test_negative_check_on_singleton_intersection():
    # O_s meet G^s = {s}: rho(s)^2 = 1
    for g, j in [("m12", 13), ("m23", 12)]:
        ctx = context(g, j)
        if len(ctx.inter) == 1:
            for r in _irreps(ctx):
                if q_ss(r, ctx.s_class) == -1:
                    assert negative_check(ctx, r)


def _minus_one(ctx):
    return [r for r in _irreps(ctx) if r.degree == 1 and q_ss(r, ctx.s_class) == -1][0]


def test_nonabelian_stage_examples():
    ctx = context("m12", 13)
    assert nonabelian_stage(ctx, _minus_one(ctx))[0] is None
    ctx = context("m22", 4)
    cert, _ = nonabelian_stage(ctx, _minus_one(ctx))
    assert isinstance(cert, O2Special)
    ctx = context("m11", 10)
    cert, _ = nonabelian_stage(ctx, _minus_one(ctx))
    assert isinstance(cert, DpCertificate) and cert.family.p == 3


@pytest.mark.slow
def test_nonabelian_stage_m24_j6():
    ctx = context("m24", 6)
    hits = [r for r in _irreps(ctx) if r.degree == 1 and q_ss(r, ctx.s_class) == -1]
    assert hits
    for r in hits:
        v = classify_pair("m24", 6, r.index + 1)
        assert v.stage == NONABELIAN and isinstance(v.certificate, O2General)
        assert verify_certificate(v)


# ---------------------------------------------------------------------------
# soundness and tampering


def test_every_fast_certificate_verifies(sweeps):
    for g, vs in sweeps.items():
        for v in vs:
            assert verify_certificate(v), v.pair
            if v.outcome == INFINITE and v.stage == ABELIAN:
                assert v.certificate.kind not in ("dp", "o2special", "o2general")


def _first(sweeps, kind):
    for vs in sweeps.values():
        for v in vs:
            if v.certificate is not None and v.certificate.kind == kind:
                return v
    raise LookupError(kind)


def test_tampered_q_matrix(sweeps):
    v = _first(sweeps, "cartan")
    c = v.certificate
    q = [list(r) for r in c.q]
    q[0][-1] = -q[0][-1]
    bad = dataclasses.replace(v, certificate=dataclasses.replace(c, q=tuple(tuple(r) for r in q)))
    with pytest.raises(CertificateError, match="q"):
        verify_certificate(bad)


def test_tampered_dp_family(sweeps):
    v = _first(sweeps, "dp")
    f = v.certificate.family
    els = list(f.elements)
    els[1], els[2] = els[2], els[1]
    els[1] = inverse(els[1])
    bad = dataclasses.replace(v, certificate=dataclasses.replace(v.certificate, family=DpFamily(f.p, tuple(els))))
    with pytest.raises(CertificateError):
        verify_certificate(bad)


def test_tampered_o2_family(sweeps):
    v = _first(sweeps, "o2special")
    f = v.certificate.family
    tau = list(f.tau)
    tau[2], tau[4] = tau[4], tau[2]
    bad = dataclasses.replace(v, certificate=dataclasses.replace(v.certificate, family=dataclasses.replace(f, tau=tuple(tau))))
    with pytest.raises(CertificateError):
        verify_certificate(bad)
    bad = dataclasses.replace(v, certificate=dataclasses.replace(v.certificate, d=v.certificate.d + 1))
    with pytest.raises(CertificateError, match="sigma_6"):
        verify_certificate(bad)


def test_tampered_scalar_rules(sweeps):
    v = _first(sweeps, "real")
    bad = dataclasses.replace(v, certificate=dataclasses.replace(v.certificate, witness=v.certificate.witness[::-1]))
    with pytest.raises(CertificateError):
        verify_certificate(bad)
    v = _first(sweeps, "power")
    bad = dataclasses.replace(v, certificate=dataclasses.replace(v.certificate, k=v.certificate.k + 1))
    with pytest.raises(CertificateError):
        verify_certificate(bad)
    bad = dataclasses.replace(v, outcome=INFINITE, certificate=None)
    with pytest.raises(CertificateError):
        verify_certificate(bad)


# ---------------------------------------------------------------------------
# witness independence and the negative-braiding reduction


def test_witness_independence(sweeps):
    rng = random.Random(11)
    pairs = [v for vs in sweeps.values() for v in vs
             if isinstance(v.certificate, CartanSubspace) and v.degree == 1]
    assert len(pairs) > 10
    for v in pairs:
        ctx = context(v.group, v.j)
        rho = ctx.table.irrep(v.k - 1)
        c = v.certificate
        base = [[character_at(rho, gamma(x, g)) for g in c.reps] for x in c.elements]
        for _ in range(20):
            reps = [mul(g, rng.choice(ctx.cent)) for g in c.reps]
            assert all(conjugate(g, ctx.s) == x for g, x in zip(reps, c.elements))
            alt = [[character_at(rho, gamma(x, g)) for g in reps] for x in c.elements]
            assert alt == base


def _condition_ii(ctx, rho, rng, samples=500):
    """Sampled check of rho(gamma_kl gamma_lk) = 1 over commuting pairs of the class."""
    G, s = ctx.G, ctx.s
    m, reps = ctx.inter.members, ctx.inter.reps
    it = G.random_elements(seed=rng.randrange(1 << 30))
    for _ in range(samples):
        gk = it.next()
        t = rng.randrange(len(m))
        # every element commuting with sigma_k = gk |> s is gk |> sigma_t
        gl = mul(mul(gk, reps[t]), rng.choice(ctx.cent))
        sk, sl = conjugate(gk, s), conjugate(gl, s)
        assert mul(sk, sl) == mul(sl, sk)
        y = mul(gamma(sk, gl), gamma(sl, gk))
        if character_at(rho, y) != 1:
            return False
    return True


@pytest.mark.parametrize("group", ["m11", "m12"])
def test_negative_check_matches_sampled_condition(group, sweeps):
    rng = random.Random(7)
    seen = set()
    for j in criteria.class_labels(group):
        ctx = context(group, j)
        if ctx.is_identity or len(ctx.inter) < 2 and j not in (4, 6, 7, 13):
            continue
        for rho in _irreps(ctx):
            if rho.degree != 1 or q_ss(rho, ctx.s_class) != -1:
                continue
            want = negative_check(ctx, rho)
            assert want == _condition_ii(ctx, rho, rng), (group, j, rho)
            seen.add(want)
    # every such M11 pair is negative after the abelian stage; M12 has both kinds
    assert seen == ({True} if group == "m11" else {True, False})


def test_degree_two_columns_are_realised(sweeps):
    # each chosen column tuple must be consistent with the eigenvalue multisets
    # of the column elements and of their products
    n = 0
    for g in ("m11", "m12"):
        for v in sweeps[g]:
            c = v.certificate
            if not isinstance(c, CartanSubspace) or c.columns is None:
                continue
            ctx = context(v.group, v.j)
            rho = ctx.table.irrep(v.k - 1)
            for l, (g_l, col) in enumerate(zip(c.reps, c.columns)):
                gams = [gamma(x, g_l) for x in c.elements]
                vals = [root_of_unity(element_order(y), e) for y, e in zip(gams, col)]
                for a in range(len(gams)):
                    for b in range(a, len(gams)):
                        y = gams[a] if a == b else mul(gams[a], gams[b])
                        lam = vals[a] if a == b else vals[a] * vals[b]
                        spec = eigenvalue_multiset(rho, y)
                        assert any(root_of_unity(r, k) == lam for (r, k) in spec), (v.pair, l)
                for k, y in enumerate(gams):
                    assert c.q[k][l] == vals[k]
            n += 1
    assert n > 0


def _assignments(rho, gams):
    """Every multiset of joint eigenvalue tuples consistent with the spectra of
    all elements of the group generated by ``gams`` (exhaustive backtracking)."""
    orders = [element_order(y) for y in gams]
    L = math.lcm(*orders)

    def spectrum(y):
        return {k * (L // r) % L: m for (r, k), m in eigenvalue_multiset(rho, y).items()}

    grid, cache = [], {}
    for e in itertools.product(*[range(o) for o in orders]):
        x = power(gams[0], e[0])
        for y, ei in zip(gams[1:], e[1:]):
            x = mul(x, power(y, ei))
        if x not in cache:
            cache[x] = spectrum(x)
        grid.append((e, cache[x]))
    margins = [{ex // (L // o): m for ex, m in spectrum(y).items()} for y, o in zip(gams, orders)]
    cands = list(itertools.product(*[sorted(mg) for mg in margins]))
    deg = rho.degree
    out = []

    def value(lam, e):
        return sum(li * ei * (L // o) for li, ei, o in zip(lam, e, orders)) % L

    def rec(start, picked, used):
        if len(picked) == deg:
            if all(Counter(value(l, e) for l in picked) == dict(sp) for e, sp in grid):
                out.append(Counter(picked))
            return
        for i in range(start, len(cands)):
            lam = cands[i]
            if all(used[c].get(x, 0) < margins[c][x] for c, x in enumerate(lam)):
                for c, x in enumerate(lam):
                    used[c][x] = used[c].get(x, 0) + 1
                rec(i, picked + [lam], used)
                for c, x in enumerate(lam):
                    used[c][x] -= 1

    rec(0, [], [dict() for _ in gams])
    return out


def test_joint_reasoner_choices_are_forced(sweeps):
    # for every degree > 1 certificate the chosen column tuple appears in every
    # eigenvalue assignment consistent with the character data
    n = 0
    for g in ("m11", "m12"):
        for v in sweeps[g]:
            c = v.certificate
            if not isinstance(c, CartanSubspace) or c.columns is None:
                continue
            rho = context(v.group, v.j).table.irrep(v.k - 1)
            for g_l, col in zip(c.reps, c.columns):
                gams = [gamma(x, g_l) for x in c.elements]
                sols = _assignments(rho, gams)
                assert sols, v.pair
                assert all(sol[tuple(col)] > 0 for sol in sols), (v.pair, col)
            n += 1
    assert n == 13
