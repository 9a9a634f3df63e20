"""Classification of pairs (conjugacy class, centralizer irrep).

Each pair runs through a fixed pipeline: the identity class, the two scalar
rules, abelian subracks (Cartan and cycle/valency obstructions), the
negative-braiding check, and finally the D_p and octahedral criteria.  The
first rule that applies yields a certificate which :func:`verify_certificate`
re-checks from the group data alone.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional, Sequence

from . import groups
from .braiding import (
    DiagonalBraiding,
    Obstruction,
    cartan_data,
    gdd,
    hecke_obstruction,
    is_finite_type,
    is_negative,
)
from .chartab import CharacterTable, Irrep, burnside_dixon, joint_spectrum, q_ss
from .cyclo import Cyclotomic, as_root_of_unity, root_of_unity
from .permcore import (
    BudgetExceeded,
    ClassIntersection,
    Perm,
    centralizer_classes,
    centralizer_elements,
    class_meet_centralizer,
    commute,
    conjugate,
    element_order,
    group_from_elements,
    inverse,
    is_conjugate,
    is_identity,
    mul,
    perm_key,
    power,
)
from .rack import (
    DpFamily,
    O2Family,
    SearchBudgetExceeded,
    dp_violation,
    gamma,
    iter_dp,
    iter_o2,
    make_witness,
    o2_violation,
)

MAX_SUBSET = 4
DEFAULT_ABELIAN_BUDGET = 200000
# Switch for the octahedral eigenvector criterion in degree > 1.
# No pair of the built-in groups needs it.
HIGHER_DEGREE_O2 = False

INFINITE, NEGATIVE, UNKNOWN = "infinite", "negative", "unknown"
ABELIAN, NONABELIAN = "abelian", "nonabelian"


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class IdentityClass:
    kind = "identity"


@dataclass(frozen=True)
class RealScalar:
    witness: Perm  # witness s witness^-1 = s^-1
    q: Cyclotomic
    kind = "real"


@dataclass(frozen=True)
class PowerScalar:
    k: int
    witness: Perm  # witness s witness^-1 = s^k
    q: Cyclotomic
    clause: str    # "deg>1", "deg=1" or "k^2"
    kind = "power"


@dataclass(frozen=True)
class CartanSubspace:
    elements: tuple
    reps: tuple
    columns: Optional[tuple]  # per-column eigenvalue exponents when deg > 1
    q: tuple
    cartan: tuple
    kind = "cartan"


@dataclass(frozen=True)
class HeckeObstruction:
    elements: tuple
    reps: tuple
    columns: Optional[tuple]
    q: tuple
    obstruction: Obstruction
    kind = "hecke"


@dataclass(frozen=True)
class DpCertificate:
    family: DpFamily
    k: int              # least k > 1 with s^k in the class, else 1
    k_witness: Perm
    kind = "dp"


@dataclass(frozen=True)
class O2Special:
    family: O2Family
    d: int
    e: int
    kind = "o2special"


@dataclass(frozen=True)
class O2General:
    family: O2Family
    facts: tuple  # the four eigenvalue conditions, as text
    kind = "o2general"


@dataclass
class Verdict:
    group: str
    j: int
    k: int            # 1-based row of the centralizer table
    outcome: str
    stage: str
    certificate: object = None
    trace: list = field(default_factory=list)
    degree: int = 1
    flags: list = field(default_factory=list)

    @property
    def pair(self) -> tuple:
        return (self.group, self.j, self.k)

    @property
    def negative_after_abelian(self) -> bool:
        return self.outcome == NEGATIVE or (self.outcome == INFINITE and self.stage == NONABELIAN)


# ---------------------------------------------------------------------------
# per-class data


class ClassContext:
    """Everything the rules need about one class O_s of a group."""

    def __init__(self, group: str, j: int, s: Optional[Perm] = None, seed: int = 0):
        self.group = group
        self.j = j
        self.G = groups.load_group(group)
        self.registry = groups.load_classes(group, seed)
        if s is None:
            s = class_representative(group, j)
        self.s = s
        self.idx = self.registry.class_of(s)
        self.cls = self.registry[self.idx]
        self.order = element_order(s)

    @property
    def is_identity(self) -> bool:
        return is_identity(self.s)

    @cached_property
    def cent(self) -> list:
        if self.s == self.cls.representative:
            return self.cls.centralizer_elements
        return centralizer_elements(self.G, self.s)

    @cached_property
    def cent_group(self):
        return group_from_elements(self.G.degree, self.cent, name=f"C({self.group},{self.j})")

    @cached_property
    def table(self) -> CharacterTable:
        if self.is_identity:
            raise BudgetExceeded("the identity class uses the group's own irreducibles")
        return burnside_dixon(self.cent_group, name=f"{self.group}^s{self.j}")

    @property
    def n_irreps(self) -> int:
        if self.is_identity:
            return len(self.registry)
        return len(self.table.irreducibles)

    @cached_property
    def s_class(self) -> int:
        return self.table.class_of(self.s)

    @cached_property
    def inter(self) -> ClassIntersection:
        return class_meet_centralizer(self.G, self.s, self.cent)

    @cached_property
    def real_witness(self) -> Optional[Perm]:
        return is_conjugate(self.G, self.s, inverse(self.s))

    @cached_property
    def power_witnesses(self) -> list:
        """(k, g) with g s g^-1 = s^k != s, for 1 < k < |s|."""
        out = []
        seen: dict = {}
        for k in range(2, self.order):
            if math.gcd(k, self.order) != 1:
                continue
            y = power(self.s, k)
            if y == self.s:
                continue
            key = perm_key(y)
            if key not in seen:
                seen[key] = is_conjugate(self.G, self.s, y)
            if seen[key] is not None:
                out.append((k, seen[key]))
        return out

    @cached_property
    def least_power(self) -> tuple:
        """Least k > 1 with s^k in the class (s^k may equal s), with witness."""
        for k in range(2, self.order + 2):
            y = power(self.s, k)
            if y == self.s:
                return (k, self.G.identity)
            w = is_conjugate(self.G, self.s, y) if element_order(y) == self.order else None
            if w is not None:
                return (k, w)
        return (1, self.G.identity)

    @cached_property
    def commuting(self) -> list:
        m = self.inter.members
        return [[commute(a, b) for b in m] for a in m]

    @cached_property
    def orbit_reps(self) -> list:
        """Indices of G^s-orbit representatives among the nontrivial members."""
        gens = list(self.cent_group.generators) if len(self.cent) > 1 else []
        members = self.inter.members
        pos = {perm_key(x): i for i, x in enumerate(members)}
        classes, _, _ = centralizer_classes(members[1:], gens)
        return sorted(pos[perm_key(c[0])] for c in classes)

    @cached_property
    def gamma_class(self) -> dict:
        """(k, l) -> table class of gamma_{k,l} for commuting members."""
        m, reps = self.inter.members, self.inter.reps
        out = {}
        for a in range(len(m)):
            for b in range(len(m)):
                if self.commuting[a][b]:
                    out[(a, b)] = self.table.class_of(gamma(m[a], reps[b]))
        return out

    def subsets(self, max_size: int = MAX_SUBSET) -> Iterator[tuple]:
        """Abelian subsets of O_s meet G^s through s, up to G^s-conjugacy, by size."""
        n = len(self.inter.members)
        C = self.commuting
        yield (0,)
        for size in range(2, max_size + 1):
            seen = set()
            for a in self.orbit_reps:
                rest = [b for b in range(1, n) if b != a and C[a][b]]
                for combo in itertools.combinations(rest, size - 2):
                    if not all(C[x][y] for x, y in itertools.combinations(combo, 2)):
                        continue
                    key = tuple(sorted((a,) + combo))
                    if key in seen:
                        continue
                    seen.add(key)
                    yield (0,) + key


_CONTEXTS: dict = {}


def class_representative(group: str, j: int, seed: int = 0) -> Perm:
    if group.lower() in groups.BUILTIN:
        return groups.label_representative(group.lower(), j)
    return groups.load_classes(group, seed)[j - 1].representative


def class_labels(group: str, seed: int = 0) -> list[int]:
    if group.lower() in groups.BUILTIN:
        return sorted(groups.labelled_classes(group.lower()))
    return list(range(1, len(groups.load_classes(group, seed)) + 1))


def context(group: str, j: int, seed: int = 0) -> ClassContext:
    key = (group, j, seed)
    if key not in _CONTEXTS:
        _CONTEXTS[key] = ClassContext(group, j, class_representative(group, j, seed), seed)
    return _CONTEXTS[key]


# ---------------------------------------------------------------------------
# rules


def rule_identity(ctx: ClassContext) -> Optional[IdentityClass]:
    return IdentityClass() if ctx.is_identity else None


def rule_real(ctx: ClassContext, rho: Irrep) -> Optional[RealScalar]:
    q = q_ss(rho, ctx.s_class)
    if q == -1 or ctx.real_witness is None:
        return None
    return RealScalar(ctx.real_witness, q)


def _power_clause(k: int, s: Perm, q: Cyclotomic, deg: int) -> Optional[str]:
    if q == -1:
        return None
    if power(s, k * k) != s:
        return "k^2"
    if deg > 1:
        return "deg>1"
    rk = as_root_of_unity(q)
    if rk is not None and rk[0] == 3:
        return None
    return "deg=1"


def rule_power(ctx: ClassContext, rho: Irrep) -> Optional[PowerScalar]:
    q = q_ss(rho, ctx.s_class)
    for k, w in ctx.power_witnesses:
        clause = _power_clause(k, ctx.s, q, rho.degree)
        if clause is not None:
            return PowerScalar(k, w, q, clause)
    return None


def _verdict_from_braiding(elements, reps, columns, qrows) -> Optional[object]:
    b = DiagonalBraiding.from_rows(qrows)
    cm = cartan_data(b)
    if cm is not None and not is_finite_type(cm):
        return CartanSubspace(tuple(elements), tuple(reps), columns, b.q, cm.a)
    obs = hecke_obstruction(gdd(b))
    if obs is not None:
        return HeckeObstruction(tuple(elements), tuple(reps), columns, b.q, obs)
    return None


def _exponent_value(order: int, e: int) -> Cyclotomic:
    return root_of_unity(order, e)


def _column_spectrum(rho: Irrep, col: Sequence[Perm]) -> list:
    spec = joint_spectrum(rho, list(col))
    return sorted(spec)


def abelian_search(ctx: ClassContext, rho: Irrep, budget: int = DEFAULT_ABELIAN_BUDGET):
    """Certificate from a diagonal subspace spanned by g_l w_l, l in T.

    For each column l the vector w_l is a joint eigenvector of the commuting
    gamma_{k,l} (k in T); the eigenvalue tuples come from the exact joint
    spectrum, so every matrix tried is realised by an actual subspace.
    """
    inter = ctx.inter
    m, reps = inter.members, inter.reps
    deg = rho.degree
    examined = 0
    for T in ctx.subsets():
        examined += 1
        if examined > budget:
            raise BudgetExceeded(f"abelian search budget {budget} exhausted")
        els = [m[i] for i in T]
        rs = [reps[i] for i in T]
        if deg == 1:
            q = [[rho(ctx.gamma_class[(a, b)]) for b in T] for a in T]
            cert = _verdict_from_braiding(els, rs, None, q)
            if cert is not None:
                return cert
            continue
        cols = []
        for b in T:
            col = [gamma(m[a], reps[b]) for a in T]
            orders = [element_order(x) for x in col]
            cols.append([(e, orders) for e in _column_spectrum(rho, col)])
        for choice in itertools.product(*cols):
            q = [[_exponent_value(choice[c][1][r], choice[c][0][r]) for c in range(len(T))]
                 for r in range(len(T))]
            cert = _verdict_from_braiding(els, rs, tuple(ch[0] for ch in choice), q)
            if cert is not None:
                return cert
    return None


def negative_check(ctx: ClassContext, rho: Irrep) -> bool:
    """rho(gamma_{1,t} gamma_{t,1}) = 1 for every sigma_t in O_s meet G^s."""
    if rho.degree != 1:
        raise ValueError("negative check is for degree-one representations")
    if q_ss(rho, ctx.s_class) != -1:
        return False
    s = ctx.s
    for x, g in zip(ctx.inter.members, ctx.inter.reps):
        y = mul(gamma(s, g), x)
        if rho(ctx.table.class_of(y)) != 1:
            return False
    return True


@dataclass
class _NonAbelianData:
    dp: list
    o2: list
    error: Optional[str] = None


_NONAB: dict = {}


def _nonabelian_data(ctx: ClassContext) -> _NonAbelianData:
    key = (ctx.group, ctx.j, perm_key(ctx.s))
    if key not in _NONAB:
        try:
            dp = sorted(iter_dp(ctx.G, ctx.s, cent=ctx.cent, registry=ctx.registry), key=lambda f: f.p)
            o2 = list(iter_o2(ctx.G, ctx.s, ctx.inter, ctx.registry))
            _NONAB[key] = _NonAbelianData(dp, o2)
        except SearchBudgetExceeded as exc:
            _NONAB[key] = _NonAbelianData([], [], str(exc))
    return _NONAB[key]


def _has_joint(rho: Irrep, pair: tuple, value: Cyclotomic) -> bool:
    spec = joint_spectrum(rho, list(pair))
    orders = [element_order(x) for x in pair]
    return any(all(root_of_unity(o, e) == value for o, e in zip(orders, lam)) for lam in spec)


def o2_general_facts(ctx: ClassContext, rho: Irrep, fam: O2Family) -> Optional[tuple]:
    sig, tau, g = fam.sigma, fam.tau, fam.g
    gi = inverse(g)
    v_pair = (sig[5], tau[0])
    w_pair = (conjugate(gi, sig[0]), conjugate(gi, sig[5]))
    if rho.degree == 1:
        vals = [rho(ctx.table.class_of(x)) for x in v_pair + w_pair]
        if all(v == -1 for v in vals):
            return ("rho(sigma_6) = -1", "rho(tau_1) = -1", "rho(g^-1 sigma_1 g) = -1", "rho(g^-1 sigma_6 g) = -1")
        return None
    if not HIGHER_DEGREE_O2:
        return None
    if _has_joint(rho, v_pair, Cyclotomic(-1)) and _has_joint(rho, w_pair, Cyclotomic(-1)):
        return ("joint eigenvalue (-1,-1) on (sigma_6, tau_1)",
                "joint eigenvalue (-1,-1) on (g^-1 sigma_1 g, g^-1 sigma_6 g)")
    return None


def nonabelian_stage(ctx: ClassContext, rho: Irrep) -> tuple:
    """(certificate or None, flags)."""
    if q_ss(rho, ctx.s_class) != -1:
        return None, []
    data = _nonabelian_data(ctx)
    flags = [f"budget: {data.error}"] if data.error else []
    if data.dp:
        k, w = ctx.least_power
        return DpCertificate(data.dp[0], k, w), flags
    for fam in data.o2:
        if fam.d is not None and fam.e is not None:
            return O2Special(fam, fam.d, fam.e), flags
    for fam in data.o2:
        facts = o2_general_facts(ctx, rho, fam)
        if facts is not None:
            return O2General(fam, facts), flags
    return None, flags


# ---------------------------------------------------------------------------
# the pipeline


def classify_pair(group: str, j: int, k: int, abelian_budget: int = DEFAULT_ABELIAN_BUDGET,
                  seed: int = 0) -> Verdict:
    """Classify (O_{s_j}, rho_k); ``k`` is the 1-based row of the centralizer table."""
    ctx = context(group, j, seed)
    v = Verdict(group, j, k, UNKNOWN, ABELIAN)
    cert = rule_identity(ctx)
    if cert is not None:
        v.outcome, v.certificate = INFINITE, cert
        v.trace.append("identity class")
        return v
    rho = ctx.table.irrep(k - 1)
    v.degree = rho.degree
    q = q_ss(rho, ctx.s_class)
    v.trace.append(f"q_ss = {q}")
    for rule in (rule_real, rule_power):
        cert = rule(ctx, rho)
        if cert is not None:
            v.outcome, v.certificate = INFINITE, cert
            v.trace.append(f"{cert.kind} rule")
            return v
    if rho.degree == 1 and negative_check(ctx, rho):
        # a negative braiding leaves nothing for the abelian search to find
        v.outcome = NEGATIVE
        v.trace.append("negative braiding")
    else:
        try:
            cert = abelian_search(ctx, rho, abelian_budget)
        except BudgetExceeded as exc:
            cert = None
            v.flags.append(f"budget: {exc}")
        if cert is not None:
            v.outcome, v.certificate = INFINITE, cert
            v.trace.append(f"abelian subspace ({cert.kind})")
            return v
        v.trace.append("no abelian certificate")
    if q != -1:
        return v
    cert, flags = nonabelian_stage(ctx, rho)
    v.flags.extend(flags)
    if cert is not None:
        v.outcome, v.stage, v.certificate = INFINITE, NONABELIAN, cert
        v.trace.append(f"non-abelian subrack ({cert.kind})")
    return v


def classify_group(group: str, classes: Optional[Sequence[int]] = None,
                   irreps: Optional[Sequence[int]] = None,
                   abelian_budget: int = DEFAULT_ABELIAN_BUDGET, seed: int = 0) -> list[Verdict]:
    out = []
    for j in class_labels(group, seed):
        if classes and j not in classes:
            continue
        ctx = context(group, j, seed)
        for k in range(1, ctx.n_irreps + 1):
            if irreps and k not in irreps:
                continue
            out.append(classify_pair(group, j, k, abelian_budget, seed))
    return out


# ---------------------------------------------------------------------------
# independent verification


class CertificateError(AssertionError):
    """A certificate relation does not hold; the message names it."""


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise CertificateError(what)


def _fresh_table(ctx: ClassContext, s: Perm) -> tuple:
    cent = centralizer_elements(ctx.G, s)
    H = group_from_elements(ctx.G.degree, cent)
    T = burnside_dixon(H)
    return T, T.class_of(s)


def _check_subspace(ctx, T, rho, s, cert) -> None:
    els, reps = cert.elements, cert.reps
    _require(len(els) == len(reps) == len(cert.q), "subspace data lengths agree")
    for x, g in zip(els, reps):
        _require(g in ctx.G, "conjugator lies in G")
        _require(conjugate(g, s) == x, "g_k s g_k^-1 = sigma_k")
    for a, b in itertools.combinations(els, 2):
        _require(commute(a, b), "subrack elements commute")
    n = len(els)
    for l in range(n):
        col = [gamma(els[k], reps[l]) for k in range(n)]
        for y in col:
            _require(commute(y, s), "gamma_{k,l} centralizes s")
        if rho.degree == 1:
            for k in range(n):
                _require(cert.q[k][l] == rho(T.class_of(col[k])), f"q_{k + 1}{l + 1} = rho(gamma_{k + 1},{l + 1})")
        else:
            _require(cert.columns is not None, "eigenvalue data present for degree > 1")
            lam = tuple(cert.columns[l])
            spec = joint_spectrum(rho, col)
            _require(spec.get(lam, 0) > 0, f"column {l + 1} eigenvalues occur in the joint spectrum")
            for k in range(n):
                _require(cert.q[k][l] == root_of_unity(element_order(col[k]), lam[k]),
                         f"q_{k + 1}{l + 1} matches the joint eigenvalue")


def verify_certificate(v: Verdict, seed: int = 0) -> bool:
    """Re-check every relation cited by ``v``; raises CertificateError naming the first failure."""
    ctx = context(v.group, v.j, seed)
    s = ctx.s
    cert = v.certificate
    if v.outcome != INFINITE:
        _require(cert is None, "only infinite verdicts carry certificates")
        return True
    _require(cert is not None, "infinite verdict has a certificate")
    if isinstance(cert, IdentityClass):
        _require(is_identity(s), "representative is the identity")
        return True
    T, sc = _fresh_table(ctx, s)
    _require(1 <= v.k <= len(T.irreducibles), "irrep index in range")
    rho = T.irrep(v.k - 1)
    q = q_ss(rho, sc)
    if isinstance(cert, RealScalar):
        _require(cert.witness in ctx.G, "witness lies in G")
        _require(conjugate(cert.witness, s) == inverse(s), "witness conjugates s to s^-1")
        _require(q == cert.q and q != -1, "q_ss != -1")
    elif isinstance(cert, PowerScalar):
        y = power(s, cert.k)
        _require(cert.witness in ctx.G, "witness lies in G")
        _require(y != s and conjugate(cert.witness, s) == y, "s^k is a conjugate of s other than s")
        _require(q == cert.q, "recorded q_ss")
        _require(_power_clause(cert.k, s, q, rho.degree) == cert.clause, f"power rule clause {cert.clause}")
    elif isinstance(cert, (CartanSubspace, HeckeObstruction)):
        _check_subspace(ctx, T, rho, s, cert)
        b = DiagonalBraiding.from_rows(cert.q)
        if isinstance(cert, CartanSubspace):
            cm = cartan_data(b)
            _require(cm is not None and cm.a == tuple(tuple(r) for r in cert.cartan), "Cartan matrix of the q-matrix")
            _require(not is_finite_type(cm), "Cartan matrix is not of finite type")
        else:
            obs = hecke_obstruction(gdd(b))
            _require(obs is not None, "diagram has a long cycle or a vertex of valency > 3")
    elif isinstance(cert, DpCertificate):
        fam = cert.family
        _require(fam.p % 2 == 1 and all(fam.p % d for d in range(2, int(fam.p ** 0.5) + 1)), "p is an odd prime")
        _require(fam.elements[0] == s, "sigma_0 = s")
        bad = dp_violation(fam)
        _require(bad is None, bad or "")
        for x in fam.elements:
            _require(is_conjugate(ctx.G, s, x) is not None, "family lies in the class of s")
        if cert.k > 1:
            _require(conjugate(cert.k_witness, s) == power(s, cert.k), "s^k lies in the class")
        _require(q == -1, "q_ss = -1")
    elif isinstance(cert, (O2Special, O2General)):
        fam = cert.family
        _require(fam.sigma[0] == s, "sigma_1 = s")
        bad = o2_violation(fam)
        _require(bad is None, bad or "")
        _require(fam.g is not None and fam.g in ctx.G and conjugate(fam.g, s) == fam.tau[0], "g |> sigma_1 = tau_1")
        _require(q == -1, "q_ss = -1")
        if isinstance(cert, O2Special):
            _require(power(s, cert.d) == fam.sigma[5], "sigma_6 = sigma_1^d")
            _require(power(s, cert.e) == fam.tau[0], "tau_1 = sigma_1^e")
        else:
            gi = inverse(fam.g)
            v_pair = (fam.sigma[5], fam.tau[0])
            w_pair = (conjugate(gi, s), conjugate(gi, fam.sigma[5]))
            for x in v_pair + w_pair:
                _require(commute(x, s), "eigen-condition elements centralize s")
            if rho.degree == 1:
                for x, name in zip(v_pair + w_pair, ("sigma_6", "tau_1", "g^-1 sigma_1 g", "g^-1 sigma_6 g")):
                    _require(rho(T.class_of(x)) == -1, f"rho({name}) = -1")
            else:
                _require(_has_joint(rho, v_pair, Cyclotomic(-1)), "common -1 eigenvector of sigma_6, tau_1")
                _require(_has_joint(rho, w_pair, Cyclotomic(-1)), "common -1 eigenvector of g^-1 sigma_1 g, g^-1 sigma_6 g")
    else:
        raise CertificateError(f"unknown certificate {type(cert).__name__}")
    return True
