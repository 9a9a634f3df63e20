"""Conjugation racks: abelian subracks, gamma values, D_p and octahedral families."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .permcore import (
    BudgetExceeded,
    ClassIntersection,
    ClassRegistry,
    Perm,
    PermGroup,
    centralizer_classes,
    centralizer_elements,
    commute,
    conjugate,
    cycle_type,
    element_order,
    from_cycles,
    group_from_elements,
    inverse,
    is_conjugate,
    is_identity,
    mul,
    perm_key,
    power,
)

DEFAULT_SEARCH_BUDGET = 2 * 10**6


class SearchBudgetExceeded(BudgetExceeded):
    """The candidate space was not exhausted within the budget."""


def rack_op(x: Perm, y: Perm) -> Perm:
    """x |> y = x y x^-1."""
    return conjugate(x, y)


def is_abelian_subrack(T: Sequence[Perm]) -> bool:
    return all(commute(a, b) for a, b in itertools.combinations(T, 2))


# ---------------------------------------------------------------------------
# abelian witnesses


@dataclass(frozen=True)
class SubrackWitness:
    base: Perm
    elements: tuple
    reps: tuple
    gammas: tuple  # gammas[k][l] = reps[l]^-1 elements[k] reps[l]

    def __len__(self) -> int:
        return len(self.elements)


def gamma(sigma_k: Perm, g_l: Perm) -> Perm:
    return conjugate(inverse(g_l), sigma_k)


def make_witness(s: Perm, elements: Sequence[Perm], reps: Sequence[Perm]) -> SubrackWitness:
    """Build and validate a witness from explicit members and conjugators."""
    elements, reps = tuple(elements), tuple(reps)
    if len(elements) != len(reps):
        raise ValueError("one conjugator per element is required")
    for x, g in zip(elements, reps):
        if conjugate(g, s) != x:
            raise ValueError("conjugator does not carry the base to the element")
    if not is_abelian_subrack(elements):
        raise ValueError("selected elements do not commute")
    gam = tuple(tuple(gamma(x, g) for g in reps) for x in elements)
    for row in gam:
        for y in row:
            if not commute(y, s):
                raise ValueError("gamma value outside the centralizer")
    return SubrackWitness(s, elements, reps, gam)


def abelian_witness(inter: ClassIntersection, indices: Sequence[int]) -> SubrackWitness:
    return make_witness(inter.base, [inter.members[i] for i in indices], [inter.reps[i] for i in indices])


# ---------------------------------------------------------------------------
# D_p families


@dataclass(frozen=True)
class DpFamily:
    p: int
    elements: tuple

    def __len__(self) -> int:
        return len(self.elements)


def dp_violation(fam: DpFamily) -> Optional[str]:
    p, el = fam.p, fam.elements
    if p < 2:
        return "p must exceed 1"
    if len(el) != p:
        return f"expected {p} elements, got {len(el)}"
    if len({perm_key(x) for x in el}) != p:
        return "elements are not distinct"
    for i in range(p):
        for j in range(p):
            if rack_op(el[i], el[j]) != el[(2 * i - j) % p]:
                return f"sigma_{i} |> sigma_{j} != sigma_{(2 * i - j) % p}"
    return None


def verify_dp(fam: DpFamily) -> bool:
    return dp_violation(fam) is None


def verify_dp2(sigma: DpFamily, tau: DpFamily) -> bool:
    if not (verify_dp(sigma) and verify_dp(tau)) or sigma.p != tau.p:
        return False
    p = sigma.p
    if {perm_key(x) for x in sigma.elements} & {perm_key(x) for x in tau.elements}:
        return False
    for i in range(p):
        for j in range(p):
            k = (2 * i - j) % p
            if rack_op(sigma.elements[i], tau.elements[j]) != tau.elements[k]:
                return False
            if rack_op(tau.elements[i], sigma.elements[j]) != sigma.elements[k]:
                return False
    return True


def _odd_prime_factors(m: int) -> list[int]:
    out, d = [], 3
    while m % 2 == 0:
        m //= 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 2
    if m > 1:
        out.append(m)
    return out


def dp_chain(s: Perm, x: Perm, limit: int = 512) -> Optional[list]:
    """The sequence s, x, x |> s, ... up to its period, or None if it never closes."""
    seq = [s, x]
    while len(seq) <= limit:
        nxt = rack_op(seq[-1], seq[-2])
        if nxt == s and rack_op(nxt, seq[-1]) == x:
            return seq
        seq.append(nxt)
    return None


# ---------------------------------------------------------------------------
# the octahedral rack


def _octahedral_reference() -> tuple:
    s1 = from_cycles([(1, 2, 3, 4)], 4)
    s2 = from_cycles([(1, 2, 4, 3)], 4)
    s3 = rack_op(s2, s1)
    s4 = rack_op(s3, s1)
    s5 = rack_op(s4, s1)
    return (s1, s2, s3, s4, s5, inverse(s1))


OCTAHEDRAL = _octahedral_reference()
OCT_TABLE = tuple(tuple(OCTAHEDRAL.index(rack_op(x, y)) for y in OCTAHEDRAL) for x in OCTAHEDRAL)
ANTIPODE = tuple(OCTAHEDRAL.index(inverse(x)) for x in OCTAHEDRAL)


def rack_table(T: Sequence[Perm]) -> Optional[tuple]:
    """Index table of T under |>, or None when T is not closed."""
    pos = {perm_key(x): i for i, x in enumerate(T)}
    if len(pos) != len(T):
        return None
    rows = []
    for x in T:
        row = []
        for y in T:
            k = pos.get(perm_key(rack_op(x, y)))
            if k is None:
                return None
            row.append(k)
        rows.append(tuple(row))
    return tuple(rows)


def verify_type_O(T: Sequence[Perm]) -> Optional[tuple]:
    """Bijection f with T[i] |> T[j] = T[k] iff OCT_TABLE[f[i]][f[j]] = f[k]."""
    if len(T) != 6:
        return None
    tab = rack_table(T)
    if tab is None:
        return None
    for f in itertools.permutations(range(6)):
        if all(OCT_TABLE[f[i]][f[j]] == f[tab[i][j]] for i in range(6) for j in range(6)):
            return f
    return None


@dataclass(frozen=True)
class O2Family:
    sigma: tuple
    tau: tuple
    g: Optional[Perm] = None  # g |> sigma_1 = tau_1
    d: Optional[int] = None   # sigma_6 = sigma_1^d
    e: Optional[int] = None   # tau_1 = sigma_1^e


def o2_violation(fam: O2Family) -> Optional[str]:
    sig, tau = tuple(fam.sigma), tuple(fam.tau)
    if len(sig) != 6 or len(tau) != 6:
        return "both sextets need six elements"
    if len({perm_key(x) for x in sig + tau}) != 12:
        return "the twelve elements are not distinct"
    if verify_type_O(sig) is None:
        return "sigma sextet is not octahedral"
    if verify_type_O(tau) is None:
        return "tau sextet is not octahedral"
    tab = rack_table(sig)
    for i in range(6):
        for j in range(6):
            k = tab[i][j]
            if rack_op(sig[i], tau[j]) != tau[k]:
                return f"sigma_{i + 1} |> tau_{j + 1} != tau_{k + 1}"
            if rack_op(tau[i], sig[j]) != sig[k]:
                return f"tau_{i + 1} |> sigma_{j + 1} != sigma_{k + 1}"
    if fam.g is not None and rack_op(fam.g, sig[0]) != tau[0]:
        return "g |> sigma_1 != tau_1"
    if fam.d is not None and power(sig[0], fam.d) != sig[5]:
        return f"sigma_6 != sigma_1^{fam.d}"
    if fam.e is not None and power(sig[0], fam.e) != tau[0]:
        return f"tau_1 != sigma_1^{fam.e}"
    return None


def verify_o2(fam: O2Family) -> bool:
    return o2_violation(fam) is None


def octahedral_sextet(s: Perm, b: Perm) -> Optional[tuple]:
    """sigma_1 = s, sigma_2 = b, the chain sigma_{k+1} = sigma_k |> sigma_1, and the antipode.

    Returns the sextet in the reference labeling, or None when s and b do
    not generate an octahedral rack in that labeling.
    """
    if commute(s, b):
        return None
    s3 = rack_op(b, s)
    s4 = rack_op(s3, s)
    s5 = rack_op(s4, s)
    # the antipode is the one element besides s that commutes with s
    anti = rack_op(b, s3)
    sig = (s, b, s3, s4, s5, anti)
    tab = rack_table(sig)
    if tab != OCT_TABLE:
        return None
    return sig


def close_tau(sig: Sequence[Perm], t1: Perm) -> Optional[tuple]:
    """Extend tau_1 by tau_{i |> j} = sigma_i |> tau_j; None on conflict."""
    tab = rack_table(sig)
    tau: list = [None] * 6
    tau[0] = t1
    changed = True
    while changed:
        changed = False
        for i in range(6):
            for j in range(6):
                if tau[j] is None:
                    continue
                k = tab[i][j]
                y = rack_op(sig[i], tau[j])
                if tau[k] is None:
                    tau[k] = y
                    changed = True
                elif tau[k] != y:
                    return None
    if any(t is None for t in tau):
        return None
    return tuple(tau)


def power_exponent(s: Perm, x: Perm) -> Optional[int]:
    """Least d >= 1 with s^d = x."""
    m = element_order(s)
    y = s
    for d in range(1, m + 1):
        if y == x:
            return d
        y = mul(y, s)
    return None


# ---------------------------------------------------------------------------
# searches
#
# Both searches run over finite pools that contain every possible family
# through s, up to conjugation by G^s, so an empty result is a proof of
# absence rather than a failure to look far enough.


@dataclass
class _Counter:
    budget: int
    used: int = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.budget:
            raise SearchBudgetExceeded(f"search budget {self.budget} exhausted")


def _orbit_reps(pool: Sequence[Perm], gens: Sequence[Perm]) -> list:
    classes, _, _ = centralizer_classes(sorted(pool), gens)
    return [c[0] for c in classes]


def _cent_gens(G: PermGroup, s: Perm, cent: Optional[Sequence[Perm]]) -> list:
    if cent is None:
        cent = centralizer_elements(G, s)
    return list(group_from_elements(G.degree, cent).generators) if len(cent) > 1 else []


def dp_candidates(G: PermGroup, s: Perm, cent: Optional[Sequence[Perm]] = None,
                  registry: Optional[ClassRegistry] = None, budget: int = DEFAULT_SEARCH_BUDGET) -> list:
    """Conjugates x of s in C_G(s^2), not commuting with s, one per G^s-orbit.

    Every member of a D_p family with sigma_0 = s centralizes s^2, since
    s^2 |> sigma_j = s |> sigma_{-j} = sigma_j.
    """
    ctr = _Counter(budget)
    s2 = mul(s, s)
    ct = cycle_type(s)
    if is_identity(s2):
        if registry is None:
            raise ValueError("a class registry is needed for involutions")
        orb = registry.orbit(registry.class_of(s))
        if orb is None:
            raise SearchBudgetExceeded("class too large to enumerate")
        raw = [v[0] for v in orb.values()]
        ctr.tick(len(raw))
        conj_checked = True
    else:
        raw = centralizer_elements(G, s2, budget)
        ctr.tick(len(raw))
        conj_checked = False
    pool = [x for x in raw if cycle_type(x) == ct and not commute(x, s)]
    out = []
    for x in _orbit_reps(pool, _cent_gens(G, s, cent)):
        if conj_checked or is_conjugate(G, s, x) is not None:
            out.append(x)
    return out


def iter_dp(G: PermGroup, s: Perm, p: Optional[int] = None, cent: Optional[Sequence[Perm]] = None,
            registry: Optional[ClassRegistry] = None,
            budget: int = DEFAULT_SEARCH_BUDGET) -> Iterator[DpFamily]:
    """Every D_p family with sigma_0 = s (odd p, or the given p), up to G^s-conjugacy."""
    for x in dp_candidates(G, s, cent, registry, budget):
        seq = dp_chain(s, x)
        if seq is None:
            continue
        m = len(seq)
        if not verify_dp(DpFamily(m, tuple(seq))):
            continue
        primes = [p] if p is not None else _odd_prime_factors(m)
        for q in primes:
            if m % q:
                continue
            step = m // q
            fam = DpFamily(q, tuple(seq[step * i] for i in range(q)))
            if verify_dp(fam):
                yield fam


def search_dp(G: PermGroup, s: Perm, p: Optional[int] = None, cent: Optional[Sequence[Perm]] = None,
              registry: Optional[ClassRegistry] = None,
              budget: int = DEFAULT_SEARCH_BUDGET) -> Optional[DpFamily]:
    """First D_p family through s, smallest p first."""
    fams = list(iter_dp(G, s, p, cent, registry, budget))
    if not fams:
        return None
    return min(fams, key=lambda f: f.p)


def braid_candidates(G: PermGroup, s: Perm, cent: Sequence[Perm], registry: ClassRegistry,
                     budget: int = DEFAULT_SEARCH_BUDGET) -> list:
    """All b with s b s = b s b and b != s, up to G^s-conjugacy.

    With D = s b s one has D s D^-1 = b and D^2 in G^s, so b = D |> s for a
    square root D of some z in G^s.  Running z over G^s-class
    representatives covers every b up to G^s-conjugacy.
    """
    ctr = _Counter(budget)
    H = group_from_elements(G.degree, cent) if len(cent) > 1 else None
    gens = list(H.generators) if H is not None else []
    zclasses, _, _ = centralizer_classes(sorted(cent), gens)
    seen: set = set()
    found = []
    for zc in zclasses:
        z = zc[0]
        if is_identity(z):
            roots = []
            for idx, c in enumerate(registry.classes):
                if c.order != 2:
                    continue
                orb = registry.orbit(idx)
                if orb is None:
                    raise SearchBudgetExceeded("involution class too large to enumerate")
                roots.extend(v[0] for v in orb.values())
        else:
            roots = [d for d in centralizer_elements(G, z, budget) if mul(d, d) == z]
        ctr.tick(len(roots))
        for d in roots:
            b = rack_op(d, s)
            if b == s or commute(b, s):
                continue
            if mul(mul(s, b), s) != mul(mul(b, s), b):
                continue
            k = perm_key(b)
            if k not in seen:
                seen.add(k)
                found.append(b)
    return _orbit_reps(found, gens) if found else []


def iter_o2(G: PermGroup, s: Perm, inter: ClassIntersection, registry: ClassRegistry,
            budget: int = DEFAULT_SEARCH_BUDGET) -> Iterator[O2Family]:
    """O^(2) families with sigma_1 = s, up to conjugation by G^s.

    tau_1 commutes with sigma_1 and sigma_6, so it is drawn from O_s meet G^s.
    """
    if registry.classes[registry.class_of(s)].size < 12:
        return
    reps_by_key = {perm_key(x): g for x, g in zip(inter.members, inter.reps)}
    for b in braid_candidates(G, s, inter.centralizer, registry, budget):
        sig = octahedral_sextet(s, b)
        if sig is None:
            continue
        skeys = {perm_key(x) for x in sig}
        for t1 in inter.members:
            if perm_key(t1) in skeys or not commute(t1, sig[5]):
                continue
            tau = close_tau(sig, t1)
            if tau is None:
                continue
            fam = O2Family(sig, tau, reps_by_key[perm_key(t1)],
                           power_exponent(s, sig[5]), power_exponent(s, t1))
            if verify_o2(fam):
                yield fam


def search_o2(G: PermGroup, s: Perm, inter: ClassIntersection, registry: ClassRegistry,
              budget: int = DEFAULT_SEARCH_BUDGET) -> Optional[O2Family]:
    return next(iter_o2(G, s, inter, registry, budget), None)
