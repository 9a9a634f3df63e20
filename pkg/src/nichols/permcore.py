"""Permutation groups of small degree.

Permutations are plain tuples of images on ``0..n-1``.  ``compose(p, q)`` is
the map ``x -> p[q[x]]``, so ``g x g^-1`` (``conjugate(g, x)``) is the rack
operation ``g |> x``.

The group engine is built around stabilizer chains.  ``build_group`` runs a
deterministic Schreier-Sims; chains with other base orders are rebuilt from
random elements and stop as soon as the order matches, which is exact because
the order is already known.  Conjugacy tests and centralizers use a backtrack
over base images in which the base runs along the cycles of the element, so
every point after the first one in a cycle is forced.
"""

from __future__ import annotations

import math
import random
import re
from collections import OrderedDict, deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

Perm = tuple

MAX_DEGREE = 32
DEFAULT_ENUMERATION_BUDGET = 10**5
DEFAULT_ORBIT_BUDGET = 2**17
DEFAULT_NODE_BUDGET = 5 * 10**6


class BudgetExceeded(RuntimeError):
    """A configured enumeration or search limit was hit."""


class NotInGroup(ValueError):
    pass


# ---------------------------------------------------------------------------
# elementwise operations


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(p: Perm) -> bool:
    return all(i == x for i, x in enumerate(p))


def check_perm(p: Sequence[int]) -> Perm:
    p = tuple(p)
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"not a permutation: {p!r}")
    return p


def compose(p: Perm, q: Perm) -> Perm:
    """``p o q``: apply ``q`` first, then ``p``."""
    if len(p) != len(q):
        raise ValueError("degree mismatch")
    return tuple([p[i] for i in q])


def mul(p: Perm, q: Perm) -> Perm:
    # unchecked compose for inner loops
    return tuple([p[i] for i in q])


def inverse(p: Perm) -> Perm:
    r = [0] * len(p)
    for i, j in enumerate(p):
        r[j] = i
    return tuple(r)


def conjugate(g: Perm, x: Perm) -> Perm:
    """``g x g^-1``."""
    if len(g) != len(x):
        raise ValueError("degree mismatch")
    r = [0] * len(x)
    for i, xi in enumerate(x):
        r[g[i]] = g[xi]
    return tuple(r)


def cycles(p: Perm, fixed: bool = False) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        c = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            seen[j] = True
            c.append(j)
            j = p[j]
        if len(c) > 1 or fixed:
            out.append(tuple(c))
    return out


def cycle_type(p: Perm) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(p, fixed=True)), reverse=True))


def element_order(p: Perm) -> int:
    return math.lcm(*[len(c) for c in cycles(p, fixed=True)]) if p else 1


def power(p: Perm, k: int) -> Perm:
    r = list(range(len(p)))
    for c in cycles(p):
        m = len(c)
        s = k % m
        for i, a in enumerate(c):
            r[a] = c[(i + s) % m]
    return tuple(r)


def commute(a: Perm, b: Perm) -> bool:
    return all(a[b[i]] == b[a[i]] for i in range(len(a)))


def perm_key(p: Perm) -> bytes:
    # one byte per image; degrees are capped at 32
    return bytes(p)


def from_cycles(cycs: Iterable[Sequence[int]], n: int, one_based: bool = True) -> Perm:
    r = list(range(n))
    off = 1 if one_based else 0
    for c in cycs:
        c = [x - off for x in c]
        if len(set(c)) != len(c) or any(not 0 <= x < n for x in c):
            raise ValueError(f"bad cycle {c!r} for degree {n}")
        for a, b in zip(c, c[1:] + c[:1]):
            r[a] = b
    return check_perm(r)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Perm:
    """Parse 1-based disjoint-cycle notation such as ``(1,2,3)(4,5)``.

    Cycles are composed right to left, which is irrelevant for disjoint ones.
    """
    text = text.strip()
    if text in ("", "()", "id"):
        return identity(n)
    stripped = _CYCLE_RE.sub("", text).strip()
    if stripped:
        raise ValueError(f"could not parse permutation {text!r}")
    result = identity(n)
    for m in _CYCLE_RE.finditer(text):
        body = m.group(1).strip()
        if not body:
            continue
        pts = [int(t) for t in re.split(r"[,\s]+", body) if t]
        result = compose(result, from_cycles([pts], n))
    return result


def format_cycles(p: Perm) -> str:
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cs)


# ---------------------------------------------------------------------------
# stabilizer chains


@dataclass
class _Level:
    point: int
    gens: list
    trans: dict = field(default_factory=dict)  # orbit point -> u with u[point] = orbit point
    inv: dict = field(default_factory=dict)  # orbit point -> u^-1

    def rebuild(self, n: int) -> None:
        e = identity(n)
        trans = {self.point: e}
        inv = {self.point: e}
        queue = [self.point]
        for p in queue:
            u = trans[p]
            for s in self.gens:
                q = s[p]
                if q not in trans:
                    v = mul(s, u)
                    trans[q] = v
                    inv[q] = inverse(v)
                    queue.append(q)
        self.trans = trans
        self.inv = inv


class StabChain:
    """Base, strong generators and explicit transversals."""

    def __init__(self, n: int, levels: list[_Level]):
        self.n = n
        self.levels = levels

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    @property
    def order(self) -> int:
        return math.prod(len(lv.trans) for lv in self.levels)

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            q = g[lv.point]
            uinv = lv.inv.get(q)
            if uinv is None:
                return g, i
            g = mul(uinv, g)
        return g, len(self.levels)

    def contains(self, g: Perm) -> bool:
        h, _ = self.sift(g)
        return is_identity(h)

    def strong_generators(self) -> list[Perm]:
        seen, out = set(), []
        for lv in self.levels:
            for s in lv.gens:
                if s not in seen:
                    seen.add(s)
                    out.append(s)
        return out

    def elements(self) -> Iterator[Perm]:
        """All group elements, as products of transversal elements."""
        n = self.n

        def rec(i, acc):
            if i == len(self.levels):
                yield acc
                return
            for u in self.levels[i].trans.values():
                yield from rec(i + 1, mul(acc, u))

        yield from rec(0, identity(n))


def _first_moved(g: Perm) -> int:
    for i, x in enumerate(g):
        if i != x:
            return i
    raise ValueError("identity has no moved point")


def schreier_sims(n: int, gens: Sequence[Perm], base: Sequence[int] = ()) -> StabChain:
    """Deterministic Schreier-Sims with sifted Schreier generators."""
    gens = [g for g in dict.fromkeys(gens) if not is_identity(g)]
    pts = list(dict.fromkeys(base))
    for g in gens:
        if all(g[b] == b for b in pts):
            pts.append(_first_moved(g))
    levels = []
    for i, b in enumerate(pts):
        fixed = pts[:i]
        lv = _Level(b, [g for g in gens if all(g[c] == c for c in fixed)])
        lv.rebuild(n)
        levels.append(lv)
    chain = StabChain(n, levels)
    if not levels:
        return chain
    # checked[i]: Schreier generators already known to sift at level i
    checked: list[set] = [set() for _ in levels]
    i = len(levels) - 1
    while i >= 0:
        lv = levels[i]
        grew = False
        for p in list(lv.trans):
            u = lv.trans[p]
            for s in lv.gens:
                tag = (p, s)
                if tag in checked[i]:
                    continue
                q = s[p]
                h = mul(lv.inv[q], mul(s, u))
                checked[i].add(tag)
                if is_identity(h):
                    continue
                res, j = chain.sift(h, i + 1)
                if is_identity(res):
                    continue
                if j == len(levels):
                    nl = _Level(_first_moved(res), [])
                    levels.append(nl)
                    checked.append(set())
                for l in range(i + 1, j + 1):
                    levels[l].gens.append(res)
                    levels[l].rebuild(n)
                i = j
                grew = True
                break
            if grew:
                break
        if not grew:
            i -= 1
    return chain


class ProductReplacement:
    """Product-replacement random elements with a private seeded RNG."""

    def __init__(self, gens: Sequence[Perm], n: int, seed: int = 0, slots: int = 10, burn: int = 60):
        self.rng = random.Random(seed)
        gens = list(gens) or [identity(n)]
        k = max(slots, len(gens))
        self.state = [gens[i % len(gens)] for i in range(k)]
        self.acc = identity(n)
        for _ in range(burn):
            self.next()

    def next(self) -> Perm:
        st, rng = self.state, self.rng
        i, j = rng.sample(range(len(st)), 2)
        b = st[j] if rng.random() < 0.5 else inverse(st[j])
        if rng.random() < 0.5:
            st[i] = mul(st[i], b)
        else:
            st[i] = mul(b, st[i])
        self.acc = mul(self.acc, st[i])
        return self.acc


def random_chain(n: int, gens: Sequence[Perm], order: int, base: Sequence[int], seed: int = 1) -> StabChain:
    """Chain with a prescribed base prefix, built from random elements.

    Stops when the product of orbit lengths reaches ``order``; since every
    element sifted in lies in the group, that equality certifies the chain.
    """
    pts = list(dict.fromkeys(base))
    levels = [_Level(b, []) for b in pts]
    for lv in levels:
        lv.rebuild(n)
    chain = StabChain(n, levels)
    if order == 1:
        return chain
    pr = ProductReplacement(gens, n, seed=seed, burn=20)
    pool = list(gens)
    while chain.order < order:
        g = pool.pop() if pool else pr.next()
        res, j = chain.sift(g)
        if is_identity(res):
            continue
        if j == len(levels):
            levels.append(_Level(_first_moved(res), []))
        for l in range(j + 1):
            levels[l].gens.append(res)
            levels[l].rebuild(n)
    return chain


# ---------------------------------------------------------------------------
# groups


class PermGroup:
    """Permutation group given by generators, with a stabilizer chain."""

    def __init__(self, degree: int, generators: Sequence[Perm], chain: Optional[StabChain] = None,
                 name: str = ""):
        if degree > MAX_DEGREE:
            raise ValueError(f"degree {degree} exceeds {MAX_DEGREE}")
        self.degree = degree
        self.generators = [check_perm(g) for g in generators]
        for g in self.generators:
            if len(g) != degree:
                raise ValueError("generator degree mismatch")
        self.name = name
        self.chain = chain if chain is not None else schreier_sims(degree, self.generators)
        self.order = self.chain.order
        self._chains: OrderedDict = OrderedDict()
        self._elements: Optional[list] = None

    def __repr__(self) -> str:
        tag = self.name or "PermGroup"
        return f"<{tag} degree={self.degree} order={self.order}>"

    @property
    def identity(self) -> Perm:
        return identity(self.degree)

    def contains(self, g: Perm) -> bool:
        return len(g) == self.degree and self.chain.contains(g)

    __contains__ = contains

    def chain_with_base(self, base: Sequence[int]) -> StabChain:
        key = tuple(base)
        ch = self._chains.get(key)
        if ch is None:
            gens = self.chain.strong_generators() or self.generators
            ch = random_chain(self.degree, gens, self.order, key)
            self._chains[key] = ch
            if len(self._chains) > 256:
                self._chains.popitem(last=False)
        else:
            self._chains.move_to_end(key)
        return ch

    def random_elements(self, seed: int = 0) -> ProductReplacement:
        return ProductReplacement(self.generators, self.degree, seed=seed)

    def elements(self, budget: int = DEFAULT_ENUMERATION_BUDGET) -> list:
        if self._elements is None:
            if self.order > budget:
                raise BudgetExceeded(f"group order {self.order} exceeds enumeration budget {budget}")
            self._elements = sorted(self.chain.elements())
        return self._elements


def build_group(degree: int, generators: Sequence[Perm], name: str = "") -> PermGroup:
    return PermGroup(degree, generators, name=name)


def group_from_elements(degree: int, elements: Sequence[Perm], name: str = "") -> PermGroup:
    """Subgroup generated by a known, complete element list.

    Generators are picked greedily, so a handful usually suffices.
    """
    gens: list = []
    chain = StabChain(degree, [])
    total = len(elements)
    for g in elements:
        if chain.order == total:
            break
        if not chain.contains(g):
            gens.append(g)
            chain = schreier_sims(degree, gens, chain.base)
    G = PermGroup(degree, gens or [identity(degree)], chain=chain, name=name)
    if G.order != total:
        raise ValueError("element list is not a group")
    G._elements = sorted(elements)
    return G


# ---------------------------------------------------------------------------
# backtrack search for g with g x g^-1 = y


def _search_base(x: Perm) -> tuple[list[int], list[int], list[int]]:
    """Base along the cycles of ``x``, longest cycles first.

    Returns the base, and for each base position the index of the previous
    point in the same cycle (-1 at a cycle start) and the index of the cycle
    start when the position closes its cycle (-1 otherwise).
    """
    cs = sorted(cycles(x, fixed=True), key=lambda c: (-len(c), c))
    base, prev, close = [], [], []
    for c in cs:
        s = len(base)
        for t, pnt in enumerate(c):
            base.append(pnt)
            prev.append(-1 if t == 0 else len(base) - 2)
            close.append(s if (t == len(c) - 1 and len(c) > 1) else -1)
    return base, prev, close


def _backtrack(G: PermGroup, x: Perm, y: Perm, find_all: bool, node_budget: int) -> list:
    n = G.degree
    if cycle_type(x) != cycle_type(y):
        return []
    base, prev, close = _search_base(x)
    chain = G.chain_with_base(base)
    levels = chain.levels
    # levels past the last non-trivial orbit pin the element completely
    last = max((i for i, lv in enumerate(levels) if len(lv.trans) > 1), default=-1)
    ylen = [0] * n
    for c in cycles(y, fixed=True):
        for pnt in c:
            ylen[pnt] = len(c)
    xlen = [0] * n
    for c in cycles(x, fixed=True):
        for pnt in c:
            xlen[pnt] = len(c)
    found: list = []
    nodes = 0
    e = identity(n)
    # explicit stack of (level, h, h^-1, images)
    stack = [(0, e, e, ())]
    while stack:
        i, h, hinv, imgs = stack.pop()
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded("conjugacy backtrack exceeded node budget")
        if i > last:
            # h is the only candidate; check it fully
            if all(h[x[k]] == y[h[k]] for k in range(n)):
                found.append(h)
                if not find_all:
                    return found
            continue
        lv = levels[i]
        b = base[i]
        cands = []
        if prev[i] >= 0:
            c = y[imgs[prev[i]]]
            p = hinv[c]
            if p in lv.trans:
                cands.append(p)
        else:
            want = xlen[b]
            for p in lv.trans:
                if ylen[h[p]] == want:
                    cands.append(p)
        cl = close[i]
        children = []
        for p in cands:
            u = lv.trans[p]
            nh = mul(h, u)
            c = nh[b]
            if cl >= 0 and y[c] != imgs[cl]:
                continue
            nhinv = mul(lv.inv[p], hinv)
            children.append((i + 1, nh, nhinv, imgs + (c,)))
        # reverse so the first candidate is explored first
        stack.extend(reversed(children))
    return found


def is_conjugate(G: PermGroup, x: Perm, y: Perm, node_budget: int = DEFAULT_NODE_BUDGET) -> Optional[Perm]:
    """Witness ``g`` with ``g x g^-1 = y``, or ``None``."""
    if x == y:
        return G.identity
    if cycle_type(x) != cycle_type(y):
        return None
    res = _backtrack(G, x, y, False, node_budget)
    return res[0] if res else None


def centralizer_elements(G: PermGroup, s: Perm, budget: int = DEFAULT_ENUMERATION_BUDGET,
                         node_budget: int = DEFAULT_NODE_BUDGET) -> list:
    if s not in G:
        raise NotInGroup("element is not in the group")
    if is_identity(s):
        return G.elements(budget)
    els = _backtrack(G, s, s, True, node_budget)
    if len(els) > budget:
        raise BudgetExceeded(f"centralizer of order {len(els)} exceeds budget {budget}")
    return sorted(els)


def centralizer(G: PermGroup, s: Perm, budget: int = DEFAULT_ENUMERATION_BUDGET) -> PermGroup:
    if s not in G:
        raise NotInGroup("element is not in the group")
    if is_identity(s):
        return G
    return group_from_elements(G.degree, centralizer_elements(G, s, budget))


def is_real_class(G: PermGroup, s: Perm) -> bool:
    return is_conjugate(G, s, inverse(s)) is not None


def conjugation_orbit(G: PermGroup, x: Perm, budget: int = DEFAULT_ORBIT_BUDGET) -> dict:
    """Hashed conjugation orbit: key -> (element, parent key, generator index)."""
    k0 = perm_key(x)
    orbit = {k0: (x, None, -1)}
    queue = deque([x])
    while queue:
        z = queue.popleft()
        kz = perm_key(z)
        for gi, g in enumerate(G.generators):
            w = conjugate(g, z)
            kw = perm_key(w)
            if kw not in orbit:
                orbit[kw] = (w, kz, gi)
                if len(orbit) > budget:
                    raise BudgetExceeded(f"conjugation orbit exceeds budget {budget}")
                queue.append(w)
    return orbit


def orbit_witness(G: PermGroup, orbit: dict, y: Perm) -> Optional[Perm]:
    """Conjugator from the orbit root to ``y`` using parent pointers."""
    k = perm_key(y)
    if k not in orbit:
        return None
    g = G.identity
    while True:
        _, parent, gi = orbit[k]
        if parent is None:
            return g
        g = mul(g, G.generators[gi])
        k = parent


# ---------------------------------------------------------------------------
# conjugacy classes


@dataclass
class ConjClass:
    representative: Perm
    size: int
    centralizer_order: int
    label: int = 0
    _group: Optional[PermGroup] = field(default=None, repr=False)
    _cent_elements: Optional[list] = field(default=None, repr=False)
    _centralizer: Optional[PermGroup] = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return element_order(self.representative)

    @property
    def centralizer_elements(self) -> list:
        if self._cent_elements is None:
            self._cent_elements = centralizer_elements(self._group, self.representative)
        return self._cent_elements

    @property
    def centralizer(self) -> PermGroup:
        if self._centralizer is None:
            if is_identity(self.representative):
                self._centralizer = self._group
            else:
                self._centralizer = group_from_elements(self._group.degree, self.centralizer_elements)
        return self._centralizer


class ClassRegistry:
    """Conjugacy classes of ``G`` with class identification of arbitrary elements."""

    def __init__(self, G: PermGroup, classes: list[ConjClass]):
        self.G = G
        self.classes = classes
        self.by_type: dict = {}
        for idx, c in enumerate(classes):
            self.by_type.setdefault(cycle_type(c.representative), []).append(idx)
        self.orbit_budget = DEFAULT_ORBIT_BUDGET
        self._orbits: dict = {}
        self._memo: dict = {}

    def __len__(self) -> int:
        return len(self.classes)

    def __getitem__(self, i: int) -> ConjClass:
        return self.classes[i]

    def __iter__(self):
        return iter(self.classes)

    def orbit(self, idx: int, budget: Optional[int] = None) -> Optional[dict]:
        if budget is None:
            budget = self.orbit_budget
        if idx not in self._orbits:
            c = self.classes[idx]
            self._orbits[idx] = conjugation_orbit(self.G, c.representative, budget) if c.size <= budget else None
        return self._orbits[idx]

    def identify(self, g: Perm) -> tuple[int, Perm]:
        """Class index of ``g`` and a witness ``w`` with ``w rep w^-1 = g``."""
        k = perm_key(g)
        hit = self._memo.get(k)
        if hit is not None:
            return hit
        cands = self.by_type.get(cycle_type(g), [])
        result = None
        for idx in cands:
            rep = self.classes[idx].representative
            w = is_conjugate(self.G, rep, g)
            if w is not None:
                result = (idx, w)
                break
        if result is None:
            raise NotInGroup("element matches no known class")
        if len(self._memo) < 200000:
            self._memo[k] = result
        return result

    def class_of(self, g: Perm) -> int:
        cands = self.by_type.get(cycle_type(g), [])
        if len(cands) == 1:
            return cands[0]
        return self.identify(g)[0]

    def in_class(self, g: Perm, idx: int) -> Optional[Perm]:
        """Witness that ``g`` lies in class ``idx``, else None."""
        rep = self.classes[idx].representative
        if cycle_type(g) != cycle_type(rep):
            return None
        return is_conjugate(self.G, rep, g)


def conjugacy_classes(G: PermGroup, seed: int = 0, budget: int = DEFAULT_ENUMERATION_BUDGET,
                      max_samples: int = 200000) -> ClassRegistry:
    """All classes by random sampling with conjugacy dedup.

    Powers of every sample are tried as well, which reaches small classes of
    elements of low order quickly.  Sampling stops once the class sizes add
    up to the group order.
    """
    n = G.degree
    e = identity(n)
    reps = [e]
    sizes = [1]
    corders = [G.order]
    cents: list = [None]
    by_type: dict = {cycle_type(e): [0]}
    total = 1
    pr = G.random_elements(seed)
    samples = 0
    while total < G.order:
        samples += 1
        if samples > max_samples:
            raise BudgetExceeded("class sampling did not terminate")
        r = pr.next()
        m = element_order(r)
        for d in _divisors(m):
            z = power(r, d)
            ct = cycle_type(z)
            known = by_type.get(ct, [])
            if any(is_conjugate(G, reps[i], z) is not None for i in known):
                continue
            els = centralizer_elements(G, z, budget)
            reps.append(z)
            corders.append(len(els))
            sizes.append(G.order // len(els))
            cents.append(els)
            by_type.setdefault(ct, []).append(len(reps) - 1)
            total += G.order // len(els)
            if total >= G.order:
                break
    if total != G.order:
        raise RuntimeError("class sizes overshoot the group order")
    order_idx = sorted(range(len(reps)), key=lambda i: (element_order(reps[i]), sizes[i], reps[i]))
    classes = []
    for lab, i in enumerate(order_idx, start=1):
        classes.append(ConjClass(reps[i], sizes[i], corders[i], lab, G, cents[i]))
    return ClassRegistry(G, classes)


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m) if m % d == 0]


# ---------------------------------------------------------------------------
# class meets centralizer


@dataclass
class ClassIntersection:
    base: Perm
    members: list
    reps: list
    centralizer: list  # elements of G^s

    def __len__(self) -> int:
        return len(self.members)


def centralizer_classes(elements: Sequence[Perm], gens: Sequence[Perm]) -> tuple[list, dict, dict]:
    """Conjugacy classes of an enumerated group.

    Returns the list of classes (each a list of elements, first one the
    representative), a map key -> class index, and a map key -> conjugator
    ``h`` with ``h rep h^-1 = element``.
    """
    cls_of: dict = {}
    conj: dict = {}
    classes: list = []
    for x in elements:
        kx = perm_key(x)
        if kx in cls_of:
            continue
        idx = len(classes)
        e = identity(len(x))
        cls_of[kx] = idx
        conj[kx] = e
        members = [x]
        queue = deque([x])
        while queue:
            z = queue.popleft()
            hz = conj[perm_key(z)]
            for g in gens:
                w = conjugate(g, z)
                kw = perm_key(w)
                if kw not in cls_of:
                    cls_of[kw] = idx
                    conj[kw] = mul(g, hz)
                    members.append(w)
                    queue.append(w)
        classes.append(members)
    return classes, cls_of, conj


def class_meet_centralizer(G: PermGroup, s: Perm, cent: Optional[Sequence[Perm]] = None,
                           budget: int = DEFAULT_ENUMERATION_BUDGET) -> ClassIntersection:
    """``O_s`` intersected with ``G^s``, with witnesses ``g_t |> s = sigma_t``."""
    if cent is None:
        cent = centralizer_elements(G, s, budget)
    H = group_from_elements(G.degree, cent) if len(cent) > 1 else None
    gens = H.generators if H is not None else []
    classes, cls_of, conj = centralizer_classes(cent, gens)
    ct = cycle_type(s)
    members, reps = [s], [G.identity]
    sk = perm_key(s)
    for members_c in classes:
        r = members_c[0]
        if cycle_type(r) != ct:
            continue
        w = is_conjugate(G, s, r)
        if w is None:
            continue
        for z in sorted(members_c):
            kz = perm_key(z)
            if kz == sk:
                continue
            members.append(z)
            reps.append(mul(conj[kz], w))
    order = [0] + sorted(range(1, len(members)), key=lambda i: members[i])
    return ClassIntersection(s, [members[i] for i in order], [reps[i] for i in order], list(cent))
