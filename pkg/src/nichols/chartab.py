"""Character tables.

Tables are either computed with the Burnside-Dixon method for groups small
enough to enumerate, or read from ``.ctbl`` text files and bound to the
classes of a permutation group.
"""

from __future__ import annotations

import hashlib
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import cyclo
from .cyclo import Cyclotomic, _prime_factors, root_of_unity
from .permcore import (
    DEFAULT_ENUMERATION_BUDGET,
    BudgetExceeded,
    ClassRegistry,
    NotInGroup,
    PermGroup,
    Perm,
    centralizer_classes,
    cycle_type,
    element_order,
    format_cycles,
    identity,
    inverse,
    mul,
    parse_cycles,
    perm_key,
    power,
)


class TableError(ValueError):
    """Malformed or inconsistent character table."""


class BindingError(TableError):
    """A table cannot be matched to the classes of a group."""


@dataclass
class ClassInfo:
    order: int
    size: int
    representative: Optional[Perm] = None


@dataclass
class CharacterTable:
    group_order: int
    classes: list
    irreducibles: list
    power_maps: dict = field(default_factory=dict)
    name: str = ""
    group: Optional[PermGroup] = None
    locate: Optional[Callable[[Perm], int]] = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def degrees(self) -> list[int]:
        return [int(row[0].rational()) for row in self.irreducibles]

    def irrep(self, i: int) -> "Irrep":
        return Irrep(self, i)

    def irreps(self) -> list["Irrep"]:
        return [Irrep(self, i) for i in range(len(self.irreducibles))]

    def centralizer_order(self, c: int) -> int:
        return self.group_order // self.classes[c].size

    def class_of(self, x: Perm) -> int:
        if self.locate is None:
            raise TableError("table is not bound to a group")
        return self.locate(x)

    def inverse_class(self, c: int) -> int:
        rep = self.classes[c].representative
        if rep is not None and self.locate is not None:
            return self.locate(inverse(rep))
        col = [row[c].conj() for row in self.irreducibles]
        hits = [d for d in range(len(self.classes)) if [row[d] for row in self.irreducibles] == col]
        return hits[0]

    def check(self) -> None:
        """Raise TableError unless both orthogonality relations hold exactly."""
        check_orthogonality(self)


@dataclass(frozen=True)
class Irrep:
    table: CharacterTable
    index: int

    @property
    def values(self) -> tuple:
        return tuple(self.table.irreducibles[self.index])

    @property
    def degree(self) -> int:
        return int(self.table.irreducibles[self.index][0].rational())

    def __call__(self, c: int) -> Cyclotomic:
        return self.table.irreducibles[self.index][c]

    def __repr__(self) -> str:
        return f"Irrep({self.table.name or 'table'}, {self.index + 1}, deg={self.degree})"


# ---------------------------------------------------------------------------
# queries used by the criteria


def q_ss(rho: Irrep, s_class: int) -> Cyclotomic:
    """Scalar by which a central element acts: chi(s)/chi(1)."""
    return rho(s_class) / rho.degree


def character_at(rho: Irrep, x: Perm) -> Cyclotomic:
    return rho(rho.table.class_of(x))


def eigenvalue_multiset(rho: Irrep, sigma: Perm) -> dict:
    """Eigenvalues of ``rho(sigma)`` as ``{(r, k): multiplicity}`` with value zeta_r^k."""
    T = rho.table
    r = element_order(sigma)
    vals = []
    x = identity(len(sigma))
    for _ in range(r):
        vals.append(rho(T.class_of(x)))
        x = mul(x, sigma)
    out: dict = {}
    total = 0
    for j in range(r):
        acc = Cyclotomic(0)
        for t, v in enumerate(vals):
            acc = acc + v * root_of_unity(r, -j * t)
        m = acc / r
        if not m.is_rational() or m.rational().denominator != 1 or m.rational() < 0:
            raise TableError(f"non-integral eigenvalue multiplicity {m} for {rho}")
        m = int(m.rational())
        total += m
        if m:
            g = math.gcd(j, r)
            out[(r // g, j // g)] = m
    if total != rho.degree:
        raise TableError("eigenvalue multiplicities do not sum to the degree")
    return out


def joint_spectrum(rho: Irrep, elems: Sequence[Perm]) -> dict:
    """Joint eigenvalues of pairwise commuting elements under ``rho``.

    Keys are exponent tuples ``(e_1, ..., e_m)`` meaning eigenvalue
    ``zeta_{o_i}^{e_i}`` on ``elems[i]`` (``o_i`` its order); values are
    multiplicities summing to the degree.  The decomposition is guessed from
    a floating-point Fourier transform and then confirmed exactly against
    every character value on the generated products.
    """
    T = rho.table
    n = len(elems[0])
    orders = [element_order(a) for a in elems]
    L = math.lcm(*orders)
    pows = []
    for a, o in zip(elems, orders):
        row, x = [], identity(n)
        for _ in range(o):
            row.append(x)
            x = mul(x, a)
        pows.append(row)
    shape = tuple(orders)
    vals: dict = {}
    grid = np.zeros(shape, dtype=complex)
    cache: dict = {}
    for e in itertools.product(*[range(o) for o in orders]):
        x = identity(n)
        for i, ei in enumerate(e):
            x = mul(x, pows[i][ei])
        k = perm_key(x)
        if k not in cache:
            cache[k] = rho(T.class_of(x))
        vals[e] = cache[k]
        grid[e] = vals[e].to_complex()
    # n(lambda) = mean over e of chi(a^e) * lambda^-e
    spec = np.fft.fftn(grid) / grid.size
    mult = np.rint(spec.real).astype(int)
    if np.max(np.abs(spec - mult)) > 1e-6 or (mult < 0).any() or mult.sum() != rho.degree:
        raise TableError("joint spectrum is not integral")
    out = {tuple(int(i) for i in idx): int(m) for idx, m in np.ndenumerate(mult) if m}
    # exact confirmation: chi(a^e) = sum_lambda n(lambda) lambda^e
    steps = [L // o for o in orders]
    for e, v in vals.items():
        terms: dict = {}
        for lam, m in out.items():
            k = sum(li * ei * st for li, ei, st in zip(lam, e, steps)) % L
            terms[k] = terms.get(k, 0) + m
        if Cyclotomic.from_terms(L, terms) != v:
            raise TableError("joint spectrum fails exact confirmation")
    return out


# ---------------------------------------------------------------------------
# orthogonality


def check_orthogonality(T: CharacterTable) -> None:
    r = len(T.classes)
    if len(T.irreducibles) != r or any(len(row) != r for row in T.irreducibles):
        raise TableError("table is not square")
    degs = []
    for row in T.irreducibles:
        d = row[0]
        if not d.is_rational() or d.rational().denominator != 1 or d.rational() < 1:
            raise TableError("first column must hold positive integer degrees")
        degs.append(int(d.rational()))
    if sum(d * d for d in degs) != T.group_order:
        raise TableError("sum of squared degrees differs from the group order")
    conj = [[v.conj() for v in row] for row in T.irreducibles]
    sizes = [c.size for c in T.classes]
    for i in range(r):
        for j in range(i, r):
            acc = Cyclotomic(0)
            for c in range(r):
                acc = acc + T.irreducibles[i][c] * conj[j][c] * sizes[c]
            want = T.group_order if i == j else 0
            if acc != want:
                raise TableError(f"row orthogonality fails for rows {i + 1}, {j + 1}")
    for c in range(r):
        for d in range(c, r):
            acc = Cyclotomic(0)
            for i in range(r):
                acc = acc + T.irreducibles[i][c] * conj[i][d]
            want = T.group_order // sizes[c] if c == d else 0
            if acc != want:
                raise TableError(f"column orthogonality fails for classes {c + 1}, {d + 1}")


# ---------------------------------------------------------------------------
# linear algebra over F_p


def _rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = a.copy() % p
    rows, cols = a.shape
    piv: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        f = a[:, c].copy()
        f[r] = 0
        a = (a - np.outer(f, a[r])) % p
        piv.append(c)
        r += 1
    return a[:r], piv


def _left_nullspace_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {u : u a = 0}."""
    m = a.T % p
    red, piv = _rref_mod(m, p)
    n = m.shape[1]
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = (-red[i, f]) % p
    return basis


def _charpoly_mod(a: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial, highest degree first (Hessenberg method)."""
    h = [[int(x) % p for x in row] for row in a]
    n = len(h)
    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if h[i][m - 1]), None)
        if i is None:
            continue
        if i != m:
            h[i], h[m] = h[m], h[i]
            for row in h:
                row[i], row[m] = row[m], row[i]
        t = pow(h[m][m - 1], -1, p)
        for j in range(m + 1, n):
            u = h[j][m - 1] * t % p
            if u:
                h[j] = [(x - u * y) % p for x, y in zip(h[j], h[m])]
                for row in h:
                    row[m] = (row[m] + u * row[j]) % p
    # polys stored lowest degree first
    polys = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = [0] + prev[:]
        for k, c in enumerate(prev):
            cur[k] = (cur[k] - h[m - 1][m - 1] * c) % p
        t = 1
        for i in range(1, m):
            t = t * h[m - i][m - i - 1] % p
            coef = h[m - i - 1][m - 1] * t % p
            if coef:
                for k, c in enumerate(polys[m - i - 1]):
                    cur[k] = (cur[k] - coef * c) % p
        polys.append(cur)
    return polys[n][::-1]


def _roots_mod(poly: list[int], p: int) -> list[int]:
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in poly:
        acc = (acc * xs + c) % p
    return [int(x) for x in np.nonzero(acc == 0)[0]]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime p = 1 mod exponent with p > 2 sqrt(order)."""
    bound = 2 * math.isqrt(order) + 1
    p = exponent + 1
    while p <= bound or not _is_prime(p):
        p += exponent
    return p


def _primitive_root(p: int) -> int:
    fs = [q for q in range(2, p) if (p - 1) % q == 0 and _is_prime(q)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fs):
            return g
    return 1


# ---------------------------------------------------------------------------
# Burnside-Dixon


class _Enumerated:
    """Element index for an enumerated group: base-image codes plus classes."""

    def __init__(self, G: PermGroup, budget: int):
        els = G.elements(budget)
        self.G = G
        self.elements = els
        self.n = G.degree
        base = list(G.chain.base) or [0]
        self.base = base
        arr = np.array(els, dtype=np.int64).reshape(len(els), self.n)
        self.arr = arr
        self.weights = np.array([32 ** i for i in range(len(base))], dtype=np.int64)
        codes = arr[:, base] @ self.weights
        self.sorter = np.argsort(codes, kind="stable")
        self.codes = codes[self.sorter]
        gens = G.generators if G.order > 1 else []
        raw, cls_of, conj = centralizer_classes(els, gens)
        order = sorted(range(len(raw)), key=lambda i: (element_order(raw[i][0]), len(raw[i]), raw[i][0]))
        remap = {old: new for new, old in enumerate(order)}
        self.classes = [raw[i] for i in order]
        self.cls_of = {k: remap[v] for k, v in cls_of.items()}
        self.conj = conj
        self.elem_class = np.array([self.cls_of[perm_key(g)] for g in els], dtype=np.int64)

    def index(self, codes: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self.codes, codes)
        if (pos >= len(self.codes)).any() or (self.codes[np.minimum(pos, len(self.codes) - 1)] != codes).any():
            raise NotInGroup("product outside the enumerated group")
        return self.sorter[pos]

    def class_of(self, x: Perm) -> int:
        c = self.cls_of.get(perm_key(x))
        if c is None:
            raise NotInGroup("element not in the enumerated group")
        return c


def _structure_constants(E: _Enumerated) -> np.ndarray:
    """a[j, l, k] = #{(x, y) in C_j x C_l : xy = z_k}."""
    r = len(E.classes)
    inv_arr = np.empty_like(E.arr)
    rows = np.arange(E.arr.shape[0])[:, None]
    inv_arr[rows, E.arr] = np.arange(E.n)[None, :]
    cx = E.elem_class
    a = np.zeros((r, r, r), dtype=np.int64)
    for k, cl in enumerate(E.classes):
        z = np.array(cl[0], dtype=np.int64)
        # y = x^-1 z, evaluated on base points only
        codes = inv_arr[:, z[E.base]] @ E.weights
        cy = E.elem_class[E.index(codes)]
        a[:, :, k] = np.bincount(cx * r + cy, minlength=r * r).reshape(r, r)
    return a


def burnside_dixon(G: PermGroup, budget: int = DEFAULT_ENUMERATION_BUDGET, name: str = "") -> CharacterTable:
    """Exact character table of an enumerable permutation group."""
    E = _Enumerated(G, budget)
    r = len(E.classes)
    reps = [cl[0] for cl in E.classes]
    sizes = [len(cl) for cl in E.classes]
    orders = [element_order(x) for x in reps]
    exponent = math.lcm(*orders)
    N = G.order
    p = dixon_prime(N, exponent)

    # power data: class of rep^t for every t below the element order
    powcls = []
    for x, o in zip(reps, orders):
        row, y = [], identity(G.degree)
        for _ in range(o):
            row.append(E.class_of(y))
            y = mul(y, x)
        powcls.append(row)
    inv_cls = [powcls[c][-1] if orders[c] > 1 else c for c in range(r)]

    vecs = _class_eigenvectors(_structure_constants(E), p)

    z = pow(_primitive_root(p), (p - 1) // exponent, p)
    chars = []
    for v in vecs:
        v = [int(x) * pow(int(v[0]), -1, p) % p for x in v]
        s = sum(v[l] * v[inv_cls[l]] * pow(sizes[l], -1, p) for l in range(r)) % p
        d2 = N * pow(s, -1, p) % p
        deg = next((d for d in range(1, math.isqrt(N) + 1) if d * d % p == d2), None)
        if deg is None:
            raise TableError("degree recovery failed")
        modchi = [v[l] * deg * pow(sizes[l], -1, p) % p for l in range(r)]
        row = []
        for c in range(r):
            o = orders[c]
            zo = pow(z, exponent // o, p)
            inv_o = pow(o, -1, p)
            terms = {}
            total = 0
            for a_ in range(o):
                m = sum(modchi[powcls[c][t]] * pow(zo, (-a_ * t) % o, p) for t in range(o)) * inv_o % p
                if m > deg:
                    raise TableError("multiplicity lift out of range")
                if m:
                    terms[a_] = m
                total += m
            if total != deg:
                raise TableError("multiplicities do not sum to the degree")
            row.append(Cyclotomic.from_terms(o, terms))
        chars.append(row)

    chars.sort(key=lambda row: (int(row[0].rational()), not all(v == 1 for v in row),
                                [cyclo.to_text(v) for v in row]))
    power_maps = {}
    for q in range(2, exponent + 1):
        if _is_prime(q):
            power_maps[q] = tuple(powcls[c][q % orders[c]] for c in range(r))
    T = CharacterTable(
        group_order=N,
        classes=[ClassInfo(orders[c], sizes[c], reps[c]) for c in range(r)],
        irreducibles=[tuple(row) for row in chars],
        power_maps=power_maps,
        name=name or G.name,
        group=G,
        locate=E.class_of,
    )
    check_orthogonality(T)
    return T


def _class_eigenvectors(a: np.ndarray, p: int) -> list:
    """Common eigenvectors of the class matrices M_j[l, k] = a[j, l, k] over F_p."""
    r = a.shape[0]
    spaces = [np.eye(r, dtype=np.int64)]
    done = []
    for j in range(1, r):
        if not spaces:
            break
        T = a[j].T % p  # row vectors: u T = omega u
        nxt = []
        for B in spaces:
            if B.shape[0] == 1:
                done.append(B[0])
                continue
            red, piv = _rref_mod(B, p)
            A = (red @ T % p)[:, piv]
            poly = _charpoly_mod(A, p)
            pieces = []
            for lam in _roots_mod(poly, p):
                ns = _left_nullspace_mod((A - lam * np.eye(len(A), dtype=np.int64)) % p, p)
                if len(ns):
                    pieces.append(ns @ red % p)
            if sum(len(x) for x in pieces) != B.shape[0]:
                raise TableError("class matrix does not split over the chosen prime")
            nxt.extend(pieces)
        spaces = nxt
    for B in spaces:
        if B.shape[0] != 1:
            raise TableError("class matrices do not separate all characters")
        done.append(B[0])
    if len(done) != r:
        raise TableError("wrong number of characters")
    return done


# ---------------------------------------------------------------------------
# .ctbl text format


def table_digest(T: CharacterTable) -> str:
    h = hashlib.sha256()
    h.update(str(T.group_order).encode())
    for c in T.classes:
        h.update(f"{c.order},{c.size};".encode())
    return h.hexdigest()[:16]


def emit_table(T: CharacterTable) -> str:
    lines = ["ctbl 1"]
    if T.name:
        lines.append(f"name {T.name}")
    lines.append(f"order {T.group_order}")
    lines.append(f"digest {table_digest(T)}")
    lines.append(f"classes {len(T.classes)}")
    for c in T.classes:
        tail = f" {format_cycles(c.representative)}" if c.representative is not None else ""
        lines.append(f"class {c.order} {c.size}{tail}")
    for q in sorted(T.power_maps):
        lines.append(f"power {q} " + " ".join(str(i + 1) for i in T.power_maps[q]))
    for row in T.irreducibles:
        lines.append("char " + " ; ".join(cyclo.to_text(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_table(source, degree: Optional[int] = None) -> CharacterTable:
    """Read a ``.ctbl`` file (path, file object or text).

    ``degree`` is needed only when class lines carry representatives.
    """
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, str) and "\n" not in source:
        with open(source) as fh:
            text = fh.read()
    else:
        text = str(source)
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != "ctbl 1":
        raise TableError("missing 'ctbl 1' header")
    name, order, count, digest = "", None, None, None
    classes, rows, pmaps = [], [], {}
    deg = degree
    for ln in lines[1:]:
        key, _, rest = ln.partition(" ")
        if key == "name":
            name = rest
        elif key == "order":
            order = int(rest)
        elif key == "degree":
            deg = int(rest)
        elif key == "digest":
            digest = rest
        elif key == "classes":
            count = int(rest)
        elif key == "class":
            parts = rest.split(None, 2)
            if len(parts) < 2:
                raise TableError(f"bad class line: {ln}")
            rep = None
            if len(parts) == 3:
                if deg is None:
                    raise TableError("representative given without a degree")
                rep = parse_cycles(parts[2], deg)
            classes.append(ClassInfo(int(parts[0]), int(parts[1]), rep))
        elif key == "power":
            parts = rest.split()
            pmaps[int(parts[0])] = tuple(int(i) - 1 for i in parts[1:])
        elif key == "char":
            try:
                rows.append(tuple(cyclo.from_text(v) for v in rest.split(";")))
            except ValueError as exc:
                raise TableError(str(exc)) from exc
        else:
            raise TableError(f"unknown line: {ln}")
    if order is None or count is None:
        raise TableError("missing order or class count")
    if len(classes) != count:
        raise TableError(f"expected {count} classes, found {len(classes)}")
    if len(rows) != count or any(len(r) != count for r in rows):
        raise TableError("truncated or ragged character rows")
    if sum(c.size for c in classes) != order:
        raise TableError("class sizes do not add up to the group order")
    for q, m in pmaps.items():
        if len(m) != count:
            raise TableError(f"power map {q} has wrong length")
    T = CharacterTable(order, classes, rows, pmaps, name)
    if digest is not None and digest != table_digest(T):
        raise TableError("digest mismatch")
    return T


# ---------------------------------------------------------------------------
# binding a table to a group's classes


def bind_table(T: CharacterTable, registry: ClassRegistry) -> CharacterTable:
    """Reorder ``T``'s columns to follow ``registry``'s classes.

    Columns are matched by element order, class size and, where present, the
    representative.  Ambiguity is accepted only when every admissible
    matching yields the same table up to a permutation of characters.
    """
    G = registry.G
    if T.group_order != G.order or len(T.classes) != len(registry):
        raise BindingError("table and group disagree on order or class count")
    cands = []
    for c in T.classes:
        opts = [i for i, k in enumerate(registry.classes) if k.order == c.order and k.size == c.size]
        if c.representative is not None:
            if c.representative not in G:
                raise BindingError("table representative not in the group")
            i = registry.class_of(c.representative)
            if i not in opts:
                raise BindingError("representative contradicts order/size")
            opts = [i]
        if not opts:
            raise BindingError(f"no class of order {c.order} and size {c.size}")
        cands.append(opts)
    matchings: list = []
    _match(cands, 0, [], set(), matchings, limit=4096)
    if not matchings:
        raise BindingError("no consistent class matching")
    r = len(registry)
    pmaps = group_power_maps(registry)
    if len(matchings) > 1:
        matchings = [m for m in matchings if _power_consistent(T, m, pmaps, exact=False)]
        if not matchings:
            raise BindingError("no class matching is compatible with the power maps")
    first = matchings[0]
    key = sorted(tuple(cyclo.to_text(v) for v in row) for row in _rows_under(T, first))
    for m in matchings[1:]:
        if sorted(tuple(cyclo.to_text(v) for v in row) for row in _rows_under(T, m)) != key:
            raise BindingError("ambiguous class matching changes the table")
    if len(matchings) > 1 or any(len(c) > 1 for c in cands):
        if not _power_consistent(T, first, pmaps, exact=True):
            raise BindingError("class matching fails the exact power-map test")
    classes = [ClassInfo(k.order, k.size, k.representative) for k in registry.classes]
    return CharacterTable(T.group_order, classes, _rows_under(T, first), pmaps, T.name, G,
                          registry.class_of)


def group_power_maps(registry: ClassRegistry) -> dict:
    """``{p: map}`` for primes p dividing the group order, from class representatives."""
    N = registry.G.order
    out = {}
    for q in _prime_factors(N):
        out[q] = tuple(registry.class_of(power(c.representative, q)) for c in registry.classes)
    return out


def _power_consistent(T: CharacterTable, perm: list, pmaps: dict, exact: bool) -> bool:
    """Every chi o (p-th power) must be a virtual character."""
    rows = _rows_under(T, perm)
    r = len(perm)
    sizes = [0] * r
    for c, i in enumerate(perm):
        sizes[i] = T.classes[c].size
    N = T.group_order
    if not exact:
        X = np.array([[v.to_complex() for v in row] for row in rows])
        w = np.array(sizes, dtype=float) / N
        for q, mp in pmaps.items():
            psi = X[:, list(mp)]
            ip = psi @ (np.conj(X) * w).T
            if np.max(np.abs(ip - np.rint(ip.real))) > 1e-6:
                return False
        return True
    conj = [[v.conj() for v in row] for row in rows]
    for q, mp in pmaps.items():
        for row in rows:
            psi = [row[mp[c]] for c in range(r)]
            for other in conj:
                acc = Cyclotomic(0)
                for c in range(r):
                    acc = acc + psi[c] * other[c] * sizes[c]
                if not acc.is_rational() or (acc.rational() / N).denominator != 1:
                    return False
    return True


def _rows_under(T: CharacterTable, perm: list) -> list:
    r = len(perm)
    back = [0] * r
    for c, i in enumerate(perm):
        back[i] = c
    return [tuple(row[back[i]] for i in range(r)) for row in T.irreducibles]


def _match(cands, i, acc, used, out, limit):
    if len(out) >= limit:
        return
    if i == len(cands):
        out.append(acc[:])
        return
    for o in cands[i]:
        if o not in used:
            used.add(o)
            acc.append(o)
            _match(cands, i + 1, acc, used, out, limit)
            acc.pop()
            used.discard(o)


# ---------------------------------------------------------------------------
# comparing tables up to permutation


def tables_match(A: CharacterTable, B: CharacterTable, use_sizes: bool = True) -> Optional[tuple]:
    """Find column and row permutations making ``A`` equal to ``B``.

    Returns ``(cols, rows)`` with ``A[rows[i]][cols[c]] == B[i][c]``, or None.
    Column candidates are narrowed by element order, class size (optional)
    and the multiset of column values.
    """
    r = len(A.classes)
    if len(B.classes) != r or len(A.irreducibles) != r or len(B.irreducibles) != r:
        return None
    ta = [[cyclo.to_text(v) for v in row] for row in A.irreducibles]
    tb = [[cyclo.to_text(v) for v in row] for row in B.irreducibles]

    def colsig(T, t, c):
        vals = tuple(sorted(t[i][c] for i in range(r)))
        return (T.classes[c].order, T.classes[c].size if use_sizes else 0, vals)

    sa = [colsig(A, ta, c) for c in range(r)]
    sb = [colsig(B, tb, c) for c in range(r)]
    cands = [[a for a in range(r) if sa[a] == sb[c]] for c in range(r)]
    if any(not x for x in cands):
        return None
    order = sorted(range(r), key=lambda c: len(cands[c]))
    cols = [None] * r
    used: set = set()

    def rows_ok(assigned):
        # rows of B restricted to assigned columns must match rows of A as multisets
        ka = sorted(tuple(ta[i][cols[c]] for c in assigned) for i in range(r))
        kb = sorted(tuple(tb[i][c] for c in assigned) for i in range(r))
        return ka == kb

    def rec(k):
        if k == r:
            return True
        c = order[k]
        for a in cands[c]:
            if a in used:
                continue
            cols[c] = a
            used.add(a)
            if rows_ok(order[: k + 1]) and rec(k + 1):
                return True
            used.discard(a)
            cols[c] = None
        return False

    if not rec(0):
        return None
    rowmap = []
    free = set(range(r))
    for i in range(r):
        want = [tb[i][c] for c in range(r)]
        hit = next(a for a in sorted(free) if [ta[a][cols[c]] for c in range(r)] == want)
        rowmap.append(hit)
        free.discard(hit)
    # exact confirmation
    for i in range(r):
        for c in range(r):
            if A.irreducibles[rowmap[i]][cols[c]] != B.irreducibles[i][c]:
                return None
    return cols, rowmap
