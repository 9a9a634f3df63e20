"""Braided vector spaces of diagonal type, Dynkin diagrams and Cartan data."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cyclo import Cyclotomic, as_root_of_unity
from .rack import SubrackWitness


@dataclass(frozen=True)
class DiagonalBraiding:
    q: tuple  # q[i][j], Cyclotomic

    @property
    def dim(self) -> int:
        return len(self.q)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "DiagonalBraiding":
        q = tuple(tuple(Cyclotomic.coerce(x) for x in row) for row in rows)
        if any(len(row) != len(q) for row in q):
            raise ValueError("q-matrix must be square")
        if any(x.is_zero() for row in q for x in row):
            raise ValueError("braiding scalars must be nonzero")
        return cls(q)

    def edge_label(self, i: int, j: int) -> Cyclotomic:
        return self.q[i][j] * self.q[j][i]


def braiding_from_witness(w: SubrackWitness, rho) -> DiagonalBraiding:
    """q_kl = rho(gamma_kl) for a degree-one ``rho`` of the centralizer."""
    from .chartab import character_at

    if rho.degree != 1:
        raise ValueError("only degree-one representations give a braiding on the witness alone")
    return DiagonalBraiding.from_rows([[character_at(rho, y) for y in row] for row in w.gammas])


@dataclass(frozen=True)
class GDD:
    vertices: tuple              # q_ii
    edges: dict = field(hash=False)  # (i, j) with i < j -> q_ij q_ji

    def neighbours(self, i: int) -> list[int]:
        return sorted({b if a == i else a for (a, b) in self.edges if i in (a, b)})

    def render(self) -> str:
        from .cyclo import to_text
        parts = [f"v{i + 1}[{to_text(q)}]" for i, q in enumerate(self.vertices)]
        parts += [f"v{i + 1}--v{j + 1}[{to_text(lab)}]" for (i, j), lab in sorted(self.edges.items())]
        return "; ".join(parts)


def gdd(b: DiagonalBraiding) -> GDD:
    n = b.dim
    edges = {}
    for i, j in itertools.combinations(range(n), 2):
        lab = b.edge_label(i, j)
        if lab != 1:
            edges[(i, j)] = lab
    return GDD(tuple(b.q[i][i] for i in range(n)), edges)


# ---------------------------------------------------------------------------
# Cartan type


@dataclass(frozen=True)
class CartanMatrix:
    a: tuple
    warnings: tuple = ()

    @property
    def rank(self) -> int:
        return len(self.a)


def _angle(x: Cyclotomic) -> Optional[Fraction]:
    """x = exp(2 pi i t) with t in [0, 1), or None if x is not a root of unity."""
    rk = as_root_of_unity(x)
    if rk is None:
        return None
    r, k = rk
    return Fraction(k % r, r)


def cartan_data(b: DiagonalBraiding) -> Optional[CartanMatrix]:
    """Generalized Cartan matrix of ``b``, or None when ``b`` is not of Cartan type."""
    n = b.dim
    diag = []
    for i in range(n):
        t = _angle(b.q[i][i])
        if t is None or t == 0:
            return None
        diag.append(t)
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    warnings = []
    for i in range(n):
        order = diag[i].denominator
        for j in range(n):
            if i == j:
                continue
            t = _angle(b.edge_label(i, j))
            if t is None:
                return None
            sols = [m for m in range(0, -order, -1) if (diag[i] * m - t).denominator == 1]
            if not sols:
                return None
            if len(sols) > 1:
                warnings.append(f"a_{i + 1}{j + 1} is not unique: {sols}")
            a[i][j] = sols[0]
    return CartanMatrix(tuple(tuple(r) for r in a), tuple(warnings))


def is_generalized_cartan(a: Sequence[Sequence[int]]) -> bool:
    n = len(a)
    for i in range(n):
        if a[i][i] != 2:
            return False
        for j in range(n):
            if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                return False
    return True


def components(a: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(a)
    seen, out = set(), []
    for v in range(n):
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in range(n):
                if y not in seen and a[x][y] != 0:
                    seen.add(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def _det(m: list) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def is_finite_type(cm) -> bool:
    """Finite type iff each component symmetrizes to a positive definite matrix."""
    a = cm.a if isinstance(cm, CartanMatrix) else tuple(tuple(r) for r in cm)
    if not is_generalized_cartan(a):
        raise ValueError("not a generalized Cartan matrix")
    for comp in components(a):
        # d_i a_ij = d_j a_ji fixes d along a spanning tree
        d = {comp[0]: Fraction(1)}
        stack = [comp[0]]
        while stack:
            i = stack.pop()
            for j in comp:
                if a[i][j] != 0 and j not in d:
                    d[j] = d[i] * a[i][j] / a[j][i]
                    stack.append(j)
        if any(d[i] * a[i][j] != d[j] * a[j][i] for i in comp for j in comp):
            return False
        sym = [[d[i] * a[i][j] for j in comp] for i in comp]
        for k in range(1, len(comp) + 1):
            if _det([row[:k] for row in sym[:k]]) <= 0:
                return False
    return True


# ---------------------------------------------------------------------------
# the cycle / valency obstruction


@dataclass(frozen=True)
class Obstruction:
    kind: str       # "cycle" or "valency"
    vertices: tuple

    def describe(self) -> str:
        vs = ",".join(str(v + 1) for v in self.vertices)
        return f"{len(self.vertices)}-cycle {vs}" if self.kind == "cycle" else f"vertex {vs} of valency > 3"


def _long_cycle(n: int, adj: dict) -> Optional[tuple]:
    # smallest vertex of the cycle is the start; simple paths only
    for start in range(n):
        stack = [(start, (start,))]
        while stack:
            v, path = stack.pop()
            for w in adj[v]:
                if w == start and len(path) >= 4:
                    return path
                if w > start and w not in path:
                    stack.append((w, path + (w,)))
    return None


def hecke_obstruction(d: GDD) -> Optional[Obstruction]:
    """A cycle of length > 3 or a vertex of valency > 3 in the diagram."""
    if any(_angle(q) is None for q in d.vertices):
        return None
    n = len(d.vertices)
    adj = {i: d.neighbours(i) for i in range(n)}
    for i in range(n):
        if len(adj[i]) > 3:
            return Obstruction("valency", (i,))
    cyc = _long_cycle(n, adj)
    if cyc is not None:
        return Obstruction("cycle", cyc)
    return None


def is_negative(b: DiagonalBraiding) -> bool:
    n = b.dim
    return all(b.q[i][i] == -1 for i in range(n)) and all(
        b.edge_label(i, j) == 1 for i in range(n) for j in range(n) if i != j)
