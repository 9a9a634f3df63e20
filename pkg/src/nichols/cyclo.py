"""Exact arithmetic in cyclotomic fields.

An element of Q(zeta_n) is stored as integer numerators over the power basis
``1, z, ..., z^(phi(n)-1)`` reduced modulo the n-th cyclotomic polynomial,
together with one positive common denominator.  Mixed-conductor operations
lift both sides to the lcm of the conductors.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Union

Number = Union[int, Fraction, "Cyclotomic"]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    # x^n - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_div_exact(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _poly_div_exact(a: list[int], b: list[int]) -> list[int]:
    a = a[:]
    q = [0] * (len(a) - len(b) + 1)
    lb = b[-1]
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]
        if c % lb:
            raise ArithmeticError("inexact polynomial division")
        c //= lb
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    if any(a[: len(b) - 1]):
        raise ArithmeticError("nonzero remainder")
    return q


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple:
    """Sparse rows: z^k mod Phi_n for k in 0..n-1."""
    phi = totient(n)
    poly = cyclotomic_poly(n)
    rows = []
    v = [0] * phi
    v[0] = 1
    for k in range(n):
        rows.append(tuple((i, c) for i, c in enumerate(v) if c))
        # multiply by z
        top = v[-1]
        v = [0] + v[:-1]
        if top:
            for i in range(phi):
                v[i] -= top * poly[i]
    return tuple(rows)


def _coeff_vector(n: int, terms: dict) -> list[int]:
    phi = totient(n)
    table = _reduction_table(n)
    out = [0] * phi
    for e, c in terms.items():
        if c:
            for i, t in table[e % n]:
                out[i] += c * t
    return out


def _build(n: int, terms: dict, den: int) -> "Cyclotomic":
    return Cyclotomic._make(n, _coeff_vector(n, terms), den)


class Cyclotomic:
    """Immutable element of Q(zeta_n)."""

    __slots__ = ("n", "num", "den", "_reduced")

    def __init__(self, value: Union[int, Fraction, str] = 0):
        if isinstance(value, str):
            c = from_text(value)
            self.n, self.num, self.den = c.n, c.num, c.den
        else:
            f = Fraction(value)
            self.n, self.num, self.den = 1, (f.numerator,), f.denominator
        self._reduced = None

    @classmethod
    def _make(cls, n: int, num: Iterable[int], den: int) -> "Cyclotomic":
        num = list(num)
        if den < 0:
            num = [-x for x in num]
            den = -den
        g = math.gcd(den, *num)
        if g > 1:
            num = [x // g for x in num]
            den //= g
        if n > 1 and not any(num[1:]):
            n, num = 1, num[:1]
        obj = cls.__new__(cls)
        obj.n, obj.num, obj.den = n, tuple(num), den
        obj._reduced = None
        return obj

    # -- construction ------------------------------------------------------

    @classmethod
    def coerce(cls, x: Number) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Cyclotomic")

    @classmethod
    def from_terms(cls, n: int, terms: dict) -> "Cyclotomic":
        """Sum of ``c * z(n)^k`` over ``{k: c}`` with rational c."""
        den = math.lcm(*[Fraction(c).denominator for c in terms.values()]) if terms else 1
        iterms: dict = {}
        for k, c in terms.items():
            f = Fraction(c)
            iterms[k % n] = iterms.get(k % n, 0) + f.numerator * (den // f.denominator)
        return _build(n, iterms, den)

    # -- internals ---------------------------------------------------------

    def _terms_at(self, L: int) -> dict:
        step = L // self.n
        return {i * step: c for i, c in enumerate(self.num) if c}

    def lift(self, L: int) -> "Cyclotomic":
        if L % self.n:
            raise ValueError("target conductor must be a multiple")
        if L == self.n:
            return self
        return _build(L, self._terms_at(L), self.den)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: Number) -> "Cyclotomic":
        try:
            o = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        if self.n == o.n:
            den = math.lcm(self.den, o.den)
            fa, fb = den // self.den, den // o.den
            return Cyclotomic._make(self.n, [a * fa + b * fb for a, b in zip(self.num, o.num)], den)
        L = math.lcm(self.n, o.n)
        den = math.lcm(self.den, o.den)
        terms: dict = {}
        for src in (self, o):
            f = den // src.den
            for e, c in src._terms_at(L).items():
                terms[e] = terms.get(e, 0) + c * f
        return _build(L, terms, den)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic._make(self.n, [-a for a in self.num], self.den)

    def __sub__(self, other: Number) -> "Cyclotomic":
        try:
            o = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Number) -> "Cyclotomic":
        return Cyclotomic.coerce(other) - self

    def __mul__(self, other: Number) -> "Cyclotomic":
        try:
            o = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        if o.n == 1:
            c = o.num[0]
            return Cyclotomic._make(self.n, [a * c for a in self.num], self.den * o.den)
        if self.n == 1:
            return o * self
        L = math.lcm(self.n, o.n)
        ta, tb = self._terms_at(L), o._terms_at(L)
        terms: dict = {}
        for ea, ca in ta.items():
            for eb, cb in tb.items():
                e = (ea + eb) % L
                terms[e] = terms.get(e, 0) + ca * cb
        return _build(L, terms, self.den * o.den)

    __rmul__ = __mul__

    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta_n -> zeta_n^k (k coprime to n)."""
        if math.gcd(k, self.n) != 1:
            raise ValueError("Galois exponent must be coprime to the conductor")
        terms = {(i * k) % self.n: c for i, c in enumerate(self.num) if c}
        return _build(self.n, terms, self.den)

    def conj(self) -> "Cyclotomic":
        return self.galois(-1)

    def norm(self, conductor: Optional[int] = None) -> Fraction:
        """Field norm from Q(zeta_L) down to Q; L defaults to the stored conductor."""
        L = conductor or self.n
        if L % self.n:
            raise ValueError("conductor must be a multiple of the element's")
        acc = Cyclotomic(1)
        for k in range(1, L + 1):
            if math.gcd(k, L) == 1:
                acc = acc * self.galois(k)
        return acc.rational()

    def inv(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.n == 1:
            return Cyclotomic(Fraction(self.den, self.num[0]))
        acc = Cyclotomic(1)
        for k in range(2, self.n + 1):
            if math.gcd(k, self.n) == 1:
                acc = acc * self.galois(k)
        nrm = (acc * self).rational()
        return acc / nrm

    def __truediv__(self, other: Number) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            f = Fraction(other)
            return Cyclotomic._make(self.n, [a * f.denominator for a in self.num], self.den * f.numerator)
        return self * Cyclotomic.coerce(other).inv()

    def __rtruediv__(self, other: Number) -> "Cyclotomic":
        return Cyclotomic.coerce(other) * self.inv()

    def __pow__(self, k: int) -> "Cyclotomic":
        if k < 0:
            return self.inv() ** (-k)
        out, base = Cyclotomic(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- predicates and comparison ------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return self.n == 1

    def rational(self) -> Fraction:
        if self.n != 1:
            raise ValueError("not rational")
        return Fraction(self.num[0], self.den)

    def __eq__(self, other) -> bool:
        try:
            o = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        if self.n == o.n:
            return self.num == o.num and self.den == o.den
        if self.den != o.den:
            return False
        L = math.lcm(self.n, o.n)
        a, b = self.lift(L), o.lift(L)
        return a.num == b.num and a.den == b.den

    def __hash__(self) -> int:
        r = self.reduced()
        return hash((r.n, r.num, r.den))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def reduced(self) -> "Cyclotomic":
        """Same value at the smallest conductor that holds it."""
        if self._reduced is None:
            cur = self
            changed = True
            while changed and cur.n > 1:
                changed = False
                for p in _prime_factors(cur.n):
                    m = cur.n // p
                    down = _descend(cur, m)
                    if down is not None:
                        cur = down
                        changed = True
                        break
            # conductors 2 mod 4 are never minimal
            if cur.n % 4 == 2:
                cur = _to_odd(cur)
            self._reduced = cur
        return self._reduced

    # -- display -----------------------------------------------------------

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(c * z**i for i, c in enumerate(self.num)) / self.den

    def __repr__(self) -> str:
        return f"Cyclotomic({to_text(self)!r})"

    def __str__(self) -> str:
        return to_text(self)


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def _descent_data(n: int, m: int):
    """Pivot rows and inverse for the embedding Q(zeta_m) -> Q(zeta_n)."""
    phm = totient(m)
    step = n // m
    cols = [tuple(_coeff_vector(n, {j * step: 1})) for j in range(phm)]
    rows = len(cols[0])
    # Gaussian elimination to find phm independent rows
    mat = [[Fraction(cols[j][i]) for j in range(phm)] for i in range(rows)]
    pivots, basis = [], []
    for i in range(rows):
        pivots.append(i)
        basis.append(mat[i][:])
        if _rank(basis) < len(basis):
            pivots.pop()
            basis.pop()
        if len(pivots) == phm:
            break
    inv = _invert(basis)
    return tuple(pivots), inv, cols


def _rank(rows: list) -> int:
    m = [r[:] for r in rows]
    rank, ncol = 0, len(m[0]) if m else 0
    for c in range(ncol):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _invert(a: list) -> list:
    n = len(a)
    m = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        f = m[c][c]
        m[c] = [x / f for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                g = m[r][c]
                m[r] = [x - g * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def _descend(a: Cyclotomic, m: int) -> Optional[Cyclotomic]:
    pivots, inv, cols = _descent_data(a.n, m)
    rhs = [Fraction(a.num[i]) for i in pivots]
    b = [sum(r * x for r, x in zip(row, rhs)) for row in inv]
    # check the candidate reproduces every coordinate
    if len(a.num) != len(cols[0]):
        return None
    for i in range(len(a.num)):
        if sum(b[j] * cols[j][i] for j in range(len(b))) != a.num[i]:
            return None
    den = math.lcm(*[x.denominator for x in b])
    return Cyclotomic._make(m, [int(x * den) for x in b], den * a.den)


def _to_odd(a: Cyclotomic) -> Cyclotomic:
    # zeta_{2m} = -zeta_m^((m+1)/2) for odd m
    m = a.n // 2
    k = (m + 1) // 2
    terms = {}
    for i, c in enumerate(a.num):
        if c:
            e = (i * k) % m
            sign = -1 if i % 2 else 1
            terms[e] = terms.get(e, 0) + sign * c
    return _build(m, terms, a.den)


@lru_cache(maxsize=4096)
def root_of_unity(n: int, k: int) -> Cyclotomic:
    """zeta_n^k with zeta_n = exp(2 pi i / n)."""
    if n < 1:
        raise ValueError("order must be positive")
    return _build(n, {k % n: 1}, 1)


@lru_cache(maxsize=None)
def _root_table(n: int) -> dict:
    L = n if n % 2 == 0 else 2 * n
    table = {}
    for k in range(L):
        z = root_of_unity(L, k).lift(L) if n % 2 == 0 else _signed_root(n, k)
        table[(z.n, z.num, z.den)] = (L, k)
    return table


def _signed_root(n: int, k: int) -> Cyclotomic:
    # zeta_{2n}^k expressed at conductor n (n odd)
    if k % 2 == 0:
        return root_of_unity(n, k // 2)
    return -root_of_unity(n, (k + n) // 2)


def as_root_of_unity(a: Number) -> Optional[tuple[int, int]]:
    """``(r, k)`` with ``a = zeta_r^k`` and ``gcd(k, r) = 1``, else None."""
    a = Cyclotomic.coerce(a)
    if a.den != 1:
        return None
    if a.n == 1:
        if a.num[0] == 1:
            return (1, 0)
        if a.num[0] == -1:
            return (2, 1)
        return None
    hit = _root_table(a.n).get((a.n, a.num, a.den))
    if hit is None:
        return None
    L, k = hit
    g = math.gcd(k, L)
    return (L // g, k // g)


def add(a: Number, b: Number) -> Cyclotomic:
    return Cyclotomic.coerce(a) + b


def mul(a: Number, b: Number) -> Cyclotomic:
    return Cyclotomic.coerce(a) * b


def neg(a: Number) -> Cyclotomic:
    return -Cyclotomic.coerce(a)


def inv(a: Number) -> Cyclotomic:
    return Cyclotomic.coerce(a).inv()


def conj(a: Number) -> Cyclotomic:
    return Cyclotomic.coerce(a).conj()


# ---------------------------------------------------------------------------
# text serialization: "c0 + c1*z(n)^1 + ..."


def to_text(a: Number) -> str:
    a = Cyclotomic.coerce(a)
    a = a.reduced()
    parts = []
    for i, c in enumerate(a.num):
        if not c:
            continue
        f = Fraction(c, a.den)
        coef = str(f)
        parts.append(coef if i == 0 else f"{coef}*z({a.n})^{i}")
    return " + ".join(parts) if parts else "0"


_TERM_RE = re.compile(r"^([+-]?\d+(?:/\d+)?)?(?:\*?z\((\d+)\)(?:\^(-?\d+))?)?$")


def from_text(text: str) -> Cyclotomic:
    """Inverse of :func:`to_text`; also accepts ``-`` separators."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty cyclotomic literal")
    s = re.sub(r"(?<=[\d)])-", "+-", s)
    total = Cyclotomic(0)
    for tok in s.split("+"):
        if not tok:
            raise ValueError(f"malformed cyclotomic literal {text!r}")
        neg = False
        if tok.startswith("-") and not re.match(r"^-\d", tok):
            neg, tok = True, tok[1:]
        m = _TERM_RE.match(tok)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"malformed cyclotomic term {tok!r} in {text!r}")
        coef = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        if neg:
            coef = -coef
        if m.group(2):
            n = int(m.group(2))
            k = int(m.group(3)) if m.group(3) else 1
            total = total + Cyclotomic.from_terms(n, {k: coef})
        else:
            total = total + Cyclotomic(coef)
    return total


# common irrationalities


def sqrt_int(d: int) -> Cyclotomic:
    """Square root of a nonzero integer via Gauss sums (i*sqrt(|d|) when d < 0)."""
    if d == 0:
        return Cyclotomic(0)
    sign = -1 if d < 0 else 1
    m = abs(d)
    # squarefree part
    out = Cyclotomic(1)
    sq = 1
    p = 2
    rest = m
    while p * p <= rest:
        while rest % (p * p) == 0:
            rest //= p * p
            sq *= p
        p += 1
    for q in _prime_factors(rest):
        out = out * _sqrt_prime_signed(q)
    # out**2 = product of q* where q* = q for q = 1 mod 4, -q for q = 3 mod 4, and 2 for q = 2
    target = rest * sign
    have = (out * out).rational() if rest > 1 else Fraction(1)
    if have != target:
        out = out * root_of_unity(4, 1)
    # Gauss sums fix the square only; pick the principal root
    z = out.to_complex()
    if (z.real if sign > 0 else z.imag) < 0:
        out = -out
    return out * sq


def _sqrt_prime_signed(q: int) -> Cyclotomic:
    if q == 2:
        return root_of_unity(8, 1) + root_of_unity(8, 7)
    # quadratic Gauss sum: square is q* = (-1)^((q-1)/2) q
    residues = {(x * x) % q for x in range(1, q)}
    g = Cyclotomic(0)
    for k in range(1, q):
        g = g + (root_of_unity(q, k) if k in residues else -root_of_unity(q, k))
    return g


I = root_of_unity(4, 1)
