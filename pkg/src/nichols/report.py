"""Markdown reports for classification sweeps."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .chartab import q_ss
from .criteria import INFINITE, NEGATIVE, UNKNOWN, ClassContext, Verdict, context
from .cyclo import as_root_of_unity, to_text
from .permcore import element_order, mul, power


@dataclass
class Summary:
    pairs: int
    infinite: int
    negative: int
    unknown: int
    abelian_infinite: int
    abelian_negative: int


def summarize(verdicts: Sequence[Verdict]) -> Summary:
    c = Counter(v.outcome for v in verdicts)
    ab_neg = sum(1 for v in verdicts if v.negative_after_abelian)
    ab_unknown = sum(1 for v in verdicts if v.outcome == UNKNOWN)
    return Summary(len(verdicts), c[INFINITE], c[NEGATIVE], c[UNKNOWN],
                   len(verdicts) - ab_neg - ab_unknown, ab_neg)


def _prime_powers(n: int) -> dict:
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def abelian_invariants(elements: Sequence) -> list[int]:
    """Invariant factors of an abelian group given by its elements."""
    n = len(elements)
    orders = Counter(element_order(x) for x in elements)
    parts: dict = {}
    for p, a in _prime_powers(n).items():
        # |{x : x^(p^k) = 1}| = p^(sum_i min(k, e_i))
        sums = [0]
        k = 1
        while sums[-1] < a:
            cnt = sum(c for o, c in orders.items() if (p ** k) % o == 0)
            sums.append(_log(cnt, p))
            k += 1
        counts = [sums[i] - sums[i - 1] for i in range(1, len(sums))]  # number of e_i >= i
        exps = []
        for i in range(len(counts)):
            nxt = counts[i + 1] if i + 1 < len(counts) else 0
            exps += [i + 1] * (counts[i] - nxt)
        parts[p] = sorted(exps, reverse=True)
    width = max((len(v) for v in parts.values()), default=0)
    factors = []
    for i in range(width):
        f = 1
        for p, exps in parts.items():
            if i < len(exps):
                f *= p ** exps[i]
        factors.append(f)
    return sorted(factors)


def _log(n: int, p: int) -> int:
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


def centralizer_description(ctx: ClassContext) -> str:
    els = ctx.cent
    n = len(els)
    if all(mul(a, b) == mul(b, a) for a in ctx.cent_group.generators for b in ctx.cent_group.generators):
        inv = abelian_invariants(els)
        if len(inv) <= 1:
            return f"Z_{n}"
        return " x ".join(f"Z_{f}" for f in inv)
    return f"non-abelian of order {n}"


def _root_text(x) -> str:
    rk = as_root_of_unity(x)
    if rk is None:
        return to_text(x)
    r, k = rk
    if r == 1:
        return "1"
    if r == 2:
        return "-1"
    return f"w{r}^{k}"


def representation_description(ctx: ClassContext, k: int) -> str:
    rho = ctx.table.irrep(k - 1)
    q = q_ss(rho, ctx.s_class)
    if rho.degree > 1:
        return f"deg {rho.degree}, q_ss = {_root_text(q)}"
    n = len(ctx.cent)
    if element_order(ctx.s) == n:
        return "chi_(-1)" if q == -1 else f"s -> {_root_text(q)}"
    gens = [x for x in ctx.cent if element_order(x) == n]
    if gens:
        for a in range(1, n):
            for x in gens:
                if power(x, a) == ctx.s:
                    val = rho(ctx.table.class_of(x))
                    r, e = as_root_of_unity(val)
                    l = e * (n // r) % n
                    return f"nu_{l}: x -> w{n}^{l}, x^{a} = s"
    return f"deg 1, q_ss = {_root_text(q)}"


def survivors_table(verdicts: Sequence[Verdict]) -> list[dict]:
    rows = []
    for v in verdicts:
        if v.outcome != NEGATIVE:
            continue
        ctx = context(v.group, v.j)
        rows.append({
            "group": v.group.upper(), "j": v.j, "order": ctx.order,
            "centralizer": centralizer_description(ctx),
            "representation": representation_description(ctx, v.k),
            "dim": ctx.cls.size * v.degree,
        })
    return rows


def markdown(verdicts: Sequence[Verdict], title: str = "") -> str:
    s = summarize(verdicts)
    out = []
    if title:
        out += [f"# {title}", ""]
    out += [
        f"- pairs: {s.pairs}",
        f"- after the abelian stage: {s.abelian_infinite} infinite, {s.abelian_negative} negative",
        f"- final: {s.infinite} infinite, {s.negative} negative braiding, {s.unknown} unknown",
        "",
    ]
    surv = survivors_table(verdicts)
    if surv:
        out += ["| group | j | order of s | centralizer | representation | dim M |",
                "|---|---|---|---|---|---|"]
        out += [f"| {r['group']} | {r['j']} | {r['order']} | {r['centralizer']} | {r['representation']} | {r['dim']} |"
                for r in surv]
        out.append("")
    out += ["| j | k | deg | outcome | stage | certificate |", "|---|---|---|---|---|---|"]
    for v in verdicts:
        kind = v.certificate.kind if v.certificate is not None else ""
        stage = v.stage if v.outcome == INFINITE else ""
        out.append(f"| {v.j} | {v.k} | {v.degree} | {v.outcome} | {stage} | {kind} |")
    return "\n".join(out) + "\n"
