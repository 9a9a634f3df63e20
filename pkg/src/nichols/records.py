"""Line-oriented verdict records (proof traces).

One block per pair::

    verdict m11 5 4
    points 11
    outcome infinite
    stage abelian
    degree 2
    cert cartan
    elements (1,2,...)(...);(...)
    ...
    end

Permutations are written in 1-based cycle notation, cyclotomic numbers in
the ``c0 + c1*z(n)^k`` form, matrix rows separated by ``|`` and entries by
``;``.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .braiding import Obstruction
from .criteria import (
    CartanSubspace,
    DpCertificate,
    HeckeObstruction,
    IdentityClass,
    O2General,
    O2Family,
    O2Special,
    PowerScalar,
    RealScalar,
    Verdict,
)
from .cyclo import from_text, to_text
from .permcore import format_cycles, parse_cycles
from .rack import DpFamily


class RecordError(ValueError):
    pass


def _perms(ps) -> str:
    return ";".join(format_cycles(p) for p in ps)


def _matrix(rows, fmt=str) -> str:
    return " | ".join(";".join(fmt(x) for x in row) for row in rows)


def _columns(cols) -> str:
    if cols is None:
        return "-"
    return ";".join(",".join(str(e) for e in c) for c in cols)


def _cert_lines(c) -> list[str]:
    out = [f"cert {c.kind}"]
    if isinstance(c, IdentityClass):
        return out
    if isinstance(c, RealScalar):
        return out + [f"witness {format_cycles(c.witness)}", f"q {to_text(c.q)}"]
    if isinstance(c, PowerScalar):
        return out + [f"k {c.k}", f"witness {format_cycles(c.witness)}", f"q {to_text(c.q)}", f"clause {c.clause}"]
    if isinstance(c, (CartanSubspace, HeckeObstruction)):
        out += [f"elements {_perms(c.elements)}", f"reps {_perms(c.reps)}",
                f"columns {_columns(c.columns)}", f"q {_matrix(c.q, to_text)}"]
        if isinstance(c, CartanSubspace):
            out.append(f"cartan {_matrix(c.cartan)}")
        else:
            out.append(f"obstruction {c.obstruction.kind} {','.join(str(v) for v in c.obstruction.vertices)}")
        return out
    if isinstance(c, DpCertificate):
        return out + [f"p {c.family.p}", f"family {_perms(c.family.elements)}",
                      f"k {c.k}", f"witness {format_cycles(c.k_witness)}"]
    if isinstance(c, (O2Special, O2General)):
        f = c.family
        out += [f"sigma {_perms(f.sigma)}", f"tau {_perms(f.tau)}",
                f"g {format_cycles(f.g) if f.g is not None else '-'}",
                f"d {f.d if f.d is not None else '-'}", f"e {f.e if f.e is not None else '-'}"]
        if isinstance(c, O2General):
            out += [f"fact {x}" for x in c.facts]
        return out
    raise RecordError(f"cannot serialize {type(c).__name__}")


def emit_verdict(v: Verdict, points: int) -> str:
    lines = [f"verdict {v.group} {v.j} {v.k}", f"points {points}", f"outcome {v.outcome}",
             f"stage {v.stage}", f"degree {v.degree}"]
    if v.certificate is not None:
        lines += _cert_lines(v.certificate)
    lines += [f"trace {t}" for t in v.trace]
    lines += [f"flag {f}" for f in v.flags]
    lines.append("end")
    return "\n".join(lines) + "\n"


def emit_records(verdicts: Iterable[Verdict], points: int) -> str:
    return "".join(emit_verdict(v, points) for v in verdicts)


# ---------------------------------------------------------------------------
# parsing


def _opt_int(x: str) -> Optional[int]:
    return None if x == "-" else int(x)


def _build_cert(kind: str, f: dict, n: int):
    P = lambda t: parse_cycles(t, n)
    Ps = lambda t: tuple(P(x) for x in t.split(";"))

    def mat(t, conv):
        return tuple(tuple(conv(x.strip()) for x in row.split(";")) for row in t.split("|"))

    def cols(t):
        if t == "-":
            return None
        return tuple(tuple(int(e) for e in c.split(",")) for c in t.split(";"))

    try:
        if kind == "identity":
            return IdentityClass()
        if kind == "real":
            return RealScalar(P(f["witness"]), from_text(f["q"]))
        if kind == "power":
            return PowerScalar(int(f["k"]), P(f["witness"]), from_text(f["q"]), f["clause"])
        if kind in ("cartan", "hecke"):
            els, reps, cl = Ps(f["elements"]), Ps(f["reps"]), cols(f["columns"])
            q = mat(f["q"], from_text)
            if kind == "cartan":
                return CartanSubspace(els, reps, cl, q, mat(f["cartan"], int))
            okind, verts = f["obstruction"].split()
            return HeckeObstruction(els, reps, cl, q, Obstruction(okind, tuple(int(x) for x in verts.split(","))))
        if kind == "dp":
            fam = DpFamily(int(f["p"]), Ps(f["family"]))
            return DpCertificate(fam, int(f["k"]), P(f["witness"]))
        if kind in ("o2special", "o2general"):
            fam = O2Family(Ps(f["sigma"]), Ps(f["tau"]), None if f["g"] == "-" else P(f["g"]),
                           _opt_int(f["d"]), _opt_int(f["e"]))
            if kind == "o2special":
                return O2Special(fam, fam.d, fam.e)
            return O2General(fam, tuple(f.get("fact", [])))
    except KeyError as exc:
        raise RecordError(f"certificate {kind} lacks field {exc}") from None
    raise RecordError(f"unknown certificate kind {kind!r}")


def parse_records(text: str) -> list[Verdict]:
    out: list[Verdict] = []
    block: Optional[dict] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        key, _, val = line.partition(" ")
        if key == "verdict":
            if block is not None:
                raise RecordError(f"line {lineno}: previous block not closed")
            g, j, k = val.split()
            block = {"head": (g, int(j), int(k)), "trace": [], "flag": [], "fact": []}
            continue
        if block is None:
            raise RecordError(f"line {lineno}: data outside a verdict block")
        if key == "end":
            out.append(_finish(block))
            block = None
        elif key in ("trace", "flag", "fact"):
            block[key].append(val)
        else:
            block[key] = val
    if block is not None:
        raise RecordError("truncated records: missing 'end'")
    return out


def _finish(b: dict) -> Verdict:
    g, j, k = b["head"]
    try:
        n = int(b["points"])
        v = Verdict(g, j, k, b["outcome"], b["stage"], degree=int(b["degree"]))
    except KeyError as exc:
        raise RecordError(f"verdict {g} {j} {k} lacks {exc}") from None
    if "cert" in b:
        v.certificate = _build_cert(b["cert"], b, n)
    v.trace = list(b["trace"])
    v.flags = list(b["flag"])
    return v
