"""Built-in groups, group-definition files and class labels."""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Optional

from .permcore import (
    ClassRegistry,
    Perm,
    PermGroup,
    build_group,
    conjugacy_classes,
    element_order,
    format_cycles,
    parse_cycles,
)

BUILTIN = ("m11", "m12", "m22", "m23", "m24")


@dataclass(frozen=True)
class GroupDef:
    degree: int
    generators: tuple
    name: str = ""

    @property
    def digest(self) -> str:
        text = f"{self.degree}\n" + "\n".join(format_cycles(g) for g in self.generators)
        return hashlib.sha256(text.encode()).hexdigest()[:16]


def parse_group_def(text: str, name: str = "") -> GroupDef:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty group definition")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValueError(f"first line must be the degree, got {lines[0]!r}") from None
    gens = tuple(parse_cycles(ln, n) for ln in lines[1:])
    if not gens:
        gens = (tuple(range(n)),)
    return GroupDef(n, gens, name)


def _data_text(fname: str) -> str:
    return resources.files("nichols").joinpath("data", fname).read_text()


def group_def(selector: str) -> GroupDef:
    """Built-in name (m11, ..., m24) or path to a group-definition file."""
    key = selector.lower()
    if key in BUILTIN:
        return parse_group_def(_data_text(f"{key}.grp"), key.upper())
    if os.path.exists(selector):
        with open(selector) as fh:
            return parse_group_def(fh.read(), os.path.basename(selector))
    raise ValueError(f"unknown group {selector!r}")


@lru_cache(maxsize=16)
def load_group(selector: str) -> PermGroup:
    d = group_def(selector)
    return build_group(d.degree, list(d.generators), name=d.name)


@lru_cache(maxsize=16)
def load_classes(selector: str, seed: int = 0) -> ClassRegistry:
    return conjugacy_classes(load_group(selector), seed=seed)


# ---------------------------------------------------------------------------
# the conventional class numbering j = 1, 2, ... of the built-in groups


@dataclass(frozen=True)
class ClassLabel:
    j: int
    order: int
    centralizer_order: int
    representative: Optional[Perm] = None


def parse_labels(text: str, degree: int) -> list[ClassLabel]:
    out = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        parts = ln.split(None, 3)
        rep = parse_cycles(parts[3], degree) if len(parts) == 4 else None
        out.append(ClassLabel(int(parts[0]), int(parts[1]), int(parts[2]), rep))
    return out


def builtin_labels(name: str) -> list[ClassLabel]:
    d = group_def(name)
    return parse_labels(_data_text(f"{name.lower()}.labels"), d.degree)


def bind_labels(registry: ClassRegistry, labels: list[ClassLabel]) -> dict:
    """Map label j to a class index of ``registry``.

    A label with a representative binds by conjugacy.  The others bind by
    (element order, centralizer order), taking free classes in registry
    order when several qualify (these are always algebraically conjugate
    pairs, e.g. a class and its inverse class).
    """
    out: dict = {}
    used: set = set()
    for lab in labels:
        if lab.representative is not None:
            idx = registry.class_of(lab.representative)
            c = registry[idx]
            if c.order != lab.order or c.centralizer_order != lab.centralizer_order:
                raise ValueError(f"label {lab.j}: representative disagrees with order data")
            if idx in used:
                raise ValueError(f"label {lab.j}: class already labelled")
            out[lab.j] = idx
            used.add(idx)
    for lab in labels:
        if lab.representative is not None:
            continue
        opts = [i for i, c in enumerate(registry.classes)
                if i not in used and c.order == lab.order and c.centralizer_order == lab.centralizer_order]
        if not opts:
            raise ValueError(f"label {lab.j}: no free class of order {lab.order}")
        out[lab.j] = opts[0]
        used.add(opts[0])
    return out


@lru_cache(maxsize=16)
def labelled_classes(name: str) -> dict:
    """``{j: class index}`` for a built-in group."""
    return bind_labels(load_classes(name), builtin_labels(name))


def label_representative(name: str, j: int) -> Perm:
    """The conventional representative s_j when the label file has one, else the registry's."""
    for lab in builtin_labels(name):
        if lab.j == j and lab.representative is not None:
            return lab.representative
    return load_classes(name)[labelled_classes(name)[j]].representative


def describe(p: Perm) -> str:
    return f"{format_cycles(p)} (order {element_order(p)})"
