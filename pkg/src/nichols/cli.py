"""Command-line driver: ``nichols classify | class-info | chartab | verify``."""

from __future__ import annotations

import hashlib
import os
import sys
import tempfile
from importlib import resources
from typing import Optional

import click

from . import __version__, criteria, groups
from .chartab import emit_table, parse_table, tables_match
from .permcore import BudgetExceeded, format_cycles
from .records import RecordError, emit_records, parse_records
from .report import centralizer_description, markdown

FAST = ("m11", "m12", "m22")
SLOW = groups.BUILTIN

EXIT_BUDGET = 3
EXIT_VERIFY = 1


def _apply_budgets(group: str, seed: int, orbit_budget: Optional[int]) -> None:
    reg = groups.load_classes(group, seed)
    if orbit_budget is not None:
        reg.orbit_budget = orbit_budget


def _atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _cache_path(cache_dir: str, group: str, key: str) -> str:
    digest = groups.group_def(group).digest
    h = hashlib.sha256(f"{digest}|{key}|{__version__}".encode()).hexdigest()[:16]
    return os.path.join(cache_dir, f"{os.path.basename(group).lower()}-{h}.records")


def _classify(group, classes, irreps, seed, orbit_budget, abelian_budget, cache_dir):
    key = f"{sorted(classes)}|{sorted(irreps)}|{seed}|{orbit_budget}|{abelian_budget}"
    path = _cache_path(cache_dir, group, key) if cache_dir else None
    if path and os.path.exists(path):
        with open(path) as fh:
            return parse_records(fh.read())
    _apply_budgets(group, seed, orbit_budget)
    verdicts = criteria.classify_group(group, classes or None, irreps or None, abelian_budget, seed)
    if path:
        _atomic_write(path, emit_records(verdicts, groups.load_group(group).degree))
    return verdicts


@click.group()
@click.version_option(__version__)
def main() -> None:
    """Infinite-dimensionality certificates for Nichols algebras over finite groups."""


_group_opt = click.option("--group", envvar="GROUP", default="m11", show_default=True,
                          help="m11, m12, m22, m23, m24, 'all', or a group-definition file.")


@main.command()
@_group_opt
@click.option("--class", "classes", envvar="CLASS", multiple=True, type=int, help="Class labels j to include.")
@click.option("--irrep", "irreps", envvar="IRREP", multiple=True, type=int, help="Centralizer irreps k to include.")
@click.option("--seed", envvar="SEED", default=0, show_default=True, type=int)
@click.option("--orbit-budget", envvar="ORBIT_BUDGET", type=int, default=None,
              help="Largest conjugation orbit kept in memory.")
@click.option("--abelian-budget", envvar="ABELIAN_BUDGET", type=int, default=criteria.DEFAULT_ABELIAN_BUDGET,
              show_default=True, help="Abelian subsets examined per pair.")
@click.option("--bfs-radius", envvar="BFS_RADIUS", type=int, default=None,
              help="Accepted for compatibility; the family searches use exhaustive pools.")
@click.option("--tier", envvar="TIER", type=click.Choice(["fast", "slow"]), default="fast", show_default=True,
              help="Which built-in groups '--group all' sweeps.")
@click.option("--format", "fmt", envvar="FORMAT", type=click.Choice(["md", "records"]), default="md",
              show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the report here.")
@click.option("--traces", type=click.Path(dir_okay=False), default=None, help="Also write records here.")
@click.option("--cache-dir", envvar="CACHE_DIR", type=click.Path(file_okay=False), default=None)
def classify(group, classes, irreps, seed, orbit_budget, abelian_budget, bfs_radius, tier, fmt, out, traces,
             cache_dir):
    """Classify every (class, irrep) pair of a group."""
    names = (FAST if tier == "fast" else SLOW) if group == "all" else (group,)
    chunks, recs, budget_hit = [], [], False
    for name in names:
        try:
            verdicts = _classify(name, classes, irreps, seed, orbit_budget, abelian_budget, cache_dir)
        except BudgetExceeded as exc:
            click.echo(f"{name}: budget exhausted: {exc}", err=True)
            sys.exit(EXIT_BUDGET)
        budget_hit |= any(v.flags for v in verdicts)
        deg = groups.load_group(name).degree
        recs.append(emit_records(verdicts, deg))
        if fmt == "md":
            title = f"{name.upper()} (order {groups.load_group(name).order})"
            chunks.append(markdown(verdicts, title))
        else:
            chunks.append(recs[-1])
    text = "\n".join(chunks) if fmt == "md" else "".join(chunks)
    if out:
        _atomic_write(out, text)
    else:
        click.echo(text, nl=False)
    if traces:
        _atomic_write(traces, "".join(recs))
    if budget_hit:
        sys.exit(EXIT_BUDGET)


@main.command("class-info")
@_group_opt
@click.option("--class", "j", envvar="CLASS", required=True, type=int)
def class_info(group, j):
    """Representative, sizes and centralizer data of class j."""
    if j not in criteria.class_labels(group):
        raise click.BadParameter(f"unknown class {j}", param_hint="--class")
    ctx = criteria.context(group, j)
    click.echo(f"group: {group} (order {ctx.G.order})")
    click.echo(f"class: {j}")
    click.echo(f"representative: {format_cycles(ctx.s)}")
    click.echo(f"element order: {ctx.order}")
    click.echo(f"class size: {ctx.cls.size}")
    click.echo(f"centralizer order: {ctx.cls.centralizer_order}")
    if not ctx.is_identity:
        click.echo(f"centralizer: {centralizer_description(ctx)}")
        click.echo(f"class meets centralizer: {len(ctx.inter)} elements")
        click.echo(f"real: {'yes' if ctx.real_witness is not None else 'no'}")


def _fixture(name: str) -> Optional[str]:
    f = resources.files("nichols").joinpath("data", f"{name}.ctbl")
    return f.read_text() if f.is_file() else None


@main.command()
@_group_opt
@click.option("--class", "j", envvar="CLASS", type=int, default=None,
              help="Emit the table of the centralizer of s_j (computed); without it, the group's own table.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def chartab(group, j, out):
    """Character table in .ctbl format, cross-checked against shipped fixtures."""
    key = os.path.basename(group).lower()
    if j is None:
        text = _fixture(key)
        if text is None:
            from .chartab import burnside_dixon
            try:
                text = emit_table(burnside_dixon(groups.load_group(group), name=key))
            except BudgetExceeded as exc:
                raise click.ClickException(f"group too large to enumerate: {exc}")
    else:
        ctx = criteria.context(group, j)
        if ctx.is_identity:
            raise click.ClickException("the identity class has the whole group as centralizer; omit --class")
        T = ctx.table
        fx = _fixture(f"{key}_s{j}")
        if fx is not None:
            if tables_match(T, parse_table(fx)) is None:
                raise click.ClickException(f"computed table disagrees with fixture {key}_s{j}")
            click.echo(f"# matches fixture {key}_s{j}", err=True)
        text = emit_table(T)
    if out:
        _atomic_write(out, text)
    else:
        click.echo(text, nl=False)


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def verify(path):
    """Replay the records in PATH and re-check every certificate."""
    with open(path) as fh:
        try:
            verdicts = parse_records(fh.read())
        except RecordError as exc:
            raise click.ClickException(str(exc))
    bad = 0
    for v in verdicts:
        try:
            criteria.verify_certificate(v)
        except criteria.CertificateError as exc:
            bad += 1
            click.echo(f"FAIL {v.group} j={v.j} k={v.k}: {exc}")
    click.echo(f"{len(verdicts) - bad}/{len(verdicts)} certificates verified")
    if bad:
        sys.exit(EXIT_VERIFY)


if __name__ == "__main__":
    main()
