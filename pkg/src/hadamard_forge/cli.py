"""``hadamard-forge`` command line: codec helpers, predicates and the pipelines."""

from __future__ import annotations

import sys

import click

from . import codec, pipelines
from .designs import BaseSeqQuad, enumerate_bs, format_quads, validate_bs
from .equiv import ClassStore
from .errors import HadamardForgeError
from .gs import gs_assemble, is_hadamard


def _read_quad(quad: str | None, hex_: str | None, literal: str | None, n: int | None) -> BaseSeqQuad:
    given = [x is not None for x in (quad, hex_, literal)]
    if sum(given) != 1:
        raise click.UsageError("give exactly one of --quad, --hex, --seqs")
    if quad is not None:
        return codec.quad_decode(quad, n)
    if hex_ is not None:
        return codec.hex_decode(hex_)
    return BaseSeqQuad.parse(literal)


def _lines(source) -> list[str]:
    return [ln.strip() for ln in source.read().splitlines() if ln.strip() and not ln.startswith("#")]


@click.group()
def main() -> None:
    """Base sequences, Goethals-Seidel Hadamard matrices and their equivalence classes."""


@main.command()
@click.argument("m", type=int)
@click.argument("n", type=int)
@click.option("--count", is_flag=True, help="Print only the number of quadruples.")
def enumerate(m: int, n: int, count: bool) -> None:  # noqa: A001
    """All base sequences BS(M, N), one ``A;B;C;D`` line each."""
    quads = enumerate_bs(m, n)
    click.echo(len(quads) if count else format_quads(quads), nl=count)


@main.command()
@click.option("--quad", help="Quad code such as '02;1'.")
@click.option("--hex", "hex_", help="Hex code such as '0dc41a77adbf5c8'.")
@click.option("--n", type=int, help="Shorter length n of BS(n+1, n) (inferred when omitted).")
@click.option("--file", "source", type=click.File("r"), help="One code per line ('-' for stdin).")
def decode(quad, hex_, n, source) -> None:
    """Decode quad or hex codes into sequence literals."""
    if source is not None:
        for line in _lines(source):
            q = codec.quad_decode(line, n) if ";" in line else codec.hex_decode(line)
            click.echo(str(q))
        return
    click.echo(str(_read_quad(quad, hex_, None, n)))


@main.command()
@click.option("--seqs", help="Literal 'A;B;C;D' over + and -.")
@click.option("--hex", "as_hex", is_flag=True, help="Hex code (needs BS(d, d)); default is the quad code.")
@click.option("--strict", is_flag=True, help="Write the primed label 3' instead of 0.")
@click.option("--file", "source", type=click.File("r"), help="One literal per line ('-' for stdin).")
def encode(seqs, as_hex, strict, source) -> None:
    """Encode sequence literals (the output of ``decode``)."""
    items = _lines(source) if source is not None else [seqs] if seqs else []
    if not items:
        raise click.UsageError("give --seqs or --file")
    for item in items:
        q = BaseSeqQuad.parse(item)
        click.echo(codec.hex_encode(q) if as_hex else codec.quad_encode(q).format(strict=strict))


@main.command()
@click.option("--quad", help="Quad code.")
@click.option("--hex", "hex_", help="Hex code.")
@click.option("--seqs", help="Literal 'A;B;C;D'.")
@click.option("--n", type=int)
def verify(quad, hex_, seqs, n) -> None:
    """Check the base sequence predicate and, for BS(d, d), the assembled matrix."""
    q = _read_quad(quad, hex_, seqs, n)
    ok = validate_bs(q)
    parts = [f"BS({q.m},{q.n}): {'valid' if ok else 'invalid'}"]
    if q.m == q.n:
        h = gs_assemble(q, check=False)
        parts.append(f"H({h.order}): {'valid' if is_hadamard(h) else 'invalid'}")
        ok = ok and is_hadamard(h)
    click.echo("; ".join(parts))
    sys.exit(0 if ok else 1)


@main.command()
@click.option(
    "--pipeline",
    type=click.Choice(["bs87", "yang1", "yang2", "yang3", "yang4", "all"]),
    default="all",
    show_default=True,
)
@click.option(
    "--accept",
    is_flag=False,
    flag_value="",
    default=None,
    metavar="[PATH]",
    help="Check the report against an expectations TOML (bundled file when no path is given).",
)
@click.option("--store", "store_path", type=click.Path(dir_okay=False), help="JSON-lines class store; resumes if present.")
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Print the full report as JSON.")
@click.option("--no-tables", is_flag=True, help="Skip cross-validation against the bundled tables.")
def run(pipeline, accept, store_path, jobs, as_json, no_tables) -> None:
    """Run pipelines and report class counts; exit status 0 iff the checks pass."""
    store = ClassStore(store_path)
    names = pipelines.PIPELINES if pipeline == "all" else (pipeline,)
    log = lambda msg: click.echo(msg, err=True)  # noqa: E731
    report = pipelines.run_full(store, jobs=jobs, pipelines=names, tables=not no_tables, log=log)
    click.echo(report.to_json() if as_json else report.summary())
    if accept is None:
        return
    checks = pipelines.check_report(report, pipelines.load_expectations(accept or None))
    for c in checks:
        click.echo(c.line())
    sys.exit(0 if all(c.ok for c in checks) else 1)


def entry() -> None:
    try:
        main(standalone_mode=True)
    except HadamardForgeError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    entry()
