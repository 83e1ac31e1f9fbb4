"""Command-line interface.

Subcommands: count, count-type, rho, classify, formula, seminet-census,
verify.  All counts are printed as exact decimal strings.  Exit codes:
0 success / all rows pass, 1 usage or input error, 2 verification failure,
3 resource limit.

Expensive results are cached as finished output text under the directory
named by the PLRKIT_CACHE_DIR environment variable (disable per-call with
--no-cache); cache keys include the engine version, so results never leak
across releases, and a cache hit reproduces the original output bytes.
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
from pathlib import Path

import click

from . import __version__
from .classify import ISOTOPISM, PARATOPISM, class_representatives, classify_structure_triple
from .core import Dims, plr_to_text
from .counting import closed_form_count, count_type, count_type_regular, rho, size_spectrum
from .errors import BackendUnavailable, LimitExceeded, PlrError
from .seminets import MAX_CENSUS_RANK, census, census_jsonl
from .verify import all_pass, summary_lines, verify_tables

_FORMATS = click.Choice(["text", "json", "csv"])


def _parse_dims(text: str) -> Dims:
    parts = text.split(",")
    if len(parts) != 3:
        raise click.UsageError(f"--dims expects r,s,n, got {text!r}")
    try:
        return Dims(*(int(p) for p in parts))
    except ValueError:
        raise click.UsageError(f"--dims expects integers, got {text!r}")


def _parse_tuple(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise click.UsageError(f"{flag} expects comma-separated integers, got {text!r}")


def _parse_structures(text: str) -> tuple[tuple[int, ...], ...]:
    parts = text.split("|")
    if len(parts) != 3:
        raise click.UsageError(
            f'--structures expects three structures joined by "|", got {text!r}'
        )
    return tuple(_parse_tuple(p, "--structures") for p in parts)


def _cached_text(no_cache: bool, key_parts: list, compute) -> str:
    cache_dir = None if no_cache else os.environ.get("PLRKIT_CACHE_DIR")
    if not cache_dir:
        return compute()
    digest = hashlib.sha256(
        json.dumps([__version__, *key_parts], sort_keys=True).encode()
    ).hexdigest()
    path = Path(cache_dir) / f"{digest}.txt"
    if path.exists():
        return path.read_text()
    text = compute()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return text


@click.group()
@click.version_option(version=__version__, prog_name="plrkit")
def cli() -> None:
    """Exact counting and classification of partial Latin rectangles."""


# ---------------------------------------------------------------------------
# count
# ---------------------------------------------------------------------------

@cli.command("count")
@click.option("--dims", "dims_text", required=True, help="Dimensions r,s,n.")
@click.option("--size", "size_", type=int, default=None, help="Single size m.")
@click.option("--backend", type=click.Choice(["direct", "decomposition", "formula"]),
              default="direct", show_default=True)
@click.option("--strategy", type=click.Choice(["lex-adaptive", "full-assignment"]),
              default="lex-adaptive", show_default=True,
              help="First-row decomposition strategy (decomposition backend).")
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--format", "fmt", type=_FORMATS, default="text", show_default=True)
@click.option("--no-cache", is_flag=True, help="Bypass the output cache.")
def cmd_count(dims_text: str, size_: int | None, backend: str, strategy: str,
              jobs: int, fmt: str, no_cache: bool) -> None:
    """Size spectrum of the r x s arrays over n symbols, or one entry."""
    dims = _parse_dims(dims_text)
    if size_ is not None and not 0 <= size_ <= dims.r * dims.s:
        raise click.UsageError(f"--size must lie in 0..{dims.r * dims.s}")
    if backend == "formula" and size_ is None and dims.r * dims.s > 6:
        raise click.UsageError(
            "the formula backend covers sizes up to 6; pass --size")

    def compute() -> str:
        if backend == "formula":
            if size_ is not None:
                counts = {size_: closed_form_count(dims, size_)}
            else:
                counts = {m: closed_form_count(dims, m)
                          for m in range(dims.r * dims.s + 1)}
        else:
            spectrum = size_spectrum(dims, backend=backend,
                                     strategy=strategy, jobs=jobs)
            if size_ is not None:
                counts = {size_: spectrum[size_]}
            else:
                counts = dict(enumerate(spectrum))
        if fmt == "text":
            return " ".join(str(c) for c in counts.values())
        if fmt == "csv":
            lines = ["m,count"] + [f"{m},{c}" for m, c in counts.items()]
            return "\n".join(lines)
        return json.dumps(
            {"dims": list(dims.as_tuple()), "backend": backend,
             "counts": {str(m): str(c) for m, c in counts.items()}},
            sort_keys=True)

    click.echo(_cached_text(
        no_cache,
        ["count", dims.as_tuple(), size_, backend, strategy, fmt],
        compute))


# ---------------------------------------------------------------------------
# count-type / rho
# ---------------------------------------------------------------------------

@cli.command("count-type")
@click.option("--rows", required=True, help="Per-row entry counts, e.g. 2,2.")
@click.option("--cols", required=True, help="Per-column entry counts.")
@click.option("--syms", required=True, help="Per-symbol entry counts.")
@click.option("--regular", is_flag=True, help="Restrict to regular arrays.")
@click.option("--format", "fmt", type=_FORMATS, default="text", show_default=True)
@click.option("--no-cache", is_flag=True)
def cmd_count_type(rows: str, cols: str, syms: str, regular: bool,
                   fmt: str, no_cache: bool) -> None:
    """Number of arrays with exactly these row/column/symbol counts."""
    R = _parse_tuple(rows, "--rows")
    C = _parse_tuple(cols, "--cols")
    S = _parse_tuple(syms, "--syms")

    def compute() -> str:
        value = count_type_regular(R, C, S) if regular else count_type(R, C, S)
        if fmt == "text":
            return str(value)
        if fmt == "csv":
            return f"rows,cols,syms,regular,count\n\"{rows}\",\"{cols}\",\"{syms}\",{regular},{value}"
        return json.dumps(
            {"rows": list(R), "cols": list(C), "syms": list(S),
             "regular": regular, "count": str(value)}, sort_keys=True)

    click.echo(_cached_text(
        no_cache, ["count-type", R, C, S, regular, fmt], compute))


@cli.command("rho")
@click.option("--structures", required=True,
              help='Three structures joined by "|", parts descending, e.g. "2,1|2,1|1,1,1".')
@click.option("--regular", is_flag=True)
@click.option("--format", "fmt", type=_FORMATS, default="text", show_default=True)
@click.option("--no-cache", is_flag=True)
def cmd_rho(structures: str, regular: bool, fmt: str, no_cache: bool) -> None:
    """Number of arrays per structure triple (representative block count)."""
    z1, z2, z3 = _parse_structures(structures)

    def compute() -> str:
        value = rho(z1, z2, z3, regular=regular)
        if fmt == "text":
            return str(value)
        if fmt == "csv":
            return f"structures,regular,count\n\"{structures}\",{regular},{value}"
        return json.dumps(
            {"structures": [list(z) for z in (z1, z2, z3)],
             "regular": regular, "count": str(value)}, sort_keys=True)

    click.echo(_cached_text(
        no_cache, ["rho", z1, z2, z3, regular, fmt], compute))


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------

@cli.command("classify")
@click.option("--structures", required=True,
              help='Three structures joined by "|", e.g. "2,2,1|2,2,1|2,2,1".')
@click.option("--regular", is_flag=True)
@click.option("--group", type=click.Choice([ISOTOPISM, PARATOPISM]),
              default=PARATOPISM, show_default=True,
              help="Class notion for --representatives.")
@click.option("--representatives", is_flag=True,
              help="Also print one canonical representative per class.")
@click.option("--format", "fmt", type=_FORMATS, default="text", show_default=True)
@click.option("--no-cache", is_flag=True)
def cmd_classify(structures: str, regular: bool, group: str,
                 representatives: bool, fmt: str, no_cache: bool) -> None:
    """Count, isotopy classes, and main classes of a structure triple."""
    z1, z2, z3 = _parse_structures(structures)

    def compute() -> str:
        report = classify_structure_triple(z1, z2, z3, regular=regular)
        reps: list[str] = []
        if representatives:
            reps = [plr_to_text(p) for p in
                    class_representatives(z1, z2, z3, regular=regular, kind=group)]
        if fmt == "text":
            lines = [f"count {report.count}",
                     f"IC {report.isotopy_classes}",
                     f"MC {report.main_classes}"]
            lines.extend(f"rep {i}: {text}" for i, text in enumerate(reps, start=1))
            return "\n".join(lines)
        if fmt == "csv":
            return ("structures,regular,count,ic,mc\n"
                    f"\"{structures}\",{regular},{report.count},"
                    f"{report.isotopy_classes},{report.main_classes}")
        payload = {
            "structures": [list(z) for z in (z1, z2, z3)],
            "regular": regular,
            "count": str(report.count),
            "isotopy_classes": report.isotopy_classes,
            "main_classes": report.main_classes,
        }
        if representatives:
            payload["representatives"] = reps
            payload["group"] = group
        return json.dumps(payload, sort_keys=True)

    click.echo(_cached_text(
        no_cache,
        ["classify", z1, z2, z3, regular, group, representatives, fmt],
        compute))


# ---------------------------------------------------------------------------
# formula
# ---------------------------------------------------------------------------

@cli.command("formula")
@click.option("--dims", "dims_text", required=True, help="Dimensions r,s,n.")
@click.option("--size", "size_", type=int, required=True, help="Size m (0..6).")
@click.option("--format", "fmt", type=_FORMATS, default="text", show_default=True)
@click.option("--no-cache", is_flag=True)
def cmd_formula(dims_text: str, size_: int, fmt: str, no_cache: bool) -> None:
    """Closed-form count of arrays of one size (size at most 6)."""
    dims = _parse_dims(dims_text)

    def compute() -> str:
        value = closed_form_count(dims, size_)
        if fmt == "text":
            return str(value)
        if fmt == "csv":
            return f"r,s,n,m,count\n{dims.r},{dims.s},{dims.n},{size_},{value}"
        return json.dumps({"dims": list(dims.as_tuple()), "m": size_,
                           "count": str(value)}, sort_keys=True)

    click.echo(_cached_text(
        no_cache, ["formula", dims.as_tuple(), size_, fmt], compute))


# ---------------------------------------------------------------------------
# seminet census
# ---------------------------------------------------------------------------

@cli.command("seminet-census")
@click.option("--max-rank", type=int, required=True,
              help=f"Largest point rank (3..{MAX_CENSUS_RANK}).")
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
              help="Write JSON-lines here instead of stdout.")
@click.option("--no-cache", is_flag=True)
def cmd_seminet_census(max_rank: int, jobs: int, out_path: str | None,
                       no_cache: bool) -> None:
    """Main-class census of seminets as JSON lines, one class per line."""
    text = _cached_text(
        no_cache, ["seminet-census", max_rank],
        lambda: census_jsonl(census(max_rank, jobs=jobs)).rstrip("\n"))
    if out_path is None:
        click.echo(text)
    else:
        Path(out_path).write_text(text + "\n")
        click.echo(f"wrote {text.count(chr(10)) + 1} records to {out_path}")


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

@cli.command("verify")
@click.option("--table", "table_text", default="all", show_default=True,
              help="Table number 1-6 or 'all'.")
@click.option("--jobs", type=int, default=1, show_default=True)
def cmd_verify(table_text: str, jobs: int) -> None:
    """Recompute fixture tables; exit 0 only if every row passes."""
    if table_text == "all":
        tables = [1, 2, 3, 4, 5, 6]
    else:
        try:
            tables = [int(table_text)]
        except ValueError:
            raise click.UsageError(f"--table expects 1-6 or 'all', got {table_text!r}")
        if tables[0] not in range(1, 7):
            raise click.UsageError(f"--table expects 1-6 or 'all', got {table_text!r}")
    rows = verify_tables(tables, jobs=jobs)
    for row in rows:
        click.echo(row.line())
    for line in summary_lines(rows):
        click.echo(line)
    if not all_pass(rows):
        sys.exit(2)


def main(argv: list[str] | None = None) -> int:
    """Console entry point with the documented exit-code mapping."""
    try:
        cli.main(args=argv, prog_name="plrkit", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except (LimitExceeded, BackendUnavailable) as exc:
        click.echo(f"resource limit: {exc}", err=True)
        return 3
    except PlrError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
