"""
scg - string C-group verification and rank reduction.

Load representations from files or registered examples, verify them,
reduce their rank and analyze CPR graphs.

Exit codes: 0 success, 1 a check failed or a reduction step was rejected,
2 invalid input, configuration or budget overflow.
"""
import logging
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape

import report
from config import METHODS, Settings
from constructions import dihedral_group, load_rep, load_source, registry
from cpr import CprGraph, connectivity, cpr_emit, cpr_to_rep, rep_to_cpr
from errors import ScgError
from performance_monitor import monitor
from permgroup import set_bsgs_seed
from rankred import DIRECTIONS, reduce_iterate
from repfile import emit_rep, write_document
from sggi import search_reps, verify

logger = logging.getLogger("scg")

err_console = Console(stderr=True)

FORMATS = ("text", "json")


@dataclass
class CliState:
    settings: Settings
    timings: bool


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


@contextmanager
def guarded():
    """Turn input, configuration and overflow errors into exit code 2."""
    try:
        yield
    except (ScgError, ValueError, OSError) as exc:
        err_console.print(f"[red]✗ {escape(str(exc))}[/red]")
        logger.debug("command failed", exc_info=True)
        click.get_current_context().exit(2)


def _settings(ctx: click.Context, budget: Optional[int] = None, seed: Optional[int] = None,
              method: Optional[str] = None) -> Settings:
    settings = ctx.obj.settings.override(budget=budget, seed=seed, method=method)
    for issue in settings.validate():
        logger.warning(issue)
    set_bsgs_seed(settings.seed)
    return settings


def _finish(ctx: click.Context, output_format: str, payload: Optional[dict] = None) -> None:
    """Print the JSON payload, or the timing table after a text report."""
    if output_format == "json" and payload is not None:
        click.echo(report.to_json(payload))
    elif ctx.obj.timings:
        report.print_timings(monitor.get_stats())


def budget_options(func):
    func = click.option("--seed", type=int, default=None,
                        help="Seed for randomized Schreier-Sims (default SCG_SEED or 0).")(func)
    func = click.option("--budget", type=click.IntRange(min=1), default=None,
                        help="Element cap for closures and coset enumeration.")(func)
    return func


def format_option(func):
    return click.option("--format", "output_format", type=click.Choice(FORMATS), default="text",
                        show_default=True, help="Report format.")(func)


@click.group(name="scg")
@click.option("-v", "--verbose", is_flag=True, help="Log debug messages to stderr.")
@click.option("--timings", is_flag=True, help="Print a per-stage timing table after text reports.")
@click.pass_context
def cli(ctx: click.Context, verbose: bool, timings: bool):
    """Verify string C-group representations and reduce their rank."""
    with guarded():
        settings = Settings.from_env()
    configure_logging("DEBUG" if verbose else settings.log_level)
    monitor.reset()
    ctx.obj = CliState(settings, timings)


@cli.command("verify")
@click.argument("source")
@click.option("--method", type=click.Choice(METHODS), default=None,
              help="Intersection property algorithm (default SCG_METHOD or recursive).")
@budget_options
@format_option
@click.pass_context
def verify_command(ctx, source, method, budget, seed, output_format):
    """Verify the representation in SOURCE (a file or an example name)."""
    with guarded():
        settings = _settings(ctx, budget, seed, method)
        rep = load_rep(source)
        result = verify(rep, settings.method, settings.element_budget())

    if output_format == "json":
        _finish(ctx, output_format, report.verification_payload(result, monitor.get_stats()))
    else:
        report.print_verification(result)
        _finish(ctx, output_format)
    ctx.exit(0 if result.is_string_c_group else 1)


@cli.command("reduce")
@click.argument("source")
@click.option("--direction", type=click.Choice(DIRECTIONS), default="left", show_default=True)
@click.option("--iterate", is_flag=True, help="Reduce repeatedly down to the target rank.")
@click.option("--target-rank", type=int, default=None, help="Rank to stop at (default 3 with --iterate).")
@click.option("--verify-each", is_flag=True, help="Verify every reduced representation.")
@click.option("--force", is_flag=True, help="Reduce inputs that are not irreducible string C-groups.")
@click.option("--out-dir", type=click.Path(file_okay=False, path_type=Path), default=None,
              help="Write every accepted reduced representation here.")
@click.option("--method", type=click.Choice(METHODS), default=None)
@budget_options
@format_option
@click.pass_context
def reduce_command(ctx, source, direction, iterate, target_rank, verify_each, force, out_dir,
                   method, budget, seed, output_format):
    """
    Apply the rank reduction to SOURCE.

    A single step always verifies its result; with --iterate the results are
    verified only under --verify-each.
    """
    with guarded():
        settings = _settings(ctx, budget, seed, method)
        rep = load_rep(source)
        if iterate or target_rank is not None:
            target = 3 if target_rank is None else target_rank
        else:
            target, verify_each = rep.rank - 1, True
        chain = reduce_iterate(rep, target, verify_each, settings.element_budget(),
                               direction=direction, method=settings.method, force=force)

        if out_dir is not None:
            base = (rep.label or Path(source).stem).replace(":", "_")
            for reduced, _ in chain.steps:
                write_document(reduced, out_dir / f"{base}-{direction}-rank{reduced.rank}.rep")

    if output_format == "json":
        _finish(ctx, output_format, report.chain_payload(chain, monitor.get_stats()))
    else:
        report.print_chain(chain)
        _finish(ctx, output_format)
    ctx.exit(0 if chain.reached_target else 1)


@cli.group("cpr")
def cpr_group():
    """Parse, analyze and convert CPR graphs."""


def _load_graph(source: str) -> CprGraph:
    document = load_source(source)
    if not isinstance(document, CprGraph):
        raise ValueError(f"'{source}' is not a CPR graph")
    return document


@cpr_group.command("parse")
@click.argument("source")
def cpr_parse_command(source):
    """Print the canonical form of a CPR graph."""
    with guarded():
        graph = _load_graph(source)
    click.echo(cpr_emit(graph), nl=False)


@cpr_group.command("analyze")
@click.argument("source")
@click.option("--labels", default=None, help="Comma-separated edge labels to keep (default all).")
@format_option
@click.pass_context
def cpr_analyze_command(ctx, source, labels, output_format):
    """Connected components (orbits) of a CPR graph, optionally restricted to some labels."""
    with guarded():
        graph = _load_graph(source)
        if labels is None:
            selected = list(range(graph.rank))
        else:
            try:
                selected = sorted({int(token) for token in labels.split(",") if token.strip()})
            except ValueError:
                raise ValueError(f"--labels must be comma-separated integers, got {labels!r}")
        components = connectivity(graph, selected)

    if output_format == "json":
        _finish(ctx, output_format, report.cpr_payload(graph, selected, components, monitor.get_stats()))
    else:
        report.print_cpr_analysis(graph, selected, components)
        _finish(ctx, output_format)


@cpr_group.command("convert")
@click.argument("source")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write to this file instead of stdout.")
def cpr_convert_command(source, out):
    """Convert a CPR graph to a permutation file, or a permutation file to a CPR graph."""
    with guarded():
        document = load_source(source)
        if isinstance(document, CprGraph):
            converted = cpr_to_rep(document)
            text = emit_rep(converted)
        else:
            converted = rep_to_cpr(document)
            text = cpr_emit(converted)
        if out is not None:
            write_document(converted, out)
            return
    click.echo(text, nl=False)


@cli.group("example")
def example_group():
    """Registered example representations."""


@example_group.command("list")
def example_list_command():
    """List the registered examples."""
    report.print_examples(registry.entries())


@example_group.command("emit")
@click.argument("name")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write to this file instead of stdout.")
def example_emit_command(name, out):
    """Print the file of a registered example."""
    with guarded():
        text = registry.text(name)
        if out is not None:
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(text, encoding="utf-8")
            return
    click.echo(text, nl=False)


@cli.command("search")
@click.argument("source", required=False)
@click.option("--dihedral", type=click.IntRange(min=2), default=None,
              help="Search the dihedral group of order 2K instead of SOURCE's group.")
@click.option("--rank", type=int, required=True, help="Rank of the representations to find.")
@click.option("--method", type=click.Choice(METHODS), default=None)
@budget_options
@format_option
@click.pass_context
def search_command(ctx, source, dihedral, rank, method, budget, seed, output_format):
    """Find every irreducible string C-group representation of a small group."""
    with guarded():
        if (source is None) == (dihedral is None):
            raise ValueError("give either SOURCE or --dihedral K")
        settings = _settings(ctx, budget, seed, method)
        if dihedral is not None:
            group = dihedral_group(dihedral)
            description = f"dihedral group of order {2 * dihedral}"
        else:
            rep = load_rep(source)
            group = rep.group(settings.element_budget())
            description = f"group of {rep.label or source}"
        found = search_reps(group, rank, settings.element_budget(), bound=settings.search_bound,
                            method=settings.method)
        order = group.order()

    if output_format == "json":
        _finish(ctx, output_format, report.search_payload(description, rank, found, order, monitor.get_stats()))
    else:
        report.print_search(description, rank, found, order)
        _finish(ctx, output_format)


def main():
    cli()


if __name__ == "__main__":
    main()
