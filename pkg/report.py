"""
Rendering of results: rich tables for people, JSON for machines.

Every JSON payload carries ``"schema": 1`` and the same data the text
rendering shows.
"""
import json
from typing import Dict, List, Optional, Sequence, Tuple

from rich.console import Console
from rich.markup import escape
from rich.table import Table

from cpr import CprGraph
from rankred import VARIANTS, ReductionChain, ReductionOutcome, guaranteed_ranks, guaranteed_run_length
from sggi import SggiRep, VerificationReport, format_element, schlafli_type

SCHEMA_VERSION = 1

console = Console()


def _flag(value: Optional[bool]) -> str:
    if value is None:
        return "[dim]-[/dim]"
    return "[green]yes[/green]" if value else "[red]no[/red]"


def _payload(command: str, timings: Optional[Dict] = None, **data) -> Dict:
    payload = {"schema": SCHEMA_VERSION, "command": command}
    payload.update(data)
    payload["timings"] = timings or {}
    return payload


def to_json(payload: Dict) -> str:
    return json.dumps(payload, indent=2)


def rep_summary(rep: SggiRep) -> Dict:
    return {
        "label": rep.label,
        "engine": rep.engine,
        "rank": rep.rank,
        "generators": [format_element(gen) for gen in rep.generators],
    }


def verification_payload(report: VerificationReport, timings: Optional[Dict] = None) -> Dict:
    return _payload("verify", timings, report=report.to_dict())


def print_verification(report: VerificationReport, out: Console = console) -> None:
    """Summary table, pair-order table and the failure witness, if any."""
    title = escape(report.label or "representation")
    out.print(f"\n[bold cyan]{title}[/bold cyan] [dim]({report.engine}, rank {report.rank})[/dim]")

    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("Check", style="cyan", no_wrap=True)
    table.add_column("Result")
    table.add_row("sggi", _flag(report.is_sggi))
    table.add_row("Schläfli type", escape(str(report.schlafli)) if report.schlafli else "[dim]-[/dim]")
    table.add_row("irreducible", _flag(report.is_irreducible))
    table.add_row("string C-group", _flag(report.is_string_c_group))
    table.add_row("method", report.method or "[dim]-[/dim]")
    table.add_row("group order", f"{report.group_order:,}" if report.group_order else "[dim]-[/dim]")
    out.print(table)

    if report.rank:
        orders = Table(title="orders of rho_i rho_j", show_header=True, header_style="bold magenta")
        orders.add_column("", style="cyan")
        for j in range(report.rank):
            orders.add_column(str(j), justify="right")
        for i, row in enumerate(report.pair_order_table):
            orders.add_row(str(i), *(str(value) for value in row))
        out.print(orders)

    witness = report.failure_witness
    if witness is not None:
        out.print(f"[red]✗ {escape(witness.message)}[/red]")
        if witness.element:
            out.print(f"[red]  witness element: {escape(witness.element)}[/red]")


def outcome_payload(outcome: ReductionOutcome, step: int) -> Dict:
    data = {"step": step}
    data.update(outcome.to_dict())
    data["label"] = outcome.reduced.label
    return data


def run_lengths(rep: SggiRep) -> Dict[str, Dict]:
    """Odd-entry run length and guaranteed ranks of an sggi of rank >= 4, for both variants."""
    entries = schlafli_type(rep).entries
    return {
        variant: {
            "run_length": guaranteed_run_length(entries, variant),
            "guaranteed_ranks": guaranteed_ranks(entries, variant),
        }
        for variant in VARIANTS
    }


def chain_payload(chain: ReductionChain, timings: Optional[Dict] = None) -> Dict:
    steps = [outcome_payload(outcome, number) for number, (_, outcome) in enumerate(chain.steps, start=1)]
    rejected = None
    if chain.rejected is not None:
        rejected = outcome_payload(chain.rejected, len(chain.steps) + 1)
    return _payload(
        "reduce",
        timings,
        initial=rep_summary(chain.initial),
        run_lengths=run_lengths(chain.initial),
        direction=chain.direction,
        target_rank=chain.target_rank,
        ranks=chain.ranks,
        steps=steps,
        rejected=rejected,
        stop_reason=chain.stop_reason,
        reached_target=chain.reached_target,
    )


def print_chain(chain: ReductionChain, out: Console = console) -> None:
    """One row per step; step 0 is the input representation."""
    title = escape(chain.initial.label or "representation")
    out.print(f"\n[bold cyan]{title}[/bold cyan] [dim](reduce {chain.direction} to rank {chain.target_rank})[/dim]")

    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("Step", justify="right", style="cyan")
    table.add_column("Rank", justify="right")
    table.add_column("Schläfli type")
    table.add_column("theorem")
    table.add_column("odd")
    table.add_column("preserved")
    table.add_column("guaranteed")
    table.add_column("verified")
    table.add_column("order", justify="right")
    table.add_row("0", str(chain.initial.rank), "", "", "", "", "", "", "")

    rows: List[Tuple[str, ReductionOutcome]] = [
        (str(number), outcome) for number, (_, outcome) in enumerate(chain.steps, start=1)]
    if chain.rejected is not None:
        rows.append((f"{len(chain.steps) + 1} [red](rejected)[/red]", chain.rejected))
    for step, outcome in rows:
        table.add_row(
            step,
            str(outcome.reduced.rank),
            escape(str(outcome.reduced_schlafli)) if outcome.reduced_schlafli else "-",
            _flag(outcome.theorem_condition),
            _flag(outcome.odd_condition),
            _flag(outcome.group_preserved),
            _flag(outcome.guaranteed),
            _flag(outcome.verified),
            f"{outcome.reduced_order:,}",
        )
    out.print(table)
    for variant, data in run_lengths(chain.initial).items():
        ranks = ", ".join(str(rank) for rank in data["guaranteed_ranks"])
        out.print(f"[dim]{variant} run length: {data['run_length']}, guaranteed ranks: {ranks}[/dim]")

    colour = "green" if chain.reached_target else "red"
    out.print(f"[{colour}]{escape(chain.stop_reason)}[/{colour}]")


def cpr_payload(graph: CprGraph, labels: Sequence[int], components: List[Tuple[int, ...]],
                timings: Optional[Dict] = None) -> Dict:
    return _payload(
        "cpr analyze",
        timings,
        label=graph.label,
        nodes=graph.nodes,
        rank=graph.rank,
        edges=len(graph.edges),
        labels=list(labels),
        components=[list(component) for component in components],
        transitive=len(components) == 1,
    )


def print_cpr_analysis(graph: CprGraph, labels: Sequence[int], components: List[Tuple[int, ...]],
                       out: Console = console) -> None:
    title = escape(graph.label or "CPR graph")
    out.print(f"\n[bold cyan]{title}[/bold cyan] [dim]({graph.nodes} nodes, rank {graph.rank}, "
              f"{len(graph.edges)} edges)[/dim]")
    out.print(f"[dim]labels: {', '.join(str(label) for label in labels)}[/dim]\n")

    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("#", justify="right", style="cyan")
    table.add_column("Size", justify="right")
    table.add_column("Nodes")
    for number, component in enumerate(components, start=1):
        table.add_row(str(number), str(len(component)), " ".join(str(node) for node in component))
    out.print(table)
    if len(components) == 1:
        out.print("[green]✓ transitive[/green]")
    else:
        out.print(f"[yellow]intransitive: {len(components)} orbits[/yellow]")


def print_examples(entries: Sequence[Tuple[str, str]], out: Console = console) -> None:
    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("Name", style="cyan", no_wrap=True)
    table.add_column("Description", style="white")
    for name, description in entries:
        table.add_row(escape(name), escape(description))
    out.print(table)


def search_payload(description: str, rank: int, found: Sequence[SggiRep],
                   group_order: int, timings: Optional[Dict] = None) -> Dict:
    return _payload(
        "search",
        timings,
        group=description,
        group_order=group_order,
        rank=rank,
        count=len(found),
        representations=[[str(gen) for gen in rep.generators] for rep in found],
    )


def print_search(description: str, rank: int, found: Sequence[SggiRep], group_order: int,
                 out: Console = console) -> None:
    out.print(f"\n[bold cyan]{escape(description)}[/bold cyan] [dim](order {group_order:,}, rank {rank})[/dim]")
    if not found:
        out.print("[yellow]No string C-group representations found[/yellow]")
        return
    out.print(f"[dim]Total representations: {len(found)}[/dim]\n")
    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("#", justify="right", style="cyan")
    for i in range(rank):
        table.add_column(f"rho_{i}")
    for number, rep in enumerate(found, start=1):
        table.add_row(str(number), *(str(gen) for gen in rep.generators))
    out.print(table)


def print_timings(stats: Dict[str, Dict], out: Console = console) -> None:
    if not stats:
        return
    table = Table(title="timings", show_header=True, header_style="bold magenta")
    table.add_column("Stage", style="cyan")
    table.add_column("Calls", justify="right")
    table.add_column("Total (s)", justify="right")
    table.add_column("Max (s)", justify="right")
    for name, stat in stats.items():
        table.add_row(name, str(stat["total_calls"]), f"{stat['total_time']:.4f}", f"{stat['max_time']:.4f}")
    out.print(table)
