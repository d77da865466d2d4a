"""CLI interface for doublab."""

import logging
import tomllib
from collections.abc import Callable
from pathlib import Path
from typing import Annotated, Any, TypeVar

import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from .config import EngineType, ExperimentConfig, OracleKind, get_config, reload_config
from .errors import DoublabError, InvariantViolation
from .records import RunRecord
from .verify.procedures import PROCEDURES

app = typer.Typer(
    name="dtlab",
    help="Simulate and verify random recursive trees with doubling events",
    no_args_is_help=True,
)
config_app = typer.Typer(help="Configuration management")
app.add_typer(config_app, name="config")

console = Console()

T = TypeVar("T")

ConfigOpt = Annotated[Path | None, typer.Option("--config", "-c", help="Experiment config (.json or .toml)")]
SeedOpt = Annotated[int | None, typer.Option("--seed", "-s", help="Master seed")]
NOpt = Annotated[list[int] | None, typer.Option("--n", "-n", help="Number of steps (repeatable)")]
ReplicatesOpt = Annotated[int | None, typer.Option("--replicates", "-r", help="Replicates per n")]
OutOpt = Annotated[Path | None, typer.Option("--out", "-o", help="Output directory")]
ParallelismOpt = Annotated[int | None, typer.Option("--parallelism", "-p", help="Worker processes")]
CapOpt = Annotated[int | None, typer.Option("--cap", help="Override the node or oracle cap")]
ExperimentOpt = Annotated[str | None, typer.Option("--experiment", "-x", help="Run name (subdirectory of --out)")]
VerboseOpt = Annotated[bool, typer.Option("--verbose", "-v", help="Log progress")]


def _setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def _guard(fn: Callable[[], T]) -> T:
    """Run ``fn`` and map lab errors onto exit codes."""
    try:
        return fn()
    except DoublabError as e:
        console.print(f"[red]{e}[/red]")
        raise typer.Exit(e.exit_code)
    except InvariantViolation as e:
        console.print(f"[red]Invariant violated: {e}[/red]")
        raise typer.Exit(1)


def _build_config(config_path: Path | None, **overrides: Any) -> ExperimentConfig:
    """File values first, then every flag that was given."""
    data: dict[str, Any] = {}
    if config_path is not None:
        data = ExperimentConfig.load(config_path).to_dict()
        data = {k: v for k, v in data.items() if v is not None}
    for key, value in overrides.items():
        if value is None or value == []:
            continue
        data[key] = value.value if hasattr(value, "value") else value
    data.setdefault("seed", 0)
    if "parallelism" not in data:
        data["parallelism"] = get_config().parallelism
    return ExperimentConfig.from_dict(data)


def _parse_threshold(text: str) -> tuple[str, Any]:
    key, sep, raw = text.partition("=")
    if not sep:
        raise typer.BadParameter(f"expected KEY=VALUE, got {text!r}")
    try:
        value = tomllib.loads(f"v = {raw}")["v"]
    except tomllib.TOMLDecodeError:
        value = raw
    return key.strip(), value


def _print_written(record: RunRecord) -> None:
    console.print(f"[dim]Written to {record.out_dir}[/dim]")


@app.command()
def simulate(
    config: ConfigOpt = None,
    seed: SeedOpt = None,
    n: NOpt = None,
    replicates: ReplicatesOpt = None,
    engine: Annotated[EngineType | None, typer.Option("--engine", "-e", help="Simulation engine")] = None,
    m: Annotated[int | None, typer.Option("--m", help="Degree columns U_0..U_m (U_m lumps the tail)")] = None,
    k: Annotated[int | None, typer.Option("--k", help="Tagged nodes")] = None,
    attach: Annotated[str | None, typer.Option("--attach", help="Tagged attach mode: tag or uniform")] = None,
    out: OutOpt = None,
    parallelism: ParallelismOpt = None,
    cap: CapOpt = None,
    experiment: ExperimentOpt = None,
    verbose: VerboseOpt = False,
):
    """Run an engine and write one CSV row per replicate.

    Example:
        dtlab simulate --engine size --n 1000000 --replicates 500 --seed 7
    """
    from .commands import cmd_simulate

    _setup_logging(verbose)
    cfg = _guard(lambda: _build_config(
        config, seed=seed, n_values=n, replicates=replicates, engine=engine, m=m, k=k, attach=attach,
        out_dir=str(out) if out else None, parallelism=parallelism, cap=cap, experiment=experiment,
    ))

    with console.status(f"[bold green]Simulating {cfg.engine.value}..."):
        record = _guard(lambda: cmd_simulate(cfg))

    table = Table(title=f"{cfg.engine.value} ({cfg.replicates} replicates)")
    table.add_column("n", style="cyan")
    table.add_column("mean B", justify="right")
    table.add_column("mean kappa", justify="right")
    table.add_column("mean H", justify="right")
    for n_value, stats in record.summary.items():
        table.add_row(
            n_value,
            *(f"{stats[c]:.4g}" if stats[c] is not None else "-" for c in ("mean_B", "mean_kappa", "mean_H")),
        )
    console.print(table)
    _print_written(record)


@app.command()
def oracle(
    kind: Annotated[OracleKind, typer.Argument(help="Exact computation")] = OracleKind.MOMENTS,
    config: ConfigOpt = None,
    n: NOpt = None,
    chain: Annotated[str | None, typer.Option("--chain", help="Chain for the statistic oracle")] = None,
    k: Annotated[int | None, typer.Option("--k", help="Tagged nodes")] = None,
    k_max: Annotated[int | None, typer.Option("--k-max", help="Highest moment")] = None,
    m: Annotated[int | None, typer.Option("--m", help="Largest matrix size for fixed-point")] = None,
    attach: Annotated[str | None, typer.Option("--attach", help="Tagged attach mode")] = None,
    seed: SeedOpt = None,
    out: OutOpt = None,
    cap: CapOpt = None,
    experiment: ExperimentOpt = None,
    verbose: VerboseOpt = False,
):
    """Compute exact laws, moments or identities and write them as rational JSON.

    Examples:
        dtlab oracle moments --k-max 10 --n 60
        dtlab oracle size --n 2
        dtlab oracle statistic --chain tagged_2 --n 3
    """
    from .commands import cmd_oracle

    _setup_logging(verbose)
    cfg = _guard(lambda: _build_config(
        config, oracle=kind, n_values=n, chain=chain, k=k, k_max=k_max, m=m, attach=attach, seed=seed,
        out_dir=str(out) if out else None, cap=cap, experiment=experiment,
    ))

    with console.status(f"[bold green]Computing {cfg.oracle.value}..."):
        record = _guard(lambda: cmd_oracle(cfg))

    result = record.oracle["result"]
    if cfg.oracle == OracleKind.MOMENTS:
        table = Table(title="Moment limits")
        table.add_column("k", style="cyan")
        table.add_column("m_k", style="white")
        for key, value in result["m_k"].items():
            table.add_row(key, value)
        console.print(table)
    elif cfg.oracle in (OracleKind.SIZE, OracleKind.STATISTIC):
        for n_value, law in result.items():
            shown = ", ".join(f"{state}: {p}" for state, p in list(law.items())[:8])
            more = ", ..." if len(law) > 8 else ""
            console.print(Panel(shown + more, title=f"n = {n_value} ({len(law)} states)", border_style="green"))
    else:
        console.print(f"[green]{cfg.oracle.value}: {len(result)} entries computed.[/green]")
    _print_written(record)


@app.command()
def verify(
    tests: Annotated[list[str] | None, typer.Argument(help="Procedures to run (default: all)")] = None,
    config: ConfigOpt = None,
    seed: SeedOpt = None,
    threshold: Annotated[
        list[str] | None, typer.Option("--threshold", "-t", help="Override SECTION.KEY=VALUE (repeatable)")
    ] = None,
    out: OutOpt = None,
    parallelism: ParallelismOpt = None,
    experiment: ExperimentOpt = None,
    verbose: VerboseOpt = False,
):
    """Run verification procedures; exits 1 when a gated check fails.

    Examples:
        dtlab verify                      # full suite
        dtlab verify moments degree_limit -p 8
        dtlab verify moments -t moments.ci_level=0.99
    """
    from .commands import cmd_verify

    _setup_logging(verbose)
    overrides = dict(_parse_threshold(t) for t in threshold or [])
    cfg = _guard(lambda: _build_config(
        config, tests=tests, seed=seed, out_dir=str(out) if out else None, parallelism=parallelism,
        experiment=experiment,
    ))
    if overrides:
        cfg.thresholds = {**cfg.thresholds, **overrides}

    with console.status("[bold green]Verifying..."):
        record = _guard(lambda: cmd_verify(cfg))

    table = Table(title="Verification")
    table.add_column("procedure", style="cyan")
    table.add_column("result")
    table.add_column("failed checks", style="white")
    for report in record.reports:
        failed = [c["name"] for c in report["checks"] if c["gated"] and not c["ok"]]
        status = "[green]pass[/green]" if report["passed"] else "[red]FAIL[/red]"
        table.add_row(report["name"], status, ", ".join(failed))
    console.print(table)
    _print_written(record)

    if not record.passed:
        raise typer.Exit(1)


@app.command()
def report(
    run_dir: Annotated[Path, typer.Argument(help="Directory holding run records")],
    verbose: VerboseOpt = False,
):
    """Write a markdown report over every run record in a directory."""
    from .commands import cmd_report

    _setup_logging(verbose)
    path = _guard(lambda: cmd_report(run_dir))
    console.print(f"[green]Report written to {path}[/green]")


@app.command("tests")
def list_tests():
    """List the verification procedures."""
    table = Table(title="Verification procedures")
    table.add_column("name", style="cyan")
    table.add_column("checks", style="white")
    for name, fn in PROCEDURES.items():
        table.add_row(name, (fn.__doc__ or "").strip().splitlines()[0])
    console.print(table)


# ============================================================================
# Config Commands
# ============================================================================


@config_app.command("show")
def config_show():
    """Show current settings."""
    settings = get_config()

    console.print("[bold]Current Configuration:[/bold]")
    console.print(f"  Node cap: [cyan]{settings.node_cap}[/cyan]")
    console.print(f"  Parallelism: [cyan]{settings.parallelism}[/cyan]")
    console.print(f"  Output directory: [cyan]{settings.default_out_dir()}[/cyan]")
    console.print(f"  Continuous-time exact cap: [cyan]{settings.ct_exact_cap}[/cyan]")
    console.print(f"  Skeleton log switch: [cyan]{settings.skeleton_log_switch}[/cyan]")
    console.print(f"  Config file: [dim]{settings.config_path()}[/dim]")

    console.print("\n[bold]Oracle caps:[/bold]")
    for name, value in vars(settings.caps).items():
        console.print(f"  {name}: [cyan]{value}[/cyan]")


@config_app.command("set")
def config_set(
    key: Annotated[str, typer.Argument(help="Setting, e.g. parallelism or caps.size_oracle")],
    value: Annotated[str, typer.Argument(help="New value")],
):
    """Change one setting.

    Examples:
        dtlab config set parallelism 8
        dtlab config set caps.size_oracle 30
        dtlab config set out_dir ~/runs
    """
    settings = get_config()
    section, _, name = key.rpartition(".")
    target = settings.caps if section == "caps" else settings
    if section not in ("", "caps") or not hasattr(target, name) or name == "caps":
        console.print(f"[red]Unknown setting: {key}[/red]")
        raise typer.Exit(2)

    if name == "out_dir":
        setattr(target, name, str(Path(value).expanduser()) if value else None)
    else:
        try:
            setattr(target, name, int(value))
        except ValueError:
            console.print(f"[red]{key} expects an integer, got {value!r}[/red]")
            raise typer.Exit(2)

    settings.save()
    reload_config()
    console.print(f"[green]{key} set to: {value}[/green]")


def main():
    """Entry point for the CLI."""
    app()


if __name__ == "__main__":
    main()
