"""Main Typer application entry point."""

import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

import typer
from rich.console import Console
from rich.table import Table

from hml import __version__
from hml.commands import CorpusRunner, summarize
from hml.core import (
    ConfigLoadError,
    Derivation,
    DerivationError,
    DocumentError,
    FormulaSyntaxError,
    HilbertProof,
    NestingError,
    NotXProofError,
    PreconditionError,
    ProofSearch,
    ResourceLimitError,
    SortError,
    TautologyLimitError,
    UnknownLogicError,
    UnsupportedLogicError,
    apply_witness,
    check_derivation,
    check_hilbert_proof,
    check_witness,
    derivation_from_hilbert,
    disjunction_split,
    dump_document,
    eliminate_cuts,
    forgetful_f,
    format_formula,
    format_witness,
    get_profile,
    get_registry,
    gl_h_decide,
    hilbert_from_derivation,
    load_document,
    parse_formula,
    parse_goal,
    parse_h,
    parse_u,
    parse_witness,
    rank,
    s_translate,
    t_translate,
)
from hml.models import DecisionMethod, LogicProfile, SplitSide

app = typer.Typer(
    name="hml",
    help="Workbench for hierarchical provability logics",
    no_args_is_help=True,
)

console = Console()
err_console = Console(stderr=True)

# Configure logging
logging.basicConfig(
    level=logging.WARNING,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)

EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

INVALID_INPUT = (
    FormulaSyntaxError,
    NestingError,
    SortError,
    PreconditionError,
    NotXProofError,
    DerivationError,
)
USAGE_ERRORS = (
    UnknownLogicError,
    UnsupportedLogicError,
    DocumentError,
    ConfigLoadError,
    OSError,
    ValueError,
)
LIMIT_ERRORS = (ResourceLimitError, TautologyLimitError)


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Map workbench errors to exit codes 1 (invalid), 2 (usage) and 3 (resource limit)."""
    try:
        yield
    except INVALID_INPUT as e:
        err_console.print(f"[red]{type(e).__name__}: {e}[/red]")
        raise typer.Exit(code=EXIT_NEGATIVE) from e
    except USAGE_ERRORS as e:
        err_console.print(f"[red]{type(e).__name__}: {e}[/red]")
        raise typer.Exit(code=EXIT_USAGE) from e
    except LIMIT_ERRORS as e:
        err_console.print(f"[yellow]{type(e).__name__}: {e}[/yellow]")
        raise typer.Exit(code=EXIT_RESOURCE) from e


def _logic(name: str) -> LogicProfile:
    return get_profile(name)


def _read_input(path: str) -> str:
    """Contents of ``path``; ``-`` reads standard input."""
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _sort(profile: LogicProfile) -> str:
    return "h" if profile.is_hierarchical else "u"


@app.command()
def parse(formula: str = typer.Argument(..., help="Formula text")) -> None:
    """Parse a formula and print it in canonical form."""
    with _exit_codes():
        a = parse_formula(formula)
    typer.echo(format_formula(a))


@app.command("check-wff")
def check_wff(formula: str = typer.Argument(..., help="Indexed formula text")) -> None:
    """Check that every box index exceeds the rank of its scope."""
    with _exit_codes():
        a = parse_h(formula)
    typer.echo(f"well-formed, rank {rank(a)}")


@app.command()
def prove(
    goal: str = typer.Argument(..., help="Formula, or sequent 'A, B => C'"),
    logic: str = typer.Option(..., "--logic", "-l", help="Logic name, e.g. k4h"),
    hilbert: bool = typer.Option(
        False, "--hilbert", help="Emit a Hilbert proof instead of a derivation"
    ),
    budget: Optional[int] = typer.Option(None, "--budget", help="Search node budget"),
) -> None:
    """Search for a cut-free proof and print it as JSON."""
    with _exit_codes():
        profile = _logic(logic)
        if profile.decision == DecisionMethod.NONE:
            raise UnsupportedLogicError(f"{profile.id.value} has no decision procedure")
        sequent = parse_goal(goal, _sort(profile))
        if profile.decision == DecisionMethod.GL_REDUCTION:
            if sequent.left or len(sequent.right) != 1:
                raise UnsupportedLogicError(f"{profile.id.value} decides single formulas only")
            verdict = gl_h_decide(sequent.right[0], budget)
            found = verdict.evidence
        else:
            found = ProofSearch(profile.id, budget).prove(sequent)
        if found is None:
            err_console.print(f"[yellow]not provable in {profile.id.value}: {sequent}[/yellow]")
            raise typer.Exit(code=EXIT_NEGATIVE)
        proof = hilbert_from_derivation(profile.id, found) if hilbert else found
    typer.echo(dump_document(proof))


@app.command("check-proof")
def check_proof(
    file: str = typer.Argument(..., help="Proof document, '-' for stdin"),
    system: str = typer.Option(..., "--system", help="hilbert or sequent"),
    logic: str = typer.Option(..., "--logic", "-l", help="Logic name, e.g. k4h"),
) -> None:
    """Check a Hilbert proof or a derivation read from JSON."""
    with _exit_codes():
        if system not in ("hilbert", "sequent"):
            raise ValueError(f"--system must be hilbert or sequent, not {system!r}")
        profile = _logic(logic)
        proof, goal = load_document(_read_input(file))
        if system == "hilbert":
            if not isinstance(proof, HilbertProof):
                raise DocumentError("expected a Hilbert proof document")
            result = check_hilbert_proof(profile.id, proof, goal)
        else:
            if not isinstance(proof, Derivation):
                raise DocumentError("expected a derivation document")
            result = check_derivation(profile.id, proof)
    if not result:
        typer.echo(result.describe())
        raise typer.Exit(code=EXIT_NEGATIVE)
    typer.echo("valid")


@app.command()
def cutelim(
    file: str = typer.Argument(..., help="Derivation or Hilbert proof document, '-' for stdin"),
    logic: str = typer.Option(..., "--logic", "-l", help="k4h, kd4h or s4h"),
) -> None:
    """Remove every cut; Hilbert proofs are simulated as derivations first."""
    with _exit_codes():
        profile = _logic(logic)
        proof, _ = load_document(_read_input(file))
        if isinstance(proof, HilbertProof):
            proof = derivation_from_hilbert(profile.id, proof)
        cut_free = eliminate_cuts(profile.id, proof)
    typer.echo(dump_document(cut_free))


@app.command()
def translate(
    formula: str = typer.Argument(..., help="Formula text"),
    direction: str = typer.Option("t", "--dir", help="t (indexed to Q), s (X to indexed) or f"),
) -> None:
    """Translate between indexed and uni-modal formulas."""
    with _exit_codes():
        if direction == "t":
            output = format_formula(t_translate(parse_h(formula)))
        elif direction == "s":
            output = format_formula(s_translate(parse_u(formula)))
        elif direction == "f":
            image, w = forgetful_f(parse_h(formula))
            output = f"{format_formula(image)}\n{format_witness(w)}"
        else:
            raise ValueError(f"--dir must be t, s or f, not {direction!r}")
    typer.echo(output)


@app.command()
def witness(
    formula: str = typer.Option(..., "--formula", help="Uni-modal formula"),
    check: str = typer.Option(..., "--check", help="Witness as nested arrays, e.g. [1,[0,[]]]"),
) -> None:
    """Check a witness and print the indexed formula it produces."""
    with _exit_codes():
        b = parse_u(formula)
        w = parse_witness(check)
    if not check_witness(w, b):
        typer.echo(f"{format_witness(w)} is not a witness for {format_formula(b)}")
        raise typer.Exit(code=EXIT_NEGATIVE)
    typer.echo(format_formula(apply_witness(b, w)))


@app.command()
def split(
    n: int = typer.Argument(..., min=0, help="Index of the left box"),
    a: str = typer.Argument(..., help="Body of the left box"),
    m: int = typer.Argument(..., min=0, help="Index of the right box"),
    b: str = typer.Argument(..., help="Body of the right box"),
    logic: str = typer.Option(..., "--logic", "-l", help="k4h, kd4h, s4h or glh"),
) -> None:
    """Decide which disjunct of [n]A | [m]B is provable."""
    with _exit_codes():
        profile = _logic(logic)
        side = disjunction_split(profile.id, n, parse_h(a), m, parse_h(b))
    typer.echo(side.value)
    if side == SplitSide.NOT_THEOREM:
        raise typer.Exit(code=EXIT_NEGATIVE)


@app.command()
def corpus(
    seed: int = typer.Option(0, "--seed", help="Generator seed"),
    count: int = typer.Option(100, "--count", min=0, help="Number of formulas"),
    depth: int = typer.Option(4, "--depth", min=1, help="Maximum formula depth"),
    max_index: int = typer.Option(3, "--max-index", min=0, help="Largest box index"),
    logic: str = typer.Option("k4h", "--logic", "-l", help="Logic name"),
    bridge: bool = typer.Option(False, "--bridge", help="Also decide t-images (k4h, s4h)"),
    budget: Optional[int] = typer.Option(None, "--budget", help="Search node budget per formula"),
    progress: bool = typer.Option(False, "--progress", help="Show a progress bar on stderr"),
) -> None:
    """Decide a seeded corpus and print one JSON record per formula."""
    with _exit_codes():
        profile = _logic(logic)
        runner = CorpusRunner(profile.id, bridge=bridge, node_budget=budget, show_progress=progress)
        records = runner.run(seed, count, depth, max_index)
    for record in sorted(records, key=lambda r: r.index):
        typer.echo(record.model_dump_json(exclude_none=True))
    if progress:
        runner.timer.display_summary()
    if summarize(records).get("bridge_violations"):
        raise typer.Exit(code=EXIT_NEGATIVE)


@app.command()
def logics() -> None:
    """List the logic catalogue."""
    with _exit_codes():
        profiles = list(get_registry())

    table = Table(title="Logics", show_header=True)
    table.add_column("Name", style="cyan")
    table.add_column("Id", style="magenta")
    table.add_column("Axioms", style="green")
    table.add_column("Decision", style="yellow")
    table.add_column("Description")
    for profile in profiles:
        table.add_row(
            profile.cli_name,
            profile.id.value,
            ", ".join(s.value for s in profile.axioms),
            profile.decision.value,
            profile.description,
        )
    console.print(table)
    console.print(f"\n[dim]Total: {len(profiles)} logics[/dim]")


def _version_callback(value: bool) -> None:
    if value:
        console.print(f"hml version {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
    version: Optional[bool] = typer.Option(
        None,
        "--version",
        help="Show version",
        callback=_version_callback,
        is_eager=True,
    ),
) -> None:
    """hml - hierarchical provability logic workbench."""
    if verbose:
        logging.getLogger("hml").setLevel(logging.DEBUG)


if __name__ == "__main__":
    app()
