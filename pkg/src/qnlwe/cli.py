import hashlib
from collections import Counter
from collections.abc import Iterator
from contextlib import contextmanager
from enum import Enum
from pathlib import Path

import typer
from rich.console import Console
from rich.markup import escape

from .config import DEFAULT_SEED, DEFAULT_TOLERANCE, DEFAULT_TRIALS, CommandConfig
from .ensemble import (
    StateLabel,
    ensemble_from_process,
    find_nonorthogonal_pair,
    format_ensemble,
    local_obstruction_report,
    process_from_ensemble,
    read_ensemble,
)
from .errors import InputError, NonOrthonormalError, QnlweError
from .process import (
    ProcessTable,
    check_classical_process,
    format_process,
    has_no_global_past,
    read_process,
    signaling_relation,
)
from .protocols import (
    channel_distribution,
    channel_is_faithful,
    discrimination_tally,
    measurement_distribution,
    run_channel,
    run_measurement,
)
from .search import canonical_classes, exhaustive_search, sample_functions
from .statevector import check_seed, derive_seed, from_label, gram_deviation
from .utils import bits_to_word, configure_logging, word_to_bits

EXIT_OK = 0
EXIT_PROPERTY_FALSE = 1
EXIT_INPUT_ERROR = 2

console = Console(stderr=True, soft_wrap=True)

app = typer.Typer(
    help="Classical processes without causal order and the product-state ensembles they induce.",
    add_completion=False,
)


class Filter(str, Enum):
    all = "all"
    no_global_past = "no-global-past"


def main() -> None:
    app()


@app.callback()
def options(
    logging: bool = typer.Option(False, "-l", "--logging", help="Enable logging"),
) -> None:
    configure_logging(logging)


@contextmanager
def _reporting_errors() -> Iterator[None]:
    try:
        yield
    except NonOrthonormalError as e:
        console.print(f"[bold red]Not orthonormal:[/] {escape(str(e))}")
        raise typer.Exit(EXIT_PROPERTY_FALSE)
    except QnlweError as e:
        console.print(f"[bold red]Input error:[/] {escape(str(e))}")
        raise typer.Exit(EXIT_INPUT_ERROR)


def _emit(config: CommandConfig, body: list[str]) -> None:
    text = "\n".join([f"# {h}" for h in config.header()] + body) + "\n"
    if config.output is None:
        typer.echo(text, nl=False)
    else:
        config.output.write_text(text, encoding="utf-8")


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _exit(ok: bool) -> None:
    if not ok:
        raise typer.Exit(EXIT_PROPERTY_FALSE)


_FILE = typer.Argument(..., exists=True, file_okay=True, dir_okay=False, readable=True)
_OUT = typer.Option(None, "--out", "-o", help="Write the report here instead of stdout")
_SEED = typer.Option(DEFAULT_SEED, "--seed", help="64-bit seed for sampled runs")
_TOLERANCE = typer.Option(DEFAULT_TOLERANCE, "--tolerance", help="Numerical tolerance")
_JOBS = typer.Option(1, "--jobs", "-j", min=1, help="Worker processes")


@app.command("verify-process")
def verify_process(
    file: Path = _FILE,
    allow_self_signaling: bool = typer.Option(
        False, "--allow-self-signaling", help="Count omega_i depending on x_i as a signal"
    ),
    out: Path | None = _OUT,
) -> None:
    """Checks the unique fixed-point condition and the absence of a global past."""
    config = CommandConfig(
        "verify-process",
        inputs=(file,),
        output=out,
        flags={"allow-self-signaling": allow_self_signaling},
    )
    with _reporting_errors():
        omega = read_process(file)
        verdict = check_classical_process(omega)
        no_global_past = has_no_global_past(omega, allow_self_signaling)
        relation = signaling_relation(omega)

    body = [
        f"n: {omega.n}",
        f"classical-process: {_flag(verdict.is_process)}",
        f"no-global-past: {_flag(no_global_past)}",
        f"signaling: {' '.join(str(relation).splitlines())}",
    ]
    if verdict.violation is not None:
        points = " ".join(word_to_bits(p, omega.n) for p in sorted(verdict.violation_fixed_points))
        body.append(f"violating-intervention: {verdict.violation}")
        body.append(f"fixed-points: {points or 'none'}")
    _emit(config, body)
    _exit(verdict.is_process and no_global_past)


@app.command("build-ensemble")
def build_ensemble(file: Path = _FILE, out: Path | None = _OUT) -> None:
    """Writes the ensemble {H^omega(x)|x>} of a process as an .ens file."""
    config = CommandConfig("build-ensemble", inputs=(file,), output=out)
    with _reporting_errors():
        ensemble = ensemble_from_process(read_process(file))
    text = format_ensemble(ensemble, config.header())
    if out is None:
        typer.echo(text, nl=False)
    else:
        out.write_text(text, encoding="utf-8")


@app.command("check-ensemble")
def check_ensemble(
    file: Path = _FILE, tolerance: float = _TOLERANCE, out: Path | None = _OUT
) -> None:
    """Checks exact orthonormality against the Gram matrix and reports the local obstruction."""
    config = CommandConfig("check-ensemble", inputs=(file,), output=out, tolerance=tolerance)
    with _reporting_errors():
        ensemble = read_ensemble(file)
    pair = find_nonorthogonal_pair(ensemble)
    deviation = gram_deviation(ensemble)
    obstruction = local_obstruction_report(ensemble)
    gram_identity = deviation <= tolerance

    body = [
        f"n: {ensemble.n}",
        f"states: {len(ensemble)}",
        f"orthonormal: {_flag(pair is None)}",
        f"gram-identity: {_flag(gram_identity)}",
    ]
    if pair is not None:
        body.append(f"nonorthogonal-pair: {ensemble[pair[0]]} {ensemble[pair[1]]}")
    body.append(f"local-obstruction: {' '.join(_flag(b) for b in obstruction)}")
    body.append(f"all-parties-obstructed: {_flag(all(obstruction))}")
    _emit(config, body)
    _exit(pair is None and gram_identity)


@app.command("invert-ensemble")
def invert_ensemble(file: Path = _FILE, out: Path | None = _OUT) -> None:
    """Reads the process table off an ensemble (basis bits as a function of x-bits)."""
    config = CommandConfig("invert-ensemble", inputs=(file,), output=out)
    with _reporting_errors():
        omega = process_from_ensemble(read_ensemble(file))
    text = format_process(omega, config.header())
    if out is None:
        typer.echo(text, nl=False)
    else:
        out.write_text(text, encoding="utf-8")


@app.command("measure")
def measure(
    file: Path = _FILE,
    state: str = typer.Option(..., "--state", "-s", help='Product state label, e.g. "01+"'),
    samples: int = typer.Option(0, "--samples", min=0, help="Sampled runs (0: exact distribution)"),
    seed: int = _SEED,
    force_nonorthonormal: bool = typer.Option(
        False, "--force-nonorthonormal", help="Report raw weights for a non-orthonormal ensemble"
    ),
    out: Path | None = _OUT,
) -> None:
    """Measures a product state in the ensemble basis of a process."""
    config = CommandConfig(
        "measure",
        inputs=(file,),
        output=out,
        seed=seed,
        samples=samples,
        flags={"force-nonorthonormal": force_nonorthonormal},
        extra={"state": state},
    )
    with _reporting_errors():
        check_seed(seed)
        omega = read_process(file)
        psi = from_label(StateLabel.parse(state))
        if samples == 0:
            weights = measurement_distribution(omega, psi, force=force_nonorthonormal)
            body = [f"{record} p={p:.12f}" for record, p in weights]
            body.append(f"total: {sum(p for _, p in weights):.12f}")
        else:
            counts: Counter[int] = Counter()
            records = {}
            for i in range(samples):
                record = run_measurement(
                    omega, psi, derive_seed(seed, i), force=force_nonorthonormal
                )
                counts[record.outcome] += 1
                records[record.outcome] = record
            body = [f"{records[x]} count={counts[x]}" for x in sorted(counts)]
    _emit(config, body)


@app.command("channel")
def channel(
    file: Path = _FILE,
    input_bits: str | None = typer.Option(None, "--input", help="Single input bit string"),
    samples: int = typer.Option(0, "--samples", min=0, help="Sampled runs per input (0: exact)"),
    seed: int = _SEED,
    tolerance: float = _TOLERANCE,
    out: Path | None = _OUT,
) -> None:
    """Simulates the process's channel from a measurement in its ensemble basis."""
    config = CommandConfig(
        "channel",
        inputs=(file,),
        output=out,
        seed=seed,
        samples=samples,
        tolerance=tolerance,
        extra={"input": input_bits or "all"},
    )
    with _reporting_errors():
        check_seed(seed)
        omega = read_process(file)
        if input_bits is None:
            inputs = list(range(1 << omega.n))
        else:
            if len(input_bits) != omega.n:
                raise InputError(f'input "{input_bits}" must have {omega.n} bits')
            inputs = [bits_to_word(input_bits)]

        body = []
        for x in inputs:
            if samples == 0:
                distribution = channel_distribution(omega, x)
                probs = list(enumerate(distribution.probs))
            else:
                counts = Counter(
                    run_channel(omega, x, derive_seed(seed, x, i)).output for i in range(samples)
                )
                probs = [(w, counts[w] / samples) for w in sorted(counts)]
            body.extend(
                f"input={word_to_bits(x, omega.n)} -> output={word_to_bits(w, omega.n)} p={p:.12f}"
                for w, p in probs
                if p > tolerance
            )

        faithful = True
        if input_bits is None and samples == 0:
            report = channel_is_faithful(omega, tolerance)
            faithful = report.faithful
            body.append(f"faithful: {_flag(faithful)}")
            if not faithful:
                body.append(
                    f"violations: {' '.join(word_to_bits(x, omega.n) for x in report.violations)}"
                )
    _emit(config, body)
    _exit(faithful)


@app.command("discriminate")
def discriminate(
    file: Path = _FILE,
    trials: int = typer.Option(DEFAULT_TRIALS, "--trials", min=0, help="Trials per state"),
    seed: int = _SEED,
    jobs: int = _JOBS,
    out: Path | None = _OUT,
) -> None:
    """Prepares every ensemble state repeatedly and counts correct identifications."""
    config = CommandConfig(
        "discriminate", inputs=(file,), output=out, seed=seed, trials=trials, jobs=jobs
    )
    with _reporting_errors():
        check_seed(seed)
        omega = read_process(file)
        tallies = discrimination_tally(omega, trials, seed, jobs)
    total = sum(t.trials for t in tallies)
    successes = sum(t.successes for t in tallies)
    body = [str(t) for t in tallies]
    body.append(f"total: {successes}/{total}")
    body.append(f"perfect: {_flag(successes == total)}")
    _emit(config, body)
    _exit(successes == total)


def _table_name(omega: ProcessTable) -> str:
    digest = hashlib.sha256(format_process(omega).encode("utf-8")).hexdigest()
    return f"{digest[:16]}.proc"


def _write_tables(tables: list[ProcessTable], directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for omega in tables:
        (directory / _table_name(omega)).write_text(format_process(omega), encoding="utf-8")


@app.command("enumerate")
def enumerate_processes(
    n: int = typer.Option(..., "--n", min=1, help="Party count (at most 3)"),
    filter_: Filter = typer.Option(
        Filter.no_global_past, "--filter", help="Which processes to output"
    ),
    canonical: bool = typer.Option(True, "--canonical/--no-canonical", help="Reduce by symmetry"),
    out: Path | None = typer.Option(None, "--out", "-o", help="Directory for .proc files"),
    jobs: int = _JOBS,
    allow_self_signaling: bool = typer.Option(False, "--allow-self-signaling"),
    timing: bool = typer.Option(False, "--timing", help="Report elapsed time"),
) -> None:
    """Exhaustively enumerates Boolean classical processes."""
    config = CommandConfig(
        "enumerate",
        output=out,
        jobs=jobs,
        flags={"canonical": canonical, "allow-self-signaling": allow_self_signaling},
        extra={"n": str(n), "filter": filter_.value},
    )
    with _reporting_errors():
        search = exhaustive_search(n, jobs, canonical, allow_self_signaling)
    report = search.report

    selected = search.no_global_past if filter_ is Filter.no_global_past else search.processes
    if canonical:
        selected = canonical_classes(selected, n)
    tables = [ProcessTable.from_array(n, row) for row in selected]

    body = report.lines(timing)
    body.append(f"selected: {len(tables)}")
    if out is not None:
        _write_tables(tables, out)
        body.append(f"written: {len(tables)}")
    elif canonical:
        body.extend(
            f"representative: {' '.join(word_to_bits(w, n) for w in omega.table)}"
            for omega in tables
        )
    # Reports always go to stdout; --out names the table directory
    typer.echo("\n".join([f"# {h}" for h in config.header()] + body))
    if timing:
        console.print(f"Search time: {report.elapsed:.3f} sec")


@app.command("sample")
def sample(
    n: int = typer.Option(..., "--n", min=1, help="Party count (at most 12)"),
    count: int = typer.Option(..., "--count", min=0, help="Random tables to examine"),
    seed: int = _SEED,
    cap: int = typer.Option(1000, "--cap", min=0, help="Passing tables to retain"),
    inject: list[Path] = typer.Option(
        [], "--inject", help=".proc files checked before the random tables"
    ),
    canonical: bool = typer.Option(
        False, "--canonical/--no-canonical", help="Reduce retained tables by symmetry"
    ),
    out: Path | None = typer.Option(None, "--out", "-o", help="Directory for retained .proc files"),
    timing: bool = typer.Option(False, "--timing", help="Report elapsed time"),
) -> None:
    """Checks uniformly random tables, for party counts beyond exhaustive reach."""
    config = CommandConfig(
        "sample",
        inputs=tuple(inject),
        output=out,
        seed=seed,
        samples=count,
        flags={"canonical": canonical},
        extra={"n": str(n), "cap": str(cap)},
    )
    with _reporting_errors():
        check_seed(seed)
        injected = [read_process(path) for path in inject]
        report = sample_functions(n, count, seed, cap, injected, canonical)

    body = report.lines(timing)
    if out is not None:
        _write_tables(list(report.representatives), out)
        body.append(f"written: {len(report.representatives)}")
    typer.echo("\n".join([f"# {h}" for h in config.header()] + body))
    if timing:
        console.print(f"Sampling time: {report.elapsed:.3f} sec")
