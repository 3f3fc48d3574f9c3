import json
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd
import typer
from rich.console import Console

from masim import __version__, configs
from masim.exceptions import ConfigurationError, DomainError
from masim.logger import configure_logging
from masim.sim.analytic import (
    AnalyticModel,
    cdf,
    MAX_ENUMERATION_D,
    pattern_probability_estimate,
    pi_no_interior_max,
    pmf,
    separated_probability,
    tail_mass,
    valley_pattern_count,
)
from masim.sim.process import InnovationDistribution, SimulationConfig
from masim.sim.process.config import MAX_SEED
from masim.sim.run import ParallelBackend, simulate as run_simulation, SimulationResult
from masim.sim.stats import compare as compare_report

# create an explicit Typer application
app = typer.Typer(add_completion=False)

# stdout is reserved for the CSV / JSON payload
console = Console(stderr=True)


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


SIMULATE_COLUMNS = ["d", "count"]
PMF_COLUMNS = ["d", "pmf", "cdf", "pi"]
ORACLE_COLUMNS = ["d", "valley_pattern_count", "expected", "match"]
ORACLE_MC_COLUMNS = [
    "separable",
    "mc_estimate",
    "mc_standard_error",
    "mc_z_score",
    "pmf",
    "in_asymptotic_regime",
]


def _default(value, key: str):
    return value if value is not None else configs.get(key)


def _to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, lineterminator="\n")


def _to_json(payload: Dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _emit(payload: str, out: Optional[Path]):
    if out is None:
        typer.echo(payload, nl=False)
        return
    try:
        out.write_text(payload, encoding="utf-8")
    except OSError as e:
        console.print(f"[red]Failed to write output to {out}: {e}[/red]")
        raise typer.Exit(code=1)
    console.print(f"Wrote {out}", style="green")


def _build_config(q, n, dist, seed, streams, d_max) -> SimulationConfig:
    try:
        return SimulationConfig(
            q=q,
            n=n,
            distribution=_default(dist, "dist"),
            seed=_default(seed, "seed"),
            streams=_default(streams, "streams"),
            d_max=_default(d_max, "d_max"),
        )
    except ConfigurationError as e:
        raise typer.BadParameter(str(e))


def _run(config: SimulationConfig, backend: Optional[ParallelBackend]) -> SimulationResult:
    try:
        return run_simulation(config, backend=backend)
    except ImportError as e:
        console.print(f"[red]{e}[/red]")
        raise typer.Exit(code=1)


def _format(fmt: Optional[OutputFormat]) -> OutputFormat:
    return OutputFormat(_default(fmt, "format"))


Q_OPTION = typer.Option(..., "--q", min=0, help="MA order q (window of q+1 innovations).")
N_OPTION = typer.Option(
    ..., "--n", min=3, help="Total number of error terms across all streams."
)
DIST_OPTION = typer.Option(
    None, "--dist", case_sensitive=False, help="Innovation law. [default: normal]"
)
SEED_OPTION = typer.Option(
    None,
    "--seed",
    min=0,
    max=MAX_SEED,
    envvar="MASIM_SEED",
    help="64-bit seed; stream k draws from SeedSequence([seed, k]). [default: 0]",
)
STREAMS_OPTION = typer.Option(
    None, "--streams", min=1, help="Independent parallel streams. [default: 1]"
)
D_MAX_OPTION = typer.Option(
    None, "--d-max", min=2, help="Largest distance with its own bin. [default: 64]"
)
FORMAT_OPTION = typer.Option(None, "--format", help="Output format. [default: csv]")
OUT_OPTION = typer.Option(None, "--out", help="Output path. [default: stdout]")
BACKEND_OPTION = typer.Option(
    None, "--backend", help="Stream executor. [default: threads]"
)


@app.command()
def simulate(
    q: int = Q_OPTION,
    n: int = N_OPTION,
    dist: Optional[InnovationDistribution] = DIST_OPTION,
    seed: Optional[int] = SEED_OPTION,
    streams: Optional[int] = STREAMS_OPTION,
    d_max: Optional[int] = D_MAX_OPTION,
    fmt: Optional[OutputFormat] = FORMAT_OPTION,
    out: Optional[Path] = OUT_OPTION,
    backend: Optional[ParallelBackend] = BACKEND_OPTION,
):
    """Simulate MA(q) error terms and write the histogram of distances between peaks.

    CSV columns: d,count. The last row has d=">D_MAX" and counts the tail bin.
    """
    config = _build_config(q, n, dist, seed, streams, d_max)
    result = _run(config, backend)
    histogram = result.histogram

    if _format(fmt) == OutputFormat.JSON:
        payload = _to_json(
            {"metadata": result.metadata(), "histogram": histogram.to_dict()}
        )
    else:
        rows = [
            {"d": d, "count": histogram.count(d)}
            for d in range(2, config.d_max + 1)
        ]
        rows.append({"d": f">{config.d_max}", "count": histogram.tail_count})
        payload = _to_csv(pd.DataFrame(rows, columns=SIMULATE_COLUMNS))
    _emit(payload, out)

    if out is not None:
        console.print(
            f"MA({config.q}): {result.terms} terms, {result.peaks} peaks, "
            f"{histogram.total} distances, peak fraction {result.peak_fraction:.5f}"
        )


@app.command("pmf")
def pmf_table(
    d_max: Optional[int] = D_MAX_OPTION,
    fmt: Optional[OutputFormat] = FORMAT_OPTION,
    out: Optional[Path] = OUT_OPTION,
):
    """Tabulate the asymptotic distance PMF (d-1)/2^d, its CDF and pi(d).

    CSV columns: d,pmf,cdf,pi.
    """
    d_max = _default(d_max, "d_max")
    model = AnalyticModel(d_max=d_max)
    rows = [
        {
            "d": d,
            "pmf": float(pmf(d)),
            "cdf": float(cdf(d)),
            "pi": float(pi_no_interior_max(d)),
        }
        for d in model.distances
    ]
    if _format(fmt) == OutputFormat.JSON:
        payload = _to_json(
            {
                "metadata": {
                    "d_max": d_max,
                    "tail_mass": float(tail_mass(d_max)),
                    "prob_max": float(model.prob_max()),
                    "mean": float(model.mean()),
                    "variance": float(model.variance()),
                },
                "rows": rows,
            }
        )
    else:
        payload = _to_csv(pd.DataFrame(rows, columns=PMF_COLUMNS))
    _emit(payload, out)


@app.command()
def compare(
    q: int = Q_OPTION,
    n: int = N_OPTION,
    dist: Optional[InnovationDistribution] = DIST_OPTION,
    seed: Optional[int] = SEED_OPTION,
    streams: Optional[int] = STREAMS_OPTION,
    d_max: Optional[int] = D_MAX_OPTION,
    fmt: Optional[OutputFormat] = FORMAT_OPTION,
    out: Optional[Path] = OUT_OPTION,
    backend: Optional[ParallelBackend] = BACKEND_OPTION,
):
    """Simulate, then compare the empirical distance PMF and moments with the analytic model.

    CSV columns: d,count,empirical_pmf,analytic_pmf,abs_error,in_asymptotic_regime.
    JSON: the full report (metadata, rows, moments, chi_square).
    """
    config = _build_config(q, n, dist, seed, streams, d_max)
    result = _run(config, backend)
    try:
        report = compare_report(
            result.histogram, AnalyticModel(d_max=config.d_max), result.metadata()
        )
    except DomainError as e:
        console.print(f"[red]Cannot build a report: {e}[/red]")
        raise typer.Exit(code=1)

    if _format(fmt) == OutputFormat.JSON:
        payload = report.to_json()
    else:
        payload = _to_csv(report.rows_frame())
    _emit(payload, out)

    if out is not None:
        moments = report.moments
        console.print(
            f"mean {moments.mean.value:.4f} +/- {moments.mean.standard_error:.4f}, "
            f"variance {moments.variance.value:.4f} +/- {moments.variance.standard_error:.4f}, "
            f"max in-regime error {report.max_in_regime_error()}"
        )


@app.command()
def oracle(
    d_max: Optional[int] = typer.Option(
        None,
        "--d-max",
        min=2,
        max=MAX_ENUMERATION_D,
        help="Largest distance to enumerate. [default: 20]",
    ),
    q: Optional[int] = typer.Option(
        None, "--q", min=1, help="MA order for the Monte Carlo oracle and separability."
    ),
    mc_samples: Optional[int] = typer.Option(
        None, "--mc-samples", min=10_000, help="Monte Carlo samples per distance."
    ),
    seed: Optional[int] = SEED_OPTION,
    dist: Optional[InnovationDistribution] = DIST_OPTION,
    fmt: Optional[OutputFormat] = FORMAT_OPTION,
    out: Optional[Path] = OUT_OPTION,
):
    """Check pi(d) by brute-force enumeration, and optionally Pr[d] by Monte Carlo on raw innovations.

    CSV columns: d,valley_pattern_count,expected,match; with --q also
    separable,mc_estimate,mc_standard_error,mc_z_score,pmf,in_asymptotic_regime.
    """
    if mc_samples is not None and q is None:
        raise typer.BadParameter("--mc-samples needs --q")
    d_max = _default(d_max, "oracle_d_max")
    if d_max > MAX_ENUMERATION_D:
        raise typer.BadParameter(f"--d-max must be <= {MAX_ENUMERATION_D}")

    columns: List[str] = list(ORACLE_COLUMNS)
    rows = []
    for d in range(2, d_max + 1):
        count = valley_pattern_count(d)
        rows.append(
            {"d": d, "valley_pattern_count": count, "expected": d - 1, "match": count == d - 1}
        )

    if q is not None:
        columns += ORACLE_MC_COLUMNS
        samples = _default(mc_samples, "mc_samples")
        seed = _default(seed, "seed")
        distribution = _default(dist, "dist")
        for row in rows:
            estimate = pattern_probability_estimate(
                row["d"], q, samples, seed, distribution=distribution
            )
            row.update(
                separable=separated_probability(row["d"], q) is not None,
                mc_estimate=estimate.estimate,
                mc_standard_error=estimate.standard_error,
                mc_z_score=estimate.z_score,
                pmf=estimate.analytic_pmf,
                in_asymptotic_regime=estimate.in_asymptotic_regime,
            )

    if _format(fmt) == OutputFormat.JSON:
        payload = _to_json(
            {
                "metadata": {
                    "d_max": d_max,
                    "q": q,
                    "mc_samples": _default(mc_samples, "mc_samples") if q else None,
                    "seed": _default(seed, "seed"),
                    "distribution": InnovationDistribution.from_name(
                        _default(dist, "dist")
                    ).value,
                },
                "rows": rows,
            }
        )
    else:
        payload = _to_csv(pd.DataFrame(rows, columns=columns))
    _emit(payload, out)

    if not all(row["match"] for row in rows):
        console.print("[red]Enumeration disagrees with d-1[/red]")
        raise typer.Exit(code=1)


@app.callback()
def main(verbose: bool = typer.Option(False, "--verbose", help="Debug logging.")):
    """
    masim CLI: distances between local maxima of MA(q) error terms
    """
    configure_logging(verbose=verbose)
    if verbose:
        console.print(f"masim=={__version__}", style="bold green")
