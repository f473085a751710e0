"""
genfreq command line: generate example waveforms, estimate their
frequency, and compare traces.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

import sys
from typing import Any, Dict, List, Optional

import click
import structlog
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from config.logging import configure_logging
from genfreq.exceptions import GenFreqError, ParameterError
from models.estimator_model import ComparisonReport
from models.pipeline_model import GenerateRequest
from utils.pipeline import estimator_config, run_compare, run_estimate, run_generate

logger = structlog.get_logger()

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

SCENARIOS = ["example1", "example2", "example3", "dc", "fault"]
OutPath = click.Path(dir_okay=False, writable=True)
InPath = click.Path(dir_okay=False)


def _given(**kwargs: Any) -> Dict[str, Any]:
    return {k: v for k, v in kwargs.items() if v is not None}


@click.group()
@click.option("--log-level", default=None, help="Override LOG_LEVEL for this run")
def cli(log_level: Optional[str]):
    """Geometric frequency toolkit"""
    configure_logging(log_level)


@cli.command()
@click.argument("scenario", type=click.Choice(SCENARIOS))
@click.option("--v", "v", type=float, help="Amplitude (V)")
@click.option("--f", "f", type=float, help="Fundamental frequency (Hz)")
@click.option("--fs", type=float, help="Sample rate (Hz)")
@click.option("--dur", type=float, help="Record length (s)")
@click.option("--t0", type=float, help="Start time (s)")
@click.option("--phi", type=float, help="Initial phase of example1 (rad)")
@click.option("--noise", type=float, help="Noise std as a fraction of the amplitude")
@click.option("--seed", type=int, help="RNG seed (default: GENFREQ_SEED)")
@click.option("--decay", type=float, help="Exponential rate of the dc scenario (1/s)")
@click.option("--sag", type=float, help="Fault depth on phases b and c")
@click.option("--tfault", "t_fault", type=float, help="Fault start (s)")
@click.option("--tclear", "t_clear", type=float, help="Fault clearing (s)")
@click.option("--phase-jump", type=float, help="Phase-b jump during the fault (rad)")
@click.option("--harmonic3", type=float, help="Relative third harmonic during the fault")
@click.option("--capacitance", type=float, help="Also write i = C v' (F); needs --current-out")
@click.option("--current-out", type=OutPath, help="Path of the capacitor current waveform")
@click.option("-o", "--out", "out_path", type=OutPath, required=True, help="Output waveform CSV")
def generate(scenario: str, out_path: str, current_out: Optional[str], **params):
    """Write a sampled example waveform."""
    req = GenerateRequest(scenario=scenario, **_given(**params))
    result = run_generate(req, out_path, current_out)
    click.echo(f"wrote {result.n_samples} samples of {','.join(result.channels)} to {result.path}")


@cli.command()
@click.argument("in_path", type=InPath)
@click.option("--method", type=click.Choice(["geo", "pll", "power"]), default="geo", show_default=True)
@click.option("--scheme", "diff_scheme", type=click.Choice(["central", "one_sided_start_end"]))
@click.option("--tau", "filter_tau", type=float, help="First-order filter time constant (s)")
@click.option("--filter-stage", type=click.Choice(["frequency", "derivative", "both"]))
@click.option("--mask-threshold", type=float, help="|v| at or below this is degenerate (V)")
@click.option("--hz/--no-hz", "report_hz", default=None, help="Write the omega_hz column (default: on)")
@click.option("--kp", type=float, help="PLL proportional gain")
@click.option("--ki", type=float, help="PLL integral gain")
@click.option("--v-base", type=float, help="PLL per-unit base (V)")
@click.option("--config", "config_path", type=InPath, help="key = value estimator config file")
@click.option("--current", "current_path", type=InPath, help="Capacitor current waveform (power method)")
@click.option("--capacitance", type=float, help="Capacitance (F) for the power method")
@click.option("--emit-curve", "curve_path", type=OutPath, help="Also write the voltage curve CSV")
@click.option("-o", "--out", "out_path", type=OutPath, required=True, help="Output trace CSV")
def estimate(
    in_path: str,
    out_path: str,
    method: str,
    config_path: Optional[str],
    current_path: Optional[str],
    capacitance: Optional[float],
    curve_path: Optional[str],
    **overrides,
):
    """Estimate the frequency trace of a waveform file."""
    est, pll = estimator_config(config_path, **overrides)
    result = run_estimate(in_path, out_path, method, est, pll, current_path, capacitance, curve_path)
    mean = f"{result.mean_hz:.6f} Hz" if result.mean_hz is not None else "n/a"
    click.echo(f"wrote {result.n_samples} rows ({result.n_valid} valid, mean {mean}) to {result.path}")


@cli.command(name="compare")
@click.argument("trace_a", type=InPath)
@click.argument("trace_b", type=InPath)
@click.option("--window", nargs=2, type=float, default=None, metavar="START END")
@click.option("-o", "--out", "out_path", type=OutPath, help="Machine-readable CSV report")
def compare_cmd(trace_a: str, trace_b: str, window, out_path: Optional[str]):
    """Compare two frequency traces over a time window."""
    report = run_compare(trace_a, trace_b, tuple(window) if window else None, out_path)
    Console().print(_report_table(report, trace_a, trace_b))


def _report_table(report: ComparisonReport, name_a: str, name_b: str) -> Table:
    def seconds(value: Optional[float]) -> str:
        return "not settled" if value is None else f"{value:.6g} s"

    table = Table(title=f"window [{report.window[0]:g}, {report.window[1]:g}] s, {report.n_samples} samples")
    table.add_column("metric")
    table.add_column("value", justify="right")
    table.add_row("rmse omega", f"{report.rmse_omega:.6g} rad/s")
    table.add_row("max |deviation|", f"{report.max_abs_dev:.6g} rad/s")
    table.add_row(f"mean {name_a}", f"{report.mean_hz_a:.6f} Hz")
    table.add_row(f"mean {name_b}", f"{report.mean_hz_b:.6f} Hz")
    table.add_row(f"settle {name_a}", seconds(report.settle_time_a))
    table.add_row(f"settle {name_b}", seconds(report.settle_time_b))
    return table


def main(argv: Optional[List[str]] = None) -> int:
    try:
        result = cli.main(args=argv, prog_name="genfreq", standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except (ParameterError, ValidationError) as e:
        click.echo(f"error: {e}", err=True)
        return EXIT_USAGE
    except (GenFreqError, OSError) as e:
        logger.debug("Command failed", error=str(e), error_type=type(e).__name__)
        click.echo(f"error: {e}", err=True)
        return EXIT_DATA
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
