"""
Command-line interface.

This is the only module that deals with argument parsing, exit codes and
printing; everything it shows comes from bcurve, classify and verification.

Usage:
    ms-kit eval --eta 0 --alpha 7.5 --format json
    ms-kit zeros --alpha 10 --format csv
    ms-kit critical --digits 14
    ms-kit sweep --alpha-min 8 --alpha-max 10 --steps 3 --out sweep.csv --gnuplot
    ms-kit verify --only positivity-2d --json

Exit codes: 0 success, 1 verification or consistency failure, 2 usage error.
"""

from __future__ import annotations

import contextlib
import logging
import math
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

import click

from bcurve import ALPHA_ISOTROPIC_LIMIT, TWENTY_THIRDS, eval_B, eval_f, eval_f_prime
from classify import classify, critical_alpha, sweep
from config import APP_DESCRIPTION, APP_NAME, LOG_LEVEL
from exceptions import ArgumentError, DomainError, MsKitError
from output import FORMATS, OutputEnvelope, gnuplot_script, render, write
from verification import CHECK_NAMES, run_checks


CRITICAL_TOKEN = "critical"
EVAL_COLUMNS: Tuple[str, ...] = ("eta", "alpha", "b", "b1", "b2", "b3", "f", "f_prime")
ZERO_COLUMNS: Tuple[str, ...] = ("eta", "multiplicity", "side", "bracket_lo", "bracket_hi")
CRITICAL_COLUMNS: Tuple[str, ...] = ("eta_min", "alpha_star", "f_second_at_min", "lower", "upper", "inclusion")
SWEEP_COLUMNS: Tuple[str, ...] = ("alpha", "branch", "eta", "S", "case")
VERIFY_COLUMNS: Tuple[str, ...] = ("name", "max_residual", "tolerance", "samples", "status")


class AlphaParam(click.ParamType):
    """A positive finite float, or the token `critical` for alpha*."""

    name = "alpha"

    def convert(self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]) -> Any:
        if isinstance(value, float):
            return value
        text = str(value).strip()
        if text.lower() == CRITICAL_TOKEN:
            return CRITICAL_TOKEN
        try:
            alpha = float(text)
        except ValueError:
            self.fail(f"{value!r} is neither a number nor '{CRITICAL_TOKEN}'", param, ctx)
        if not (math.isfinite(alpha) and alpha > 0):
            self.fail(f"alpha must be positive and finite, got {value!r}", param, ctx)
        return alpha


ALPHA = AlphaParam()


def _resolve_alpha(alpha: Any) -> float:
    if alpha == CRITICAL_TOKEN:
        return critical_alpha().alpha_star
    return float(alpha)


def _configure_logging(verbose: int) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, LOG_LEVEL, logging.WARNING)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


@contextlib.contextmanager
def _exit_codes(ctx: click.Context) -> Iterator[None]:
    """Map package errors onto the exit-code contract."""
    try:
        yield
    except (ArgumentError, DomainError) as exc:
        raise click.UsageError(str(exc), ctx=ctx) from exc
    except MsKitError as exc:
        click.echo(f"error: {exc}", err=True)
        ctx.exit(1)


def _output_options(func: Callable[..., Any]) -> Callable[..., Any]:
    func = click.option(
        "--digits",
        type=click.IntRange(1, 17),
        default=None,
        help="Significant digits (default 12 for table/csv, 17 for json).",
    )(func)
    func = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write to this file.")(func)
    func = click.option(
        "--format",
        "fmt",
        type=click.Choice(FORMATS),
        default="table",
        show_default=True,
        help="Output format.",
    )(func)
    return func


@click.group(help=APP_DESCRIPTION)
@click.version_option(version="1.0.0", prog_name=APP_NAME)
@click.option("-v", "--verbose", count=True, help="Log more to stderr (-v info, -vv debug).")
def cli(verbose: int) -> None:
    _configure_logging(verbose)


@cli.command("eval")
@click.option("--eta", type=float, required=True, help="Concentration parameter.")
@click.option("--alpha", type=ALPHA, required=True, help="Intensity (> 0), or 'critical'.")
@_output_options
@click.pass_context
def eval_command(ctx: click.Context, eta: float, alpha: Any, fmt: str, out: Optional[str], digits: Optional[int]) -> None:
    """B and its first three eta-derivatives, with f and f'."""
    envelope = OutputEnvelope(format=fmt, digits=digits, destination=out)
    with _exit_codes(ctx):
        value = _resolve_alpha(alpha)
        ev = eval_B(eta, value)
        row = {
            "eta": ev.eta,
            "alpha": ev.alpha,
            "b": ev.b,
            "b1": ev.b1,
            "b2": ev.b2,
            "b3": ev.b3,
            "f": eval_f(ev.eta),
            "f_prime": eval_f_prime(ev.eta),
        }
        write(render([row], EVAL_COLUMNS, envelope), out)


@cli.command("zeros")
@click.option("--alpha", type=ALPHA, required=True, help="Intensity (> 0), '7.5' or 'critical'.")
@_output_options
@click.pass_context
def zeros_command(ctx: click.Context, alpha: Any, fmt: str, out: Optional[str], digits: Optional[int]) -> None:
    """Every zero of B(., alpha) with multiplicity, side and bracket."""
    envelope = OutputEnvelope(format=fmt, digits=digits, destination=out)
    with _exit_codes(ctx):
        zero_set = classify(_resolve_alpha(alpha))
        rows: List[Dict[str, Any]] = [
            {
                "alpha": zero_set.alpha,
                "case": zero_set.case_label,
                "eta": z.eta,
                "multiplicity": z.multiplicity,
                "side": z.side,
                "bracket_lo": z.bracket[0],
                "bracket_hi": z.bracket[1],
            }
            for z in zero_set.zeros
        ]
        if fmt == "csv":
            text = render(rows, ("alpha", "case") + ZERO_COLUMNS, envelope)
        else:
            header = {"alpha": zero_set.alpha, "case": zero_set.case_label, "count": zero_set.count}
            text = render(rows, ZERO_COLUMNS, envelope, header_fields=header)
        write(text, out)


@cli.command("critical")
@_output_options
@click.pass_context
def critical_command(ctx: click.Context, fmt: str, out: Optional[str], digits: Optional[int]) -> None:
    """eta_min, alpha* = f(eta_min) and the check 20/3 < alpha* < 7.5."""
    envelope = OutputEnvelope(format=fmt, digits=digits, destination=out)
    with _exit_codes(ctx):
        crit = critical_alpha()
        inclusion = TWENTY_THIRDS < crit.alpha_star < ALPHA_ISOTROPIC_LIMIT
        row = {
            "eta_min": crit.eta_min,
            "alpha_star": crit.alpha_star,
            "f_second_at_min": crit.f_second_at_min,
            "lower": TWENTY_THIRDS,
            "upper": ALPHA_ISOTROPIC_LIMIT,
            "inclusion": inclusion,
        }
        write(render([row], CRITICAL_COLUMNS, envelope), out)
        if not inclusion:
            click.echo(f"error: alpha* = {crit.alpha_star!r} is outside (20/3, 7.5)", err=True)
            ctx.exit(1)


@cli.command("sweep")
@click.option("--alpha-min", type=float, required=True)
@click.option("--alpha-max", type=float, required=True)
@click.option("--steps", type=int, required=True, help="Number of alpha values (>= 2).")
@click.option("--gnuplot", is_flag=True, help="Also write a plot script next to the --out CSV.")
@_output_options
@click.pass_context
def sweep_command(
    ctx: click.Context,
    alpha_min: float,
    alpha_max: float,
    steps: int,
    gnuplot: bool,
    fmt: str,
    out: Optional[str],
    digits: Optional[int],
) -> None:
    """Bifurcation branches eta*(alpha) and S = -eta*/alpha on a uniform alpha grid."""
    if gnuplot and (out is None or fmt != "csv"):
        raise click.UsageError("--gnuplot needs --format csv and --out", ctx=ctx)
    envelope = OutputEnvelope(format=fmt, digits=digits, destination=out)
    with _exit_codes(ctx):
        table = sweep(alpha_min, alpha_max, steps)
        rows = [
            {
                "alpha": row.alpha,
                "branch": row.branch,
                "eta": row.eta,
                "S": row.order_parameter,
                "case": row.case_label,
            }
            for row in table.rows
        ]
        write(render(rows, SWEEP_COLUMNS, envelope), out)
        if gnuplot:
            script_path = Path(out).with_suffix(".gp")
            write(gnuplot_script(out), str(script_path))


@cli.command("verify")
@click.option("--only", multiple=True, type=click.Choice(CHECK_NAMES), help="Run only this check (repeatable).")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report.")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write to this file.")
@click.option("--digits", type=click.IntRange(1, 17), default=None, help="Significant digits.")
@click.pass_context
def verify_command(
    ctx: click.Context,
    only: Tuple[str, ...],
    as_json: bool,
    out: Optional[str],
    digits: Optional[int],
) -> None:
    """Run the verification checks; exit 1 if any fails."""
    envelope = OutputEnvelope(format="json" if as_json else "table", digits=digits, destination=out)
    with _exit_codes(ctx):
        reports = run_checks(only or None)
        rows = [
            {
                "name": r.name,
                "max_residual": r.max_residual,
                "tolerance": r.tolerance,
                "samples": r.samples,
                "status": "PASS" if r.passed else "FAIL",
                "passed": r.passed,
                "detail": r.detail,
            }
            for r in reports
        ]
        columns = VERIFY_COLUMNS + ("passed", "detail") if as_json else VERIFY_COLUMNS
        write(render(rows, columns, envelope), out)
        for r in reports:
            if not r.passed:
                click.echo(f"FAIL {r.name}: {r.detail}", err=True)
        if not all(r.passed for r in reports):
            ctx.exit(1)


__all__ = [
    "cli",
]
