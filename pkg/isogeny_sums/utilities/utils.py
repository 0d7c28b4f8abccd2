from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from isogeny_sums.sums.models import TSV_COLUMNS, SumReport, VanishingReport
from isogeny_sums.utilities.logger import get_logger

logger = get_logger("isogeny_sums")
console = Console()
err_console = Console(stderr=True)


def print_reports_table(reports: list[SumReport], title: str) -> None:
    """
    Pretty-print reports as a table, failures highlighted.

    :param reports: Reports to show
    :param title: Table title
    :return: None
    """
    table = Table(title=title, header_style="bold cyan")
    for column in TSV_COLUMNS:
        table.add_column(column, justify="right")
    for report in reports:
        table.add_row(*report.tsv_row(), style=None if report.ok else "bold red")
    console.print(table)


def print_vanishing_report(report: VanishingReport) -> None:
    lines = [
        f"[bold]{report.describe()}[/bold]",
        f"working modulus: {report.working_modulus}",
        f"witnesses: {len(report.witnesses)} (first {report.witnesses[:8]})",
        f"bad primes: {report.bad_primes or 'none'}",
        f"small primes (p <= |a|): {report.small_primes or 'none'}",
    ]
    if report.unresolved:
        lines.append(f"[yellow]unresolved classes: {report.unresolved}[/yellow]")
    if report.periodicity_failures:
        lines.append(f"[red]periodicity failures: {report.periodicity_failures}[/red]")
    console.print(
        Panel("\n".join(lines), title=f"R(a={report.a}, b={report.b}) = 0")
    )


def print_summary(passed: int, failed: int, to_stderr: bool = False) -> None:
    """
    Print the final pass/fail counts.

    :param passed: Number of checks that held
    :param failed: Number of checks that failed
    :param to_stderr: Send the line to stderr, keeping stdout for TSV rows
    :return: None
    """
    style = "green" if failed == 0 else "bold red"
    target = err_console if to_stderr else console
    target.print(f"[{style}]checks passed: {passed}, failed: {failed}[/{style}]")
    logger.debug(f"summary: {passed} passed, {failed} failed")
