import argparse
import logging
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Any

from isogeny_sums.arithmetic.modular import primes_between, to_field
from isogeny_sums.curves.cm import CmCase, cm_weighted_sum
from isogeny_sums.curves.isogeny import TwoIsogenyPair
from isogeny_sums.curves.weierstrass import good_reduction_pair
from isogeny_sums.exceptions import BadReductionError, IsogenySumsError
from isogeny_sums.sums.charsums import (
    dirichlet_report,
    lemma_report,
    pair_report,
    s_tau,
    s_tau_hat,
)
from isogeny_sums.sums.congruence import vanishing_primes, vanishing_residues
from isogeny_sums.sums.models import SumReport
from isogeny_sums.sums.sweep import sweep
from isogeny_sums.utilities.configs import (
    DotDict,
    load_configurations,
    print_config,
    resolve_setting,
)
from isogeny_sums.utilities.filesystem import save_reports, write_tsv
from isogeny_sums.utilities.logger import get_logger, set_log_level
from isogeny_sums.utilities.utils import (
    print_reports_table,
    print_summary,
    print_vanishing_report,
)

logger = get_logger("isogeny_sums")

COMMANDS = ("dirichlet", "lemma", "main", "dual", "cm", "search", "all")
FORMATS = ("table", "tsv")
DEFAULT_CONFIG = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "configs", "sweep.yaml"
)
WORKERS_ENV = "ISOGENY_SUMS_WORKERS"

Parameter = int | Fraction


@dataclass
class RunConfig:
    """Everything one invocation needs, after flags, environment and YAML are merged."""

    command: str
    a: Parameter = 2
    b: Parameter = -1
    lo: int = 5
    hi: int = 200
    case: int | None = None
    output_format: str = "table"
    workers: int = 1
    strict: bool = False
    output: str | None = None
    progress: bool = True
    chunksize: int = 16
    limit: int | None = None
    lower: int | None = None
    scan_cap: int = 2_000_000
    extra_checks: int = 2
    grid: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.lo <= 3:
            raise ValueError(f"prime range must start above 3, got {self.lo}")
        if self.hi < self.lo:
            raise ValueError(f"empty prime range {self.lo}..{self.hi}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.output_format not in FORMATS:
            raise ValueError(f"unknown format {self.output_format!r}")
        if self.case is not None and self.command != "cm":
            raise ValueError("--case only applies to the cm command")
        if self.case is not None and self.case not in (-1, -2, -7):
            raise ValueError(f"cm case must be -1, -2 or -7, got {self.case}")
        if self.command == "search":
            self._check_search_parameters()

    def _check_search_parameters(self) -> None:
        if not self.integral:
            raise ValueError("search needs integer a and b")
        if self.a == 0:
            raise ValueError("search needs a != 0")
        if 2 * self.b * (self.a * self.a - 4 * self.b) == 0:
            raise ValueError(
                f"(a, b) = ({self.a}, {self.b}) has bad reduction at every prime"
            )

    @property
    def integral(self) -> bool:
        return isinstance(self.a, int) and isinstance(self.b, int)


def parse_parameter(text: str) -> Parameter:
    """'7' -> 7, '-1/4' -> Fraction(-1, 4)."""
    if "/" in text:
        return Fraction(text)
    return int(text)


def parse_prime_range(text: str) -> tuple[int, int]:
    """'5..200' -> (5, 200); a single number gives a one-prime range."""
    lo, sep, hi = text.partition("..")
    if not sep:
        return int(text), int(text)
    return int(lo), int(hi)


def pair_row(a: Parameter, b: Parameter, dual: bool, p: int) -> SumReport | None:
    """One prime of the main or dual sweep; None when (a, b) is bad at p."""
    if isinstance(a, int) and isinstance(b, int):
        if not good_reduction_pair(a, b, p):
            return None
        return s_tau_hat(a, b, p) if dual else s_tau(a, b, p)
    try:
        iso = TwoIsogenyPair(to_field(a, p), to_field(b, p))
    except (ZeroDivisionError, BadReductionError):
        return None
    return pair_report(iso, dual=dual)


def grid_rows(
    a_range: tuple[int, int], b_range: tuple[int, int], dual: bool, p: int
) -> list[SumReport]:
    """Every good (a, b) of the grid at one prime."""
    rows = []
    for a in range(a_range[0], a_range[1] + 1):
        for b in range(b_range[0], b_range[1] + 1):
            row = pair_row(a, b, dual, p)
            if row is not None:
                rows.append(row)
    return rows


def cm_row(case: int, p: int) -> SumReport | None:
    cm_case = CmCase(case)
    return cm_weighted_sum(cm_case, p) if cm_case.splits(p) else None


def _run_sweep(config: RunConfig, func: Any, primes: list[int], desc: str) -> list:
    return sweep(
        func,
        primes,
        workers=config.workers,
        chunksize=config.chunksize,
        progress=config.progress,
        desc=desc,
    )


def collect_reports(config: RunConfig) -> list[SumReport]:
    """
    Run the sweep named by config.command over its prime range.

    :param config: The run configuration
    :return: Reports in ascending prime order, bad primes dropped
    """
    primes = primes_between(config.lo, config.hi)
    command = config.command
    if command == "dirichlet":
        return _run_sweep(config, dirichlet_report, primes, command)
    if command == "lemma":
        return _run_sweep(config, lemma_report, primes, command)
    if command in ("main", "dual"):
        func = partial(pair_row, config.a, config.b, command == "dual")
        return [r for r in _run_sweep(config, func, primes, command) if r is not None]
    if command == "cm":
        cases = [config.case] if config.case is not None else [-1, -2, -7]
        reports = []
        for case in cases:
            rows = _run_sweep(config, partial(cm_row, case), primes, f"cm {case}")
            reports.extend(r for r in rows if r is not None)
        return reports

    # all: every sweep, with the main and dual sums over the configured grid
    grid = DotDict(config.grid)
    a_range = tuple(grid.get("a", [-6, 6]))
    b_range = tuple(grid.get("b", [-6, 6]))
    grid_primes = primes_between(config.lo, min(config.hi, grid.get("hi", 499)))
    reports = []
    for sub in ("dirichlet", "lemma"):
        reports.extend(collect_reports(_with_command(config, sub)))
    for dual in (False, True):
        func = partial(grid_rows, a_range, b_range, dual)
        desc = "dual grid" if dual else "main grid"
        for rows in _run_sweep(config, func, grid_primes, desc):
            reports.extend(rows)
    reports.extend(collect_reports(_with_command(config, "cm")))
    return reports


def _with_command(config: RunConfig, command: str) -> RunConfig:
    values = {**config.__dict__, "command": command, "case": None}
    return RunConfig(**values)


def run_search(config: RunConfig) -> int:
    report = vanishing_residues(
        config.a, config.b, scan_cap=config.scan_cap, extra_checks=config.extra_checks
    )
    if config.output_format == "tsv":
        print(report.describe())
    else:
        print_vanishing_report(report)
    if config.limit is not None:
        found = vanishing_primes(config.a, config.b, config.limit, config.lower)
        listed = " ".join(map(str, found)) or "none"
        print(f"vanishing primes <= {config.limit}: {listed}")
    if config.output:
        save_reports([report], config.output)

    failed = len(report.periodicity_failures)
    to_stderr = config.output_format == "tsv"
    print_summary(1 if report.ok else 0, failed, to_stderr=to_stderr)
    return 1 if config.strict and failed else 0


def run(config: RunConfig) -> int:
    """
    Execute one command and report.

    :param config: The run configuration
    :return: Exit status, 1 only for identity failures under strict
    """
    logger.debug(f"Run configuration:\n{print_config(config.__dict__)}")
    if config.command == "search":
        return run_search(config)

    reports = collect_reports(config)
    if config.output_format == "tsv":
        write_tsv(reports, sys.stdout)
    else:
        print_reports_table(reports, title=f"{config.command} {config.lo}..{config.hi}")
    if config.output:
        save_reports(reports, config.output)

    failed = sum(1 for report in reports if not report.ok)
    to_stderr = config.output_format == "tsv"
    print_summary(len(reports) - failed, failed, to_stderr=to_stderr)
    return 1 if config.strict and failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isogeny-sums",
        description="Verify class number identities from 2-isogeny character sums.",
    )
    parser.add_argument("command", choices=COMMANDS, help="which check to run")
    parser.add_argument(
        "--a",
        type=parse_parameter,
        default=None,
        help="parameter a, an integer or a rational like 3/2 (use --a=-3/2)",
    )
    parser.add_argument(
        "--b", type=parse_parameter, default=None, help="parameter b, as for --a"
    )
    parser.add_argument(
        "--primes", type=parse_prime_range, default=None, help="prime range lo..hi"
    )
    parser.add_argument(
        "--case", type=int, default=None, help="CM discriminant: -1, -2 or -7"
    )
    parser.add_argument(
        "--format", dest="output_format", choices=FORMATS, default=None
    )
    parser.add_argument(
        "--workers",
        type=int,
        default=None,
        help=f"worker processes (default: ${WORKERS_ENV} or the config value)",
    )
    parser.add_argument(
        "--strict",
        action="store_true",
        help="exit with status 1 if any identity fails",
    )
    parser.add_argument(
        "--output", "-o", type=str, default=None, help="save reports (.json or .tsv)"
    )
    parser.add_argument(
        "--limit", type=int, default=None, help="search: also list primes up to this"
    )
    parser.add_argument(
        "--lower", type=int, default=None, help="search: exclusive lower bound (|a|)"
    )
    parser.add_argument(
        "--no-progress", dest="progress", action="store_false", default=None
    )
    parser.add_argument(
        "--config",
        "-c",
        type=str,
        default=DEFAULT_CONFIG,
        help="Path to config file (default: configs/sweep.yaml)",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        dest="verbose",
        required=False,
        default=False,
        action="store_true",
        help="increase output verbosity",
    )
    return parser


def _config_parameter(defaults: DotDict, key: str, fallback: int) -> Parameter:
    return parse_parameter(str(defaults.get(key, fallback)))


def make_config(args: argparse.Namespace, defaults: DotDict) -> RunConfig:
    """
    Merge flags, environment and YAML, in that order of precedence.

    :param args: Parsed command line
    :param defaults: Loaded YAML configuration
    :return: Validated RunConfig
    """
    lo, hi = args.primes or (
        defaults.get("primes.lo", 5),
        defaults.get("primes.hi", 200),
    )
    a = args.a if args.a is not None else _config_parameter(defaults, "params.a", 2)
    b = args.b if args.b is not None else _config_parameter(defaults, "params.b", -1)
    workers = resolve_setting(
        args.workers, WORKERS_ENV, defaults.get("sweep.workers", 1), int
    )
    progress = defaults.get("sweep.progress", True) if args.progress is None else False
    return RunConfig(
        command=args.command,
        a=a,
        b=b,
        lo=lo,
        hi=hi,
        case=args.case,
        output_format=args.output_format or defaults.get("output.format", "table"),
        workers=workers,
        strict=args.strict,
        output=args.output,
        progress=progress,
        chunksize=defaults.get("sweep.chunksize", 16),
        limit=args.limit,
        lower=args.lower,
        scan_cap=defaults.get("congruence.scan_cap", 2_000_000),
        extra_checks=defaults.get("congruence.extra_checks", 2),
        grid=dict(defaults.get("grid") or {}),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        set_log_level(logger=logger, level=logging.DEBUG)

    if os.path.exists(args.config):
        defaults = load_configurations(args.config)
    else:
        logger.warning(f"config {args.config} not found, using built-in defaults")
        defaults = DotDict()

    try:
        config = make_config(args, defaults)
    except (ValueError, IsogenySumsError) as e:
        parser.error(str(e))

    try:
        return run(config)
    except IsogenySumsError as e:
        parser.error(str(e))


if __name__ == "__main__":
    sys.exit(main())
