import argparse
import dataclasses
import logging
import os
import sys
from typing import List, Optional, Sequence

import pandas as pd

from wbanroute.experiments import Benchmark, FIXTURES, SweepConfig
from wbanroute.metrics import MetricsReport, emit_report, write_report_files
from wbanroute.network import (
    ParseError,
    ScenarioConfig,
    TopologyUnreachable,
    ValidationError,
    apply_overrides,
    dump_scenario,
    load_scenario_file,
)
from wbanroute.simulator import InvariantViolation
from wbanroute.utility import (
    DEFAULT_OUTPUT_DIR,
    DEFAULT_SWEEP_NODES,
    PROTOCOL_ORDER,
    ProtocolKind,
    ReportFormat,
    parse_float_list,
    parse_id_list,
)

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 2

_DOMAIN_ERRORS = (
    ParseError,
    ValidationError,
    TopologyUnreachable,
    InvariantViolation,
    ValueError,
    OSError,
)

# fixed layouts overwrite the node and sink counts they are built for
_FIXTURE_SIZES = {"figure3": {"n_nodes": 9, "n_sinks": 1}}


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scenario", help="scenario file of key = value lines")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a scenario key, applied after the file; repeatable",
    )
    parser.add_argument(
        "--fixture", choices=sorted(FIXTURES), default="", help="use a fixed topology"
    )
    parser.add_argument("--verbose", action="store_true", help="log at debug level")


def _add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=DEFAULT_OUTPUT_DIR, help="report directory")
    parser.add_argument(
        "--format",
        dest="formats",
        action="append",
        choices=[f.value for f in ReportFormat],
        help="report format to write; repeatable",
    )
    parser.add_argument("--seeds", help="seed list such as 1,2,3 or 1-5")
    parser.add_argument("--jobs", type=int, help="worker processes, defaults to the core count")


def build_parser() -> argparse.ArgumentParser:
    """the ``wban-route`` argument parser"""
    parser = argparse.ArgumentParser(
        prog="wban-route",
        description="Thermal-aware routing simulator for wireless body area networks",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run_parser = commands.add_parser("run", help="run one scenario")
    _add_common_arguments(run_parser)
    _add_output_arguments(run_parser)
    run_parser.add_argument(
        "--protocol", choices=[k.value for k in ProtocolKind], help="protocol of the run"
    )

    for name, text in (
        ("compare", "compare protocols on one scenario"),
        ("sweep", "compare protocols over node counts or data rates"),
    ):
        sub = commands.add_parser(name, help=text)
        _add_common_arguments(sub)
        _add_output_arguments(sub)
        sub.add_argument(
            "--protocol",
            dest="protocols",
            action="append",
            choices=[k.value for k in ProtocolKind],
            help="protocol to compare; repeatable, all four by default",
        )
        sub.add_argument("--nodes", help="node counts such as 50,100,150,200")
        sub.add_argument("--rates", help="data rates in packets/s such as 1,2,4,8,16")

    validate_parser = commands.add_parser("validate", help="check a scenario and print it")
    _add_common_arguments(validate_parser)
    return parser


def load_config(args: argparse.Namespace) -> ScenarioConfig:
    """scenario file, then fixture sizes, then ``--set`` overrides,
    validated once on the merged result"""
    sizes = _FIXTURE_SIZES.get(args.fixture, {}) if args.fixture else {}
    overrides = [f"{key}={value}" for key, value in sizes.items()]
    overrides.extend(args.overrides or ())
    if args.scenario:
        return load_scenario_file(args.scenario, overrides)
    return apply_overrides(ScenarioConfig(), overrides)


def _formats(args: argparse.Namespace, default: Sequence[ReportFormat]) -> List[ReportFormat]:
    if not args.formats:
        return list(default)
    return [ReportFormat(f) for f in args.formats]


def _seeds(args: argparse.Namespace, cfg: ScenarioConfig) -> List[int]:
    if not args.seeds:
        return [cfg.rng_seed]
    seeds = parse_id_list(args.seeds)
    if not seeds:
        raise ValueError(f"No seeds in {args.seeds!r}")
    return seeds


def _write(reports: List[MetricsReport], args: argparse.Namespace, formats: List[ReportFormat]) -> None:
    write_report_files(reports, args.out, formats)
    sys.stdout.write(emit_report(reports, ReportFormat.SUMMARY))


def cmd_run(args: argparse.Namespace) -> int:
    cfg = load_config(args)
    if args.protocol:
        cfg = dataclasses.replace(cfg, protocol=ProtocolKind(args.protocol))
    sweep = SweepConfig(cfg, protocols=[cfg.protocol], seeds=_seeds(args, cfg), fixture=args.fixture)
    reports = Benchmark(sweep).start(n_jobs=args.jobs or 1)
    _write(reports, args, _formats(args, [ReportFormat.TABLE, ReportFormat.SUMMARY]))
    return EXIT_OK


def cmd_compare(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    cfg = load_config(args)
    protocols = [ProtocolKind(p) for p in args.protocols] if args.protocols else list(PROTOCOL_ORDER)
    if len(set(protocols)) < 2 or ProtocolKind.PROPOSED not in protocols:
        parser.error("compare needs the proposed protocol and at least one baseline")
    nodes = [int(n) for n in parse_id_list(args.nodes)] if args.nodes else None
    if nodes is None and args.command == "sweep" and not args.fixture:
        nodes = list(DEFAULT_SWEEP_NODES)
    rates = parse_float_list(args.rates) if args.rates else None
    sweep = SweepConfig(
        cfg,
        protocols=protocols,
        seeds=_seeds(args, cfg),
        n_nodes=nodes,
        rates=rates,
        fixture=args.fixture,
        progress=args.verbose,
    )
    bench = Benchmark(sweep)
    reports = bench.start(n_jobs=args.jobs)
    default = [ReportFormat.TABLE, ReportFormat.SUMMARY]
    if args.command == "sweep":
        default.append(ReportFormat.SERIES)
    _write(reports, args, _formats(args, default))

    frames = []
    for (n_nodes, rate), table in bench.comparisons().items():
        frames.append(table.assign(n_nodes=n_nodes, rate_pkts_per_s=rate))
    comparison = pd.concat(frames, ignore_index=True)
    comparison.to_csv(os.path.join(args.out, "comparison.csv"), index=False)
    best = comparison[comparison["baseline"] == "best"]
    sys.stdout.write(
        best[["n_nodes", "rate_pkts_per_s", "metric", "proposed_mean", "proposed_std",
              "baseline_mean", "baseline_std", "change_pct", "flag"]].to_string(index=False)
        + "\n"
    )
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    cfg = load_config(args)
    sys.stdout.write(dump_scenario(cfg))
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point of ``wban-route``.

    Returns:
        int:
            0 when every requested run completed and every output
            was written, 2 on usage and domain errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        if args.command == "run":
            return cmd_run(args)
        if args.command in ("compare", "sweep"):
            return cmd_compare(args, parser)
        return cmd_validate(args)
    except SystemExit as exit_:
        return int(exit_.code or 0)
    except _DOMAIN_ERRORS as error:
        LOGGER.debug("Aborting", exc_info=True)
        sys.stderr.write(f"error: {type(error).__name__}: {error}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
