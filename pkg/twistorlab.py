#!/usr/bin/env python3
"""
Launch Script for twistorlab
Runs verification scenarios for the metric-transfer map between twistor spaces
"""

import os
import sys
import argparse
from pathlib import Path

# Add the repository root to path so that the src package resolves
sys.path.insert(0, str(Path(__file__).parent))

try:
    from src.config import RUNNER_CONFIG
    from src.exceptions import ConfigError, ReportFormatError
    from src.logging_setup import setup_logging
    from src.riemann import BUILTIN_METRICS
    from src.scenarios import CHECK_REGISTRY, ScenarioRunner, bundled_scenarios, emit_report, load_config
except ImportError as e:
    print(f"❌ Import error: {e}", file=sys.stderr)
    print("Please ensure all dependencies are installed: pip install -r requirements.txt", file=sys.stderr)
    sys.exit(2)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2


def status(message: str):
    """Progress lines go to stderr so stdout carries only the report"""
    print(message, file=sys.stderr)


def setup_argument_parser():
    """Setup command line argument parser"""
    parser = argparse.ArgumentParser(
        prog="twistorlab",
        description="Numerical verification of the metric-transfer map between twistor spaces",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python twistorlab.py run --config conformal-flat-j1          # Bundled scenario, JSON report
  python twistorlab.py run --config my.json --format text     # Own scenario, readable summary
  python twistorlab.py run --config round-sphere-s4 --jobs 4  # Checks on a thread pool
  python twistorlab.py run --config homothetic-flat --seed 7 --no-timing --output report.json
  python twistorlab.py list-checks
  python twistorlab.py list-scenarios
        """
    )
    parser.add_argument(
        "--debug",
        action="store_true",
        help="Enable debug logging and tracebacks"
    )
    parser.add_argument(
        "--log-file",
        type=str,
        help="Also write logs to this file"
    )

    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run a scenario and emit its report")
    run.add_argument(
        "--config",
        type=str,
        required=True,
        help="Scenario JSON file or bundled scenario name"
    )
    run.add_argument(
        "--format",
        choices=list(RUNNER_CONFIG["report_formats"]),
        default="json",
        help="Report format"
    )
    run.add_argument(
        "--seed",
        type=int,
        help="Override the scenario seed"
    )
    run.add_argument(
        "--jobs",
        type=int,
        default=RUNNER_CONFIG["default_jobs"],
        help="Number of checks run concurrently"
    )
    run.add_argument(
        "--output",
        type=str,
        help="Write the report here instead of stdout"
    )
    run.add_argument(
        "--no-timing",
        action="store_true",
        help="Drop wall-clock fields for byte-stable reports"
    )

    commands.add_parser("list-checks", help="List registered checks")
    commands.add_parser("list-scenarios", help="List bundled scenarios and builtin metrics")
    return parser


def validate_args(args):
    """Validate command line arguments"""
    if args.command != "run":
        return True

    if args.jobs < 1:
        status("❌ --jobs must be at least 1")
        return False

    if args.seed is not None and args.seed < 0:
        status("❌ --seed must be non-negative")
        return False

    if args.output:
        parent = os.path.dirname(os.path.abspath(args.output))
        if not os.path.isdir(parent):
            status(f"❌ Output directory does not exist: {parent}")
            return False

    return True


def list_checks():
    for check_id, spec in CHECK_REGISTRY.items():
        flags = []
        if spec.conformal_only:
            flags.append("conformal pairs")
        if spec.dims:
            flags.append("n in " + ",".join(str(n) for n in spec.dims))
        polarity = spec.polarity if isinstance(spec.polarity, str) else "pair-dependent"
        suffix = f" [{'; '.join(flags)}]" if flags else ""
        print(f"{check_id:<26} {polarity:<15} {spec.description}{suffix}")


def list_scenarios():
    print("Bundled scenarios:")
    for name in bundled_scenarios():
        print(f"  {name}")
    print("Builtin metrics:")
    for name, (_, description) in BUILTIN_METRICS.items():
        print(f"  {name:<16} {description}")


def run_mode(args) -> int:
    """Run one scenario; returns the process exit code"""
    config = load_config(args.config)
    if args.seed is not None:
        config = config.with_seed(args.seed)

    status(f"🚀 Running scenario {config.name}")
    status(f"   Checks: {len(config.checks)}")
    status(f"   Samples: {config.samples}, seed: {config.seed}, jobs: {args.jobs}")

    report = ScenarioRunner(jobs=args.jobs).run(config)
    payload = emit_report(report, args.format, include_timing=not args.no_timing)

    if args.output:
        with open(args.output, 'wb') as f:
            f.write(payload)
        status(f"📄 Report written to {args.output}")
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()

    summary = report.summary
    if report.passed:
        status(f"✅ {summary['passed']}/{summary['total']} checks passed")
        return EXIT_PASS
    status(f"❌ {summary['failed']} failed, {summary['errors']} errors out of {summary['total']} checks")
    return EXIT_FAIL


def main():
    """Main launcher function"""
    parser = setup_argument_parser()
    args = parser.parse_args()

    if not validate_args(args):
        sys.exit(EXIT_CONFIG)

    setup_logging("DEBUG" if args.debug else "WARNING", args.log_file)

    try:
        if args.command == "list-checks":
            list_checks()
            sys.exit(EXIT_PASS)
        elif args.command == "list-scenarios":
            list_scenarios()
            sys.exit(EXIT_PASS)
        sys.exit(run_mode(args))

    except (ConfigError, ReportFormatError) as e:
        status(f"❌ Configuration error: {e}")
        if args.debug:
            import traceback
            traceback.print_exc()
        sys.exit(EXIT_CONFIG)

    except KeyboardInterrupt:
        status("\n⏸️ Run interrupted by user")
        sys.exit(EXIT_FAIL)

    except Exception as e:
        status(f"\n❌ twistorlab error: {e}")
        if args.debug:
            import traceback
            traceback.print_exc()
        sys.exit(EXIT_FAIL)


if __name__ == "__main__":
    main()
