"""
Command-line entry point

    python -m src solve chsh
    python -m src randomness tilted --alpha 1 --werner-p 0.9
    python -m src sweep --var p --alpha 1 --from 0.7072 --to 1 --steps 50 --out fig2.csv
    python -m src oracle ebi --seed 7
    python -m src lhv gisin --n 4
    python -m src families

Results go to stdout (or --out), logs to stderr.
"""

import argparse
import logging
import sys
from typing import List, Optional

from src import __version__
from src.controllers.command_controller import CommandController
from src.models.run_config import RunConfig
from src.utils.logger import AppLogger, get_logger
from src.utils.validators import FAMILY_IDS

logger = get_logger(__name__)


def _common_options() -> argparse.ArgumentParser:
    """Flags accepted after every subcommand; defaults live in RunConfig"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--alpha', type=float, help="tilt parameter (>= 1, default 1)")
    common.add_argument('--n', type=int, help="settings per party for gisin/chained (default 3)")
    common.add_argument('--out', help="write the result to this file instead of stdout")
    common.add_argument('--format', choices=('json', 'csv'), help="output format (csv for sweep only)")
    common.add_argument('--verbose', action='store_true', default=None, help="DEBUG logging on stderr")
    common.add_argument('--log-dir', dest='log_dir', help="also write rotating log files here")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog='bellsos',
        description="Bell operators, SOS certificates and device-independent randomness for two qubits",
    )
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest='command', required=True, metavar='command')

    solve = commands.add_parser('solve', parents=[common], help="optimal measurements and certificate")
    solve.add_argument('family', choices=FAMILY_IDS)

    randomness = commands.add_parser('randomness', parents=[common], help="guessing probability and min-entropy")
    randomness.add_argument('family', choices=('chsh', 'tilted'))
    randomness.add_argument('--werner-p', dest='werner_p', type=float, help="Werner visibility in [0, 1]")

    sweep = commands.add_parser('sweep', parents=[common], help="alpha or visibility sweep (CSV by default)")
    sweep.add_argument('--var', choices=('alpha', 'p'), required=True)
    sweep.add_argument('--from', dest='range_from', type=float, required=True)
    sweep.add_argument('--to', dest='range_to', type=float, required=True)
    sweep.add_argument('--steps', type=int, help="grid points (default 50)")

    oracle = commands.add_parser('oracle', parents=[common], help="see-saw maximization on Phi+")
    oracle.add_argument('family', choices=FAMILY_IDS)
    oracle.add_argument('--seed', type=int, help="root seed (default 20240101)")
    oracle.add_argument('--restarts', type=int, help="random restarts (default 20)")

    lhv = commands.add_parser('lhv', parents=[common], help="classical bound by enumeration")
    lhv.add_argument('family', choices=FAMILY_IDS)

    commands.add_parser('families', parents=[common], help="list supported families")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one command and print its result

    Returns:
        Exit code (argparse itself exits with 2 on malformed arguments)
    """
    args = build_parser().parse_args(argv)
    config = RunConfig.from_namespace(args)

    AppLogger.setup_logging(
        level=logging.DEBUG if config.verbose else logging.WARNING,
        log_dir=config.log_dir,
    )

    outcome = CommandController(config).run()
    if outcome.output:
        sys.stdout.write(outcome.output)
        sys.stdout.flush()
    if outcome.exit_code != 0 and outcome.message:
        print(f"error: {outcome.message}", file=sys.stderr)
    elif outcome.message:
        logger.info(outcome.message)
    return outcome.exit_code
