"""
vallab v1.0 - Main Application
"""
import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from vallab import __version__
from vallab.cli import cmd_as, cmd_defect, cmd_experiment, cmd_qf, cmd_series, cmd_stabilize
from vallab.cli.common import common_parser, run_config_from
from vallab.config import get_settings
from vallab.core.errors import VallabError

logger = logging.getLogger(__name__)

# Grupos de comandos, en el orden en que aparecen en --help
COMMANDS = [cmd_series, cmd_stabilize, cmd_qf, cmd_as, cmd_defect, cmd_experiment]


def build_parser() -> argparse.ArgumentParser:
    common = common_parser()
    parser = argparse.ArgumentParser(
        prog="vallab",
        description="Exact laboratory for truncated Hahn series and defect extensions",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"vallab {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers, [common])
    return parser


# ============================================
# EXCEPTION HANDLERS
# ============================================

def handle_error(exc: Exception) -> int:
    """Excepcion → codigo de salida; el detalle va a stderr"""
    if isinstance(exc, VallabError):
        if exc.exit_code == 3:
            logger.warning(f"{exc.code}: {exc.message}")
        else:
            logger.error(f"{exc.code}: {exc.message}")
        return exc.exit_code
    if isinstance(exc, ValidationError):
        logger.error(f"config-error: {exc}")
        return 2
    if isinstance(exc, (ValueError, ZeroDivisionError)):
        logger.error(f"invalid-argument: {exc}")
        return 1
    logger.error(f"Error: {str(exc)}", exc_info=True)
    return 1


def main(argv: Optional[List[str]] = None) -> int:
    settings = get_settings()
    logging.getLogger().setLevel(getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO))

    args = build_parser().parse_args(argv)
    try:
        config = run_config_from(args)
        return args.handler(args, config)
    except Exception as exc:
        return handle_error(exc)


if __name__ == "__main__":
    sys.exit(main())
