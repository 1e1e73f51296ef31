"""
vallab series EXPR: evalua una expresion y muestra su valuacion
"""
import argparse
import logging

from vallab.cli.common import construction_params, default_prec, emit
from vallab.cli.expressions import parse_series
from vallab.core.errors import IndeterminateValuation
from vallab.schemas import RunConfig
from vallab.utils import format_exp

logger = logging.getLogger(__name__)


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("series", parents=parents, help="evaluate a series expression")
    parser.add_argument("expression", help='e.g. "inv(w)", "t^(1/3) + 2*t"')
    parser.set_defaults(handler=cmd_series)


def cmd_series(args: argparse.Namespace, config: RunConfig) -> int:
    params = construction_params(config)
    result = parse_series(args.expression, params, prec=default_prec(config))
    if config.prec is not None and result.prec > config.prec:
        result = result.truncate(config.prec)

    try:
        value = format_exp(result.valuation())
    except IndeterminateValuation:
        value = f">= {format_exp(result.prec)}"

    document = {
        "expression": args.expression,
        "series": str(result),
        "valuation": value,
        "prec": format_exp(result.prec),
        "terms": result.to_json()["terms"],
    }
    emit(config, document, text=f"{result}, v = {value}")
    return 0
