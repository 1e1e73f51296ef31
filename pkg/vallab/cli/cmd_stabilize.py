"""
vallab stabilize --f POLY: busca l0 con v(f(w_{0l})) estable
"""
import argparse
import logging

from vallab.cli.common import construction_params, emit
from vallab.cli.expressions import parse_polynomial
from vallab.modules.taylor.stabilize import stabilize
from vallab.schemas import RunConfig
from vallab.utils import format_exp, parse_exp

logger = logging.getLogger(__name__)


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("stabilize", parents=parents, help="truncation stabilization search")
    parser.add_argument("--f", dest="f", required=True, help='polynomial in W, e.g. "W^2 + t"')
    parser.add_argument("--c", dest="c", default="0", help="coefficient of the perturbation c·t^β")
    parser.add_argument("--beta", dest="beta", default="1", help="exponent β of the perturbation")
    parser.add_argument("--lmin", dest="lmin", type=int, default=1)
    parser.add_argument("--lmax", dest="lmax", type=int, default=8)
    parser.set_defaults(handler=cmd_stabilize)


def cmd_stabilize(args: argparse.Namespace, config: RunConfig) -> int:
    params = construction_params(config)
    f = parse_polynomial(args.f, params)
    c = params.field.parse(args.c)
    cert = stabilize(f, params, c, parse_exp(args.beta), l_min=args.lmin, l_max=args.lmax)

    text = "\n".join([
        f"f = {f}",
        f"l0 = {cert.l0}, e = {cert.e}, value = {format_exp(cert.value)}",
        "trace: " + ", ".join(f"{l}: {format_exp(v) if v is not None else '?'}" for l, v in cert.trace),
    ])
    emit(config, cert, text=text)
    return 0
