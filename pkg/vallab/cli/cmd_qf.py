"""
vallab qf: el ejemplo w⁻¹ como elemento cuasi-finito
"""
import argparse
import logging

from vallab.cli.common import construction_params, emit
from vallab.modules.construction.quasi_finite import (
    bounded_terms,
    qf_expand,
    qf_to_expansion,
    w_inverse_qf,
)
from vallab.schemas import RunConfig
from vallab.utils import format_exp, parse_bound, parse_exp

logger = logging.getLogger(__name__)


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("qf", parents=parents, help="quasi-finite expansion of w^-1")
    parser.add_argument("--degree-cap", dest="degree_cap", type=int, default=12,
                        help="total degree D up to which g is known")
    parser.add_argument("--target", default="1", help="target precision of the expansion")
    parser.add_argument("--frame", type=int, default=None, help="frame index r (w = w_0r + t^β·W)")
    parser.add_argument("--beta", default="0", help="frame shift β")
    parser.add_argument("--bound", default="inf", help="only list frame terms of value below this")
    parser.set_defaults(handler=cmd_qf)


def cmd_qf(args: argparse.Namespace, config: RunConfig) -> int:
    params = construction_params(config)
    y = w_inverse_qf(params, degree_cap=args.degree_cap)
    expansion = qf_expand(y, parse_exp(args.target))
    document = {
        "qf": y.to_json(),
        "max_precision": format_exp(y.max_precision()),
        "expansion": str(expansion),
        "valuation": format_exp(expansion.valuation()),
    }
    lines = [f"w^-1 = {expansion}", f"v = {format_exp(expansion.valuation())}"]

    if args.frame is not None:
        frame = qf_to_expansion(y, args.frame, parse_exp(args.beta), parse_bound(args.bound))
        terms = bounded_terms(frame, parse_bound(args.bound))
        document["frame"] = frame.to_json()
        document["bounded_terms"] = [[format_exp(e), j, str(c)] for e, j, c in terms]
        lines.append(f"frame (r={frame.r}, β={format_exp(frame.beta)}): {frame}")
        lines.append(f"exact below {format_exp(frame.bound)}")

    emit(config, document, text="\n".join(lines))
    return 0
