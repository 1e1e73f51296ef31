"""
vallab as --b EXPR: bucle de Artin–Schreier sobre b = Σ c t^ε W^j,
con W = w_r/t^β el monomio del marco
"""
import argparse
import logging

from vallab.cli.common import construction_params, emit
from vallab.cli.expressions import parse_polynomial
from vallab.core.errors import PrecisionTooLow
from vallab.modules.construction.quasi_finite import Expansion
from vallab.modules.defectlab.artin_schreier import as_classify, delta_set, n_of, p_divisible_frame
from vallab.modules.taylor.hasse import WSeries
from vallab.schemas import RunConfig
from vallab.utils import format_exp, parse_exp

logger = logging.getLogger(__name__)


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("as", parents=parents, help="Artin–Schreier reduction of X^p - X - b")
    parser.add_argument("--b", dest="b", required=True, help='e.g. "t^(-1/3)" or "t^(-2)*W^2"')
    parser.add_argument("--frame", type=int, default=None, help="frame index r (default: a p-divisible frame)")
    parser.add_argument("--beta", default=None, help="frame shift β")
    parser.set_defaults(handler=cmd_as)


def expansion_from_polynomial(poly: WSeries, q: int, r: int, shift) -> Expansion:
    """Los coeficientes de W^j deben ser sumas finitas de monomios"""
    terms = []
    for j, a in enumerate(poly.coeffs):
        if not a.is_exact():
            raise PrecisionTooLow(f"coefficient of W^{j} must be a finite sum of monomials, got {a}")
        terms.extend((e, j, c) for e, c in a.terms)
    return Expansion(poly.ctx, poly.group, q, r, shift, terms)


def cmd_as(args: argparse.Namespace, config: RunConfig) -> int:
    params = construction_params(config)
    r, shift = p_divisible_frame(params.p, params.q)
    if args.frame is not None:
        r = args.frame
        shift = parse_exp(args.beta) if args.beta is not None else 0
    b = expansion_from_polynomial(parse_polynomial(args.b, params), params.q, r, shift)

    verdict = as_classify(b, config.max_iter)
    document = {
        "b": b.to_json(),
        "delta": delta_set(b).model_dump(mode="json")["pairs"],
        "n": n_of(b),
        "verdict": verdict.model_dump(mode="json"),
    }
    text = f"b = {b}\nn(b) = {n_of(b)}\nverdict: {verdict.verdict}"
    if verdict.witness is not None:
        text += f", witness {format_exp(verdict.witness)} after {verdict.steps} steps"
    elif verdict.reason:
        text += f" ({verdict.reason})"
    emit(config, document, text=text)
    return 0
