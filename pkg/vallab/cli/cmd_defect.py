"""
vallab defect {tower,radical,as}: reportes e, f, d
"""
import argparse
import logging

from vallab.cli.cmd_as import expansion_from_polynomial
from vallab.cli.common import construction_params, emit
from vallab.cli.expressions import parse_polynomial, parse_series
from vallab.modules.defectlab.artin_schreier import p_divisible_frame
from vallab.modules.defectlab.invariants import (
    ArtinSchreier,
    ExtensionSpec,
    PaperTower,
    Radical,
    invariants_report,
)
from vallab.schemas import ExtensionReport, RunConfig
from vallab.utils import format_exp

logger = logging.getLogger(__name__)


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("defect", parents=parents, help="ramification, inertia and defect")
    kinds = parser.add_subparsers(dest="kind", required=True)

    tower = kinds.add_parser("tower", parents=parents, help="K ⊂ K' ⊂ L")
    tower.add_argument("--level", choices=["K'|K", "L|K'", "L|K"], default="L|K")

    radical = kinds.add_parser("radical", parents=parents, help="K(z^(1/n))")
    radical.add_argument("--n", dest="n", type=int, required=True)
    radical.add_argument("--z", dest="z", required=True, help="radicand expression")

    artin = kinds.add_parser("as", parents=parents, help="K[X]/(X^p - X - b)")
    artin.add_argument("--b", dest="b", required=True)

    parser.set_defaults(handler=cmd_defect)


def render(report: ExtensionReport) -> str:
    if report.d is None:
        invariants = "e, f, d unrecorded"
    else:
        invariants = f"e = {report.e}, f = {report.f}, d = {format_exp(report.d)}"
    text = f"{report.label}: [L:K] = {report.degree}, {invariants}, immediate: {report.immediate}"
    if report.witness is not None:
        text += f", witness {format_exp(report.witness)}"
    if report.notes:
        text += f"\n{report.notes}"
    return text


def cmd_defect(args: argparse.Namespace, config: RunConfig) -> int:
    params = construction_params(config)
    if args.kind == "tower":
        kind = PaperTower(level=args.level)
    elif args.kind == "radical":
        kind = Radical(n=args.n, radicand=parse_series(args.z, params, prec=config.prec))
    else:
        r, shift = p_divisible_frame(params.p, params.q)
        kind = ArtinSchreier(b=expansion_from_polynomial(parse_polynomial(args.b, params), params.q, r, shift))

    spec = ExtensionSpec(kind=kind, params=params, probe_prec=config.probe_prec, max_iter=config.max_iter)
    report = invariants_report(spec)
    emit(config, report, text=render(report))
    if not (report.fundamental_equality_ok() and report.ostrowski_ok):
        logger.error(f"{report.label}: e·f·d = degree or Ostrowski check failed")
        return 1
    if report.immediate == "inconclusive":
        logger.warning(f"{report.label}: invariants not determined at working precision")
    return 0
