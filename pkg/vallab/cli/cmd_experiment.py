"""
vallab experiment paper: el reporte completo de la torre
"""
import argparse
import logging

from vallab.cli.common import emit
from vallab.experiments.paper import PaperExperiment
from vallab.schemas import RunConfig

logger = logging.getLogger(__name__)


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("experiment", parents=parents, help="batch experiments")
    names = parser.add_subparsers(dest="experiment", required=True)
    paper = names.add_parser("paper", parents=parents, help="tower report, probe and Artin–Schreier corpora")
    paper.add_argument("--corpus-size", dest="corpus_size", type=int, default=None)
    paper.add_argument("--as-corpus-size", dest="as_corpus_size", type=int, default=None)
    parser.set_defaults(handler=cmd_experiment)


def cmd_experiment(args: argparse.Namespace, config: RunConfig) -> int:
    updates = {
        key: getattr(args, key)
        for key in ("corpus_size", "as_corpus_size")
        if getattr(args, key, None) is not None
    }
    if updates:
        config = RunConfig(**{**config.model_dump(), **updates})

    report = PaperExperiment(config).run()
    # Un solo documento JSON, sin importar --json
    emit(config, report.to_document(), force_json=True)

    for note in report.inconclusive:
        logger.warning(f"inconclusive: {note}")
    if not report.invariants_ok:
        logger.error("invariant check failed (fundamental equality, Ostrowski or immediacy probe)")
        return 1
    return 0
