"""
Flags globales, resolucion de RunConfig y emision de reportes
"""
import argparse
import logging
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel

from vallab.config import resolve_run_config
from vallab.core.exponents import beta
from vallab.modules.construction.witness import WConstructionParams
from vallab.schemas import RunConfig
from vallab.utils import dumps_report

logger = logging.getLogger(__name__)


def common_parser() -> argparse.ArgumentParser:
    """
    Flags compartidos. default=SUPPRESS permite ponerlos antes o despues del
    subcomando sin que uno pise al otro.
    """
    parser = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    parser.add_argument("--p", type=int, help="residue characteristic")
    parser.add_argument("--q", type=int, help="prime in the denominators of β_i")
    parser.add_argument("--m", type=int, help="degree of the coefficient field over F_p")
    parser.add_argument("--depth", type=int, help="number of materialized terms of w")
    parser.add_argument("--prec", type=str, help="target precision, e.g. 80/81")
    parser.add_argument("--seed", type=int, help="seed for the random corpora")
    parser.add_argument("--max-iter", dest="max_iter", type=int, help="budget for iterative procedures")
    parser.add_argument("--output", type=str, help="write the report to this file")
    parser.add_argument("--json", dest="json", action="store_true", help="emit JSON instead of text")
    return parser


def run_config_from(args: argparse.Namespace) -> RunConfig:
    overrides: Dict[str, Any] = {
        key: getattr(args, key, None)
        for key in ("p", "q", "m", "depth", "prec", "seed", "max_iter", "output")
    }
    if getattr(args, "json", False):
        overrides["format"] = "json"
    return resolve_run_config(overrides)


def construction_params(config: RunConfig) -> WConstructionParams:
    return WConstructionParams(p=config.p, q=config.q, m=config.m, depth=config.depth)


def default_prec(config: RunConfig):
    """prec de la config, o β_{depth+1}"""
    return config.prec if config.prec is not None else beta(config.depth + 1, config.q)


def _render_text(document: Any, indent: str = "") -> str:
    if isinstance(document, dict):
        lines = []
        for key, value in document.items():
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{indent}{key}:")
                lines.append(_render_text(value, indent + "  "))
            else:
                lines.append(f"{indent}{key}: {value}")
        return "\n".join(lines)
    if isinstance(document, list):
        return "\n".join(
            _render_text(item, indent + "  ") if isinstance(item, dict) else f"{indent}- {item}"
            for item in document
        )
    return f"{indent}{document}"


def emit(config: RunConfig, document: Any, text: Optional[str] = None, force_json: bool = False) -> None:
    """
    Imprime el reporte (JSON o texto) y lo guarda en config.output si existe.
    `text` sustituye a la representacion generica en modo texto.
    """
    if isinstance(document, BaseModel):
        document = document.model_dump(mode="json")
    if config.format == "json" or force_json:
        rendered = dumps_report(document)
    else:
        rendered = text if text is not None else _render_text(document)
    print(rendered)
    if config.output:
        Path(config.output).write_text(rendered + "\n", encoding="utf-8")
        logger.info(f"report written to {config.output}")
