"""
Utilidades de formato: exponentes "a/b", cotas de precision e identificadores
"""
import hashlib
import json
import math
from fractions import Fraction
from typing import Any, Union

# +infinito: cota de precision de un elemento exacto y valuacion del cero
INF = math.inf

Bound = Union[Fraction, float]


def is_finite(value: Bound) -> bool:
    """True salvo para +inf (Fraction nunca es infinito)"""
    return value != INF


def parse_exp(text: Union[str, int, Fraction]) -> Fraction:
    """Parsea "a/b" (o un entero) a Fraction reducida"""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    cleaned = str(text).strip().replace(" ", "")
    if cleaned.startswith("(") and cleaned.endswith(")"):
        cleaned = cleaned[1:-1]
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"invalid exponent '{text}': {e}")


def parse_bound(text: Any) -> Bound:
    """Como parse_exp, pero acepta "inf" / math.inf"""
    if isinstance(text, float) and math.isinf(text) and text > 0:
        return INF
    if isinstance(text, str) and text.strip().lower() in ("inf", "+inf", "infinity"):
        return INF
    return parse_exp(text)


def format_exp(value: Bound) -> str:
    """Formatea un exponente como "a/b" (b omitido cuando vale 1)"""
    if not is_finite(value):
        return "inf"
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def dumps_report(document: Any) -> str:
    """JSON deterministico para reportes"""
    return json.dumps(document, indent=2, ensure_ascii=False)


def fingerprint(document: Any, length: int = 12) -> str:
    """Hash corto de un documento JSON (para comparar corridas)"""
    return hashlib.sha256(dumps_report(document).encode()).hexdigest()[:length]
