"""
Rectas ℓ_i(ε) = v(∂_i f) + i·ε y el umbral a partir del cual sus valores
son distintos dos a dos.
"""
import logging
from fractions import Fraction
from itertools import combinations
from typing import List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from vallab.core.errors import DuplicateSlopes
from vallab.core.exponents import ExpField
from vallab.utils import Bound, format_exp, is_finite

logger = logging.getLogger(__name__)


class SlopeLine(BaseModel):
    model_config = ConfigDict(frozen=True)

    intercept: ExpField
    # La pendiente 0 se admite: representa el termino ∂_0 f (valor constante)
    slope: int = Field(..., ge=0)

    def at(self, epsilon: Fraction) -> Fraction:
        return self.intercept + self.slope * epsilon


def _check_distinct(lines: Sequence[SlopeLine]):
    seen = set()
    for line in lines:
        if line.slope in seen:
            raise DuplicateSlopes(f"two lines share slope {line.slope}")
        seen.add(line.slope)


def slope_crossings(lines: Sequence[SlopeLine], interval: Tuple[Fraction, Bound]) -> List[Fraction]:
    """Cortes dos a dos dentro del intervalo abierto, ordenados (a lo sumo d(d−1)/2)"""
    _check_distinct(lines)
    low, high = interval
    crossings = set()
    for a, b in combinations(lines, 2):
        point = Fraction(b.intercept - a.intercept) / (a.slope - b.slope)
        if low < point < high:
            crossings.add(point)
    return sorted(crossings)


def slope_threshold(lines: Sequence[SlopeLine], interval: Tuple[Fraction, Bound]) -> Fraction:
    """
    β del intervalo mayor que todo corte interior: a partir de β los valores
    de las rectas son distintos dos a dos.

    Sin cortes se devuelve el extremo inferior. Con cortes se toma el punto
    medio entre el ultimo corte y el extremo superior (o ultimo corte + 1 si
    el intervalo no esta acotado).
    """
    low, high = interval
    if not low < high:
        raise ValueError(f"empty interval ({format_exp(low)}, {format_exp(high)})")
    crossings = slope_crossings(lines, interval)
    if not crossings:
        return Fraction(low)
    last = crossings[-1]
    threshold = last + 1 if not is_finite(high) else (last + Fraction(high)) / 2
    logger.debug(f"{len(crossings)} crossings in interval, threshold {format_exp(threshold)}")
    return threshold
