"""
Resta de potencias p-esimas: busca a con v(z − a^p) ∉ pΓ.

Cada paso junta los monomios visibles del residuo cuyo exponente esta en pΓ
(b), acumula a += b^{1/p} y vuelve a mirar el residuo. Si el residuo visible
queda vacio se profundiza el desarrollo de z un termino mas.
"""
import logging
from typing import Union

from pydantic import BaseModel, ConfigDict

from vallab.core.errors import Inconclusive
from vallab.core.exponents import BoundField, gamma_group, in_p_multiple
from vallab.core.series import Series
from vallab.modules.construction.quasi_finite import (
    PowerSeriesOracle,
    QuasiFinite,
    expand_at_depth,
)
from vallab.modules.construction.witness import WConstructionParams
from vallab.modules.taylor.hasse import WSeries
from vallab.schemas import PthPowerRow
from vallab.utils import INF, format_exp, is_finite

logger = logging.getLogger(__name__)


class PthPowerResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    a: Series
    value: BoundField
    outside_pGamma: bool
    steps: int = 0

    def to_row(self, label: str) -> PthPowerRow:
        return PthPowerRow(
            label=label,
            outcome="outside-pGamma" if self.outside_pGamma else "exact-p-th-power",
            value=self.value,
            a=self.a.to_json(),
            steps=self.steps,
        )


def carrier_qf(params: WConstructionParams, group=None) -> QuasiFinite:
    """w visto como elemento cuasi-finito: γ = 0, h₁ = w, g(X) = X"""
    group = group if group is not None else gamma_group(params.p)
    ctx = params.field
    return QuasiFinite(0, [WSeries.variable(ctx, group)], PowerSeriesOracle(ctx, 1, 1, {(1,): 1}), params, group)


def _p_divisible_part(residual: Series) -> Series:
    p = residual.ctx.p
    terms = [(e, c) for e, c in residual.terms if in_p_multiple(e, p, residual.group)]
    return Series(residual.ctx, residual.group, tuple(terms))


def subtract_pth_powers(z: Union[Series, QuasiFinite], max_steps: int = 10) -> PthPowerResult:
    """
    a sale como suma finita exacta de monomios t^γ con γ ∈ Γ, es decir un
    elemento de k(t^Γ) ⊂ k(t^Γ)[w] de grado 0 en w.

    Raises:
        Inconclusive si en max_steps pasos ningun residuo visible sale de pΓ
    """
    if isinstance(z, QuasiFinite):
        depth = z.params.depth
        target = z.max_precision()
        expand = lambda d: expand_at_depth(z, d, target)  # noqa: E731
        ctx, group = z.ctx, z.group
    else:
        depth = 0
        target = INF
        expand = lambda d: z  # noqa: E731
        ctx, group = z.ctx, z.group

    p = ctx.p
    a = Series.zero(ctx, group)
    current = expand(depth)
    for step in range(max_steps + 1):
        residual = current - a ** p
        divisible = _p_divisible_part(residual)
        if divisible.terms:
            # a es una suma finita de monomios: exacta aunque z este truncada
            a = a + Series(ctx, group, divisible.pth_root().terms)
            continue
        if residual.terms:
            # Sin monomios en pΓ: el primero visible es el testigo
            leading = residual.terms[0][0]
            logger.debug(f"residual valuation {format_exp(leading)} outside pΓ after {step} steps")
            return PthPowerResult(a=a, value=leading, outside_pGamma=True, steps=step)
        if residual.is_exact():
            return PthPowerResult(a=a, value=INF, outside_pGamma=False, steps=step)
        if not isinstance(z, QuasiFinite) or (is_finite(target) and residual.prec >= target):
            # No hay mas terminos que mirar
            break
        depth += 1
        current = expand(depth)

    logger.info(f"p-th power subtraction inconclusive after {max_steps} steps")
    raise Inconclusive(
        f"every visible residual stays in pΓ within {max_steps} steps", budget=max_steps
    )
