"""
Levantamiento de Hensel: una raiz simple de f̄ en el cuerpo residual se
levanta a una raiz de f con precision dada (iteracion de Newton).
"""
import logging

from vallab.core.coefficients import Coeff
from vallab.core.errors import NonSimpleResidueRoot, NoResidueRoot, PrecisionTooLow
from vallab.core.series import Series
from vallab.modules.taylor.hasse import WSeries
from vallab.utils import format_exp, is_finite, parse_bound

logger = logging.getLogger(__name__)

MAX_NEWTON_STEPS = 64


def residue(a: Series) -> Coeff:
    """Clase residual de un elemento de valuacion ≥ 0: el coeficiente de t⁰"""
    if a.is_zero():
        return a.ctx.zero
    if a.valuation() < 0:
        raise ValueError(f"{a} has negative valuation; it has no residue")
    return a.coefficient(0)


def reduce_polynomial(f: WSeries) -> list:
    """f̄: coeficientes residuales [ā_0, …, ā_d]"""
    return [residue(a) for a in f.coeffs]


def _eval_residue(coeffs: list, c: Coeff) -> Coeff:
    total = c.ctx.zero
    for a in reversed(coeffs):
        total = total * c + a
    return total


def hensel_lift(f: WSeries, residue_root: Coeff, target_prec) -> Series:
    """
    y con v(f(y)) ≥ target_prec e y ≡ residue_root.

    Raises:
        NoResidueRoot si f̄(residue_root) ≠ 0
        NonSimpleResidueRoot si f̄′(residue_root) = 0
        PrecisionTooLow si los coeficientes de f no alcanzan target_prec
    """
    target = parse_bound(target_prec)
    if not is_finite(target):
        raise PrecisionTooLow("Hensel lifting needs a finite target precision")
    for a in f.coeffs:
        if a.prec < target:
            raise PrecisionTooLow(
                f"coefficient {a} is only known below {format_exp(a.prec)} < {format_exp(target)}"
            )

    reduced = reduce_polynomial(f)
    if not _eval_residue(reduced, residue_root).is_zero():
        raise NoResidueRoot(f"{residue_root} is not a root of the reduced polynomial")
    derivative = f.hasse(1)
    if _eval_residue(reduce_polynomial(derivative), residue_root).is_zero():
        raise NonSimpleResidueRoot(f"{residue_root} is a multiple root of the reduced polynomial")

    y = Series.monomial(f.ctx, f.group, 0, residue_root)
    for step in range(MAX_NEWTON_STEPS):
        value = f.eval(y).truncate(target)
        if not value.terms and value.prec >= target:
            logger.debug(f"Hensel lift converged after {step} Newton steps")
            return y.truncate(target)
        slope = derivative.eval(y)
        y = (y - value * slope.invert(prec=target)).truncate(target)
    raise PrecisionTooLow(f"Newton iteration did not reach {format_exp(target)} in {MAX_NEWTON_STEPS} steps")
