"""
Sonda de inmediatez para L|K′: v(f(x)) para f = Σ_{j<p} b_j X^j con b_j ∈ K′.

Cada b_j es un polinomio en w con coeficientes en k(t^{Γ′}). Se evalua
F(W, X) = Σ b_j(W) X^j en las cabezas exactas (w_{0l}, x_l) y el valor se
certifica cuando es menor que toda correccion de Taylor:

    v(F(w0, x0)) < min_{(a,b) ≠ 0} v(∂_W^a ∂_X^b F(w0, x0)) + a·β_{l+1} + b·β_{l+1}/p

(v(w − w_{0l}) = β_{l+1}, v(x − x_l) = β_{l+1}/p). Si no se certifica se
reintenta con profundidad doble.
"""
import logging
import math
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from vallab.core.errors import DegenerateZero, IndeterminateValuation
from vallab.core.exponents import residue_extended, tower_group
from vallab.core.series import Series
from vallab.modules.construction.witness import WConstructionParams, tail_valuation, w_head, x_head
from vallab.modules.taylor.hasse import WSeries
from vallab.schemas import ProbeResult
from vallab.utils import format_exp, is_finite

logger = logging.getLogger(__name__)

# Profundidad maxima de las cabezas
MAX_PROBE_DEPTH = 48

Bivariate = Dict[Tuple[int, int], Series]


def _bivariate(fcoeffs: Sequence[WSeries], group) -> Bivariate:
    """F(W, X) como {(i, j): coeficiente de W^i X^j}"""
    poly: Bivariate = {}
    for j, b in enumerate(fcoeffs):
        for i, a in enumerate(b.coeffs):
            a = a.with_group(group)
            if not a.is_zero():
                poly[(i, j)] = a
    return poly


def _evaluate_derivative(poly: Bivariate, a: int, b: int, w0: Series, x0: Series, p: int,
                         w_powers: List[Series], x_powers: List[Series]) -> Series:
    total = Series.zero(w0.ctx, w0.group)
    for (i, j), c in poly.items():
        if i < a or j < b:
            continue
        weight = (math.comb(i, a) * math.comb(j, b)) % p
        if weight == 0:
            continue
        total = total + c.scale(weight) * w_powers[i - a] * x_powers[j - b]
    return total


def _powers(point: Series, count: int) -> List[Series]:
    powers = [Series.one(point.ctx, point.group)]
    for _ in range(1, count):
        powers.append(powers[-1] * point)
    return powers


def probe_at_depth(fcoeffs: Sequence[WSeries], params: WConstructionParams, depth: int) -> ProbeResult:
    p = params.p
    group = tower_group(p)
    poly = _bivariate(fcoeffs, group)
    if not poly:
        raise DegenerateZero("f collapses to the zero polynomial")

    w0 = w_head(params, depth, group)
    x0 = x_head(params, depth, group)
    max_i = max(i for i, _ in poly)
    max_j = max(j for _, j in poly)
    w_powers = _powers(w0, max_i + 1)
    x_powers = _powers(x0, max_j + 1)

    value = _evaluate_derivative(poly, 0, 0, w0, x0, p, w_powers, x_powers).valuation()
    if not is_finite(value):
        raise IndeterminateValuation(f"f(w_0l, x_l) = 0 exactly at depth {depth}")

    w_tail = tail_valuation(params, depth)
    x_tail = w_tail / p
    correction = None
    for a in range(max_i + 1):
        for b in range(max_j + 1):
            if a == 0 and b == 0:
                continue
            v_ab = _evaluate_derivative(poly, a, b, w0, x0, p, w_powers, x_powers).valuation()
            if not is_finite(v_ab):
                continue
            bound = v_ab + a * w_tail + b * x_tail
            correction = bound if correction is None else min(correction, bound)

    if correction is not None and not value < correction:
        raise IndeterminateValuation(
            f"value {format_exp(value)} not below Taylor correction {format_exp(correction)} at depth {depth}"
        )
    return ProbeResult(
        value=value,
        in_base_group=residue_extended(p).contains(Fraction(value)),
        depth=depth,
    )


def immediate_probe(
    fcoeffs: Sequence[WSeries], params: WConstructionParams, prec: int = 6, retries: int = 3
) -> ProbeResult:
    """
    v(f(x)) y si pertenece a Γ′ = Γ + (1/p)Z.

    Raises:
        DegenerateZero si f es el polinomio nulo
        IndeterminateValuation si ni con `retries` duplicaciones se certifica
    """
    if len(fcoeffs) > params.p:
        raise ValueError(f"f must have degree < p = {params.p} in X")
    retrying = Retrying(
        stop=stop_after_attempt(retries),
        retry=retry_if_exception_type(IndeterminateValuation),
        reraise=True,
    )
    for attempt in retrying:
        with attempt:
            depth = min(prec * 2 ** (attempt.retry_state.attempt_number - 1), MAX_PROBE_DEPTH)
            if attempt.retry_state.attempt_number > 1:
                logger.debug(f"retrying immediacy probe at depth {depth}")
            return probe_at_depth(fcoeffs, params, depth)
