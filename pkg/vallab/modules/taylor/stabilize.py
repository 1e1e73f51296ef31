"""
Estabilizacion por truncacion: busca l0 tal que para todo l en [l0, l_max]
el valor v(f(w_{0l})) es constante, finito, menor que
min_i {v(∂_i f(w_{0l})) + i·δ_l} y ese minimo se alcanza en un unico indice
que es potencia de p.

El certificado es empirico sobre la ventana probada: fuera de ella se
devuelve Inconclusive, nunca una extrapolacion.
"""
import logging
from fractions import Fraction
from typing import List, Optional

from vallab.core.coefficients import Coeff
from vallab.core.errors import (
    GroupMismatch,
    Inconclusive,
    IndeterminateValuation,
    PrecisionTooLow,
    ZeroFunction,
)
from vallab.core.series import Series
from vallab.modules.construction.witness import (
    WConstructionParams,
    make_w,
    tail_valuation,
    w_head,
)
from vallab.modules.taylor.hasse import WSeries
from vallab.schemas import StabilizationCert
from vallab.utils import INF, format_exp, is_finite

logger = logging.getLogger(__name__)


def power_of_p_exponent(n: int, p: int) -> Optional[int]:
    """e con n = p^e, o None"""
    if n < 1:
        return None
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e if n == 1 else None


class _Row:
    __slots__ = ("l", "value", "ok", "minimizer", "exact_zero")

    def __init__(self, l, value, ok, minimizer, exact_zero):
        self.l = l
        self.value = value
        self.ok = ok
        self.minimizer = minimizer
        self.exact_zero = exact_zero


def _examine(f: WSeries, params: WConstructionParams, c: Coeff, beta_: Fraction, l: int) -> _Row:
    w0 = w_head(params, l, f.group)
    derivatives = f.eval_derivatives(w0)
    try:
        value = derivatives[0].valuation()
    except IndeterminateValuation:
        return _Row(l, None, False, None, False)
    if not is_finite(value):
        return _Row(l, INF, False, None, derivatives[0].is_zero())

    # δ_l = v(w_l + c·t^β)
    delta = tail_valuation(params, l)
    if not c.is_zero():
        delta = min(delta, beta_)

    candidates = []
    for i in range(1, len(derivatives)):
        try:
            v_i = derivatives[i].valuation()
        except IndeterminateValuation:
            return _Row(l, value, False, None, False)
        if is_finite(v_i):
            candidates.append((v_i + i * delta, i))

    if not candidates:
        # f constante en W: las condiciones (2) y (3) son vacias
        return _Row(l, value, True, None, False)

    least = min(bound for bound, _ in candidates)
    minimizers = [i for bound, i in candidates if bound == least]
    ok = (
        value < least
        and len(minimizers) == 1
        and power_of_p_exponent(minimizers[0], f.ctx.p) is not None
    )
    return _Row(l, value, ok, minimizers[0] if len(minimizers) == 1 else None, False)


def _full_value(f: WSeries, params: WConstructionParams, c: Coeff, beta_: Fraction, l_max: int):
    """v(f(w + c·t^β)) con w truncado mas alla de l_max, si queda determinado"""
    try:
        depth = l_max - params.start + 2
        point = make_w(params.with_depth(depth), f.group)
        if not c.is_zero():
            point = point + Series.monomial(f.ctx, f.group, beta_, c)
        return f.eval(point).valuation()
    except (IndeterminateValuation, GroupMismatch, PrecisionTooLow):
        return None


def stabilize(
    f: WSeries,
    wspec: WConstructionParams,
    c: Coeff,
    beta: Fraction,
    l_min: int = 1,
    l_max: int = 8,
) -> StabilizationCert:
    """
    Raises:
        ZeroFunction si f(w_{0l}) = 0 exacto en toda la ventana
        Inconclusive si la fila l_max no cumple las condiciones
    """
    if f.is_zero():
        raise ZeroFunction("f is the zero polynomial")
    if l_min < max(wspec.start, 1):
        raise ValueError(f"l_min must be >= max(start, 1) = {max(wspec.start, 1)}, got {l_min}")
    if l_max < l_min:
        raise ValueError(f"empty window [{l_min}, {l_max}]")
    beta = Fraction(beta)

    rows: List[_Row] = [_examine(f, wspec, c, beta, l) for l in range(l_min, l_max + 1)]
    trace = [(row.l, row.value) for row in rows]

    if all(row.exact_zero for row in rows):
        raise ZeroFunction(f"f(w_0l) = 0 exactly for every l in [{l_min}, {l_max}]")

    last = rows[-1]
    if not last.ok:
        logger.info(f"stabilization of {f} not certified at l_max = {l_max}")
        raise Inconclusive(f"no stabilization certified within l <= {l_max}", budget=l_max)

    # l0: menor l con filas validas y valor constante hasta l_max
    l0_index = len(rows) - 1
    while l0_index > 0 and rows[l0_index - 1].ok and rows[l0_index - 1].value == last.value:
        l0_index -= 1
    first = rows[l0_index]

    p = f.ctx.p
    exponents = {
        power_of_p_exponent(row.minimizer, p)
        for row in rows[l0_index:]
        if row.minimizer is not None
    }
    e = power_of_p_exponent(first.minimizer, p) if first.minimizer is not None else 0

    cert = StabilizationCert(
        l0=first.l,
        e=e,
        value=first.value,
        trace=trace,
        paper_regime=beta >= 1,
        minimizer=first.minimizer,
        e_varies=len(exponents) > 1,
        full_value=_full_value(f, wspec, c, beta, l_max),
    )
    logger.debug(f"stabilized {f}: l0 = {cert.l0}, e = {cert.e}, value = {format_exp(cert.value)}")
    return cert
