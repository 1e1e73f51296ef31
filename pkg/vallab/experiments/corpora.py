"""
Corpus aleatorios (semilla numpy) y conjuntos fijos de prueba
"""
import logging
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from vallab.core.coefficients import Coeff, FieldCtx
from vallab.core.exponents import gamma_group, p_depth, residue_extended
from vallab.core.series import Series
from vallab.modules.construction.quasi_finite import Expansion
from vallab.modules.construction.witness import WConstructionParams, s_head, w_head
from vallab.modules.defectlab.artin_schreier import p_divisible_frame
from vallab.modules.taylor.hasse import WSeries

logger = logging.getLogger(__name__)


def _field_element(rng: np.random.Generator, ctx: FieldCtx, nonzero: bool = False):
    low = 1 if nonzero else 0
    return Coeff(ctx, int(rng.integers(low, ctx.size)))


def random_exponent(rng: np.random.Generator, p: int, q: int, low: int = -2, high: int = 2, extra_p: int = 0) -> Fraction:
    """a/(p^extra_p·q^e) en [low, high)"""
    e = int(rng.integers(0, 3))
    den = q ** e * p ** extra_p
    return Fraction(int(rng.integers(low * den, high * den)), den)


def random_series(
    rng: np.random.Generator, ctx: FieldCtx, q: int, terms: int = 4, low: int = -2, high: int = 2,
    exact: bool = False,
) -> Series:
    """Serie en Γ con exponentes a/qᵉ en [low, high) y precision finita (salvo exact)"""
    group = gamma_group(ctx.p)
    monomials = [
        (random_exponent(rng, ctx.p, q, low, high), _field_element(rng, ctx, nonzero=True))
        for _ in range(int(rng.integers(1, terms + 1)))
    ]
    if exact:
        return Series.from_terms(ctx, group, monomials)
    top = max(e for e, _ in monomials)
    prec = top + Fraction(int(rng.integers(1, 4)), q)
    return Series.from_terms(ctx, group, monomials, prec)


def random_probe_polynomial(rng: np.random.Generator, params: WConstructionParams) -> List[WSeries]:
    """f = Σ_{j<p} b_j X^j con b_j ∈ k(t^{Γ′})[w] de grado ≤ 1 en w"""
    p, q = params.p, params.q
    ctx = params.field
    group = residue_extended(p)
    coeffs = []
    for j in range(p):
        w_coeffs = []
        for _ in range(int(rng.integers(1, 3))):
            count = int(rng.integers(0, 3))
            monomials = [
                (random_exponent(rng, p, q, 0, 2, extra_p=int(rng.integers(0, 2))), _field_element(rng, ctx, True))
                for _ in range(count)
            ]
            w_coeffs.append(Series.from_terms(ctx, group, monomials))
        coeffs.append(WSeries(w_coeffs, ctx, group))
    # un tercio de los casos fuerza cancelacion con la cabeza de s
    if rng.random() < 1 / 3:
        i = int(rng.integers(1, params.depth + 1))
        coeffs[0] = WSeries.constant(-s_head(params, i, group))
        coeffs[1] = WSeries.constant(Series.one(ctx, group))
    return coeffs


def random_as_expansion(rng: np.random.Generator, ctx: FieldCtx, q: int, max_extra: int = 5) -> Expansion:
    """
    b con un monomio dominante de p-profundidad exacta k ≤ 3 y hasta
    max_extra monomios mas cuyos valores superan v0/p³.
    """
    p = ctx.p
    group = gamma_group(p)
    r, shift = p_divisible_frame(p, q)
    frame = Expansion(ctx, group, q, r, shift, [])
    mu = frame.frame_valuation

    k = int(rng.integers(0, 4))
    while True:
        a = int(rng.integers(1, 4 * p))
        if a % p:
            break
    u = Fraction(a, q ** int(rng.integers(0, 3)))
    epsilon = -(p ** k) * u
    j = p ** k * int(rng.integers(0, 3))
    # el valor dominante debe ser negativo
    if epsilon + j * mu >= 0:
        j = 0
    v0 = epsilon + j * mu
    monomials = [(epsilon, j, _field_element(rng, ctx, nonzero=True))]
    keys = {(epsilon, j)}

    floor = v0 / p ** 3
    for _ in range(int(rng.integers(0, max_extra + 1))):
        for _attempt in range(20):
            depth = int(rng.integers(0, 4))
            e_other = p ** depth * Fraction(int(rng.integers(-3 * q, 3 * q + 1)), q ** int(rng.integers(0, 3)))
            j_other = int(rng.integers(0, 2 * p + 1))
            value = e_other + j_other * mu
            if value <= floor or (e_other, j_other) in keys:
                continue
            if value < 0 and p_depth(e_other, p, group, cap=8) > 3:
                continue
            keys.add((e_other, j_other))
            monomials.append((e_other, j_other, _field_element(rng, ctx, nonzero=True)))
            break
    return Expansion(ctx, group, q, r, shift, monomials)


def pth_power_probe_set(params: WConstructionParams) -> List[Tuple[str, Series]]:
    """z de soporte finito que no son potencias p-esimas"""
    p, q = params.p, params.q
    ctx = params.field
    group = gamma_group(p)

    def series(*monomials):
        return Series.from_terms(ctx, group, [(e, 1) for e in monomials])

    radicand = Series.monomial(ctx, group, p + 1) + w_head(params, 3, group) ** p
    return [
        (f"t^(1/{q})", series(Fraction(1, q))),
        (f"t^{p} + t^(1/{q})", series(p, Fraction(1, q))),
        (f"t^({p}/{q}) + t^{p + 1}", series(Fraction(p, q), p + 1)),
        ("t^(p+1) + w_03^p", radicand),
    ]
