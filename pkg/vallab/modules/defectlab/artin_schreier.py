"""
Reduccion de Artin–Schreier X^p − X − b sobre desarrollos en un marco (r, β).

Δ(b) son los pares (ε, j) con coeficiente no nulo, valor ε + j·v(W) < 0,
ε ∈ pΓ y p | j: los monomios que son potencia p-esima de un monomio del
marco. Restar a^p − a con a = Σ_Δ c^{1/p} t^{ε/p} W^{j/p} baja n(b) en uno.
"""
import logging
from fractions import Fraction
from typing import List, Tuple, Union

from pydantic import BaseModel

from vallab.core.coefficients import Coeff, nth_root, pth_root
from vallab.core.errors import FrameMismatch
from vallab.core.exponents import ExpField, beta, in_p_multiple, p_depth
from vallab.core.series import Series
from vallab.modules.construction.quasi_finite import Expansion
from vallab.schemas import ASVerdict
from vallab.utils import format_exp

logger = logging.getLogger(__name__)

# Cota para v_p(0) al calcular n(b)
DEPTH_CAP = 64


class DeltaSet(BaseModel):
    pairs: List[Tuple[ExpField, int]] = []

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair) -> bool:
        return (Fraction(pair[0]), int(pair[1])) in {(e, j) for e, j in self.pairs}


def _p_adic_order(j: int, p: int) -> int:
    if j == 0:
        return DEPTH_CAP
    order = 0
    while j % p == 0:
        j //= p
        order += 1
    return order


def _is_p_divisible(b: Expansion, epsilon: Fraction, j: int) -> bool:
    p = b.ctx.p
    return j % p == 0 and in_p_multiple(epsilon, p, b.group)


def delta_set(b: Expansion) -> DeltaSet:
    pairs = [
        (e, j)
        for e, j, c in b.terms
        if b.value_of((e, j, c)) < 0 and _is_p_divisible(b, e, j)
    ]
    return DeltaSet(pairs=pairs)


def n_of(b: Expansion) -> int:
    """max{n : pⁿ | (ε, j) para algun (ε, j) ∈ Δ(b)}; 0 si Δ(b) = ∅"""
    p = b.ctx.p
    orders = [
        min(p_depth(e, p, b.group, cap=DEPTH_CAP), _p_adic_order(j, p))
        for e, j in delta_set(b).pairs
    ]
    return max(orders, default=0)


def as_reduce(b: Expansion) -> Tuple[Expansion, Expansion]:
    """(a, b − a^p + a) con a = Σ_{Δ(b)} c^{1/p} t^{ε/p} W^{j/p}"""
    p = b.ctx.p
    delta = set((e, j) for e, j in delta_set(b).pairs)
    root_terms = []
    kept = []
    for e, j, c in b.terms:
        if (e, j) not in delta:
            kept.append((e, j, c))
            continue
        if not b.group.contains(e / p) or j % p:
            raise FrameMismatch(f"(t^{format_exp(e)}, W^{j}) is not a p-th power in the frame")
        root_terms.append((e / p, j // p, pth_root(c)))
    a = b.like(root_terms)
    # a^p = Σ_Δ c t^ε W^j exactamente, asi que b − a^p son los terminos fuera de Δ
    b_next = b.like(kept + root_terms)
    logger.debug(f"as_reduce: |Δ| = {len(delta)}, v(b_next) = {format_exp(b_next.valuation())}")
    return a, b_next


def as_classify(b: Expansion, max_iter: int = 10) -> ASVerdict:
    """
    Itera as_reduce hasta n(b) = 0 y mira el valor del residuo: fuera de pΓ
    es un testigo de que L|K no es inmediata.
    """
    if not b.valuation() < 0:
        raise ValueError(f"Artin–Schreier classification needs v(b) < 0, got {format_exp(b.valuation())}")
    p = b.ctx.p
    steps = 0
    while n_of(b) > 0:
        if steps >= max_iter:
            return ASVerdict(verdict="inconclusive", steps=steps, reason=f"n(b) > 0 after {max_iter} steps")
        _, b = as_reduce(b)
        steps += 1

    leading = b.leading_terms()
    if not leading:
        return ASVerdict(verdict="inconclusive", steps=steps, reason="b vanished at working precision")
    total = b.ctx.zero
    for _, _, c in leading:
        total = total + c
    value = b.valuation()
    if total.is_zero():
        return ASVerdict(verdict="inconclusive", steps=steps,
                         reason=f"leading coefficients cancel at value {format_exp(value)}")
    if value >= 0:
        return ASVerdict(verdict="inconclusive", steps=steps, reason="reduced b has non-negative value")
    if in_p_multiple(value, p, b.group):
        return ASVerdict(verdict="inconclusive", steps=steps,
                         reason=f"value {format_exp(value)} lies in pΓ; raise precision")
    return ASVerdict(verdict="not-immediate", witness=value, steps=steps)


def artin_schreier_normal_form(c: Coeff, b: Union[Series, Expansion]) -> Tuple[Coeff, Union[Series, Expansion]]:
    """
    X^p − cX − b  →  Y^p − Y − b/λ^p con X = λY y λ^{p−1} = c.

    Raises:
        NoRootInField si c no tiene raiz (p−1)-esima en k
    """
    p = c.ctx.p
    if c.is_zero():
        raise ValueError("X^p - b is purely inseparable, not of Artin–Schreier type")
    lam = nth_root(c, p - 1)
    factor = (lam ** p).inverse()
    if isinstance(b, Expansion):
        return lam, b.like([(e, j, factor * x) for e, j, x in b.terms])
    return lam, b.scale(factor)


def p_divisible_frame(p: int, q: int) -> Tuple[int, Fraction]:
    """
    Marco (r = 1, β) con v(w₁/t^β) = β₂ − β ∈ pΓ: se usa p/qⁿ con el menor
    n ≥ 2 tal que p/qⁿ ≤ β₂.
    """
    b2 = beta(2, q)
    n = 2
    while Fraction(p, q ** n) > b2:
        n += 1
    shift = b2 - Fraction(p, q ** n)
    return 1, shift
