"""
Los objetos concretos del ejemplo: w = Σ t^{β_i}, s = w^{1/p},
x = s + t^{(p+1)/p²} e y = (t^{p+1} + w^p)^{1/p}.

make_* devuelven truncaciones con cota de precision. *_head devuelven la
cabeza exacta de orden l (soporte finito, prec = inf), que es lo que se
evalua al certificar por estabilizacion en l: el termino t^{(p+1)/p²} queda
mas alla del punto de acumulacion 1/p de supp(s) y ninguna truncacion con
cota finita lo alcanza.
"""
import logging
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import isprime

from vallab.core.coefficients import FieldCtx, get_field
from vallab.core.exponents import beta, gamma_group, residue_extended, tower_group
from vallab.core.series import Series

logger = logging.getLogger(__name__)


class WConstructionParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int = Field(2, description="Residue characteristic")
    q: int = Field(3, description="Prime in the denominators of β_i = 1 − 1/q^i")
    start: int = Field(0, ge=0, description="0 for w, r for the tail w_r")
    depth: int = Field(3, ge=1, description="Number of materialized terms")
    m: int = Field(1, ge=1, description="Degree of the coefficient field over F_p")

    @model_validator(mode="after")
    def check_primes(self):
        if not isprime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if not isprime(self.q):
            raise ValueError(f"q must be prime, got {self.q}")
        if self.p == self.q:
            raise ValueError(f"p and q must differ (both are {self.p})")
        return self

    @property
    def field(self) -> FieldCtx:
        return get_field(self.p, self.m)

    def with_depth(self, depth: int) -> "WConstructionParams":
        return self.model_copy(update={"depth": depth})


def perturbation_exponent(p: int) -> Fraction:
    """(p+1)/p², el exponente que separa x de s"""
    return Fraction(p + 1, p * p)


def tail_valuation(params: WConstructionParams, l: int) -> Fraction:
    """v(w_l) = β_{l+1}"""
    return beta(l + 1, params.q)


# ============================================
# TRUNCACIONES
# ============================================

def make_w(params: WConstructionParams, group=None) -> Series:
    """Σ_{i=start+1}^{start+depth} t^{β_i} + O(t^{β_{start+depth+1}})"""
    group = group if group is not None else gamma_group(params.p)
    last = params.start + params.depth
    terms = [(beta(i, params.q), 1) for i in range(params.start + 1, last + 1)]
    return Series.from_terms(params.field, group, terms, beta(last + 1, params.q))


def make_s(params: WConstructionParams, group=None) -> Series:
    """s = w^{1/p}; el grupo por defecto es (1/p²)Γ"""
    group = group if group is not None else tower_group(params.p)
    return make_w(params).with_group(group).pth_root()


def make_x(params: WConstructionParams, group=None) -> Series:
    """
    x = s + t^{(p+1)/p²}. La precision de s es < 1/p < (p+1)/p², asi que el
    termino de perturbacion queda absorbido en O(t^prec).
    """
    group = group if group is not None else tower_group(params.p)
    s = make_s(params, group)
    bump = Series.monomial(s.ctx, group, perturbation_exponent(params.p))
    return s + bump.truncate(s.prec)


# ============================================
# CABEZAS EXACTAS
# ============================================

def w_head(params: WConstructionParams, l: int, group=None) -> Series:
    """w_{0l} = Σ_{j=start+1}^{l} t^{β_j}, exacto"""
    group = group if group is not None else gamma_group(params.p)
    terms = [(beta(j, params.q), 1) for j in range(params.start + 1, l + 1)]
    return Series.from_terms(params.field, group, terms)


def s_head(params: WConstructionParams, l: int, group=None) -> Series:
    group = group if group is not None else tower_group(params.p)
    return w_head(params, l).with_group(group).pth_root()


def x_head(params: WConstructionParams, l: int, group=None) -> Series:
    """s_{0l} + t^{(p+1)/p²}, exacto"""
    group = group if group is not None else tower_group(params.p)
    s = s_head(params, l, group)
    return s + Series.monomial(s.ctx, group, perturbation_exponent(params.p))


def y_head(params: WConstructionParams, l: int, group=None) -> Series:
    """(t^{p+1} + w_{0l}^p)^{1/p} = t^{(p+1)/p} + w_{0l}, en Γ′ por defecto"""
    group = group if group is not None else residue_extended(params.p)
    p = params.p
    w0 = w_head(params, l).with_group(group)
    radicand = Series.monomial(w0.ctx, group, p + 1) + w0 ** p
    return radicand.pth_root()

