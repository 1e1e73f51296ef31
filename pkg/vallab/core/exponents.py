"""
Exponentes racionales exactos y grupos de valores.

Exp es `fractions.Fraction` (siempre reducida, sin flotantes). Los grupos son
modelos pydantic congelados para poder describirlos en la configuracion:

    {"kind": "p-prime", "p": 2}
    {"kind": "fingen", "gens": ["2/3", "8/9"]}
    {"kind": "extended", "base": {...}, "adjoined": ["1/2"]}
"""
import logging
import math
from fractions import Fraction
from functools import reduce
from typing import Annotated, Any, Literal, Tuple, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, TypeAdapter

from vallab.core.errors import InfiniteIndex
from vallab.utils import format_exp, parse_bound, parse_exp

logger = logging.getLogger(__name__)

Exp = Fraction

# Tipos anotados para pydantic: entrada "a/b", salida "a/b"
ExpField = Annotated[Any, BeforeValidator(parse_exp), PlainSerializer(format_exp, return_type=str)]
BoundField = Annotated[Any, BeforeValidator(parse_bound), PlainSerializer(format_exp, return_type=str)]
# Valor que puede faltar (valuacion indeterminada): None <-> null
OptionalBoundField = Annotated[
    Any,
    BeforeValidator(lambda v: None if v is None else parse_bound(v)),
    PlainSerializer(lambda v: None if v is None else format_exp(v)),
]

# Cota para buscar ordenes modulo grupos Extended
MAX_ORDER_SEARCH = 4096


class PPrimeDenom(BaseModel):
    """Γ: racionales cuyo denominador no es divisible por p"""
    model_config = ConfigDict(frozen=True)

    kind: Literal["p-prime"] = "p-prime"
    p: int

    def contains(self, gamma: Fraction) -> bool:
        return gamma.denominator % self.p != 0

    def order_of(self, gamma: Fraction) -> int:
        # n·a/b ∈ Γ  <=>  la parte p de b divide a n
        den = gamma.denominator
        order = 1
        while den % self.p == 0:
            den //= self.p
            order *= self.p
        return order

    def __str__(self) -> str:
        return f"Γ(p={self.p})"


class FinGen(BaseModel):
    """(γ₁,…,γₙ): subgrupo de Q generado por finitos racionales"""
    model_config = ConfigDict(frozen=True)

    kind: Literal["fingen"] = "fingen"
    gens: Tuple[ExpField, ...] = ()

    def generator(self) -> Fraction:
        """Generador positivo h con (γ₁,…,γₙ) = hZ (rango 1); 0 si no hay generadores"""
        if not self.gens:
            return Fraction(0)
        common = reduce(lambda a, b: a * b // math.gcd(a, b), (g.denominator for g in self.gens), 1)
        numerators = [int(g * common) for g in self.gens]
        return Fraction(reduce(math.gcd, numerators, 0), common)

    def contains(self, gamma: Fraction) -> bool:
        h = self.generator()
        if h == 0:
            return gamma == 0
        return (gamma / h).denominator == 1

    def order_of(self, gamma: Fraction) -> int:
        h = self.generator()
        if h == 0:
            if gamma == 0:
                return 1
            raise InfiniteIndex(f"{format_exp(gamma)} has infinite order modulo the trivial group")
        return (gamma / h).denominator

    def __str__(self) -> str:
        return "(" + ", ".join(format_exp(g) for g in self.gens) + ")"


class Extended(BaseModel):
    """base + Σ Z·aᵢ, con cada aᵢ de orden finito modulo base"""
    model_config = ConfigDict(frozen=True)

    kind: Literal["extended"] = "extended"
    base: "GroupSpec"
    adjoined: Tuple[ExpField, ...] = ()

    def _coset_orders(self) -> Tuple[int, ...]:
        orders = []
        for i, a in enumerate(self.adjoined):
            partial = Extended(base=self.base, adjoined=self.adjoined[:i]) if i else self.base
            orders.append(order_modulo(a, partial))
        return tuple(orders)

    def contains(self, gamma: Fraction) -> bool:
        if self.base.contains(gamma):
            return True
        # Enumeracion de clases laterales sobre los generadores adjuntos
        candidates = [gamma]
        for a, order in zip(self.adjoined, _cached_orders(self)):
            candidates = [c - k * a for c in candidates for k in range(order)]
        return any(self.base.contains(c) for c in candidates)

    def order_of(self, gamma: Fraction) -> int:
        for n in range(1, MAX_ORDER_SEARCH + 1):
            if self.contains(n * gamma):
                return n
        raise InfiniteIndex(
            f"{format_exp(gamma)} has no multiple in {self} below {MAX_ORDER_SEARCH}"
        )

    def __str__(self) -> str:
        return f"{self.base} + " + " + ".join(f"{format_exp(a)}Z" for a in self.adjoined)


GroupSpec = Annotated[Union[PPrimeDenom, FinGen, Extended], Field(discriminator="kind")]
Extended.model_rebuild()

_group_adapter = TypeAdapter(GroupSpec)
_orders_cache: dict = {}


def _cached_orders(group: Extended) -> Tuple[int, ...]:
    orders = _orders_cache.get(group)
    if orders is None:
        orders = group._coset_orders()
        _orders_cache[group] = orders
    return orders


def parse_group(data: Any) -> Union[PPrimeDenom, FinGen, Extended]:
    """Construye un GroupSpec desde su descripcion JSON"""
    return _group_adapter.validate_python(data)


def gamma_group(p: int) -> PPrimeDenom:
    """El grupo Γ del ejemplo: denominadores coprimos con p"""
    return PPrimeDenom(p=p)


def residue_extended(p: int) -> Extended:
    """Γ′ = Γ + (1/p)Z = vK′"""
    return Extended(base=gamma_group(p), adjoined=(Fraction(1, p),))


def tower_group(p: int) -> Extended:
    """(1/p²)Γ = Γ + (1/p²)Z, donde viven s, x e y"""
    return Extended(base=gamma_group(p), adjoined=(Fraction(1, p * p),))


# ============================================
# OPERACIONES
# ============================================

def in_group(gamma: Fraction, group) -> bool:
    """γ ∈ G segun la regla de la variante"""
    return group.contains(Fraction(gamma))


def in_p_multiple(gamma: Fraction, p: int, group) -> bool:
    """γ ∈ pG, es decir γ/p ∈ G"""
    return group.contains(Fraction(gamma) / p)


def p_depth(gamma: Fraction, p: int, group, cap: int = 64) -> int:
    """Mayor n ≤ cap con γ ∈ pⁿG"""
    gamma = Fraction(gamma)
    n = 0
    while n < cap and group.contains(gamma / p ** (n + 1)):
        n += 1
    return n


def order_modulo(gamma: Fraction, group) -> int:
    """Menor n ≥ 1 con n·γ ∈ G"""
    return group.order_of(Fraction(gamma))


def index(ext, base) -> int:
    """
    Indice [ext : base] por enumeracion de clases laterales.

    Cada generador adjunto aporta el orden de su clase modulo el grupo
    generado por la base y los generadores anteriores.
    """
    if ext == base:
        return 1
    if not isinstance(ext, Extended):
        raise ValueError(f"cannot compute [{ext} : {base}]: ext must extend base")
    if ext.base != base:
        return index(ext, ext.base) * index(ext.base, base)
    result = 1
    for order in _cached_orders(ext):
        result *= order
    logger.debug(f"[{ext} : {base}] = {result}")
    return result


def beta(i: int, q: int) -> Fraction:
    """β_i = 1 − 1/qⁱ"""
    if i < 1:
        raise ValueError(f"beta index must be >= 1, got {i}")
    return 1 - Fraction(1, q ** i)
