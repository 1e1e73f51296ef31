"""
Series de Hahn truncadas sobre (F_{p^m}, G).

Una Series guarda los terminos (exponente, coeficiente) ordenados y una cota de
precision `prec`: todo termino del elemento representado con exponente < prec
aparece en `terms`. prec = inf marca un elemento exacto (soporte finito).

La precision nunca es optimista: cada operacion devuelve la cota que puede
probar a partir de las cotas de sus entradas.
"""
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple, Union

from vallab.core.coefficients import Coeff, FieldCtx, pth_root
from vallab.core.errors import (
    GroupMismatch,
    IndeterminateValuation,
    PrecisionTooLow,
    SupportNotDivisible,
)
from vallab.utils import INF, Bound, format_exp, is_finite, parse_bound, parse_exp

logger = logging.getLogger(__name__)

Term = Tuple[Fraction, Coeff]


class Series:
    __slots__ = ("ctx", "group", "terms", "prec")

    def __init__(self, ctx: FieldCtx, group, terms: Tuple[Term, ...], prec: Bound = INF):
        # Constructor interno: terms ya ordenados, sin ceros y bajo prec.
        # Para entrada externa usar from_terms().
        self.ctx = ctx
        self.group = group
        self.terms = terms
        self.prec = prec

    # ---------------------------------------------
    # Construccion
    # ---------------------------------------------

    @classmethod
    def from_terms(
        cls,
        ctx: FieldCtx,
        group,
        terms: Iterable[Tuple[Union[Fraction, str, int], Union[Coeff, int, str]]],
        prec: Union[Bound, str] = INF,
    ) -> "Series":
        """Normaliza: suma repetidos, elimina ceros y exponentes ≥ prec, valida el grupo"""
        prec = parse_bound(prec)
        merged: Dict[Fraction, Coeff] = {}
        for exponent, coefficient in terms:
            exponent = parse_exp(exponent)
            coefficient = ctx(coefficient)
            if not group.contains(exponent):
                raise GroupMismatch(f"exponent {format_exp(exponent)} is not in {group}")
            merged[exponent] = merged[exponent] + coefficient if exponent in merged else coefficient
        return cls._normalized(ctx, group, merged, prec)

    @classmethod
    def _normalized(cls, ctx, group, merged: Dict[Fraction, Coeff], prec: Bound) -> "Series":
        terms = tuple(
            (e, c) for e, c in sorted(merged.items(), key=lambda item: item[0])
            if not c.is_zero() and e < prec
        )
        return cls(ctx, group, terms, prec)

    @classmethod
    def zero(cls, ctx: FieldCtx, group, prec: Bound = INF) -> "Series":
        return cls(ctx, group, (), prec)

    @classmethod
    def one(cls, ctx: FieldCtx, group) -> "Series":
        return cls.monomial(ctx, group, Fraction(0))

    @classmethod
    def monomial(cls, ctx: FieldCtx, group, exponent, coefficient=1, prec: Bound = INF) -> "Series":
        return cls.from_terms(ctx, group, [(exponent, coefficient)], prec)

    def _like(self, terms: Tuple[Term, ...], prec: Bound) -> "Series":
        return Series(self.ctx, self.group, terms, prec)

    # ---------------------------------------------
    # Consultas
    # ---------------------------------------------

    def is_exact(self) -> bool:
        return not is_finite(self.prec)

    def is_zero(self) -> bool:
        """Cero exacto (no O(t^prec))"""
        return not self.terms and self.is_exact()

    def is_monomial(self) -> bool:
        return len(self.terms) == 1 and self.is_exact()

    def valuation(self) -> Bound:
        if self.terms:
            return self.terms[0][0]
        if self.is_exact():
            return INF
        raise IndeterminateValuation(
            f"valuation of O(t^{format_exp(self.prec)}) is not determined"
        )

    def leading_coeff(self) -> Coeff:
        if not self.terms:
            raise IndeterminateValuation("series without visible terms has no leading coefficient")
        return self.terms[0][1]

    def coefficient(self, exponent) -> Coeff:
        exponent = parse_exp(exponent)
        if exponent >= self.prec:
            raise PrecisionTooLow(
                f"coefficient of t^{format_exp(exponent)} is beyond precision {format_exp(self.prec)}"
            )
        for e, c in self.terms:
            if e == exponent:
                return c
        return self.ctx.zero

    def support(self) -> List[Fraction]:
        return [e for e, _ in self.terms]

    def __len__(self) -> int:
        return len(self.terms)

    # ---------------------------------------------
    # Anillo
    # ---------------------------------------------

    def _check_compatible(self, other: "Series"):
        if self.ctx != other.ctx:
            raise GroupMismatch(f"coefficient fields differ: {self.ctx} vs {other.ctx}")
        if self.group != other.group:
            raise GroupMismatch(f"groups differ: {self.group} vs {other.group}; unify with with_group()")

    def _lift(self, other) -> "Series":
        if isinstance(other, Series):
            self._check_compatible(other)
            return other
        if isinstance(other, (int, Coeff)):
            return Series.monomial(self.ctx, self.group, 0, other)
        return NotImplemented

    def __add__(self, other) -> "Series":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        prec = min(self.prec, other.prec)
        merged: Dict[Fraction, Coeff] = dict(self.terms)
        for e, c in other.terms:
            merged[e] = merged[e] + c if e in merged else c
        return Series._normalized(self.ctx, self.group, merged, prec)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return self._like(tuple((e, -c) for e, c in self.terms), self.prec)

    def __sub__(self, other) -> "Series":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Series":
        return (-self) + other

    def scale(self, c: Union[Coeff, int]) -> "Series":
        c = self.ctx(c)
        if c.is_zero():
            # c·S = 0 exactamente, aunque S sea inexacto
            return Series.zero(self.ctx, self.group)
        return self._like(tuple((e, c * a) for e, a in self.terms), self.prec)

    def shift(self, exponent) -> "Series":
        """Multiplica por t^exponent"""
        exponent = parse_exp(exponent)
        return self._like(tuple((e + exponent, c) for e, c in self.terms), self.prec + exponent)

    def __mul__(self, other) -> "Series":
        if isinstance(other, (int, Coeff)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Series.zero(self.ctx, self.group)
        v_self = self.valuation()
        v_other = other.valuation()
        prec = min(self.prec + v_other, other.prec + v_self)
        merged: Dict[Fraction, Coeff] = {}
        for ea, ca in self.terms:
            if ea + v_other >= prec:
                break
            for eb, cb in other.terms:
                e = ea + eb
                if e >= prec:
                    break
                product = ca * cb
                merged[e] = merged[e] + product if e in merged else product
        return Series._normalized(self.ctx, self.group, merged, prec)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Series":
        if n < 0:
            return self.invert() ** (-n)
        result = Series.one(self.ctx, self.group)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def truncate(self, prec: Bound) -> "Series":
        prec = min(self.prec, parse_bound(prec))
        return self._like(tuple((e, c) for e, c in self.terms if e < prec), prec)

    def invert(self, prec: Optional[Bound] = None) -> "Series":
        """
        Inverso por serie geometrica: S = c·t^v·(1+z), S⁻¹ = c⁻¹t^{−v}·Σ(−z)ⁿ.

        La precision de salida es prec(S) − 2v. Un S exacto no monomial tiene
        inverso de soporte infinito: hace falta `prec` explicito.
        """
        v = self.valuation()
        if not is_finite(v):
            raise ZeroDivisionError("inverse of the zero series")
        c = self.leading_coeff()
        c_inv = c.inverse()
        if self.is_monomial():
            return self._like(((-v, c_inv),), INF)

        target = self.prec - 2 * v
        if prec is not None:
            target = min(target, parse_bound(prec))
        if not is_finite(target):
            raise PrecisionTooLow(
                "inverse of an exact non-monomial series has infinite support; pass a target precision"
            )

        # u = 1/(1+z) hace falta hasta target + v
        unit_prec = target + v
        z = (self.shift(-v).scale(c_inv) - 1).truncate(unit_prec)
        neg_z = -z
        unit = Series.one(self.ctx, self.group)
        power = unit
        # Un solo termino visible: z = O(t^n), el inverso es c⁻¹t^{−v} + O(...)
        while neg_z.terms:
            power = (power * neg_z).truncate(unit_prec)
            if not power.terms:
                break
            unit = unit + power
        unit = unit.truncate(unit_prec)
        return unit.shift(-v).scale(c_inv)

    # ---------------------------------------------
    # Frobenius y raiz p-esima
    # ---------------------------------------------

    def frobenius(self) -> "Series":
        p = self.ctx.p
        return self._like(tuple((e * p, c ** p) for e, c in self.terms), self.prec * p)

    def pth_root(self) -> "Series":
        p = self.ctx.p
        for e, _ in self.terms:
            if not self.group.contains(e / p):
                raise SupportNotDivisible(e)
        return self._like(tuple((e / p, pth_root(c)) for e, c in self.terms), self.prec / p)

    # ---------------------------------------------
    # Grupos y comparacion
    # ---------------------------------------------

    def with_group(self, group) -> "Series":
        """Embebe la serie en un grupo mayor (cada exponente debe pertenecer)"""
        for e, _ in self.terms:
            if not group.contains(e):
                raise GroupMismatch(f"exponent {format_exp(e)} is not in {group}")
        return Series(self.ctx, group, self.terms, self.prec)

    def agrees_with(self, other: "Series", bound: Optional[Bound] = None) -> bool:
        """Igualdad de terminos bajo la precision comun (y bajo `bound`)"""
        limit = min(self.prec, other.prec)
        if bound is not None:
            limit = min(limit, parse_bound(bound))
        mine = [(e, c.rep) for e, c in self.terms if e < limit]
        theirs = [(e, c.rep) for e, c in other.terms if e < limit]
        return mine == theirs

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and self.group == other.group
            and self.prec == other.prec
            and [(e, c.rep) for e, c in self.terms] == [(e, c.rep) for e, c in other.terms]
        )

    def __hash__(self) -> int:
        return hash((tuple((e, c.rep) for e, c in self.terms), self.prec))

    # ---------------------------------------------
    # Formatos
    # ---------------------------------------------

    def to_json(self) -> dict:
        return {
            "terms": [[format_exp(e), str(c)] for e, c in self.terms],
            "prec": format_exp(self.prec),
        }

    @classmethod
    def from_json(cls, data: dict, ctx: FieldCtx, group) -> "Series":
        terms = [(e, ctx.parse(str(c))) for e, c in data.get("terms", [])]
        return cls.from_terms(ctx, group, terms, data.get("prec", "inf"))

    def __str__(self) -> str:
        parts = [_format_term(e, c) for e, c in self.terms]
        if not self.is_exact():
            parts.append(f"O({_format_power(self.prec)})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"Series({self})"


def _format_power(exponent: Fraction) -> str:
    if exponent == 1:
        return "t"
    text = format_exp(exponent)
    if exponent.denominator == 1 and exponent > 0:
        return f"t^{text}"
    return f"t^({text})"


def _format_term(exponent: Fraction, c: Coeff) -> str:
    coefficient = str(c)
    if exponent == 0:
        return coefficient
    power = _format_power(exponent)
    if c.is_one():
        return power
    if "+" in coefficient:
        coefficient = f"({coefficient})"
    return f"{coefficient}*{power}"


# ============================================
# OPERACIONES
# ============================================

def valuation(S: Series) -> Bound:
    return S.valuation()


def add(A: Series, B: Series) -> Series:
    return A + B


def mul(A: Series, B: Series) -> Series:
    return A * B


def invert(S: Series, prec: Optional[Bound] = None) -> Series:
    return S.invert(prec)


def frobenius(S: Series) -> Series:
    return S.frobenius()


def pth_root_series(S: Series) -> Series:
    return S.pth_root()
