"""
Polinomios en W con coeficientes Series: derivadas de Hasse, evaluacion y
formula de Taylor.
"""
import logging
import math
from typing import List, Sequence

from vallab.core.coefficients import FieldCtx
from vallab.core.errors import GroupMismatch
from vallab.core.series import Series

logger = logging.getLogger(__name__)


class WSeries:
    """f = Σ a_i Wⁱ con a_i Series sobre el mismo (FieldCtx, grupo)"""
    __slots__ = ("ctx", "group", "coeffs")

    def __init__(self, coeffs: Sequence[Series], ctx: FieldCtx = None, group=None):
        if coeffs:
            ctx = ctx or coeffs[0].ctx
            group = group if group is not None else coeffs[0].group
        if ctx is None or group is None:
            raise ValueError("an empty WSeries needs an explicit field and group")
        for a in coeffs:
            if a.ctx != ctx or a.group != group:
                raise GroupMismatch("all W-coefficients must share field and group")
        trimmed = list(coeffs)
        # Solo se recortan ceros exactos: O(t^n) no es un coeficiente nulo
        while trimmed and trimmed[-1].is_zero():
            trimmed.pop()
        self.ctx = ctx
        self.group = group
        self.coeffs = tuple(trimmed)

    # ---------------------------------------------
    # Constructores
    # ---------------------------------------------

    @classmethod
    def constant(cls, a: Series) -> "WSeries":
        return cls([a])

    @classmethod
    def variable(cls, ctx: FieldCtx, group) -> "WSeries":
        return cls([Series.zero(ctx, group), Series.one(ctx, group)])

    @classmethod
    def monomial(cls, a: Series, power: int) -> "WSeries":
        zero = Series.zero(a.ctx, a.group)
        return cls([zero] * power + [a])

    # ---------------------------------------------
    # Consultas
    # ---------------------------------------------

    @property
    def degree(self) -> int:
        """Grado en W (−1 para el polinomio nulo)"""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_exact(self) -> bool:
        return all(a.is_exact() for a in self.coeffs)

    def coefficient(self, i: int) -> Series:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Series.zero(self.ctx, self.group)

    # ---------------------------------------------
    # Anillo
    # ---------------------------------------------

    def __add__(self, other: "WSeries") -> "WSeries":
        if isinstance(other, Series):
            other = WSeries.constant(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return WSeries(
            [self.coefficient(i) + other.coefficient(i) for i in range(size)],
            self.ctx,
            self.group,
        )

    def __neg__(self) -> "WSeries":
        return WSeries([-a for a in self.coeffs], self.ctx, self.group)

    def __sub__(self, other: "WSeries") -> "WSeries":
        if isinstance(other, Series):
            other = WSeries.constant(other)
        return self + (-other)

    def __mul__(self, other) -> "WSeries":
        if isinstance(other, Series):
            return WSeries([a * other for a in self.coeffs], self.ctx, self.group)
        if self.is_zero() or other.is_zero():
            return WSeries([], self.ctx, self.group)
        product = [Series.zero(self.ctx, self.group)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                product[i + j] = product[i + j] + a * b
        return WSeries(product, self.ctx, self.group)

    def __pow__(self, n: int) -> "WSeries":
        result = WSeries.constant(Series.one(self.ctx, self.group))
        for _ in range(n):
            result = result * self
        return result

    def scale(self, a: Series) -> "WSeries":
        return self * a

    def with_group(self, group) -> "WSeries":
        return WSeries([a.with_group(group) for a in self.coeffs], self.ctx, group)

    # ---------------------------------------------
    # Calculo
    # ---------------------------------------------

    def hasse(self, b: int) -> "WSeries":
        """∂_b: coeficiente de W^{i−b} = C(i, b)·a_i, binomial reducido mod p"""
        p = self.ctx.p
        shifted = [
            self.coeffs[i].scale(math.comb(i, b) % p)
            for i in range(b, len(self.coeffs))
        ]
        return WSeries(shifted, self.ctx, self.group)

    def _powers(self, S: Series, count: int) -> List[Series]:
        powers = [Series.one(self.ctx, self.group)]
        for _ in range(1, count):
            powers.append(powers[-1] * S)
        return powers

    def eval(self, S: Series) -> Series:
        """Σ a_i Sⁱ"""
        if S.ctx != self.ctx or S.group != self.group:
            raise GroupMismatch("evaluation point must share field and group with f")
        powers = self._powers(S, len(self.coeffs))
        return _combine(self.coeffs, powers, self.ctx, self.group)

    def eval_derivatives(self, S: Series) -> List[Series]:
        """[∂_0 f(S), ∂_1 f(S), …, ∂_d f(S)] con las potencias de S compartidas"""
        if S.ctx != self.ctx or S.group != self.group:
            raise GroupMismatch("evaluation point must share field and group with f")
        powers = self._powers(S, len(self.coeffs))
        p = self.ctx.p
        values = []
        for b in range(len(self.coeffs)):
            weighted = [self.coeffs[i].scale(math.comb(i, b) % p) for i in range(b, len(self.coeffs))]
            values.append(_combine(weighted, powers, self.ctx, self.group))
        return values

    def __eq__(self, other) -> bool:
        if not isinstance(other, WSeries):
            return NotImplemented
        return self.ctx == other.ctx and self.group == other.group and self.coeffs == other.coeffs

    def __str__(self) -> str:
        parts = []
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            power = "" if i == 0 else ("W" if i == 1 else f"W^{i}")
            text = str(a)
            if not power:
                parts.append(text)
            elif text == "1":
                parts.append(power)
            else:
                parts.append(f"({text})*{power}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"WSeries({self})"


def _combine(coeffs: Sequence[Series], powers: Sequence[Series], ctx, group) -> Series:
    total = Series.zero(ctx, group)
    for a, power in zip(coeffs, powers):
        if a.is_zero():
            continue
        total = total + a * power
    return total


# ============================================
# OPERACIONES
# ============================================

def hasse(f: WSeries, b: int) -> WSeries:
    return f.hasse(b)


def eval(f: WSeries, S: Series) -> Series:  # noqa: A001 (nombre de la operacion)
    return f.eval(S)


def taylor_check(f: WSeries, w0: Series, delta: Series) -> bool:
    """
    f(w0 + δ) = Σ_i ∂_i f(w0)·δⁱ bajo la precision comun de ambos lados
    """
    lhs = f.eval(w0 + delta)
    derivatives = f.eval_derivatives(w0)
    rhs = Series.zero(f.ctx, f.group)
    delta_power = Series.one(f.ctx, f.group)
    for i, value in enumerate(derivatives):
        if i:
            delta_power = delta_power * delta
        rhs = rhs + value * delta_power
    agrees = lhs.agrees_with(rhs)
    if not agrees:
        logger.warning(f"Taylor mismatch for f = {f} at {w0} + {delta}")
    return agrees
