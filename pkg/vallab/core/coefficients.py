"""
Cuerpo de coeficientes k = F_{p^m}.

Los elementos se representan por un entero `rep` en [0, p^m): sus digitos en
base p son los coeficientes del polinomio en el generador g (digito i = g^i).
Para m = 1 la aritmetica es modular directa; para m > 1 se construyen tablas
log/exp con numpy a partir de la aritmetica de sympy.galoistools.
"""
import logging
import math
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_pow_mod, gf_rem

from vallab.core.errors import NoRootInField

logger = logging.getLogger(__name__)

# Tamaño maximo de cuerpo con tablas log/exp
MAX_TABLE_SIZE = 1 << 20


class FieldCtx:
    """Contexto inmutable de F_{p^m} con modulo irreducible verificado"""

    def __init__(self, p: int, m: int = 1, modulus: Optional[Sequence[int]] = None):
        if not isprime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        self.p = p
        self.m = m
        self.size = p ** m

        if modulus is None:
            modulus = first_irreducible(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[0] != 1:
            raise ValueError(f"modulus must be monic of degree {m}: {modulus}")
        if m > 1 and not gf_irreducible_p(list(modulus), p, ZZ):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.modulus: Tuple[int, ...] = modulus

        if m > 1:
            if self.size > MAX_TABLE_SIZE:
                raise ValueError(f"F_{p}^{m} is too large for table arithmetic")
            self._build_tables()

    # ---------------------------------------------
    # Tablas (solo m > 1)
    # ---------------------------------------------

    def _build_tables(self):
        p, m, q = self.p, self.m, self.size
        reps = np.arange(q, dtype=np.int64)
        self._place = p ** np.arange(m, dtype=np.int64)
        self._digits = (reps[:, None] // self._place[None, :]) % p

        generator = self._find_primitive()
        self._exp = np.zeros(q - 1, dtype=np.int64)
        self._log = np.full(q, -1, dtype=np.int64)
        current = [1]
        for i in range(q - 1):
            rep = self._poly_to_rep(current)
            self._exp[i] = rep
            self._log[rep] = i
            current = gf_rem(gf_mul(current, generator, p, ZZ), list(self.modulus), p, ZZ)
        logger.debug(f"F_{p}^{m}: log/exp tables built, primitive element {self._poly_to_rep(generator)}")

    def _find_primitive(self) -> list:
        p, q = self.p, self.size
        prime_factors = list(factorint(q - 1))
        modulus = list(self.modulus)
        for rep in range(2, q):
            poly = self._rep_to_poly(rep)
            if all(gf_pow_mod(poly, (q - 1) // ell, modulus, p, ZZ) != [1] for ell in prime_factors):
                return poly
        raise ValueError(f"no primitive element found in F_{p}^{self.m}")

    def _rep_to_poly(self, rep: int) -> list:
        digits = []
        for _ in range(self.m):
            digits.append(rep % self.p)
            rep //= self.p
        while digits and digits[-1] == 0:
            digits.pop()
        return list(reversed(digits))

    def _poly_to_rep(self, poly: Sequence[int]) -> int:
        rep = 0
        for c in poly:
            rep = rep * self.p + int(c)
        return rep

    # ---------------------------------------------
    # Aritmetica sobre representaciones
    # ---------------------------------------------

    def _add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return int(((self._digits[a] + self._digits[b]) % self.p) @ self._place)

    def _neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        return int(((-self._digits[a]) % self.p) @ self._place)

    def _mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(self._log[a] + self._log[b]) % (self.size - 1)])

    def _pow(self, a: int, n: int) -> int:
        if n < 0:
            a = self._inv(a)
            n = -n
        if n == 0:
            return 1
        if self.m == 1:
            return pow(a, n, self.p)
        if a == 0:
            return 0
        return int(self._exp[(int(self._log[a]) * n) % (self.size - 1)])

    def _inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in the coefficient field")
        return self._pow(a, self.size - 2)

    # ---------------------------------------------
    # Constructores de elementos
    # ---------------------------------------------

    @property
    def zero(self) -> "Coeff":
        return Coeff(self, 0)

    @property
    def one(self) -> "Coeff":
        return Coeff(self, 1)

    @property
    def gen(self) -> "Coeff":
        """El generador g (raiz del modulo)"""
        if self.m == 1:
            raise ValueError("F_p has no generator symbol; use integers")
        return Coeff(self, self.p)

    def from_int(self, n: int) -> "Coeff":
        return Coeff(self, n % self.p)

    def __call__(self, value: Union[int, str, "Coeff"]) -> "Coeff":
        if isinstance(value, Coeff):
            if value.ctx != self:
                raise ValueError("coefficient belongs to another field")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.from_int(int(value))

    def elements(self) -> Iterator["Coeff"]:
        """Todos los elementos, en el orden canonico de representaciones"""
        for rep in range(self.size):
            yield Coeff(self, rep)

    def parse(self, text: str) -> "Coeff":
        """Parsea "2*g^2+g+1" (o un entero para m = 1)"""
        cleaned = text.replace(" ", "")
        if not cleaned:
            raise ValueError("empty coefficient")
        total = self.zero
        for chunk in cleaned.replace("-", "+-").split("+"):
            if not chunk:
                continue
            sign = 1
            if chunk.startswith("-"):
                sign, chunk = -1, chunk[1:]
            if "g" not in chunk:
                total = total + self.from_int(sign * int(chunk))
                continue
            factor, _, power_part = chunk.partition("g")
            factor = factor.rstrip("*")
            coefficient = int(factor) if factor else 1
            power = int(power_part[1:]) if power_part.startswith("^") else 1
            if power_part and not power_part.startswith("^"):
                raise ValueError(f"invalid coefficient term '{chunk}'")
            total = total + self.from_int(sign * coefficient) * self.gen ** power
        return total

    def format(self, rep: int) -> str:
        if self.m == 1:
            return str(rep)
        digits = [int(d) for d in self._digits[rep]]
        parts = []
        for power in range(self.m - 1, -1, -1):
            d = digits[power]
            if d == 0:
                continue
            if power == 0:
                parts.append(str(d))
                continue
            monomial = "g" if power == 1 else f"g^{power}"
            parts.append(monomial if d == 1 else f"{d}*{monomial}")
        return "+".join(parts) if parts else "0"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldCtx)
            and (self is other or (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus))
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, m={self.m})"


class Coeff:
    """Elemento inmutable de F_{p^m}"""
    __slots__ = ("ctx", "rep")

    def __init__(self, ctx: FieldCtx, rep: int):
        self.ctx = ctx
        self.rep = rep

    def _coerce(self, other) -> int:
        if isinstance(other, Coeff):
            return other.rep
        if isinstance(other, int):
            return other % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return Coeff(self.ctx, self.ctx._add(self.rep, b))

    __radd__ = __add__

    def __neg__(self):
        return Coeff(self.ctx, self.ctx._neg(self.rep))

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return Coeff(self.ctx, self.ctx._add(self.rep, self.ctx._neg(b)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return Coeff(self.ctx, self.ctx._mul(self.rep, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return Coeff(self.ctx, self.ctx._mul(self.rep, self.ctx._inv(b)))

    def __pow__(self, n: int):
        return Coeff(self.ctx, self.ctx._pow(self.rep, n))

    def inverse(self) -> "Coeff":
        return Coeff(self.ctx, self.ctx._inv(self.rep))

    def is_zero(self) -> bool:
        return self.rep == 0

    def is_one(self) -> bool:
        return self.rep == 1

    def __eq__(self, other) -> bool:
        if isinstance(other, Coeff):
            return self.rep == other.rep and self.ctx == other.ctx
        if isinstance(other, int):
            return self.rep == other % self.ctx.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx.p, self.ctx.m, self.rep))

    def __str__(self) -> str:
        return self.ctx.format(self.rep)

    def __repr__(self) -> str:
        return f"Coeff({self})"


@lru_cache(maxsize=None)
def first_irreducible(p: int, m: int) -> Tuple[int, ...]:
    """Primer polinomio monico irreducible de grado m en orden lexicografico"""
    if m == 1:
        return (1, 0)
    for code in range(p ** m):
        lower = []
        rest = code
        for _ in range(m):
            lower.append(rest % p)
            rest //= p
        candidate = [1] + list(reversed(lower))
        if gf_irreducible_p(candidate, p, ZZ):
            return tuple(candidate)
    raise ValueError(f"no irreducible polynomial of degree {m} over F_{p}")


@lru_cache(maxsize=None)
def get_field(p: int, m: int = 1) -> FieldCtx:
    """Contexto compartido (y cacheado) para F_{p^m}"""
    return FieldCtx(p, m)


# ============================================
# OPERACIONES
# ============================================

def pth_root(c: Coeff) -> Coeff:
    """Unico d con d^p = c: d = c^{p^{m−1}} (Frobenius es biyectivo)"""
    return c ** (c.ctx.p ** (c.ctx.m - 1))


def nth_root(c: Coeff, n: int) -> Coeff:
    """
    Alguna raiz n-esima de c, la de menor representacion.

    Raises:
        NoRootInField si Xⁿ − c no tiene raiz en F_{p^m}
    """
    if n < 1:
        raise ValueError(f"root index must be >= 1, got {n}")
    if n == 1:
        return c
    for candidate in c.ctx.elements():
        if candidate ** n == c:
            return candidate
    raise NoRootInField(
        f"{c} has no {n}-th root in F_{c.ctx.p}^{c.ctx.m}; enlarge m in the configuration"
    )


def root_degree(c: Coeff, n: int) -> int:
    """
    Grado sobre k de una raiz de Xⁿ − c (n coprimo con p).

    c es potencia n-esima en F_{Q^k} sii c^{(Q^k−1)/gcd(n, Q^k−1)} = 1.
    """
    if c.is_zero():
        return 1
    ctx = c.ctx
    if n % ctx.p == 0:
        raise ValueError(f"root_degree needs n coprime to p={ctx.p}, got {n}")
    order_modulus = ctx.size - 1
    for k in range(1, n + 1):
        big = ctx.size ** k - 1
        exponent = (big // math.gcd(n, big)) % order_modulus
        if c ** exponent == ctx.one:
            return k
    raise ValueError(f"no root degree found for X^{n} - {c}")
