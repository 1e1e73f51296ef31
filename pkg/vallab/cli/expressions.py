"""
Gramatica minima de la CLI

    expr   := term ('+' term)*
    term   := power ('*' power)*
    power  := atom ('^' INT)?
    atom   := ['-'] INT | 'g' | 't' ['^' exp] | w | s | x | W
            | inv '(' expr ')' | frob '(' expr ')' | proot '(' expr ')'
            | '(' expr ')'
    exp    := ['-'] INT | '(' ['-'] INT ['/' INT] ')'

No hay resta: en caracteristica p basta con '+' y un coeficiente negativo.
Los errores llevan el indice del token (desde 1) y la columna.
"""
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from vallab.core.errors import ParseError
from vallab.core.exponents import gamma_group, tower_group
from vallab.core.series import Series
from vallab.modules.construction.witness import WConstructionParams, make_s, make_w, make_x, perturbation_exponent
from vallab.modules.taylor.hasse import WSeries
from vallab.utils import Bound, format_exp

logger = logging.getLogger(__name__)

TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|(.))")

NAMES = {"w", "s", "x", "W", "t", "g"}
FUNCTIONS = {"inv", "frob", "proot"}


@dataclass
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    index: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    position = 0
    while position < len(text):
        match = TOKEN_RE.match(text, position)
        if not match or match.end() == position:
            break
        number, name, op = match.groups()
        column = match.start(match.lastindex) + 1
        index = len(tokens) + 1
        if number is not None:
            tokens.append(Token("int", number, index, column))
        elif name is not None:
            if name not in NAMES and name not in FUNCTIONS:
                raise ParseError(f"unknown name '{name}'", index, column)
            tokens.append(Token("name", name, index, column))
        elif op is not None and not op.isspace():
            if op not in "+*^()/-":
                raise ParseError(f"unexpected character '{op}'", index, column)
            tokens.append(Token("op", op, index, column))
        position = match.end()
    tokens.append(Token("end", "", len(tokens) + 1, len(text) + 1))
    return tokens


def needs_tower_group(text: str) -> bool:
    """s y x viven en (1/p²)Γ"""
    return any(tok.kind == "name" and tok.text in ("s", "x") for tok in tokenize(text))


class ExpressionParser:
    """
    Evalua una expresion a un WSeries (grado 0 salvo que se permita W).

    Args:
        params: p, q, m y depth para w, s y x
        allow_variable: acepta W (polinomios de la CLI `stabilize` / `as`)
        prec: precision objetivo para inv() de entradas exactas
    """

    def __init__(
        self,
        params: WConstructionParams,
        group=None,
        allow_variable: bool = False,
        prec: Optional[Bound] = None,
    ):
        self.params = params
        self.ctx = params.field
        self.group = group if group is not None else gamma_group(params.p)
        self.allow_variable = allow_variable
        self.prec = prec
        self.tokens: List[Token] = []
        self.pos = 0

    # ---------------------------------------------
    # Tokens
    # ---------------------------------------------

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        if token.kind == "end":
            message = f"{message}: unexpected end of input"
        return ParseError(message, token.index, token.column)

    def _accept(self, text: str) -> bool:
        if self.current.kind in ("op", "name") and self.current.text == text:
            self.pos += 1
            return True
        return False

    def _expect(self, text: str) -> Token:
        token = self.current
        if not self._accept(text):
            raise self._error(f"expected '{text}'")
        return token

    def _expect_int(self) -> int:
        token = self.current
        if token.kind != "int":
            raise self._error("expected an integer")
        self.pos += 1
        return int(token.text)

    # ---------------------------------------------
    # Gramatica
    # ---------------------------------------------

    def parse(self, text: str) -> WSeries:
        self.tokens = tokenize(text)
        self.pos = 0
        if self.current.kind == "end":
            raise self._error("empty expression")
        value = self._expr()
        if self.current.kind != "end":
            raise self._error(f"unexpected token '{self.current.text}'")
        return value

    def _expr(self) -> WSeries:
        value = self._term()
        while self._accept("+"):
            value = value + self._term()
        return value

    def _term(self) -> WSeries:
        value = self._power()
        while self._accept("*"):
            value = value * self._power()
        return value

    def _power(self) -> WSeries:
        value = self._atom()
        if self._accept("^"):
            n = self._expect_int()
            value = value ** n
        return value

    def _atom(self) -> WSeries:
        token = self.current
        if token.kind == "op" and token.text == "-":
            self.pos += 1
            return self._constant_int(-self._expect_int())
        if token.kind == "int":
            self.pos += 1
            return self._constant_int(int(token.text))
        if token.kind == "op" and token.text == "(":
            self.pos += 1
            value = self._expr()
            self._expect(")")
            return value
        if token.kind != "name":
            raise self._error("expected a term")

        self.pos += 1
        name = token.text
        if name == "t":
            exponent = self._exponent() if self._accept("^") else Fraction(1)
            return self._constant(Series.monomial(self.ctx, self.group, exponent))
        if name == "g":
            if self.ctx.m == 1:
                raise self._error("'g' needs m > 1", token)
            return self._constant(Series.monomial(self.ctx, self.group, 0, self.ctx.gen))
        if name == "W":
            if not self.allow_variable:
                raise self._error("W is not allowed here", token)
            return WSeries.variable(self.ctx, self.group)
        if name in FUNCTIONS:
            self._expect("(")
            inner = self._expr()
            self._expect(")")
            return self._constant(self._apply(name, self._as_series(inner, token)))
        if name == "x":
            return self._constant(self._x_series(token))
        return self._constant(self._named_series(name))

    def _exponent(self) -> Fraction:
        if self._accept("("):
            sign = -1 if self._accept("-") else 1
            numerator = self._expect_int()
            denominator = 1
            if self._accept("/"):
                token = self.current
                denominator = self._expect_int()
                if denominator == 0:
                    raise self._error("zero denominator", token)
            self._expect(")")
            return Fraction(sign * numerator, denominator)
        sign = -1 if self._accept("-") else 1
        return Fraction(sign * self._expect_int())

    # ---------------------------------------------
    # Valores
    # ---------------------------------------------

    def _constant(self, series: Series) -> WSeries:
        return WSeries([series], self.ctx, self.group)

    def _constant_int(self, n: int) -> WSeries:
        return self._constant(Series.monomial(self.ctx, self.group, 0, n))

    def _named_series(self, name: str) -> Series:
        if name == "w":
            return make_w(self.params, self.group)
        return make_s(self.params, self.group)

    def _x_series(self, token: Token) -> Series:
        x = make_x(self.params, self.group)
        s = make_s(self.params, self.group)
        if x == s:
            # t^{(p+1)/p²} queda por encima de la precision de s
            raise self._error(
                f"x agrees with s below precision {format_exp(s.prec)}; "
                f"t^({format_exp(perturbation_exponent(self.ctx.p))}) lies beyond it",
                token,
            )
        return x

    def _as_series(self, value: WSeries, token: Token) -> Series:
        if value.degree > 0:
            raise self._error(f"{token.text}() needs an argument without W", token)
        return value.coefficient(0)

    def _apply(self, name: str, value: Series) -> Series:
        if name == "frob":
            return value.frobenius()
        if name == "proot":
            return value.pth_root()
        return value.invert(self.prec)


def parse_series(text: str, params: WConstructionParams, prec: Optional[Bound] = None) -> Series:
    """Expresion sin W evaluada a Series"""
    group = tower_group(params.p) if needs_tower_group(text) else gamma_group(params.p)
    value = ExpressionParser(params, group, prec=prec).parse(text)
    return value.coefficient(0)


def parse_polynomial(text: str, params: WConstructionParams, group=None) -> WSeries:
    """Polinomio en W con coeficientes en k(t^Γ) (o el grupo dado)"""
    return ExpressionParser(params, group, allow_variable=True).parse(text)
