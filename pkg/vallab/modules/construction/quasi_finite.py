"""
Elementos w-cuasi-finitos y = t^γ·g(h₁,…,hₙ) y su desarrollo en un marco
(r, β): y = Σ c_{εj} t^ε (w_r/t^β)^j.

Las h_i son polinomios exactos en el portador (w, o s para la variante en
(1/p)Γ) con coeficientes en k(t^Γ). g es un oracle de coeficientes con cota
de grado total D: el desarrollo es exacto por debajo de γ + (D+1)·min v(h_i).
"""
import logging
import math
from fractions import Fraction
from typing import Dict, Iterable, List, Literal, Optional, Sequence, Tuple

from vallab.core.coefficients import Coeff, FieldCtx
from vallab.core.errors import (
    FrameMismatch,
    IndeterminateValuation,
    InsufficientDegreeCap,
    PrecisionTooLow,
)
from vallab.core.exponents import beta as beta_i
from vallab.core.exponents import gamma_group
from vallab.core.series import Series
from vallab.modules.construction.witness import WConstructionParams, make_s, make_w, w_head
from vallab.modules.taylor.hasse import WSeries
from vallab.utils import INF, Bound, format_exp, is_finite, parse_bound, parse_exp

logger = logging.getLogger(__name__)

# Profundidad maxima del portador al buscar precision
MAX_CARRIER_DEPTH = 40

MultiIndex = Tuple[int, ...]


class PowerSeriesOracle:
    """g ∈ k[[X₁,…,Xₙ]] dado por sus coeficientes hasta grado total D"""

    def __init__(self, ctx: FieldCtx, arity: int, degree_cap: int, coeffs: Dict[MultiIndex, object]):
        self.ctx = ctx
        self.arity = arity
        self.degree_cap = degree_cap
        table = {}
        for index, c in coeffs.items():
            index = tuple(index)
            if len(index) != arity:
                raise ValueError(f"multi-index {index} does not have arity {arity}")
            if sum(index) > degree_cap:
                continue
            c = ctx(c)
            if not c.is_zero():
                table[index] = c
        self.coeffs = table

    def coefficient(self, index: MultiIndex) -> Coeff:
        return self.coeffs.get(tuple(index), self.ctx.zero)

    def items(self) -> List[Tuple[MultiIndex, Coeff]]:
        return sorted(self.coeffs.items(), key=lambda item: (sum(item[0]), item[0]))

    def to_json(self) -> dict:
        return {
            "degree_cap": self.degree_cap,
            "coeffs": {",".join(map(str, k)): str(c) for k, c in self.items()},
        }


def geometric_oracle(ctx: FieldCtx, degree_cap: int, alternating: bool = True) -> PowerSeriesOracle:
    """g(X) = Σ (−1)ⁿ Xⁿ = 1/(1+X), o Σ Xⁿ = 1/(1−X) con alternating=False"""
    sign = -1 if alternating else 1
    return PowerSeriesOracle(ctx, 1, degree_cap, {(n,): sign ** n for n in range(degree_cap + 1)})


class QuasiFinite:
    """y = t^γ·g(h₁,…,hₙ) con v(h_i) > 0"""

    def __init__(
        self,
        gamma,
        h: Sequence[WSeries],
        g: PowerSeriesOracle,
        params: WConstructionParams,
        group=None,
        carrier: Literal["w", "s"] = "w",
    ):
        self.gamma = parse_exp(gamma)
        if self.gamma > 0:
            raise ValueError(f"gamma must be <= 0, got {format_exp(self.gamma)}")
        if g.arity != len(h):
            raise ValueError(f"oracle arity {g.arity} does not match {len(h)} h-polynomials")
        self.h = tuple(h)
        self.g = g
        self.params = params
        self.carrier = carrier
        if group is None:
            group = h[0].group if h else gamma_group(params.p)
        self.group = group
        for poly in self.h:
            if not poly.is_exact():
                raise ValueError("h-polynomials must have exact coefficients")
        self.ctx = params.field
        self.h_valuations = tuple(self._h_valuation(poly) for poly in self.h)
        for i, v in enumerate(self.h_valuations):
            if not v > 0:
                raise ValueError(f"h_{i + 1} has valuation {format_exp(v)}, must be > 0")

    @property
    def mu(self) -> Bound:
        """min v(h_i) (inf si no hay h)"""
        return min(self.h_valuations) if self.h_valuations else INF

    def carrier_series(self, depth: int) -> Series:
        params = self.params.with_depth(depth)
        if self.carrier == "s":
            return make_s(params, self.group)
        return make_w(params, self.group)

    def _h_valuation(self, poly: WSeries) -> Bound:
        depth = self.params.depth
        while depth <= MAX_CARRIER_DEPTH:
            try:
                return poly.eval(self.carrier_series(depth)).valuation()
            except IndeterminateValuation:
                depth *= 2
        raise PrecisionTooLow(f"valuation of {poly} not determined up to depth {MAX_CARRIER_DEPTH}")

    def max_precision(self) -> Bound:
        """γ + (D+1)·μ: por debajo el oracle truncado es exacto"""
        if not self.h:
            return INF
        return self.gamma + (self.g.degree_cap + 1) * self.mu

    def to_json(self) -> dict:
        return {
            "gamma": format_exp(self.gamma),
            "carrier": self.carrier,
            "h": [[a.to_json() for a in poly.coeffs] for poly in self.h],
            "g": self.g.to_json(),
        }


def _evaluate_oracle(
    g: PowerSeriesOracle, values: Sequence[Series], cut: Bound, ctx: FieldCtx, group
) -> Series:
    """Σ_k c_k Π values_i^{k_i}, cada producto truncado en `cut`"""
    powers: List[List[Series]] = [[Series.one(ctx, group)] for _ in values]
    total = Series.zero(ctx, group)
    for index, c in g.items():
        term = Series.one(ctx, group).scale(c)
        for i, k in enumerate(index):
            while len(powers[i]) <= k:
                powers[i].append((powers[i][-1] * values[i]).truncate(cut))
            term = (term * powers[i][k]).truncate(cut)
        total = total + term
    return total.truncate(cut)


def expand_at_depth(y: QuasiFinite, depth: int, target: Bound) -> Series:
    carrier = y.carrier_series(depth)
    values = [poly.eval(carrier) for poly in y.h]
    inner = _evaluate_oracle(y.g, values, target - y.gamma, y.ctx, y.group)
    return inner.shift(y.gamma)


def qf_expand(y: QuasiFinite, target_prec, max_depth: int = MAX_CARRIER_DEPTH) -> Series:
    """
    Serie de t^γ·g(h₁,…,hₙ) exacta por debajo de target_prec.

    Raises:
        InsufficientDegreeCap si target_prec > γ + (D+1)·μ
        PrecisionTooLow si ni a profundidad max_depth se alcanza target_prec
    """
    target = parse_bound(target_prec)
    if not is_finite(target):
        raise PrecisionTooLow("quasi-finite expansion needs a finite target precision")
    if y.h and target > y.max_precision():
        needed = math.ceil((target - y.gamma) / y.mu) - 1
        raise InsufficientDegreeCap(needed)

    depth = y.params.depth
    while True:
        result = expand_at_depth(y, depth, target)
        if result.prec >= target:
            logger.debug(f"quasi-finite expansion reached {format_exp(target)} at depth {depth}")
            return result.truncate(target)
        if depth >= max_depth:
            raise PrecisionTooLow(
                f"expansion reached only {format_exp(result.prec)} < {format_exp(target)} at depth {depth}"
            )
        depth = min(2 * depth, max_depth)


def w_inverse_qf(params: WConstructionParams, degree_cap: int = 12, group=None) -> QuasiFinite:
    """w⁻¹ = t^{−β₁}·g(h₁), h₁ = t^{−β₁}w − 1, g(X) = Σ(−1)ⁿXⁿ"""
    group = group if group is not None else gamma_group(params.p)
    ctx = params.field
    b1 = beta_i(1, params.q)
    h1 = WSeries([Series.monomial(ctx, group, 0, -1), Series.monomial(ctx, group, -b1)])
    return QuasiFinite(-b1, [h1], geometric_oracle(ctx, degree_cap), params, group)


# ============================================
# DESARROLLOS EN UN MARCO (r, β)
# ============================================

ExpansionTerm = Tuple[Fraction, int, Coeff]


class Expansion:
    """Σ c_{εj} t^ε (w_r/t^β)^j, completo para valores < bound"""

    def __init__(
        self,
        ctx: FieldCtx,
        group,
        q: int,
        r: int,
        beta,
        terms: Iterable[Tuple[object, int, object]],
        bound: Bound = INF,
    ):
        self.ctx = ctx
        self.group = group
        self.q = q
        self.r = r
        self.beta = parse_exp(beta)
        if r < 1:
            raise ValueError(f"frame index r must be >= 1, got {r}")
        if not 0 <= self.beta < beta_i(r + 1, q):
            raise ValueError(f"frame shift {format_exp(self.beta)} must lie in [0, β_{r + 1})")
        self.bound = parse_bound(bound)
        merged: Dict[Tuple[Fraction, int], Coeff] = {}
        for epsilon, j, c in terms:
            key = (parse_exp(epsilon), int(j))
            c = ctx(c)
            merged[key] = merged[key] + c if key in merged else c
        self.terms: Tuple[ExpansionTerm, ...] = tuple(
            (e, j, c)
            for (e, j), c in sorted(merged.items(), key=lambda item: (self._value(*item[0]), item[0]))
            if not c.is_zero() and self._value(e, j) < self.bound
        )

    @property
    def frame_valuation(self) -> Fraction:
        """v(w_r/t^β) = β_{r+1} − β"""
        return beta_i(self.r + 1, self.q) - self.beta

    def _value(self, epsilon: Fraction, j: int) -> Fraction:
        return epsilon + j * (beta_i(self.r + 1, self.q) - self.beta)

    def value_of(self, term: ExpansionTerm) -> Fraction:
        return self._value(term[0], term[1])

    def valuation(self) -> Bound:
        """Valor minimo entre los terminos (inf si no hay)"""
        if not self.terms:
            return INF
        return self.value_of(self.terms[0])

    def leading_terms(self) -> List[ExpansionTerm]:
        if not self.terms:
            return []
        least = self.valuation()
        return [term for term in self.terms if self.value_of(term) == least]

    def like(self, terms: Iterable[Tuple[object, int, object]], bound: Optional[Bound] = None) -> "Expansion":
        return Expansion(self.ctx, self.group, self.q, self.r, self.beta, terms,
                         self.bound if bound is None else bound)

    def __add__(self, other: "Expansion") -> "Expansion":
        if (self.r, self.beta, self.q) != (other.r, other.beta, other.q):
            raise FrameMismatch("expansions live in different frames")
        return self.like(list(self.terms) + list(other.terms), min(self.bound, other.bound))

    def __neg__(self) -> "Expansion":
        return self.like([(e, j, -c) for e, j, c in self.terms])

    def __sub__(self, other: "Expansion") -> "Expansion":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Expansion):
            return NotImplemented
        return (
            (self.r, self.beta, self.q, self.bound) == (other.r, other.beta, other.q, other.bound)
            and [(e, j, c.rep) for e, j, c in self.terms] == [(e, j, c.rep) for e, j, c in other.terms]
        )

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "beta": format_exp(self.beta),
            "bound": format_exp(self.bound),
            "terms": [[format_exp(e), j, str(c)] for e, j, c in self.terms],
        }

    def __str__(self) -> str:
        parts = []
        for e, j, c in self.terms:
            factors = [] if c.is_one() else [str(c)]
            if e != 0:
                factors.append(f"t^({format_exp(e)})")
            if j:
                factors.append("W" if j == 1 else f"W^{j}")
            parts.append("*".join(factors) or "1")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"Expansion(r={self.r}, beta={format_exp(self.beta)}: {self})"


def bounded_terms(E: Expansion, bound) -> List[ExpansionTerm]:
    """Terminos con ε + j·(β_{r+1} − β) < bound (finitos)"""
    bound = parse_bound(bound)
    return [term for term in E.terms if E.value_of(term) < bound]


def _substitute_frame(poly: WSeries, head: Series, shift: Fraction) -> Dict[int, Series]:
    """poly(head + t^β·W) como {j: coeficiente Series}"""
    ctx, group = poly.ctx, poly.group
    # (head + t^β W)^k por recurrencia
    linear = {0: head, 1: Series.monomial(ctx, group, shift)}
    result: Dict[int, Series] = {}
    power: Dict[int, Series] = {0: Series.one(ctx, group)}
    for k, a in enumerate(poly.coeffs):
        if k:
            power = _poly_mul(power, linear)
        if a.is_zero():
            continue
        for j, s in power.items():
            result[j] = result[j] + a * s if j in result else a * s
    return result


def _poly_mul(a: Dict[int, Series], b: Dict[int, Series], max_degree: Optional[int] = None) -> Dict[int, Series]:
    out: Dict[int, Series] = {}
    for i, x in a.items():
        for j, y in b.items():
            if max_degree is not None and i + j > max_degree:
                continue
            out[i + j] = out[i + j] + x * y if i + j in out else x * y
    return out


def _frame_value(poly: Dict[int, Series], frame_valuation: Fraction) -> Bound:
    values = [s.valuation() + j * frame_valuation for j, s in poly.items() if not s.is_zero()]
    return min(values) if values else INF


def qf_to_expansion(y: QuasiFinite, r: int, beta, bound) -> Expansion:
    """
    Sustituye w = w_{0r} + t^β·W en cada h_i y multiplica g hasta la cota de
    grado. El Expansion resultante es completo por debajo de
    min(bound, γ + (D+1)·min_i v_marco(h_i)).
    """
    if y.carrier != "w":
        raise FrameMismatch("frame expansions are defined for the carrier w")
    beta = parse_exp(beta)
    bound = parse_bound(bound)
    params = y.params
    frame_valuation = beta_i(r + 1, params.q) - beta
    head = w_head(params.model_copy(update={"start": 0}), r, y.group)

    h_polys = [_substitute_frame(poly, head, beta) for poly in y.h]
    h_values = [_frame_value(hp, frame_valuation) for hp in h_polys]
    for i, v in enumerate(h_values):
        if not v > 0:
            raise FrameMismatch(f"h_{i + 1} has value {format_exp(v)} <= 0 in frame (r={r}, β={format_exp(beta)})")
    exact_below = y.gamma + (y.g.degree_cap + 1) * min(h_values) if h_values else INF
    cut = min(bound, exact_below)

    ctx, group = y.ctx, y.group
    total: Dict[Tuple[Fraction, int], Coeff] = {}
    power_cache: List[List[Dict[int, Series]]] = [[{0: Series.one(ctx, group)}] for _ in h_polys]
    for index, c in y.g.items():
        term: Dict[int, Series] = {0: Series.one(ctx, group).scale(c)}
        for i, k in enumerate(index):
            while len(power_cache[i]) <= k:
                power_cache[i].append(_poly_mul(power_cache[i][-1], h_polys[i]))
            term = _poly_mul(term, power_cache[i][k])
        for j, s in term.items():
            for e, coeff in s.terms:
                epsilon = e + y.gamma
                if epsilon + j * frame_valuation < cut:
                    key = (epsilon, j)
                    total[key] = total[key] + coeff if key in total else coeff
    terms = [(e, j, c) for (e, j), c in total.items()]
    return Expansion(ctx, group, params.q, r, beta, terms, cut)


def materialize(E: Expansion, depth: int) -> Series:
    """Σ c t^ε (w_r/t^β)^j con w_r truncado a `depth` terminos"""
    params = WConstructionParams(p=E.ctx.p, q=E.q, m=E.ctx.m, start=E.r, depth=depth)
    frame = make_w(params, E.group).shift(-E.beta)
    powers = [Series.one(E.ctx, E.group)]
    total = Series.zero(E.ctx, E.group, E.bound)
    for e, j, c in E.terms:
        while len(powers) <= j:
            powers.append(powers[-1] * frame)
        total = total + powers[j].shift(e).scale(c)
    return total


def monomial_expansion(
    ctx: FieldCtx, group, q: int, r: int, beta, monomials: Iterable[Tuple[object, int, object]]
) -> Expansion:
    """Expansion exacta con los monomios dados (ε, j, c)"""
    return Expansion(ctx, group, q, r, beta, monomials, INF)
