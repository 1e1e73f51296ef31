"""
Contabilidad de e, f y d para las extensiones del laboratorio.

Con una unica extension de la valuacion (ambiente henseliano) vale
[L:K] = e·f·d y d es potencia de p. e y f se calculan a precision de trabajo
a partir de valores y residuos de generadores; d se deduce.
"""
import logging
from fractions import Fraction
from typing import Any, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from vallab.core.coefficients import root_degree
from vallab.core.errors import Inconclusive, IndeterminateValuation, PrecisionTooLow, ReduciblePolynomial
from vallab.core.exponents import beta, gamma_group, in_p_multiple, order_modulo, residue_extended
from vallab.core.series import Series
from vallab.modules.construction.quasi_finite import Expansion
from vallab.modules.construction.witness import WConstructionParams, s_head, w_head
from vallab.modules.defectlab.artin_schreier import as_classify
from vallab.modules.defectlab.probe import immediate_probe
from vallab.modules.defectlab.pth_powers import subtract_pth_powers
from vallab.modules.taylor.hasse import WSeries
from vallab.schemas import ExtensionReport, SupportProfileRow
from vallab.utils import format_exp

logger = logging.getLogger(__name__)

PRECISION_NOTE = "precision-limited"


class Radical(BaseModel):
    """L = K(z^{1/n})"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: Literal["radical"] = "radical"
    n: int = Field(..., ge=1)
    radicand: Series


class ArtinSchreier(BaseModel):
    """L = K[X]/(X^p − X − b)"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: Literal["artin-schreier"] = "artin-schreier"
    b: Expansion


class PaperTower(BaseModel):
    """K ⊂ K′ = K(y) ⊂ L = K(x), x^{p²} = t^{p+1} + w^p"""
    kind: Literal["tower"] = "tower"
    level: Literal["K'|K", "L|K'", "L|K"] = "L|K'"


class ExtensionSpec(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: Union[Radical, ArtinSchreier, PaperTower] = Field(..., discriminator="kind")
    base_group: Optional[Any] = None
    params: WConstructionParams = WConstructionParams()
    probe_prec: int = 6
    max_iter: int = 10

    def group(self):
        return self.base_group if self.base_group is not None else gamma_group(self.params.p)


def is_power_of(d: Fraction, p: int) -> bool:
    if d.denominator != 1 or d < 1:
        return False
    n = d.numerator
    while n % p == 0:
        n //= p
    return n == 1


def _report(label: str, degree: int, e: Optional[int], f: Optional[int], immediate: str, p: int,
            witness=None, notes: str = "") -> ExtensionReport:
    # e o f sin determinar: d no se registra
    d = Fraction(degree, e * f) if e is not None and f is not None else None
    return ExtensionReport(
        label=label,
        degree=degree,
        e=e,
        f=f,
        d=d,
        immediate=immediate,
        witness=witness,
        ostrowski_ok=d is None or is_power_of(d, p),
        notes=notes,
    )


def _split(n: int, p: int):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def _tame_part(z: Series, n: int, group):
    """(e, f) de K(z^{1/n}) | K con n coprimo con p"""
    try:
        v = z.valuation()
    except IndeterminateValuation as e:
        raise PrecisionTooLow(f"radicand valuation not determined: {e}")
    e = order_modulo(Fraction(v) / n, group)
    f = root_degree(z.leading_coeff(), n // e)
    if e * f != n:
        raise ReduciblePolynomial(f"X^{n} - z is reducible: e*f = {e * f} < {n}")
    return e, f


def _radical_report(spec: ExtensionSpec, ext: Radical) -> ExtensionReport:
    p = spec.params.p
    group = spec.group()
    n = ext.n
    label = f"radical n={n}"
    if n == 1:
        return _report(label, 1, 1, 1, "yes-at-precision", p)
    k, tame = _split(n, p)
    if k > 1:
        raise ValueError(f"radical degree {n} has p-part p^{k}; only n = m or m*p are supported")

    e, f = _tame_part(ext.radicand, tame, group) if tame > 1 else (1, 1)
    witness = Fraction(ext.radicand.valuation()) / tame if e > 1 else None
    notes = []
    immediate = "no" if e * f > 1 else "yes-at-precision"

    if k == 1:
        try:
            result = subtract_pth_powers(ext.radicand, spec.max_iter)
        except Inconclusive as err:
            notes.append(f"{PRECISION_NOTE}: p-th power subtraction inconclusive ({err.message})")
            if tame > 1:
                notes.append(f"tame part: e = {e}, f = {f}")
            return _report(label, n, None, None, "inconclusive", p, witness, "; ".join(notes))
        if not result.outside_pGamma:
            raise ReduciblePolynomial("radicand is a p-th power: X^p - z = (X - a)^p")
        e *= p
        witness = result.value / p
        immediate = "no"
    return _report(label, n, e, f, immediate, p, witness, "; ".join(notes))


def _as_report(spec: ExtensionSpec, ext: ArtinSchreier) -> ExtensionReport:
    p = spec.params.p
    verdict = as_classify(ext.b, spec.max_iter)
    if verdict.verdict == "not-immediate":
        # v(x) = v(b)/p para la raiz de X^p − X − b
        return _report("artin-schreier", p, p, 1, "no", p, verdict.witness / p)
    return _report("artin-schreier", p, None, None, "inconclusive", p,
                   notes=f"{PRECISION_NOTE}: {verdict.reason}")


def _kprime_over_k(params: WConstructionParams) -> ExtensionReport:
    """K′ = K(y), y^p = t^{p+1} + w^p: el residuo t^{p+1} sale de pΓ"""
    p = params.p
    group = gamma_group(p)
    values = set()
    for l in range(1, params.depth + 1):
        radicand = Series.monomial(params.field, group, p + 1) + w_head(params, l, group) ** p
        result = subtract_pth_powers(radicand, max_steps=4)
        if not result.outside_pGamma:
            raise ReduciblePolynomial("t^(p+1) + w^p became a p-th power")
        values.add(result.value)
    if len(values) != 1:
        raise PrecisionTooLow(f"residual valuations vary with depth: {sorted(values)}")
    value = values.pop()
    return _report("K'|K", p, p, 1, "no", p, value / p, f"v(y - w) = {format_exp(value / p)}")


def lk_prime_probe_set(params: WConstructionParams) -> List[List[WSeries]]:
    """f = X y f = X − s_{0i}: los candidatos naturales a subir de valor"""
    p = params.p
    group = residue_extended(p)
    ctx = params.field
    zero = WSeries([], ctx, group)
    one = WSeries.constant(Series.one(ctx, group))
    probes = [[zero, one]]
    for i in range(1, params.depth + 1):
        s0i = s_head(params, i, group)
        probes.append([WSeries.constant(-s0i), one])
    return probes


def _l_over_kprime(params: WConstructionParams, probe_prec: int) -> ExtensionReport:
    p = params.p
    values = []
    for fcoeffs in lk_prime_probe_set(params):
        result = immediate_probe(fcoeffs, params, probe_prec)
        if not result.in_base_group:
            return _report("L|K'", p, p, 1, "no", p, result.value,
                           f"probe value {format_exp(result.value)} outside Γ'")
        values.append(format_exp(result.value))
    note = f"defect extension per construction; probe values {', '.join(values)} all in Γ'; {PRECISION_NOTE}"
    return _report("L|K'", p, 1, 1, "yes-at-precision", p, notes=note)


def _tower_report(spec: ExtensionSpec, tower: PaperTower) -> ExtensionReport:
    params = spec.params
    if tower.level == "K'|K":
        return _kprime_over_k(params)
    if tower.level == "L|K'":
        return _l_over_kprime(params, spec.probe_prec)
    lower = _kprime_over_k(params)
    upper = _l_over_kprime(params, spec.probe_prec)
    p = params.p
    # multiplicatividad de e y f en la torre
    return _report("L|K", p * p, lower.e * upper.e, lower.f * upper.f, "no", p, lower.witness,
                   f"e and f multiplied along K ⊂ K' ⊂ L; {PRECISION_NOTE}")


def invariants_report(spec: ExtensionSpec) -> ExtensionReport:
    ext = spec.kind
    if isinstance(ext, Radical):
        report = _radical_report(spec, ext)
    elif isinstance(ext, ArtinSchreier):
        report = _as_report(spec, ext)
    else:
        report = _tower_report(spec, ext)
    logger.info(
        f"{report.label}: degree {report.degree}, e = {report.e}, f = {report.f}, "
        f"d = {format_exp(report.d) if report.d is not None else 'unrecorded'}"
    )
    return report


def support_profile(params: WConstructionParams) -> List[SupportProfileRow]:
    """β_i ∈ pΓ para i = 1..depth"""
    group = gamma_group(params.p)
    return [
        SupportProfileRow(i=i, beta=beta(i, params.q), in_p_gamma=in_p_multiple(beta(i, params.q), params.p, group))
        for i in range(1, params.depth + 1)
    ]
