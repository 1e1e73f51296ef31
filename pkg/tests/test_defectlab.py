from fractions import Fraction

import pytest

from vallab.core.coefficients import get_field
from vallab.core.errors import DegenerateZero, Inconclusive, NoRootInField
from vallab.core.exponents import beta, gamma_group, in_p_multiple, residue_extended
from vallab.core.series import Series
from vallab.experiments.corpora import pth_power_probe_set, random_as_expansion
from vallab.modules.construction.quasi_finite import monomial_expansion
from vallab.modules.construction.witness import WConstructionParams, make_w
from vallab.modules.defectlab.artin_schreier import (
    artin_schreier_normal_form,
    as_classify,
    as_reduce,
    delta_set,
    n_of,
    p_divisible_frame,
)
from vallab.modules.defectlab.invariants import (
    ArtinSchreier,
    ExtensionSpec,
    PaperTower,
    Radical,
    invariants_report,
    is_power_of,
    support_profile,
)
from vallab.modules.defectlab.probe import immediate_probe
from vallab.modules.defectlab.pth_powers import carrier_qf, subtract_pth_powers
from vallab.modules.taylor.hasse import WSeries


def _b(monomials, p=2, q=3):
    ctx = get_field(p)
    r, shift = p_divisible_frame(p, q)
    return monomial_expansion(ctx, gamma_group(p), q, r, shift, [(e, j, 1) for e, j in monomials])


# ============================================
# POTENCIAS P-ESIMAS
# ============================================

def test_subtract_pth_powers_examples(f2, gamma2):
    z = Series.from_terms(f2, gamma2, [(2, 1), ("1/3", 1)])
    result = subtract_pth_powers(z)
    assert result.outside_pGamma
    assert result.value == Fraction(1, 3)
    assert result.a == Series.monomial(f2, gamma2, 1)

    single = subtract_pth_powers(Series.monomial(f2, gamma2, "1/3"))
    assert single.outside_pGamma and single.value == Fraction(1, 3)
    assert single.a.is_zero()

    square = subtract_pth_powers(Series.from_terms(f2, gamma2, [(2, 1), ("2/3", 1)]))
    assert not square.outside_pGamma
    assert square.a.support() == [Fraction(1, 3), 1]


def test_subtracted_part_is_exact_on_truncated_input(params23):
    w = make_w(params23)
    z = w + Series.monomial(w.ctx, w.group, "1/3")
    result = subtract_pth_powers(z)
    assert result.outside_pGamma
    assert result.value == Fraction(1, 3)
    assert result.a.is_exact()
    assert result.a.support() == [beta(i, 3) / 2 for i in range(1, 6)]
    assert (result.a ** 2).agrees_with(w)


def test_subtract_pth_powers_on_w_is_inconclusive(params23):
    with pytest.raises(Inconclusive) as excinfo:
        subtract_pth_powers(carrier_qf(params23), max_steps=10)
    assert excinfo.value.budget == 10


@pytest.mark.parametrize("p,q", [(2, 3), (3, 2)])
def test_probe_set_has_witnesses(p, q):
    params = WConstructionParams(p=p, q=q, depth=4)
    group = gamma_group(p)
    for label, z in pth_power_probe_set(params):
        result = subtract_pth_powers(z)
        assert result.outside_pGamma, label
        assert not in_p_multiple(result.value, p, group)


# ============================================
# ARTIN-SCHREIER
# ============================================

def test_delta_set_examples():
    assert delta_set(_b([(-2, 0)])).pairs == [(Fraction(-2), 0)]
    assert len(delta_set(_b([("-1/3", 0)]))) == 0
    mixed = delta_set(_b([(-2, 2), ("-1/3", 0)]))
    assert (-2, 2) in mixed
    assert len(mixed) == 1


def test_n_of_examples():
    assert n_of(_b([("-1/3", 0)])) == 0
    assert n_of(_b([(-2, 0)])) == 1
    assert n_of(_b([(-4, 0)])) == 2


def test_as_reduce_examples():
    a, b_next = as_reduce(_b([(-2, 0)]))
    assert [(e, j) for e, j, _ in a.terms] == [(Fraction(-1), 0)]
    assert [(e, j) for e, j, _ in b_next.terms] == [(Fraction(-1), 0)]
    assert n_of(b_next) == 0

    plain = _b([("-1/3", 0)])
    a, b_next = as_reduce(plain)
    assert not a.terms
    assert b_next == plain


@pytest.mark.parametrize("monomials,witness,steps", [
    ([("-1/3", 0)], Fraction(-1, 3), 0),
    ([(-2, 0)], Fraction(-1), 1),
    ([(-1, 0)], Fraction(-1), 0),
    ([(-4, 0), ("-1/3", 0)], Fraction(-1), 2),
])
def test_as_classify_examples(monomials, witness, steps):
    verdict = as_classify(_b(monomials))
    assert verdict.verdict == "not-immediate"
    assert verdict.witness == witness
    assert verdict.steps == steps


def test_as_classify_inconclusive_cases():
    # dos terminos lideres del mismo valor que se cancelan en F_2
    cancelling = as_classify(_b([("-1/3", 0), ("-5/9", 1)]))
    assert cancelling.verdict == "inconclusive"
    assert "cancel" in cancelling.reason
    budget = as_classify(_b([(-8, 0)]), max_iter=2)
    assert budget.verdict == "inconclusive"
    assert budget.steps == 2
    with pytest.raises(ValueError):
        as_classify(_b([(1, 0)]))


@pytest.mark.parametrize("p,q", [(2, 3), (3, 2)])
def test_as_corpus_properties(rng, p, q):
    ctx = get_field(p)
    for _ in range(200):
        b = random_as_expansion(rng, ctx, q)
        assert b.valuation() < 0
        n = n_of(b)
        _, b_next = as_reduce(b)
        before = delta_set(b)
        for e, j in delta_set(b_next).pairs:
            assert (e * p, j * p) in before
        assert n_of(b_next) <= max(n - 1, 0)

        verdict = as_classify(b)
        assert verdict.verdict == "not-immediate"
        assert verdict.steps <= n
        assert not in_p_multiple(verdict.witness, p, b.group)


def test_normal_form(f4, gamma2):
    b = Series.monomial(f4, gamma2, "-1/3")
    g = f4.gen
    lam, scaled = artin_schreier_normal_form(g, b)
    assert lam == g
    assert scaled == b.scale((g ** 2).inverse())
    with pytest.raises(ValueError):
        artin_schreier_normal_form(f4.zero, b)
    f5 = get_field(5)
    with pytest.raises(NoRootInField):
        artin_schreier_normal_form(f5(2), Series.monomial(f5, gamma_group(5), -1))


# ============================================
# SONDA DE INMEDIATEZ
# ============================================

def _probe_poly(ctx, group, constant):
    one = WSeries.constant(Series.one(ctx, group))
    return [WSeries.constant(constant), one]


def test_immediate_probe_examples(params23):
    ctx = params23.field
    group = residue_extended(2)
    plain = immediate_probe(_probe_poly(ctx, group, Series.zero(ctx, group)), params23)
    assert plain.value == Fraction(1, 3)
    assert plain.in_base_group

    head = Series.from_terms(ctx, group, [("1/3", 1), ("4/9", 1)])
    shifted = immediate_probe(_probe_poly(ctx, group, head), params23)
    assert shifted.value == Fraction(13, 27)
    assert shifted.in_base_group

    one = WSeries.constant(Series.one(ctx, group))
    with pytest.raises(DegenerateZero):
        immediate_probe([WSeries([], ctx, group), one + one], params23)


# ============================================
# INVARIANTES
# ============================================

def test_is_power_of():
    assert is_power_of(Fraction(1), 2)
    assert is_power_of(Fraction(8), 2)
    assert not is_power_of(Fraction(6), 2)
    assert not is_power_of(Fraction(1, 2), 2)


@pytest.mark.parametrize("p,q", [(2, 3), (3, 2)])
def test_tower_reports(p, q):
    params = WConstructionParams(p=p, q=q, depth=5)
    lower = invariants_report(ExtensionSpec(kind=PaperTower(level="K'|K"), params=params))
    assert (lower.degree, lower.e, lower.f, lower.d) == (p, p, 1, 1)
    assert lower.witness == Fraction(p + 1, p)
    assert lower.immediate == "no"

    upper = invariants_report(ExtensionSpec(kind=PaperTower(level="L|K'"), params=params))
    assert (upper.degree, upper.e, upper.f, upper.d) == (p, 1, 1, p)
    assert upper.immediate == "yes-at-precision"
    assert "precision-limited" in upper.notes

    whole = invariants_report(ExtensionSpec(kind=PaperTower(level="L|K"), params=params))
    assert (whole.degree, whole.e, whole.f, whole.d) == (p * p, p, 1, p)
    for report in (lower, upper, whole):
        assert report.fundamental_equality_ok()
        assert report.ostrowski_ok


def test_radical_reports(f2, gamma2, params23):
    t = Series.monomial(f2, gamma2, 1)
    square = invariants_report(ExtensionSpec(kind=Radical(n=2, radicand=t), params=params23))
    assert (square.degree, square.e, square.f, square.d) == (2, 2, 1, 1)
    assert square.witness == Fraction(1, 2)

    trivial = invariants_report(ExtensionSpec(kind=Radical(n=1, radicand=t), params=params23))
    assert (trivial.e, trivial.f, trivial.d) == (1, 1, 1)


def test_artin_schreier_report(params23):
    report = invariants_report(ExtensionSpec(kind=ArtinSchreier(b=_b([(-2, 0)])), params=params23))
    assert (report.degree, report.e, report.f, report.d) == (2, 2, 1, 1)
    assert report.witness == Fraction(-1, 2)


def test_support_profile():
    rows = support_profile(WConstructionParams(p=2, q=3, depth=4))
    assert all(row.in_p_gamma for row in rows)
    rows = support_profile(WConstructionParams(p=3, q=2, depth=4))
    assert [row.in_p_gamma for row in rows] == [False, True, False, True]


def test_inconclusive_reports_record_no_invariants(params23):
    cancelling = invariants_report(
        ExtensionSpec(kind=ArtinSchreier(b=_b([("-1/3", 0), ("-5/9", 1)])), params=params23)
    )
    assert cancelling.immediate == "inconclusive"
    assert (cancelling.e, cancelling.f, cancelling.d) == (None, None, None)
    assert cancelling.ostrowski_ok
    assert cancelling.fundamental_equality_ok()
    document = cancelling.model_dump(mode="json")
    assert (document["e"], document["f"], document["d"]) == (None, None, None)

    # supp(w) ⊂ 2Γ: la resta de potencias no decide
    radical = invariants_report(ExtensionSpec(kind=Radical(n=2, radicand=make_w(params23)), params=params23))
    assert radical.immediate == "inconclusive"
    assert radical.d is None
    assert "precision-limited" in radical.notes
