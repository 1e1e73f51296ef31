from fractions import Fraction

import pytest

from vallab.core.errors import GroupMismatch, IndeterminateValuation, PrecisionTooLow, SupportNotDivisible
from vallab.core.exponents import beta
from vallab.core.series import Series, frobenius, invert, mul, pth_root_series, valuation
from vallab.experiments.corpora import random_series
from vallab.modules.construction.witness import WConstructionParams, make_w, w_head
from vallab.utils import INF


def test_valuation(f2, gamma2, params23):
    w = make_w(params23.with_depth(3))
    assert valuation(w) == Fraction(2, 3)
    assert valuation(Series.zero(f2, gamma2)) == INF
    with pytest.raises(IndeterminateValuation):
        valuation(Series.zero(f2, gamma2, Fraction(5)))


def test_add_cancels_in_characteristic_two(f2, gamma2):
    a = Series.monomial(f2, gamma2, "2/3", prec=Fraction(1))
    b = Series.monomial(f2, gamma2, "2/3", prec=Fraction(2))
    total = a + b
    assert total.terms == ()
    assert total.prec == 1
    exact = Series.monomial(f2, gamma2, "2/3")
    assert (exact + exact).is_zero()
    assert a + Series.zero(f2, gamma2) == a


def test_add_rejects_different_groups(f2, gamma2, gamma2_prime):
    a = Series.monomial(f2, gamma2, "1/3", prec=Fraction(1))
    b = Series.monomial(f2, gamma2_prime, "1/2")
    with pytest.raises(GroupMismatch):
        a + b
    with pytest.raises(GroupMismatch):
        Series.monomial(f2, gamma2, "1/2")


def test_mul_examples(f2, gamma2, params23):
    w3 = w_head(params23, 3)
    square = mul(w3, w3)
    assert square.support() == [Fraction(4, 3), Fraction(16, 9), Fraction(52, 27)]
    assert square.is_exact()
    one = Series.one(f2, gamma2)
    assert w3 * one == w3
    left = Series.monomial(f2, gamma2, "-2/3")
    right = Series.monomial(f2, gamma2, "2/3")
    assert left * right == one


def test_mul_precision(f2, gamma2):
    a = Series.from_terms(f2, gamma2, [(Fraction(1, 3), 1)], Fraction(1))
    b = Series.from_terms(f2, gamma2, [(Fraction(1), 1)], Fraction(3))
    product = a * b
    assert product.prec == min(Fraction(1) + 1, Fraction(3) + Fraction(1, 3))
    assert product.support() == [Fraction(4, 3)]


def test_invert_w(params23):
    w = make_w(params23)
    inverse = invert(w)
    assert inverse.terms[0][0] == Fraction(-2, 3)
    assert inverse.terms[1][0] == Fraction(-4, 9)
    assert inverse.prec == beta(6, 3) - Fraction(4, 3)
    assert (w * inverse).agrees_with(Series.one(w.ctx, w.group))


def test_invert_monomial_is_exact(f2, gamma2):
    inverse = invert(Series.monomial(f2, gamma2, "1/3"))
    assert inverse == Series.monomial(f2, gamma2, "-1/3")


def test_invert_single_visible_term(f2, f3, gamma2, gamma3):
    inverse = Series.monomial(f2, gamma2, "1/3", prec=5).invert()
    assert inverse.support() == [Fraction(-1, 3)]
    assert inverse.prec == Fraction(13, 3)

    two = Series.monomial(f3, gamma3, 1, 2, prec=3)
    inverse = two.invert()
    assert inverse.support() == [Fraction(-1)]
    assert inverse.leading_coeff() == f3(2)
    assert inverse.prec == 1
    assert (two * inverse).agrees_with(Series.one(f3, gamma3))

    head = make_w(WConstructionParams(p=2, q=3, depth=1))
    inverse = invert(head)
    assert inverse.support() == [Fraction(-2, 3)]
    assert inverse.prec == Fraction(-4, 9)


def test_invert_exact_non_monomial_needs_target(f2, gamma2):
    s = Series.from_terms(f2, gamma2, [(0, 1), (1, 1)])
    with pytest.raises(PrecisionTooLow):
        s.invert()
    inverse = s.invert(prec=Fraction(4))
    assert inverse.support() == [0, 1, 2, 3]
    assert (s * inverse).agrees_with(Series.one(f2, gamma2))


def test_invert_round_trip_on_random_series(rng, f3):
    checked = 0
    for _ in range(200):
        s = random_series(rng, f3, 2, terms=4)
        if not s.terms:
            continue
        v = s.valuation()
        product = s * s.invert()
        assert product.prec == s.prec - v
        assert product.agrees_with(Series.one(f3, s.group))
        checked += 1
    assert checked > 150


def test_ring_axioms_on_random_triples(rng, f2):
    for _ in range(1000):
        a, b, c = (random_series(rng, f2, 3, terms=3) for _ in range(3))
        # O(t^n) sin terminos no tiene valuacion: el producto no esta definido
        if not (a.terms and b.terms and c.terms and (b + c).terms and (a + b).terms):
            continue
        assert (a * b).agrees_with(b * a)
        assert ((a * b) * c).agrees_with(a * (b * c))
        assert (a * (b + c)).agrees_with(a * b + a * c)
        assert ((a + b) + c).agrees_with(a + (b + c))


def test_frobenius_examples(f2, f4, gamma2):
    s = Series.from_terms(f2, gamma2, [("1/3", 1), ("4/9", 1)])
    assert frobenius(s) == Series.from_terms(f2, gamma2, [("2/3", 1), ("8/9", 1)])
    assert frobenius(Series.zero(f2, gamma2)).is_zero()
    constant = Series.monomial(f4, gamma2, 0, f4.gen)
    assert frobenius(constant) == Series.monomial(f4, gamma2, 0, f4.gen ** 2)


def test_pth_root_of_w(params23, params32):
    s = pth_root_series(make_w(params23))
    assert s.support()[:3] == [Fraction(1, 3), Fraction(4, 9), Fraction(13, 27)]
    assert frobenius(s) == make_w(params23)
    with pytest.raises(SupportNotDivisible) as excinfo:
        pth_root_series(make_w(params32))
    assert excinfo.value.exponent == Fraction(1, 2)


def test_pth_root_of_square(f2, gamma2):
    assert pth_root_series(Series.monomial(f2, gamma2, 2)) == Series.monomial(f2, gamma2, 1)


def test_frobenius_round_trip_on_random_series(rng, f4):
    for _ in range(500):
        s = random_series(rng, f4, 3, terms=5)
        assert pth_root_series(frobenius(s)) == s


def test_display_and_json(params23):
    w = make_w(params23.with_depth(2))
    assert str(w) == "t^(2/3) + t^(8/9) + O(t^(26/27))"
    data = w.to_json()
    assert data == {"terms": [["2/3", "1"], ["8/9", "1"]], "prec": "26/27"}
    assert Series.from_json(data, w.ctx, w.group) == w


def test_display_of_simple_series(f3, gamma3):
    s = Series.from_terms(f3, gamma3, [(0, 1), (1, 2), (2, 1), ("-1/2", 1)])
    assert str(s) == "t^(-1/2) + 1 + 2*t + t^2"
    assert str(Series.zero(f3, gamma3)) == "0"


def test_coefficient_beyond_precision(params23):
    w = make_w(params23.with_depth(2))
    assert w.coefficient("8/9").is_one()
    assert w.coefficient("5/9").is_zero()
    with pytest.raises(PrecisionTooLow):
        w.coefficient(1)


def test_precision_refinement_is_monotone():
    for p, q in [(2, 3), (3, 2), (2, 5)]:
        low = WConstructionParams(p=p, q=q, depth=3)
        high = low.with_depth(6)

        def pipeline(w):
            return w * w + w.invert() + (w ** 3).truncate(Fraction(5, 2))

        coarse, fine = pipeline(make_w(low)), pipeline(make_w(high))
        assert fine.prec >= coarse.prec
        assert fine.truncate(coarse.prec) == coarse
