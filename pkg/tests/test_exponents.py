from fractions import Fraction

import pytest

from vallab.core.errors import InfiniteIndex
from vallab.core.exponents import (
    Extended,
    FinGen,
    PPrimeDenom,
    beta,
    gamma_group,
    in_group,
    in_p_multiple,
    index,
    order_modulo,
    p_depth,
    parse_group,
    residue_extended,
    tower_group,
)


def test_membership_in_gamma(gamma2):
    assert in_group(Fraction(1, 3), gamma2)
    assert not in_group(Fraction(1, 2), gamma2)
    assert in_group(Fraction(-7, 9), gamma2)


def test_fingen_membership():
    group = FinGen(gens=("2/3", "8/9"))
    assert group.generator() == Fraction(2, 9)
    assert not in_group(Fraction(1, 9), group)
    assert in_group(Fraction(4, 9), group)
    assert in_group(Fraction(0), FinGen())
    assert not in_group(Fraction(1), FinGen())


def test_in_p_multiple(gamma2):
    assert in_p_multiple(Fraction(2, 3), 2, gamma2)
    assert not in_p_multiple(Fraction(1, 3), 2, gamma2)
    assert in_p_multiple(Fraction(-2), 2, gamma2)


def test_in_p_multiple_matches_reduced_fraction(rng, gamma3):
    for _ in range(200):
        gamma = Fraction(int(rng.integers(-500, 500)), int(rng.integers(1, 200)))
        expected = (gamma / 3).denominator % 3 != 0
        assert in_p_multiple(gamma, 3, gamma3) == expected


def test_index_of_extensions(gamma2):
    assert index(residue_extended(2), gamma2) == 2
    assert index(gamma2, gamma2) == 1
    assert index(tower_group(2), gamma2) == 4
    quarter = Extended(base=gamma2, adjoined=(Fraction(1, 4),))
    assert index(quarter, gamma2) == 4


def test_index_through_nested_extension(gamma2):
    inner = residue_extended(2)
    outer = Extended(base=inner, adjoined=(Fraction(1, 4),))
    assert index(outer, gamma2) == 4


def test_infinite_index():
    trivial = FinGen()
    with pytest.raises(InfiniteIndex):
        order_modulo(Fraction(1, 2), trivial)


def test_beta_values():
    assert beta(1, 3) == Fraction(2, 3)
    assert beta(2, 3) == Fraction(8, 9)
    assert beta(3, 3) == Fraction(26, 27)
    with pytest.raises(ValueError):
        beta(0, 3)


def test_beta_increasing_to_one():
    for q in (2, 3, 5):
        previous = Fraction(0)
        for i in range(1, 51):
            b = beta(i, q)
            assert b > previous
            assert 1 - b == Fraction(1, q ** i)
            # β_i ∉ (1/q^{i−1})Z
            assert (b * q ** (i - 1)).denominator != 1
            previous = b


@pytest.mark.parametrize("group", [gamma_group(2), FinGen(gens=("2/3", "8/9")), residue_extended(2)])
def test_group_closure(rng, group):
    samples = []
    while len(samples) < 40:
        gamma = Fraction(int(rng.integers(-60, 60)), int(rng.choice([1, 2, 3, 9, 27])))
        if group.contains(gamma):
            samples.append(gamma)
    for _ in range(1000):
        a, b = rng.choice(len(samples), size=2)
        assert group.contains(samples[a] + samples[b])
        assert group.contains(samples[a] - samples[b])


def test_p_depth(gamma2):
    assert p_depth(Fraction(-2), 2, gamma2) == 1
    assert p_depth(Fraction(-4), 2, gamma2) == 2
    assert p_depth(Fraction(-1, 3), 2, gamma2) == 0
    assert p_depth(Fraction(0), 2, gamma2, cap=10) == 10


def test_order_modulo(gamma2):
    assert order_modulo(Fraction(1, 2), gamma2) == 2
    assert order_modulo(Fraction(3, 8), gamma2) == 8
    assert order_modulo(Fraction(1, 4), residue_extended(2)) == 2


def test_parse_group_round_trip():
    spec = {"kind": "extended", "base": {"kind": "p-prime", "p": 2}, "adjoined": ["1/2"]}
    group = parse_group(spec)
    assert group == residue_extended(2)
    assert group.model_dump(mode="json") == spec
    assert isinstance(parse_group({"kind": "p-prime", "p": 3}), PPrimeDenom)
