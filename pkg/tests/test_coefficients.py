import pytest

from vallab.core.coefficients import Coeff, FieldCtx, get_field, nth_root, pth_root, root_degree
from vallab.core.errors import NoRootInField


def test_pth_root_examples(f2, f3, f4):
    assert pth_root(f2.one) == f2.one
    assert pth_root(f3(2)) == f3(2)
    omega = f4.gen
    assert pth_root(omega) == omega ** 2
    assert str(omega ** 2) == "g+1"


@pytest.mark.parametrize("p,m", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 2), (2, 8)])
def test_pth_root_inverts_frobenius(p, m):
    ctx = get_field(p, m)
    for c in ctx.elements():
        assert pth_root(c ** p) == c
        assert pth_root(c) ** p == c


def test_frobenius_is_additive(f4):
    for a in f4.elements():
        for b in f4.elements():
            assert pth_root(a + b) == pth_root(a) + pth_root(b)


def test_field_axioms(rng):
    ctx = get_field(3, 3)
    for _ in range(1000):
        reps = rng.integers(0, ctx.size, size=3)
        a, b, c = (Coeff(ctx, int(r)) for r in reps)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == ctx.zero
        if not a.is_zero():
            assert a * a.inverse() == ctx.one


def test_nth_root_examples(f3):
    assert nth_root(f3.one, 5) == f3.one
    assert nth_root(f3.one, 2) == f3.one
    with pytest.raises(NoRootInField):
        nth_root(get_field(5)(2), 4)


def test_nth_root_in_extension(f4):
    # en F_4 todo elemento es cubo? no: los cubos de F_4* son {1}
    with pytest.raises(NoRootInField):
        nth_root(f4.gen, 3)
    root = nth_root(f4.one, 3)
    assert root ** 3 == f4.one


def test_root_degree(f2, f3):
    assert root_degree(f2.one, 3) == 1
    # X^2 - 2 sobre F_3: 2 no es cuadrado, la raiz vive en F_9
    assert root_degree(f3(2), 2) == 2
    assert root_degree(f3(1), 2) == 1
    with pytest.raises(ValueError):
        root_degree(f3(2), 3)


def test_parse_and_format(f4):
    assert f4.parse("g+1") == f4.gen + 1
    assert str(f4.parse("g^2")) == "g+1"
    assert get_field(3).parse("-1") == get_field(3)(2)


def test_reducible_modulus_is_rejected():
    with pytest.raises(ValueError):
        FieldCtx(2, 2, modulus=(1, 0, 1))


def test_default_modulus_is_first_irreducible(f4):
    assert f4.modulus == (1, 1, 1)
    assert f4 == FieldCtx(2, 2)
