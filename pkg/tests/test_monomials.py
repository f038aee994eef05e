import pytest
from hypothesis import given, strategies as st

from weilad.monomial import Monomial


def exps(max_gens=3, max_e=4):
    return st.dictionaries(st.integers(0, max_gens - 1), st.integers(1, max_e), max_size=max_gens)


def test_unit_and_normalization():
    assert Monomial.of([]).is_unit()
    assert Monomial.of([(0, 0), (1, 0)]).is_unit()
    m = Monomial.of([(1, 2), (0, 1)])
    assert m.exps == ((0, 1), (1, 2))
    assert m.degree == 3
    assert m.exponent(1) == 2 and m.exponent(5) == 0


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        Monomial.of([(0, -1)])


@given(exps(), exps())
def test_mul_adds_exponents(a, b):
    m = Monomial.of(a) * Monomial.of(b)
    for i in set(a) | set(b):
        assert m.exponent(i) == a.get(i, 0) + b.get(i, 0)


@given(exps(), exps())
def test_divides_iff_componentwise(a, b):
    ma, mb = Monomial.of(a), Monomial.of(b)
    expected = all(mb.exponent(i) >= e for i, e in ma.exps)
    assert ma.divides(mb) == expected


def test_sort_key_orders_degree_then_earlier_generator_first():
    x = Monomial.of([(0, 1)])
    y = Monomial.of([(1, 1)])
    xy = Monomial.of([(0, 1), (1, 1)])
    one = Monomial.of([])
    ordered = sorted([xy, y, one, x], key=lambda m: m.sort_key(2))
    assert ordered == [one, x, y, xy]


def test_pure_power_and_shift():
    assert Monomial.of([(2, 3)]).pure_power() == (2, 3)
    assert Monomial.of([(0, 1), (1, 1)]).pure_power() is None
    assert Monomial.of([(0, 2)]).shift(3).exps == ((3, 2),)


def test_labels():
    names = ("x", "y")
    assert Monomial.of([]).label(names) == "1"
    assert Monomial.of([(0, 2), (1, 1)]).label(names) == "x^2*y"
