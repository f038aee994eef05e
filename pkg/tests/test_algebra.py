import itertools
from dataclasses import replace
from fractions import Fraction

import pytest

from weilad.algebra import (
    algebra_from_spec,
    base_algebra,
    dual_algebra,
    jet_algebra,
    mixed_algebra,
    parse_algebra_text,
    present_algebra,
    tensor,
    validate_algebra,
    validate_morphism,
)
from weilad.corpus import algebra_family
from weilad.errors import BadParameter, DuplicateGenerator, InfiniteDimension
from weilad.monomial import Monomial


def enumeration_oracle(caps, vanishing):
    """Independent basis count: walk the exponent box, keep non-multiples."""
    kept = []
    for point in itertools.product(*(range(c) for c in caps)):
        dead = False
        for v in vanishing:
            if all(point[i] >= e for i, e in v.exps):
                dead = True
                break
        if not dead:
            kept.append(point)
    return kept


def test_base_is_one_dimensional():
    k = base_algebra()
    assert k.dim == 1 and k.nilpotency_index == 1
    assert k.basis_labels() == ("1",)


def test_dual_numbers():
    w = present_algebra(("x",), [Monomial.of([(0, 2)])])
    assert w.basis_labels() == ("1", "x")
    assert w.dim == 2 and w.nilpotency_index == 2


def test_two_first_order_generators():
    rels = [Monomial.of([(0, 2)]), Monomial.of([(0, 1), (1, 1)]), Monomial.of([(1, 2)])]
    w = present_algebra(("x", "y"), rels)
    assert w.basis_labels() == ("1", "x", "y")
    assert w.dim == len(enumeration_oracle((2, 2), rels)) == 3


def test_third_order_jet():
    w = present_algebra(("x",), [Monomial.of([(0, 4)])])
    assert w.basis_labels() == ("1", "x", "x^2", "x^3")
    assert w.dim == 4 and w.nilpotency_index == 4


def test_mixed_relation_basis_against_oracle():
    rels = [
        Monomial.of([(0, 3)]),
        Monomial.of([(1, 2)]),
        Monomial.of([(0, 2), (1, 1)]),
    ]
    w = present_algebra(("x", "y"), rels)
    assert w.dim == len(enumeration_oracle((3, 2), rels)) == 5


def test_infinite_dimension_rejected():
    with pytest.raises(InfiniteDimension):
        present_algebra(("x", "y"), [Monomial.of([(0, 2)])])


def test_duplicate_generator_rejected():
    with pytest.raises(DuplicateGenerator):
        present_algebra(("x", "x"), [Monomial.of([(0, 2)]), Monomial.of([(1, 2)])])


def test_standard_constructors():
    assert dual_algebra(2).basis_labels() == ("1", "x", "y")
    assert jet_algebra(2).dim == 3
    assert mixed_algebra(1, 1).basis_labels() == ("1", "x1", "x2", "x1*x2")
    with pytest.raises(BadParameter):
        dual_algebra(0)
    with pytest.raises(BadParameter):
        jet_algebra(0)


@pytest.mark.parametrize("w", algebra_family(), ids=lambda w: w.name)
def test_family_validates_exhaustively(w):
    report = validate_algebra(w)
    assert report.passed, [c.name for c in report.failures()]


def test_corrupted_table_is_caught_with_witness():
    w = jet_algebra(3)
    struct = dict(w.struct)
    # redirect x*x to x^3
    struct[(1, 1)] = ((3, Fraction(1)),)
    struct[(1, 2)] = ((2, Fraction(1)),)
    bad = replace(w, struct=struct)
    report = validate_algebra(bad)
    assert not report.passed
    failing = [c for c in report.checks if not c.passed]
    assert any(c.witness for c in failing)


def test_tensor_dimensions_and_nilpotency():
    family = algebra_family()
    for w1, w2 in itertools.product(family[:6], repeat=2):
        t = tensor(w1, w2).algebra
        assert t.dim == w1.dim * w2.dim
        assert t.nilpotency_index == w1.nilpotency_index + w2.nilpotency_index - 1


def test_tensor_of_duals():
    t = tensor(dual_algebra(1), dual_algebra(1)).algebra
    assert t.dim == 4 and t.nilpotency_index == 3
    assert set(t.basis_labels()) == {"1", "x_1", "x_2", "x_1*x_2"}
    assert validate_algebra(t).passed


def test_tensor_with_base_is_isomorphic():
    w = jet_algebra(2)
    t = tensor(w, base_algebra())
    # dropping the unit pair component: pair (i, 0) <-> i is a basis bijection
    assert t.algebra.dim == w.dim
    ident = [[Fraction(int(i == j)) for j in range(w.dim)] for i in range(w.dim)]
    from weilad.algebra import WeilMorphism

    drop = WeilMorphism(t.algebra, w, tuple(tuple(r) for r in ident))
    rep = validate_morphism(drop)
    assert rep.passed, [c.name for c in rep.failures()]


def test_tensor_inclusions_are_valid_morphisms():
    t = tensor(jet_algebra(2), dual_algebra(1))
    assert t.algebra.dim == 6
    assert validate_morphism(t.incl1).passed
    assert validate_morphism(t.incl2).passed


def test_text_format_round_trip():
    text = """
# comment
algebra demo
gens x y
rel x^2*y
rel x^3
rel y^2
"""
    w = parse_algebra_text(text)
    assert w.name == "demo"
    assert w.dim == 5
    with pytest.raises(BadParameter):
        parse_algebra_text("gens x\nrel x^2")


def test_builtin_specs():
    assert algebra_from_spec("base").dim == 1
    assert algebra_from_spec("dual:2").dim == 3
    assert algebra_from_spec("jet:3").dim == 4
    assert algebra_from_spec("mixed:1,2").dim == 6
    with pytest.raises(BadParameter):
        algebra_from_spec("nonsense:1")


def test_spec_file_input(tmp_path):
    path = tmp_path / "demo.alg"
    path.write_text("algebra filedemo\ngens t\nrel t^3\n")
    w = algebra_from_spec(str(path))
    assert w.dim == 3 and w.generator_names == ("t",)
