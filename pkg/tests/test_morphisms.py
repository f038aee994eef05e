from fractions import Fraction

import pytest

from weilad.algebra import (
    base_algebra,
    canonical_morphisms,
    compose_morphisms,
    dual_algebra,
    identity_morphism,
    jet_algebra,
    morphism_from_generator_images,
    tensor,
    tensor_of_morphisms,
    validate_morphism,
)
from weilad.corpus import composable_pairs, morphism_family
from weilad.errors import AugmentationViolation, NotWellDefined, SourceTargetMismatch
from weilad.numbers import number, push_along


D = dual_algebra(1)
J2 = jet_algebra(2)
DD = tensor(dual_algebra(1), dual_algebra(1)).algebra


@pytest.mark.parametrize("c", [0, 1, -2, Fraction(3, 4)])
def test_scaling_the_generator_is_always_valid(c):
    phi = morphism_from_generator_images(D, D, [number(D, [0, c])])
    assert validate_morphism(phi).passed
    assert push_along(phi, number(D, [5, 1])).coeffs == (Fraction(5), Fraction(c))


def test_sum_of_two_first_order_generators_kills_the_cube():
    phi = morphism_from_generator_images(J2, DD, [number(DD, [0, 1, 1, 0])])
    assert validate_morphism(phi).passed


def test_ill_defined_image_reports_the_relation():
    with pytest.raises(NotWellDefined) as err:
        morphism_from_generator_images(D, DD, [number(DD, [0, 1, 1, 0])])
    assert err.value.witness is not None
    assert "x^2" in err.value.witness["relation"]


def test_constant_term_in_image_rejected():
    with pytest.raises(AugmentationViolation):
        morphism_from_generator_images(D, D, [number(D, [1, 1])])


def test_acceptance_matches_brute_force_condition():
    # images x -> a*x_1 + b*x_2 + c*x_1*x_2 from the dual numbers are well
    # defined exactly when (image)^2 = 2ab x_1*x_2 vanishes, i.e. a*b = 0
    for a in range(-2, 3):
        for b in range(-2, 3):
            for c in (0, 1):
                image = number(DD, [0, a, b, c])
                should_accept = a * b == 0
                try:
                    phi = morphism_from_generator_images(D, DD, [image])
                    accepted = True
                except NotWellDefined:
                    accepted = False
                assert accepted == should_accept, (a, b, c)
                if accepted:
                    assert validate_morphism(phi).passed


@pytest.mark.parametrize("name", sorted(morphism_family()), ids=str)
def test_family_is_multiplicative_by_brute_force(name):
    phi = morphism_family()[name]
    src, tgt = phi.source, phi.target
    cols = [phi.column(s) for s in range(src.dim)]
    for i in range(src.dim):
        for j in range(src.dim):
            lhs = tgt.mul_coeffs(cols[i], cols[j])
            rhs = [Fraction(0)] * tgt.dim
            for k, c in src.struct[(i, j)]:
                for t in range(tgt.dim):
                    rhs[t] += c * cols[k][t]
            assert tuple(rhs) == tuple(lhs), (name, i, j)


def test_compose_identity_neutral():
    phi = morphism_family()["sum_embed"]
    assert compose_morphisms(identity_morphism(phi.source), phi).matrix == phi.matrix
    assert compose_morphisms(phi, identity_morphism(phi.target)).matrix == phi.matrix


def test_unit_then_augmentation_is_identity_on_base():
    aug, unit = canonical_morphisms(jet_algebra(3))
    round_trip = compose_morphisms(unit, aug)
    assert round_trip.matrix == ((Fraction(1),),)


def test_scaling_morphisms_compose_multiplicatively():
    two = morphism_from_generator_images(D, D, [number(D, [0, 2])])
    three = morphism_from_generator_images(D, D, [number(D, [0, 3])])
    six = compose_morphisms(two, three)
    # matrix product oracle, written out
    assert six.matrix == ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(6)))


def test_compose_requires_matching_ends():
    aug, _ = canonical_morphisms(D)
    with pytest.raises(SourceTargetMismatch):
        compose_morphisms(aug, aug)


def test_compose_associative_on_family_chains():
    for phi, psi in composable_pairs():
        for _, rho_candidate in sorted(morphism_family().items()):
            if rho_candidate.source != psi.target:
                continue
            lhs = compose_morphisms(compose_morphisms(phi, psi), rho_candidate)
            rhs = compose_morphisms(phi, compose_morphisms(psi, rho_candidate))
            assert lhs.matrix == rhs.matrix


def test_canonical_morphisms():
    w = jet_algebra(3)
    aug, unit = canonical_morphisms(w)
    assert push_along(aug, number(w, [1, 1, 1, 0])).coeffs == (Fraction(1),)
    k = base_algebra()
    for c in (Fraction(2), Fraction(-7, 3)):
        embedded = push_along(unit, number(k, [c]))
        assert embedded.coeffs[0] == c and not any(embedded.coeffs[1:])
        assert push_along(aug, embedded).coeffs == (c,)


def kron_oracle(a, b):
    rows = []
    for i in range(len(a)):
        for k in range(len(b)):
            rows.append(tuple(a[i][j] * b[k][l]
                              for j in range(len(a[0])) for l in range(len(b[0]))))
    return tuple(rows)


def test_tensor_of_morphisms_is_kronecker():
    two = morphism_from_generator_images(D, D, [number(D, [0, 2])])
    three = morphism_from_generator_images(D, D, [number(D, [0, 3])])
    t = tensor_of_morphisms(two, three)
    assert t.matrix == kron_oracle(two.matrix, three.matrix)
    # coefficient on the pair monomial is the product 6
    xy = number(t.source, [0, 0, 0, 1])
    assert push_along(t, xy).coeffs == (Fraction(0), Fraction(0), Fraction(0), Fraction(6))


def test_tensor_of_identities_is_identity():
    ident = identity_morphism(D)
    t = tensor_of_morphisms(ident, ident)
    assert t.matrix == identity_morphism(DD).matrix


def test_id_tensor_augmentation_kills_second_leg():
    aug, _ = canonical_morphisms(D)
    t = tensor_of_morphisms(identity_morphism(D), aug)
    assert validate_morphism(t).passed
    x1 = number(t.source, [0, 0, 1, 0])
    x2 = number(t.source, [0, 1, 0, 0])
    assert any(push_along(t, x1).coeffs)
    assert not any(push_along(t, x2).coeffs)
