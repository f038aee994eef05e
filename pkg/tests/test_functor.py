import math
import random
from fractions import Fraction

import pytest
import sympy

from weilad.algebra import base_algebra, dual_algebra, jet_algebra, tensor
from weilad.corpus import polyrat_maps, random_point, smooth_maps
from weilad.errors import AlgebraMismatch, BadParameter
from weilad.expr import parse_smooth_map
from weilad.functor import (
    eval_map,
    fd_oracle,
    flatten_nested,
    jet,
    lift_eval,
    nest_iso,
    nest_iso_inv,
    nested_inputs,
    partials,
)
from weilad.numbers import constant, number, variable

D = dual_algebra(1)
J2 = jet_algebra(2)


def test_lift_square_on_dual():
    f = parse_smooth_map("x^2", ["x"])
    out = lift_eval(f, D, [variable(D, 0, Fraction(3))])[0]
    assert out == number(D, [9, 6])


def test_lift_over_base_is_plain_evaluation():
    rng = random.Random(11)
    base = base_algebra()
    for entry in polyrat_maps():
        point = random_point(entry, rng, "rational")
        plain = eval_map(entry.smooth_map, point)
        lifted = lift_eval(entry.smooth_map, base, [constant(base, p) for p in point])
        assert [v.coeffs[0] for v in lifted] == plain, entry.name


def test_lift_checks_inputs():
    f = parse_smooth_map("x", ["x"])
    with pytest.raises(AlgebraMismatch):
        lift_eval(f, D, [variable(J2, 0, Fraction(0))])


def test_jet_of_constant():
    f = parse_smooth_map("7/2 + 0*x", ["x"])
    t = jet(f, Fraction(0), 3)
    assert t.value((0,)) == (Fraction(7, 2),)
    for i in range(1, 4):
        assert t.value((i,)) == (Fraction(0),)


def test_jet_raw_coefficients_of_square():
    f = parse_smooth_map("x^2", ["x"])
    t = jet(f, Fraction(3), 2, normalization="raw-coefficient")
    assert [t.value((i,))[0] for i in range(3)] == [9, 6, 1]
    # derivative normalization multiplies factorials back in
    assert t.derivative((2,))[0] == 2


def test_jet_of_sine_matches_series():
    f = parse_smooth_map("sin(x)", ["x"])
    t = jet(f, 0.0, 5, normalization="raw-coefficient")
    want = [0.0, 1.0, 0.0, -1 / 6, 0.0, 1 / 120]
    for i, w in enumerate(want):
        assert math.isclose(t.value((i,))[0], w, rel_tol=1e-12, abs_tol=1e-15)


def test_jet_order_zero():
    f = parse_smooth_map("exp(x)", ["x"])
    t = jet(f, 0.5, 0)
    assert math.isclose(t.value((0,))[0], math.exp(0.5), rel_tol=1e-15)


def test_partials_of_product():
    f = parse_smooth_map("x*y", ["x", "y"])
    t = partials(f, (Fraction(2), Fraction(5)), (1, 1))
    assert t.derivative((1, 1))[0] == 1
    assert t.derivative((1, 0))[0] == 5
    assert t.derivative((0, 1))[0] == 2


def test_partials_of_linear_map_vanish_beyond_first_order():
    f = parse_smooth_map("2*x - 3*y", ["x", "y"])
    t = partials(f, (Fraction(1), Fraction(1)), (2, 2))
    for m in t.algebra.basis:
        exps = tuple(m.exponent(i) for i in range(2))
        if sum(exps) >= 2:
            assert t.value(exps) == (Fraction(0),)


def test_partials_mixed_exponential():
    f = parse_smooth_map("exp(x*y)", ["x", "y"])
    t = partials(f, (0.0, 0.0), (1, 1))
    assert math.isclose(t.derivative((1, 1))[0], 1.0, rel_tol=1e-12)
    assert math.isclose(fd_oracle(f, (0.0, 0.0), (1, 1)), 1.0, rel_tol=1e-6)


def test_partials_with_zero_order_variable():
    f = parse_smooth_map("x*y^2", ["x", "y"])
    t = partials(f, (Fraction(3), Fraction(2)), (0, 2))
    assert t.derivative((0, 2))[0] == 6  # d2/dy2 = 2x


# -- nesting ---------------------------------------------------------------


def test_nest_round_trip_exact():
    rng = random.Random(5)
    t = tensor(J2, D).algebra
    for _ in range(50):
        v = number(t, [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(t.dim)])
        nested = nest_iso(J2, D, v)
        assert nest_iso_inv(J2, D, nested) == v


def test_nest_of_unit():
    t = tensor(J2, D).algebra
    nested = nest_iso(J2, D, constant(t, Fraction(1)))
    assert nested[0] == constant(J2, Fraction(1))
    assert all(not n for n in nested[1:])


def test_nest_rejects_foreign_algebra():
    with pytest.raises(AlgebraMismatch):
        nest_iso(J2, D, constant(D, Fraction(1)))


def test_two_evaluation_routes_agree():
    f = parse_smooth_map("x^2", ["x"])
    t = tensor(D, D).algebra
    seed = number(t, [3, 1, 1, 0])  # 3 + x_1 + x_2
    direct = lift_eval(f, t, [seed])[0]
    nested_out = lift_eval(f, D, nested_inputs(D, D, [seed]))[0]
    assert flatten_nested(D, D, nested_out) == direct
    # hand oracle: (3 + x_1 + x_2)^2 = 9 + 6x_1 + 6x_2 + 2x_1x_2
    assert direct == number(t, [9, 6, 6, 2])


# -- finite differences ----------------------------------------------------


def test_fd_second_derivative_of_cube():
    f = parse_smooth_map("x^3", ["x"])
    assert math.isclose(fd_oracle(f, (1.0,), (2,)), 6.0, rel_tol=1e-6)


def test_fd_of_constant_is_zero():
    f = parse_smooth_map("4 + 0*x", ["x"])
    assert abs(fd_oracle(f, (0.3,), (1,))) < 1e-9
    assert abs(fd_oracle(f, (0.3,), (2,))) < 1e-6


def test_fd_mixed_partial_of_wave():
    f = parse_smooth_map("sin(x)*cos(y)", ["x", "y"])
    got = fd_oracle(f, (0.3, 0.7), (1, 1))
    assert math.isclose(got, -math.cos(0.3) * math.sin(0.7), rel_tol=1e-5)


def test_fd_rejects_high_orders():
    f = parse_smooth_map("x^3", ["x"])
    with pytest.raises(BadParameter):
        fd_oracle(f, (0.0,), (5,))


# -- extraction vs symbolic differentiation ---------------------------------


def _sympy_exprs(entry):
    text_vars = entry.smooth_map.var_names
    syms = sympy.symbols(" ".join(text_vars)) if len(text_vars) > 1 else (sympy.Symbol(text_vars[0]),)
    if not isinstance(syms, tuple):
        syms = (syms,)
    local = dict(zip(text_vars, syms))
    local.update({"exp": sympy.exp, "log": sympy.log, "sin": sympy.sin, "cos": sympy.cos,
                  "sqrt": sympy.sqrt, "tan": sympy.tan, "tanh": sympy.tanh,
                  "atan": sympy.atan, "recip": lambda v: 1 / v})
    root = sympy.parsing.sympy_parser.parse_expr
    texts = _output_texts(entry.name)
    return syms, [root(t, local_dict=local, evaluate=True) for t in texts]


def _output_texts(name):
    from importlib import resources

    raw = resources.files("weilad").joinpath("data/corpus/%s.fn" % name).read_text()
    lines = [ln.strip() for ln in raw.splitlines() if ln.strip() and not ln.startswith("#")]
    return [ln.replace("^", "**") for ln in lines[1:]]


@pytest.mark.parametrize("entry", smooth_maps(), ids=lambda e: e.name)
def test_extraction_matches_symbolic_derivatives(entry):
    syms, exprs = _sympy_exprs(entry)
    point = entry.float_point
    subs = {s: sympy.Float(p, 30) for s, p in zip(syms, point)}
    if entry.arity == 1:
        table = jet(entry.smooth_map, point[0], 4)
        for i in range(5):
            want = float(sympy.diff(exprs[0], syms[0], i).subs(subs).evalf(30))
            got = table.derivative((i,))[0]
            assert math.isclose(got, want, rel_tol=1e-12, abs_tol=1e-12), (entry.name, i)
    else:
        orders = (2,) * entry.arity
        table = partials(entry.smooth_map, point, orders)
        for m in table.algebra.basis:
            exps = tuple(m.exponent(i) for i in range(entry.arity))
            want = exprs[0]
            for s, e in zip(syms, exps):
                want = sympy.diff(want, s, e)
            want = float(want.subs(subs).evalf(30))
            got = table.derivative(exps)[0]
            assert math.isclose(got, want, rel_tol=1e-12, abs_tol=1e-12), (entry.name, exps)


def test_three_level_nesting_tower_agrees_with_flat_tensor():
    # lift over (W1 (x) W2) (x) W3 vs nesting over W3 with (W1 (x) W2)-coefficients
    # vs nesting twice; all three must agree after reindexing
    f = parse_smooth_map("x^3 - 2*x + 1/(2 + x)", ["x"])
    w12 = tensor(J2, D).algebra
    t = tensor(w12, D).algebra
    rng = random.Random(17)
    seed = number(t, [Fraction(rng.randint(1, 4), rng.randint(1, 3))]
                  + [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(t.dim - 1)])
    flat = lift_eval(f, t, [seed])[0]

    once = lift_eval(f, D, nested_inputs(w12, D, [seed]))[0]
    assert flatten_nested(w12, D, once) == flat

    # unpack the inner tensor coefficients one more level: scalars are now
    # numbers whose coefficients are themselves numbers
    inner_nested = [number(D, [number(D, nest_iso(J2, D, c)) for c in nest_iso(w12, D, seed)])]
    deep = lift_eval(f, D, inner_nested)[0]
    rebuilt = flatten_nested(
        w12, D,
        number(D, tuple(flatten_nested(J2, D, c) for c in deep.coeffs)),
    )
    assert rebuilt == flat


def test_composition_jets_match_symbolic_to_order_six():
    cases = [
        ("exp(sin(x))", 0.5),
        ("log(2 + sin(x))", 0.4),
        ("tan(x/2)", 0.9),
        ("1/sqrt(1 + exp(x))", 0.3),
    ]
    t_sym = sympy.Symbol("x")
    env = {"x": t_sym, "exp": sympy.exp, "log": sympy.log, "sin": sympy.sin,
           "sqrt": sympy.sqrt, "tan": sympy.tan}
    for text, at in cases:
        f = parse_smooth_map(text, ["x"])
        table = jet(f, at, 6)
        expr = sympy.parsing.sympy_parser.parse_expr(text.replace("^", "**"), local_dict=env)
        for i in range(7):
            want = float(sympy.diff(expr, t_sym, i).subs(t_sym, sympy.Rational(at)).evalf(30))
            got = table.derivative((i,))[0]
            assert math.isclose(got, want, rel_tol=1e-11, abs_tol=1e-11), (text, i, got, want)
