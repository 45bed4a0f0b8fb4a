import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from modinvar.gfq import build_field
from modinvar.groups import GroupElement
from modinvar.mvpoly import (InexactDivisionError, LinearForm, ParseError,
                             Polynomial, SpaceMismatchError, VariableSpace,
                             balanced_product, format_polynomial,
                             monomials_of_degree, parse_polynomial)

F2 = build_field(2)
F3 = build_field(3)
F4 = build_field(2, 2)
F9 = build_field(3, 2)


def space(field, *names):
    return VariableSpace(field, names)


def random_poly(rng, sp, max_terms=6, max_deg=4):
    out = sp.zero()
    for _ in range(rng.randrange(max_terms + 1)):
        e = tuple(rng.randrange(max_deg) for _ in range(sp.dim))
        out = out + sp.monomial(e, rng.randrange(1, sp.field.q))
    return out


def test_char2_frobenius_square():
    sp = space(F2, "x1", "x2")
    x1, x2 = sp.variables()
    assert (x1 + x2) ** 2 == x1 ** 2 + x2 ** 2


def test_char3_frobenius_cube():
    sp = space(F3, "y1", "x1")
    y1, x1 = sp.variables()
    assert (y1 + x1) ** 3 == y1 ** 3 + x1 ** 3


def test_mul_identity():
    sp = space(F3, "x1", "x2")
    f = parse_polynomial(sp, "x1^2 + 2*x2")
    assert f * sp.one() == f
    assert f * sp.zero() == sp.zero()


def test_degree_sentinel():
    sp = space(F2, "x1")
    assert sp.zero().degree() == -1
    assert sp.one().degree() == 0
    assert sp.variable("x1").degree() == 1


def test_pow_matches_repeated_multiplication():
    sp = space(F3, "x1", "x2")
    f = parse_polynomial(sp, "x1 + 2*x2 + x1*x2")
    acc = sp.one()
    for k in range(7):
        assert f ** k == acc
        acc = acc * f


def test_frobenius_power_equals_naive():
    sp = space(F9, "x1", "x2")
    x1, x2 = sp.variables()
    f = x1 + x2.scale(F9.scalar([1, 1]))
    naive = sp.one()
    for _ in range(9):
        naive = naive * f
    assert f ** 9 == naive


def test_exact_divide_factorization():
    sp = space(F2, "x1", "x2")
    x1, x2 = sp.variables()
    f = x1 ** 2 * x2 + x1 * x2 ** 2
    assert f.exact_divide(x1 + x2) == x1 * x2
    assert f.exact_divide(f) == sp.one()
    with pytest.raises(InexactDivisionError):
        x1.exact_divide(x2)
    with pytest.raises(ZeroDivisionError):
        x1.exact_divide(sp.zero())


@pytest.mark.parametrize("field", [F2, F3, F9])
def test_exact_divide_random_products(field):
    rng = random.Random(7)
    sp = space(field, "x1", "x2", "x3")
    for _ in range(25):
        f = random_poly(rng, sp)
        g = random_poly(rng, sp)
        if g.is_zero():
            continue
        assert (f * g).exact_divide(g) == f


def test_substitute_identity_and_simple():
    sp = space(F3, "y1", "x1")
    y1, x1 = sp.variables()
    f = y1 ** 2
    assert f.substitute({}) == f
    assert f.substitute({"y1": x1}) == x1 ** 2
    assert y1.substitute({"y1": y1 ** 2 + x1}) == y1 ** 2 + x1


def test_substitute_mixed_space_error():
    sp = space(F3, "y1", "x1")
    other = space(F2, "y1", "x1")
    with pytest.raises((SpaceMismatchError, Exception)):
        sp.variable("y1").substitute({"y1": other.variable("x1")})


def test_act_identity_and_permutation():
    sp = space(F3, "x1", "x2")
    x1, x2 = sp.variables()
    ident = GroupElement(F3, ((1, 0), (0, 1)))
    swap = GroupElement(F3, ((0, 1), (1, 0)))
    f = x1 ** 2 + x1 * x2
    assert f.act(ident) == f
    assert x1.act(swap) == x2


def test_act_dimension_mismatch():
    sp = space(F3, "x1", "x2")
    g = GroupElement(F3, ((1,),))
    with pytest.raises(ValueError):
        sp.variable("x1").act(g)


def evaluate_oracle_points(field, dim):
    return itertools.product(range(field.q), repeat=dim)


def test_act_transvection_pointwise_oracle():
    """act is pinned by evaluate(f.g, v) == evaluate(f, g.v) on all points."""
    sp = space(F2, "y1", "y2")
    g = GroupElement(F2, ((1, 1), (0, 1)))  # g.e2 = e2 + e1
    y1 = sp.variable("y1")
    fy = y1.act(g)
    for v in evaluate_oracle_points(F2, 2):
        assert fy.evaluate(v) == y1.evaluate(g.apply(v))


@pytest.mark.parametrize("field,dim", [(F2, 2), (F3, 2), (F2, 3)])
def test_act_evaluation_consistency_random(field, dim):
    rng = random.Random(99)
    sp = space(field, *[f"z{i}" for i in range(dim)])
    for _ in range(10):
        f = random_poly(rng, sp)
        mat = None
        while mat is None:
            cand = tuple(tuple(rng.randrange(field.q) for _ in range(dim))
                         for _ in range(dim))
            try:
                g = GroupElement(field, cand)
                mat = cand
            except ValueError:
                continue
        fg = f.act(g)
        for v in evaluate_oracle_points(field, dim):
            assert fg.evaluate(v) == f.evaluate(g.apply(v))


def test_act_is_right_action_and_algebra_map():
    rng = random.Random(3)
    sp = space(F3, "z0", "z1")
    elems = []
    for cand in itertools.product(range(3), repeat=4):
        try:
            elems.append(GroupElement(F3, (cand[:2], cand[2:])))
        except ValueError:
            pass
    assert len(elems) == 48
    for _ in range(15):
        f = random_poly(rng, sp)
        h = random_poly(rng, sp)
        g1, g2 = rng.choice(elems), rng.choice(elems)
        assert f.act(g1 * g2) == f.act(g1).act(g2)
        assert (f * h).act(g1) == f.act(g1) * h.act(g1)
        assert f.act(g1).degree() == f.degree()


def test_parse_examples():
    sp = space(F2, "x1", "x2")
    f = parse_polynomial(sp, "x1^2*x2 + x1*x2^2")
    assert len(f) == 2
    assert format_polynomial(f) == "x1^2*x2 + x1*x2^2"
    assert format_polynomial(sp.zero()) == "0"


def test_parse_signs_and_coefficients():
    sp = space(F3, "x1", "x2")
    f = parse_polynomial(sp, "-x1 + 2*x2 - x1")
    assert f == sp.variable("x1") + sp.variable("x2").scale(2)
    g = parse_polynomial(space(F4, "x1"), "(1+t)*x1^2")
    assert g.coefficient((2,)) == F4.scalar([1, 1])


def test_parse_error_position():
    sp = space(F2, "x1")
    with pytest.raises(ParseError):
        parse_polynomial(sp, "x1 + + x1")
    with pytest.raises(ParseError):
        parse_polynomial(sp, "bogus")


@st.composite
def poly_strategy(draw, field=F9, names=("x1", "x2", "x3")):
    sp = VariableSpace(field, names)
    n_terms = draw(st.integers(min_value=0, max_value=50))
    out = sp.zero()
    for _ in range(n_terms):
        e = tuple(draw(st.integers(min_value=0, max_value=6))
                  for _ in range(len(names)))
        c = draw(st.integers(min_value=1, max_value=field.q - 1))
        out = out + sp.monomial(e, c)
    return out


@settings(max_examples=40, deadline=None)
@given(poly_strategy())
def test_text_roundtrip_random(f):
    assert parse_polynomial(f.space, format_polynomial(f)) == f


@settings(max_examples=40, deadline=None)
@given(poly_strategy())
def test_json_roundtrip_random(f):
    assert Polynomial.from_json(f.space, f.to_json()) == f


def test_linear_form_views():
    sp = space(F3, "y1", "x1")
    lf = LinearForm.from_coefficients(sp, [2, 1])
    assert lf.coefficient_indices() == [2, 1]
    assert lf == sp.variable("y1").scale(2) + sp.variable("x1")
    with pytest.raises(ValueError):
        LinearForm.from_polynomial(sp.one())


def test_balanced_product_equals_sequential():
    rng = random.Random(1)
    sp = space(F3, "x1", "x2")
    factors = [random_poly(rng, sp, max_terms=3, max_deg=2) + sp.one()
               for _ in range(9)]
    seq = sp.one()
    for f in factors:
        seq = seq * f
    assert balanced_product(factors, sp) == seq


def test_monomials_of_degree():
    sp = space(F2, "x1", "x2", "x3")
    mons = monomials_of_degree(sp, 2)
    assert len(mons) == 6
    assert len(set(mons)) == 6
    assert all(sum(e) == 2 for e in mons)


def test_grevlex_leading_term():
    sp = space(F2, "x1", "x2")
    f = parse_polynomial(sp, "x1^2*x2 + x1*x2^2")
    e, c = f.leading_term()
    assert e == (2, 1)
