import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hilbadhm.corpus import monomial_ideal_generators, point_ideal_generators, random_points, random_staircase
from hilbadhm.errors import MissingGroebnerBasis, ParseError
from hilbadhm.exactalg import Matrix
from hilbadhm.poly import (
    LEX,
    IdealPresentation,
    MonomialOrder,
    Poly,
    colength,
    eval_poly_at_matrices,
    groebner,
    is_groebner_basis,
    normal_form,
    parse_poly,
    parse_poly_lines,
    reduce_poly,
)


def P(text, n=2):
    return parse_poly(text, n)


def test_groebner_examples():
    j = groebner([P("x0"), P("x1")])
    assert j.reduced_gb == [P("x1"), P("x0")] or set(j.reduced_gb) == {P("x0"), P("x1")}
    assert j.std_monomials == [(0, 0)] and j.colength == 1

    j = groebner([P("x0^2"), P("x1")])
    assert j.reduced_gb == [P("x1"), P("x0^2")]
    assert j.std_monomials == [(0, 0), (1, 0)]

    j = groebner([P("x0^2 - x0"), P("x1")])
    assert j.colength == 2 and j.std_monomials == [(0, 0), (1, 0)]


def test_colength_examples():
    assert groebner([P("x0"), P("x1")]).colength == 1
    assert groebner([P("x0^2"), P("x0*x1"), P("x1^2")]).colength == 3
    assert groebner([P("x0")]).colength is None


def test_normal_form_examples():
    j = groebner([P("x0^2"), P("x1")])
    assert normal_form(P("x0^2"), j).is_zero()
    assert normal_form(P("x0*x1 + 3"), j) == Poly.constant(3, 2)
    assert normal_form(Poly.constant(1, 2), j) == Poly.constant(1, 2)


def test_normal_form_requires_basis():
    bare = IdealPresentation([P("x0")], nvars=2)
    with pytest.raises(MissingGroebnerBasis):
        normal_form(P("x0"), bare)
    with pytest.raises(MissingGroebnerBasis):
        colength(bare)


def test_eval_at_matrices_examples():
    j2 = Matrix([[0, 0], [1, 0]])
    assert eval_poly_at_matrices(Poly.constant(1, 2), [j2, j2]) == Matrix.identity(2)
    assert eval_poly_at_matrices(P("x0*x1"), [Matrix.diag([1, 2]), Matrix.diag([3, 4])]) == Matrix.diag([3, 8])
    assert eval_poly_at_matrices(P("x0^2"), [j2, Matrix.zeros(2, 2)]).is_zero()


def test_parser_grammar():
    p = P("2*x0^2*x1 - 3/2*x1 + (x0 + 1)**2 - x0^2")
    assert p == Poly({(2, 1): 2, (0, 1): Fraction(-3, 2), (1, 0): 2, (0, 0): 1})
    assert P("-(x0 - x1)") == P("x1 - x0")
    assert P(str(p)) == p


def test_parser_errors_carry_position():
    with pytest.raises(ParseError) as e:
        P("x0 + y")
    assert e.value.position == 5
    with pytest.raises(ParseError):
        P("x0 +")
    with pytest.raises(ParseError):
        P("x5", 2)


def test_parse_lines_skips_comments():
    gens = parse_poly_lines("# an ideal\nx0^2\n\nx1  # second\n", 2)
    assert gens == [P("x0^2"), P("x1")]


def test_lex_and_grevlex_differ_but_agree_on_ideal():
    gens = [P("x0^2 - x1"), P("x1^2 - x1")]
    a, b = groebner(gens), groebner(gens, LEX)
    assert a.colength == b.colength == 4
    for g in b.reduced_gb:
        assert normal_form(g, a).is_zero()


def test_unknown_order_rejected():
    with pytest.raises(ValueError):
        MonomialOrder("revlex-ish")


@st.composite
def zero_dim_ideals(draw):
    rng = random.Random(draw(st.integers(0, 10**6)))
    n = draw(st.integers(1, 3))
    if draw(st.booleans()):
        gens = monomial_ideal_generators(random_staircase(n, draw(st.integers(1, 5)), rng), n)
    else:
        gens = point_ideal_generators(random_points(n, draw(st.integers(1, 4)), rng), n, rng)
    # scramble with a random combination so generators are not already a basis
    if len(gens) > 1:
        gens = gens + [gens[0] * Poly.var(0, n) + gens[-1] * 2]
    return n, gens


@given(zero_dim_ideals(), st.sampled_from(["grevlex", "lex", "deglex"]))
def test_colength_independent_of_order(ideal, order):
    _, gens = ideal
    assert groebner(gens, order).colength == groebner(gens).colength


@given(zero_dim_ideals(), st.sampled_from(["grevlex", "lex"]))
def test_reduced_basis_satisfies_buchberger(ideal, order):
    _, gens = ideal
    j = groebner(gens, order)
    assert is_groebner_basis(j.reduced_gb, order)
    for g in gens:
        assert normal_form(g, j).is_zero()
    for g in j.reduced_gb:
        assert g.leading_coefficient(j.order) == 1


@given(zero_dim_ideals(), st.integers(0, 10**6))
def test_normal_form_is_congruent_and_reduced(ideal, seed):
    n, gens = ideal
    j = groebner(gens)
    rng = random.Random(seed)
    p = Poly({tuple(rng.randint(0, 3) for _ in range(n)): rng.randint(-3, 3) for _ in range(4)}, n)
    r = normal_form(p, j)
    std = set(j.std_monomials)
    assert set(r.terms) <= std
    # p - r lies in the ideal: it reduces to zero
    assert reduce_poly(p - r, j.reduced_gb, j.order).is_zero()
    assert normal_form(r, j) == r
