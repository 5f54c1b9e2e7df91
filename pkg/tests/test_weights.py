from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helgason_super.core import GaussianRational as GR
from helgason_super.pair import grid_pairs
from helgason_super.weights import AStarWeight, HWeight, astar_from_a_values, h_values, hweight_from_values

from conftest import fractions

pairs = st.sampled_from(grid_pairs(5))


@st.composite
def astar(draw, params):
    return AStarWeight([draw(fractions) for _ in range(params.q)], [draw(fractions) for _ in range(params.s)])


@given(pairs, st.data())
def test_embedding_is_isometric(params, data):
    a, b = data.draw(astar(params)), data.draw(astar(params))
    assert a.pair(b) == a.embed(params).pair(b.embed(params))


@given(pairs, st.data())
def test_h_values_round_trip(params, data):
    d = [data.draw(fractions) for _ in range(params.p + params.q)]
    e = [data.draw(fractions) for _ in range(params.r + params.s)]
    w = HWeight(d, e)
    assert hweight_from_values(h_values(w, params), params) == w


@given(pairs, st.data())
def test_astar_from_a_values_inverts_a_coordinates(params, data):
    lam = data.draw(astar(params))
    vals = h_values(lam.embed(params), params)[params.n - params.q - params.s:]
    assert astar_from_a_values(vals, params) == lam


def test_i_aB_conventions():
    w = AStarWeight.i_aB(1, 1, 1)
    assert w.ldelta == (Fraction(-1, 2),) and w.leps == (0,)
    assert str(w) == "i*aB1"
    assert str(AStarWeight.i_aB(1, 1, 1, 2)) == "2i*aB1"
    assert str(AStarWeight.i_aB(1, 1, 1) - AStarWeight.i_aF(1, 1, 1)) == "i*(aB1-aF1)"


def test_signature_form_signs():
    b, f = AStarWeight.i_aB(1, 1, 1), AStarWeight.i_aF(1, 1, 1)
    assert b.norm() == Fraction(1, 2) and f.norm() == Fraction(-1, 2) and b.pair(f) == 0


def test_shape_mismatch():
    with pytest.raises(ValueError):
        AStarWeight([1], []).pair(AStarWeight([1], [0]))


def test_complex_coefficients_allowed():
    w = AStarWeight([GR(1, 1)], [])
    assert not w.is_real()
    assert w.coords_str() == "(1+1*i; )" or "i" in w.coords_str()


def test_immutability():
    w = AStarWeight([1], [2])
    with pytest.raises(AttributeError):
        w.ldelta = (0,)
