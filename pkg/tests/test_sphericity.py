from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helgason_super.cfunction import high_enough, km_nonvanishing
from helgason_super.pair import PairParams, build_pair, grid_pairs
from helgason_super.roots import positive_restricted_system
from helgason_super.sphericity import (
    atypical_flag,
    classify,
    cond_even_lambda_alpha,
    cond_gl_pairing,
    enumerate_spherical,
    gl_dominance_check,
    self_dual_check,
)
from helgason_super.weights import AStarWeight as A

P1111 = PairParams(1, 1, 1, 1)
SP1111 = positive_restricted_system(build_pair(P1111))


def test_even_lambda_alpha_examples():
    assert cond_even_lambda_alpha(SP1111, A([0], [0]))
    assert cond_even_lambda_alpha(SP1111, A([-2], [0]))
    lam = A([-1], [0])
    assert cond_even_lambda_alpha(SP1111, lam) and not cond_gl_pairing(SP1111, lam)


def test_gl_pairing_examples():
    assert cond_gl_pairing(SP1111, A([0], [0]))
    assert sorted(A([-2], [0]).pair(d.root) for d in SP1111) == [0, 2, 2, 4]
    assert cond_gl_pairing(SP1111, A([-2], [0]))
    assert sorted(A([-2], [2]).pair(d.root) for d in SP1111) == [0, 4, 4, 4]
    assert cond_gl_pairing(SP1111, A([-2], [2]))


def test_dominance_examples():
    assert gl_dominance_check(P1111, A([0], [0]))
    assert gl_dominance_check(P1111, A([-2], [0]))
    assert not gl_dominance_check(P1111, A([-2], [4]))
    assert not gl_dominance_check(P1111, A([Fraction(-1, 2)], [0]))


def test_enumeration_examples():
    assert enumerate_spherical(P1111, 0) == [A([0], [0])]
    assert enumerate_spherical(P1111, 2) == [A([0], [0]), A([-2], [0]), A([-2], [2])]


def _brute(params, bound):
    q, s = params.q, params.s
    out = set()
    for c in product(range(-bound, bound + 1), repeat=q + s):
        chain = [-x for x in c[:q]] + list(c[q:])
        if all(x % 2 == 0 for x in c) and all(a >= b for a, b in zip(chain, chain[1:])) and (not chain or chain[-1] >= 0):
            out.add(A(list(c[:q]), list(c[q:])))
    return out


@pytest.mark.parametrize("params", [PairParams(2, 1, 1, 1), PairParams(2, 2, 1, 1), PairParams(2, 2, 2, 2)], ids=str)
def test_enumeration_matches_brute_force(params):
    got = enumerate_spherical(params, 4)
    assert len(got) == len(set(got))
    assert set(got) == _brute(params, 4)


def test_atypical_examples():
    assert atypical_flag(P1111) == (False, None)
    flag, wit = atypical_flag(PairParams(2, 1, 2, 1))
    assert flag and "cB1-cF1" in wit
    assert not atypical_flag(PairParams(2, 1, 1, 1))[0]


def test_self_dual_examples():
    assert self_dual_check(P1111, A([0], [0]))
    assert self_dual_check(P1111, A([-2], [0]))
    params = PairParams(2, 2, 2, 1)
    assert all(self_dual_check(params, lam) for lam in enumerate_spherical(params, 6))


def test_classify_examples():
    r0 = classify(P1111, A([0], [0]))
    assert r0.spherical_necessary and not r0.high_enough and not r0.c_nonzero_at_shift and r0.self_dual
    r1 = classify(P1111, A([-2], [0]))
    assert r1.gl_dominance and r1.high_enough and r1.c_nonzero_at_shift and r1.self_dual
    r2 = classify(P1111, A([-2], [2]))
    assert r2.gl_dominance and not r2.high_enough and not r2.c_nonzero_at_shift


def test_negative_norm_odd_root_is_flagged():
    rep = classify(PairParams(2, 1, 1, 1), A([-2], [0]))
    assert rep.witnesses["negative_norm_odd_anisotropic"] == ["i*aF1"]


@given(st.sampled_from(grid_pairs(6)), st.data())
def test_cone_closed_under_addition(params, data):
    cone = enumerate_spherical(params, 6)
    a, b = data.draw(st.sampled_from(cone)), data.draw(st.sampled_from(cone))
    assert gl_dominance_check(params, a + b)


@pytest.mark.parametrize("params", grid_pairs(6), ids=str)
def test_dominance_implies_pairing(params):
    sp = positive_restricted_system(build_pair(params))
    for lam in enumerate_spherical(params, 6):
        assert cond_gl_pairing(sp, lam)


@pytest.mark.parametrize("params", grid_pairs(6), ids=str)
def test_dominant_and_high_enough_gives_nonvanishing(params):
    sp = positive_restricted_system(build_pair(params))
    for lam in enumerate_spherical(params, 8):
        if high_enough(sp, lam):
            assert km_nonvanishing(sp, lam)
