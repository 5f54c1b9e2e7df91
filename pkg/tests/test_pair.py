import pytest
from hypothesis import given
from hypothesis import strategies as st

from helgason_super.core import bracket, elementary
from helgason_super.pair import InvalidPairParams, PairParams, build_pair, grid_pairs, kp_split, theta_apply


def test_grid_has_79_pairs():
    g = grid_pairs(6)
    assert len(g) == 79 and len(set(g)) == 79
    assert all(p.p >= p.q and p.r >= p.s and 1 <= p.n <= 6 for p in g)


@pytest.mark.parametrize("args,needle", [
    ((1, 2, 1, 1), "p >= q"),
    ((2, 1, 0, 1), r"\(p-q\)\(r-s\) >= 0"),
    ((1, 1, 0, 1), "r >= s"),
    ((2, 1, 1, 1), None),
    ((3, 1, 1, 1), None),
    ((2, 2, 2, 1), None),
    ((1, 1, 2, 2), None),
    ((3, 1, 1, 1), None),
    ((2, 2, 3, 1), None),
    ((3, 2, 1, 1), None),
    ((0, 0, 0, 0), r"p \+ q \+ r \+ s >= 1"),
    ((-1, 0, 1, 0), "nonnegative"),
])
def test_validation(args, needle):
    if needle is None:
        PairParams(*args)
        return
    with pytest.raises(InvalidPairParams, match=needle):
        PairParams(*args)


def test_swapped_tuple_message_names_the_relabelling():
    with pytest.raises(InvalidPairParams, match=r"use \(2,1,1,1\)"):
        PairParams(1, 2, 1, 1)


@pytest.mark.parametrize("params", grid_pairs(4))
def test_cartan_basis_commutes_and_a_lies_in_p(params):
    pair = build_pair(params)
    hs = pair.h_basis
    assert len(hs) == params.n
    for x in hs:
        for y in hs:
            assert bracket(x, y).is_zero()
    for a in pair.a_basis:
        k, p = kp_split(pair, a)
        assert k.is_zero() and p == a


@given(st.sampled_from(grid_pairs(4)), st.data())
def test_theta_is_an_involutive_automorphism(params, data):
    pair = build_pair(params)
    n = params.n
    i, j, k, l = (data.draw(st.integers(1, n)) for _ in range(4))
    x, y = elementary(params.dims, i, j), elementary(params.dims, k, l)
    assert theta_apply(pair, theta_apply(pair, x)) == x
    assert theta_apply(pair, bracket(x, y)) == bracket(theta_apply(pair, x), theta_apply(pair, y))


def test_labels_for_2121():
    pair = build_pair(PairParams(2, 1, 2, 1))
    assert pair.h_labels == ("bB1", "cB1", "bF1", "cF1", "aB1", "aF1")
    assert pair.a_labels == ("aB1", "aF1")
    assert str(pair.params) == "(2,1|2,1)"
