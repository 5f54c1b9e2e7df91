import pytest
from hypothesis import given
from hypothesis import strategies as st

from helgason_super.chains import (
    ChainError,
    DeltaEpsChain,
    SimpleReflection,
    ReflectionChain,
    apply_chain,
    canonical_chain,
    compatible_chain,
    even_only_action,
    is_palindrome,
    reversal_chain,
    simple_system,
    swap,
    swap_lemma_prediction,
    test_family as family,
)
from helgason_super.pair import PairParams, grid_pairs
from helgason_super.weights import HWeight

kinds = st.text(alphabet="de", min_size=2, max_size=7)


@given(kinds, st.data())
def test_swap_matches_case_analysis(k, data):
    chain = canonical_chain(k)
    i = data.draw(st.integers(0, len(chain) - 2))
    assert simple_system(swap(chain, i)) == swap_lemma_prediction(chain, i)


@given(kinds)
def test_reversal_chain_reverses(k):
    chain = canonical_chain(k)
    rc = reversal_chain(chain)
    n = len(chain)
    assert len(rc) == n * (n - 1) // 2
    assert rc.target() == chain.reversed()
    assert rc.n_odd == k.count("d") * k.count("e")


def test_1111_reversal():
    chain = compatible_chain(PairParams(1, 1, 1, 1))
    assert str(chain) == "d2 e2 e1 d1"
    rc = reversal_chain(chain)
    assert (len(rc), rc.n_odd, rc.n_even) == (6, 4, 2)
    assert str(rc.target()) == "d1 e1 e2 d2"
    w = HWeight([-2, 2], [0, 0])
    assert apply_chain(w, rc) == -w


@pytest.mark.parametrize("params,expected", [
    (PairParams(2, 1, 1, 1), "d3 e2 d2 e1 d1"),
    (PairParams(2, 1, 2, 1), "d3 e3 d2 e2 e1 d1"),
    (PairParams(1, 0, 0, 0), "d1"),
    (PairParams(2, 2, 1, 0), "d3 d4 e1 d2 d1"),
])
def test_compatible_chain_examples(params, expected):
    assert str(compatible_chain(params)) == expected


@pytest.mark.parametrize("params", grid_pairs(6), ids=str)
def test_compatible_chain_uses_every_symbol_once(params):
    chain = compatible_chain(params)
    assert len(chain) == params.n
    assert sorted(s.kind + str(s.index) for s in chain) == sorted(
        [f"d{i}" for i in range(1, params.p + params.q + 1)] + [f"e{j}" for j in range(1, params.r + params.s + 1)])


@pytest.mark.parametrize("k", ["dd", "de", "ded", "dee", "edde", "deed", "ddee"])
def test_palindromes_are_exactly_the_odd_blind_chains(k):
    chain = canonical_chain(k)
    rc = reversal_chain(chain)
    agree = all(apply_chain(w, rc) == even_only_action(w, rc) for w in family(chain.shape))
    assert agree == is_palindrome(chain)


def test_invalid_reflection_chain():
    chain = DeltaEpsChain.parse("d1 e1 d2")
    bad = ReflectionChain((SimpleReflection(chain.symbols[0], chain.symbols[2]),), chain)
    assert not bad.is_valid()
    with pytest.raises(ChainError):
        bad.target()


@pytest.mark.parametrize("text", ["d1 d1", "x1", "d0", "d"])
def test_parse_rejects(text):
    with pytest.raises(ChainError):
        DeltaEpsChain.parse(text)


def test_family_contents():
    fam = family((1, 1))
    assert HWeight([-1], [0]) in fam and HWeight([1], [-1]) in fam
    assert len(fam) == len(set(fam))


def test_odd_reflection_rule():
    chain = DeltaEpsChain.parse("d1 e1")
    r = reversal_chain(chain).steps[0]
    assert r.is_odd
    # <d1, d1 - e1> = 1 != 0 so the root is subtracted
    assert apply_chain(HWeight([1], [0]), ReflectionChain((r,), chain)) == HWeight([0], [1])
    # d1 - e1 is isotropic, so it is fixed
    w = HWeight([1], [-1])
    assert w.pair(r.root((1, 1))) == 0
    assert apply_chain(w, ReflectionChain((r,), chain)) == w
