import pytest
from hypothesis import given
from hypothesis import strategies as st

from hadamard_forge.errors import LengthMismatch, RangeOverflow
from hadamard_forge.seqcore import (
    BinarySeq,
    TernarySeq,
    add,
    add_wide,
    alternate,
    autocorr,
    concat,
    deinterleave,
    halve,
    interleave,
    is_disjoint,
    negate,
    primed,
    reverse,
    seq,
    support,
    term,
)

import oracles

binary = st.lists(st.sampled_from((1, -1)), min_size=1, max_size=16)
ternary = st.lists(st.sampled_from((1, 0, -1)), min_size=1, max_size=16)


def test_autocorr_hand_cases():
    assert autocorr(seq("++")) == (2, 1)
    assert autocorr(seq("+-+")) == (3, -2, 1)


def test_autocorr_six_terms_frozen():
    # frozen from the double-loop oracle
    x = seq("+++-++")
    assert oracles.autocorr(x) == [6, 1, 0, 1, 2, 1]
    assert autocorr(x) == (6, 1, 0, 1, 2, 1)


@given(ternary)
def test_autocorr_matches_oracle(x):
    assert list(autocorr(TernarySeq(x))) == oracles.autocorr(x)


@given(ternary)
def test_autocorr_invariant_under_reverse_and_negate(x):
    x = TernarySeq(x)
    assert autocorr(reverse(x)) == autocorr(x)
    assert autocorr(negate(x)) == autocorr(x)


@given(ternary)
def test_alternation_flips_odd_shifts(x):
    x = TernarySeq(x)
    a, b = autocorr(alternate(x)), autocorr(x)
    assert all(u == (-v if s % 2 else v) for s, (u, v) in enumerate(zip(a, b)))


def test_literals():
    assert reverse(seq("+--")) == seq("--+")
    assert alternate(seq("++++")) == seq("+-+-")
    assert isinstance(seq("+-"), BinarySeq)
    assert isinstance(seq("+0"), TernarySeq)
    assert concat(seq("+"), seq("--")) == seq("+--")


def test_ternary_arithmetic():
    assert add(seq("+0"), seq("0-")) == seq("+-")
    with pytest.raises(RangeOverflow):
        add(seq("++"), seq("+-"))
    assert tuple(add_wide(seq("++"), seq("+-"))) == (2, 0)
    assert halve((2, 0)) == seq("+0")
    with pytest.raises(LengthMismatch):
        add(seq("++"), seq("+"))


def test_interleave():
    assert interleave(seq("++"), seq("-")) == seq("+-+")
    # (Y,+)/X with Y=(+), X=(-): first sequence of the NN(2) representative
    assert interleave(concat(seq("+"), seq("+")), seq("-")) == seq("+-+")


@given(binary)
def test_interleave_round_trip(a):
    if len(a) < 2:
        return
    x, c = TernarySeq(a), TernarySeq(a[:-1])
    joined = interleave(x, c)
    assert len(joined) == 2 * len(c) + 1
    assert deinterleave(joined) == (x, c)


def test_disjoint_and_support():
    assert is_disjoint(seq("+0+"), seq("0+0"))
    assert not is_disjoint(seq("+0"), seq("+0"))
    assert support(seq("+0-")) == {0, 2}


def test_terms_are_one_based():
    x = seq("+-0")
    assert term(x, 1) == 1 and term(x, 3) == 0
    assert primed(x, 1) == 0 and primed(x, 3) == 1
