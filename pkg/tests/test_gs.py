import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hadamard_forge.codec import hex_decode, load_table
from hadamard_forge.designs import BaseSeqQuad, bs_fold, enumerate_bs
from hadamard_forge.errors import InvalidBS, ShapeError
from hadamard_forge.gs import HadamardMatrix, circulant, gs_array, gs_assemble, is_hadamard, transpose

import oracles


def test_circulant_cases():
    assert circulant([1]).tolist() == [[1]]
    assert circulant([1, -1, -1]).tolist() == [[1, -1, -1], [-1, 1, -1], [-1, -1, 1]]


@given(st.lists(st.sampled_from((1, -1)), min_size=1, max_size=12))
def test_circulant_conjugated_by_back_identity_is_transpose(x):
    r = oracles.back_identity(len(x))
    assert np.array_equal(r @ circulant(x) @ r, circulant(x).T)
    assert np.array_equal(circulant(x), oracles.circ(x))


def test_order_four_array():
    h = gs_assemble(BaseSeqQuad.parse("+;+;+;+"))
    assert h.to_array().tolist() == [[1, 1, 1, 1], [-1, 1, -1, 1], [-1, 1, 1, -1], [-1, -1, 1, 1]]
    assert is_hadamard(h)


@pytest.mark.parametrize("d", [1, 2, 3, 5, 7])
def test_array_matches_dense_oracle(d):
    quads = enumerate_bs(d, d)
    for q in quads[:: max(1, len(quads) // 40)]:
        dense = oracles.gs_dense(*q)
        assert np.array_equal(gs_array(q), dense)
        assert oracles.is_hadamard_dense(dense)


def test_worked_hex_gives_h60():
    h = gs_assemble(hex_decode("0dc41a77adbf5c8"))
    assert h.order == 60 and is_hadamard(h)
    assert oracles.is_hadamard_dense(h.to_array())


def test_every_table_entry_is_hadamard():
    for k in range(2, 7):
        for x in load_table(k):
            assert is_hadamard(gs_assemble(hex_decode(x)))


def test_folded_pipeline_sample_is_hadamard():
    quads = enumerate_bs(8, 7)
    rng = np.random.default_rng(7)
    for i in rng.choice(len(quads), 1000, replace=False):
        assert is_hadamard(gs_assemble(bs_fold(quads[i])))


def test_is_hadamard_cases():
    assert is_hadamard(np.array([[1, 1], [1, -1]]))
    assert not is_hadamard(np.array([[1, 1], [1, 1]]))
    assert is_hadamard(np.array([[1]]))
    assert not is_hadamard(np.ones((3, 3)))
    assert not is_hadamard(np.array([[1, 2], [1, -1]]))


@given(st.integers(0, 2**16 - 1))
def test_is_hadamard_matches_dense_on_order_four(bits):
    a = np.array([1 if bits >> i & 1 else -1 for i in range(16)]).reshape(4, 4)
    assert is_hadamard(a) == oracles.is_hadamard_dense(a)


def test_gs_assemble_rejects_bad_input():
    with pytest.raises(InvalidBS):
        gs_assemble(BaseSeqQuad.parse("++;++;++;++"))
    with pytest.raises(ShapeError):
        gs_assemble(BaseSeqQuad.parse("++;+-;+;+"))


def test_matrix_container():
    h = gs_assemble(hex_decode(load_table(2)[3]))
    assert transpose(transpose(h)) == h
    assert HadamardMatrix.from_raw(h.to_raw()) == h
    assert HadamardMatrix.from_packed(h.packed, h.order) == h
    assert hash(HadamardMatrix(h.to_array().copy())) == hash(h)
    with pytest.raises(ShapeError):
        HadamardMatrix(np.ones((2, 3)))
    with pytest.raises(ShapeError):
        HadamardMatrix.from_raw("2\n+-\n+\n")
    with pytest.raises(ValueError):
        h.to_array()[0, 0] = 0
