import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hadamard_forge import codec
from hadamard_forge.designs import (
    GBS_GENERATORS,
    BaseSeqQuad,
    TSeqQuad,
    bs_fold,
    enumerate_bs,
    gbs_orbit,
    gbs_orbits,
    is_near_normal,
    is_normal,
    near_normal_set,
    nn_decompose,
    normal_set,
    ns_decompose,
    pairs_to_ts,
    parse_quads,
    format_quads,
    quad_permute,
    ts_to_bs,
    validate_bs,
    validate_ts,
)
from hadamard_forge.errors import InvalidBS, LengthMismatch, NotNormal, SupportMismatch, TooLarge
from hadamard_forge.seqcore import seq

import oracles

SMALL_SHAPES = [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (4, 3)]


@pytest.mark.parametrize("m,n", SMALL_SHAPES)
def test_enumeration_matches_brute_force(m, n):
    mine = {tuple(tuple(x) for x in q) for q in enumerate_bs(m, n)}
    assert mine == set(oracles.brute_bs(m, n))


def test_enumeration_sizes_frozen():
    # frozen from the brute-force scan
    assert len(enumerate_bs(2, 1)) == 32
    assert len(enumerate_bs(3, 2)) == 128


def test_enumeration_guard():
    with pytest.raises(TooLarge):
        enumerate_bs(20, 19)


def test_validate_bs_cases():
    assert validate_bs(BaseSeqQuad.parse("++;+-;+;+"))
    assert not validate_bs(BaseSeqQuad.parse("++;++;+;+"))
    assert validate_bs(codec.quad_decode("0165; 6123"))
    with pytest.raises(LengthMismatch):
        validate_bs(BaseSeqQuad.parse("++;+-;+;+"), 3, 2)


def test_validate_ts_cases():
    assert validate_ts(TSeqQuad(seq("+"), seq("0"), seq("0"), seq("0")))
    assert not validate_ts(TSeqQuad(seq("+0"), seq("+0"), seq("0+"), seq("0-")))


def test_normal_representatives():
    ns3 = codec.quad_decode("06;11", 3)
    assert is_normal(ns3)
    dec = ns_decompose(ns3)
    assert dec.F == seq("++-")
    assert dec.G == seq("+0+") and dec.H == seq("0+0")
    nn2 = codec.quad_decode("02;1", 2)
    assert is_near_normal(nn2)
    ndec = nn_decompose(nn2)
    assert ndec.Y == seq("+") and ndec.X == seq("-")
    assert ndec.G == seq("++") and ndec.H == seq("00")
    assert not is_normal(BaseSeqQuad.parse("+-;-+;+;+"))
    with pytest.raises(NotNormal):
        ns_decompose(BaseSeqQuad.parse("+-;-+;+;+"))


def test_normal_set_sizes_frozen():
    assert [len(normal_set(n)) for n in (1, 2, 3, 5)] == [16, 32, 64, 256]
    assert len(near_normal_set(2)) == 32


def test_decompositions_reassemble():
    for q in normal_set(3):
        assert ns_decompose(q).reassemble() == q
    for q in near_normal_set(2) + near_normal_set(4):
        assert nn_decompose(q).reassemble() == q


def test_ts_to_bs_smallest():
    q = ts_to_bs(TSeqQuad(seq("+"), seq("0"), seq("0"), seq("0")))
    assert q == BaseSeqQuad.parse("+;+;+;+")


def test_pairs_to_ts():
    t = pairs_to_ts(seq("+0"), seq("+0"), seq("0+"), seq("0-"))
    assert tuple(t) == (seq("+0"), seq("00"), seq("00"), seq("0+"))
    with pytest.raises(SupportMismatch):
        pairs_to_ts(seq("+0"), seq("0+"), seq("0+"), seq("0-"))


@given(st.data())
def test_pairs_to_ts_then_kons3_composite(data):
    # random paired-support rows: Q, R on a support set, S, T on its complement
    n = data.draw(st.integers(1, 10))
    mask = data.draw(st.lists(st.booleans(), min_size=n, max_size=n))
    signs = data.draw(st.lists(st.sampled_from((1, -1)), min_size=4 * n, max_size=4 * n))
    q = [signs[i] if mask[i] else 0 for i in range(n)]
    r = [signs[n + i] if mask[i] else 0 for i in range(n)]
    s = [0 if mask[i] else signs[2 * n + i] for i in range(n)]
    t = [0 if mask[i] else signs[3 * n + i] for i in range(n)]
    ts = pairs_to_ts(q, r, s, t)
    a, b, c, d = ts
    kons = [[w + x + y + z for w, x, y, z in zip(a, b, c, d)], [w + x - y - z for w, x, y, z in zip(a, b, c, d)],
            [w - x + y - z for w, x, y, z in zip(a, b, c, d)], [w - x - y + z for w, x, y, z in zip(a, b, c, d)]]
    expect = [[u + v for u, v in zip(q, s)], [u - v for u, v in zip(q, s)],
              [u + v for u, v in zip(r, t)], [u - v for u, v in zip(r, t)]]
    assert kons == expect


def test_fold():
    q = bs_fold(BaseSeqQuad.parse("++;+-;+;+"))
    assert q == BaseSeqQuad.parse("+++;++-;+-+;+--")
    assert validate_bs(q)
    with pytest.raises(InvalidBS):
        bs_fold(BaseSeqQuad.parse("++;++;+;+"))


def test_fold_sweep_on_bs87():
    quads = enumerate_bs(8, 7)
    assert all(validate_bs(bs_fold(q)) for q in quads[::7])


def test_quad_permute():
    q = enumerate_bs(3, 3)[5]
    assert quad_permute(q, (0, 1, 2, 3)) == q
    assert quad_permute(quad_permute(q, (1, 0, 2, 3)), (1, 0, 2, 3)) == q
    assert validate_bs(quad_permute(q, (1, 0, 2, 3)))
    assert quad_permute(q, (3, 2, 1, 0)) == BaseSeqQuad(q.D, q.C, q.B, q.A)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_generators_preserve_base_sequences(n):
    for q in enumerate_bs(n + 1, n):
        for g in GBS_GENERATORS.values():
            assert validate_bs(g(q))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_orbits_partition_and_are_power_of_two(n):
    quads = enumerate_bs(n + 1, n)
    orbits = gbs_orbits(quads)
    assert sum(len(o) for o in orbits) == len(quads)
    assert set().union(*orbits) == set(quads)
    for o in orbits:
        assert len(o) & (len(o) - 1) == 0 and len(o) <= 2**12


def test_table1_orbit_sizes_of_selected_rows():
    assert len(gbs_orbit(codec.quad_decode("0615; 1272", 7))) == 512
    assert len(gbs_orbit(codec.quad_decode("0646; 1222", 7))) == 256


def test_single_class_for_small_shapes():
    # one equivalence class in BS(2,1) and in BS(3,2)
    assert len(gbs_orbits(enumerate_bs(2, 1))) == 1
    assert len(gbs_orbits(enumerate_bs(3, 2))) == 1


def test_quads_text_round_trip():
    quads = enumerate_bs(3, 2)[:10]
    assert parse_quads(format_quads(quads)) == quads
    assert parse_quads("# reps\n0;0\n\n03;1\n") == [codec.quad_decode("0;0"), codec.quad_decode("03;1")]
