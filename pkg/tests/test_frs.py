import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from lvcodes.field import PrimeField, poly_add, poly_convolve
from lvcodes.frs import (
    FrsParams, agreement, format_codeword, frs_encode, interpolate, list_decode,
    list_decode_candidates, max_correctable, message_system, parse_codeword,
)
from lvcodes.linalg import rank

from oracles import brute_list, naive_encode

SMALL = FrsParams(q=7, u1=2, N=3, k=2, v=2, gamma=3)
MID = FrsParams(q=23, u1=4, N=5, k=4, v=2)


def test_encode_example():
    p = FrsParams(q=5, u1=2, N=2, k=2, v=1, gamma=2)
    assert frs_encode(p, [1, 1]) == [[2, 3], [0, 4]]


def test_encode_trivial_messages():
    assert frs_encode(SMALL, [0, 0]) == [[0, 0]] * 3
    p = FrsParams(q=7, u1=2, N=3, k=1, v=1)
    assert frs_encode(p, [4]) == [[4, 4]] * 3


@given(st.lists(st.integers(0, 22), min_size=4, max_size=4))
def test_encode_matches_naive(msg):
    assert frs_encode(MID, msg) == naive_encode(MID, msg)


@pytest.mark.parametrize("kw", [
    dict(q=7, u1=4, N=2, k=2, v=2),          # q <= u1*N
    dict(q=7, u1=2, N=3, k=7, v=2),          # k > n
    dict(q=7, u1=2, N=3, k=2, v=3),          # v > u1
    dict(q=7, u1=2, N=3, k=2, v=2, gamma=2),  # 2 has order 3 mod 7
    dict(q=8, u1=2, N=3, k=2, v=2),
])
def test_params_rejected(kw):
    with pytest.raises(ValueError):
        FrsParams(**kw)


def test_encode_length_mismatch():
    with pytest.raises(ValueError):
        frs_encode(SMALL, [1, 2, 3])


def _substituted(p, ip, f):
    """Q(X, f(X), f(gX), ..., f(g^(v-1)X)) as a coefficient list."""
    F = PrimeField(p.q)
    acc = list(ip.a0)
    for s, a in enumerate(ip.ai):
        shifted = [c * pow(p.gamma, s * j, p.q) % p.q for j, c in enumerate(f)]
        acc = poly_add(F, acc, poly_convolve(F, a, shifted))
    return acc


@pytest.mark.parametrize("p,msg", [
    (FrsParams(q=5, u1=2, N=2, k=2, v=1, gamma=2), [1, 1]),
    (SMALL, [3, 5]),
    (MID, [1, 2, 3, 4]),
])
def test_interpolation_identity_on_clean_word(p, msg):
    ip = interpolate(p, frs_encode(p, msg))
    assert any(any(a) for a in ip.ai)
    assert _substituted(p, ip, msg) == []


@pytest.mark.parametrize("p,msg", [(SMALL, [3, 5]), (MID, [1, 2, 3, 4])])
def test_message_solves_system(p, msg):
    a, b = message_system(p, interpolate(p, frs_encode(p, msg)))
    assert a.matvec(msg) == [x % p.q for x in b]


def test_interpolation_vanishes_on_windows():
    rng = random.Random(5)
    y = [[rng.randrange(23) for _ in range(4)] for _ in range(5)]
    ip = interpolate(MID, y)
    pts = MID.points()
    for j in range(MID.N):
        for w in range(MID.u1 - MID.v + 1):
            assert ip.evaluate(pts[j * MID.u1 + w], y[j][w:w + MID.v], MID.q) == 0


def test_max_correctable_examples():
    assert max_correctable(FrsParams(q=23, u1=4, N=5, k=4, v=2)) == 2
    assert max_correctable(FrsParams(q=23, u1=4, N=5, k=20, v=2)) == 0
    assert max_correctable(SMALL) == 0


def test_small_instance_exhaustive_single_column():
    """Every message, every corruption of one column: still in the decoded space."""
    for msg in itertools.product(range(7), repeat=2):
        cw = frs_encode(SMALL, list(msg))
        for j in range(SMALL.N):
            for col in itertools.product(range(7), repeat=2):
                y = [c[:] for c in cw]
                y[j] = list(col)
                s = list_decode(SMALL, y)
                assert s.contains(msg)
                assert s.dimension <= SMALL.v - 1


def test_candidates_cover_brute_force_list():
    rng = random.Random(11)
    for _ in range(30):
        y = [[rng.randrange(7) for _ in range(2)] for _ in range(3)]
        cands = set(list_decode_candidates(SMALL, y))
        assert set(brute_list(SMALL, y)) <= cands
        assert len(cands) <= SMALL.q ** (SMALL.v - 1)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 22), min_size=4, max_size=4), st.integers(0, 2**32))
def test_within_radius_recovers_message(msg, seed):
    rng = random.Random(seed)
    y = frs_encode(MID, msg)
    for j in rng.sample(range(MID.N), max_correctable(MID)):
        y[j] = [rng.randrange(MID.q) for _ in range(MID.u1)]
    s = list_decode(MID, y)
    assert s.contains(msg)
    assert s.dimension <= MID.v - 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_rank_claim(seed):
    rng = random.Random(seed)
    y = [[rng.randrange(MID.q) for _ in range(MID.u1)] for _ in range(MID.N)]
    a, _ = message_system(MID, interpolate(MID, y))
    assert rank(a) >= MID.k - MID.v + 1


def test_agreement_and_io_roundtrip():
    cw = frs_encode(MID, [1, 0, 0, 2])
    assert agreement(MID, [1, 0, 0, 2], cw) == MID.N
    assert parse_codeword(format_codeword(cw), MID) == cw
    with pytest.raises(ValueError):
        parse_codeword("1 2\n3 4\n", MID)
