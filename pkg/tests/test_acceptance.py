"""The eleven acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line, shown in the "acceptance criteria"
section at the end of the pytest run. Criteria 5, 6 and 10 take minutes.
"""

import itertools
import random
import statistics
import time
from fractions import Fraction

import pytest

from lvcodes.adversary import AdversarySpec, apply_adversary, make_strategy, rmt_transmit, simulate, strategy_exhaustive_best
from lvcodes.frs import FrsParams, frs_encode, interpolate, list_decode, max_correctable, message_system
from lvcodes.linalg import enumerate_solutions, rank
from lvcodes.lvcode import (
    ceil_sqrt, asymptotic_preset, delta_bound, delta_bound_value, derive_params, feasible_u1,
    lv_decode, lv_encode,
)
from lvcodes.mac import MacKey, MacParams, mac_tag_matrix, mac_tag_poly

from oracles import max_forgery_probability

FRS7 = FrsParams(q=7, u1=2, N=3, k=2, v=2, gamma=3)


def _corruptions(p, cw, t):
    """Every received word differing from ``cw`` on at most ``t`` columns."""
    yield cw
    for size in range(1, t + 1):
        for cols in itertools.combinations(range(p.N), size):
            for vals in itertools.product(itertools.product(range(p.q), repeat=p.u1), repeat=size):
                y = [c[:] for c in cw]
                for j, v in zip(cols, vals):
                    y[j] = list(v)
                yield y


def test_c01_frs_radius(criterion):
    p = FRS7
    t = max_correctable(p)
    words = bad = max_dim = max_list = 0
    for msg in itertools.product(range(p.q), repeat=p.k):
        for y in _corruptions(p, frs_encode(p, list(msg)), t):
            s = list_decode(p, y)
            words += 1
            max_dim = max(max_dim, s.dimension)
            max_list = max(max_list, len(enumerate_solutions(s, p.q ** (p.v - 1))))
            bad += not s.contains(msg)
    ok = bad == 0 and max_dim <= p.v - 1 and max_list <= p.q ** (p.v - 1)
    criterion(1, ok, f"FRS q=7: {words} words (radius {t}), misses={bad}, max dim={max_dim}, max list={max_list}")


def test_c02_rank_claim(criterion):
    p = FRS7
    rng = random.Random(2)
    low = None
    for _ in range(1000):
        y = [[rng.randrange(p.q) for _ in range(p.u1)] for _ in range(p.N)]
        r = rank(message_system(p, interpolate(p, y))[0])
        low = r if low is None else min(low, r)
    criterion(2, low >= p.k - p.v + 1, f"min rank over 1000 words = {low} (need >= {p.k - p.v + 1})")


def test_c03_mac_equivalence(criterion):
    rng = random.Random(3)
    mismatches = 0
    for N, l, d in [(1, 1, 1), (2, 3, 2), (3, 5, 2)]:
        p = MacParams(401, N, l, d)
        for _ in range(1000):
            key = MacKey.random(p, rng)
            x = [rng.randrange(p.q) for _ in range(p.state_len)]
            mismatches += mac_tag_poly(p, x, key) != mac_tag_matrix(p, x, key)
    criterion(3, mismatches == 0, f"polynomial vs matrix tag over 3000 draws: {mismatches} mismatches")


def test_c04_forgery_bound(criterion):
    parts, ok = [], True
    for q, N, l, d in [(5, 1, 1, 1), (3, 1, 3, 2)]:
        prob = max_forgery_probability(MacParams(q, N, l, d))
        bound = Fraction(2, q ** N)
        ok &= prob <= bound
        parts.append(f"q={q},l={l}: {prob} <= {bound}")
    criterion(4, ok, "max forgery " + "; ".join(parts))


@pytest.mark.slow
def test_c05_completeness(criterion, worked):
    p = worked
    rng = random.Random(5)
    fails = 0
    for _ in range(1000):
        msg = [rng.randrange(p.q) for _ in range(p.msg_len)]
        fails += lv_decode(p, lv_encode(p, msg, rng)).message != tuple(msg)
    criterion(5, fails == 0, f"1000 clean round trips at N=4,u1=50,v=2,R=1/10,q=401: {fails} failures")


@pytest.mark.slow
def test_c06_soundness(criterion, worked):
    p = worked
    spec = AdversarySpec.at_budget(p, "random_error,substitution", seed=6)
    rep = simulate(spec, p, 10_000)
    per = ", ".join(f"{k}: bottom={v.bottom_count} wrong={v.wrong_message_count}" for k, v in rep.breakdown.items())
    ok = rep.in_model and rep.wrong_message_count == 0 and rep.bottom_count <= 1
    criterion(6, ok, f"budget {rep.budget_write}/{p.N}, 2x10^4 trials ({per}); "
                     f"delta_empirical={rep.delta_empirical} vs bound {rep.delta_bound:.3g}")


def test_c07_half_replacement(criterion, worked):
    p = worked
    spec = AdversarySpec(Fraction(1, 2), Fraction(1, 2), True, "substitution")
    rng = random.Random(7)
    bottom = wrong = 0
    for t in range(100):
        msg = [rng.randrange(p.q) for _ in range(p.msg_len)]
        tr = apply_adversary(spec, p, lv_encode(p, msg, rng), make_strategy("substitution", p, rng), msg)
        assert len(tr.error) == p.N // 2
        bottom += tr.outcome.bottom
        wrong += tr.wrong
    criterion(7, bottom == 100 and wrong == 0, f"substitution on {p.N // 2}/{p.N} components: {bottom}/100 bottom, {wrong} wrong")


def test_c08_exhaustive_oracle(criterion):
    p = derive_params(2, 5, 1, Fraction(1, 34), q=11)
    spec = AdversarySpec.at_budget(p)
    worst = max(strategy_exhaustive_best(p, [m], spec, samples=64).delta for m in range(p.q))
    bound = delta_bound(p)
    criterion(8, worst <= bound, f"N=2,v=1,u1=5,q=11 (budget {p.budget}): exact delta {worst} <= {bound}")


def test_c09_closed_forms(criterion):
    got = (
        max_correctable(FrsParams(q=23, u1=4, N=5, k=4, v=2)),
        delta_bound_value(4, 11, 2),
        asymptotic_preset(Fraction(1, 2), 4),
    )
    want = (2, Fraction(8, 1331), (2, 64))
    criterion(9, got == want, f"max_correctable={got[0]}, delta_bound={got[1]}, preset (v,u)={got[2]}")


def _decode_time(N, reps=3):
    u1 = 64
    u = u1 + N * ceil_sqrt(2 * u1) + 3 * N - 2
    p = derive_params(N, u1, 2, Fraction(1, N * u))
    rng = random.Random(N)
    times = []
    for _ in range(reps):
        msg = [rng.randrange(p.q) for _ in range(p.msg_len)]
        c = lv_encode(p, msg, rng)
        t0 = time.perf_counter()
        out = lv_decode(p, c)
        times.append(time.perf_counter() - t0)
        assert out.message == tuple(msg)
    return statistics.median(times)


@pytest.mark.slow
def test_c10_complexity(criterion):
    times = {N: _decode_time(N) for N in (4, 8, 16)}
    ratios = [times[8] / times[4], times[16] / times[8]]
    shown = ", ".join(f"N={N}: {t * 1000:.0f} ms" for N, t in times.items())
    criterion(10, max(ratios) <= 40, f"decode {shown}; doubling ratios {ratios[0]:.1f}, {ratios[1]:.1f} (<= 40)")


def test_c11_rmt_rate(criterion):
    R = Fraction(1, 10)
    rates = {}
    for N in (4, 8, 16):
        p = derive_params(N, feasible_u1(N, 2, R, start=50), 2, R)
        rng = random.Random(N)
        msg = [rng.randrange(p.q) for _ in range(p.msg_len)]
        res = rmt_transmit(p, msg, list(range(p.budget)), "substitution", rng)
        assert res.outcome.message == tuple(msg)
        rates[N] = res.rate
    ok = set(rates.values()) == {1 / R}
    criterion(11, ok, "symbols sent / message symbols: " + ", ".join(f"N={N}: {r}" for N, r in rates.items()))
