"""Limited-view adversaries, Monte-Carlo failure estimation and the RMT wrapper.

An adversary reads components one at a time (each choice may depend on what it
has already seen), then adds an error supported on its write set. Strategies see
the public parameters and their observations only; the encoder's randomness
stays private.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .lvcode import (
    DecodeOutcome, LvCodeword, LvParams, as_fraction, delta_bound, lv_decode, lv_encode,
    transmission_rate,
)

STRATEGIES = ("random_error", "substitution", "exhaustive_best")

ESTIMATOR_NOTE = (
    "delta_empirical averages over fresh encodings rather than conditioning on "
    "each observed-value class; exhaustive_best performs the per-class maximum"
)


class InfeasibleBudget(ValueError):
    pass


class SearchCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class AdversarySpec:
    rho_r: Fraction
    rho_w: Fraction
    same_set: bool = True
    strategy: str = "random_error"
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "rho_r", as_fraction(self.rho_r))
        object.__setattr__(self, "rho_w", as_fraction(self.rho_w))
        for name in ("rho_r", "rho_w"):
            if not 0 <= getattr(self, name) <= 1:
                raise ValueError(f"{name} must lie in [0, 1]")
        for s in self.strategies:
            if s not in STRATEGIES:
                raise ValueError(f"unknown strategy {s!r}; choose from {STRATEGIES}")

    @classmethod
    def at_budget(cls, p: LvParams, strategy: str = "random_error", budget: Optional[int] = None,
                  seed: int = 0) -> "AdversarySpec":
        """Read and write the same ``budget`` components (default: the decoder's budget)."""
        b = p.budget if budget is None else budget
        rho = Fraction(b, p.N)
        return cls(rho, rho, True, strategy, seed)

    @property
    def strategies(self) -> tuple[str, ...]:
        return tuple(s.strip() for s in self.strategy.split(",") if s.strip())

    def read_budget(self, N: int) -> int:
        return math.floor(self.rho_r * N)

    def write_budget(self, N: int) -> int:
        return math.floor(self.rho_w * N)

    def in_model(self, p: LvParams) -> bool:
        return (self.same_set and self.rho_r == self.rho_w
                and self.write_budget(p.N) <= p.budget)


# -- strategies ----------------------------------------------------------------

class Strategy:
    """Adaptive adversary: picks reads one by one, then designs an error."""

    name = "base"

    def __init__(self, p: LvParams, rng: random.Random):
        self.p = p
        self.rng = rng

    def next_read(self, observed: dict[int, tuple[int, ...]]) -> int:
        unread = [i for i in range(self.p.N) if i not in observed]
        return self.rng.choice(unread)

    def choose_write_set(self, observed: dict[int, tuple[int, ...]], budget: int) -> list[int]:
        return self.rng.sample(range(self.p.N), budget)

    def error(self, observed: dict[int, tuple[int, ...]], write_set: Sequence[int]) -> dict[int, list[int]]:
        raise NotImplementedError


class RandomError(Strategy):
    name = "random_error"

    def error(self, observed, write_set):
        q, u = self.p.q, self.p.u
        out = {}
        for i in write_set:
            e = [self.rng.randrange(q) for _ in range(u)]
            if not any(e):
                e[self.rng.randrange(u)] = 1 + self.rng.randrange(q - 1)
            out[i] = e
        return out


class Substitution(Strategy):
    """Overwrite the controlled components with those of a fresh codeword."""

    name = "substitution"

    def error(self, observed, write_set):
        p = self.p
        missing = [i for i in write_set if i not in observed]
        if missing:
            raise InfeasibleBudget("substitution needs to read every component it writes")
        if not write_set:
            return {}
        alt_msg = [self.rng.randrange(p.q) for _ in range(p.msg_len)]
        alt = lv_encode(p, alt_msg, self.rng)
        return {i: [(a - b) % p.q for a, b in zip(alt.components[i], observed[i])] for i in write_set}


class Probe(Strategy):
    """Reads the next index determined by the symbols seen so far."""

    name = "probe"

    def next_read(self, observed):
        start = sum(sum(c) for c in observed.values()) % self.p.N
        for k in range(self.p.N):
            i = (start + k) % self.p.N
            if i not in observed:
                return i
        raise AssertionError("nothing left to read")

    def error(self, observed, write_set):
        return {}


class FixedPaths(Strategy):
    """Reads and writes a fixed set of positions; errors come from an inner strategy."""

    def __init__(self, p, rng, positions: Sequence[int], inner: Strategy):
        super().__init__(p, rng)
        self.positions = list(positions)
        self.inner = inner
        self.name = inner.name

    def next_read(self, observed):
        return next(i for i in self.positions if i not in observed)

    def choose_write_set(self, observed, budget):
        return self.positions[:budget]

    def error(self, observed, write_set):
        return self.inner.error(observed, write_set)


_FACTORY = {"random_error": RandomError, "substitution": Substitution, "probe": Probe}


def make_strategy(name: str, p: LvParams, rng: random.Random) -> Strategy:
    try:
        return _FACTORY[name](p, rng)
    except KeyError:
        raise ValueError(f"no sampling strategy named {name!r}") from None


# -- one channel use ---------------------------------------------------------------

@dataclass
class ChannelTranscript:
    sent: LvCodeword
    read_set: list[int]
    observed: dict[int, tuple[int, ...]]
    write_set: list[int]
    error: dict[int, list[int]]
    received: LvCodeword
    outcome: DecodeOutcome
    message: Optional[tuple[int, ...]] = None

    @property
    def correct(self) -> bool:
        return self.outcome.message == self.message

    @property
    def wrong(self) -> bool:
        return not self.outcome.bottom and self.outcome.message != self.message


def apply_adversary(spec: AdversarySpec, p: LvParams, c: LvCodeword, strategy: Strategy,
                    message: Optional[Sequence[int]] = None,
                    decoder: Callable[[LvParams, LvCodeword], DecodeOutcome] = lv_decode) -> ChannelTranscript:
    br, bw = spec.read_budget(p.N), spec.write_budget(p.N)
    if spec.same_set and bw > br:
        raise InfeasibleBudget(f"write budget {bw} exceeds read budget {br} with a shared set")
    observed: dict[int, tuple[int, ...]] = {}
    read_set = []
    for _ in range(br):
        i = strategy.next_read(dict(observed))
        if i in observed or not 0 <= i < p.N:
            raise ValueError(f"strategy chose invalid read position {i}")
        observed[i] = c.components[i]
        read_set.append(i)
    if spec.same_set:
        write_set = read_set[:bw]
    else:
        write_set = list(strategy.choose_write_set(dict(observed), bw))
    error = {i: e for i, e in strategy.error(dict(observed), write_set).items() if any(x % p.q for x in e)}
    assert set(error) <= set(write_set) and len(error) <= bw, "error escapes the write set"
    received = c.add_error(error, p.q)
    outcome = decoder(p, received)
    return ChannelTranscript(c, read_set, observed, write_set, error, received, outcome,
                             tuple(message) if message is not None else None)


# -- Monte-Carlo estimation -------------------------------------------------------------

def trial_rngs(seed: int, strategy: str, trial: int) -> tuple[random.Random, random.Random, random.Random]:
    """Independent message, encoder and adversary streams for one trial."""
    base = f"{seed}:{strategy}:{trial}"
    return random.Random(base + ":msg"), random.Random(base + ":enc"), random.Random(base + ":adv")


@dataclass
class StrategyTally:
    trials: int = 0
    correct_count: int = 0
    bottom_count: int = 0
    wrong_message_count: int = 0


@dataclass
class SimReport:
    trials: int
    bottom_count: int
    wrong_message_count: int
    delta_empirical: float
    delta_bound: float
    strategy: str
    budget_read: int
    budget_write: int
    in_model: bool
    seed: int
    params: dict
    breakdown: dict[str, StrategyTally] = dc_field(default_factory=dict)
    note: str = ESTIMATOR_NOTE

    def to_dict(self) -> dict:
        d = asdict(self)
        d["model"] = "within construction model" if self.in_model else "out of construction model"
        return d

    def to_text(self) -> str:
        d = self.to_dict()
        lines = []
        for key in ("trials", "bottom_count", "wrong_message_count", "delta_empirical", "delta_bound",
                    "strategy", "budget_read", "budget_write", "in_model", "model", "seed"):
            lines.append(f"{key}={d[key]}")
        for name, tally in self.breakdown.items():
            for k, v in asdict(tally).items():
                lines.append(f"{name}.{k}={v}")
        for k, v in self.params.items():
            lines.append(f"params.{k}={v}")
        lines.append(f"note={self.note}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def run_trial(spec: AdversarySpec, p: LvParams, strategy: str, trial: int) -> ChannelTranscript:
    msg_rng, enc_rng, adv_rng = trial_rngs(spec.seed, strategy, trial)
    msg = [msg_rng.randrange(p.q) for _ in range(p.msg_len)]
    c = lv_encode(p, msg, enc_rng)
    return apply_adversary(spec, p, c, make_strategy(strategy, p, adv_rng), msg)


def simulate(spec: AdversarySpec, p: LvParams, trials: int) -> SimReport:
    """Run ``trials`` independent channel uses per strategy named in ``spec``."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    breakdown = {}
    for name in spec.strategies:
        if name == "exhaustive_best":
            raise ValueError("exhaustive_best is an oracle; use strategy_exhaustive_best")
        tally = StrategyTally()
        for t in range(trials):
            tr = run_trial(spec, p, name, t)
            tally.trials += 1
            if tr.outcome.bottom:
                tally.bottom_count += 1
            elif tr.correct:
                tally.correct_count += 1
            else:
                tally.wrong_message_count += 1
        breakdown[name] = tally
    total = sum(t.trials for t in breakdown.values())
    bottoms = sum(t.bottom_count for t in breakdown.values())
    wrong = sum(t.wrong_message_count for t in breakdown.values())
    return SimReport(
        trials=total, bottom_count=bottoms, wrong_message_count=wrong,
        delta_empirical=bottoms / total, delta_bound=float(delta_bound(p)),
        strategy=spec.strategy, budget_read=spec.read_budget(p.N),
        budget_write=spec.write_budget(p.N), in_model=spec.in_model(p), seed=spec.seed,
        params=p.summary(), breakdown=breakdown,
    )


# -- exhaustive oracle -----------------------------------------------------------------

@dataclass
class ExhaustiveResult:
    delta: Fraction
    write_set: tuple[int, ...]
    error: dict[int, tuple[int, ...]]
    searched: int
    samples: int


def search_space_size(p: LvParams, budget: int) -> int:
    return p.q ** (budget * p.u) * math.comb(p.N, budget)


def strategy_exhaustive_best(p: LvParams, msg: Sequence[int], spec: AdversarySpec, samples: int = 64,
                             seed: int = 0, cap: int = 10**5,
                             decoder: Callable[[LvParams, LvCodeword], DecodeOutcome] = lv_decode) -> ExhaustiveResult:
    """Worst failure frequency over write sets, observed classes and error vectors.

    Encoding randomness is sampled (``samples`` draws shared by every candidate
    error); write sets and errors are enumerated completely.
    """
    b = spec.write_budget(p.N)
    size = search_space_size(p, b)
    if size > cap:
        raise SearchCapExceeded(f"search space {size} exceeds cap {cap}")
    rng = random.Random(f"{seed}:exhaustive")
    codewords = [lv_encode(p, msg, rng) for _ in range(samples)]
    target = tuple(m % p.q for m in msg)
    best = (Fraction(-1), (), {})
    for S in itertools.combinations(range(p.N), b):
        classes: dict[tuple, list[int]] = {}
        for idx, c in enumerate(codewords):
            classes.setdefault(tuple(c.components[i] for i in S), []).append(idx)
        for flat in itertools.product(range(p.q), repeat=b * p.u):
            err = {i: flat[j * p.u:(j + 1) * p.u] for j, i in enumerate(S)}
            fails = [decoder(p, c.add_error(err, p.q)).message != target for c in codewords]
            for members in classes.values():
                freq = Fraction(sum(fails[i] for i in members), len(members))
                if freq > best[0]:
                    best = (freq, S, err)
    return ExhaustiveResult(max(best[0], Fraction(0)), tuple(best[1]), best[2], size, samples)


# -- reliable message transmission ------------------------------------------------------

@dataclass
class RmtResult:
    outcome: DecodeOutcome
    transcript: ChannelTranscript
    symbols_sent: int
    message_symbols: int

    @property
    def rate(self) -> Fraction:
        return Fraction(self.symbols_sent, self.message_symbols)


def rmt_transmit(p: LvParams, msg: Sequence[int], corrupt_paths: Sequence[int],
                 strategy: str = "substitution", rng: Optional[random.Random] = None) -> RmtResult:
    """Send component i on path i; the adversary sees and rewrites the corrupt paths."""
    rng = rng or random.Random(0)
    paths = sorted(set(corrupt_paths))
    if any(not 0 <= i < p.N for i in paths):
        raise ValueError("corrupt path index out of range")
    c = lv_encode(p, msg, rng)
    rho = Fraction(len(paths), p.N)
    spec = AdversarySpec(rho, rho, True, strategy)
    adv_rng = random.Random(rng.getrandbits(64))
    strat = FixedPaths(p, adv_rng, paths, make_strategy(strategy, p, adv_rng))
    tr = apply_adversary(spec, p, c, strat, msg)
    assert Fraction(c.symbol_count(), p.msg_len) == transmission_rate(p)
    return RmtResult(tr.outcome, tr, c.symbol_count(), p.msg_len)
