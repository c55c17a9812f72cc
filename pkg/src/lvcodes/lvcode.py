"""Randomized limited-view adversary code built from a folded RS code and the MAC.

Encoding pads the message to ``x`` (``N*l`` symbols), draws ``N`` MAC keys,
tags ``x`` under each key and FRS-encodes ``(x, t_1, ..., t_N)``. Component
``i`` of the codeword is FRS column ``i`` followed by key ``i``.

Decoding intersects the FRS list-decoding space with the MAC equations of each
received key. System ``i`` outputs ``x_i`` when the first ``N*l`` coordinates of
its solutions are uniquely determined; a message is returned only when one
value is output by at least ``N - floor(rho*N)`` systems.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .field import PrimeField, primitive_root, smallest_prime_above
from .frs import DecodeDegenerate, FrsParams, frs_encode, interpolate, max_correctable, message_system
from .linalg import Matrix, SolutionSpace, solve_affine
from .mac import MacKey, MacParams, mac_equation_rows, mac_tag_matrix

Rate = Union[Fraction, int, float, str]


class InfeasibleParams(ValueError):
    pass


class NonIntegralMessage(InfeasibleParams):
    pass


class MalformedInput(ValueError):
    pass


def as_fraction(r: Rate) -> Fraction:
    if isinstance(r, float):
        return Fraction(repr(r))
    return Fraction(r)


def ceil_sqrt(n: int) -> int:
    s = math.isqrt(n)
    return s if s * s == n else s + 1


@dataclass(frozen=True)
class LvParams:
    N: int
    u1: int
    v: int
    R: Fraction
    q: int
    gamma: int
    d: int
    u2: int
    u: int
    l: int
    k: int
    msg_len: int

    @property
    def frs(self) -> FrsParams:
        return FrsParams(q=self.q, u1=self.u1, N=self.N, k=self.k, v=self.v, gamma=self.gamma)

    @property
    def mac(self) -> MacParams:
        return MacParams(q=self.q, N=self.N, l=self.l, d=self.d)

    @property
    def tag_len(self) -> int:
        return 3 * self.N - 2

    @property
    def x_len(self) -> int:
        return self.N * self.l

    @property
    def rho(self) -> Fraction:
        return rho_bound(self)

    @property
    def budget(self) -> int:
        """Largest adversary set size covered by the decoding guarantee."""
        return math.floor(self.rho * self.N)

    @property
    def threshold(self) -> int:
        return self.N - self.budget

    def summary(self) -> dict:
        return {
            "N": self.N, "u1": self.u1, "u2": self.u2, "u": self.u, "v": self.v,
            "R": str(self.R), "q": self.q, "gamma": self.gamma, "d": self.d,
            "l": self.l, "k": self.k, "msg_len": self.msg_len,
            "rho_bound": float(self.rho), "budget": self.budget,
            "frs_max_correctable": max_correctable(self.frs),
            "delta_bound": str(delta_bound(self)),
            "delta_bound_float": float(delta_bound(self)),
        }


def derive_params(N: int, u1: int, v: int, R: Rate, q: Optional[int] = None) -> LvParams:
    R = as_fraction(R)
    if N < 2:
        raise InfeasibleParams("need N >= 2")
    if not 1 <= v <= u1:
        raise InfeasibleParams(f"need 1 <= v <= u1, got v={v}, u1={u1}")
    if not 0 < R < 1:
        raise InfeasibleParams("rate must lie in (0, 1)")
    d = ceil_sqrt(2 * u1)
    u2 = N * d + 3 * N - 2
    u = u1 + u2
    msg_len = N * u * R
    if msg_len.denominator != 1:
        raise NonIntegralMessage(
            f"N*u*R = {msg_len} is not an integer; nearest feasible rates: "
            + ", ".join(str(r) for r in nearest_rates(N, u, R)))
    l = math.ceil(u * R)
    if d * (d + 3) // 2 < l:
        raise InfeasibleParams(f"MAC needs d(d+3)/2 >= l, got d={d}, l={l}")
    k = N * l + N * (3 * N - 2)
    if k > u1 * N:
        raise InfeasibleParams(f"FRS dimension k={k} exceeds u1*N={u1 * N}; raise u1 or lower R")
    if q is None:
        q = smallest_prime_above(N * u)
    else:
        PrimeField(q)
        if q <= u1 * N:
            raise InfeasibleParams(f"q={q} must exceed u1*N={u1 * N}")
    gamma = primitive_root(PrimeField(q))
    return LvParams(N, u1, v, R, q, gamma, d, u2, u, l, k, int(msg_len))


def nearest_rates(N: int, u: int, R: Fraction, count: int = 2) -> list[Fraction]:
    """Rates closest to R for which ``N*u*R`` is an integer."""
    target = R * N * u
    lo, hi = math.floor(target), math.ceil(target)
    out = {Fraction(m, N * u) for m in (lo, hi, lo - 1, hi + 1) if 0 < m < N * u}
    return sorted(out, key=lambda r: (abs(r - R), r))[:count]


def feasible_u1(N: int, v: int, R: Rate, start: int = 1, limit: int = 10**5) -> int:
    """Smallest u1 >= start for which :func:`derive_params` succeeds."""
    for u1 in range(max(start, v), limit):
        try:
            derive_params(N, u1, v, R)
        except InfeasibleParams:
            continue
        return u1
    raise InfeasibleParams(f"no feasible u1 below {limit}")


def u1_for_width(N: int, u: int) -> int:
    """Largest u1 whose component width u1 + N*ceil(sqrt(2u1)) + 3N - 2 does not exceed u."""
    best = None
    for u1 in range(1, u + 1):
        if u1 + N * ceil_sqrt(2 * u1) + 3 * N - 2 <= u:
            best = u1
    if best is None:
        raise InfeasibleParams(f"width {u} too small for N={N}")
    return best


def _sqrt_upper(n: int, scale: int = 10**15) -> Fraction:
    s = math.isqrt(n)
    if s * s == n:
        return Fraction(s)
    return Fraction(math.isqrt(n * scale * scale) + 1, scale)


def rho_terms(p: LvParams) -> tuple[Fraction, Fraction]:
    """The two terms of the correctable-fraction bound.

    The square root is over-approximated, which can only lower the bound.
    """
    N, u, v = p.N, p.u, p.v
    first = Fraction(1, 2) - Fraction(1, 2 * N)
    w = Fraction(v, v + 1)
    denom = N * N + u - N * (_sqrt_upper(N * N + 2 * u) + 3) - v
    if denom <= 0:
        return first, Fraction(0)
    second = w - w * (u * p.R + 3 * N) / denom
    return first, second


def rho_bound(p: LvParams) -> Fraction:
    return max(Fraction(0), min(rho_terms(p)))


def rho_bound_proof_form(p: LvParams) -> Fraction:
    """Intermediate bound ``v/(v+1) - v/(v+1) * (uR + 3N - 1)/(u1 - v + 1)``."""
    w = Fraction(p.v, p.v + 1)
    return w - w * (p.u * p.R + 3 * p.N - 1) / (p.u1 - p.v + 1)


def delta_bound(p: LvParams) -> Fraction:
    return Fraction(2 * p.N) / Fraction(p.q) ** (p.N - p.v + 1)


def delta_bound_value(N: int, q: int, v: int) -> Fraction:
    return Fraction(2 * N) / Fraction(q) ** (N - v + 1)


def asymptotic_preset(eps: Rate, N: int) -> tuple[int, int]:
    """``(v, u)`` for the asymptotic parameter choice at slack ``eps``."""
    eps = as_fraction(eps)
    if not 0 < eps <= 1:
        raise InfeasibleParams("eps must lie in (0, 1]")
    v = math.ceil(1 / eps)
    u = 2 / eps ** 4 + 2 * N / eps ** 2
    return v, math.floor(u)


def asymptotic_rho(eps: Rate, N: int, R: Rate) -> Fraction:
    eps, R = as_fraction(eps), as_fraction(R)
    return min(Fraction(1, 2) - Fraction(1, 2 * N),
               1 - (1 + N * eps ** 2) * R - N * eps ** 4 - N * N * eps ** 6)


def asymptotic_delta(q: int, eps: Rate, N: int) -> float:
    return float(q) ** (float(1 / as_fraction(eps)) - N)


def transmission_rate(p: LvParams) -> Fraction:
    """Symbols sent per message symbol."""
    return Fraction(p.N * p.u, p.msg_len)


# -- codewords ---------------------------------------------------------------

@dataclass(frozen=True)
class LvCodeword:
    components: tuple[tuple[int, ...], ...]

    @property
    def N(self) -> int:
        return len(self.components)

    def frs_part(self, p: LvParams) -> list[list[int]]:
        return [list(c[:p.u1]) for c in self.components]

    def key_part(self, p: LvParams, i: int) -> tuple[int, ...]:
        return self.components[i][p.u1:]

    def symbol_count(self) -> int:
        return sum(len(c) for c in self.components)

    def add_error(self, error: dict[int, Sequence[int]], q: int) -> "LvCodeword":
        comps = list(self.components)
        for i, e in error.items():
            comps[i] = tuple((a + b) % q for a, b in zip(comps[i], e))
        return LvCodeword(tuple(comps))


@dataclass(frozen=True)
class DecodeOutcome:
    message: Optional[tuple[int, ...]]
    systems: tuple[Optional[tuple[int, ...]], ...] = dc_field(default=(), compare=False)

    @property
    def bottom(self) -> bool:
        return self.message is None

    def __str__(self):
        return "BOTTOM" if self.message is None else " ".join(map(str, self.message))


BOTTOM = DecodeOutcome(None)


def pad_message(p: LvParams, msg: Sequence[int]) -> list[int]:
    if len(msg) != p.msg_len:
        raise ValueError(f"message length {len(msg)} != N*u*R = {p.msg_len}")
    return [m % p.q for m in msg] + [0] * (p.x_len - p.msg_len)


def lv_encode(p: LvParams, msg: Sequence[int], rng: random.Random,
              keys: Optional[Sequence[MacKey]] = None) -> LvCodeword:
    """Encode ``msg``; ``keys`` bypasses key sampling (for tests)."""
    x = pad_message(p, msg)
    mp = p.mac
    if keys is None:
        keys = [MacKey.random(mp, rng) for _ in range(p.N)]
    elif len(keys) != p.N:
        raise ValueError(f"need {p.N} keys")
    frs_msg = list(x)
    for key in keys:
        frs_msg.extend(mac_tag_matrix(mp, x, key))
    cols = frs_encode(p.frs, frs_msg)
    return LvCodeword(tuple(tuple(col) + tuple(key.to_vector()) for col, key in zip(cols, keys)))


def _check_received(p: LvParams, y: LvCodeword) -> None:
    if len(y.components) != p.N:
        raise MalformedInput(f"expected {p.N} components, got {len(y.components)}")
    for i, c in enumerate(y.components):
        if len(c) != p.u:
            raise MalformedInput(f"component {i} has {len(c)} symbols, expected u={p.u}")


def received_keys(p: LvParams, y: LvCodeword) -> list[MacKey]:
    mp = p.mac
    return [MacKey.from_vector(mp, y.key_part(p, i)) for i in range(p.N)]


def frs_message_space(p: LvParams, y: LvCodeword) -> tuple[Matrix, list[int]]:
    """Message-finding rows over ``(x, t_1..t_N)`` from the FRS part of ``y``."""
    ip = interpolate(p.frs, y.frs_part(p))
    return message_system(p.frs, ip)


def joint_system(p: LvParams, frs_rows: Matrix, frs_rhs: Sequence[int],
                 key: MacKey, slot: int) -> tuple[Matrix, list[int]]:
    """FRS rows stacked on the MAC rows of one received key (slot is 1-based)."""
    mac_rows, mac_rhs = mac_equation_rows(p.mac, key, slot, p.N)
    return frs_rows.vstack(mac_rows), list(frs_rhs) + mac_rhs


def _system_output(p: LvParams, space: SolutionSpace) -> Optional[tuple[int, ...]]:
    if not space.consistent:
        return None
    xs = space.project(0, p.x_len)
    if xs.dimension:
        return None
    x = xs.particular
    if any(x[p.msg_len:]):
        return None
    return x


def _restrict(p: LvParams, frs_space: SolutionSpace, key: MacKey, slot: int) -> SolutionSpace:
    """Intersect the FRS space with one key's MAC equations."""
    q = p.q
    rows, rhs = mac_equation_rows(p.mac, key, slot, p.N)
    f0 = list(frs_space.particular)
    resid = [(c - r) % q for c, r in zip(rhs, rows.matvec(f0))]
    basis = [list(b) for b in frs_space.basis]
    if not basis:
        ok = not any(resid)
        return SolutionSpace(q, len(f0), tuple(f0) if ok else None)
    images = [rows.matvec(b) for b in basis]
    coef = Matrix(q, tuple(tuple(col) for col in zip(*images)), len(basis))
    lam = solve_affine(coef, resid)
    if not lam.consistent:
        return SolutionSpace(q, len(f0), None)
    part = f0[:]
    for c, b in zip(lam.particular, basis):
        if c:
            part = [(a + c * bb) % q for a, bb in zip(part, b)]
    new_basis = []
    for nu in lam.basis:
        vec = [0] * len(f0)
        for c, b in zip(nu, basis):
            if c:
                vec = [(a + c * bb) % q for a, bb in zip(vec, b)]
        new_basis.append(tuple(vec))
    return SolutionSpace(q, len(f0), tuple(part), tuple(new_basis))


def system_spaces(p: LvParams, y: LvCodeword, method: str = "restrict") -> list[SolutionSpace]:
    """Solution space of each of the N joint systems.

    ``restrict`` solves the shared FRS rows once and intersects with each key's
    MAC rows; ``stacked`` solves every stacked system from scratch. Both give
    the same spaces.
    """
    _check_received(p, y)
    n = p.k
    try:
        frs_rows, frs_rhs = frs_message_space(p, y)
    except DecodeDegenerate:
        return [SolutionSpace(p.q, n, None)] * p.N
    keys = received_keys(p, y)
    if method == "stacked":
        return [solve_affine(*joint_system(p, frs_rows, frs_rhs, key, i + 1))
                for i, key in enumerate(keys)]
    if method != "restrict":
        raise ValueError(f"unknown method {method!r}")
    frs_space = solve_affine(frs_rows, frs_rhs)
    if not frs_space.consistent:
        return [frs_space] * p.N
    return [_restrict(p, frs_space, key, i + 1) for i, key in enumerate(keys)]


def lv_decode(p: LvParams, y: LvCodeword, method: str = "restrict") -> DecodeOutcome:
    outputs = tuple(_system_output(p, s) for s in system_spaces(p, y, method))
    votes = Counter(x for x in outputs if x is not None)
    winners = [x for x, n in votes.items() if n >= p.threshold]
    if 2 * p.threshold > p.N:
        assert len(winners) <= 1, "two values reached a majority threshold"
    if len(winners) != 1:
        return DecodeOutcome(None, outputs)
    return DecodeOutcome(winners[0][:p.msg_len], outputs)


# -- file formats --------------------------------------------------------------

def format_codeword(p: LvParams, c: LvCodeword) -> str:
    head = f"{p.N} {p.u1} {p.u2} {p.q} {p.v} {p.l} {p.d} {p.R}"
    return head + "\n" + "\n".join(" ".join(map(str, comp)) for comp in c.components) + "\n"


def parse_codeword(text: str) -> tuple[LvParams, LvCodeword]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MalformedInput("empty codeword file")
    head = lines[0].split()
    if len(head) != 8:
        raise MalformedInput("codeword header must be 'N u1 u2 q v l d R'")
    try:
        N, u1, u2, q, v, l, d = map(int, head[:7])
        R = Fraction(head[7])
        comps = tuple(tuple(int(tok) for tok in ln.split()) for ln in lines[1:])
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None
    try:
        p = derive_params(N, u1, v, R, q)
    except ValueError as exc:
        raise MalformedInput(f"header describes no valid code: {exc}") from None
    if (p.u2, p.l, p.d) != (u2, l, d):
        raise MalformedInput("header fields are inconsistent with derived parameters")
    c = LvCodeword(comps)
    _check_received(p, c)
    if any(not 0 <= s < q for comp in comps for s in comp):
        raise MalformedInput("symbol outside [0, q)")
    return p, c


def format_message(msg: Sequence[int]) -> str:
    return " ".join(map(str, msg)) + "\n"


def parse_message(text: str, p: LvParams) -> list[int]:
    try:
        msg = [int(tok) for tok in text.split()]
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None
    if len(msg) != p.msg_len:
        raise MalformedInput(f"message has {len(msg)} symbols, expected {p.msg_len}")
    if any(not 0 <= m < p.q for m in msg):
        raise MalformedInput("message symbol outside [0, q)")
    return msg
