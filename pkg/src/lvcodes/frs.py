"""Folded Reed-Solomon codes with the linear-algebraic list decoder.

A message of ``k`` symbols is the coefficient vector of ``f`` (degree < k). The
codeword has ``N`` columns; column ``j`` holds ``f(g^(j*u1 + w))`` for
``w = 0..u1-1`` where ``g`` generates F_q^*.

Decoding interpolates ``Q = A_0(X) + sum_s A_s(X) Y_s`` through every window of
``v`` consecutive symbols in each column, then solves the linear system that
says ``Q(X, f(X), f(gX), ..., f(g^(v-1) X))`` vanishes in its low coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import _kernel
from .field import PrimeField, primitive_root
from .linalg import Matrix, SolutionSpace, enumerate_solutions, solve_affine

Columns = list[list[int]]


class DecodeDegenerate(RuntimeError):
    """The interpolation polynomial carries no Y-terms, so no message can be read off it."""


@dataclass(frozen=True)
class FrsParams:
    q: int
    u1: int
    N: int
    k: int
    v: int
    gamma: Optional[int] = None

    def __post_init__(self):
        field = PrimeField(self.q)
        if self.gamma is None:
            object.__setattr__(self, "gamma", primitive_root(field))
        elif self.q > 2 and field.order(self.gamma) != self.q - 1:
            raise ValueError(f"{self.gamma} does not generate F_{self.q}^*")
        if self.u1 < 1 or self.N < 1:
            raise ValueError("u1 and N must be positive")
        if self.q <= self.u1 * self.N:
            raise ValueError(f"need q > u1*N = {self.u1 * self.N} for distinct evaluation points")
        if not 1 <= self.k <= self.u1 * self.N:
            raise ValueError(f"dimension k={self.k} must lie in [1, u1*N]")
        if not 1 <= self.v <= self.u1:
            raise ValueError(f"decoder parameter v={self.v} must lie in [1, u1]")

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.q)

    @property
    def n(self) -> int:
        return self.u1 * self.N

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, self.n)

    @property
    def n0(self) -> int:
        return (self.u1 - self.v + 1) * self.N

    @property
    def degree_bound(self) -> int:
        # smallest D with (D+1)v + (D+k) > n0, so the interpolation system has a kernel
        num = self.n0 + 1 - self.k - self.v
        return max(0, -(-num // (self.v + 1)))

    def points(self) -> list[int]:
        q, g = self.q, self.gamma
        out, x = [], 1
        for _ in range(self.n):
            out.append(x)
            x = x * g % q
        return out


@dataclass(frozen=True)
class InterpolationPoly:
    a0: tuple[int, ...]                 # D + k coefficients
    ai: tuple[tuple[int, ...], ...]     # v polynomials of D + 1 coefficients
    D: int

    def evaluate(self, x: int, ys: Sequence[int], q: int) -> int:
        acc = 0
        for c in reversed(self.a0):
            acc = (acc * x + c) % q
        for poly, y in zip(self.ai, ys):
            part = 0
            for c in reversed(poly):
                part = (part * x + c) % q
            acc = (acc + part * y) % q
        return acc


def frs_encode(p: FrsParams, msg: Sequence[int]) -> Columns:
    if len(msg) != p.k:
        raise ValueError(f"message length {len(msg)} != k = {p.k}")
    values = _kernel.poly_eval_many([m % p.q for m in msg], p.points(), p.q)
    return [values[j * p.u1:(j + 1) * p.u1] for j in range(p.N)]


def _check_shape(p: FrsParams, y: Sequence[Sequence[int]]) -> None:
    if len(y) != p.N or any(len(col) != p.u1 for col in y):
        raise ValueError(f"received word must be {p.N} columns of {p.u1} symbols")


def interpolation_points(p: FrsParams, y: Sequence[Sequence[int]]):
    """Yield ``(alpha, window)`` for every column and window start, column-major."""
    pts = p.points()
    for j in range(p.N):
        col = y[j]
        for w in range(p.u1 - p.v + 1):
            yield pts[j * p.u1 + w], [c % p.q for c in col[w:w + p.v]]


def interpolate(p: FrsParams, y: Sequence[Sequence[int]]) -> InterpolationPoly:
    _check_shape(p, y)
    q, D, k, v = p.q, p.degree_bound, p.k, p.v
    n_a0 = D + k
    pts = list(interpolation_points(p, y))
    rows = _kernel.interpolation_rows([a for a, _ in pts], [w for _, w in pts], n_a0, D, q)
    ncols = n_a0 + v * (D + 1)
    reduced, pivots = _kernel.rref(rows, q)
    pivot_set = set(pivots)
    chosen = None
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [0] * ncols
        vec[free] = 1
        for r, c in enumerate(pivots):
            vec[c] = -reduced[r][free] % q
        if chosen is None:
            chosen = vec
        if any(vec[n_a0:]):
            chosen = vec
            break
    if chosen is None:
        raise AssertionError("interpolation system has a trivial kernel; degree bound too small")
    a0 = tuple(chosen[:n_a0])
    ai = tuple(tuple(chosen[n_a0 + s * (D + 1):n_a0 + (s + 1) * (D + 1)]) for s in range(v))
    return InterpolationPoly(a0, ai, D)


def _valuation(poly: Sequence[int]) -> Optional[int]:
    return next((i for i, c in enumerate(poly) if c), None)


def message_system(p: FrsParams, ip: InterpolationPoly) -> tuple[Matrix, list[int]]:
    """Linear constraints on the message coefficients.

    Row ``i`` says the coefficient of ``X^i`` in ``Q(X, f(X), ..., f(g^(v-1)X))``
    vanishes; entry ``(i, j)`` is ``B_{i-j}(g^j)`` with
    ``B_t(X) = sum_s a_{s,t} X^(s-1)``.

    When every ``A_s`` (s >= 1) is divisible by ``X^r`` the rows are taken from
    coefficients ``r .. r+k-1`` instead, so the diagonal is never identically
    zero; lower coefficients only constrain ``A_0`` and are kept when nonzero
    (making the system inconsistent).
    """
    q, k, D = p.q, p.k, ip.D
    vals = [v for v in map(_valuation, ip.ai) if v is not None]
    if not vals:
        raise DecodeDegenerate("all Y-coefficients of Q vanish")
    r = min(vals)
    g = p.gamma
    # powers[s][j] = g^(s*j)
    base = [pow(g, s, q) for s in range(p.v)]
    powers = []
    for s in range(p.v):
        row, x = [], 1
        for _ in range(k):
            row.append(x)
            x = x * base[s] % q
        powers.append(row)
    a0 = ip.a0
    rows, rhs = [], []
    for i in range(r):
        if i < len(a0) and a0[i]:
            rows.append([0] * k)
            rhs.append(-a0[i] % q)
    for i in range(r, r + k):
        row = [0] * k
        for j in range(max(0, i - D), min(i, k - 1) + 1):
            t = i - j
            acc = 0
            for s in range(p.v):
                a = ip.ai[s][t]
                if a:
                    acc += a * powers[s][j]
            row[j] = acc % q
        rows.append(row)
        rhs.append(-a0[i] % q if i < len(a0) else 0)
    return Matrix(q, tuple(tuple(r_) for r_ in rows), k), rhs


def list_decode(p: FrsParams, y: Sequence[Sequence[int]]) -> SolutionSpace:
    """Affine space (dimension <= v-1) holding every message close enough to ``y``."""
    ip = interpolate(p, y)
    a, b = message_system(p, ip)
    return solve_affine(a, b)


def agreement(p: FrsParams, msg: Sequence[int], y: Sequence[Sequence[int]]) -> int:
    cw = frs_encode(p, msg)
    return sum(1 for c, r in zip(cw, y) if list(c) == [x % p.q for x in r])


def radius_rhs(p: FrsParams) -> Fraction:
    v, u1 = p.v, p.u1
    return p.N * (Fraction(1, v + 1) + Fraction(v, v + 1) * Fraction(u1) * p.rate / (u1 - v + 1))


def agreement_threshold(p: FrsParams) -> int:
    """Smallest column agreement that is guaranteed to land in the decoded space."""
    return int(radius_rhs(p)) + 1


def max_correctable(p: FrsParams) -> int:
    return max(0, p.N - agreement_threshold(p))


def list_decode_candidates(p: FrsParams, y: Sequence[Sequence[int]], cap: int = 10**5) -> list[tuple[int, ...]]:
    """Enumerate the decoded space and keep messages meeting the agreement threshold."""
    space = list_decode(p, y)
    if not space.consistent:
        return []
    need = agreement_threshold(p)
    return [m for m in enumerate_solutions(space, cap) if agreement(p, m, y) >= need]


def format_codeword(columns: Columns) -> str:
    return "\n".join(" ".join(str(x) for x in col) for col in columns) + "\n"


def parse_codeword(text: str, p: FrsParams) -> Columns:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    cols = [[int(tok) for tok in ln.split()] for ln in lines]
    _check_shape(p, cols)
    return cols
