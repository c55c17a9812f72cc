"""One-time MAC over F_q in polynomial form and in matrix form.

A source state is ``l`` blocks of ``N`` symbols, read as polynomials
``x_m(X)`` of degree < N. The key holds ``d`` blocks ``r_1..r_d`` (degree < N)
and a final block ``r_{d+1}`` of ``3N-2`` symbols. The tag is the coefficient
vector of::

    sum_{m<=d} x_m r_m  +  sum_{d<m<=l} x_m r_i r_j  +  r_{d+1}

where block ``m > d`` is paired with ``(i, j)`` by ``m = i*d + j - i(i-1)/2``.
No reduction of powers of X takes place, so the tag has exactly ``3N-2``
coefficients. Forgery probability is at most ``2 / q^N``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .field import PrimeField, poly_add, poly_convolve
from .linalg import Matrix


def min_key_blocks(l: int) -> int:
    d = 1
    while d * (d + 3) // 2 < l:
        d += 1
    return d


@dataclass(frozen=True)
class MacParams:
    q: int
    N: int
    l: int
    d: Optional[int] = None

    def __post_init__(self):
        PrimeField(self.q)
        if self.N < 1:
            raise ValueError("N must be positive")
        if self.l < 1:
            raise ValueError("source state needs at least one block")
        if self.d is None:
            object.__setattr__(self, "d", min_key_blocks(self.l))
        elif self.d < 1 or self.d * (self.d + 3) // 2 < self.l:
            raise ValueError(f"d={self.d} too small: need d(d+3)/2 >= l={self.l}")

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.q)

    @property
    def tag_len(self) -> int:
        return 3 * self.N - 2

    @property
    def key_len(self) -> int:
        return self.N * self.d + self.tag_len

    @property
    def state_len(self) -> int:
        return self.N * self.l


@dataclass(frozen=True)
class MacKey:
    r_blocks: tuple[tuple[int, ...], ...]
    r_final: tuple[int, ...]

    def to_vector(self) -> list[int]:
        out = []
        for blk in self.r_blocks:
            out.extend(blk)
        out.extend(self.r_final)
        return out

    @classmethod
    def from_vector(cls, p: MacParams, vec: Sequence[int]) -> "MacKey":
        if len(vec) != p.key_len:
            raise ValueError(f"key length {len(vec)} != N*d + 3N - 2 = {p.key_len}")
        vec = [x % p.q for x in vec]
        n = p.N
        blocks = tuple(tuple(vec[i * n:(i + 1) * n]) for i in range(p.d))
        return cls(blocks, tuple(vec[n * p.d:]))

    @classmethod
    def random(cls, p: MacParams, rng: random.Random) -> "MacKey":
        return cls.from_vector(p, [rng.randrange(p.q) for _ in range(p.key_len)])

    def with_final_offset(self, p: MacParams, delta: Sequence[int]) -> "MacKey":
        return MacKey(self.r_blocks, tuple((a + b) % p.q for a, b in zip(self.r_final, delta)))


def index_to_pair(m: int, d: int) -> tuple[int, int]:
    """Key pair ``(i, j)``, ``1 <= i <= j <= d``, for quadratic block index ``m``."""
    if not d + 1 <= m <= d * (d + 3) // 2:
        raise ValueError(f"block index {m} outside [{d + 1}, {d * (d + 3) // 2}]")
    for i in range(1, d + 1):
        j = m - i * d + i * (i - 1) // 2
        if i <= j <= d:
            return i, j
    raise AssertionError("unreachable")


def _blocks(p: MacParams, x: Sequence[int]) -> list[list[int]]:
    if len(x) != p.state_len:
        raise ValueError(f"source state length {len(x)} != N*l = {p.state_len}")
    n = p.N
    return [[v % p.q for v in x[m * n:(m + 1) * n]] for m in range(p.l)]


def _check_key(p: MacParams, key: MacKey) -> None:
    if len(key.r_blocks) != p.d or any(len(b) != p.N for b in key.r_blocks) \
            or len(key.r_final) != p.tag_len:
        raise ValueError("key shape does not match MAC parameters")


def block_key_poly(p: MacParams, key: MacKey, m: int) -> list[int]:
    """Key polynomial multiplying source block ``m`` (1-based), unnormalized."""
    if m <= p.d:
        return list(key.r_blocks[m - 1])
    i, j = index_to_pair(m, p.d)
    return poly_convolve(p.field, key.r_blocks[i - 1], key.r_blocks[j - 1], normalize=False)


def mac_tag_poly(p: MacParams, x: Sequence[int], key: MacKey) -> list[int]:
    _check_key(p, key)
    f = p.field
    acc = list(key.r_final)
    for m, xm in enumerate(_blocks(p, x), start=1):
        term = poly_convolve(f, xm, block_key_poly(p, key, m), normalize=False)
        acc = poly_add(f, acc, term, normalize=False)
    return acc[:p.tag_len] + [0] * (p.tag_len - len(acc))


def convolution_matrix(poly: Sequence[int], ncols: int, nrows: int) -> list[list[int]]:
    """Banded Toeplitz matrix: column c is ``poly`` shifted down by c rows."""
    out = [[0] * ncols for _ in range(nrows)]
    for c in range(ncols):
        for t, a in enumerate(poly):
            if c + t < nrows:
                out[c + t][c] = a
    return out


def key_matrix_rows(p: MacParams, key: MacKey) -> list[list[int]]:
    """Rows of ``[R_1 | ... | R_l]`` (without the final constant column)."""
    _check_key(p, key)
    rows = [[] for _ in range(p.tag_len)]
    for m in range(1, p.l + 1):
        blk = convolution_matrix(block_key_poly(p, key, m), p.N, p.tag_len)
        for r, part in zip(rows, blk):
            r.extend(part)
    return rows


def key_matrix(p: MacParams, key: MacKey) -> Matrix:
    rows = key_matrix_rows(p, key)
    for r, c in zip(rows, key.r_final):
        r.append(c)
    return Matrix(p.q, tuple(tuple(r) for r in rows), p.state_len + 1)


def mac_tag_matrix(p: MacParams, x: Sequence[int], key: MacKey) -> list[int]:
    _blocks(p, x)
    return key_matrix(p, key).matvec(list(x) + [1])


def mac_tag(p: MacParams, x: Sequence[int], key: MacKey) -> list[int]:
    return mac_tag_matrix(p, x, key)


def mac_verify(p: MacParams, x: Sequence[int], t: Sequence[int], key: MacKey) -> bool:
    if len(t) != p.tag_len:
        raise ValueError(f"tag length {len(t)} != 3N - 2 = {p.tag_len}")
    return mac_tag_matrix(p, x, key) == [c % p.q for c in t]


def mac_equation_rows(p: MacParams, key: MacKey, slot: int, total_slots: int) -> tuple[Matrix, list[int]]:
    """Rows ``[R' | 0 .. -I .. 0]`` and rhs ``-r_final`` over unknowns ``(x, t_1..t_total)``.

    ``slot`` is 1-based and picks which tag block receives the ``-I``.
    """
    if not 1 <= slot <= total_slots:
        raise ValueError(f"slot {slot} outside [1, {total_slots}]")
    q, tl = p.q, p.tag_len
    left = key_matrix_rows(p, key)
    rows = []
    for r, row in enumerate(left):
        tail = [0] * (total_slots * tl)
        tail[(slot - 1) * tl + r] = q - 1
        rows.append(tuple(row + tail))
    rhs = [-c % q for c in key.r_final]
    return Matrix(q, tuple(rows), p.state_len + total_slots * tl), rhs


def format_key(p: MacParams, key: MacKey) -> str:
    return f"{p.N} {p.l} {p.d} {p.q}\n" + " ".join(map(str, key.to_vector())) + "\n"


def parse_key(text: str) -> tuple[MacParams, MacKey]:
    head, *rest = [ln for ln in text.splitlines() if ln.strip()]
    N, l, d, q = map(int, head.split())
    p = MacParams(q, N, l, d)
    vec = [int(tok) for ln in rest for tok in ln.split()]
    return p, MacKey.from_vector(p, vec)


def format_tag(p: MacParams, t: Sequence[int]) -> str:
    return f"{p.N} {p.l} {p.d} {p.q}\n" + " ".join(map(str, t)) + "\n"


def parse_tag(text: str) -> tuple[MacParams, list[int]]:
    head, *rest = [ln for ln in text.splitlines() if ln.strip()]
    N, l, d, q = map(int, head.split())
    p = MacParams(q, N, l, d)
    t = [int(tok) for ln in rest for tok in ln.split()]
    if len(t) != p.tag_len:
        raise ValueError(f"tag length {len(t)} != {p.tag_len}")
    return p, t
