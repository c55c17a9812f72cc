"""Dense matrices over F_q, row reduction and affine solution spaces."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Optional, Sequence

from . import _kernel


class DimensionError(ValueError):
    pass


class CapExceeded(RuntimeError):
    """Raised when enumerating a solution space would exceed the caller's cap."""


@dataclass(frozen=True)
class Matrix:
    q: int
    rows: tuple[tuple[int, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], q: int, ncols: Optional[int] = None) -> "Matrix":
        rows = tuple(tuple(x % q for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionError("ncols required for an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionError("rows have inconsistent lengths")
        return cls(q, rows, ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, q: int) -> "Matrix":
        return cls(q, tuple((0,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int, q: int) -> "Matrix":
        return cls(q, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def matvec(self, x: Sequence[int]) -> list[int]:
        if len(x) != self.ncols:
            raise DimensionError(f"vector length {len(x)} != {self.ncols} columns")
        q = self.q
        return [sum(a * b for a, b in zip(r, x)) % q for r in self.rows]

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.rows]

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise DimensionError("hstack needs equal row counts")
        return Matrix(self.q, tuple(a + b for a, b in zip(self.rows, other.rows)),
                      self.ncols + other.ncols)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise DimensionError("vstack needs equal column counts")
        return Matrix(self.q, self.rows + other.rows, self.ncols)


@dataclass(frozen=True)
class SolutionSpace:
    """All x with a.x = b: ``particular + span(basis)``, or empty when inconsistent."""

    q: int
    n: int
    particular: Optional[tuple[int, ...]]
    basis: tuple[tuple[int, ...], ...] = dc_field(default=())

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def unique(self) -> bool:
        return self.consistent and not self.basis

    def size(self) -> int:
        return self.q ** self.dimension if self.consistent else 0

    def contains(self, x: Sequence[int]) -> bool:
        """Membership test by solving for coordinates along the basis."""
        if not self.consistent or len(x) != self.n:
            return False
        q = self.q
        diff = [(a - b) % q for a, b in zip(x, self.particular)]
        if not self.basis:
            return not any(diff)
        cols = [list(col) + [d] for col, d in zip(zip(*self.basis), diff)]
        reduced, pivots = _kernel.rref(cols, q)
        return self.dimension not in pivots

    def project(self, start: int, stop: int) -> "SolutionSpace":
        """Image of the space under the coordinate slice ``[start:stop]``."""
        if not self.consistent:
            return SolutionSpace(self.q, stop - start, None)
        part = self.particular[start:stop]
        sliced = [b[start:stop] for b in self.basis if any(b[start:stop])]
        if not sliced:
            return SolutionSpace(self.q, stop - start, part)
        reduced, pivots = _kernel.rref(sliced, self.q)
        return SolutionSpace(self.q, stop - start, part,
                             tuple(tuple(reduced[i]) for i in range(len(pivots))))


def row_reduce(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns (first nonzero pivot in column order)."""
    if m.nrows == 0:
        return m, 0, []
    reduced, pivots = _kernel.rref([list(r) for r in m.rows], m.q)
    return Matrix(m.q, tuple(tuple(r) for r in reduced), m.ncols), len(pivots), pivots


def rank(m: Matrix) -> int:
    return row_reduce(m)[1]


def _space_from_rref(reduced, pivots, n: int, q: int) -> SolutionSpace:
    if pivots and pivots[-1] == n:
        return SolutionSpace(q, n, None)
    particular = [0] * n
    for r, c in enumerate(pivots):
        particular[c] = reduced[r][n]
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = [0] * n
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = -reduced[r][f] % q
        basis.append(tuple(v))
    return SolutionSpace(q, n, tuple(particular), tuple(basis))


def solve_affine(a: Matrix, b: Sequence[int]) -> SolutionSpace:
    if a.nrows != len(b):
        raise DimensionError(f"{a.nrows} equations but rhs has length {len(b)}")
    q = a.q
    n = a.ncols
    if a.nrows == 0:
        return _space_from_rref([], [], n, q)
    aug = [list(r) + [y % q] for r, y in zip(a.rows, b)]
    reduced, pivots = _kernel.rref(aug, q)
    return _space_from_rref(reduced, pivots, n, q)


def nullspace(a: Matrix) -> list[tuple[int, ...]]:
    return list(solve_affine(a, [0] * a.nrows).basis)


def iter_solutions(s: SolutionSpace) -> Iterator[tuple[int, ...]]:
    if not s.consistent:
        return
    q = s.q
    for coeffs in itertools.product(range(q), repeat=s.dimension):
        v = list(s.particular)
        for c, b in zip(coeffs, s.basis):
            if c:
                v = [(x + c * y) % q for x, y in zip(v, b)]
        yield tuple(v)


def enumerate_solutions(s: SolutionSpace, cap: int) -> list[tuple[int, ...]]:
    if not s.consistent:
        raise ValueError("cannot enumerate an inconsistent system")
    if s.size() > cap:
        raise CapExceeded(f"{s.q}^{s.dimension} solutions exceed cap {cap}")
    return list(iter_solutions(s))
