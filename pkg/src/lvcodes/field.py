"""Prime-field arithmetic and dense polynomials over F_q.

Field elements are plain ``int`` values in ``[0, q)``. Polynomials are lists of
coefficients, lowest degree first; the normalized form has no trailing zeros
and the zero polynomial is ``[]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from sympy import factorint, isprime, nextprime


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class PrimeField:
    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 2 or not isprime(self.q):
            raise FieldError(f"modulus {self.q!r} is not prime")

    def __call__(self, value: int) -> int:
        return value % self.q

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def mul(self, a: int, b: int) -> int:
        return a * b % self.q

    def neg(self, a: int) -> int:
        return -a % self.q

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_q")
        return pow(a, -1, self.q)

    def pow(self, a: int, e: int) -> int:
        return pow(a, e, self.q)

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        n = self.q - 1
        order = n
        for p in factorint(n):
            while order % p == 0 and pow(a, order // p, self.q) == 1:
                order //= p
        return order

    def primitive_root(self) -> int:
        return primitive_root(self)


_OPS = {
    "add": lambda a, b, q: (a + b) % q,
    "sub": lambda a, b, q: (a - b) % q,
    "mul": lambda a, b, q: a * b % q,
}


def field_arith(field: PrimeField, a: int, b: int, op: str) -> int:
    try:
        fn = _OPS[op]
    except KeyError:
        raise FieldError(f"unknown operation {op!r}") from None
    return fn(a, b, field.q)


def invert(field: PrimeField, a: int) -> int:
    return field.inv(a)


def primitive_root(field: PrimeField) -> int:
    """Smallest generator of F_q^*.

    Chosen deterministically so codewords are reproducible across runs.
    """
    q = field.q
    if q == 2:
        return 1
    factors = list(factorint(q - 1))
    for g in range(2, q):
        if all(pow(g, (q - 1) // p, q) != 1 for p in factors):
            return g
    raise AssertionError("prime field without a generator")


def smallest_prime_above(n: int) -> int:
    return int(nextprime(n))


# -- polynomials ------------------------------------------------------------

def poly_normalize(coeffs: Sequence[int], q: int) -> list[int]:
    out = [c % q for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_eval(field: PrimeField, f: Sequence[int], x: int) -> int:
    q = field.q
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % q
    return acc


def poly_eval_many(field: PrimeField, f: Sequence[int], xs: Sequence[int]) -> list[int]:
    q = field.q
    rev = list(reversed(f))
    out = []
    for x in xs:
        acc = 0
        for c in rev:
            acc = (acc * x + c) % q
        out.append(acc)
    return out


def poly_convolve(field: PrimeField, f: Sequence[int], g: Sequence[int],
                  normalize: bool = True) -> list[int]:
    """Product of two polynomials.

    With ``normalize=False`` the result keeps the full ``len(f) + len(g) - 1``
    positional length, which the MAC blocks rely on.
    """
    q = field.q
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    out = [c % q for c in out]
    return poly_normalize(out, q) if normalize else out


def poly_add(field: PrimeField, f: Sequence[int], g: Sequence[int],
             normalize: bool = True) -> list[int]:
    q = field.q
    n = max(len(f), len(g))
    out = [((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % q for i in range(n)]
    return poly_normalize(out, q) if normalize else out


def format_poly(f: Sequence[int]) -> str:
    return " ".join(str(c) for c in f)


def parse_poly(text: str, field: PrimeField) -> list[int]:
    return poly_normalize([int(tok) for tok in text.split()], field.q)
