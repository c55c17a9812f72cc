"""Pure-Python Gauss-Jordan elimination, used when the compiled kernel is absent."""

MAX_MODULUS = None


def rref(rows, q):
    """Return ``(reduced_rows, pivot_columns)`` for a list-of-lists matrix mod q."""
    a = [[x % q for x in row] for row in rows]
    n = len(a)
    m = len(a[0]) if n else 0
    pivots = []
    r = 0
    for c in range(m):
        if r == n:
            break
        piv = next((i for i in range(r, n) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], q - 2, q)
        prow = [x * inv % q for x in a[r]]
        a[r] = prow
        tail = prow[c:]
        for i in range(n):
            if i != r and a[i][c]:
                f = q - a[i][c]
                row = a[i]
                row[c:] = [(x + f * y) % q for x, y in zip(row[c:], tail)]
        pivots.append(c)
        r += 1
    return a, pivots


def interpolation_rows(alphas, windows, n_a0, D, q):
    """Rows ``[alpha^e (e < n_a0)] + [y_s * alpha^e (e <= D)]`` for each point."""
    out = []
    for a, ys in zip(alphas, windows):
        pw = [1] * max(n_a0, D + 1)
        for e in range(1, len(pw)):
            pw[e] = pw[e - 1] * a % q
        row = pw[:n_a0]
        low = pw[:D + 1]
        for y in ys:
            row.extend(y * x % q for x in low)
        out.append(row)
    return out


def poly_eval_many(coeffs, xs, q):
    """Horner evaluation of one polynomial at many points."""
    rev = [c % q for c in reversed(coeffs)]
    out = []
    for x in xs:
        acc = 0
        for c in rev:
            acc = (acc * x + c) % q
        out.append(acc)
    return out
