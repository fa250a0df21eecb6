"""Small exact linear algebra over ``Fraction``.

Matrices are tuples of row tuples. Sizes in this package never exceed a few
dozen, so plain Gaussian elimination is fine.
"""

from __future__ import annotations

from fractions import Fraction


def as_matrix(rows):
    m = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if m and any(len(row) != len(m[0]) for row in m):
        raise ValueError("ragged matrix")
    return m


def identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(n, m=None):
    m = n if m is None else m
    return tuple(tuple(Fraction(0) for _ in range(m)) for _ in range(n))


def diag(entries):
    entries = [Fraction(x) for x in entries]
    n = len(entries)
    return tuple(
        tuple(entries[i] if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def transpose(a):
    return tuple(zip(*a)) if a else ()


def matmul(a, b):
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def smul(c, a):
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in a)


def matpow(a, k):
    if k < 0:
        raise ValueError("negative power")
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def congruence(q, t):
    """``t^T q t``."""
    return matmul(matmul(transpose(t), q), t)


def is_symmetric(a):
    return all(a[i][j] == a[j][i] for i in range(len(a)) for j in range(i))


def is_zero(a):
    return all(x == 0 for row in a for x in row)


def det(a):
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    result = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            result = -result
        result *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return result


def solve(a, b):
    """Solve ``a x = b`` for ``x``; ``a`` may be non-square if consistent.

    Returns one exact solution (free variables set to zero) or raises
    ``ValueError`` when the system is inconsistent.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[Fraction(x) for x in a[i]] + [Fraction(b[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if m[i][cols] != 0:
            raise ValueError("inconsistent linear system")
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = m[i][cols]
    return tuple(x)


def inverse(a):
    if det(a) == 0:
        raise ValueError("singular matrix")
    n = len(a)
    cols = [solve(a, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    return transpose(cols)


def format_matrix(a):
    return [[str(x) for x in row] for row in a]
