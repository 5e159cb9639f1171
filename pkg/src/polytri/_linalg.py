"""Exact rational and integer linear algebra on plain Python sequences."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = tuple
Matrix = list


def to_fraction(x) -> Fraction:
    """Coerce ``x`` to an exact rational.

    Accepts ints, Fractions and strings of the form ``"p"`` or ``"p/q"``.
    Floats are rejected so that rounding can never leak into exact data.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError(f"floating point value {x!r} not allowed; use 'p/q' strings")
    raise TypeError(f"cannot interpret {x!r} as a rational")


def to_point(coords: Iterable) -> tuple[Fraction, ...]:
    return tuple(to_fraction(c) for c in coords)


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def common_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


def primitive_integer(vec: Sequence) -> tuple[int, ...]:
    """Positive rescaling of a rational vector to a coprime integer vector."""
    den = common_denominator(vec)
    ints = [int(Fraction(v) * den) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return tuple(ints)
    return tuple(v // g for v in ints)


def sub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    """Rank by fraction-free elimination; integer input stays integer."""
    m = [list(row) for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pr = m[r]
        a = pr[c]
        for i in range(r + 1, len(m)):
            b = m[i][c]
            if b != 0:
                m[i] = [a * x - b * y for x, y in zip(m[i], pr)]
        r += 1
        if r == len(m):
            break
    return r


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel ``{x : rows @ x = 0}``."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(tuple(v))
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of ``a @ x = b`` (free variables set to zero) or None."""
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return tuple(x)


def det(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def affine_dim(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([sub(p, p0) for p in points[1:]]) if len(points) > 1 else 0


def chart_axes(points: Sequence[Sequence]) -> tuple[int, ...]:
    """Coordinate axes onto which the affine hull of ``points`` projects bijectively."""
    if len(points) <= 1:
        return ()
    p0 = points[0]
    diffs = [sub(p, p0) for p in points[1:]]
    # pivot columns of the transpose-free echelon form of the difference rows
    _, pivots = rref(diffs)
    return tuple(pivots)


def affine_coordinates(basis: Sequence[Sequence], x: Sequence) -> tuple[Fraction, ...] | None:
    """Barycentric weights of ``x`` w.r.t. affinely independent ``basis`` points.

    Returns None when ``x`` is not in their affine hull.
    """
    n = len(basis)
    dim = len(x)
    rows = [[basis[j][i] for j in range(n)] for i in range(dim)]
    rows.append([1] * n)
    return solve(rows, list(x) + [1])


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[dot(row, col) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in a)


def inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _column_echelon(m: Sequence[Sequence[int]], ncols: int):
    """Unimodular column reduction: returns (m @ u, u, rank)."""
    a = [list(row) for row in m]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]  # columns track ops

    def colop(i: int, j: int, p: int, q: int, r: int, s: int) -> None:
        # (col_i, col_j) <- (p col_i + q col_j, r col_i + s col_j)
        for mat in (a, u):
            for row in mat:
                ci, cj = row[i], row[j]
                row[i], row[j] = p * ci + q * cj, r * ci + s * cj

    c = 0
    for row_idx in range(len(a)):
        if c >= ncols:
            break
        for j in range(c + 1, ncols):
            x, y = a[row_idx][c], a[row_idx][j]
            if y == 0:
                continue
            g, s, t = _xgcd(x, y)
            colop(c, j, s, t, -y // g, x // g)
        if a[row_idx][c] != 0:
            c += 1
    return a, u, c


def integer_kernel(m: Sequence[Sequence[int]], ncols: int | None = None) -> list[tuple[int, ...]]:
    """Z-basis of ``{z in Z^n : m @ z = 0}`` via unimodular column operations."""
    if ncols is None:
        ncols = len(m[0])
    _, u, c = _column_echelon(m, ncols)
    return [tuple(u[i][j] for i in range(ncols)) for j in range(c, ncols)]


def image_lattice(generators: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """A basis of the lattice generated by rational vectors."""
    if not generators:
        return []
    den = common_denominator(x for g in generators for x in g)
    n = len(generators[0])
    m = [[int(Fraction(g[i]) * den) for g in generators] for i in range(n)]
    a, _, c = _column_echelon(m, len(generators))
    return [tuple(Fraction(a[i][j], den) for i in range(n)) for j in range(c)]


def lattice_preimage(m: Sequence[Sequence], ncols: int) -> list[tuple[int, ...]]:
    """Z-basis of ``{z in Z^ncols : m @ z in Z^rows}`` for a rational matrix ``m``."""
    if not m:
        return [tuple(int(i == j) for i in range(ncols)) for j in range(ncols)]
    den = common_denominator(x for row in m for x in row)
    if den == 1:
        return [tuple(int(i == j) for i in range(ncols)) for j in range(ncols)]
    rows = len(m)
    # kernel of [den*m | -den*I] projected to the first ncols coordinates
    big = []
    for i, row in enumerate(m):
        big.append([int(Fraction(x) * den) for x in row] + [-den * int(i == k) for k in range(rows)])
    ker = integer_kernel(big, ncols + rows)
    return [v[:ncols] for v in ker]
