"""Exact integer linear algebra on lists of lists of Python ints.

Matrices are plain ``list[list[int]]`` (row-major).  Everything is exact;
nothing here ever touches floating point.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from .errors import DomainError

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def copy(m: Sequence[Sequence[int]]) -> Matrix:
    return [list(map(int, row)) for row in m]


def shape(m: Sequence[Sequence[int]], cols: int | None = None) -> tuple[int, int]:
    r = len(m)
    c = len(m[0]) if r else (cols or 0)
    if any(len(row) != c for row in m):
        raise DomainError("ragged matrix")
    return r, c


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    if len(a[0]) != inner:
        raise DomainError(f"cannot multiply {len(a)}x{len(a[0])} by {inner}x?")
    cols = len(b[0]) if b else 0
    bt = list(zip(*b)) if b else [()] * cols
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*m)]


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = copy(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def inverse_unimodular(m: Sequence[Sequence[int]]) -> Matrix:
    """Exact inverse of a square integer matrix with determinant +-1."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise DomainError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    inv = [row[n:] for row in a]
    if any(x.denominator != 1 for row in inv for x in row):
        raise DomainError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


# -- Smith normal form ------------------------------------------------------


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[list[int], Matrix, Matrix]:
    """Return (divisors, left, right) with left @ m @ right diagonal.

    ``divisors`` lists the nonzero diagonal entries d1 | d2 | ...; left and right
    are unimodular.  Pivots are chosen by minimal absolute value.
    """
    a = copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    left = identity(rows)
    right = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row dst += f * row src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + f * y for x, y in zip(left[dst], left[src])]

    def add_col(src, dst, f):  # col dst += f * col src
        for row in a:
            row[dst] += f * row[src]
        for row in right:
            row[dst] += f * row[src]

    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    if a[t][j]:
                        dirty = True
            if not dirty:
                # enforce divisibility of the remaining block
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # move the smallest remaining entry of row/col t into the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
            _, i, j = min(cand)
            swap_rows(t, i)
            swap_cols(t, j)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
        t += 1
    divisors = [a[i][i] for i in range(t)]
    return divisors, left, right


def smith_divisors(m: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors only (no transforms); same result as smith_normal_form."""
    return smith_normal_form(m)[0]


def rank(m: Sequence[Sequence[int]]) -> int:
    return len(hermite_normal_form(m)[0]) if m else 0


# -- Hermite normal form ----------------------------------------------------


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row-style HNF.  Returns (H, U) with U unimodular and U @ m = H stacked on zeros.

    H holds only the nonzero rows: upper echelon, positive pivots, entries
    above each pivot reduced into [0, pivot).
    """
    a = copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity(rows)
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        while True:
            nz = [(abs(a[i][c]), i) for i in range(r, rows) if a[i][c]]
            if not nz:
                break
            _, i = min(nz)
            a[r], a[i] = a[i], a[r]
            u[r], u[i] = u[i], u[r]
            done = True
            for i in range(r + 1, rows):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < rows and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
                u[r] = [-x for x in u[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            pivots.append(c)
            r += 1
    return a[:r], u


def left_kernel(m: Sequence[Sequence[int]]) -> Matrix:
    """Basis (as rows, in HNF) of the integer vectors x with x @ m = 0."""
    if not m:
        return []
    h, u = hermite_normal_form(m)
    ker = u[len(h):]
    return hermite_normal_form(ker)[0] if ker else []


# -- partial bases ----------------------------------------------------------


def _minor_gcd(vectors: Sequence[Sequence[int]], k: int, n: int) -> int:
    g = 0
    for cols in itertools.combinations(range(n), k):
        g = gcd(g, det([[v[c] for c in cols] for v in vectors]))
        if g == 1:
            return 1
    return g


def is_partial_basis(vectors: Sequence[Sequence[int]], n: int | None = None) -> bool:
    """True iff the rows extend to a basis of Z^n.

    Uses the gcd of maximal minors, which equals the product of the Smith
    divisors.
    """
    k = len(vectors)
    if n is None:
        if not k:
            return True
        n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise DomainError("vectors must all have length n")
    if k > n:
        raise DomainError(f"{k} vectors cannot be a partial basis of Z^{n}")
    if k == 0:
        return True
    return _minor_gcd(vectors, k, n) == 1


def reduce_to_standard(vectors: Sequence[Sequence[int]], n: int | None = None) -> Matrix:
    """M in GL_n(Z) with M @ vectors[i] = e_{n-k+i} (1-based i).

    Constructive transitivity witness: completes the partial basis through the
    Smith form and inverts the completed frame.
    """
    k = len(vectors)
    if n is None:
        n = len(vectors[0]) if k else 0
    if not is_partial_basis(vectors, n):
        raise DomainError(f"{[list(v) for v in vectors]} is not a partial basis")
    if k == 0:
        return identity(n)
    _, left, right = smith_normal_form(vectors)
    q = inverse_unimodular(right)  # rows of q form a basis of Z^n
    frame_cols = [list(row) for row in q[k:]] + [list(v) for v in vectors]
    frame = transpose(frame_cols)
    return inverse_unimodular(frame)


def primitive(v: Sequence[int]) -> bool:
    return reduce(gcd, (abs(x) for x in v), 0) == 1


# -- lattices ---------------------------------------------------------------


@dataclass(frozen=True)
class Lattice:
    """Sublattice of Z^n; basis rows kept in Hermite normal form."""

    ambient_rank: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], n: int) -> "Lattice":
        rows = [list(v) for v in vectors]
        if any(len(v) != n for v in rows):
            raise DomainError(f"vectors must lie in Z^{n}")
        h = hermite_normal_form(rows)[0] if rows else []
        return cls(n, tuple(tuple(r) for r in h))

    @classmethod
    def zero(cls, n: int) -> "Lattice":
        return cls(n, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        """Membership by back-substitution along the HNF pivots."""
        rest = list(v)
        for row in self.basis:
            c = next(i for i, x in enumerate(row) if x)
            if rest[c] % row[c]:
                return False
            q = rest[c] // row[c]
            rest = [x - q * y for x, y in zip(rest, row)]
        return not any(rest)

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative of v + L: pivot entries pushed into [0, pivot)."""
        rest = list(v)
        for row in self.basis:
            c = next(i for i, x in enumerate(row) if x)
            q = rest[c] // row[c]
            if q:
                rest = [x - q * y for x, y in zip(rest, row)]
        return tuple(rest)

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice.span(self.basis + other.basis, self.ambient_rank)

    def to_json(self) -> dict:
        return {"ambient_rank": self.ambient_rank, "basis": matrix_to_json(self.basis)}


def intersect_lattices(a: Lattice, b: Lattice) -> Lattice:
    """Intersection via the left kernel of the stacked bases."""
    if a.ambient_rank != b.ambient_rank:
        raise DomainError("lattices live in different ambient ranks")
    n = a.ambient_rank
    if not a.basis or not b.basis:
        return Lattice.zero(n)
    stacked = [list(r) for r in a.basis] + [list(r) for r in b.basis]
    ker = left_kernel(stacked)
    ka = len(a.basis)
    common = [
        [sum(y * row[j] for y, row in zip(x[:ka], a.basis)) for j in range(n)] for x in ker
    ]
    return Lattice.span(common, n)


# -- serialisation ----------------------------------------------------------


def matrix_to_json(m: Iterable[Sequence[int]]) -> list[list[str]]:
    return [[str(x) for x in row] for row in m]


def matrix_from_json(data) -> Matrix:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        return [[int(x) for x in row] for row in data]
    except (TypeError, ValueError) as exc:
        raise DomainError(f"malformed integer matrix: {exc}") from None
