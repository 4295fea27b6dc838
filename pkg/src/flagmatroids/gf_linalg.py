"""Exact dense linear algebra over prime fields GF(p).

Matrices are immutable, tiny (at most 32 x 32) and stored as flat row-major
tuples of ints reduced mod p.  Everything is plain integer arithmetic:
determinism and exactness matter more than speed at this scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    FieldMismatch,
    IndexOutOfRange,
    MatrixTooLarge,
    NoTransform,
    NotPrime,
    RankDeficient,
)

MAX_DIM = 32


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldPrime:
    """A prime field GF(p) with 2 <= p < 2**16."""

    p: int

    def __post_init__(self):
        if not (2 <= self.p < 2 ** 16) or not _is_prime(self.p):
            raise NotPrime(f"{self.p} is not a prime in [2, 2^16)")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)


@lru_cache(maxsize=None)
def field(p: int) -> FieldPrime:
    return FieldPrime(p)


@dataclass(frozen=True)
class GFMatrix:
    """Immutable rows x cols matrix over GF(p), entries row-major in [0, p)."""

    field: FieldPrime
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or self.rows > MAX_DIM or self.cols > MAX_DIM:
            raise MatrixTooLarge(f"{self.rows}x{self.cols} exceeds {MAX_DIM}x{MAX_DIM}")
        if len(self.entries) != self.rows * self.cols:
            raise IndexOutOfRange("entry count does not match shape")
        if any(not (0 <= e < self.field.p) for e in self.entries):
            raise IndexOutOfRange("entry not reduced mod p")

    @property
    def p(self) -> int:
        return self.field.p

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __str__(self) -> str:
        body = "; ".join(" ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"GF({self.p})[{body}]"


def matrix(p: int, rows: Sequence[Sequence[int]], cols: int | None = None) -> GFMatrix:
    """Build a GFMatrix from row lists, reducing entries mod p.

    `cols` is only needed for matrices with zero rows.
    """
    f = field(p)
    nrows = len(rows)
    if nrows == 0:
        if cols is None:
            raise IndexOutOfRange("column count required for an empty matrix")
        return GFMatrix(f, 0, cols, ())
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise IndexOutOfRange("ragged rows")
    return GFMatrix(f, nrows, ncols, tuple(e % p for r in rows for e in r))


def identity(p: int, n: int) -> GFMatrix:
    return matrix(p, [[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)


def zero(p: int, rows: int, cols: int) -> GFMatrix:
    return GFMatrix(field(p), rows, cols, (0,) * (rows * cols))


def transpose(a: GFMatrix) -> GFMatrix:
    return matrix(a.p, [list(a.col(j)) for j in range(a.cols)], cols=a.rows)


def matmul(a: GFMatrix, b: GFMatrix) -> GFMatrix:
    if a.p != b.p:
        raise FieldMismatch("matmul needs a common field")
    if a.cols != b.rows:
        raise IndexOutOfRange("inner dimensions differ")
    p = a.p
    rows = []
    for i in range(a.rows):
        ra = a.row(i)
        rows.append(
            [sum(ra[k] * b.at(k, j) for k in range(a.cols)) % p for j in range(b.cols)]
        )
    return matrix(p, rows, cols=b.cols)


def vstack(a: GFMatrix, b: GFMatrix) -> GFMatrix:
    if a.p != b.p:
        raise FieldMismatch("vstack needs a common field")
    if a.cols != b.cols:
        raise IndexOutOfRange("column counts differ")
    return GFMatrix(a.field, a.rows + b.rows, a.cols, a.entries + b.entries)


def prefix_rows(a: GFMatrix, d: int) -> GFMatrix:
    """The top d rows of a."""
    if not (0 <= d <= a.rows):
        raise IndexOutOfRange(f"prefix {d} of a {a.rows}-row matrix")
    return GFMatrix(a.field, d, a.cols, a.entries[: d * a.cols])


def select_cols(a: GFMatrix, cols: Iterable[int]) -> GFMatrix:
    """The submatrix on the given columns, in the order given."""
    idx = list(cols)
    if any(not (0 <= j < a.cols) for j in idx):
        raise IndexOutOfRange("column index out of range")
    rows = [[a.at(i, j) for j in idx] for i in range(a.rows)]
    return matrix(a.p, rows, cols=len(idx))


def drop_col(a: GFMatrix, j: int) -> GFMatrix:
    return select_cols(a, [c for c in range(a.cols) if c != j])


def rref(a: GFMatrix) -> tuple[GFMatrix, tuple[int, ...], GFMatrix]:
    """Reduced row echelon form.

    Returns (R, pivot columns, E) with E invertible and E @ a = R up to the
    zero rows of R.  E records the full row transform (including the rows
    that reduced to zero), so E @ a == R exactly.
    """
    p = a.p
    work = [list(a.row(i)) + [1 if k == i else 0 for k in range(a.rows)] for i in range(a.rows)]
    width = a.cols
    pivots: list[int] = []
    r = 0
    for c in range(width):
        pivot = next((i for i in range(r, a.rows) if work[i][c] % p), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = pow(work[r][c], p - 2, p)
        work[r] = [(x * inv) % p for x in work[r]]
        for i in range(a.rows):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [(x - f * y) % p for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    rmat = matrix(p, [row[:width] for row in work], cols=width)
    emat = matrix(p, [row[width:] for row in work], cols=a.rows)
    return rmat, tuple(pivots), emat


def rank(a: GFMatrix) -> int:
    return len(rref(a)[1])


def is_nonsingular(a: GFMatrix) -> bool:
    """True for square matrices of full rank; the 0x0 matrix is nonsingular."""
    return a.rows == a.cols and rank(a) == a.rows


def row_space_echelon(a: GFMatrix) -> tuple[tuple[int, ...], ...]:
    """Canonical basis of the row space: nonzero rows of the RREF."""
    r, pivots, _ = rref(a)
    return tuple(r.row(i) for i in range(len(pivots)))


def kernel_basis(a: GFMatrix) -> list[tuple[int, ...]]:
    """Canonical basis of the right kernel, one vector per free column.

    Derived from the RREF with free columns taken in increasing index
    order, so the output is reproducible.
    """
    p = a.p
    r, pivots, _ = rref(a)
    pivot_set = set(pivots)
    free = [j for j in range(a.cols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [0] * a.cols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-r.at(i, f)) % p
        basis.append(tuple(v))
    return basis


def nested_kernel_chain(a: GFMatrix, levels: Sequence[int]) -> list[tuple[int, ...]]:
    """Vectors x_1..x_{n-d_1} whose prefixes span the nested prefix kernels.

    levels must be strictly increasing with d_k <= rows and every prefix
    a[:d] of full rank d.  For each level d_i the first n - d_i vectors form
    a basis of ker(a[:d_i]); the chain is built from the deepest kernel
    outward, extending with canonical kernel vectors.
    """
    if not levels or any(x >= y for x, y in zip(levels, levels[1:])):
        raise IndexOutOfRange("levels must be strictly increasing and nonempty")
    if levels[-1] > a.rows or levels[0] < 0:
        raise IndexOutOfRange("level outside row range")
    for d in levels:
        if rank(prefix_rows(a, d)) != d:
            raise RankDeficient(f"prefix {d} has rank below {d}")
    p = a.p
    chain: list[tuple[int, ...]] = []
    # echelon of the span of `chain`, kept for the independence test
    span: list[list[int]] = []

    def try_add(v: tuple[int, ...]) -> bool:
        w = list(v)
        for row in span:
            lead = next(j for j, x in enumerate(row) if x)
            if w[lead]:
                f = w[lead]
                w = [(x - f * y) % p for x, y in zip(w, row)]
        if all(x == 0 for x in w):
            return False
        inv = pow(next(x for x in w if x), p - 2, p)
        span.append([(x * inv) % p for x in w])
        chain.append(v)
        return True

    for d in reversed(levels):
        target = a.cols - d
        for v in kernel_basis(prefix_rows(a, d)):
            if len(chain) == target:
                break
            try_add(v)
        if len(chain) != target:
            raise RankDeficient(f"kernel extension failed at prefix {d}")
    return chain


def solve_left_transform(a: GFMatrix, b: GFMatrix) -> GFMatrix:
    """Invertible T with T @ b == a, for full-row-rank a, b of equal row space."""
    if a.p != b.p:
        raise FieldMismatch("operands over different fields")
    if a.rows != b.rows or a.cols != b.cols:
        raise NoTransform("shapes differ")
    if a.rows == 0:
        return identity(a.p, 0)
    rb, pivots, eb = rref(b)
    if len(pivots) != b.rows:
        raise NoTransform("rank deficient")
    # Express each row of a in the echelon basis: coefficients sit at the
    # pivot columns because rb has unit pivots.
    coeff = select_cols(a, pivots)
    if matmul(coeff, rb) != a:
        raise NoTransform("row spaces differ")
    t = matmul(coeff, eb)
    if not is_nonsingular(t):
        raise NoTransform("transform not invertible")
    return t
