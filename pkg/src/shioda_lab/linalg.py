"""Exact integer matrices and lattices.

Everything here works on plain Python ints, so there is no overflow at any
size.  Lattices live in Z^n and are stored by their row-style Hermite normal
form, which makes lattice equality a comparison of bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Row = tuple[int, ...]


class LinalgError(ValueError):
    """Raised when an exact linear-algebra precondition is violated."""


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[Row, ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if not rows or not rows[0]:
            raise LinalgError("matrix dimensions must be positive")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise LinalgError("ragged matrix rows")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int, scale: int = 1) -> "IntMatrix":
        return cls(tuple(tuple(scale if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(tuple((0,) * ncols for _ in range(nrows)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def row(self, i: int) -> Row:
        return self.rows[i]

    def col(self, j: int) -> Row:
        return tuple(r[j] for r in self.rows)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise LinalgError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.T.rows
        return IntMatrix(tuple(tuple(_dot(r, c) for c in cols) for r in self.rows))

    def __mul__(self, k: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(k * x for x in r) for r in self.rows))

    __rmul__ = __mul__

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise LinalgError("shape mismatch")
        return IntMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> "IntMatrix":
        return self * -1

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def apply(self, v: Sequence[int]) -> Row:
        """Matrix times column vector."""
        if len(v) != self.ncols:
            raise LinalgError("vector length does not match column count")
        return tuple(_dot(r, v) for r in self.rows)

    def row_sums(self) -> Row:
        return tuple(sum(r) for r in self.rows)

    def col_sums(self) -> Row:
        return tuple(sum(c) for c in zip(*self.rows))

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def diagonal(self) -> Row:
        return tuple(self.rows[i][i] for i in range(min(self.shape)))

    def __str__(self) -> str:
        width = max(len(str(x)) for r in self.rows for x in r)
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self.rows)


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _as_matrix(M) -> IntMatrix:
    return M if isinstance(M, IntMatrix) else IntMatrix.from_rows(M)


# ---------------------------------------------------------------------------
# determinants and inverses


def det(M) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    M = _as_matrix(M)
    if not M.is_square:
        raise LinalgError(f"determinant of non-square {M.shape} matrix")
    a = [list(r) for r in M.rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact: Sylvester's identity guarantees divisibility
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def adjugate(M) -> IntMatrix:
    """Transposed cofactor matrix, so that M @ adj(M) = det(M) I."""
    M = _as_matrix(M)
    if not M.is_square:
        raise LinalgError("adjugate of non-square matrix")
    n = M.nrows
    if n == 1:
        return IntMatrix(((1,),))
    cof = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(M.rows) if k != i]
            cof[i][j] = (-1) ** (i + j) * det(minor)
    return IntMatrix.from_rows(cof).T


def rational_inverse(M) -> list[list[Fraction]]:
    M = _as_matrix(M)
    D = det(M)
    if D == 0:
        raise LinalgError("matrix is singular")
    return [[Fraction(x, D) for x in r] for r in adjugate(M).rows]


def unimodular_inverse(M) -> IntMatrix:
    M = _as_matrix(M)
    D = det(M)
    if abs(D) != 1:
        raise LinalgError("matrix is not unimodular")
    return adjugate(M) * D


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SNFResult:
    """U @ source @ V == S with U, V unimodular."""

    S: IntMatrix
    U: IntMatrix
    V: IntMatrix
    source: IntMatrix

    @property
    def diagonal(self) -> Row:
        return self.S.diagonal()

    @property
    def invariant_factors(self) -> Row:
        return tuple(x for x in self.diagonal if x != 0)


def snf(M) -> SNFResult:
    """Smith normal form with transformation matrices.

    Pivots are chosen as the smallest nonzero absolute value in the active
    block, ties going to the lowest row-major index, so the output is fully
    deterministic.
    """
    M = _as_matrix(M)
    r, c = M.shape
    a = [list(row) for row in M.rows]
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    V = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row[dst] += k * row[src]
        if k:
            a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
            U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        if k:
            for row in a:
                row[dst] += k * row[src]
            for row in V:
                row[dst] += k * row[src]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, pi, pj = best
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty |= a[i][t] != 0
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty |= a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    return SNFResult(
        S=IntMatrix.from_rows(a),
        U=IntMatrix.from_rows(U),
        V=IntMatrix.from_rows(V),
        source=M,
    )


# ---------------------------------------------------------------------------
# row echelon machinery


def _echelon(rows: list[list[int]], pivot_cols: int) -> tuple[list[list[int]], list[int]]:
    """Integer row echelon form, pivoting only in the first `pivot_cols` columns.

    Returns the transformed rows (pivot rows first, positive pivots, entries
    above each pivot reduced into [0, pivot)) and the pivot column list.
    Trailing rows past the pivots have zeros in the pivot block.
    """
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    top = 0
    for col in range(pivot_cols):
        if top >= len(rows):
            break
        while True:
            nz = [i for i in range(top, len(rows)) if rows[i][col]]
            if not nz:
                break
            k = min(nz, key=lambda i: (abs(rows[i][col]), i))
            rows[top], rows[k] = rows[k], rows[top]
            p = rows[top][col]
            done = True
            for i in range(top + 1, len(rows)):
                if rows[i][col]:
                    q = rows[i][col] // p
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[top])]
                    done &= rows[i][col] == 0
            if done:
                break
        if not rows[top][col]:
            continue
        if rows[top][col] < 0:
            rows[top] = [-x for x in rows[top]]
        p = rows[top][col]
        for i in range(top):
            q = rows[i][col] // p
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[top])]
        pivots.append(col)
        top += 1
    return rows, pivots


def hnf_rows(generators: Iterable[Sequence[int]], ambient_rank: int) -> tuple[Row, ...]:
    """Canonical (row Hermite) basis of the lattice spanned by the generators."""
    gens = [list(g) for g in generators]
    for g in gens:
        if len(g) != ambient_rank:
            raise LinalgError("generator length does not match ambient rank")
    if not gens:
        return ()
    rows, pivots = _echelon(gens, ambient_rank)
    return tuple(tuple(r) for r in rows[: len(pivots)])


def left_kernel(rows: Sequence[Sequence[int]]) -> list[Row]:
    """Basis of {x : x @ M == 0} for M given by its rows."""
    k = len(rows)
    if k == 0:
        return []
    width = len(rows[0])
    aug = [list(r) + [int(i == j) for j in range(k)] for i, r in enumerate(rows)]
    out, pivots = _echelon(aug, width)
    return [tuple(r[width:]) for r in out[len(pivots):]]


# ---------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class Lattice:
    """Sublattice of Z^ambient_rank spanned by the rows of `basis`."""

    ambient_rank: int
    basis: tuple[Row, ...]

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence[int]], ambient_rank: int) -> "Lattice":
        return cls(ambient_rank, hnf_rows(generators, ambient_rank))

    @classmethod
    def full(cls, n: int) -> "Lattice":
        return cls.from_generators(IntMatrix.identity(n).rows, n)

    @classmethod
    def scaled(cls, n: int, k: int) -> "Lattice":
        return cls.from_generators(IntMatrix.identity(n, k).rows, n)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_rank

    @property
    def matrix(self) -> IntMatrix:
        return IntMatrix(self.basis)

    def index(self) -> int:
        """[Z^n : L] for a full-rank lattice."""
        if not self.is_full_rank:
            raise LinalgError("lattice has infinite index")
        return abs(det(self.basis))

    def __contains__(self, v) -> bool:
        return lattice_member(v, self)

    def coordinates(self, v: Sequence[int]) -> Row | None:
        """Integer x with x @ basis == v, or None if v is not in the lattice."""
        if len(v) != self.ambient_rank:
            raise LinalgError("vector length does not match ambient rank")
        rest = list(v)
        coords = []
        for b in self.basis:
            p = next(j for j, x in enumerate(b) if x)
            q, rem = divmod(rest[p], b[p])
            if rem:
                return None
            coords.append(q)
            if q:
                rest = [x - q * y for x, y in zip(rest, b)]
        if any(rest):
            return None
        return tuple(coords)

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(lattice_member(b, self) for b in other.basis)


def _check_rank(L1: Lattice, L2: Lattice):
    if L1.ambient_rank != L2.ambient_rank:
        raise LinalgError("ambient rank mismatch")


def lattice_member(v: Sequence[int], L: Lattice) -> bool:
    return L.coordinates(v) is not None


def lattice_sum(L1: Lattice, L2: Lattice) -> Lattice:
    _check_rank(L1, L2)
    return Lattice.from_generators(L1.basis + L2.basis, L1.ambient_rank)


def lattice_intersection(L1: Lattice, L2: Lattice) -> Lattice:
    _check_rank(L1, L2)
    k = len(L1.basis)
    ker = left_kernel(list(L1.basis) + list(L2.basis))
    gens = [IntMatrix(L1.basis).T.apply(x[:k]) if k else () for x in ker]
    return Lattice.from_generators([g for g in gens if g], L1.ambient_rank)


def _preimage(M: IntMatrix, L: Lattice) -> Lattice:
    # pairs (a, x) with a @ M^T == x @ basis(L)
    if M.nrows != L.ambient_rank:
        raise LinalgError("matrix rows do not match lattice rank")
    stacked = list(M.T.rows) + [tuple(-y for y in b) for b in L.basis]
    ker = left_kernel(stacked)
    return Lattice.from_generators([x[: M.ncols] for x in ker], M.ncols)


def lattice_preimage(M, L: Lattice) -> Lattice:
    """{a in Z^n : M a in L} for a nonsingular square M."""
    M = _as_matrix(M)
    if not M.is_square or det(M) == 0:
        raise LinalgError("preimage requires a nonsingular square matrix")
    return _preimage(M, L)


def lattice_image(M, L: Lattice) -> Lattice:
    """{M a : a in L}."""
    M = _as_matrix(M)
    if M.ncols != L.ambient_rank:
        raise LinalgError("matrix columns do not match lattice rank")
    return Lattice.from_generators([M.apply(b) for b in L.basis], M.nrows)


def lattice_from_congruences(rows: Sequence[Sequence[int]], modulus: int, n: int) -> Lattice:
    """{k in Z^n : r.k == 0 mod modulus for every r in rows}."""
    if not rows:
        return Lattice.full(n)
    M = IntMatrix.from_rows(rows)
    if M.ncols != n:
        raise LinalgError("congruence rows have the wrong length")
    return _preimage(M, Lattice.scaled(M.nrows, modulus))


def _relative_coordinates(L1: Lattice, L2: Lattice) -> IntMatrix:
    _check_rank(L1, L2)
    if L1.rank != L2.rank or not L1.is_full_rank:
        raise LinalgError("quotient is infinite")
    coords = []
    for b in L2.basis:
        x = L1.coordinates(b)
        if x is None:
            raise LinalgError("second lattice is not contained in the first")
        coords.append(x)
    return IntMatrix.from_rows(coords)


def lattice_quotient_invariants(L1: Lattice, L2: Lattice) -> Row:
    """Invariant factors (> 1, each dividing the next) of L1 / L2."""
    X = _relative_coordinates(L1, L2)
    return tuple(x for x in snf(X).diagonal if x != 1)


def quotient_generators(L1: Lattice, L2: Lattice) -> list[tuple[Row, int]]:
    """Generators of L1 / L2 paired with their orders, one per invariant factor."""
    X = _relative_coordinates(L1, L2)
    res = snf(X)
    # U X V = S, so with W = V^-1 basis(L1): U basis(L2) = S W
    W = unimodular_inverse(res.V) @ L1.matrix
    return [(W.row(i), s) for i, s in enumerate(res.diagonal) if s != 1]


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of |n| as (prime, exponent) pairs."""
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
