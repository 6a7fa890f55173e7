"""Defining matrices of generalized Dwork pencils and their derived invariants."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .linalg import IntMatrix, adjugate, det, factorize, gcd_all


class PencilError(ValueError):
    """The matrix does not satisfy the hypotheses needed for a pencil."""


@dataclass(frozen=True)
class CYPencil:
    A: IntMatrix
    n: int
    e: int
    col_balanced: bool
    detA: int
    d: int
    m: int
    B: IntMatrix
    name: str = ""

    @property
    def balanced(self) -> bool:
        return self.col_balanced and self.e == self.n

    def require_balanced(self):
        if not self.balanced:
            raise PencilError(
                "pencil is not balanced: row and column sums of A must all equal n"
            )

    @property
    def detB(self) -> int:
        # det(B) = d^n / det(A), exact
        return self.d ** self.n // self.detA

    def __str__(self) -> str:
        label = self.name or "A"
        return f"{label}: n={self.n} e={self.e} det={self.detA} d={self.d} m={self.m}"


def _constant(values) -> bool:
    return len(set(values)) <= 1


def validate(A, require_balanced: bool = True, name: str = "") -> CYPencil:
    """Check A and derive e, det(A), d, m and B = d A^-1.

    d is the least positive integer with d A^-1 integral.  It is computed
    from the gcd of the cofactors and then checked prime by prime.
    """
    if not isinstance(A, IntMatrix):
        try:
            A = IntMatrix.from_rows(A)
        except (TypeError, ValueError) as exc:
            raise PencilError(f"not an integer matrix: {exc}") from exc
    if not A.is_square:
        raise PencilError(f"A must be square, got shape {A.shape}")
    if any(x < 0 for r in A.rows for x in r):
        raise PencilError("A has a negative entry")
    rs = A.row_sums()
    if not _constant(rs):
        raise PencilError(f"row sums of A are not constant: {list(rs)}")
    cs = A.col_sums()
    col_balanced = _constant(cs) and cs[0] == A.nrows
    if require_balanced and not (col_balanced and rs[0] == A.nrows):
        raise PencilError(
            f"row and column sums of A must all equal n={A.nrows}: "
            f"rows {list(rs)}, columns {list(cs)}"
        )
    D = det(A)
    if D == 0:
        raise PencilError("A is singular")
    adj = adjugate(A)
    g = gcd_all(x for r in adj.rows for x in r)
    d = abs(D) // gcd_all((abs(D), g))
    B = IntMatrix.from_rows([[d * x // D for x in r] for r in adj.rows])
    if A @ B != IntMatrix.identity(A.nrows, d) or B @ A != IntMatrix.identity(A.nrows, d):
        raise AssertionError("A B != d I")
    for p, _ in factorize(d):
        if all((d // p) * x % D == 0 for r in adj.rows for x in r):
            raise AssertionError(f"d = {d} is not minimal: d/{p} already clears A^-1")
    e = rs[0]
    if d % e:
        raise AssertionError("row sum e does not divide d")
    m = d // e
    if any(s != m for s in B.row_sums()):
        raise AssertionError("row sums of B differ from m")
    if col_balanced and any(s != m for s in B.col_sums()):
        raise AssertionError("column sums of B differ from m")
    return CYPencil(A=A, n=A.nrows, e=e, col_balanced=col_balanced, detA=D, d=d, m=m, B=B, name=name)


_BUILTIN_ROWS = {
    1: [(5, 0, 0, 0, 0), (0, 5, 0, 0, 0), (0, 0, 5, 0, 0), (0, 0, 0, 5, 0), (0, 0, 0, 0, 5)],
    2: [(4, 1, 0, 0, 0), (0, 4, 1, 0, 0), (0, 0, 4, 1, 0), (0, 0, 0, 4, 1), (1, 0, 0, 0, 4)],
    3: [(4, 1, 0, 0, 0), (0, 4, 1, 0, 0), (0, 0, 4, 1, 0), (1, 0, 0, 4, 0), (0, 0, 0, 0, 5)],
    4: [(4, 1, 0, 0, 0), (0, 4, 1, 0, 0), (1, 0, 4, 0, 0), (0, 0, 0, 5, 0), (0, 0, 0, 0, 5)],
    5: [(4, 1, 0, 0, 0), (0, 4, 1, 0, 0), (1, 0, 4, 0, 0), (0, 0, 0, 4, 1), (0, 0, 0, 1, 4)],
    6: [(4, 1, 0, 0, 0), (1, 4, 0, 0, 0), (0, 0, 5, 0, 0), (0, 0, 0, 5, 0), (0, 0, 0, 0, 5)],
}

FAMILY_INDICES = tuple(sorted(_BUILTIN_ROWS))


def builtin_family(index: int) -> IntMatrix:
    """Exponent matrix of one of the six symmetric quintic families."""
    if index not in _BUILTIN_ROWS:
        raise PencilError(f"family index must be in 1..6, got {index}")
    return IntMatrix.from_rows(_BUILTIN_ROWS[index])


def cyclic_family(n: int) -> IntMatrix:
    """Circulant with n-1 on the diagonal and 1 on the wrapped superdiagonal."""
    if n < 2:
        raise PencilError(f"cyclic family needs n >= 2, got {n}")
    return IntMatrix.from_rows(
        [[n - 1 if j == i else (1 if j == (i + 1) % n else 0) for j in range(n)] for i in range(n)]
    )


def builtin_pencil(index: int) -> CYPencil:
    return validate(builtin_family(index), name=f"family {index}")


def cyclic_pencil(n: int) -> CYPencil:
    return validate(cyclic_family(n), name=f"cyclic n={n}")


def load_matrix(path) -> IntMatrix:
    """Read a matrix document of the form {"n": 3, "rows": [[...], ...]}."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise PencilError(f"{path}: not a valid JSON document ({exc})") from exc
    if not isinstance(doc, dict) or "n" not in doc or "rows" not in doc:
        raise PencilError(f"{path}: expected fields 'n' and 'rows'")
    n, rows = doc["n"], doc["rows"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise PencilError(f"{path}: n must be a positive integer")
    if not isinstance(rows, list) or len(rows) != n:
        raise PencilError(f"{path}: expected {n} rows")
    for r in rows:
        if not isinstance(r, list) or len(r) != n:
            raise PencilError(f"{path}: every row must have {n} entries")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in r):
            raise PencilError(f"{path}: entries must be integers")
    return IntMatrix.from_rows(rows)


def dump_matrix(A: IntMatrix) -> str:
    return json.dumps({"n": A.nrows, "rows": A.tolist()})


def format_factorization(x: int) -> str:
    """'1025 = 5^2·41' style; primes listed as in the symmetric quintic table."""
    parts = factorize(x)
    if len(parts) == 1 and parts[0][1] == 1:
        return str(x)
    # 5 leads, the table's convention; the rest ascend
    parts.sort(key=lambda pe: (pe[0] != 5, pe[0]))
    body = "·".join(f"{p}^{e}" if e > 1 else str(p) for p, e in parts)
    return f"{x} = {body}"
