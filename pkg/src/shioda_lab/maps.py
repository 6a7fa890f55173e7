"""Laurent monomial maps, parameterized Laurent polynomials and their pullbacks.

A monomial map is its exponent matrix: row j gives coordinate j of the target
as a Laurent monomial in the source variables.  A polynomial in the target
coordinates pulls back by multiplying each exponent row vector by that matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .family import CYPencil
from .linalg import IntMatrix

Key = tuple[int, tuple[int, ...]]


class MapError(ValueError):
    pass


@dataclass(frozen=True)
class ParamLaurentPoly:
    """Sparse Laurent polynomial in `nvars` variables with a formal parameter t.

    Terms map (t_deg, exponent) to a nonzero integer coefficient and are kept
    sorted by t-degree and then lexicographically by exponent, so equality is
    structural.  The zero polynomial has no terms.
    """

    nvars: int
    terms: tuple[tuple[int, int, tuple[int, ...]], ...] = ()

    @classmethod
    def from_dict(cls, nvars: int, coeffs: Mapping[Key, int]) -> "ParamLaurentPoly":
        terms = []
        for (tdeg, expo), c in coeffs.items():
            expo = tuple(expo)
            if len(expo) != nvars:
                raise MapError(f"exponent {expo} has the wrong length for {nvars} variables")
            if tdeg < 0:
                raise MapError("negative power of t")
            if c:
                terms.append((tdeg, expo, c))
        terms.sort()
        return cls(nvars, tuple((c, tdeg, expo) for tdeg, expo, c in terms))

    @classmethod
    def from_terms(cls, nvars: int, terms: Iterable[tuple[int, int, Iterable[int]]]) -> "ParamLaurentPoly":
        """Build from (coeff, t_deg, exponent) triples, merging like terms."""
        acc: dict[Key, int] = {}
        for c, tdeg, expo in terms:
            key = (tdeg, tuple(expo))
            acc[key] = acc.get(key, 0) + c
        return cls.from_dict(nvars, acc)

    @classmethod
    def monomial(cls, expo: Iterable[int], coeff: int = 1, t_deg: int = 0) -> "ParamLaurentPoly":
        expo = tuple(expo)
        return cls.from_terms(len(expo), [(coeff, t_deg, expo)])

    def as_dict(self) -> dict[Key, int]:
        return {(tdeg, expo): c for c, tdeg, expo in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "ParamLaurentPoly"):
        if self.nvars != other.nvars:
            raise MapError("polynomials live in different numbers of variables")

    def __add__(self, other: "ParamLaurentPoly") -> "ParamLaurentPoly":
        self._check(other)
        return ParamLaurentPoly.from_terms(self.nvars, self.terms + other.terms)

    def __neg__(self) -> "ParamLaurentPoly":
        return ParamLaurentPoly(self.nvars, tuple((-c, t, e) for c, t, e in self.terms))

    def __sub__(self, other: "ParamLaurentPoly") -> "ParamLaurentPoly":
        return self + (-other)

    def __mul__(self, other: "ParamLaurentPoly") -> "ParamLaurentPoly":
        self._check(other)
        return ParamLaurentPoly.from_terms(
            self.nvars,
            [
                (c1 * c2, t1 + t2, tuple(a + b for a, b in zip(e1, e2)))
                for c1, t1, e1 in self.terms
                for c2, t2, e2 in other.terms
            ],
        )

    def __str__(self) -> str:
        return format_poly(self)


def format_poly(f: ParamLaurentPoly, var: str = "x", first_index: int = 1) -> str:
    """Render terms in storage order, e.g. 'x1^4*x2 + ... - 5*t*x1*x2*x3*x4*x5'."""
    if f.is_zero():
        return "0"
    out = []
    for c, tdeg, expo in f.terms:
        factors = []
        if tdeg:
            factors.append("t" if tdeg == 1 else f"t^{tdeg}")
        for i, k in enumerate(expo):
            if k == 1:
                factors.append(f"{var}{i + first_index}")
            elif k:
                factors.append(f"{var}{i + first_index}^{k}")
        mag = abs(c)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out)


@dataclass(frozen=True)
class MonomialMap:
    """Rows are target coordinates, columns are source variables."""

    exponents: IntMatrix

    def __post_init__(self):
        if any(not any(r) for r in self.exponents.rows):
            raise MapError("a coordinate function is the constant monomial")

    @property
    def n_target(self) -> int:
        return self.exponents.nrows

    @property
    def n_source(self) -> int:
        return self.exponents.ncols

    def then(self, other: "MonomialMap") -> "MonomialMap":
        """The map `other` after `self`: pulling back along it equals pulling
        back along `other` first and then along `self`."""
        return MonomialMap(other.exponents @ self.exponents)

    def __str__(self) -> str:
        return format_map(self)


def format_map(f: MonomialMap, var: str = "y") -> str:
    coords = []
    for row in f.exponents.rows:
        factors = [
            f"{var}{k + 1}" if e == 1 else f"{var}{k + 1}^{e}" for k, e in enumerate(row) if e
        ]
        coords.append("*".join(factors))
    return "(" + " : ".join(coords) + ")"


def pullback(f: MonomialMap, poly: ParamLaurentPoly) -> ParamLaurentPoly:
    """Substitute the coordinate functions of `f` into `poly`."""
    if poly.nvars != f.n_target:
        raise MapError(
            f"polynomial has {poly.nvars} variables but the map has {f.n_target} coordinates"
        )
    E = f.exponents.T
    return ParamLaurentPoly.from_terms(f.n_source, [(c, t, E.apply(k)) for c, t, k in poly.terms])


# ---------------------------------------------------------------------------
# the pencils and maps attached to a matrix A


def F_A_t(p: CYPencil) -> ParamLaurentPoly:
    """sum_i prod_j x_j^a_ij - n t x_1...x_n."""
    p.require_balanced()
    terms = [(1, 0, r) for r in p.A.rows] + [(-p.n, 1, (1,) * p.n)]
    return ParamLaurentPoly.from_terms(p.n, terms)


def F_dI_t(p: CYPencil) -> ParamLaurentPoly:
    """sum_j y_j^d - n t (y_1...y_n)^m."""
    p.require_balanced()
    return fermat_pencil(p.n, p.d)


def fermat_pencil(n: int, degree: int) -> ParamLaurentPoly:
    if degree % n:
        raise MapError(f"degree {degree} is not a multiple of n={n}")
    terms = [(1, 0, tuple(degree if i == j else 0 for j in range(n))) for i in range(n)]
    terms.append((-n, 1, (degree // n,) * n))
    return ParamLaurentPoly.from_terms(n, terms)


def shioda_map(p: CYPencil) -> MonomialMap:
    return MonomialMap(p.B)


def q_map(p: CYPencil) -> MonomialMap:
    """z_0 = x_1...x_n, z_i = prod_j x_j^a_ij."""
    p.require_balanced()
    return MonomialMap(IntMatrix(((1,) * p.n,) + p.A.rows))


def mirror_relation(n: int) -> ParamLaurentPoly:
    """z_0^n - z_1...z_n in the n+1 coordinates z_0..z_n."""
    return ParamLaurentPoly.from_terms(
        n + 1, [(1, 0, (n,) + (0,) * n), (-1, 0, (0,) + (1,) * n)]
    )


def mirror_linear_form(n: int) -> ParamLaurentPoly:
    """z_1 + ... + z_n - n t z_0."""
    terms = [(1, 0, tuple(int(j == i) for j in range(n + 1))) for i in range(1, n + 1)]
    terms.append((-n, 1, (1,) + (0,) * n))
    return ParamLaurentPoly.from_terms(n + 1, terms)


def verify_shioda_pullback(p: CYPencil) -> bool:
    return pullback(shioda_map(p), F_A_t(p)) == F_dI_t(p)


def verify_mirror_equations(p: CYPencil) -> bool:
    q = q_map(p)
    return pullback(q, mirror_relation(p.n)).is_zero() and pullback(
        q, mirror_linear_form(p.n)
    ) == F_A_t(p)


def composed_exponents(p: CYPencil) -> IntMatrix:
    return shioda_map(p).then(q_map(p)).exponents


def verify_composition(p: CYPencil) -> bool:
    expected = IntMatrix(((p.m,) * p.n,) + IntMatrix.identity(p.n, p.d).rows)
    return composed_exponents(p) == expected


# ---------------------------------------------------------------------------
# clearing denominators and the power-map factorization


def clearing_monomial(f: MonomialMap) -> tuple[tuple[int, ...], MonomialMap]:
    """Least per-variable shift making every coordinate function a polynomial."""
    shift = tuple(max(0, -min(col)) for col in zip(*f.exponents.rows))
    shifted = IntMatrix.from_rows([[e + s for e, s in zip(r, shift)] for r in f.exponents.rows])
    return shift, MonomialMap(shifted)


@dataclass(frozen=True)
class FactoredMap:
    """cleared Shioda map = inner map after u = y^power."""

    shift: tuple[int, ...]
    cleared: MonomialMap
    inner: MonomialMap
    power: int

    @property
    def uniform_shift(self) -> bool:
        return len(set(self.shift)) == 1


def power_factorization(p: CYPencil) -> FactoredMap | None:
    """Factor the cleared Shioda map through y -> y^n when every column of B
    is constant mod n.  Returns None when there is no such factorization."""
    p.require_balanced()
    n = p.n
    if p.m <= 1 or p.m % n:
        return None
    if any(len({x % n for x in col}) != 1 for col in zip(*p.B.rows)):
        return None
    shift, cleared = clearing_monomial(shioda_map(p))
    if any(e % n for r in cleared.exponents.rows for e in r):
        return None
    inner = MonomialMap(IntMatrix.from_rows([[e // n for e in r] for r in cleared.exponents.rows]))
    power = MonomialMap(IntMatrix.identity(n, n))
    if power.then(inner).exponents != cleared.exponents:
        raise AssertionError("inner map after the power map does not give the cleared map")
    # F_dI_t(y) is F_mI_t(u) with u = y^n
    if pullback(power, fermat_pencil(n, p.m)) != F_dI_t(p):
        raise AssertionError("the degree-d pencil does not map onto the degree-m pencil")
    return FactoredMap(shift=shift, cleared=cleared, inner=inner, power=n)


def change_of_variables(p: CYPencil) -> list[list[Fraction]]:
    """Exponents b_jk / m of coordinate j in terms of the Dwork coordinates."""
    p.require_balanced()
    return [[Fraction(b, p.m) for b in row] for row in p.B.rows]


def render_change_of_variables(p: CYPencil, target: str = "y", source: str = "x") -> list[str]:
    out = []
    for j, row in enumerate(change_of_variables(p)):
        factors = []
        for k, q in enumerate(row):
            if q == 0:
                continue
            exp = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
            factors.append(f"{source}{k + 1}^({exp})")
        out.append(f"{target}{j + 1} = " + "*".join(factors))
    return out

