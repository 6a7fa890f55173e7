"""Invariant monomials and the characters of residue forms under diagonal groups."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .family import CYPencil
from .groups import DiagAutomorphism, gamma_d, image_H_A, sum_lattice
from .linalg import Lattice, LinalgError, lattice_from_congruences, quotient_generators
from .maps import q_map

RESIDUE_CLASS_CAP = 10**6


@dataclass(frozen=True)
class ResidueFormIndex:
    """Exponent k of the numerator monomial of a residue form; sum(k) = d - n."""

    k: tuple[int, ...]
    d: int

    def __post_init__(self):
        k = tuple(self.k)
        object.__setattr__(self, "k", k)
        if any(x < 0 for x in k):
            raise ValueError(f"negative entry in form index {k}")
        if sum(k) != self.d - len(k):
            raise ValueError(f"form index {k} must sum to d - n = {self.d - len(k)}")

    @property
    def n(self) -> int:
        return len(self.k)


def invariant_monomial_lattice(generators: Sequence[Sequence[int]], modulus: int, chart_size: int) -> Lattice:
    """Exponents k with k.a == 0 mod modulus for every generator a."""
    for a in generators:
        if len(a) != chart_size:
            raise LinalgError(f"generator {tuple(a)} does not have length {chart_size}")
    return lattice_from_congruences(generators, modulus, chart_size)


def form_character(k: ResidueFormIndex, g: DiagAutomorphism) -> int:
    """Exponent c with g^* omega_k = zeta_d^c omega_k, that is sum (k_i + 1) a_i mod d."""
    if g.n != k.n:
        raise ValueError("form index and automorphism have different lengths")
    return sum((ki + 1) * a for ki, a in zip(k.k, g.vector)) % g.modulus


def _residue_classes(L: Lattice, modulus: int, cap: int):
    """Representatives in [0, modulus)^n of L / modulus Z^n."""
    n = L.ambient_rank
    gens = quotient_generators(L, Lattice.scaled(n, modulus))
    size = 1
    for _, k in gens:
        size *= k
    if size > cap:
        raise ValueError(f"{size} residue classes exceed the cap {cap}")
    for coeffs in product(*(range(k) for _, k in gens)):
        v = [0] * n
        for c, (g, _) in zip(coeffs, gens):
            for i in range(n):
                v[i] += c * g[i]
        yield tuple(x % modulus for x in v)


def invariant_form_indices(p: CYPencil, cap: int = RESIDUE_CLASS_CAP) -> list[ResidueFormIndex]:
    """All k >= 0 with sum(k) = d - n whose form is fixed by Gamma_d.

    Put v = k + (1,...,1).  The conditions are v.a == 0 mod d on the sum
    lattice, v_i >= 1 and sum(v) = d.  Every v_i is then below d, so v is the
    reduced representative of its class modulo d Z^n and only the (few)
    classes of the invariant lattice need to be inspected.
    """
    p.require_balanced()
    d, n = p.d, p.n
    L = invariant_monomial_lattice(sum_lattice(n).basis, d, n)
    out = []
    for v in _residue_classes(L, d, cap):
        if min(v) >= 1 and sum(v) == d:
            out.append(ResidueFormIndex(tuple(x - 1 for x in v), d))
    return sorted(out, key=lambda f: f.k)


@dataclass(frozen=True)
class FormData:
    l: int
    c_A: int | Fraction
    integral: bool
    unique_index: bool


def pullback_form_data(p: CYPencil) -> FormData:
    """l = m - 1 and c_A = det(B) / m for the pulled-back holomorphic form.

    A non-integral c_A is reported through `integral`, not raised.
    """
    p.require_balanced()
    q = Fraction(p.detB, p.m)
    c_A = q.numerator if q.denominator == 1 else q
    l = p.m - 1
    found = invariant_form_indices(p)
    unique = [f.k for f in found] == [(l,) * p.n]
    return FormData(l=l, c_A=c_A, integral=q.denominator == 1, unique_index=unique)


def verify_quotient_generators(p: CYPencil) -> bool:
    """Coordinates of q_A are H_A-invariant and satisfy z_0^n = z_1...z_n.

    Invariance is projective: for each generator of H_A every coordinate
    monomial must pick up the same root of unity.
    """
    p.require_balanced()
    rows = q_map(p).exponents.rows
    d = p.d
    for a in image_H_A(p).lattice.basis:
        chars = {sum(r_i * a_i for r_i, a_i in zip(r, a)) % d for r in rows}
        if len(chars) != 1:
            return False
    relation = tuple(sum(col) for col in zip(*rows[1:]))
    return relation == tuple(p.n * x for x in rows[0])


def verify_form_uniqueness(p: CYPencil) -> bool:
    found = invariant_form_indices(p)
    return [f.k for f in found] == [(p.m - 1,) * p.n]


def gamma_d_fixes_form(p: CYPencil, k: Sequence[int]) -> bool:
    """Direct check of a single index against the generators of Gamma_d."""
    idx = ResidueFormIndex(tuple(k), p.d)
    return all(form_character(idx, g) == 0 for g, _ in gamma_d(p).generators())
