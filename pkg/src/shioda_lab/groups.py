"""Finite abelian groups of diagonal projective automorphisms.

An automorphism g_a scales y_k by zeta_d^a_k.  Exponent vectors differing by
d Z^n + Z(1,...,1) give the same projective automorphism, so every group here
is a quotient L / L0 of two lattices in Z^n.  Nothing is ever enumerated:
orders and structures come from Smith normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .family import CYPencil
from .linalg import (
    IntMatrix,
    Lattice,
    lattice_image,
    lattice_intersection,
    lattice_member,
    lattice_preimage,
    lattice_quotient_invariants,
    lattice_sum,
    quotient_generators,
)

DEFAULT_ELEMENT_CAP = 10**6


class GroupError(ValueError):
    pass


def canonical_vector(v: Sequence[int], d: int) -> tuple[int, ...]:
    """Representative with last coordinate 0 and entries in [0, d)."""
    last = v[-1]
    return tuple((x - last) % d for x in v)


@dataclass(frozen=True)
class DiagAutomorphism:
    modulus: int
    vector: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vector", canonical_vector(tuple(self.vector), self.modulus))

    @property
    def n(self) -> int:
        return len(self.vector)

    def __mul__(self, other: "DiagAutomorphism") -> "DiagAutomorphism":
        if self.modulus != other.modulus or self.n != other.n:
            raise GroupError("automorphisms act on different spaces")
        return DiagAutomorphism(self.modulus, tuple(a + b for a, b in zip(self.vector, other.vector)))

    def __pow__(self, k: int) -> "DiagAutomorphism":
        return DiagAutomorphism(self.modulus, tuple(k * a for a in self.vector))

    def is_identity(self) -> bool:
        return not any(self.vector)

    def __str__(self) -> str:
        return "g_(" + ",".join(map(str, self.vector)) + ")"


def sum_lattice(n: int) -> Lattice:
    """{a : a_1 + ... + a_n == 0 mod n}."""
    gens = [tuple(1 if j == i else (-1 if j == n - 1 else 0) for j in range(n)) for i in range(n - 1)]
    gens.append((0,) * (n - 1) + (n,))
    return Lattice.from_generators(gens, n)


def scalar_lattice(n: int, d: int) -> Lattice:
    """d Z^n + Z (1,...,1): exponent vectors of the identity automorphism."""
    return Lattice.from_generators(list(IntMatrix.identity(n, d).rows) + [(1,) * n], n)


@dataclass(frozen=True)
class DiagGroup:
    """The group L / denominator; the denominator defaults to d Z^n + Z(1,...,1)."""

    modulus: int
    lattice: Lattice
    denominator: Lattice
    name: str = ""
    _structure: tuple[int, ...] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.lattice.contains_lattice(self.denominator):
            raise GroupError(f"{self.name or 'group'}: denominator lattice is not contained in L")
        object.__setattr__(
            self, "_structure", lattice_quotient_invariants(self.lattice, self.denominator)
        )

    @classmethod
    def over_scalars(cls, modulus: int, lattice: Lattice, name: str = "") -> "DiagGroup":
        L0 = scalar_lattice(lattice.ambient_rank, modulus)
        return cls(modulus, lattice, L0, name)

    @property
    def n(self) -> int:
        return self.lattice.ambient_rank

    def structure(self) -> tuple[int, ...]:
        return self._structure

    def order(self) -> int:
        out = 1
        for f in self._structure:
            out *= f
        return out

    def __contains__(self, g: DiagAutomorphism) -> bool:
        return g.modulus == self.modulus and lattice_member(g.vector, self.lattice)

    def is_identity(self, g: DiagAutomorphism) -> bool:
        return lattice_member(g.vector, self.denominator)

    def generators(self) -> list[tuple[DiagAutomorphism, int]]:
        """One generator per invariant factor, with its order."""
        return [
            (DiagAutomorphism(self.modulus, v), k)
            for v, k in quotient_generators(self.lattice, self.denominator)
        ]

    def element(self, v: Sequence[int]) -> DiagAutomorphism:
        g = DiagAutomorphism(self.modulus, tuple(v))
        if g not in self:
            raise GroupError(f"{g} is not in {self.name or 'the group'}")
        return g


def structure(G: DiagGroup) -> tuple[int, ...]:
    return G.structure()


def order(G: DiagGroup) -> int:
    return G.order()


# ---------------------------------------------------------------------------
# Gamma_d and the homomorphism g_a -> g_{Ba}


def gamma_d(p: CYPencil) -> DiagGroup:
    p.require_balanced()
    return DiagGroup.over_scalars(p.d, sum_lattice(p.n), name="Gamma_d")


def gamma_d_generators(p: CYPencil) -> dict[str, DiagAutomorphism]:
    """g_0 = g_(n,0,...,0) and g_i = g_(-1,0,..,1,..,0) with the 1 in slot i+1."""
    n = p.n
    out = {"g0": DiagAutomorphism(p.d, (n,) + (0,) * (n - 1))}
    for i in range(1, n - 1):
        v = [0] * n
        v[0], v[i] = -1, 1
        out[f"g{i}"] = DiagAutomorphism(p.d, tuple(v))
    return out


def hom_image(p: CYPencil, g: DiagAutomorphism) -> DiagAutomorphism:
    if g.modulus != p.d or g not in gamma_d(p):
        raise GroupError(f"{g} is not in Gamma_d")
    return DiagAutomorphism(p.d, p.B.apply(g.vector))


def image_generators(p: CYPencil) -> dict[str, DiagAutomorphism]:
    """Images of g_0, ..., g_{n-2}, keyed 'hat_g0' and so on."""
    return {f"hat_{k}": hom_image(p, g) for k, g in gamma_d_generators(p).items()}


def _kernel_lattice(p: CYPencil) -> Lattice:
    L0 = scalar_lattice(p.n, p.d)
    return lattice_intersection(lattice_preimage(p.B, L0), sum_lattice(p.n))


def kernel_gamma_A(p: CYPencil) -> DiagGroup:
    p.require_balanced()
    return DiagGroup.over_scalars(p.d, _kernel_lattice(p), name="Gamma_A")


def image_H_A(p: CYPencil) -> DiagGroup:
    p.require_balanced()
    L0 = scalar_lattice(p.n, p.d)
    img = lattice_sum(lattice_image(p.B, sum_lattice(p.n)), L0)
    return DiagGroup.over_scalars(p.d, img, name="H_A")


def hom_is_well_defined(p: CYPencil) -> bool:
    """B maps the sum lattice into itself and the scalar lattice into itself."""
    L0 = scalar_lattice(p.n, p.d)
    Lam = sum_lattice(p.n)
    return all(p.B.apply(b) in L0 for b in L0.basis) and all(
        p.B.apply(b) in Lam for b in Lam.basis
    )


def quotient_structure(p: CYPencil) -> tuple[int, ...]:
    """Invariant factors of Gamma_d / Gamma_A, computed independently of H_A."""
    return lattice_quotient_invariants(sum_lattice(p.n), _kernel_lattice(p))


# ---------------------------------------------------------------------------
# orders and discrete logarithms


def _divisors(N: int) -> list[int]:
    small, large = [], []
    k = 1
    while k * k <= N:
        if N % k == 0:
            small.append(k)
            if k * k != N:
                large.append(N // k)
        k += 1
    return small + large[::-1]


def element_order(G: DiagGroup, g: DiagAutomorphism) -> int:
    """Least k > 0 with g^k trivial in G."""
    if g not in G:
        raise GroupError(f"{g} is not in {G.name or 'the group'}")
    for k in _divisors(G.structure()[-1] if G.structure() else 1):
        if lattice_member(tuple(k * x for x in g.vector), G.denominator):
            return k
    raise AssertionError("exponent of the group does not kill the element")


def discrete_log(
    G: DiagGroup,
    base: DiagAutomorphism,
    target: DiagAutomorphism,
    cap: int = DEFAULT_ELEMENT_CAP,
) -> int:
    """Least k >= 0 with base^k == target, by brute force below order(base)."""
    if target not in G:
        raise GroupError(f"{target} is not in {G.name or 'the group'}")
    N = element_order(G, base)
    if N > cap:
        raise GroupError(f"order {N} of the base exceeds the element cap {cap}")
    d = G.modulus
    acc = (0,) * base.n
    for k in range(N):
        diff = tuple(a - b for a, b in zip(acc, target.vector))
        if lattice_member(diff, G.denominator):
            return k
        acc = tuple((a + b) % d for a, b in zip(acc, base.vector))
    raise GroupError(f"{target} is not a power of {base}")


# ---------------------------------------------------------------------------
# groups of the factorization X_dI -> X_mI -> X_A


def mu_lattice(p: CYPencil) -> Lattice:
    """m * {v : sum v == 0 mod n} + scalars: the copy of Gamma_n inside Gamma_d
    acting trivially on u = y^n."""
    Lam = sum_lattice(p.n)
    scaled = Lattice.from_generators([[p.m * x for x in b] for b in Lam.basis], p.n)
    return lattice_sum(scaled, scalar_lattice(p.n, p.d))


def factorization_groups(p: CYPencil) -> tuple[DiagGroup, DiagGroup]:
    """(mu_A, Gamma'_A) for a pencil whose Shioda map factors through y -> y^n."""
    from .maps import power_factorization

    if power_factorization(p) is None:
        raise GroupError(f"{p.name or 'pencil'} has no power-map factorization")
    mu = DiagGroup.over_scalars(p.d, mu_lattice(p), name="mu_A")
    ker = _kernel_lattice(p)
    if not ker.contains_lattice(mu.lattice):
        raise AssertionError("mu_A is not a subgroup of Gamma_A")
    gamma_prime = DiagGroup(p.d, ker, mu.lattice, name="Gamma'_A")
    return mu, gamma_prime


def reduction_groups(p: CYPencil) -> tuple[DiagGroup, tuple[int, ...]]:
    """Kernel and image structure of Gamma_A under a -> a mod m.

    The kernel is every g_{m v}, with no sum condition on v; kept alongside
    factorization_groups for comparison.
    """
    ker = _kernel_lattice(p)
    Lm = scalar_lattice(p.n, p.m)
    kernel = DiagGroup.over_scalars(p.d, lattice_intersection(ker, Lm), name="ker(mod m)")
    image = lattice_quotient_invariants(lattice_sum(ker, Lm), Lm)
    return kernel, image
