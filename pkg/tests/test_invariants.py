import pytest
from hypothesis import given
from hypothesis import strategies as st

from shioda_lab.family import FAMILY_INDICES, builtin_pencil, cyclic_pencil, validate
from shioda_lab.groups import DiagAutomorphism, gamma_d
from shioda_lab.invariants import (
    ResidueFormIndex,
    form_character,
    gamma_d_fixes_form,
    invariant_form_indices,
    invariant_monomial_lattice,
    pullback_form_data,
    verify_form_uniqueness,
    verify_quotient_generators,
)
from shioda_lab.linalg import IntMatrix, Lattice, LinalgError, det

from oracles import laplace_det, simplex_points

ALL_PENCILS = [builtin_pencil(i) for i in FAMILY_INDICES] + [cyclic_pencil(n) for n in range(3, 7)]


class TestInvariantLattice:
    H_GENS = [(1, 0, 0, 4), (0, 1, 0, 4), (0, 0, 1, 4)]

    def test_quintic_chart(self):
        # H acting on the chart x5 = 1 of the Dwork quintic
        L = invariant_monomial_lattice(self.H_GENS, 5, 4)
        expected = Lattice.from_generators([(1, 1, 1, 1)] + list(IntMatrix.identity(4, 5).rows), 4)
        assert L == expected
        assert L.index() == 125

    def test_monomial_relation(self):
        # z0 = x1 x2 x3 x4, z_i = x_i^5: z0^5 == z1 z2 z3 z4 as exponent vectors
        z0 = (1, 1, 1, 1)
        zs = IntMatrix.identity(4, 5).rows
        assert tuple(5 * x for x in z0) == tuple(map(sum, zip(*zs)))

    def test_no_generators(self):
        assert invariant_monomial_lattice([], 5, 3) == Lattice.full(3)

    def test_single_generator(self):
        L = invariant_monomial_lattice([(1, 0)], 5, 2)
        assert L == Lattice.from_generators([(5, 0), (0, 1)], 2)

    def test_length_mismatch(self):
        with pytest.raises(LinalgError):
            invariant_monomial_lattice([(1, 0, 0)], 5, 2)


class TestFormCharacter:
    def test_identity(self):
        k = ResidueFormIndex((0,) * 5, 5)
        assert form_character(k, DiagAutomorphism(5, (0,) * 5)) == 0

    def test_family2_invariant_index(self):
        p = builtin_pencil(2)
        k = ResidueFormIndex((204,) * 5, 1025)
        for g, _ in gamma_d(p).generators():
            assert form_character(k, g) == 0

    def test_moved_index(self):
        k = ResidueFormIndex((1020, 0, 0, 0, 0), 1025)
        assert form_character(k, DiagAutomorphism(1025, (-1, 1, 0, 0, 0))) == 5

    def test_bad_index(self):
        with pytest.raises(ValueError):
            ResidueFormIndex((1, 1), 5)
        with pytest.raises(ValueError):
            ResidueFormIndex((-1, 4), 5)

    @given(st.lists(st.integers(0, 30), min_size=4, max_size=4), st.data())
    def test_bilinear_and_scalar_invariant(self, k, data):
        d = sum(k) + 4
        idx = ResidueFormIndex(tuple(k), d)
        vec = st.lists(st.integers(-100, 100), min_size=4, max_size=4)
        a, b = data.draw(vec), data.draw(vec)
        ga, gb = DiagAutomorphism(d, a), DiagAutomorphism(d, b)
        assert form_character(idx, ga * gb) == (form_character(idx, ga) + form_character(idx, gb)) % d
        # scalars act on the residue form by zeta^(sum(k)+n) = zeta^d = 1
        assert form_character(idx, DiagAutomorphism(d, [x + 7 for x in a])) == form_character(idx, ga)


def _brute_force_indices(p):
    gens = [g for g, _ in gamma_d(p).generators()]
    found = []
    for k in simplex_points(p.n, p.d - p.n):
        idx = ResidueFormIndex(k, p.d)
        if all(form_character(idx, g) == 0 for g in gens):
            found.append(k)
    return sorted(found)


class TestInvariantForms:
    @pytest.mark.parametrize(
        "p", [builtin_pencil(1), builtin_pencil(6), cyclic_pencil(3), cyclic_pencil(4)], ids=str
    )
    def test_against_simplex_enumeration(self, p):
        assert [f.k for f in invariant_form_indices(p)] == _brute_force_indices(p)

    @pytest.mark.parametrize("p", ALL_PENCILS, ids=str)
    def test_unique(self, p):
        assert [f.k for f in invariant_form_indices(p)] == [(p.m - 1,) * p.n]
        assert verify_form_uniqueness(p)
        assert gamma_d_fixes_form(p, (p.m - 1,) * p.n)

    def test_family6_other_index_not_fixed(self):
        p = builtin_pencil(6)
        assert not gamma_d_fixes_form(p, (10, 0, 0, 0, 0))

    def test_unbalanced_refused(self):
        from shioda_lab.family import PencilError

        p = validate([[3, 0, 0], [2, 1, 0], [0, 1, 2]], require_balanced=False)
        with pytest.raises(PencilError):
            invariant_form_indices(p)

    def test_cap(self):
        # the invariant classes modulo d form a group of order n = 5
        with pytest.raises(ValueError):
            invariant_form_indices(builtin_pencil(2), cap=4)


class TestFormData:
    def test_family2(self):
        p = builtin_pencil(2)
        fd = pullback_form_data(p)
        assert fd.l == 204
        assert fd.c_A == 5**7 * 41**3 == 5384453125
        assert fd.integral and fd.unique_index

    @pytest.mark.parametrize("p", ALL_PENCILS, ids=str)
    def test_c_times_m_is_det_B(self, p):
        fd = pullback_form_data(p)
        direct = det(p.B)
        assert fd.c_A * p.m == direct == p.d**p.n // p.detA
        if p.n <= 5:
            assert laplace_det(p.B.rows) == direct

    def test_family1(self):
        fd = pullback_form_data(builtin_pencil(1))
        assert fd.l == 0 and fd.c_A == 1


class TestQuotientGenerators:
    @pytest.mark.parametrize("p", ALL_PENCILS, ids=str)
    def test_all(self, p):
        assert verify_quotient_generators(p)

    def test_family2_characters(self):
        from shioda_lab.groups import image_generators
        from shioda_lab.maps import q_map

        p = builtin_pencil(2)
        g = image_generators(p)["hat_g0"]
        rows = q_map(p).exponents.rows
        chars = {sum(r * a for r, a in zip(row, g.vector)) % 1025 for row in rows}
        assert len(chars) == 1
