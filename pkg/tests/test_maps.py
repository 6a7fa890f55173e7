from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from shioda_lab.family import FAMILY_INDICES, PencilError, builtin_pencil, cyclic_pencil, validate
from shioda_lab.linalg import IntMatrix
from shioda_lab.maps import (
    F_A_t,
    F_dI_t,
    MapError,
    MonomialMap,
    ParamLaurentPoly,
    clearing_monomial,
    composed_exponents,
    format_poly,
    power_factorization,
    pullback,
    q_map,
    render_change_of_variables,
    shioda_map,
    verify_composition,
    verify_mirror_equations,
    verify_shioda_pullback,
)

ALL_PENCILS = [builtin_pencil(i) for i in FAMILY_INDICES] + [cyclic_pencil(n) for n in range(3, 7)]


def P(nvars, *terms):
    return ParamLaurentPoly.from_terms(nvars, terms)


class TestPoly:
    def test_merge_and_cancel(self):
        f = P(2, (1, 0, (1, 0)), (2, 0, (1, 0)), (-3, 0, (1, 0)))
        assert f.is_zero()
        assert str(f) == "0"

    def test_canonical_order(self):
        f = P(2, (1, 1, (0, 0)), (1, 0, (2, 0)), (1, 0, (0, 3)))
        assert [(t, e) for _, t, e in f.terms] == [(0, (0, 3)), (0, (2, 0)), (1, (0, 0))]
        assert f == P(2, (1, 0, (2, 0)), (1, 1, (0, 0)), (1, 0, (0, 3)))

    def test_format(self):
        assert format_poly(F_A_t(builtin_pencil(1))) == (
            "x5^5 + x4^5 + x3^5 + x2^5 + x1^5 - 5*t*x1*x2*x3*x4*x5"
        )
        assert format_poly(P(2, (-1, 0, (-2, 1)), (3, 2, (0, 0)))) == "-x1^-2*x2 + 3*t^2"

    def test_nvars_mismatch(self):
        with pytest.raises(MapError):
            P(2, (1, 0, (1, 0))) + P(3, (1, 0, (1, 0, 0)))


class TestPencilPolys:
    def test_family1(self):
        f = F_A_t(builtin_pencil(1))
        expected = P(5, *[(1, 0, tuple(5 * (i == j) for j in range(5))) for i in range(5)], (-5, 1, (1,) * 5))
        assert f == expected
        assert F_dI_t(builtin_pencil(1)) == f

    def test_family2(self):
        p = builtin_pencil(2)
        f = F_A_t(p).as_dict()
        assert f[(0, (4, 1, 0, 0, 0))] == 1 and f[(0, (1, 0, 0, 0, 4))] == 1
        assert f[(1, (1, 1, 1, 1, 1))] == -5
        g = F_dI_t(p).as_dict()
        assert g[(0, (0, 0, 1025, 0, 0))] == 1 and g[(1, (205,) * 5)] == -5
        assert len(g) == 6

    def test_family6(self):
        g = F_dI_t(builtin_pencil(6)).as_dict()
        assert g[(1, (3,) * 5)] == -5 and g[(0, (15, 0, 0, 0, 0))] == 1

    def test_cyclic3(self):
        f = F_A_t(cyclic_pencil(3))
        assert f == P(3, (1, 0, (2, 1, 0)), (1, 0, (0, 2, 1)), (1, 0, (1, 0, 2)), (-3, 1, (1, 1, 1)))

    def test_unbalanced_refused(self):
        p = validate([[3, 0, 0], [2, 1, 0], [0, 1, 2]], require_balanced=False)
        for fn in (F_A_t, F_dI_t, q_map, render_change_of_variables, power_factorization):
            with pytest.raises(PencilError):
                fn(p)


class TestPullback:
    def test_identity(self):
        f = F_A_t(builtin_pencil(3))
        assert pullback(MonomialMap(IntMatrix.identity(5)), f) == f

    def test_shioda_family2(self):
        p = builtin_pencil(2)
        assert pullback(shioda_map(p), F_A_t(p)) == F_dI_t(p)

    def test_product_pulls_back_to_mth_power(self):
        p = builtin_pencil(2)
        prod = ParamLaurentPoly.monomial((1,) * 5)
        assert pullback(shioda_map(p), prod) == ParamLaurentPoly.monomial((205,) * 5)

    def test_dimension_mismatch(self):
        with pytest.raises(MapError):
            pullback(MonomialMap(IntMatrix.identity(3)), ParamLaurentPoly.monomial((1, 1)))

    def test_zero_row_rejected(self):
        with pytest.raises(MapError):
            MonomialMap(IntMatrix(((1, 0), (0, 0))))


class TestNamedMaps:
    def test_shioda(self):
        assert shioda_map(builtin_pencil(1)).exponents == IntMatrix.identity(5)
        E = shioda_map(builtin_pencil(2)).exponents
        assert E.row(0) == (256, -64, 16, -4, 1) and E.row(1) == (1, 256, -64, 16, -4)
        assert shioda_map(cyclic_pencil(4)).exponents.row(2) == (3, -1, 27, -9)

    def test_q(self):
        E = q_map(builtin_pencil(1)).exponents
        assert E.row(0) == (1,) * 5 and E.row(1) == (5, 0, 0, 0, 0)
        E = q_map(builtin_pencil(2)).exponents
        assert E.rows[:2] == ((1, 1, 1, 1, 1), (4, 1, 0, 0, 0))
        assert q_map(cyclic_pencil(3)).exponents.rows == ((1, 1, 1), (2, 1, 0), (0, 2, 1), (1, 0, 2))

    @pytest.mark.parametrize("p", ALL_PENCILS, ids=str)
    def test_verifications(self, p):
        assert verify_shioda_pullback(p)
        assert verify_mirror_equations(p)
        assert verify_composition(p)

    def test_composition_rows(self):
        E = composed_exponents(builtin_pencil(4))
        assert E.row(0) == (13,) * 5
        assert E.rows[1:] == IntMatrix.identity(5, 65).rows
        E = composed_exponents(builtin_pencil(2))
        assert E.row(0) == (205,) * 5

    def test_broken_matrix_fails_pullback(self):
        # family 2 with a_12 changed 1 -> 0: validation refuses, and forcing the
        # old B onto the new polynomial no longer gives the Fermat pencil
        rows = [list(r) for r in builtin_pencil(2).A.rows]
        rows[0][1] = 0
        with pytest.raises(PencilError):
            validate(rows)
        broken = ParamLaurentPoly.from_terms(
            5, [(1, 0, r) for r in rows] + [(-5, 1, (1,) * 5)]
        )
        p = builtin_pencil(2)
        assert pullback(shioda_map(p), broken) != F_dI_t(p)

    @pytest.mark.parametrize("p", ALL_PENCILS, ids=str)
    def test_homogeneity(self, p):
        assert set(q_map(p).exponents.row_sums()) == {p.n}
        _, cleared = clearing_monomial(shioda_map(p))
        assert len(set(cleared.exponents.row_sums())) == 1


class TestClearing:
    def test_family2(self):
        shift, E = clearing_monomial(shioda_map(builtin_pencil(2)))
        assert shift == (64,) * 5
        assert E.exponents.row(0) == (320, 0, 80, 60, 65)
        assert E.exponents.row(1) == (65, 320, 0, 80, 60)

    def test_identity(self):
        shift, E = clearing_monomial(MonomialMap(IntMatrix.identity(3)))
        assert shift == (0, 0, 0)

    def test_cyclic4(self):
        shift, _ = clearing_monomial(shioda_map(cyclic_pencil(4)))
        assert shift == (9,) * 4

    def test_minimal(self):
        for p in ALL_PENCILS:
            shift, E = clearing_monomial(shioda_map(p))
            for k, col in enumerate(zip(*E.exponents.rows)):
                assert min(col) >= 0
                assert shift[k] == 0 or min(col) == 0


class TestPowerFactorization:
    def test_family2(self):
        f = power_factorization(builtin_pencil(2))
        assert f.power == 5 and f.shift == (64,) * 5 and f.uniform_shift
        assert f.inner.exponents.row(0) == (64, 0, 16, 12, 13)
        assert f.inner.exponents.row(1) == (13, 64, 0, 16, 12)
        assert f.inner.exponents * 5 == f.cleared.exponents

    def test_family1_absent(self):
        assert power_factorization(builtin_pencil(1)) is None

    @pytest.mark.parametrize("i", [3, 4, 5, 6])
    def test_other_families_absent(self, i):
        p = builtin_pencil(i)
        # some column of B is not constant mod 5
        assert any(len({x % 5 for x in col}) > 1 for col in zip(*p.B.rows))
        assert power_factorization(p) is None

    def test_cyclic4(self):
        q = [(-1) ** (i - 1) * 3 ** (4 - i) for i in range(1, 5)]
        assert all((qi + 9) % 4 == 0 for qi in q)
        f = power_factorization(cyclic_pencil(4))
        assert f is not None and f.shift == (9,) * 4
        assert f.inner.exponents * 4 == f.cleared.exponents


class TestChangeOfVariables:
    def test_family2(self):
        line = render_change_of_variables(builtin_pencil(2))[0]
        assert line == "y1 = x1^(256/205)*x2^(-64/205)*x3^(16/205)*x4^(-4/205)*x5^(1/205)"

    def test_family1_integral(self):
        lines = render_change_of_variables(builtin_pencil(1))
        assert lines[0] == "y1 = x1^(1)"
        assert "/" not in "".join(lines)

    def test_family6_denominators(self):
        from shioda_lab.maps import change_of_variables

        dens = {q.denominator for row in change_of_variables(builtin_pencil(6)) for q in row if q}
        # the x3, x4, x5 blocks have b/m = 3/3 = 1
        assert dens == {1, 3}
        assert Fraction(-1, 3) in change_of_variables(builtin_pencil(6))[0]


# property suites ------------------------------------------------------------

small = st.integers(-4, 4)


@st.composite
def map_chain(draw):
    a, b, c = draw(st.integers(1, 4)), draw(st.integers(1, 4)), draw(st.integers(1, 4))
    E1 = draw(st.lists(st.lists(small, min_size=b, max_size=b), min_size=a, max_size=a))
    E2 = draw(st.lists(st.lists(small, min_size=a, max_size=a), min_size=c, max_size=c))
    assume(all(any(r) for r in E1) and all(any(r) for r in E2))
    terms = draw(
        st.lists(st.tuples(st.integers(-5, 5), st.integers(0, 2), st.lists(small, min_size=c, max_size=c)), max_size=6)
    )
    g_terms = draw(
        st.lists(st.tuples(st.integers(-5, 5), st.integers(0, 2), st.lists(small, min_size=c, max_size=c)), max_size=6)
    )
    return (
        MonomialMap(IntMatrix.from_rows(E1)),
        MonomialMap(IntMatrix.from_rows(E2)),
        ParamLaurentPoly.from_terms(c, terms),
        ParamLaurentPoly.from_terms(c, g_terms),
    )


@settings(max_examples=200)
@given(map_chain())
def test_pullback_functorial(chain):
    f1, f2, poly, _ = chain
    assume(all(any(r) for r in (f2.exponents @ f1.exponents).rows))
    assert pullback(f1, pullback(f2, poly)) == pullback(f1.then(f2), poly)


@settings(max_examples=200)
@given(map_chain())
def test_pullback_linear(chain):
    _, f2, poly, other = chain
    assert pullback(f2, poly + other) == pullback(f2, poly) + pullback(f2, other)
