"""Hilbert module tests.

The elimination core is checked against a rational Gaussian elimination
oracle; the profile machinery against closed-form Hilbert counts (Koszul
for a complete intersection, direct monomial counts for the two-lines
ideal); and the cross-module invariants tie degrees computed here to the
intersection-theoretic predictions."""

import random
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

import pytest

from singscheme.chow import pullback_degree
from singscheme.forms import (
    GradedIdeal,
    HomogeneousPoly,
    PolyKForm,
    PolyVectorField,
    coefficient_ideal,
    minors_ideal,
    parse_form,
    parse_poly,
    volume_contract_chain,
    wedge,
)
from singscheme.hilbert import (
    HilbertProfile,
    UnstabilizedError,
    graded_piece_dim,
    hilbert_function,
    hilbert_profile,
    integer_matrix_rank,
    scheme_degree_dim,
)


def two_lines_ideal():
    w1 = parse_form("z0 dz1 - z1 dz0", 4)
    w2 = parse_form("z2 dz3 - z3 dz2", 4)
    return coefficient_ideal(wedge(w1, w2))


def random_dense_field(rng, nvars, degree):
    comps = []
    for _ in range(nvars):
        coeffs = {}
        for combo in combinations_with_replacement(range(nvars), degree):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            coeffs[tuple(e)] = rng.randint(-4, 4)
        comps.append(HomogeneousPoly.from_dict(nvars, coeffs))
    return PolyVectorField(nvars, tuple(comps))


def random_projective_one_form(rng, nvars, coeff_degree=1, density=1.0):
    """Combination of m(z) * (z_i dz_j - z_j dz_i) with monomials m of
    degree coeff_degree - 1: annihilated by the radial field."""
    coeffs = {i: HomogeneousPoly.zero(nvars) for i in range(nvars)}
    for i in range(nvars):
        for j in range(i + 1, nvars):
            if rng.random() > density:
                continue
            c = rng.randint(-2, 2)
            if c == 0:
                continue
            mono = HomogeneousPoly.constant(nvars, c)
            for _ in range(coeff_degree - 1):
                mono = mono * HomogeneousPoly.variable(nvars, rng.randrange(nvars))
            coeffs[j] = coeffs[j] + mono * HomogeneousPoly.variable(nvars, i)
            coeffs[i] = coeffs[i] - mono * HomogeneousPoly.variable(nvars, j)
    return PolyKForm.from_dict(nvars, 1, {(i,): p for i, p in coeffs.items()})


class TestRank:
    def test_matches_rational_elimination(self):
        rng = random.Random(20240122)

        def oracle(rows, ncols):
            mat = [
                [Fraction(r.get(c, 0)) for c in range(ncols)] for r in rows
            ]
            rank = 0
            for col in range(ncols):
                pivot = next(
                    (i for i in range(rank, len(mat)) if mat[i][col] != 0), None
                )
                if pivot is None:
                    continue
                mat[rank], mat[pivot] = mat[pivot], mat[rank]
                for i in range(len(mat)):
                    if i != rank and mat[i][col] != 0:
                        f = mat[i][col] / mat[rank][col]
                        mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
                rank += 1
            return rank

        for _ in range(400):
            nrows = rng.randint(1, 7)
            ncols = rng.randint(1, 8)
            rows = []
            for _ in range(nrows):
                row = {
                    c: rng.randint(-5, 5)
                    for c in range(ncols)
                    if rng.random() < 0.5
                }
                rows.append({c: v for c, v in row.items() if v})
            assert integer_matrix_rank(rows) == oracle(rows, ncols)

    def test_duplicate_and_scaled_rows(self):
        rows = [{0: 2, 1: 4}, {0: 1, 1: 2}, {0: 3, 2: 1}]
        assert integer_matrix_rank(rows) == 2


class TestGradedPiece:
    def test_zero_ideal(self):
        ideal = GradedIdeal(4, ())
        for t in range(5):
            assert graded_piece_dim(ideal, t) == 0

    def test_irrelevant_ideal_linear_piece(self):
        for nvars in (3, 4, 5):
            gens = tuple(HomogeneousPoly.variable(nvars, i) for i in range(nvars))
            assert graded_piece_dim(GradedIdeal(nvars, gens), 1) == nvars

    def test_two_lines_quadric_piece(self):
        assert graded_piece_dim(two_lines_ideal(), 2) == 4

    def test_negative_degree_rejected(self):
        with pytest.raises(ValueError):
            graded_piece_dim(GradedIdeal(3, ()), -1)

    def test_hilbert_function_identity(self):
        ideal = two_lines_ideal()
        for t in range(6):
            assert hilbert_function(ideal, t) == comb(3 + t, 3) - graded_piece_dim(
                ideal, t
            )
            assert 0 <= hilbert_function(ideal, t) <= comb(3 + t, 3)


class TestProfile:
    def test_two_lines(self):
        prof = hilbert_profile(two_lines_ideal(), 8)
        assert prof.stabilized
        assert prof.polynomial == (Fraction(2), Fraction(2))  # 2t + 2
        assert prof.stable_from == 1
        assert (prof.scheme_dim, prof.scheme_deg) == (1, 2)
        assert [prof.values[t] for t in range(5)] == [1, 4, 6, 8, 10]

    def test_complete_intersection_of_quadrics(self):
        q1 = parse_poly("z0*z1 - z2*z3", 4)
        q2 = parse_poly("z0*z2 - z1*z3", 4)
        ideal = GradedIdeal(4, (q1, q2))
        prof = hilbert_profile(ideal, 9)
        assert prof.stabilized
        assert prof.polynomial == (Fraction(0), Fraction(4))  # 4t
        assert (prof.scheme_dim, prof.scheme_deg) == (1, 4)

        def c3(m):
            return comb(m, 3) if m >= 3 else 0

        for t in range(10):
            koszul = comb(t + 3, 3) - 2 * c3(t + 1) + c3(t - 1)
            assert prof.values[t] == koszul

    def test_unit_ideal_empty_scheme(self):
        ideal = GradedIdeal(3, (HomogeneousPoly.constant(3, 1),))
        prof = hilbert_profile(ideal, 6)
        assert prof.stabilized
        assert prof.polynomial == ()
        assert (prof.scheme_dim, prof.scheme_deg) == (-1, 0)

    def test_zero_ideal_whole_space(self):
        assert scheme_degree_dim(GradedIdeal(4, ())) == (3, 1)

    def test_unstabilized_result_not_a_guess(self):
        prof = hilbert_profile(two_lines_ideal(), 3)
        assert not prof.stabilized
        assert prof.polynomial is None and prof.stable_from is None
        assert prof.scheme_dim is None and prof.scheme_deg is None

    def test_line(self):
        ideal = GradedIdeal(
            4, (HomogeneousPoly.variable(4, 0), HomogeneousPoly.variable(4, 1))
        )
        assert scheme_degree_dim(ideal) == (1, 1)

    def test_two_lines_curve_dimensions(self):
        assert scheme_degree_dim(two_lines_ideal()) == (1, 2)

    def test_escalation_cap_raises(self):
        with pytest.raises(UnstabilizedError):
            scheme_degree_dim(two_lines_ideal(), t_cap=3)

    def test_json_shape(self):
        prof = hilbert_profile(two_lines_ideal(), 8)
        data = prof.to_json()
        assert data["polynomial"] == ["2", "2"]
        assert data["dim"] == 1 and data["deg"] == 2
        assert data["stable_from"] == 1
        assert data["values"]["0"] == 1

    def test_values_invariant_on_unstabilized(self):
        prof = hilbert_profile(GradedIdeal(3, ()), 2)
        assert isinstance(prof, HilbertProfile)
        assert prof.values == {0: 1, 1: 3, 2: 6}  # full ring: C(2+t, 2)
        assert not prof.stabilized  # t_max below the certificate length


class TestCrossOracles:
    def test_fixed_point_counts_match_chow_prediction(self):
        # ideal of the 2-form i_X i_R Omega for dense random X of degree d:
        # isolated zeros counted by the same sum the pullback formula gives
        rng = random.Random(20240121)
        for d in (0, 1, 2):
            x = random_dense_field(rng, 4, d)
            form = volume_contract_chain(3, [x])
            ideal = coefficient_ideal(form)
            dim, deg = scheme_degree_dim(ideal)
            assert dim == 0
            assert deg == pullback_degree(3, 2, d)

    def test_decomposable_form_codimension_bound(self):
        # wedges of two projective 1-forms: cod(Sing) <= k+1 = 3
        rng = random.Random(20240123)
        done = 0
        while done < 10:
            a = random_projective_one_form(rng, 4, 1)
            b = random_projective_one_form(rng, 4, rng.choice([1, 2]))
            form = wedge(a, b)
            if form.is_zero:
                continue
            dim, deg = scheme_degree_dim(coefficient_ideal(form))
            assert 3 - dim <= 3
            assert deg >= 1
            done += 1
        done = 0
        while done < 4:
            a = random_projective_one_form(rng, 5, 1, density=0.35)
            b = random_projective_one_form(rng, 5, 1, density=0.35)
            form = wedge(a, b)
            if form.is_zero:
                continue
            dim, _ = scheme_degree_dim(coefficient_ideal(form))
            assert 4 - dim <= 3
            done += 1

    def test_minors_and_wedge_ideals_same_hilbert_function(self):
        rng = random.Random(20240124)
        done = 0
        while done < 6:
            a = random_projective_one_form(rng, 4)
            b = random_projective_one_form(rng, 4)
            w = wedge(a, b)
            if w.is_zero:
                continue
            mi = minors_ideal([a, b])
            ci = coefficient_ideal(w)
            for t in range(9):
                assert graded_piece_dim(mi, t) == graded_piece_dim(ci, t)
            done += 1
