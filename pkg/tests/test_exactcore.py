import random
from fractions import Fraction

import pytest

from mcvlie.errors import PreconditionError
from mcvlie.exactcore import (
    ExactMatrix,
    InvarianceError,
    Poly,
    PolyMatrix,
    Subspace,
    charpoly,
    induced_on_quotient,
    integer_spectrum_hits,
    kernel,
    pencil_full_rank,
    quotient_map,
    rat,
    subspace_meet,
    subspace_sum,
)

F = Fraction


def rand_fraction(rng, lo=-4, hi=4, den=3):
    return F(rng.randint(lo, hi), rng.randint(1, den))


def rand_matrix(rng, r, c, lo=-4, hi=4, den=3):
    return ExactMatrix([[rand_fraction(rng, lo, hi, den) for _ in range(c)] for _ in range(r)])


# -- rationals ---------------------------------------------------------------


def test_rat_parsing_forms():
    assert rat("-3/7") == F(-3, 7)
    assert rat("5") == F(5)
    assert rat(7) == F(7)
    assert rat("−3/7") == F(-3, 7)  # unicode minus


def test_rational_exactness_roundtrip():
    rng = random.Random(11)
    for _ in range(200):
        a = rand_fraction(rng, -50, 50, 40)
        b = rand_fraction(rng, -50, 50, 40)
        assert a + b - b == a
        assert a.denominator > 0


# -- kernel ------------------------------------------------------------------


def test_kernel_zero_matrix_is_full_space():
    s = kernel(ExactMatrix.zeros(2, 2))
    assert s.dim == 2
    assert s.basis == ExactMatrix.identity(2)


def test_kernel_identity_is_zero_space():
    assert kernel(ExactMatrix.identity(3)).dim == 0


def test_kernel_rank_one():
    # [[1,2],[2,4]] -> span{(-2,1)}: row-reduce by hand, x1 = -2 x2
    s = kernel(ExactMatrix([[1, 2], [2, 4]]))
    assert s.dim == 1
    assert s.contains([-2, 1])
    assert not s.contains([1, 0])


def test_rank_nullity_on_random_matrices():
    rng = random.Random(5)
    for _ in range(40):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = rand_matrix(rng, r, c)
        assert kernel(m).dim + m.rank() == c


# -- subspaces ---------------------------------------------------------------


def test_subspace_canonical_form_is_span_invariant():
    rng = random.Random(7)
    for _ in range(40):
        amb = rng.randint(1, 5)
        k = rng.randint(0, amb)
        base = rand_matrix(rng, amb, k) if k else None
        cols1 = [base.col(j) for j in range(k)] if base else []
        s1 = Subspace(amb, columns=cols1)
        # random invertible recombination of the same columns
        if k:
            coeffs = rand_matrix(rng, k, k)
            while not coeffs.is_invertible():
                coeffs = rand_matrix(rng, k, k)
            recomb = base * coeffs
            cols2 = [recomb.col(j) for j in range(k)]
        else:
            cols2 = []
        s2 = Subspace(amb, columns=cols2)
        assert s1 == s2
        assert hash(s1) == hash(s2)


def test_meet_and_sum_examples():
    e1 = Subspace(2, columns=[[1, 0]])
    e1e2 = Subspace(2, columns=[[1, 1]])
    e2 = Subspace(2, columns=[[0, 1]])
    assert subspace_meet(e1, e1) == e1
    assert subspace_sum(e1, e1) == e1
    assert subspace_meet(e1, e1e2).dim == 0  # a·e1 = b·(e1+e2) forces a=b=0
    assert subspace_sum(e1, e2) == Subspace.full(2)


def test_meet_requires_matching_ambient():
    with pytest.raises(PreconditionError):
        subspace_meet(Subspace.zero(2), Subspace.zero(3))


def test_modular_dimension_law_random():
    rng = random.Random(13)
    for _ in range(40):
        amb = rng.randint(1, 5)
        s1 = Subspace(amb, columns=[rand_matrix(rng, amb, 1).col(0) for _ in range(rng.randint(0, amb))])
        s2 = Subspace(amb, columns=[rand_matrix(rng, amb, 1).col(0) for _ in range(rng.randint(0, amb))])
        assert s1.dim + s2.dim == subspace_meet(s1, s2).dim + subspace_sum(s1, s2).dim


# -- quotients ---------------------------------------------------------------


def test_quotient_of_zero_space_is_identity():
    proj, qdim = quotient_map(3, Subspace.zero(3))
    assert qdim == 3
    assert proj == ExactMatrix.identity(3)


def test_quotient_of_full_space_is_empty():
    proj, qdim = quotient_map(2, Subspace.full(2))
    assert qdim == 0
    assert proj.rows == 0 and proj.cols == 2


def test_quotient_of_line_keeps_nonpivot_coordinate():
    proj, qdim = quotient_map(2, Subspace(2, columns=[[1, 0]]))
    assert qdim == 1
    assert proj == ExactMatrix([[0, 1]])


def test_quotient_kills_exactly_the_subspace():
    rng = random.Random(17)
    for _ in range(30):
        amb = rng.randint(1, 5)
        s = Subspace(amb, columns=[rand_matrix(rng, amb, 1).col(0) for _ in range(rng.randint(0, amb))])
        proj, qdim = quotient_map(amb, s)
        assert proj.rank() == qdim == amb - s.dim
        for j in range(s.dim):
            assert all(x == 0 for x in proj.apply(s.basis.col(j)))
        v = rand_matrix(rng, amb, 1).col(0)
        assert (all(x == 0 for x in proj.apply(v))) == s.contains(v)


def test_induced_on_quotient_examples():
    a = ExactMatrix([[1, 1], [0, 2]])
    assert induced_on_quotient(a, Subspace.zero(2)) == a
    # invariant line e1: the induced action on the e2 coordinate is [2]
    assert induced_on_quotient(a, Subspace(2, columns=[[1, 0]])) == ExactMatrix([[2]])


def test_induced_on_quotient_reports_witness():
    a = ExactMatrix([[0, 1], [0, 0]])
    with pytest.raises(InvarianceError) as err:
        induced_on_quotient(a, Subspace(2, columns=[[0, 1]]))
    assert err.value.witness_vector == (F(0), F(1))
    assert err.value.image == (F(1), F(0))


def test_induced_intertwines_projection():
    rng = random.Random(23)
    done = 0
    while done < 25:
        amb = rng.randint(1, 4)
        a = rand_matrix(rng, amb, amb)
        # build an invariant subspace: span of a few iterated images
        v = rand_matrix(rng, amb, 1).col(0)
        cols, w = [], v
        for _ in range(amb):
            cols.append(w)
            w = a.apply(w)
        s = Subspace(amb, columns=cols)
        if not all(s.contains(a.apply(s.basis.col(j))) for j in range(s.dim)):
            continue
        proj, _ = quotient_map(amb, s)
        abar = induced_on_quotient(a, s)
        assert proj * a == abar * proj
        done += 1


# -- polynomials -------------------------------------------------------------


def test_poly_basic_algebra():
    x = Poly.x()
    p = (x - Poly.constant(1)) * (x + Poly.constant(1))
    assert p == Poly([-1, 0, 1])
    q, r = p.divmod(x - Poly.constant(1))
    assert r.is_zero() and q == Poly([1, 1])
    assert p.gcd(x - Poly.constant(1)) == Poly([-1, 1])
    assert p.eval(3) == 8


def test_poly_rational_roots():
    # 6x^2 - 5x + 1 = (2x-1)(3x-1)
    assert Poly([1, -5, 6]).rational_roots() == [F(1, 3), F(1, 2)]
    assert Poly([0, 1]).rational_roots() == [0]
    assert Poly([1, 0, 1]).rational_roots() == []


def test_charpoly_small_cases():
    a = ExactMatrix([[3, 0], [0, F(1, 2)]])
    assert charpoly(a) == Poly([F(3, 2), -F(7, 2), 1])  # (x-3)(x-1/2)
    b = ExactMatrix([[0, 1], [-1, 0]])
    assert charpoly(b) == Poly([1, 0, 1])


def test_charpoly_matches_bareiss_det():
    rng = random.Random(29)
    for _ in range(20):
        n = rng.randint(1, 4)
        a = rand_matrix(rng, n, n)
        p = charpoly(a)
        for c in (F(0), F(1), F(-2), F(1, 3)):
            assert p.eval(c) == a.scale(-1).add_scaled_identity(c).det()


# -- pencils -----------------------------------------------------------------


def test_pencil_constant_is_full_rank():
    full, defect = pencil_full_rank(PolyMatrix([[Poly.constant(1)]]))
    assert full and defect == Poly.one()


def test_pencil_single_variable_entry():
    full, defect = pencil_full_rank(PolyMatrix([[Poly.x()]]))
    assert not full
    assert defect == Poly([0, 1])
    assert defect.rational_roots() == [0]


def test_pencil_two_by_two():
    m = PolyMatrix([[Poly.x(), Poly.constant(1)], [Poly.constant(1), Poly.x()]])
    full, defect = pencil_full_rank(m)
    assert not full
    assert defect == Poly([-1, 0, 1])  # c^2 - 1


def test_pencil_all_minors_zero():
    m = PolyMatrix([[Poly.zero()], [Poly.zero()]], shape=(2, 1))
    full, defect = pencil_full_rank(m)
    assert not full and defect.is_zero()


def test_pencil_agrees_with_sampling_oracle():
    rng = random.Random(31)
    for _ in range(25):
        r = rng.randint(1, 4)
        c = rng.randint(1, r)
        entries = [
            [
                Poly([rand_fraction(rng), rand_fraction(rng, -2, 2)])
                for _ in range(c)
            ]
            for _ in range(r)
        ]
        m = PolyMatrix(entries, shape=(r, c))
        full, defect = pencil_full_rank(m)
        samples = [rand_fraction(rng, -6, 6, 4) for _ in range(20)]
        if not defect.is_zero():
            samples += defect.rational_roots()
        for cv in samples:
            drop = m.eval(cv).rank() < c
            if defect.is_zero():
                assert drop
            else:
                assert drop == (defect.eval(cv) == 0)
        assert full == (defect.is_constant() and not defect.is_zero())


# -- integer spectra ---------------------------------------------------------


def test_integer_spectrum_examples():
    assert integer_spectrum_hits(ExactMatrix.zeros(3, 3), 0) == []
    assert integer_spectrum_hits(ExactMatrix([[3, 0], [0, F(1, 2)]]), 0) == [3]
    assert integer_spectrum_hits(ExactMatrix([[0, 1], [-1, 0]]), 0) == []


def test_integer_spectrum_brute_force_oracle():
    rng = random.Random(37)
    for _ in range(25):
        n = rng.randint(1, 4)
        a = rand_matrix(rng, n, n, -3, 3, 2)
        shift = rand_fraction(rng, -2, 2, 2)
        b = a.add_scaled_identity(shift)
        bound = 1 + sum(abs(x) for row in b.data for x in row)
        expected = [
            m
            for m in range(-int(bound) - 1, int(bound) + 2)
            if m != 0 and b.add_scaled_identity(-m).rank() < n
        ]
        assert integer_spectrum_hits(a, shift) == expected
