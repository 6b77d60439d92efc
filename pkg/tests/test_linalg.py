import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lieq.linalg import (
    Matrix,
    Polynomial,
    Q,
    Subspace,
    minimal_polynomial,
    nullspace,
    rank,
    rank_bareiss,
    rref,
    solve,
    split_semisimple_check,
)


def M(rows):
    return Matrix(rows)


class TestRref:
    def test_identity_fixed(self):
        i3 = Matrix.identity(3)
        r, piv = rref(i3)
        assert r == i3
        assert piv == (0, 1, 2)

    def test_zero_matrix(self):
        r, piv = rref(Matrix.zero(2, 3))
        assert r == Matrix.zero(2, 3)
        assert piv == ()

    def test_rank_one(self):
        r, piv = rref(M([[2, 4], [1, 2]]))
        assert r == M([[1, 2], [0, 0]])
        assert piv == (0,)

    def test_idempotent(self):
        rng = random.Random(7)
        for _ in range(50):
            m = M([[rng.randint(-3, 3) for _ in range(4)] for _ in range(3)])
            r, _ = rref(m)
            assert rref(r)[0] == r


class TestNullspace:
    def test_identity(self):
        assert nullspace(Matrix.identity(2)).dim == 0

    def test_zero(self):
        assert nullspace(Matrix.zero(2, 2)) == Subspace.full(2)

    def test_line(self):
        ns = nullspace(M([[1, 1]]))
        assert ns.dim == 1
        assert ns.vectors()[0] == (Q(1), Q(-1))

    def test_vectors_annihilated(self):
        # independent of the elimination path: direct multiplication
        rng = random.Random(11)
        for _ in range(50):
            m = M([[rng.randint(-4, 4) for _ in range(5)] for _ in range(3)])
            ns = nullspace(m)
            assert ns.dim == 5 - rank(m)
            for v in ns.vectors():
                assert all(x == 0 for x in m.apply(v))


class TestSolve:
    def test_identity(self):
        assert solve(Matrix.identity(2), [3, 5]) == (Q(3), Q(5))

    def test_inconsistent(self):
        assert solve(M([[1], [0]]), [0, 1]) is None

    def test_diagonal(self):
        assert solve(M([[2, 0], [0, 4]]), [1, 1]) == (Q(1, 2), Q(1, 4))

    def test_solution_verifies(self):
        rng = random.Random(3)
        for _ in range(50):
            a = M([[rng.randint(-3, 3) for _ in range(3)] for _ in range(4)])
            b = [rng.randint(-3, 3) for _ in range(4)]
            x = solve(a, b)
            if x is not None:
                assert list(a.apply(x)) == [Q(v) for v in b]


class TestSubspace:
    def test_full_space_ops(self):
        a = Subspace.full(3)
        assert a == a.sum(a) == a.intersect(a)
        assert a.contains(a)

    def test_axes(self):
        e1 = Subspace.from_vectors(2, [(1, 0)])
        e2 = Subspace.from_vectors(2, [(0, 1)])
        assert e1.sum(e2) == Subspace.full(2)
        assert e1.intersect(e2).dim == 0

    def test_skew_lines(self):
        a = Subspace.from_vectors(3, [(1, 1, 0)])
        b = Subspace.from_vectors(3, [(1, -1, 0)])
        assert a.intersect(b).dim == 0
        assert a.sum(b).dim == 2

    def test_canonicity(self):
        a = Subspace.from_vectors(3, [(2, 2, 0), (0, 4, 4)])
        b = Subspace.from_vectors(3, [(1, 1, 0), (1, 3, 2)])
        assert a == b

    def test_ambient_mismatch(self):
        with pytest.raises(ValueError):
            Subspace.full(2).sum(Subspace.full(3))

    def test_coords_roundtrip(self):
        s = Subspace.from_vectors(4, [(1, 2, 0, 1), (0, 0, 1, 3)])
        v = [Q(2) * a + Q(-1, 3) * b for a, b in zip(*s.vectors())]
        assert s.coords_of(v) == (Q(2), Q(-1, 3))
        assert s.coords_of((1, 0, 0, 0)) is None

    def test_dimension_formula_200_random_pairs(self):
        rng = random.Random(2024)
        for _ in range(200):
            n = rng.randint(1, 5)
            a = Subspace.from_vectors(
                n,
                [
                    [rng.randint(-2, 2) for _ in range(n)]
                    for _ in range(rng.randint(0, n))
                ],
            )
            b = Subspace.from_vectors(
                n,
                [
                    [rng.randint(-2, 2) for _ in range(n)]
                    for _ in range(rng.randint(0, n))
                ],
            )
            s = a.sum(b)
            i = a.intersect(b)
            assert s.dim + i.dim == a.dim + b.dim
            assert s.contains(a) and s.contains(b)
            assert a.contains(i) and b.contains(i)


def test_bareiss_vs_gauss_rank_200_random():
    rng = random.Random(99)
    for _ in range(200):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = M(
            [
                [Q(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(cols)]
                for _ in range(rows)
            ]
        )
        assert rank(m) == rank_bareiss(m)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(-4, 4), min_size=3, max_size=3),
        min_size=1,
        max_size=4,
    )
)
def test_rref_preserves_row_space(rows):
    m = M(rows)
    r, piv = rref(m)
    assert Subspace.from_vectors(3, m.data) == Subspace.from_vectors(3, r.data)
    assert len(piv) == rank(m)


class TestPolynomial:
    def test_normalization(self):
        assert Polynomial([1, 2, 0]).coeffs == (Q(1), Q(2))
        assert Polynomial([0, 0]).is_zero()
        assert Polynomial([]).degree == -1

    def test_divmod(self):
        p = Polynomial([-2, 1]).monic()  # x - 2
        q, r = Polynomial([2, -3, 1]).divmod(p)  # (x-1)(x-2)
        assert r.is_zero()
        assert q == Polynomial([-1, 1])

    def test_gcd(self):
        p = Polynomial([0, 0, 1])  # x^2
        assert p.gcd(p.derivative()) == Polynomial([0, 1])
        assert not p.is_squarefree()
        assert Polynomial([-2, 1]).is_squarefree()

    def test_rational_roots(self):
        # (2x - 1)(x + 3) = 2x^2 + 5x - 3
        assert Polynomial([-3, 5, 2]).rational_roots() == [Q(-3), Q(1, 2)]
        assert Polynomial([1, 0, 1]).rational_roots() == []

    def test_splits(self):
        ok, roots = Polynomial([-3, 5, 2]).splits_rationally()
        assert ok and sorted(roots) == [Q(-3), Q(1, 2)]
        ok, _ = Polynomial([1, 0, 1]).splits_rationally()
        assert not ok


class TestMinimalPolynomial:
    def test_identity(self):
        assert minimal_polynomial(Matrix.identity(4)) == Polynomial([-1, 1])

    def test_nilpotent(self):
        assert minimal_polynomial(M([[0, 1], [0, 0]])) == Polynomial([0, 0, 1])

    def test_diag(self):
        # (x-1)(x-2) = x^2 - 3x + 2
        assert minimal_polynomial(M([[1, 0], [0, 2]])) == Polynomial([2, -3, 1])

    def test_non_square(self):
        with pytest.raises(ValueError):
            minimal_polynomial(Matrix.zero(2, 3))

    def test_annihilates(self):
        rng = random.Random(5)
        for _ in range(25):
            n = rng.randint(1, 4)
            m = M([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
            p = minimal_polynomial(m)
            assert p.eval_matrix(m).is_zero()


class TestSplitSemisimple:
    def test_diag_repeated(self):
        rep = split_semisimple_check(M([[1, 0, 0], [0, 1, 0], [0, 0, 2]]))
        assert rep.semisimple and rep.split
        assert rep.eigenvalues == (Q(1), Q(2))

    def test_jordan_block(self):
        rep = split_semisimple_check(M([[0, 1], [0, 0]]))
        assert not rep.semisimple

    def test_rotation_not_split(self):
        rep = split_semisimple_check(M([[0, -1], [1, 0]]))
        assert rep.semisimple  # x^2 + 1 is squarefree
        assert not rep.split
        assert rep.eigenvalues is None
