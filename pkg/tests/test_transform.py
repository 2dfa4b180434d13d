from fractions import Fraction as F

import pytest

from tedpoly.facets import affine_dim
from tedpoly.permutations import PermClass, Permutation
from tedpoly.transform import (
    ClassError, build_point_set, center, epsilon, make_qpoint, stretch_tour)

GRID = [(n, e) for n in (4, 5) for e in (1, 5, 10, 20)]


def test_center():
    assert set(center(4).entries) == {F(1, 4)}
    assert set(center(5).entries) == {F(1, 5)}
    for n in (3, 4, 7):
        c = center(n)
        assert all(sum(c.row(i)) == 1 for i in range(n))


def test_epsilon_must_be_positive():
    for bad in (0, -1, "0", "-1/2"):
        with pytest.raises(ValueError):
            epsilon(bad)
    assert epsilon("7/4") == F(7, 4)


def test_stretch_tour_figure():
    tour = Permutation((1, 2, 3, 0))
    m = stretch_tour(tour, 1)
    for i in range(4):
        for j in range(4):
            if tour.image[i] == j:
                assert m[i, j] == 1 + 1 - F(1, 4) == F(7, 4)
            else:
                assert m[i, j] == F(-1, 4)


def test_stretch_tour_symbolic_pattern():
    # P + eps (P - center) agrees entrywise with (1 + eps) P - (eps / n) J
    tour = Permutation((1, 2, 3, 0))
    for eps in (F(1, 3), F(5), F(20)):
        m = stretch_tour(tour, eps)
        for i in range(4):
            for j in range(4):
                p = int(tour.image[i] == j)
                assert m[i, j] == (1 + eps) * p - eps / 4


def test_stretch_rejects_non_tour():
    with pytest.raises(ClassError):
        stretch_tour(Permutation((0, 1, 2, 3)), 1)


def test_make_qpoint_tour_and_identity():
    q = make_qpoint(Permutation((1, 2, 3, 0)), 1)
    m = q.matrix()
    assert all(m[i, i] == 0 for i in range(4))
    assert {x for x in q.coords if x} == {F(2)}
    ident = make_qpoint(Permutation((0, 1, 2, 3)), 1)
    m = ident.matrix()
    for i in range(4):
        for j in range(4):
            assert m[i, j] == (F(5, 4) if i == j else F(1, 4))


def test_point_set_4_1(point_sets):
    ps = point_sets(4, F(1))
    assert len(ps) == 24
    assert len(ps.indices(PermClass.TOUR)) == 6
    assert len(ps) - len(ps.indices(PermClass.TOUR)) == 18
    assert len(point_sets(5, F(1))) == 120
    for i in ps.indices(PermClass.TOUR):
        # oracle: direct summation of squares
        assert sum(x * x for x in ps[i].coords) == 16


@pytest.mark.parametrize("n,e", GRID)
def test_point_invariants(point_sets, n, e):
    eps = F(e)
    ps = point_sets(n, eps)
    for q in ps:
        m = q.matrix()
        for i in range(n):
            assert sum(m.row(i)) == 1 + eps
            assert sum(m.column(i)) == 1 + eps
        k = q.source.fixed_points()
        if q.perm_class is PermClass.TOUR:
            assert set(q.coords) == {0, 1 + eps}
            assert q.squared_norm() == n * (1 + eps) ** 2
            assert q.trace() == 0
        else:
            assert set(q.coords) == {eps / n, 1 + eps / n}
            assert q.squared_norm() == n * (1 + eps / n) ** 2 + (n * n - n) * (eps / n) ** 2
            assert q.squared_norm() == n + eps * (2 + eps)
            assert q.trace() == k + eps
            if q.perm_class is PermClass.IRREFLEXIVE_NONTOUR:
                assert q.trace() == eps
            else:
                assert q.trace() >= 1 + eps


@pytest.mark.parametrize("eps", [F(1), F(3, 7), F(20)])
def test_norm_identity(eps):
    for n in range(3, 9):
        lhs = n * (1 + eps / n) ** 2 + (n * n - n) * (eps / n) ** 2
        assert lhs == n * (1 + eps * (2 + eps) / n)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_affine_dimension(point_sets, n):
    ps = point_sets(n, F(1))
    assert affine_dim([q.coords for q in ps]) == n * n - 2 * n + 1


def test_deterministic_order():
    a = build_point_set(4, F(2))
    b = build_point_set(4, F(2))
    assert a == b
