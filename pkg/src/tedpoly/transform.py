"""Stretch tours away from the Birkhoff center and translate every extremum.

For a tour P the point is (1 + eps) * P; for a non-tour it is
P + (eps / n) * J where J is the all-ones matrix. Coordinates are the
row-major flattening of the n x n matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .permutations import (
    PermClass, Permutation, _check_n, classify, enumerate_permutations)
from .rational import ExactMatrix, parse_rational


class ClassError(ValueError):
    pass


def epsilon(value) -> Fraction:
    """Validate and coerce a stretch parameter; accepts Fractions, ints and ``"p/q"`` text."""
    eps = parse_rational(value) if isinstance(value, str) else Fraction(value)
    if eps <= 0:
        raise ValueError(f"epsilon must be positive, got {eps}")
    return eps


def center(n: int) -> ExactMatrix:
    return ExactMatrix(n, n, [Fraction(1, n)] * (n * n))


def stretch_tour(p: Permutation, eps) -> ExactMatrix:
    """P + eps * (P - center): zeros go to -eps/n, ones to 1 + eps - eps/n."""
    if classify(p) is not PermClass.TOUR:
        raise ClassError(f"{p.image} is not a tour")
    eps = epsilon(eps)
    n = p.n
    lo = -eps / n
    hi = 1 + eps - eps / n
    return ExactMatrix(n, n, [hi if p.image[i] == j else lo
                              for i in range(n) for j in range(n)])


@dataclass(frozen=True)
class QPoint:
    n: int
    epsilon: Fraction
    coords: tuple
    source: Permutation
    perm_class: PermClass

    def matrix(self) -> ExactMatrix:
        return ExactMatrix(self.n, self.n, self.coords)

    def trace(self) -> Fraction:
        return sum(self.coords[i * self.n + i] for i in range(self.n))

    def squared_norm(self) -> Fraction:
        return sum(x * x for x in self.coords)


def make_qpoint(p: Permutation, eps) -> QPoint:
    eps = epsilon(eps)
    n = p.n
    cls = classify(p)
    if cls is PermClass.TOUR:
        one, zero = 1 + eps, Fraction(0)
    else:
        zero = eps / n
        one = 1 + zero
    coords = tuple(one if p.image[i] == j else zero
                   for i in range(n) for j in range(n))
    return QPoint(n, eps, coords, p, cls)


@dataclass(frozen=True)
class PointSet:
    n: int
    epsilon: Fraction
    points: tuple

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i) -> QPoint:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def indices(self, cls: PermClass) -> list[int]:
        return [i for i, q in enumerate(self.points) if q.perm_class is cls]


def build_point_set(n: int, eps) -> PointSet:
    _check_n(n)
    eps = epsilon(eps)
    return PointSet(n, eps, tuple(make_qpoint(p, eps) for p in enumerate_permutations(n)))
