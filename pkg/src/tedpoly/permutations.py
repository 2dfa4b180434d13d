"""Permutation enumeration and tour / non-tour classification."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from math import factorial

from .rational import ExactMatrix

MIN_N = 3
MAX_N = 9


class DomainError(ValueError):
    pass


class PermClass(str, enum.Enum):
    TOUR = "tour"
    IRREFLEXIVE_NONTOUR = "irreflexive_nontour"
    REFLEXIVE_NONTOUR = "reflexive_nontour"


@dataclass(frozen=True)
class Permutation:
    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        if sorted(self.image) != list(range(n)):
            raise DomainError(f"not a bijection on 0..{n - 1}: {self.image}")

    @property
    def n(self) -> int:
        return len(self.image)

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its smallest element, ordered by that element."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.image[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def fixed_points(self) -> int:
        return sum(1 for i, v in enumerate(self.image) if i == v)

    def conjugate(self, sigma: "Permutation") -> "Permutation":
        """sigma . self . sigma^-1, i.e. the same digraph with vertices relabelled by sigma."""
        img = [0] * self.n
        for i, v in enumerate(self.image):
            img[sigma.image[i]] = sigma.image[v]
        return Permutation(tuple(img))


def _check_n(n: int) -> None:
    if not MIN_N <= n <= MAX_N:
        raise DomainError(f"n must lie in [{MIN_N}, {MAX_N}], got {n}")


def enumerate_permutations(n: int) -> list[Permutation]:
    _check_n(n)
    return [Permutation(p) for p in itertools.permutations(range(n))]


def classify(p: Permutation) -> PermClass:
    if len(p.cycles()) == 1:
        return PermClass.TOUR
    if p.fixed_points():
        return PermClass.REFLEXIVE_NONTOUR
    return PermClass.IRREFLEXIVE_NONTOUR


@dataclass(frozen=True)
class ClassCounts:
    tours: int
    irreflexive_nontours: int
    reflexive_nontours: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.tours, self.irreflexive_nontours, self.reflexive_nontours)

    def __str__(self):
        return "-".join(map(str, self.as_tuple()))

    @classmethod
    def tally(cls, classes) -> "ClassCounts":
        c = {k: 0 for k in PermClass}
        for k in classes:
            c[k] += 1
        return cls(c[PermClass.TOUR], c[PermClass.IRREFLEXIVE_NONTOUR],
                   c[PermClass.REFLEXIVE_NONTOUR])

    @property
    def total(self) -> int:
        return sum(self.as_tuple())


def class_counts(n: int) -> ClassCounts:
    counts = ClassCounts.tally(classify(p) for p in enumerate_permutations(n))
    assert counts.total == factorial(n)
    assert counts.tours == factorial(n - 1)
    return counts


def to_matrix(p: Permutation) -> ExactMatrix:
    n = p.n
    return ExactMatrix(n, n, [1 if p.image[i] == j else 0
                              for i in range(n) for j in range(n)])
