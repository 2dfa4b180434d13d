"""Facet (H-) representation of the projected polytope by exact double description.

Points are projected by dropping the last row and column of each n x n
matrix, which makes the polytope full-dimensional in (n-1)^2 coordinates.
Facets a.x <= b are the extreme rays (b, a) of the cone
{(b, a) : b - a.v >= 0 for every point v}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .rational import DimensionError, common_denominator, format_rational, integer_rank, rank
from .transform import PointSet

DEFAULT_MAX_DIM = 9


@dataclass(frozen=True)
class ProjectedPoint:
    coords: tuple
    source: int


@dataclass(frozen=True, order=True)
class Facet:
    """a . x <= b with coprime integer data."""

    coeffs: tuple
    rhs: int

    @classmethod
    def normalized(cls, coeffs, rhs) -> "Facet":
        vals = [Fraction(v) for v in list(coeffs) + [rhs]]
        d = common_denominator(vals)
        ints = [int(v * d) for v in vals]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g == 0:
            raise ValueError("zero inequality")
        return cls(tuple(v // g for v in ints[:-1]), ints[-1] // g)

    def slack(self, x: Sequence) -> Fraction:
        return self.rhs - sum((a * v for a, v in zip(self.coeffs, x) if a), Fraction(0))

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs), "rhs": self.rhs}


@dataclass(frozen=True)
class HRepresentation:
    dimension: int
    facets: tuple
    is_full_dimensional: bool = True

    def to_json(self) -> dict:
        return {"dim": self.dimension, "count": len(self.facets),
                "facets": [f.to_json() for f in self.facets]}


def project(ps: PointSet) -> list[ProjectedPoint]:
    n = ps.n
    out = []
    for idx, q in enumerate(ps):
        coords = tuple(q.coords[i * n + j] for i in range(n - 1) for j in range(n - 1))
        out.append(ProjectedPoint(coords, idx))
    return out


def lift(coords: Sequence, n: int, eps) -> tuple:
    """Recover the full n x n point from projected coordinates via the row and column sums."""
    s = 1 + Fraction(eps)
    m = n - 1
    full = [[Fraction(0)] * n for _ in range(n)]
    for i in range(m):
        for j in range(m):
            full[i][j] = Fraction(coords[i * m + j])
    for i in range(m):
        full[i][m] = s - sum(full[i][:m])
    for j in range(n):
        full[m][j] = s - sum(full[i][j] for i in range(m))
    return tuple(x for r in full for x in r)


def _coords(p) -> tuple:
    return p.coords if isinstance(p, ProjectedPoint) else tuple(p)


def affine_dim(points) -> int:
    pts = [_coords(p) for p in points]
    if not pts:
        raise ValueError("need at least one point")
    p0 = pts[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
    return rank(diffs) if diffs else 0


def _primitive(v: list[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return [x // g for x in v] if g > 1 else v


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _initial_rays(rows, basis_idx):
    """Rays of {y : rows[i].y >= 0, i in basis_idx}: columns of the inverse, made integral."""
    D = len(basis_idx)
    A = [[Fraction(v) for v in rows[i]] + [Fraction(int(r == k)) for r in range(D)]
         for k, i in enumerate(basis_idx)]
    for c in range(D):
        piv = next(r for r in range(c, D) if A[r][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for r in range(D):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    rays = []
    for k in range(D):
        col = [A[r][D + k] for r in range(D)]
        d = common_denominator(col)
        rays.append(_primitive([int(x * d) for x in col]))
    return rays


def extreme_rays(rows: Sequence[Sequence[int]]) -> list[tuple[list[int], int]]:
    """Extreme rays of the pointed cone {y : row . y >= 0 for all rows}.

    Returns ``(ray, zero_mask)`` pairs; bit i of ``zero_mask`` is set when
    row i is tight at the ray.
    """
    rows = [list(r) for r in rows]
    D = len(rows[0])
    # greedy choice of D independent rows, in input order
    basis_idx = []
    for i, r in enumerate(rows):
        if integer_rank([rows[k] for k in basis_idx] + [r]) > len(basis_idx):
            basis_idx.append(i)
            if len(basis_idx) == D:
                break
    if len(basis_idx) < D:
        raise DimensionError("cone is not pointed (constraint rows are rank deficient)")
    rays = _initial_rays(rows, basis_idx)
    zmask = []
    done = 0
    for i in basis_idx:
        done |= 1 << i
    for ray in rays:
        z = 0
        for i in basis_idx:
            if _dot(rows[i], ray) == 0:
                z |= 1 << i
        zmask.append(z)

    for i, h in enumerate(rows):
        if done >> i & 1:
            continue
        vals = [_dot(h, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        new_rays = [rays[k] for k in pos] + [rays[k] for k in zer]
        new_mask = [zmask[k] for k in pos] + [zmask[k] | 1 << i for k in zer]
        if neg:
            for a in pos:
                za = zmask[a]
                for b in neg:
                    common = za & zmask[b]
                    if common.bit_count() < D - 2:
                        continue
                    # combinatorial adjacency: no third ray is tight on all of `common`
                    if any(k != a and k != b and zmask[k] & common == common
                           for k in range(len(rays))):
                        continue
                    va, vb = vals[a], vals[b]
                    r = _primitive([va * y - vb * x for x, y in zip(rays[a], rays[b])])
                    new_rays.append(r)
                    new_mask.append(common | 1 << i)
        rays, zmask = new_rays, new_mask
        done |= 1 << i
    return list(zip(rays, zmask))


def _integer_coords(pts):
    L = common_denominator(x for p in pts for x in p)
    return L, [[int(x * L) for x in p] for p in pts]


def enumerate_facets(points, *, max_dim: int = DEFAULT_MAX_DIM) -> HRepresentation:
    pts = [_coords(p) for p in points]
    if not pts:
        raise ValueError("need at least one point")
    d = len(pts[0])
    if d > max_dim:
        raise DimensionError(f"dimension {d} exceeds the guard {max_dim}; raise max_dim to proceed")
    dim = affine_dim(pts)
    if dim != d:
        raise DimensionError(f"points span dimension {dim} in R^{d}; not full-dimensional")
    L, ipts = _integer_coords(pts)
    # y = (b', a) with b' = L * b: row for point v is (1, -L v) . y >= 0  <=>  a.v <= b
    rows = [[1] + [-x for x in p] for p in ipts]
    facets = set()
    for ray, _ in extreme_rays(rows):
        b_scaled, a = ray[0], ray[1:]
        if not any(a):
            continue
        facets.add(Facet.normalized(a, Fraction(b_scaled, L)))
    return HRepresentation(d, tuple(sorted(facets)), True)


def hrep_vertices(h: HRepresentation) -> list[tuple]:
    """Vertices of {x : a.x <= b} by double description on the homogenized cone."""
    rows = [[1] + [0] * h.dimension]
    rows += [[f.rhs] + [-a for a in f.coeffs] for f in h.facets]
    verts = []
    for ray, _ in extreme_rays(rows):
        t = ray[0]
        if t == 0:
            raise DimensionError("H-representation is unbounded")
        verts.append(tuple(Fraction(x, t) for x in ray[1:]))
    return sorted(verts)


@dataclass(frozen=True)
class HrepCheck:
    points_satisfy: bool
    facets_tight: bool
    no_duplicates: bool
    complete: bool
    round_trip: bool | None
    bad_facets: tuple = ()
    open_ridges: int = 0

    @property
    def ok(self) -> bool:
        return (self.points_satisfy and self.facets_tight and self.no_duplicates
                and self.complete and self.round_trip is not False)

    def __bool__(self):
        return self.ok


def tight_points(f: Facet, pts) -> list[int]:
    return [k for k, p in enumerate(pts) if f.slack(p) == 0]


def _chart(pts: list[tuple]) -> list[tuple]:
    """Project points onto a set of coordinate axes that is injective on their affine hull."""
    p0 = pts[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
    target = rank(diffs) if diffs else 0
    axes: list[int] = []
    for c in range(len(p0)):
        if len(axes) == target:
            break
        trial = axes + [c]
        if rank([[d[k] for d in diffs] for k in trial]) == len(trial):
            axes = trial
    return [tuple(p[k] for k in axes) for p in pts]


def ridges(tight: Sequence[int], pts, dim: int) -> list[frozenset]:
    """Ridges of the facet whose vertex set is ``tight``, as sets of point indices."""
    if len(tight) == dim:  # simplex facet
        return [frozenset(tight[:k] + tight[k + 1:]) for k in range(len(tight))]
    sub = _chart([pts[k] for k in tight])
    h = enumerate_facets(sub, max_dim=len(sub[0]))
    return [frozenset(tight[k] for k in tight_points(g, sub)) for g in h.facets]


def vertices_among(h: HRepresentation, pts) -> list[int]:
    """Indices of points that satisfy h and are tight on facets with full-rank normals."""
    out = []
    for k, p in enumerate(pts):
        if any(f.slack(p) < 0 for f in h.facets):
            continue
        normals = [f.coeffs for f in h.facets if f.slack(p) == 0]
        if normals and integer_rank(normals) == h.dimension:
            out.append(k)
    return out


def verify_hrep(h: HRepresentation, points, expected_vertices=None) -> HrepCheck:
    """Validity, facet-ness, irredundancy and completeness of ``h`` for ``points``.

    Completeness is certified by ridge closure: every ridge of every listed
    facet must lie in exactly two listed facets. Since the facet-ridge graph
    of a polytope is connected, a proper subset of the facets always leaves
    some ridge covered once. With a complete list the vertices of ``h`` are
    the input points of full tight rank; with ``expected_vertices`` that set
    is compared against it.
    """
    pts = [tuple(Fraction(x) for x in _coords(p)) for p in points]
    dim = affine_dim(pts)
    satisfy = all(f.slack(p) >= 0 for f in h.facets for p in pts)
    bad = []
    tight_sets = []
    for idx, f in enumerate(h.facets):
        tight = tight_points(f, pts)
        tight_sets.append(tight)
        if not tight or affine_dim([pts[k] for k in tight]) != dim - 1:
            bad.append(idx)
    normalized = [Facet.normalized(f.coeffs, f.rhs) for f in h.facets]
    no_dups = len(set(normalized)) == len(normalized)

    open_ridges = 0
    complete = False
    if satisfy and not bad and no_dups and h.facets:
        masks = [sum(1 << k for k in t) for t in tight_sets]
        seen: dict = {}
        for t in tight_sets:
            for r in ridges(t, pts, dim):
                if r in seen:
                    continue
                rm = sum(1 << k for k in r)
                seen[r] = sum(1 for m in masks if m & rm == rm)
        open_ridges = sum(1 for c in seen.values() if c != 2)
        complete = open_ridges == 0

    round_trip = None
    if expected_vertices is not None:
        want = {tuple(Fraction(x) for x in _coords(v)) for v in expected_vertices}
        got = {pts[k] for k in vertices_among(h, pts)} if complete else None
        round_trip = got == want
    return HrepCheck(satisfy, not bad, no_dups, complete, round_trip, tuple(bad), open_ridges)


def summary_line(h: HRepresentation) -> str:
    return f"facets={len(h.facets)} (paper lower bound 508)"


__all__ = [
    "ProjectedPoint", "Facet", "HRepresentation", "HrepCheck", "project", "lift",
    "affine_dim", "enumerate_facets", "verify_hrep", "hrep_vertices", "extreme_rays",
    "tight_points", "ridges", "vertices_among", "summary_line", "format_rational",
]
