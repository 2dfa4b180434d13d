"""Which transformed points are extreme in conv(Q_t, Q_nt), and for which eps.

A point is tested by asking whether it is a convex combination of the
other n! - 1 points (a Phase I feasibility problem). A feasible answer is
returned as an exact certificate and re-verified before it is trusted.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import lp
from .permutations import ClassCounts, PermClass
from .rational import common_denominator, format_rational
from .transform import PointSet, build_point_set, epsilon

log = logging.getLogger(__name__)

# published extreme-point counts, keyed by (n, eps)
PUBLISHED_TABLE1 = {
    (4, 1): (6, 3, 15), (4, 5): (6, 3, 15), (4, 10): (6, 3, 15), (4, 20): (6, 3, 15),
    (5, 1): (24, 20, 76), (5, 5): (24, 0, 76), (5, 10): (24, 0, 76), (5, 20): (24, 0, 76),
    (6, 1): (120, 145, 455), (6, 5): (120, 26, 455), (6, 10): (120, 19, 455),
    (6, 20): (120, 13, 455),
}
PUBLISHED_EPS_GRID = (1, 5, 10, 20)


class CertificateError(AssertionError):
    pass


class BracketError(ValueError):
    pass


@dataclass(frozen=True)
class PointVerdict:
    index: int
    perm_class: PermClass
    is_extreme: bool
    certificate: dict | None = None  # other index -> coefficient


@dataclass(frozen=True)
class ExtremalityReport:
    n: int
    epsilon: Fraction
    per_point: tuple
    counts: ClassCounts

    @property
    def all_extreme(self) -> bool:
        return all(v.is_extreme for v in self.per_point)

    def non_extreme(self) -> list[PointVerdict]:
        return [v for v in self.per_point if not v.is_extreme]


def _integer_points(ps: PointSet) -> list[tuple[int, ...]]:
    L = common_denominator(x for q in ps for x in q.coords)
    return [tuple(int(x * L) for x in q.coords) for q in ps]


def _feasibility_system(ipoints, i):
    others = [j for j in range(len(ipoints)) if j != i]
    columns = [ipoints[j] + (1,) for j in others]
    rhs = list(ipoints[i]) + [1]
    return others, columns, rhs


def verify_certificate(ps: PointSet, i: int, certificate: dict) -> None:
    """Raise CertificateError unless ``certificate`` writes point i as a convex combination of the others."""
    if i in certificate:
        raise CertificateError(f"certificate for {i} uses the point itself")
    if any(a < 0 for a in certificate.values()):
        raise CertificateError("negative coefficient")
    if sum(certificate.values()) != 1:
        raise CertificateError("coefficients do not sum to 1")
    target = ps[i].coords
    combo = [Fraction(0)] * len(target)
    for j, a in certificate.items():
        for k, x in enumerate(ps[j].coords):
            combo[k] += a * x
    if tuple(combo) != target:
        raise CertificateError(f"combination does not reproduce point {i}")


def _test_point(ps: PointSet, ipoints, i: int) -> PointVerdict:
    others, columns, rhs = _feasibility_system(ipoints, i)
    status, x, _, _ = lp.run_kernel(columns, rhs)
    q = ps[i]
    if status is not lp.LpStatus.OPTIMAL:
        return PointVerdict(i, q.perm_class, True)
    cert = {others[k]: a for k, a in enumerate(x) if a}
    verify_certificate(ps, i, cert)
    return PointVerdict(i, q.perm_class, False, cert)


def is_extreme(i: int, ps: PointSet) -> PointVerdict:
    if not 0 <= i < len(ps):
        raise IndexError(f"point index {i} out of range")
    return _test_point(ps, _integer_points(ps), i)


# worker-process state, filled once per process by _init_worker
_WORKER: dict = {}


def _init_worker(n, eps):
    ps = build_point_set(n, eps)
    _WORKER["ps"] = ps
    _WORKER["ipoints"] = _integer_points(ps)


def _worker_test(i):
    return _test_point(_WORKER["ps"], _WORKER["ipoints"], i)


def classify_extrema(n: int, eps, workers: int = 1) -> ExtremalityReport:
    eps = epsilon(eps)
    ps = build_point_set(n, eps)
    if workers > 1:
        with ProcessPoolExecutor(workers, initializer=_init_worker,
                                 initargs=(n, eps)) as pool:
            verdicts = list(pool.map(_worker_test, range(len(ps)), chunksize=8))
        for v in verdicts:
            if v.certificate is not None:
                verify_certificate(ps, v.index, v.certificate)
    else:
        ipoints = _integer_points(ps)
        verdicts = [_test_point(ps, ipoints, i) for i in range(len(ps))]
    counts = ClassCounts.tally(v.perm_class for v in verdicts if v.is_extreme)
    # tours lie on a sphere that contains every other point, so they must be extreme
    bad = [v.index for v in verdicts if v.perm_class is PermClass.TOUR and not v.is_extreme]
    if bad:
        raise CertificateError(f"tour points reported non-extreme: {bad}")
    return ExtremalityReport(n, eps, tuple(verdicts), counts)


@dataclass(frozen=True)
class EpsilonVerdict:
    epsilon: Fraction
    good: bool
    report: ExtremalityReport = field(repr=False, compare=False)


@lru_cache(maxsize=64)
def _cached_report(n: int, eps: Fraction) -> ExtremalityReport:
    return classify_extrema(n, eps)


def is_epsilon_good(n: int, eps) -> EpsilonVerdict:
    eps = epsilon(eps)
    report = _cached_report(n, eps)
    return EpsilonVerdict(eps, report.all_extreme, report)


@dataclass
class EpsilonBracket:
    n: int
    lo: Fraction
    hi: Fraction
    probes: list  # (eps, good, counts) in probe order
    non_monotone: list  # probes contradicting a monotone good/bad split

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
            "width": format_rational(self.hi - self.lo),
            "probes": [{"eps": format_rational(e), "good": g, "counts": str(c)}
                       for e, g, c in self.probes],
            "non_monotone": [format_rational(e) for e in self.non_monotone],
        }


def bracket_epsilon_max(n: int, lo, hi, max_iters: int) -> EpsilonBracket:
    """Bisect between a good ``lo`` and a bad ``hi``.

    Every probe runs the full extremality classification; certificates are
    verified inside it. Monotonicity in eps is not assumed: a probe whose
    verdict contradicts an already-tested larger or smaller eps is recorded.
    """
    lo, hi = epsilon(lo), epsilon(hi)
    if not lo < hi:
        raise BracketError(f"need lo < hi, got {lo}, {hi}")
    probes = []

    def probe(e):
        v = is_epsilon_good(n, e)
        probes.append((e, v.good, v.report.counts))
        return v.good

    if not probe(lo):
        raise BracketError(f"eps={format_rational(lo)} is not good for n={n}")
    if probe(hi):
        raise BracketError(f"eps={format_rational(hi)} is good for n={n}")
    for _ in range(max_iters):
        mid = (lo + hi) / 2
        if probe(mid):
            lo = mid
        else:
            hi = mid
    non_monotone = [e for e, g, _ in probes
                    if (g and any(e2 < e and not g2 for e2, g2, _ in probes))
                    or (not g and any(e2 > e and g2 for e2, g2, _ in probes))]
    if non_monotone:
        log.warning("goodness is not monotone in eps for n=%d: %s", n, non_monotone)
    return EpsilonBracket(n, lo, hi, probes, non_monotone)
