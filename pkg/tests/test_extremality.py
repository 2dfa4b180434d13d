from fractions import Fraction as F

import numpy as np
import pytest
from scipy.optimize import linprog

from tedpoly.extremality import (
    BracketError, CertificateError, bracket_epsilon_max, classify_extrema, is_epsilon_good,
    is_extreme, verify_certificate)
from tedpoly.permutations import PermClass, Permutation


def _index(ps, image):
    return next(i for i, q in enumerate(ps) if q.source.image == image)


def test_tours_extreme_n4(point_sets):
    ps = point_sets(4, F(1))
    for i in ps.indices(PermClass.TOUR):
        assert is_extreme(i, ps).is_extreme


def test_identity_extreme_n5(point_sets):
    ps = point_sets(5, F(1))
    assert is_extreme(_index(ps, (0, 1, 2, 3, 4)), ps).is_extreme


def test_irreflexive_nontours_interior_n5_eps5(point_sets):
    ps = point_sets(5, F(5))
    for i in ps.indices(PermClass.IRREFLEXIVE_NONTOUR):
        v = is_extreme(i, ps)
        assert not v.is_extreme
        verify_certificate(ps, i, v.certificate)


def test_bad_certificates_rejected(point_sets):
    ps = point_sets(5, F(5))
    i = ps.indices(PermClass.IRREFLEXIVE_NONTOUR)[0]
    cert = dict(is_extreme(i, ps).certificate)
    j = next(iter(cert))
    with pytest.raises(CertificateError):
        verify_certificate(ps, i, {**cert, j: cert[j] + F(1, 7)})
    with pytest.raises(CertificateError):
        verify_certificate(ps, i, {i: F(1)})
    k = next(x for x in range(len(ps)) if x not in cert and x != i)
    shifted = dict(cert)
    shifted[j] -= F(1, 1000)
    shifted[k] = F(1, 1000)
    with pytest.raises(CertificateError):
        verify_certificate(ps, i, shifted)


@pytest.mark.parametrize("n,eps,expected", [
    (4, 20, (6, 3, 15)),
    (5, 1, (24, 20, 76)),
    (5, 10, (24, 0, 76)),
])
def test_classify_extrema(n, eps, expected):
    rep = classify_extrema(n, eps)
    assert rep.counts.as_tuple() == expected
    for v in rep.non_extreme():
        verify_certificate_for(rep, v)


def verify_certificate_for(rep, v):
    from tedpoly.transform import build_point_set
    verify_certificate(build_point_set(rep.n, rep.epsilon), v.index, v.certificate)


@pytest.mark.slow
@pytest.mark.parametrize("eps,expected", [(1, (120, 145, 455))])
def test_classify_extrema_n6(eps, expected):
    assert classify_extrema(6, eps).counts.as_tuple() == expected


@pytest.mark.parametrize("n,eps,good", [(5, 1, True), (5, 5, False), (4, 10, True)])
def test_is_epsilon_good(n, eps, good):
    assert is_epsilon_good(n, eps).good is good


def test_parallel_pool_matches_serial():
    assert classify_extrema(5, 5, workers=2) == classify_extrema(5, 5)


def test_verdicts_constant_on_cycle_types():
    # relabelling vertices maps the point set onto itself, so extremality is a class function
    for eps in (1, 5):
        rep = classify_extrema(5, eps)
        from tedpoly.transform import build_point_set
        ps = build_point_set(5, eps)
        by_type = {}
        for v in rep.per_point:
            by_type.setdefault(ps[v.index].source.cycle_type(), set()).add(v.is_extreme)
        assert all(len(s) == 1 for s in by_type.values())


@pytest.mark.parametrize("n,eps", [(4, 1), (4, 20), (5, 1), (5, 5), (5, 20)])
def test_against_floating_point_lp(point_sets, n, eps):
    """Independent HiGHS check; the margins at these sizes are far above float noise."""
    ps = point_sets(n, F(eps))
    Q = np.array([[float(x) for x in q.coords] for q in ps])
    rep = classify_extrema(n, eps)
    for v in rep.per_point:
        others = np.delete(Q, v.index, axis=0)
        A = np.vstack([others.T, np.ones(len(others))])
        b = np.append(Q[v.index], 1.0)
        r = linprog(np.zeros(len(others)), A_eq=A, b_eq=b, bounds=(0, None), method="highs")
        assert (r.status != 0) == v.is_extreme


def test_bracket_one_iteration_n5():
    br = bracket_epsilon_max(5, 1, 5, 1)
    assert [p[0] for p in br.probes] == [1, 5, 3]
    assert (br.lo, br.hi) == (3, 5)
    assert br.non_monotone == []


def test_bracket_error_n4():
    for lo, hi in [(1, 5), (1, 20), (5, 10), (10, 20)]:
        with pytest.raises(BracketError):
            bracket_epsilon_max(4, lo, hi, 2)


def test_bracket_error_bad_lo():
    with pytest.raises(BracketError):
        bracket_epsilon_max(5, 5, 10, 1)
    with pytest.raises(BracketError):
        bracket_epsilon_max(5, 3, 1, 1)


@pytest.mark.slow
def test_bracket_n6_four_iterations():
    br = bracket_epsilon_max(6, 1, 5, 4)
    assert br.hi - br.lo == F(1, 4)
