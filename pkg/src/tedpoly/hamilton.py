"""Hamiltonicity of simple digraphs: backtracking, brute max over Q, and the LP threshold.

A digraph G is Hamiltonian exactly when the maximum of <G, q> over the
transformed points q reaches n(1 + eps); the LP reaches the same maximum
over their convex hull.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import lp
from .extremality import is_epsilon_good
from .facets import HRepresentation, enumerate_facets, lift, project
from .permutations import PermClass
from .rational import ExactMatrix, format_rational
from .transform import PointSet, build_point_set, epsilon


class ConfigurationError(ValueError):
    pass


class InvariantError(AssertionError):
    pass


@dataclass(frozen=True)
class Digraph:
    n: int
    adj: tuple  # n rows of n 0/1 ints

    def __post_init__(self):
        if len(self.adj) != self.n or any(len(r) != self.n for r in self.adj):
            raise ValueError(f"adjacency must be {self.n}x{self.n}")
        for i, row in enumerate(self.adj):
            if any(v not in (0, 1) for v in row):
                raise ValueError("adjacency entries must be 0 or 1")
            if row[i]:
                raise ValueError(f"loop at vertex {i}: digraphs must be simple")

    @classmethod
    def from_rows(cls, rows) -> "Digraph":
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        return cls(len(rows), rows)

    @classmethod
    def from_arcs(cls, n: int, arcs) -> "Digraph":
        adj = [[0] * n for _ in range(n)]
        for i, j in arcs:
            adj[i][j] = 1
        return cls.from_rows(adj)

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "Digraph":
        """Arc k of the off-diagonal positions (row-major) is present when bit k of mask is set."""
        slots = [(i, j) for i in range(n) for j in range(n) if i != j]
        return cls.from_arcs(n, [s for k, s in enumerate(slots) if mask >> k & 1])

    @classmethod
    def parse(cls, text: str) -> "Digraph":
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not lines or len(lines[0]) != 1:
            raise ValueError("first line must hold n")
        n = int(lines[0][0])
        rows = lines[1:]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"expected {n} rows of {n} digits")
        return cls.from_rows(rows)

    @classmethod
    def read(cls, path) -> "Digraph":
        return cls.parse(Path(path).read_text())

    def dumps(self) -> str:
        return "\n".join([str(self.n)] + [" ".join(map(str, r)) for r in self.adj]) + "\n"

    def flatten(self) -> tuple:
        return tuple(v for r in self.adj for v in r)

    def arc_count(self) -> int:
        return sum(self.flatten())

    def successors(self, i: int) -> list[int]:
        return [j for j, v in enumerate(self.adj[i]) if v]


def all_digraphs(n: int):
    """Every loopless digraph on n vertices, in mask order."""
    for mask in range(1 << (n * n - n)):
        yield Digraph.from_mask(n, mask)


def oracle_is_hamiltonian(g: Digraph) -> bool:
    """Backtracking search for a directed Hamilton cycle anchored at vertex 0."""
    n = g.n
    succ = [g.successors(i) for i in range(n)]
    if any(not s for s in succ) or any(not any(g.adj[i][j] for i in range(n)) for j in range(n)):
        return False
    visited = [False] * n
    visited[0] = True

    def extend(v, depth):
        if depth == n:
            return g.adj[v][0] == 1
        for w in succ[v]:
            if not visited[w]:
                visited[w] = True
                if extend(w, depth + 1):
                    return True
                visited[w] = False
        return False

    return extend(0, 1)


def _check_dims(g: Digraph, ps: PointSet) -> None:
    if g.n != ps.n:
        raise ValueError(f"graph has {g.n} vertices, point set is for n={ps.n}")


def _inner(g_flat, q) -> Fraction:
    return sum((x for a, x in zip(g_flat, q.coords) if a), Fraction(0))


def brute_max(g: Digraph, ps: PointSet, cls: PermClass | None = None):
    """Exact max of <g, q> over the points (optionally one class); ties go to the lowest index.

    Returns ``(value, index, perm_class)``.
    """
    _check_dims(g, ps)
    flat = g.flatten()
    best = None
    for i, q in enumerate(ps):
        if cls is not None and q.perm_class is not cls:
            continue
        v = _inner(flat, q)
        if best is None or v > best[0]:
            best = (v, i, q.perm_class)
    return best


def _max_over_classes(g: Digraph, ps: PointSet) -> tuple[Fraction, Fraction]:
    flat = g.flatten()
    mt = mnt = None
    for q in ps:
        v = _inner(flat, q)
        if q.perm_class is PermClass.TOUR:
            mt = v if mt is None or v > mt else mt
        else:
            mnt = v if mnt is None or v > mnt else mnt
    return mt, mnt


@dataclass(frozen=True)
class BoundsReport:
    hamiltonian: bool
    max_tour: Fraction
    max_nontour: Fraction
    checks: tuple  # (name, holds) pairs

    @property
    def ok(self) -> bool:
        return all(h for _, h in self.checks)


def check_theorem_bounds(g: Digraph, ps: PointSet, hamiltonian: bool | None = None) -> BoundsReport:
    _check_dims(g, ps)
    if hamiltonian is None:
        hamiltonian = oracle_is_hamiltonian(g)
    n, eps = ps.n, ps.epsilon
    mt, mnt = _max_over_classes(g, ps)
    if hamiltonian:
        checks = (
            ("tour_max_equals_n(1+eps)", mt == n * (1 + eps)),
            ("nontour_max_le_n(1+eps)-eps", mnt <= n * (1 + eps) - eps),
        )
    else:
        m = g.arc_count()
        checks = (
            ("tour_max_le_(n-1)(1+eps)", mt <= (n - 1) * (1 + eps)),
            ("nontour_max_le_n(1+eps/n)+m*eps/n", mnt <= n * (1 + eps / n) + m * eps / n),
        )
    return BoundsReport(hamiltonian, mt, mnt, checks)


@dataclass(frozen=True)
class DecisionReport:
    graph_id: str
    n: int
    epsilon: Fraction
    oracle_hamiltonian: bool
    lp_value: Fraction
    lp_hamiltonian: bool
    brute_value: Fraction
    argmax_class: PermClass
    theorem_bounds_ok: bool

    @property
    def agrees(self) -> bool:
        return self.lp_hamiltonian == self.oracle_hamiltonian and self.lp_value == self.brute_value

    def to_json(self) -> dict:
        return {
            "graph_id": self.graph_id,
            "n": self.n,
            "eps": format_rational(self.epsilon),
            "threshold": format_rational(self.n * (1 + self.epsilon)),
            "lp_value": format_rational(self.lp_value),
            "lp_hamiltonian": self.lp_hamiltonian,
            "brute_value": format_rational(self.brute_value),
            "oracle_hamiltonian": self.oracle_hamiltonian,
            "argmax_class": self.argmax_class.value,
            "theorem_bounds_ok": self.theorem_bounds_ok,
        }


def lp_max_convex(g: Digraph, ps: PointSet) -> Fraction:
    """max <g, sum_j a_j q_j>  s.t. sum a = 1, a >= 0, with the q-block substituted out."""
    flat = g.flatten()
    obj = tuple(_inner(flat, q) for q in ps)
    prob = lp.LpProblem(obj, ExactMatrix(1, len(ps), [1] * len(ps)), (1,))
    res = lp.solve(prob)
    if res.status is not lp.LpStatus.OPTIMAL:
        raise InvariantError(f"LP over the convex hull returned {res.status.value}")
    return res.value


def lp_max_extended(g: Digraph, ps: PointSet) -> Fraction:
    """Same maximum with the q-block kept: q = sum_j a_j q_j, q free (split as q+ - q-)."""
    n2 = ps.n * ps.n
    N = len(ps)
    flat = g.flatten()
    obj = (0,) * N + tuple(flat) + tuple(-v for v in flat)
    rows = []
    for k in range(n2):
        row = [q.coords[k] for q in ps] + [0] * (2 * n2)
        row[N + k] = -1
        row[N + n2 + k] = 1
        rows.append(row)
    rows.append([1] * N + [0] * (2 * n2))
    prob = lp.LpProblem(obj, ExactMatrix.from_rows(rows), (0,) * n2 + (1,))
    res = lp.solve(prob)
    if res.status is not lp.LpStatus.OPTIMAL:
        raise InvariantError(f"extended LP returned {res.status.value}")
    return res.value


def lp_max_hrep(g: Digraph, h: HRepresentation, eps) -> Fraction:
    """Maximum of <G, q> over the facet description of the polytope.

    Works in the projected (n-1)^2 chart; the objective becomes affine
    there through `lift`. max{c.x : Ax <= b} is solved through its dual
    min{b.y : A^T y = c, y >= 0}, which has (n-1)^2 rows instead of one
    per facet. A bounded nonempty polytope makes both optima equal.
    """
    n = g.n
    m = (n - 1) ** 2
    if h.dimension != m:
        raise ConfigurationError(f"facet list is {h.dimension}-dimensional, expected {m}")
    flat = g.flatten()

    def value(x):
        return sum((a * v for a, v in zip(flat, lift(x, n, eps)) if a), Fraction(0))

    zero = value((0,) * m)
    obj = [value(tuple(int(i == k) for i in range(m))) - zero for k in range(m)]
    rows = [[f.coeffs[k] for f in h.facets] for k in range(m)]
    prob = lp.LpProblem(tuple(-f.rhs for f in h.facets), ExactMatrix.from_rows(rows), tuple(obj))
    res = lp.solve(prob)
    if res.status is not lp.LpStatus.OPTIMAL:
        raise InvariantError(f"facet LP dual returned {res.status.value}")
    return zero - res.value


_POINT_SETS: dict = {}


def _point_set(n, eps) -> PointSet:
    key = (n, eps)
    if key not in _POINT_SETS:
        _POINT_SETS[key] = build_point_set(n, eps)
    return _POINT_SETS[key]


_HREPS: dict = {}


def _hrep(n, eps) -> HRepresentation:
    key = (n, eps)
    if key not in _HREPS:
        _HREPS[key] = enumerate_facets(project(_point_set(n, eps)))
    return _HREPS[key]


def lp_decide(g: Digraph, eps, *, allow_bad_eps: bool = False, encoding: str = "convex",
              graph_id: str = "", ps: PointSet | None = None) -> DecisionReport:
    eps = epsilon(eps)
    n = g.n
    if not allow_bad_eps and not is_epsilon_good(n, eps).good:
        raise ConfigurationError(
            f"eps={format_rational(eps)} is not good for n={n}; pass allow_bad_eps to override")
    ps = ps or _point_set(n, eps)
    _check_dims(g, ps)
    if encoding == "convex":
        value = lp_max_convex(g, ps)
    elif encoding == "extended":
        value = lp_max_extended(g, ps)
    elif encoding == "hrep":
        value = lp_max_hrep(g, _hrep(n, eps), eps)
    else:
        raise ValueError(f"unknown encoding {encoding!r}")
    brute_value, _, argmax_class = brute_max(g, ps)
    if value != brute_value:
        raise InvariantError(f"LP value {value} differs from brute max {brute_value}")
    oracle = oracle_is_hamiltonian(g)
    bounds = check_theorem_bounds(g, ps, oracle)
    return DecisionReport(
        graph_id=graph_id or format(hash(g.adj) & 0xFFFFFFFF, "08x"),
        n=n, epsilon=eps,
        oracle_hamiltonian=oracle,
        lp_value=value,
        lp_hamiltonian=value == n * (1 + eps),
        brute_value=brute_value,
        argmax_class=argmax_class,
        theorem_bounds_ok=bounds.ok,
    )


@dataclass
class SweepResult:
    n: int
    epsilon: Fraction
    graphs: int
    hamiltonian: int
    mismatches: list  # graph ids where lp and oracle disagree
    bound_violations: list
    min_gap: Fraction | None  # smallest lp_value - nontour max over Hamiltonian graphs

    @property
    def passed(self) -> bool:
        return not self.mismatches and not self.bound_violations

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "eps": format_rational(self.epsilon),
            "graphs": self.graphs,
            "hamiltonian": self.hamiltonian,
            "passed": self.passed,
            "mismatches": self.mismatches,
            "bound_violations": self.bound_violations,
            "min_hamiltonian_gap": None if self.min_gap is None else format_rational(self.min_gap),
        }


def sweep(graphs, eps, n: int, *, allow_bad_eps: bool = False) -> SweepResult:
    """Check lp_decide against the oracle and the theorem bounds over a corpus of (id, graph)."""
    eps = epsilon(eps)
    ps = _point_set(n, eps)
    if not allow_bad_eps and not is_epsilon_good(n, eps).good:
        raise ConfigurationError(f"eps={format_rational(eps)} is not good for n={n}")
    res = SweepResult(n, eps, 0, 0, [], [], None)
    for gid, g in graphs:
        rep = lp_decide(g, eps, allow_bad_eps=True, graph_id=str(gid), ps=ps)
        res.graphs += 1
        if not rep.agrees:
            res.mismatches.append(rep.graph_id)
        if not rep.theorem_bounds_ok:
            res.bound_violations.append(rep.graph_id)
        if rep.oracle_hamiltonian:
            res.hamiltonian += 1
            if rep.argmax_class is not PermClass.TOUR:
                res.mismatches.append(rep.graph_id)
            _, mnt = _max_over_classes(g, ps)
            gap = rep.lp_value - mnt
            res.min_gap = gap if res.min_gap is None else min(res.min_gap, gap)
            if gap < eps:
                res.bound_violations.append(rep.graph_id)
    return res


def sweep4(eps) -> SweepResult:
    """All 4096 loopless digraphs on four vertices."""
    return sweep(((mask, g) for mask, g in enumerate(all_digraphs(4))), eps, 4)
