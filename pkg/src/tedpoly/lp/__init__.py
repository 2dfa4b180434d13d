"""Exact rational linear programming over  A x = b, x >= 0.

The pivoting kernel is a compiled GMP extension when it was built, else the
pure-Python implementation. Set ``TEDPOLY_PURE_PYTHON=1`` to force the
fallback. Both kernels follow the same deterministic Bland-rule path.
"""
from __future__ import annotations

import enum
import logging
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..rational import DimensionError, ExactMatrix, format_rational, integer_row
from . import _pysimplex

log = logging.getLogger(__name__)

if os.environ.get("TEDPOLY_PURE_PYTHON"):
    _kernel = _pysimplex
    BACKEND = "python"
else:
    try:
        from . import _gmpsimplex as _kernel
        BACKEND = "gmp"
    except ImportError:  # extension not built
        _kernel = _pysimplex
        BACKEND = "python"

KERNELS = {"python": _pysimplex}
if BACKEND == "gmp":
    KERNELS["gmp"] = _kernel


class LpStatus(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


_STATUS = {0: LpStatus.OPTIMAL, 1: LpStatus.INFEASIBLE, 2: LpStatus.UNBOUNDED}


class LpError(ArithmeticError):
    """A returned basis failed exact re-substitution."""


@dataclass(frozen=True)
class LpProblem:
    """maximize objective . x  subject to  eq_matrix x = eq_rhs,  x >= 0."""

    objective: tuple
    eq_matrix: ExactMatrix
    eq_rhs: tuple

    def __post_init__(self):
        if self.eq_matrix.cols != len(self.objective):
            raise DimensionError(
                f"objective has {len(self.objective)} entries, matrix has {self.eq_matrix.cols} columns")
        if self.eq_matrix.rows != len(self.eq_rhs):
            raise DimensionError(
                f"rhs has {len(self.eq_rhs)} entries, matrix has {self.eq_matrix.rows} rows")

    @property
    def var_count(self) -> int:
        return self.eq_matrix.cols


@dataclass(frozen=True)
class LpResult:
    status: LpStatus
    value: Fraction | None = None
    solution: tuple | None = None
    basis: tuple | None = None
    iterations: int = 0


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    point: tuple | None = None

    def __bool__(self):
        return self.feasible


def dump_problem(problem: LpProblem) -> str:
    """Plain-text listing of the system, one equality per line."""
    lines = ["max " + _linear(problem.objective)]
    m = problem.eq_matrix
    for i in range(m.rows):
        lines.append(f"  {_linear(m.row(i))} = {format_rational(problem.eq_rhs[i])}")
    lines.append(f"  x0..x{m.cols - 1} >= 0")
    return "\n".join(lines)


def _linear(coeffs: Sequence) -> str:
    terms = [f"{format_rational(c)}*x{j}" for j, c in enumerate(coeffs) if c]
    return " + ".join(terms) if terms else "0"


def _integer_system(rows, rhs):
    """Scale each equality to integers and flip it so its rhs is nonnegative."""
    int_rows, int_rhs = [], []
    for row, b in zip(rows, rhs):
        scaled = integer_row(list(row) + [b])
        if scaled[-1] < 0:
            scaled = [-v for v in scaled]
        int_rows.append(scaled[:-1])
        int_rhs.append(scaled[-1])
    return int_rows, int_rhs


def run_kernel(columns, rhs, objective=None, kernel=None):
    """Call a pivoting kernel on integer column data and verify its basis exactly.

    Returns ``(status, x, basis, iterations)`` with ``x`` a tuple of Fractions
    (``None`` unless optimal).
    """
    k = kernel or _kernel
    status, basis, beta, D, iters = k.simplex(columns, rhs, objective)
    status = _STATUS[status]
    if status is not LpStatus.OPTIMAL:
        return status, None, tuple(basis), iters
    N = len(columns)
    m = len(rhs)
    # re-substitution in integer form: sum_k A[i, basis_k] * beta_k == b_i * D
    for i in range(m):
        acc = 0
        for k in range(m):
            v = basis[k]
            if v < N:
                acc += columns[v][i] * beta[k]
            elif v - N == i:
                acc += beta[k]
        if acc != rhs[i] * D:
            raise LpError(f"row {i} violated by returned basis")
    x = [Fraction(0)] * N
    for k in range(m):
        v = basis[k]
        if beta[k] * D < 0:
            raise LpError("negative basic variable")
        if v < N:
            x[v] = Fraction(beta[k], D)
        elif beta[k] != 0:
            raise LpError("artificial variable left at nonzero level")
    return status, tuple(x), tuple(basis), iters


def solve(problem: LpProblem, debug: bool = False) -> LpResult:
    if debug:
        log.debug("LP system:\n%s", dump_problem(problem))
    A = problem.eq_matrix
    rows, rhs = _integer_system(A.to_rows(), problem.eq_rhs)
    columns = [tuple(r[j] for r in rows) for j in range(A.cols)]
    obj = integer_row(problem.objective) if A.cols else []
    # integer_row rescales by a positive factor, so the argmax is unchanged
    status, x, basis, iters = run_kernel(columns, rhs, obj)
    if status is not LpStatus.OPTIMAL:
        return LpResult(status, basis=basis, iterations=iters)
    value = sum((c * v for c, v in zip(problem.objective, x)), Fraction(0))
    return LpResult(status, value, x, basis, iters)


def feasible(A: ExactMatrix, b: Sequence) -> Feasibility:
    if A.rows != len(b):
        raise DimensionError(f"rhs has {len(b)} entries, matrix has {A.rows} rows")
    rows, rhs = _integer_system(A.to_rows(), b)
    columns = [tuple(r[j] for r in rows) for j in range(A.cols)]
    status, x, _, _ = run_kernel(columns, rhs)
    if status is LpStatus.OPTIMAL:
        return Feasibility(True, x)
    return Feasibility(False)
