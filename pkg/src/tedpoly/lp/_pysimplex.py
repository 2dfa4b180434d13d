"""Pure-Python fraction-free revised simplex (fallback kernel).

Solves  max c.x  s.t.  A x = b, x >= 0  for integer data with b >= 0.
The basis inverse is kept as an integer matrix ``M`` over a common
denominator ``D`` (so B^-1 = M / D); every update is an exact integer
division. Variables 0..N-1 are structural, N..N+m-1 are the Phase I
artificials. Entering and leaving choices follow Bland's rule.
"""

OPTIMAL = 0
INFEASIBLE = 1
UNBOUNDED = 2


def _pivot(M, beta, D, r, W):
    p = W[r]
    Mr = M[r]
    br = beta[r]
    for k in range(len(M)):
        if k == r:
            continue
        wk = W[k]
        if wk:
            M[k] = [(p * a - wk * b) // D for a, b in zip(M[k], Mr)]
            beta[k] = (p * beta[k] - wk * br) // D
        elif p != D:
            M[k] = [(p * a) // D for a in M[k]]
            beta[k] = (p * beta[k]) // D
    if p < 0:
        for k in range(len(M)):
            M[k] = [-a for a in M[k]]
            beta[k] = -beta[k]
        p = -p
    return p


def _column(M, col):
    return [sum(a * b for a, b in zip(row, col)) for row in M]


def _price_vector(M, basis, cost):
    m = len(M)
    Y = [0] * m
    for k in range(m):
        ck = cost(basis[k])
        if ck:
            Mk = M[k]
            for i in range(m):
                Y[i] += ck * Mk[i]
    return Y


def _iterate(columns, M, beta, D, basis, in_basis, cost_struct, cost, iters):
    """Run Bland-rule pivots to optimality. Returns (status, D, iters)."""
    N = len(columns)
    m = len(M)
    while True:
        Y = _price_vector(M, basis, cost)
        enter = -1
        for j in range(N):
            if in_basis[j]:
                continue
            col = columns[j]
            rc = cost_struct[j] * D - sum(a * b for a, b in zip(Y, col))
            if rc > 0:
                enter = j
                break
        if enter < 0:
            return OPTIMAL, D, iters
        W = _column(M, columns[enter])
        r = -1
        for k in range(m):
            wk = W[k]
            if wk <= 0:
                continue
            if r < 0:
                r = k
                continue
            lhs = beta[k] * W[r]
            rhs = beta[r] * wk
            if lhs < rhs or (lhs == rhs and basis[k] < basis[r]):
                r = k
        if r < 0:
            return UNBOUNDED, D, iters
        D = _pivot(M, beta, D, r, W)
        leaving = basis[r]
        if leaving < N:
            in_basis[leaving] = False
        basis[r] = enter
        in_basis[enter] = True
        iters += 1


def simplex(columns, rhs, objective=None):
    """Two-phase simplex on integer data.

    ``columns`` is the constraint matrix by columns, ``rhs`` must be
    nonnegative. With ``objective=None`` only Phase I runs. Returns
    ``(status, basis, beta, D, iterations)``; the value of basic variable
    ``basis[k]`` is ``beta[k] / D`` and artificials have index >= N.
    """
    N = len(columns)
    m = len(rhs)
    if any(v < 0 for v in rhs):
        raise ValueError("rhs must be nonnegative")
    M = [[1 if i == k else 0 for i in range(m)] for k in range(m)]
    beta = list(rhs)
    D = 1
    basis = [N + k for k in range(m)]
    in_basis = [False] * N

    zeros = [0] * N
    status, D, iters = _iterate(columns, M, beta, D, basis, in_basis, zeros,
                                lambda v: -1 if v >= N else 0, 0)
    if any(basis[k] >= N and beta[k] != 0 for k in range(m)):
        return INFEASIBLE, basis, beta, D, iters

    # drive zero-level artificials out; rows where that is impossible are redundant
    for k in range(m):
        if basis[k] < N:
            continue
        Mk = M[k]
        for j in range(N):
            if in_basis[j]:
                continue
            if sum(a * b for a, b in zip(Mk, columns[j])) != 0:
                W = _column(M, columns[j])
                D = _pivot(M, beta, D, k, W)
                basis[k] = j
                in_basis[j] = True
                iters += 1
                break

    if objective is None:
        return OPTIMAL, basis, beta, D, iters

    obj = list(objective)
    status, D, iters = _iterate(columns, M, beta, D, basis, in_basis, obj,
                                lambda v: obj[v] if v < N else 0, iters)
    return status, basis, beta, D, iters
