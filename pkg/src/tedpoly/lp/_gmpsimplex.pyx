# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""GMP-backed fraction-free revised simplex.

Same algorithm and pivot choices as ``_pysimplex``; only the integer
arithmetic moves into mpz_t.
"""
from libc.stdlib cimport malloc, free
from libc.limits cimport LONG_MAX

cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct* mpz_ptr
    ctypedef const __mpz_struct* mpz_srcptr
    void mpz_init(mpz_ptr)
    void mpz_clear(mpz_ptr)
    void mpz_set(mpz_ptr, mpz_srcptr)
    void mpz_set_si(mpz_ptr, long)
    int mpz_set_str(mpz_ptr, const char*, int)
    char* mpz_get_str(char*, int, mpz_srcptr)
    size_t mpz_sizeinbase(mpz_srcptr, int)
    void mpz_mul(mpz_ptr, mpz_srcptr, mpz_srcptr)
    void mpz_addmul(mpz_ptr, mpz_srcptr, mpz_srcptr)
    void mpz_submul(mpz_ptr, mpz_srcptr, mpz_srcptr)
    void mpz_divexact(mpz_ptr, mpz_srcptr, mpz_srcptr)
    void mpz_neg(mpz_ptr, mpz_srcptr)
    int mpz_sgn(mpz_srcptr)
    int mpz_cmp(mpz_srcptr, mpz_srcptr)

DEF OPTIMAL = 0
DEF INFEASIBLE = 1
DEF UNBOUNDED = 2


cdef __mpz_struct* zalloc(Py_ssize_t n) except NULL:
    cdef __mpz_struct* p = <__mpz_struct*>malloc((n if n > 0 else 1) * sizeof(__mpz_struct))
    if p == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        mpz_init(&p[i])
    return p


cdef void zfree(__mpz_struct* p, Py_ssize_t n):
    cdef Py_ssize_t i
    if p == NULL:
        return
    for i in range(n):
        mpz_clear(&p[i])
    free(p)


cdef int set_py(mpz_ptr z, object v) except -1:
    if -LONG_MAX <= v <= LONG_MAX:
        mpz_set_si(z, <long>v)
    else:
        s = format(v, "x").encode("ascii")
        if mpz_set_str(z, s, 16) != 0:
            raise ValueError("bad integer")
    return 0


cdef object get_py(mpz_srcptr z):
    cdef size_t n = mpz_sizeinbase(z, 16) + 2
    cdef char* buf = <char*>malloc(n)
    if buf == NULL:
        raise MemoryError()
    try:
        mpz_get_str(buf, 16, z)
        return int((<bytes>buf).decode("ascii"), 16)
    finally:
        free(buf)


cdef class _Work:
    cdef Py_ssize_t m, N
    cdef __mpz_struct* A      # column-major, N * m
    cdef __mpz_struct* c      # N structural costs
    cdef __mpz_struct* M      # m * m, row-major
    cdef __mpz_struct* beta
    cdef __mpz_struct* Y
    cdef __mpz_struct* W
    cdef __mpz_struct* costB
    cdef __mpz_struct* s      # scratch: D, tmp, tmp2, p, minus_one
    cdef int* basis
    cdef char* in_basis
    cdef long iters

    def __cinit__(self, Py_ssize_t m, Py_ssize_t N):
        self.m = m
        self.N = N
        self.A = zalloc(N * m)
        self.c = zalloc(N)
        self.M = zalloc(m * m)
        self.beta = zalloc(m)
        self.Y = zalloc(m)
        self.W = zalloc(m)
        self.costB = zalloc(m)
        self.s = zalloc(5)
        self.basis = <int*>malloc((m if m > 0 else 1) * sizeof(int))
        self.in_basis = <char*>malloc((N if N > 0 else 1) * sizeof(char))
        if self.basis == NULL or self.in_basis == NULL:
            raise MemoryError()
        self.iters = 0

    def __dealloc__(self):
        zfree(self.A, self.N * self.m)
        zfree(self.c, self.N)
        zfree(self.M, self.m * self.m)
        zfree(self.beta, self.m)
        zfree(self.Y, self.m)
        zfree(self.W, self.m)
        zfree(self.costB, self.m)
        zfree(self.s, 5)
        free(self.basis)
        free(self.in_basis)

    cdef void column(self, Py_ssize_t j):
        """W = M A_j."""
        cdef Py_ssize_t k, i, m = self.m
        cdef __mpz_struct* col = &self.A[j * m]
        for k in range(m):
            mpz_set_si(&self.W[k], 0)
            for i in range(m):
                mpz_addmul(&self.W[k], &self.M[k * m + i], &col[i])

    cdef void pivot(self, Py_ssize_t r):
        cdef Py_ssize_t k, i, m = self.m
        cdef mpz_ptr D = &self.s[0]
        cdef mpz_ptr tmp = &self.s[1]
        cdef mpz_ptr p = &self.s[3]
        cdef int same = 0
        mpz_set(p, &self.W[r])
        same = mpz_cmp(p, D) == 0
        for k in range(m):
            if k == r:
                continue
            if mpz_sgn(&self.W[k]) != 0:
                for i in range(m):
                    mpz_mul(tmp, p, &self.M[k * m + i])
                    mpz_submul(tmp, &self.W[k], &self.M[r * m + i])
                    mpz_divexact(&self.M[k * m + i], tmp, D)
                mpz_mul(tmp, p, &self.beta[k])
                mpz_submul(tmp, &self.W[k], &self.beta[r])
                mpz_divexact(&self.beta[k], tmp, D)
            elif not same:
                for i in range(m):
                    mpz_mul(tmp, p, &self.M[k * m + i])
                    mpz_divexact(&self.M[k * m + i], tmp, D)
                mpz_mul(tmp, p, &self.beta[k])
                mpz_divexact(&self.beta[k], tmp, D)
        if mpz_sgn(p) < 0:
            for k in range(m * m):
                mpz_neg(&self.M[k], &self.M[k])
            for k in range(m):
                mpz_neg(&self.beta[k], &self.beta[k])
            mpz_neg(p, p)
        mpz_set(D, p)
        self.iters += 1

    cdef int iterate(self, int phase1):
        cdef Py_ssize_t k, i, j, r, m = self.m, N = self.N
        cdef mpz_ptr D = &self.s[0]
        cdef mpz_ptr tmp = &self.s[1]
        cdef mpz_ptr tmp2 = &self.s[2]
        cdef mpz_ptr p = &self.s[3]
        cdef __mpz_struct* col
        cdef int v, cmp
        cdef Py_ssize_t enter
        while True:
            for k in range(m):
                v = self.basis[k]
                if v >= N:
                    mpz_set_si(&self.costB[k], -1 if phase1 else 0)
                elif phase1:
                    mpz_set_si(&self.costB[k], 0)
                else:
                    mpz_set(&self.costB[k], &self.c[v])
            for i in range(m):
                mpz_set_si(&self.Y[i], 0)
            for k in range(m):
                if mpz_sgn(&self.costB[k]) != 0:
                    for i in range(m):
                        mpz_addmul(&self.Y[i], &self.costB[k], &self.M[k * m + i])
            enter = -1
            for j in range(N):
                if self.in_basis[j]:
                    continue
                col = &self.A[j * m]
                mpz_set_si(tmp, 0)
                for i in range(m):
                    mpz_addmul(tmp, &self.Y[i], &col[i])
                if phase1:
                    cmp = -mpz_sgn(tmp)
                else:
                    mpz_mul(tmp2, &self.c[j], D)
                    cmp = mpz_cmp(tmp2, tmp)
                if cmp > 0:
                    enter = j
                    break
            if enter < 0:
                return OPTIMAL
            self.column(enter)
            r = -1
            for k in range(m):
                if mpz_sgn(&self.W[k]) <= 0:
                    continue
                if r < 0:
                    r = k
                    continue
                mpz_mul(tmp, &self.beta[k], &self.W[r])
                mpz_mul(tmp2, &self.beta[r], &self.W[k])
                cmp = mpz_cmp(tmp, tmp2)
                if cmp < 0 or (cmp == 0 and self.basis[k] < self.basis[r]):
                    r = k
            if r < 0:
                return UNBOUNDED
            self.pivot(r)
            v = self.basis[r]
            if v < N:
                self.in_basis[v] = 0
            self.basis[r] = <int>enter
            self.in_basis[enter] = 1

    cdef void drive_out(self):
        cdef Py_ssize_t k, i, j, m = self.m, N = self.N
        cdef mpz_ptr tmp = &self.s[1]
        cdef __mpz_struct* col
        for k in range(m):
            if self.basis[k] < N:
                continue
            for j in range(N):
                if self.in_basis[j]:
                    continue
                col = &self.A[j * m]
                mpz_set_si(tmp, 0)
                for i in range(m):
                    mpz_addmul(tmp, &self.M[k * m + i], &col[i])
                if mpz_sgn(tmp) != 0:
                    self.column(j)
                    self.pivot(k)
                    self.basis[k] = <int>j
                    self.in_basis[j] = 1
                    break


def simplex(columns, rhs, objective=None):
    """Two-phase Bland-rule simplex; see ``_pysimplex.simplex`` for the contract."""
    cdef Py_ssize_t N = len(columns), m = len(rhs), i, j, k
    cdef _Work w
    if any(v < 0 for v in rhs):
        raise ValueError("rhs must be nonnegative")
    w = _Work(m, N)
    for j in range(N):
        col = columns[j]
        if len(col) != m:
            raise ValueError("column length mismatch")
        for i in range(m):
            set_py(&w.A[j * m + i], col[i])
        w.in_basis[j] = 0
    for k in range(m):
        set_py(&w.beta[k], rhs[k])
        mpz_set_si(&w.M[k * m + k], 1)
        w.basis[k] = <int>(N + k)
    mpz_set_si(&w.s[0], 1)

    status = w.iterate(1)
    infeasible = False
    for k in range(m):
        if w.basis[k] >= N and mpz_sgn(&w.beta[k]) != 0:
            infeasible = True
    if infeasible:
        status = INFEASIBLE
    else:
        w.drive_out()
        if objective is not None:
            if len(objective) != N:
                raise ValueError("objective length mismatch")
            for j in range(N):
                set_py(&w.c[j], objective[j])
            status = w.iterate(0)
    basis = [w.basis[k] for k in range(m)]
    beta = [get_py(&w.beta[k]) for k in range(m)]
    return status, basis, beta, get_py(&w.s[0]), w.iters
