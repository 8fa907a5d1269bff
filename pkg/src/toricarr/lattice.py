"""Exact integer linear algebra on sublattices of Z^n.

Vectors are row tuples of Python ints; a matrix is a tuple of row tuples.
A Weyl element ``g`` is an n x n matrix acting on column vectors, so a row
vector ``x`` is sent to ``x @ g.T``.
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import comb, prod
from array import array

from . import kernels


class LatticeError(ArithmeticError):
    pass


class NotStable(LatticeError):
    """The group element does not map the module into itself."""


class NoIntegerSolution(LatticeError):
    pass


class NonIntegralResult(LatticeError):
    pass


TORSION_ENUMERATION_LIMIT = 10 ** 6


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a, b):
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matpow(a, k):
    n = len(a)
    result = identity(n)
    base = a
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def trace(a):
    return sum(a[i][i] for i in range(len(a)))


def act(g, vec):
    """Image of the coefficient vector ``vec`` under the matrix ``g``."""
    return tuple(sum(gi[j] * vec[j] for j in range(len(vec))) for gi in g)


def determinant(a):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class LatticeModule:
    """A sublattice of Z^n stored by its canonical Hermite basis."""

    ambient_rank: int
    basis: tuple

    @property
    def rank(self):
        return len(self.basis)

    @cached_property
    def key(self):
        # byte serialization of the canonical matrix; unique per module
        head = array("q", [self.ambient_rank, self.rank])
        body = array("q", [v for row in self.basis for v in row])
        return head.tobytes() + body.tobytes()

    def __contains__(self, vec):
        return kernels.contains(self.basis, tuple(vec))

    @property
    def pivots(self):
        out = []
        for row in self.basis:
            j = 0
            while row[j] == 0:
                j += 1
            out.append(j)
        return out

    def is_saturated(self):
        return saturate(self) == self

    def __str__(self):
        return "<%s>" % ", ".join(str(list(r)) for r in self.basis)


def canonicalize(rows, ambient_rank):
    rows = [tuple(int(v) for v in r) for r in rows]
    for r in rows:
        if len(r) != ambient_rank:
            raise ValueError("row %r does not have length %d" % (r, ambient_rank))
    return LatticeModule(ambient_rank, kernels.hnf(rows, ambient_rank))


def span_with(module, rows):
    """Canonical module spanned by ``module`` and the extra ``rows``."""
    return LatticeModule(module.ambient_rank,
                         kernels.hnf(list(module.basis) + list(rows), module.ambient_rank))


def smith_form(a, ncols):
    """Smith normal form of the full-row-rank matrix ``a``.

    Returns ``(diag, v, vinv)`` with ``u @ a @ v`` diagonal for some
    unimodular ``u``, ``diag`` the positive diagonal in divisibility order
    and ``vinv`` the inverse of ``v``.
    """
    s = [list(r) for r in a]
    r = len(s)
    n = ncols
    v = [[int(i == j) for j in range(n)] for i in range(n)]
    vinv = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_addmul(dst, src, q):
        # column dst += q * column src
        for row in s:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]
        rs, rd = vinv[src], vinv[dst]
        for k in range(n):
            rs[k] -= q * rd[k]

    def col_swap(a_, b_):
        for row in s:
            row[a_], row[b_] = row[b_], row[a_]
        for row in v:
            row[a_], row[b_] = row[b_], row[a_]
        vinv[a_], vinv[b_] = vinv[b_], vinv[a_]

    def col_negate(c):
        for row in s:
            row[c] = -row[c]
        for row in v:
            row[c] = -row[c]
        vinv[c] = [-x for x in vinv[c]]

    for t in range(r):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, n):
                    x = s[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                raise ValueError("matrix is not of full row rank")
            _, i, j = best
            s[t], s[i] = s[i], s[t]
            if j != t:
                col_swap(t, j)
            p = s[t][t]
            dirty = False
            for i in range(t + 1, r):
                q = s[i][t] // p
                if q:
                    s[i] = [x - q * y for x, y in zip(s[i], s[t])]
                if s[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = s[t][j] // p
                if q:
                    col_addmul(j, t, -q)
                if s[t][j]:
                    dirty = True
            if dirty:
                continue
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, n):
                    if s[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            s[t] = [x + y for x, y in zip(s[t], s[bad])]
        if s[t][t] < 0:
            col_negate(t)
    diag = [s[i][i] for i in range(r)]
    return diag, tuple(map(tuple, v)), tuple(map(tuple, vinv))


@dataclass(frozen=True)
class QuotientStructure:
    """M/N split as torsion (+) free part.

    Coordinates of ``x`` in M are ``x @ v``.  The first ``len(diag)`` of
    them are taken modulo the diagonal entries; entries equal to 1 are
    dropped, those >= 2 are the torsion coordinates.  The remaining
    ``free_rank`` coordinates are free.
    """

    ambient_rank: int
    diag: tuple
    v: tuple = field(repr=False)
    vinv: tuple = field(repr=False)

    @property
    def torsion_indices(self):
        return tuple(i for i, d in enumerate(self.diag) if d > 1)

    @property
    def invariant_factors(self):
        return tuple(d for d in self.diag if d > 1)

    @property
    def torsion_order(self):
        return prod(self.invariant_factors)

    @property
    def free_rank(self):
        return self.ambient_rank - len(self.diag)

    @property
    def free_indices(self):
        return tuple(range(len(self.diag), self.ambient_rank))

    @property
    def lift_basis(self):
        """Lifts in M of the torsion generators followed by the free generators."""
        return tuple(self.vinv[i] for i in self.torsion_indices + self.free_indices)

    def coordinates(self, x):
        n = self.ambient_rank
        return tuple(sum(x[k] * self.v[k][j] for k in range(n)) for j in range(n))

    def project(self, x):
        y = self.coordinates(x)
        tors = tuple(y[i] % self.diag[i] for i in self.torsion_indices)
        free = tuple(y[i] for i in self.free_indices)
        return tors, free

    def lift(self, torsion, free=None):
        n = self.ambient_rank
        coeffs = [0] * n
        for i, c in zip(self.torsion_indices, torsion):
            coeffs[i] = c
        if free is not None:
            for i, c in zip(self.free_indices, free):
                coeffs[i] = c
        return tuple(sum(coeffs[k] * self.vinv[k][j] for k in range(n)) for j in range(n))

    def saturation_basis(self):
        return self.vinv[:len(self.diag)]

    def torsion_action(self, g):
        """Matrix of ``g`` on torsion coordinates (column j = image of generator j)."""
        tidx = self.torsion_indices
        cols = []
        for i in tidx:
            image = act(g, self.vinv[i])
            y = self.coordinates(image)
            cols.append([y[k] % self.diag[k] for k in tidx])
        return tuple(tuple(cols[j][i] for j in range(len(tidx))) for i in range(len(tidx)))

    def free_action(self, g):
        """Matrix of ``g`` on the free quotient M/sat(N) in the free coordinates."""
        fidx = self.free_indices
        cols = []
        for i in fidx:
            y = self.coordinates(act(g, self.vinv[i]))
            cols.append([y[k] for k in fidx])
        return tuple(tuple(cols[j][i] for j in range(len(fidx))) for i in range(len(fidx)))


def smith_quotient(module):
    if module.rank == 0:
        ident = identity(module.ambient_rank)
        return QuotientStructure(module.ambient_rank, (), ident, ident)
    diag, v, vinv = smith_form(module.basis, module.ambient_rank)
    return QuotientStructure(module.ambient_rank, tuple(diag), v, vinv)


def saturate(module):
    if module.rank == 0:
        return module
    # rows of a module whose row gcds are all 1 may still be unsaturated,
    # so the Smith transform is used rather than row-wise gcd division
    q = smith_quotient(module)
    if q.torsion_order == 1:
        return module
    return canonicalize(q.saturation_basis(), module.ambient_rank)


def solve_in_basis(module, vec):
    """Integer coefficients of ``vec`` with respect to the canonical basis."""
    v = list(vec)
    coeffs = []
    for row, j in zip(module.basis, module.pivots):
        if any(v[:j]):
            raise NoIntegerSolution(vec)
        b = v[j]
        p = row[j]
        if b % p:
            raise NoIntegerSolution(vec)
        q = b // p
        coeffs.append(q)
        if q:
            for k in range(j, len(v)):
                v[k] -= q * row[k]
    if any(v):
        raise NoIntegerSolution(vec)
    return coeffs


def restrict_matrix(g, module):
    """Matrix X with g(b_i) = sum_j X[i][j] b_j for the canonical basis b."""
    rows = []
    for b in module.basis:
        try:
            rows.append(tuple(solve_in_basis(module, act(g, b))))
        except NoIntegerSolution:
            raise NotStable("element does not stabilize %s" % module) from None
    return tuple(rows)


def restrict_trace(g, module):
    return trace(restrict_matrix(g, module))


def is_stable(g, module):
    return all(act(g, b) in module for b in module.basis)


def exterior_traces(p, n):
    """Traces on exterior powers from power-sum traces (Newton-Girard)."""
    if len(p) < n:
        raise ValueError("need %d power sums, got %d" % (n, len(p)))
    e = [1]
    for k in range(1, n + 1):
        s = 0
        for i in range(1, k + 1):
            term = e[k - i] * p[i - 1]
            s += term if i % 2 else -term
        if s % k:
            raise NonIntegralResult("power sums %r are not traces of an integer matrix" % (p,))
        e.append(s // k)
    return e


def symmetric_traces(p, n):
    """Traces on symmetric powers Sym^0..Sym^n from power-sum traces."""
    h = [1]
    for k in range(1, n + 1):
        s = sum(p[i - 1] * h[k - i] for i in range(1, k + 1))
        if s % k:
            raise NonIntegralResult(p)
        h.append(s // k)
    return h


def power_traces(g, count):
    out = []
    m = g
    for _ in range(count):
        out.append(trace(m))
        m = matmul(m, g)
    return out


def _check_stable(g, module):
    if not is_stable(g, module):
        raise NotStable("element does not stabilize %s" % module)


def torsion_fixed_count_enumerate(g, quotient, module=None):
    """Count g-fixed torsion classes by lifting, acting and projecting each one."""
    if module is not None:
        _check_stable(g, module)
    factors = quotient.invariant_factors
    count = 0
    for t in product(*(range(d) for d in factors)):
        image, _ = quotient.project(act(g, quotient.lift(t)))
        if image == t:
            count += 1
    return count


def torsion_fixed_count_smith(g, quotient, module=None):
    """Size of ker(g - 1) on the torsion part, as a lattice index."""
    if module is not None:
        _check_stable(g, module)
    factors = quotient.invariant_factors
    k = len(factors)
    if k == 0:
        return 1
    a = quotient.torsion_action(g)
    # |ker| = |Q^T| / |im(g - 1)| = index of span(cols(g - 1), d_i e_i) in Z^k
    gens = [tuple(a[i][j] - int(i == j) for i in range(k)) for j in range(k)]
    gens += [tuple(d if i == j else 0 for i in range(k)) for j, d in enumerate(factors)]
    h = kernels.hnf(gens, k)
    return prod(h[i][i] for i in range(k))


def torsion_fixed_count(g, quotient, module=None, limit=None):
    if limit is None:
        limit = TORSION_ENUMERATION_LIMIT
    if quotient.torsion_order <= limit:
        return torsion_fixed_count_enumerate(g, quotient, module)
    return torsion_fixed_count_smith(g, quotient, module)


def free_trace(g, module, quotient=None):
    """Trace of g on M/sat(N), via the trace on sat(N)."""
    sat = saturate(module)
    return trace(g) - restrict_trace(g, sat)


def lattice_index(module):
    """Index of a full-rank module in Z^n (product of Hermite pivots)."""
    if module.rank != module.ambient_rank:
        raise ValueError("module is not of full rank")
    return prod(module.basis[i][i] for i in range(module.rank))


def binomials(n):
    return [comb(n, k) for k in range(n + 1)]
