# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the kernels in ``_pykernels``.

Entries are int64.  Every stored entry is kept below ``2**31`` in absolute
value so that each product or two-term combination fits in 63 bits; when
a result would leave that range ``OverflowError`` is raised and the caller
falls back to the arbitrary-precision path.
"""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

cdef enum:
    MAXC = 16

cdef int64_t LIMIT = 2147483647
cdef int64_t MU_LIMIT = 4611686018427387903


cdef inline int64_t floordiv(int64_t a, int64_t b) nogil:
    cdef int64_t q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline int64_t iabs(int64_t a) nogil:
    return -a if a < 0 else a


cdef int xgcd(int64_t a, int64_t b, int64_t *x, int64_t *y) nogil:
    cdef int64_t x0 = 1, x1 = 0, y0 = 0, y1 = 1, g0 = a, g1 = b, q, t
    while g1 != 0:
        q = g0 / g1
        t = x0 - q * x1
        x0 = x1
        x1 = t
        t = y0 - q * y1
        y0 = y1
        y1 = t
        t = g0 - q * g1
        g0 = g1
        g1 = t
    if g0 < 0:
        x0 = -x0
        y0 = -y0
        g0 = -g0
    x[0] = x0
    y[0] = y0
    return <int>g0


cdef int _load_rows(rows, int ncols, int64_t **out, int *nout) except -1:
    cdef Py_ssize_t nr = len(rows)
    cdef int64_t *buf = <int64_t *>malloc((nr if nr > 0 else 1) * MAXC * sizeof(int64_t))
    cdef int i, j, k = 0
    cdef int64_t v
    cdef bint nonzero
    if buf == NULL:
        raise MemoryError()
    try:
        for row in rows:
            if len(row) != ncols:
                raise ValueError("row length %d != %d" % (len(row), ncols))
            nonzero = False
            for j in range(ncols):
                v = row[j]
                if v > LIMIT or v < -LIMIT:
                    raise OverflowError("entry exceeds kernel range")
                buf[k * MAXC + j] = v
                if v != 0:
                    nonzero = True
            if nonzero:
                k += 1
    except BaseException:
        free(buf)
        raise
    out[0] = buf
    nout[0] = k
    return 0


cdef int _hnf_inplace(int64_t *rows, int nrows, int ncols, int *rank) nogil:
    """Hermite form of the first ``nrows`` rows; returns -1 on overflow."""
    cdef int r = 0, i, j, k, p
    cdef int64_t a, b, q, x, y, g, ag, bg, pv, rv, nv
    cdef int64_t *pr
    cdef int64_t *rr
    cdef int64_t tmp[MAXC]
    for j in range(ncols):
        if r >= nrows:
            break
        p = -1
        for i in range(r, nrows):
            if rows[i * MAXC + j] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            memcpy(tmp, &rows[p * MAXC], MAXC * sizeof(int64_t))
            memcpy(&rows[p * MAXC], &rows[r * MAXC], MAXC * sizeof(int64_t))
            memcpy(&rows[r * MAXC], tmp, MAXC * sizeof(int64_t))
        pr = &rows[r * MAXC]
        for i in range(r + 1, nrows):
            rr = &rows[i * MAXC]
            b = rr[j]
            if b == 0:
                continue
            a = pr[j]
            if b % a == 0:
                q = b / a
                for k in range(j, ncols):
                    nv = rr[k] - q * pr[k]
                    if nv > LIMIT or nv < -LIMIT:
                        return -1
                    rr[k] = nv
            elif a % b == 0:
                q = a / b
                for k in range(j, ncols):
                    pv = pr[k]
                    rv = rr[k]
                    nv = pv - q * rv
                    if nv > LIMIT or nv < -LIMIT:
                        return -1
                    pr[k] = rv
                    rr[k] = nv
            else:
                g = xgcd(a, b, &x, &y)
                ag = a / g
                bg = b / g
                if iabs(x) > LIMIT or iabs(y) > LIMIT:
                    return -1
                for k in range(j, ncols):
                    pv = pr[k]
                    rv = rr[k]
                    nv = x * pv + y * rv
                    if nv > LIMIT or nv < -LIMIT:
                        return -1
                    pr[k] = nv
                    nv = ag * rv - bg * pv
                    if nv > LIMIT or nv < -LIMIT:
                        return -1
                    rr[k] = nv
        if pr[j] < 0:
            for k in range(j, ncols):
                pr[k] = -pr[k]
        a = pr[j]
        for i in range(r):
            rr = &rows[i * MAXC]
            q = floordiv(rr[j], a)
            if q != 0:
                for k in range(j, ncols):
                    nv = rr[k] - q * pr[k]
                    if nv > LIMIT or nv < -LIMIT:
                        return -1
                    rr[k] = nv
        r += 1
    rank[0] = r
    return 0


def hnf(rows, int ncols):
    if ncols > MAXC:
        raise OverflowError("kernel supports at most %d columns" % MAXC)
    cdef int64_t *buf
    cdef int n, rank = 0, i, j, status
    _load_rows(rows, ncols, &buf, &n)
    try:
        with nogil:
            status = _hnf_inplace(buf, n, ncols, &rank)
        if status < 0:
            raise OverflowError("intermediate entry exceeds kernel range")
        return tuple(tuple(buf[i * MAXC + j] for j in range(ncols)) for i in range(rank))
    finally:
        free(buf)


cdef int _contains(const int64_t *basis, const int *piv, int rank, int ncols,
                   const int64_t *vec, int64_t *work) nogil:
    """1 if vec is in the span, 0 if not, -1 on overflow."""
    cdef int i, k, j
    cdef int64_t b, p, q, nv
    for k in range(ncols):
        work[k] = vec[k]
    for i in range(rank):
        j = piv[i]
        for k in range(j):
            if work[k] != 0:
                return 0
        b = work[j]
        if b != 0:
            p = basis[i * MAXC + j]
            if b % p != 0:
                return 0
            q = b / p
            for k in range(j, ncols):
                nv = work[k] - q * basis[i * MAXC + k]
                if nv > LIMIT or nv < -LIMIT:
                    return -1
                work[k] = nv
    for k in range(ncols):
        if work[k] != 0:
            return 0
    return 1


cdef int _pivots(const int64_t *basis, int rank, int ncols, int *piv) nogil:
    cdef int i, j
    for i in range(rank):
        j = 0
        while basis[i * MAXC + j] == 0:
            j += 1
        piv[i] = j
    return 0


def contains(basis, vec):
    cdef int ncols = len(vec)
    if ncols > MAXC:
        raise OverflowError("kernel supports at most %d columns" % MAXC)
    cdef int64_t *b
    cdef int rank
    cdef int piv[MAXC]
    cdef int64_t v[MAXC]
    cdef int64_t work[MAXC]
    cdef int j
    cdef int res
    for j in range(ncols):
        v[j] = vec[j]
        if v[j] > LIMIT or v[j] < -LIMIT:
            raise OverflowError("entry exceeds kernel range")
    _load_rows(basis, ncols, &b, &rank)
    try:
        _pivots(b, rank, ncols, piv)
        res = _contains(b, piv, rank, ncols, v, work)
    finally:
        free(b)
    if res < 0:
        raise OverflowError("intermediate entry exceeds kernel range")
    return res == 1


cdef class RepTable:
    """Orbit representatives packed for repeated membership tests."""
    cdef int64_t *data
    cdef readonly int count
    cdef readonly int ncols

    def __cinit__(self, reps, int ncols):
        if ncols > MAXC:
            raise OverflowError("kernel supports at most %d columns" % MAXC)
        self.ncols = ncols
        self.count = len(reps)
        self.data = <int64_t *>malloc((self.count if self.count else 1) * MAXC * sizeof(int64_t))
        if self.data == NULL:
            raise MemoryError()
        cdef int i, j
        cdef int64_t x
        for i in range(self.count):
            r = reps[i]
            for j in range(ncols):
                x = r[j]
                if x > LIMIT or x < -LIMIT:
                    raise OverflowError("entry exceeds kernel range")
                self.data[i * MAXC + j] = x

    def __dealloc__(self):
        free(self.data)

    def __len__(self):
        return self.count


def prepare_reps(reps, int ncols):
    return RepTable(reps, ncols)


def orbit_mask(basis, reps):
    cdef RepTable table
    if isinstance(reps, RepTable):
        table = <RepTable>reps
    else:
        reps = list(reps)
        table = RepTable(reps, len(reps[0]) if reps else 0)
    cdef int ncols = table.ncols
    cdef int64_t *b
    cdef int rank, i, w, res, status = 0
    cdef int piv[MAXC]
    cdef int64_t work[MAXC]
    cdef int nwords = (table.count + 63) // 64
    cdef uint64_t *bits = <uint64_t *>malloc((nwords if nwords else 1) * sizeof(uint64_t))
    if bits == NULL:
        raise MemoryError()
    try:
        _load_rows(basis, ncols, &b, &rank)
        try:
            with nogil:
                for w in range(nwords):
                    bits[w] = 0
                _pivots(b, rank, ncols, piv)
                for i in range(table.count):
                    res = _contains(b, piv, rank, ncols, &table.data[i * MAXC], work)
                    if res < 0:
                        status = -1
                        break
                    if res:
                        bits[i >> 6] |= (<uint64_t>1) << (i & 63)
        finally:
            free(b)
        if status < 0:
            raise OverflowError("intermediate entry exceeds kernel range")
        mask = 0
        for w in range(nwords - 1, -1, -1):
            mask = (mask << 64) | bits[w]
        return mask
    finally:
        free(bits)


def mobius_from_masks(masks):
    """Möbius values mu(0, x); see ``_pykernels.mobius_from_masks``."""
    cdef Py_ssize_t n = len(masks)
    if n == 0:
        return []
    cdef int maxbits = max(m.bit_length() for m in masks)
    cdef int nw = (maxbits + 63) // 64
    if nw == 0:
        nw = 1
    cdef uint64_t *mw = <uint64_t *>malloc(n * nw * sizeof(uint64_t))
    cdef int64_t *mu = <int64_t *>malloc(n * sizeof(int64_t))
    cdef Py_ssize_t i, j
    cdef int w
    cdef int64_t s
    cdef bint sub
    cdef uint64_t full = 0xFFFFFFFFFFFFFFFF
    cdef int status = 0
    if mw == NULL or mu == NULL:
        free(mw)
        free(mu)
        raise MemoryError()
    try:
        for i in range(n):
            m = masks[i]
            for w in range(nw):
                mw[i * nw + w] = <uint64_t>(m & full)
                m >>= 64
        with nogil:
            mu[0] = 1
            for i in range(1, n):
                s = 0
                for j in range(i):
                    sub = True
                    for w in range(nw):
                        if mw[j * nw + w] & ~mw[i * nw + w]:
                            sub = False
                            break
                    if sub:
                        s += mu[j]
                if s > MU_LIMIT or s < -MU_LIMIT:
                    status = -1
                    break
                mu[i] = -s
        if status < 0:
            raise OverflowError("Möbius value exceeds kernel range")
        return [mu[i] for i in range(n)]
    finally:
        free(mw)
        free(mu)
