"""Pure-Python versions of the hot kernels.

These are the reference implementations; ``_ckernels`` mirrors every
function here with fixed-width arithmetic.  Matrices are tuples of row
tuples, bitsets are Python ints.
"""


def xgcd(a, b):
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def hnf(rows, ncols):
    """Row-style Hermite normal form of the row span of ``rows``.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)`` and
    zero rows are dropped.
    """
    work = [list(r) for r in rows if any(r)]
    for r in work:
        if len(r) != ncols:
            raise ValueError("row length %d != %d" % (len(r), ncols))
    basis = []
    for j in range(ncols):
        if not work:
            break
        piv = None
        rest = []
        for r in work:
            b = r[j]
            if b == 0:
                rest.append(r)
                continue
            if piv is None:
                piv = r
                continue
            a = piv[j]
            if b % a == 0:
                q = b // a
                r = [rv - q * pv for rv, pv in zip(r, piv)]
            elif a % b == 0:
                q = a // b
                piv, r = r, [pv - q * rv for rv, pv in zip(r, piv)]
            else:
                x, y, g = xgcd(a, b)
                ag, bg = a // g, b // g
                piv, r = ([x * pv + y * rv for pv, rv in zip(piv, r)],
                          [ag * rv - bg * pv for pv, rv in zip(piv, r)])
            if any(r):
                rest.append(r)
        work = rest
        if piv is None:
            continue
        if piv[j] < 0:
            piv = [-v for v in piv]
        p = piv[j]
        for prev in basis:
            q = prev[j] // p
            if q:
                for k in range(j, ncols):
                    prev[k] -= q * piv[k]
        basis.append(piv)
    return tuple(tuple(r) for r in basis)


def contains(basis, vec):
    """True iff ``vec`` lies in the row span of the echelon matrix ``basis``."""
    v = list(vec)
    for row in basis:
        j = 0
        while row[j] == 0:
            j += 1
        for k in range(j):
            if v[k]:
                return False
        b = v[j]
        if b:
            p = row[j]
            if b % p:
                return False
            q = b // p
            for k in range(j, len(v)):
                v[k] -= q * row[k]
    return not any(v)


def orbit_mask(basis, reps):
    """Bitset of the indices ``i`` with ``reps[i]`` in the span of ``basis``."""
    mask = 0
    for i, r in enumerate(reps):
        if contains(basis, r):
            mask |= 1 << i
    return mask


def mobius_from_masks(masks):
    """Möbius values mu(0, x) on a lattice of closed sets.

    ``x <= y`` iff ``masks[x]`` is a subset of ``masks[y]``.  The masks
    must be distinct and sorted by nondecreasing popcount, bottom first.
    """
    n = len(masks)
    mu = [0] * n
    if n == 0:
        return mu
    mu[0] = 1
    for i in range(1, n):
        m = masks[i]
        s = 0
        for j in range(i):
            mj = masks[j]
            if mj & m == mj:
                s += mu[j]
        mu[i] = -s
    return mu
