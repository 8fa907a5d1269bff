"""Weyl groups as sets of integer matrices on the root lattice."""

import os
from dataclasses import dataclass
from functools import cached_property
from math import prod

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .lattice import act, exterior_traces, power_traces

DEFAULT_MAX_ORDER = 10 ** 6


class MemoryBudgetExceeded(MemoryError):
    pass


@dataclass(frozen=True)
class WeylElement:
    matrix: tuple

    @classmethod
    def from_array(cls, a):
        return cls(tuple(tuple(int(x) for x in row) for row in a))

    @property
    def rank(self):
        return len(self.matrix)

    @cached_property
    def key(self):
        return np.asarray(self.matrix, dtype=np.int8).tobytes()

    def __call__(self, vec):
        return act(self.matrix, vec)

    def __matmul__(self, other):
        a = np.asarray(self.matrix, dtype=np.int64) @ np.asarray(other.matrix, dtype=np.int64)
        return WeylElement.from_array(a)

    def trace(self):
        return sum(self.matrix[i][i] for i in range(self.rank))

    def order(self):
        n = self.rank
        ident = np.eye(n, dtype=np.int64)
        g = np.asarray(self.matrix, dtype=np.int64)
        m = g.copy()
        k = 1
        while not np.array_equal(m, ident):
            m = m @ g
            k += 1
        return k

    def charpoly(self):
        """Coefficients of det(x - g), leading coefficient first."""
        n = self.rank
        e = exterior_traces(power_traces(self.matrix, n), n)
        return tuple((-1) ** k * e[k] for k in range(n + 1))


def identity_element(n):
    return WeylElement(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def expected_order(rs):
    """|W| as the product of the degrees (read off the root heights)."""
    return prod(rs.degrees())


class WeylGroup:
    """All elements of W, stored as an (N, n, n) int8 array sorted by key."""

    def __init__(self, rs, elements):
        self.rs = rs
        self.elements = elements
        n = rs.rank
        flat = np.ascontiguousarray(elements.reshape(len(elements), n * n))
        self._keys = flat.view(np.dtype((np.void, n * n))).ravel()

    def __len__(self):
        return len(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def element(self, i):
        return WeylElement.from_array(self.elements[i])

    def __iter__(self):
        for i in range(len(self)):
            yield self.element(i)

    def index_of(self, mats):
        """Indices of an (k, n, n) array of matrices inside the group."""
        n = self.rs.rank
        mats = np.ascontiguousarray(np.asarray(mats, dtype=np.int8).reshape(-1, n * n))
        keys = mats.view(np.dtype((np.void, n * n))).ravel()
        idx = np.searchsorted(self._keys, keys)
        idx = np.minimum(idx, len(self._keys) - 1)
        if not np.all(self._keys[idx] == keys):
            raise KeyError("matrix is not an element of the group")
        return idx

    def generators(self):
        return [np.asarray(s, dtype=np.int8) for s in self.rs.simple_reflections]


def _sort_unique(mats, n):
    flat = np.ascontiguousarray(mats.reshape(len(mats), n * n))
    keys = flat.view(np.dtype((np.void, n * n))).ravel()
    _, idx = np.unique(keys, return_index=True)
    return mats[idx]


def enumerate_group(rs, max_order=None):
    """Breadth-first closure of the simple reflections."""
    if max_order is None:
        max_order = int(os.environ.get("TORICARR_MAX_GROUP_ORDER", DEFAULT_MAX_ORDER))
    expected = expected_order(rs)
    if expected > max_order:
        raise MemoryBudgetExceeded(
            "W(%s) has %d elements, above the budget of %d" % (rs.name, expected, max_order))
    n = rs.rank
    gens = [np.asarray(s, dtype=np.int16) for s in rs.simple_reflections]
    ident = np.eye(n, dtype=np.int8)[None]
    seen = {ident[0].tobytes()}
    chunks = [ident]
    frontier = ident
    while len(frontier):
        f16 = frontier.astype(np.int16)
        new = []
        for s in gens:
            prodm = (f16 @ s).astype(np.int8)
            for m in prodm:
                k = m.tobytes()
                if k not in seen:
                    seen.add(k)
                    new.append(m)
        frontier = np.array(new, dtype=np.int8).reshape(-1, n, n)
        if len(frontier):
            chunks.append(frontier)
        if len(seen) > max_order:
            raise MemoryBudgetExceeded("group closure exceeded %d elements" % max_order)
    elements = _sort_unique(np.concatenate(chunks), n)
    return WeylGroup(rs, elements)


def orbits_on_roots(g, rs):
    """<g>-orbits on the full root set as lists of root indices.

    Orbits are ordered by their lexicographically smallest root; inside an
    orbit the indices follow the cycle starting at that root.
    """
    perm = root_permutation(g, rs)
    seen = [False] * len(perm)
    orbits = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = perm[i]
        rmin = min(cyc, key=lambda k: rs.roots[k])
        p = cyc.index(rmin)
        orbits.append(cyc[p:] + cyc[:p])
    orbits.sort(key=lambda o: rs.roots[o[0]])
    return orbits


def root_permutation(g, rs):
    mat = g.matrix if isinstance(g, WeylElement) else g
    idx = rs.root_index
    try:
        return [idx[act(mat, r)] for r in rs.roots]
    except KeyError:
        raise ValueError("matrix does not preserve the root system") from None


def line_cycle_type(g, rs):
    """Cycle lengths of g on the lines spanned by roots, descending."""
    npos = len(rs.positive_roots)
    perm = [i % npos for i in root_permutation(g, rs)[:npos]]
    seen = [False] * npos
    lengths = []
    for s in range(npos):
        if seen[s]:
            continue
        k = 0
        i = s
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths, reverse=True))


def fixed_line_count(g, rs):
    return line_cycle_type(g, rs).count(1)


def root_cycle_type(g, rs, only=None):
    """Cycle lengths of g on the roots (or on the root indices in ``only``)."""
    orbits = orbits_on_roots(g, rs)
    if only is not None:
        orbits = [o for o in orbits if o[0] in only]
    return tuple(sorted((len(o) for o in orbits), reverse=True))


def _format_cycles(lengths):
    out = []
    for k in sorted(set(lengths), reverse=True):
        out.append("%d^%d" % (k, lengths.count(k)))
    return ".".join(out)


def long_roots(rs):
    """Indices of the long roots, or None if all roots have one length."""
    norms = [rs.inner(a, a) for a in rs.roots]
    if len(set(norms)) == 1:
        return None
    top = max(norms)
    return frozenset(i for i, x in enumerate(norms) if x == top)


def class_invariants(g, rs):
    inv = {
        "charpoly": list(g.charpoly()),
        "line_cycles": list(line_cycle_type(g, rs)),
        "root_cycles": list(root_cycle_type(g, rs)),
        "order": g.order(),
    }
    longs = long_roots(rs)
    if longs is not None:
        # separates e.g. short from long reflections
        inv["long_root_cycles"] = list(root_cycle_type(g, rs, longs))
    return inv


def invariant_label(g, rs):
    cp = " ".join(str(c) for c in g.charpoly())
    out = "o%d [%s] lines %s" % (g.order(), cp, _format_cycles(list(line_cycle_type(g, rs))))
    longs = long_roots(rs)
    if longs is not None:
        out += " long %s" % _format_cycles(list(root_cycle_type(g, rs, longs)))
    return out


@dataclass
class ConjugacyClasses:
    group: WeylGroup
    class_index: np.ndarray
    rep_indices: list
    sizes: list

    @property
    def representatives(self):
        return [self.group.element(i) for i in self.rep_indices]

    def __len__(self):
        return len(self.sizes)

    def class_of(self, g):
        mat = g.matrix if isinstance(g, WeylElement) else g
        return int(self.class_index[self.group.index_of(np.asarray(mat)[None])[0]])

    def members(self, c):
        return np.nonzero(self.class_index == c)[0]

    @cached_property
    def labels(self):
        rs = self.group.rs
        raw = [invariant_label(g, rs) for g in self.representatives]
        # classes the invariants cannot separate (D4 triality) get a suffix
        out = []
        for i, lab in enumerate(raw):
            if raw.count(lab) > 1:
                lab = "%s #%d" % (lab, raw[:i].count(lab) + 1)
            out.append(lab)
        return out

    @cached_property
    def invariants(self):
        rs = self.group.rs
        out = []
        for g, size in zip(self.representatives, self.sizes):
            inv = class_invariants(g, rs)
            inv["size"] = size
            out.append(inv)
        return out


def conjugacy_classes(group):
    """Classes as connected components of x ~ s x s over the generators."""
    n_el = len(group)
    rows, cols = [], []
    base = np.arange(n_el)
    for s in group.generators():
        s16 = s.astype(np.int16)
        conj = (s16 @ group.elements.astype(np.int16) @ s16).astype(np.int8)
        rows.append(base)
        cols.append(group.index_of(conj))
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n_el, n_el))
    ncomp, labels = connected_components(graph, directed=True, connection="weak")
    # representative = member with the smallest key (the group is key sorted)
    first = np.full(ncomp, n_el, dtype=np.int64)
    np.minimum.at(first, labels, base)
    sizes = np.bincount(labels, minlength=ncomp)
    reps = [group.element(int(i)) for i in first]
    rs = group.rs
    order_key = []
    for c in range(ncomp):
        g = reps[c]
        order_key.append((g.order(), [-x for x in g.charpoly()], int(sizes[c]), g.key))
    perm = sorted(range(ncomp), key=lambda c: order_key[c])
    relabel = np.empty(ncomp, dtype=np.int64)
    relabel[perm] = np.arange(ncomp)
    return ConjugacyClasses(
        group=group,
        class_index=relabel[labels],
        rep_indices=[int(first[c]) for c in perm],
        sizes=[int(sizes[c]) for c in perm],
    )
