"""Crystallographic root systems in simple-root coordinates."""

from dataclasses import dataclass
from functools import cached_property
from math import gcd

from .lattice import determinant, identity


class InvalidType(ValueError):
    pass


def _chain_gram(n, diag, offdiag):
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = diag[i]
    for i in range(n - 1):
        g[i][i + 1] = g[i + 1][i] = offdiag[i]
    return g


def _simply_laced(n, edges):
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2
    for i, j in edges:
        g[i][j] = g[j][i] = -1
    return g


def gram_matrix(type_label, rank):
    """Integer Gram matrix of the simple roots (Bourbaki labelling)."""
    t, n = type_label, rank
    if t == "A" and n >= 1:
        return _chain_gram(n, [2] * n, [-1] * (n - 1))
    if t == "B" and n >= 2:
        # long roots e_i - e_{i+1}, short root e_n; scaled by 2
        return _chain_gram(n, [4] * (n - 1) + [2], [-2] * (n - 1))
    if t == "C" and n >= 3:
        # short roots e_i - e_{i+1}, long root 2 e_n
        return _chain_gram(n, [2] * (n - 1) + [4], [-1] * (n - 2) + [-2])
    if t == "D" and n >= 4:
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        return _simply_laced(n, edges)
    if t == "E" and n in (6, 7, 8):
        edges = [(0, 2), (2, 3), (3, 1)] + [(i, i + 1) for i in range(3, n - 1)]
        return _simply_laced(n, edges)
    if t == "F" and n == 4:
        return [[4, -2, 0, 0], [-2, 4, -2, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    if t == "G" and n == 2:
        return [[2, -3], [-3, 6]]
    raise InvalidType("no root system of type %s%s" % (type_label, rank))


def parse_type(label, rank=None):
    """Split labels like ``"E6"`` or ``("A", 3)`` into (letter, rank)."""
    label = str(label).strip().upper()
    if len(label) > 1:
        letter, digits = label[0], label[1:]
        if not digits.isdigit():
            raise InvalidType(label)
        r = int(digits)
        if rank is not None and rank != r:
            raise InvalidType("type %s conflicts with rank %s" % (label, rank))
        return letter, r
    if rank is None:
        raise InvalidType("type %s needs a rank" % label)
    return label, int(rank)


def _reflect(gram, i, v):
    n = len(v)
    c = 2 * sum(gram[i][k] * v[k] for k in range(n))
    q, r = divmod(c, gram[i][i])
    if r:
        raise InvalidType("Gram matrix is not crystallographic")
    out = list(v)
    out[i] -= q
    return tuple(out)


@dataclass(frozen=True, eq=False)
class RootSystem:
    type_label: str
    rank: int
    gram: tuple
    positive_roots: tuple

    @property
    def name(self):
        return "%s%d" % (self.type_label, self.rank)

    @cached_property
    def cartan(self):
        g = self.gram
        n = self.rank
        return tuple(tuple(2 * g[i][j] // g[i][i] for j in range(n)) for i in range(n))

    @cached_property
    def roots(self):
        """All roots: positive roots followed by their negatives."""
        return self.positive_roots + tuple(tuple(-x for x in r) for r in self.positive_roots)

    @cached_property
    def root_index(self):
        return {r: i for i, r in enumerate(self.roots)}

    def inner(self, u, v):
        g = self.gram
        n = self.rank
        return sum(u[i] * g[i][j] * v[j] for i in range(n) for j in range(n))

    @cached_property
    def simple_reflections(self):
        """Matrices r_i acting on column coefficient vectors."""
        mats = []
        for i in range(self.rank):
            cols = [_reflect(self.gram, i, e) for e in identity(self.rank)]
            mats.append(tuple(zip(*cols)))
        return tuple(tuple(tuple(r) for r in m) for m in mats)

    def reflection_torus_coincides(self, alpha):
        """True iff the fixed torus of r_alpha equals the hypertorus of alpha."""
        alpha = tuple(alpha)
        if alpha not in self.root_index:
            raise ValueError("%r is not a root" % (alpha,))
        aa = self.inner(alpha, alpha)
        vals = []
        for v in identity(self.rank):
            num = 2 * self.inner(alpha, v)
            assert num % aa == 0
            vals.append(num // aa)
        g = 0
        for x in vals:
            g = gcd(g, x)
        return g == 1

    def heights(self):
        return [sum(r) for r in self.positive_roots]

    def exponents(self):
        """Exponents from the height distribution of positive roots."""
        hs = self.heights()
        counts = [hs.count(k) for k in range(1, max(hs) + 1)]
        # number of exponents >= k is counts[k-1] - counts[k]
        exps = []
        for k in range(1, len(counts) + 1):
            nxt = counts[k] if k < len(counts) else 0
            exps += [k] * (counts[k - 1] - nxt)
        return sorted(exps)

    def degrees(self):
        return [e + 1 for e in self.exponents()]

    def leading_minors(self):
        g = self.gram
        return [determinant(tuple(tuple(g[i][j] for j in range(k)) for i in range(k)))
                for k in range(1, self.rank + 1)]


def positive_roots_from_gram(gram):
    n = len(gram)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(n):
                w = _reflect(gram, i, v)
                if w != v and all(x >= 0 for x in w) and w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return tuple(sorted(seen, key=lambda r: (sum(r), r)))


def build(type_label, rank=None):
    letter, n = parse_type(type_label, rank)
    gram = gram_matrix(letter, n)
    return RootSystem(letter, n, tuple(map(tuple, gram)), positive_roots_from_gram(gram))


POSITIVE_ROOT_COUNTS = {"G2": 6, "F4": 24, "E6": 36, "E7": 63, "E8": 120}


def expected_positive_root_count(type_label, rank):
    if type_label == "A":
        return rank * (rank + 1) // 2
    if type_label in "BC":
        return rank * rank
    if type_label == "D":
        return rank * (rank - 1)
    return POSITIVE_ROOT_COUNTS["%s%d" % (type_label, rank)]
