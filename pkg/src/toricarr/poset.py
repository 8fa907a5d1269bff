"""Posets of g-stable modules of exponents and their Möbius functions."""

import json
from dataclasses import dataclass, field
from itertools import combinations

from . import kernels
from .lattice import LatticeModule, canonicalize, saturate, span_with
from .roots import RootSystem
from .weyl import WeylElement, identity_element, orbits_on_roots

DEFAULT_MAX_NODES = 5 * 10 ** 6


class NodeBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class CustomArrangement:
    """Hypertori z^m = 1 for a list of exponent vectors m."""

    ambient_rank: int
    vectors: tuple

    def __post_init__(self):
        for v in self.vectors:
            if len(v) != self.ambient_rank:
                raise ValueError("vector %r does not have length %d" % (v, self.ambient_rank))
            if not any(v):
                raise ValueError("zero exponent vector")

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["rank"])
        vecs = tuple(tuple(int(x) for x in v) for v in data["vectors"])
        return cls(n, vecs)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self):
        return {"rank": self.ambient_rank, "vectors": [list(v) for v in self.vectors]}

    @property
    def name(self):
        return "custom"

    @property
    def rank(self):
        return self.ambient_rank

    @property
    def lines(self):
        """One representative per hypertorus; m and -m are the same one."""
        out = []
        seen = set()
        for v in self.vectors:
            neg = tuple(-x for x in v)
            if v in seen or neg in seen:
                continue
            seen.add(v)
            out.append(v)
        return tuple(out)


@dataclass
class PosetNode:
    module: LatticeModule
    orbit_set: int
    mobius: int = None

    @property
    def rank(self):
        return self.module.rank


@dataclass
class FixedPoset:
    ambient_rank: int
    vectors: tuple
    orbits: list
    nodes: list
    element: tuple = None
    saturated: bool = False
    index: dict = field(default=None, repr=False)

    def __post_init__(self):
        if self.index is None:
            self.index = {nd.module.basis: i for i, nd in enumerate(self.nodes)}

    def __len__(self):
        return len(self.nodes)

    @property
    def top(self):
        return self.nodes[0]

    def node_of(self, module):
        return self.nodes[self.index[module.basis]]

    def leq(self, a, b):
        """Geometric order: node a lies inside node b (module a contains module b)."""
        ma, mb = self.nodes[a].orbit_set, self.nodes[b].orbit_set
        return ma & mb == mb

    def covers(self):
        """Pairs (i, j) where node i is covered by node j in the geometric order."""
        masks = [nd.orbit_set for nd in self.nodes]
        out = []
        for i, mi in enumerate(masks):
            below = [j for j in range(i) if masks[j] & mi == masks[j]]
            for j in below:
                mj = masks[j]
                if not any(masks[k] & mi == masks[k] and mj & masks[k] == mj and k != j
                           for k in below):
                    out.append((i, j))
        return out

    def mobius_values(self):
        return [nd.mobius for nd in self.nodes]

    def counts_by_rank(self):
        out = [0] * (self.ambient_rank + 1)
        for nd in self.nodes:
            out[nd.rank] += 1
        return out

    def mobius_sums_by_rank(self):
        out = [0] * (self.ambient_rank + 1)
        for nd in self.nodes:
            out[nd.rank] += nd.mobius
        return out

    def orbit_roots(self, i):
        return [self.vectors[k] for k in self.orbits[i]]

    def to_json(self, include_covers=True):
        data = {
            "ambient_rank": self.ambient_rank,
            "element": [list(r) for r in self.element] if self.element is not None else None,
            "orbits": [[list(self.vectors[k]) for k in o] for o in self.orbits],
            "nodes": [
                {
                    "basis": [list(r) for r in nd.module.basis],
                    "rank": nd.rank,
                    "orbits": [i for i in range(len(self.orbits)) if nd.orbit_set >> i & 1],
                    "mobius": nd.mobius,
                }
                for nd in self.nodes
            ],
        }
        if include_covers:
            data["covers"] = [list(c) for c in self.covers()]
        return data


def _arrangement_data(source, g):
    """(ambient rank, vectors, orbits) for a root system or custom arrangement."""
    if isinstance(source, RootSystem):
        if g is None:
            g = identity_element(source.rank)
        if not isinstance(g, WeylElement):
            g = WeylElement(tuple(map(tuple, g)))
        return source.rank, source.roots, orbits_on_roots(g, source), g.matrix
    if isinstance(source, CustomArrangement):
        if g is not None and g != identity_element(source.rank) \
                and getattr(g, "matrix", g) != identity_element(source.rank).matrix:
            raise ValueError("custom arrangements only support the identity element")
        lines = source.lines
        vectors = lines + tuple(tuple(-x for x in v) for v in lines)
        orbits = [[i] for i in range(len(vectors))]
        return source.ambient_rank, vectors, orbits, identity_element(source.rank).matrix
    raise TypeError("expected a RootSystem or CustomArrangement, got %r" % (source,))


def _closure(n, vectors, orbits, max_nodes, saturated):
    reps = [vectors[o[0]] for o in orbits]
    orbit_rows = [[vectors[k] for k in o] for o in orbits]
    where = {}
    for i, o in enumerate(orbits):
        for k in o:
            where[vectors[k]] = i
    # span(N + O) = span(N + (-O)), so only one of each +- pair is tried
    candidates = [i for i, r in enumerate(reps) if i <= where[tuple(-x for x in r)]]

    packed = kernels.Reps(reps, n)
    top = LatticeModule(n, ())
    masks = {top.basis: 0}
    queue = [top.basis]
    head = 0
    hnf = kernels.hnf
    orbit_mask = kernels.orbit_mask
    while head < len(queue):
        basis = queue[head]
        head += 1
        mask = masks[basis]
        base_rows = list(basis)
        for i in candidates:
            if mask >> i & 1:
                continue
            child = hnf(base_rows + orbit_rows[i], n)
            if saturated:
                child = saturate(LatticeModule(n, child)).basis
            if child in masks:
                continue
            masks[child] = orbit_mask(child, packed)
            queue.append(child)
            if len(queue) > max_nodes:
                raise NodeBudgetExceeded("poset exceeded %d nodes" % max_nodes)
    return masks


def _build(source, g, max_nodes, saturated):
    if max_nodes is None:
        max_nodes = DEFAULT_MAX_NODES
    n, vectors, orbits, gmat = _arrangement_data(source, g)
    masks = _closure(n, vectors, orbits, max_nodes, saturated)
    order = sorted(masks, key=lambda b: (len(b), bin(masks[b]).count("1"), b))
    ordered_masks = [masks[b] for b in order]
    mu = kernels.mobius_from_masks(ordered_masks)
    nodes = [PosetNode(LatticeModule(n, b), m, u) for b, m, u in zip(order, ordered_masks, mu)]
    return FixedPoset(n, tuple(vectors), orbits, nodes, element=gmat, saturated=saturated)


def fixed_poset(source, g=None, max_nodes=None):
    """Poset of distinct Z-spans of unions of g-orbits, with Möbius values.

    Built by worklist closure from the zero module: every reached module
    is the span of a union of orbits, and every such span is reached by
    adding its orbits one at a time.
    """
    return _build(source, g, max_nodes, saturated=False)


def hyperplane_poset(source, g=None, max_nodes=None):
    """Same closure with saturated modules: the intersection lattice of hyperplanes."""
    return _build(source, g, max_nodes, saturated=True)


def tau_is_isomorphism(source, g=None, poset=None):
    if poset is None:
        poset = fixed_poset(source, g)
    return all(nd.module.is_saturated() for nd in poset.nodes)


def brute_force_spans(source, g=None):
    """All distinct Z-spans of unions of orbits, by direct enumeration."""
    n, vectors, orbits, _ = _arrangement_data(source, g)
    spans = set()
    k = len(orbits)
    for size in range(k + 1):
        for subset in combinations(range(k), size):
            rows = [vectors[j] for i in subset for j in orbits[i]]
            spans.add(canonicalize(rows, n).basis)
    return spans


def mobius_by_definition(poset):
    """mu(Z, X) from the defining recursion, walking the geometric order explicitly."""
    nodes = poset.nodes
    mu = {}
    # zero module first; every other node after all the nodes above it
    for i in range(len(nodes)):
        above = [j for j in range(len(nodes)) if j != i and poset.leq(i, j)]
        mu[i] = 1 if not above else -sum(mu[j] for j in above)
    return [mu[i] for i in range(len(nodes))]


def span_of_orbits(poset, orbit_ids):
    rows = [v for i in orbit_ids for v in poset.orbit_roots(i)]
    return canonicalize(rows, poset.ambient_rank)


def add_orbit(module, poset, i):
    return span_with(module, poset.orbit_roots(i))
