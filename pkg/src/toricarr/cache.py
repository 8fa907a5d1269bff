"""On-disk cache for enumerated groups and per-class results.

Entries are keyed by (type, rank, class label, code version).  A class
entry stores the Poincaré polynomial together with the fixed poset; on
every hit one node, chosen from the key, is re-derived from its orbits and
its Möbius value recomputed from the stored nodes below it.  A failed
check discards the entry.
"""

import gzip
import hashlib
import json
import os
import random

import numpy as np

from . import __version__
from .lattice import canonicalize
from .weyl import WeylGroup, expected_order

ENV_VAR = "TORICARR_CACHE_DIR"


def default_dir():
    return os.environ.get(ENV_VAR) or None


def _digest(*parts):
    return hashlib.sha256("|".join(map(str, parts)).encode()).hexdigest()


class ResultCache:
    def __init__(self, path):
        self.path = path
        os.makedirs(path, exist_ok=True)
        self.hits = 0
        self.misses = 0
        self.rejected = 0

    # groups ---------------------------------------------------------------

    def _group_file(self, rs):
        return os.path.join(self.path, "%s-v%s-group.npy" % (rs.name, __version__))

    def load_group(self, rs):
        path = self._group_file(rs)
        if not os.path.exists(path):
            return None
        elements = np.load(path)
        n = rs.rank
        if elements.shape != (expected_order(rs), n, n) or elements.dtype != np.int8:
            return None
        group = WeylGroup(rs, elements)
        try:
            group.index_of(np.array(rs.simple_reflections, dtype=np.int8))
        except KeyError:
            return None
        return group

    def store_group(self, group):
        path = self._group_file(group.rs)
        tmp = path + ".tmp.npy"
        np.save(tmp, group.elements)
        os.replace(tmp, path)

    # class results -------------------------------------------------------------

    def _class_file(self, rs, label):
        key = _digest(rs.type_label, rs.rank, label, __version__)
        return os.path.join(self.path, "%s-%s.json.gz" % (rs.name, key[:20])), key

    def load_class(self, rs, label, element):
        path, key = self._class_file(rs, label)
        if not os.path.exists(path):
            self.misses += 1
            return None
        try:
            with gzip.open(path, "rt") as fh:
                data = json.load(fh)
        except (OSError, ValueError):
            self.rejected += 1
            return None
        if data.get("element") != [list(r) for r in element] or not verify_entry(rs, data, key):
            self.rejected += 1
            os.remove(path)
            return None
        self.hits += 1
        return data["poincare"]

    def store_class(self, rs, label, element, poincare, poset):
        path, _ = self._class_file(rs, label)
        data = {
            "type": rs.type_label,
            "rank": rs.rank,
            "label": label,
            "version": __version__,
            "element": [list(r) for r in element],
            "poincare": list(poincare),
            "orbits": poset.orbits,
            "nodes": [[[list(r) for r in nd.module.basis], hex(nd.orbit_set), nd.mobius]
                      for nd in poset.nodes],
        }
        tmp = path + ".tmp"
        with gzip.open(tmp, "wt") as fh:
            json.dump(data, fh, separators=(",", ":"))
        os.replace(tmp, path)


def verify_entry(rs, data, key):
    """Spot-check one stored node: its module and its Möbius value."""
    nodes = data["nodes"]
    if not nodes:
        return False
    roots = rs.roots
    i = random.Random(key).randrange(len(nodes))
    basis, mask, mu = nodes[i]
    mask = int(mask, 16)
    rows = [roots[k] for o, orbit in enumerate(data["orbits"]) if mask >> o & 1 for k in orbit]
    if [list(r) for r in canonicalize(rows, rs.rank).basis] != basis:
        return False
    if i == 0:
        return mu == 1
    below = 0
    for j in range(len(nodes)):
        mj = int(nodes[j][1], 16)
        if j != i and mj & mask == mj:
            below += nodes[j][2]
    return mu == -below
