import json

import pytest

from toricarr import _pykernels
from toricarr.lattice import canonicalize, saturate
from toricarr.poset import (
    CustomArrangement,
    NodeBudgetExceeded,
    brute_force_spans,
    fixed_poset,
    hyperplane_poset,
    mobius_by_definition,
    tau_is_isomorphism,
)
from toricarr.weyl import WeylElement, identity_element

from conftest import classes_of, system

A2EX = CustomArrangement(2, ((1, 0), (2, 1), (1, 2), (0, 1)))


def all_unions(n, vectors, orbits):
    """Every union of orbits, spanned incrementally along a subset tree."""
    out = set()
    k = len(orbits)

    def walk(start, rows):
        out.add(_pykernels.hnf(rows, n))
        for i in range(start, k):
            walk(i + 1, list(_pykernels.hnf(rows, n)) + [vectors[j] for j in orbits[i]])

    walk(0, [])
    return out


def test_a2_identity():
    p = fixed_poset(system("A2"))
    assert len(p) == 5
    assert p.counts_by_rank() == [1, 3, 1]
    assert p.top.mobius == 1 and p.top.rank == 0


def test_a2ex_nodes_and_mobius():
    p = fixed_poset(A2EX)
    assert len(p) == 9
    assert p.mobius_values() == [1, -1, -1, -1, -1, 1, 1, 1, 0]
    assert p.counts_by_rank() == [1, 4, 4]
    last = p.nodes[-1]
    assert last.module == canonicalize([(1, 0), (0, 1)], 2)


def test_a2ex_from_json(a2ex_path):
    arr = CustomArrangement.load(a2ex_path)
    assert arr == A2EX
    assert CustomArrangement.from_json(json.dumps(arr.to_json())) == arr


def test_custom_collapses_duplicates():
    arr = CustomArrangement(2, ((1, 0), (-1, 0), (1, 0), (0, 1)))
    assert arr.lines == ((1, 0), (0, 1))


def test_custom_rejects_zero():
    with pytest.raises(ValueError):
        CustomArrangement(2, ((0, 0),))


def test_empty_arrangement():
    p = fixed_poset(CustomArrangement(3, ()))
    assert len(p) == 1


def test_chain_mobius():
    # rank 1: top > <2> > <1>; <1> covers only <2>
    p = fixed_poset(CustomArrangement(1, ((2,), (1,))))
    assert [nd.module.basis for nd in p.nodes] == [(), ((2,),), ((1,),)]
    assert p.mobius_values() == [1, -1, 0]


def test_rank_one_torsion_collapses():
    arr = CustomArrangement(1, ((2,),))
    assert len(fixed_poset(arr)) == 2
    h = hyperplane_poset(arr)
    assert len(h) == 2 and h.nodes[1].module.basis == ((1,),)
    assert not tau_is_isomorphism(arr)


def test_g2_longest_element():
    rs = system("G2")
    w0 = WeylElement(((-1, 0), (0, -1)))
    assert len(fixed_poset(rs, w0)) == len(fixed_poset(rs))


@pytest.mark.parametrize("name", ["A2", "A3", "A4"])
def test_type_a_tau(name):
    rs = system(name)
    for g in classes_of(name).representatives:
        assert tau_is_isomorphism(rs, g)
    assert len(hyperplane_poset(rs)) == len(fixed_poset(rs))


def test_b2_tau():
    rs = system("B2")
    assert not tau_is_isomorphism(rs)
    assert len(hyperplane_poset(rs)) < len(fixed_poset(rs))


def test_g2_tau():
    assert not tau_is_isomorphism(system("G2"))


def test_custom_rejects_nonidentity():
    with pytest.raises(ValueError):
        fixed_poset(A2EX, ((0, 1), (1, 0)))


def test_node_budget():
    with pytest.raises(NodeBudgetExceeded):
        fixed_poset(system("A4"), max_nodes=10)


@pytest.mark.parametrize("name", ["A2", "A3", "B2", "B3", "C3", "G2"])
def test_matches_all_unions(name):
    rs = system(name)
    for g in classes_of(name).representatives:
        p = fixed_poset(rs, g)
        want = all_unions(rs.rank, p.vectors, p.orbits)
        assert {nd.module.basis for nd in p.nodes} == want
        assert brute_force_spans(rs, g) == want


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3"])
def test_mobius_matches_definition(name):
    rs = system(name)
    for g in classes_of(name).representatives:
        p = fixed_poset(rs, g)
        assert p.mobius_values() == mobius_by_definition(p)


def test_orbit_sets_match_membership():
    rs = system("B3")
    for g in classes_of("B3").representatives:
        p = fixed_poset(rs, g)
        for nd in p.nodes:
            for i, orbit in enumerate(p.orbits):
                inside = all(p.vectors[k] in nd.module for k in orbit)
                assert inside == bool(nd.orbit_set >> i & 1)
            assert all(tuple(sum(g.matrix[r][c] * b[c] for c in range(3)) for r in range(3)) in nd.module
                       for b in nd.module.basis)


def test_order_matches_module_containment():
    p = fixed_poset(system("G2"))
    for i, a in enumerate(p.nodes):
        for j, b in enumerate(p.nodes):
            contains = all(v in a.module for v in b.module.basis)
            assert p.leq(i, j) == contains


def elementary(values, r):
    from itertools import combinations
    from math import prod
    return sum(prod(c) for c in combinations(values, r))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_type_a_mobius_sums(n):
    p = fixed_poset(system("A%d" % n))
    sums = p.mobius_sums_by_rank()
    for r in range(n + 1):
        assert sums[r] * (-1) ** r == elementary(range(1, n + 1), r)


def test_hyperplane_nodes_saturated():
    h = hyperplane_poset(system("B3"))
    assert all(nd.module == saturate(nd.module) for nd in h.nodes)
    assert len(h) == 24


def test_known_sizes():
    sizes = {"A3": 15, "B2": 7, "G2": 12, "B3": 31, "A4": 52, "F4": 447}
    for name, k in sizes.items():
        assert len(fixed_poset(system(name))) == k


def test_json_export():
    p = fixed_poset(A2EX)
    data = p.to_json()
    assert len(data["nodes"]) == 9
    assert data["nodes"][0]["mobius"] == 1
    # covers: the four hypertori are covered by the top
    assert sorted(c for c in data["covers"] if c[1] == 0) == [[1, 0], [2, 0], [3, 0], [4, 0]]
    json.dumps(data)


def test_identity_default():
    rs = system("A3")
    a = fixed_poset(rs)
    b = fixed_poset(rs, identity_element(3))
    assert [nd.module for nd in a.nodes] == [nd.module for nd in b.nodes]
