from itertools import product

import pytest

from toricarr.lattice import (
    LatticeModule,
    NonIntegralResult,
    NotStable,
    binomials,
    canonicalize,
    determinant,
    exterior_traces,
    free_trace,
    lattice_index,
    matmul,
    power_traces,
    restrict_trace,
    saturate,
    smith_quotient,
    symmetric_traces,
    torsion_fixed_count,
    torsion_fixed_count_enumerate,
    torsion_fixed_count_smith,
)


def cosets(module):
    """Index of a full-rank module by counting residues in a box (brute force)."""
    n = module.ambient_rank
    det = abs(determinant(module.basis))
    reps = set()
    for x in product(range(det), repeat=n):
        # reduce x against the triangular basis
        v = list(x)
        for row in module.basis:
            j = next(k for k, c in enumerate(row) if c)
            q = v[j] // row[j]
            v = [a - q * b for a, b in zip(v, row)]
        reps.add(tuple(v))
    return len(reps)


def test_canonicalize_full_span():
    assert canonicalize([(1, 0), (0, 1), (1, 1)], 2).basis == ((1, 0), (0, 1))


def test_canonicalize_empty():
    m = canonicalize([], 2)
    assert m.rank == 0 and m.basis == ()


def test_canonicalize_index_three():
    m = canonicalize([(2, 1), (1, 2)], 2)
    assert m.rank == 2
    assert lattice_index(m) == 3
    assert cosets(m) == 3


def test_canonicalize_rejects_bad_length():
    with pytest.raises(ValueError):
        canonicalize([(1, 2, 3)], 2)


def test_canonical_form_shape():
    m = canonicalize([(4, 6, 2), (2, 3, 7), (0, 0, 5)], 3)
    for i, row in enumerate(m.basis):
        j = m.pivots[i]
        assert row[j] > 0
        for above in m.basis[:i]:
            assert 0 <= above[j] < row[j]
    assert canonicalize(m.basis, 3) == m


def test_equality_is_basis_equality():
    a = canonicalize([(1, 1), (0, 2)], 2)
    b = canonicalize([(1, -1), (2, 0)], 2)
    assert a == b and a.key == b.key


def test_smith_two_z2():
    q = smith_quotient(canonicalize([(2, 0), (0, 2)], 2))
    assert q.invariant_factors == (2, 2)
    assert q.free_rank == 0 and q.torsion_order == 4


def test_smith_three_points():
    q = smith_quotient(canonicalize([(2, 1), (1, 2)], 2))
    assert q.invariant_factors == (3,)
    assert q.free_rank == 0 and q.torsion_order == 3


def test_smith_two_points():
    q = smith_quotient(canonicalize([(1, 0), (1, 2)], 2))
    assert q.invariant_factors == (2,) and q.torsion_order == 2


def test_smith_zero_module():
    q = smith_quotient(LatticeModule(3, ()))
    assert q.free_rank == 3 and q.torsion_order == 1


def test_project_lift_roundtrip():
    m = canonicalize([(2, 4, 0), (0, 6, 3)], 3)
    q = smith_quotient(m)
    for t in product(*(range(d) for d in q.invariant_factors)):
        for f in [(0,), (1,), (-3,)]:
            assert q.project(q.lift(t, f)) == (t, f)
    assert q.free_rank + m.rank == 3


def test_saturate_examples():
    assert saturate(canonicalize([(2, 2)], 2)) == canonicalize([(1, 1)], 2)
    assert saturate(canonicalize([(1, 0), (1, 2)], 2)) == canonicalize([(1, 0), (0, 1)], 2)
    n = canonicalize([(1, 2)], 2)
    assert saturate(n) == n


def test_saturate_rows_with_unit_gcd():
    # every row is primitive, but the module is not saturated
    m = canonicalize([(2, 1), (0, 3)], 2)
    assert not m.is_saturated()
    assert saturate(m) == canonicalize([(1, 0), (0, 1)], 2)


def test_restrict_trace_examples():
    ident = ((1, 0), (0, 1))
    neg = ((-1, 0), (0, -1))
    n = canonicalize([(1, 1)], 2)
    assert restrict_trace(ident, n) == 1
    assert restrict_trace(neg, n) == -1
    assert restrict_trace(ident, canonicalize([(1, 0), (0, 1)], 2)) == 2


def test_restrict_trace_not_stable():
    swap = ((0, 1), (1, 0))
    with pytest.raises(NotStable):
        restrict_trace(swap, canonicalize([(1, 0)], 2))


def test_exterior_examples():
    assert exterior_traces([3, 3, 3], 3) == binomials(3)
    assert exterior_traces([-2, 2], 2) == [1, -2, 1]
    rot = ((0, -1), (1, -1))
    assert power_traces(rot, 2) == [-1, -1]
    assert exterior_traces(power_traces(rot, 2), 2) == [1, -1, 1]
    assert matmul(matmul(rot, rot), rot) == ((1, 0), (0, 1))


def test_exterior_binomials_up_to_8():
    for n in range(9):
        assert exterior_traces([n] * n, n) == binomials(n)


def test_exterior_non_integral():
    with pytest.raises(NonIntegralResult):
        exterior_traces([1, 0], 2)


def test_symmetric_traces_identity():
    # dim Sym^k of a 3-space is C(k+2, 2)
    assert symmetric_traces([3] * 5, 5) == [1, 3, 6, 10, 15, 21]


def test_torsion_fixed_identity_and_trivial():
    m = canonicalize([(2, 0), (0, 3)], 2)
    q = smith_quotient(m)
    ident = ((1, 0), (0, 1))
    assert torsion_fixed_count(ident, q, m) == q.torsion_order
    m1 = canonicalize([(1, 0)], 2)
    assert torsion_fixed_count(((1, 0), (0, -1)), smith_quotient(m1), m1) == 1


def test_torsion_fixed_coxeter_a2():
    # Coxeter element of A2 acting on columns in the simple-root basis
    c = ((0, -1), (1, -1))
    m = canonicalize([(2, 1), (1, 2)], 2)
    assert all(tuple(sum(c[i][k] * b[k] for k in range(2)) for i in range(2)) in m for b in m.basis)
    q = smith_quotient(m)
    fixed = 0
    for t in range(3):
        x = q.lift((t,))
        y = tuple(sum(c[i][k] * x[k] for k in range(2)) for i in range(2))
        if q.project(y)[0] == (t,):
            fixed += 1
    assert torsion_fixed_count_enumerate(c, q, m) == fixed
    assert torsion_fixed_count_smith(c, q, m) == fixed


def test_torsion_routes_agree_with_limit():
    m = canonicalize([(4, 0, 0), (0, 6, 0)], 3)
    q = smith_quotient(m)
    g = ((1, 0, 0), (0, -1, 0), (0, 0, 1))
    assert torsion_fixed_count(g, q, m, limit=1) == torsion_fixed_count(g, q, m)


def test_free_trace_identity():
    m = canonicalize([(1, 1, 0)], 3)
    assert free_trace(((1, 0, 0), (0, 1, 0), (0, 0, 1)), m) == 2
