import pytest

from toricarr.lattice import act, matmul
from toricarr.roots import InvalidType, build, expected_positive_root_count

SYSTEMS = ["A1", "A2", "A3", "A5", "B2", "B3", "B4", "C3", "C4", "D4", "D5",
           "G2", "F4", "E6", "E7", "E8"]


def test_a2_roots():
    assert set(build("A", 2).positive_roots) == {(1, 0), (0, 1), (1, 1)}


@pytest.mark.parametrize("name", SYSTEMS)
def test_root_counts(name):
    rs = build(name)
    assert len(rs.positive_roots) == expected_positive_root_count(rs.type_label, rs.rank)
    assert len(rs.roots) == 2 * len(rs.positive_roots)


def test_classified_counts():
    counts = {"G2": 6, "F4": 24, "E6": 36, "E7": 63, "A4": 10}
    for name, k in counts.items():
        assert len(build(name).positive_roots) == k


@pytest.mark.parametrize("name", SYSTEMS)
def test_roots_nonnegative_and_simple(name):
    rs = build(name)
    for a in rs.positive_roots:
        assert all(c >= 0 for c in a)
    n = rs.rank
    for i in range(n):
        assert tuple(int(i == j) for j in range(n)) in rs.positive_roots


@pytest.mark.parametrize("name", SYSTEMS)
def test_gram_positive_definite(name):
    rs = build(name)
    assert all(m > 0 for m in rs.leading_minors())
    g = rs.gram
    assert all(g[i][j] == g[j][i] for i in range(rs.rank) for j in range(rs.rank))


@pytest.mark.parametrize("name", SYSTEMS)
def test_reflections_preserve_roots(name):
    rs = build(name)
    roots = set(rs.roots)
    n = rs.rank
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    for i, r in enumerate(rs.simple_reflections):
        assert matmul(r, r) == ident
        assert {act(r, a) for a in roots} == roots
        e = tuple(int(i == j) for j in range(n))
        assert act(r, e) == tuple(-x for x in e)


def test_a2_first_reflection():
    r1 = build("A2").simple_reflections[0]
    assert act(r1, (1, 0)) == (-1, 0)
    assert act(r1, (0, 1)) == (1, 1)


def test_reflection_torus_type_a():
    for n in range(2, 6):
        rs = build("A", n)
        assert all(rs.reflection_torus_coincides(a) for a in rs.positive_roots)


def test_reflection_torus_b():
    for n in (2, 3, 4):
        rs = build("B", n)
        short = [a for a in rs.positive_roots if rs.inner(a, a) == 2]
        assert short and not any(rs.reflection_torus_coincides(a) for a in short)


def test_reflection_torus_b2_long_by_hand():
    rs = build("B2")
    # long roots: b1 and b1 + 2 b2; 2(a.v)/(a.a) on the basis vectors
    for a in [(1, 0), (1, 2)]:
        assert rs.inner(a, a) == 4
        vals = [2 * rs.inner(a, v) // rs.inner(a, a) for v in [(1, 0), (0, 1)]]
        assert vals in ([2, -1], [0, 1])
        assert rs.reflection_torus_coincides(a)


def test_degrees():
    assert build("E6").degrees() == [2, 5, 6, 8, 9, 12]
    assert build("G2").degrees() == [2, 6]
    assert build("F4").degrees() == [2, 6, 8, 12]


@pytest.mark.parametrize("bad", [("A", 0), ("B", 1), ("C", 2), ("D", 3), ("E", 5), ("F", 3), ("X", 2)])
def test_invalid(bad):
    with pytest.raises(InvalidType):
        build(*bad)


def test_invalid_label_without_rank():
    with pytest.raises(InvalidType):
        build("A")
