import json
from collections import Counter
from math import factorial

import pytest

from toricarr.characters import (
    ClassAlignmentError,
    NegativeMultiplicity,
    NonIntegralMultiplicity,
    OrthogonalityError,
    SchemaError,
    SizeBudget,
    an_oracles,
    centralizer_order,
    character_table,
    cycle_type_from_traces,
    decompose,
    dixon_table,
    label_phi,
    latex_name,
    load_table,
    mn_character,
    parse_phi,
    partitions,
    save_table,
    standard_order,
    symmetric_group_table,
    table_to_json,
    weyl_cycle_type,
)
from toricarr.lattice import determinant
from toricarr.weyl import conjugacy_classes, enumerate_group

from conftest import char_table, class_table, classes_of, published, system


def test_s3():
    t = symmetric_group_table(3)
    assert t.names == ["[3]", "[2,1]", "[1,1,1]"]
    assert t.class_labels == ["(1,1,1)", "(2,1)", "(3)"]
    assert t.irreducibles == [[1, 1, 1], [2, 0, -1], [1, -1, 1]]
    assert t.class_sizes == [1, 3, 2]


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6, 7])
def test_symmetric_orthogonality(m):
    t = symmetric_group_table(m)
    t.check_orthogonality()
    assert t.order == factorial(m)
    assert sum(d * d for d in t.degrees) == factorial(m)


def test_s6_degrees():
    t = symmetric_group_table(6)
    assert sum(d * d for d in t.degrees) == 720
    assert len(t) == 11


def test_hook_lengths_agree():
    # degree by the hook length formula
    for lam in partitions(7):
        hooks = 1
        conj = [sum(1 for x in lam if x > j) for j in range(lam[0])]
        for i, row in enumerate(lam):
            for j in range(row):
                hooks *= row - j + conj[j] - i - 1
        assert mn_character(lam, (1,) * 7) == factorial(7) // hooks


def test_centralizer():
    assert centralizer_order((2, 2, 1)) == 8
    assert sum(factorial(5) // centralizer_order(mu) for mu in partitions(5)) == 120


def test_size_budget():
    with pytest.raises(SizeBudget):
        symmetric_group_table(13)
    with pytest.raises(SizeBudget):
        dixon_table(classes_of("F4"), max_order=1000)


def test_cycle_type_from_traces():
    # (1 2 3)(4 5) on 6 points: Tr(g^k) = fixed points of g^k
    assert cycle_type_from_traces([1, 3, 4, 3, 1, 6], 6) == (3, 2, 1)
    with pytest.raises(ValueError):
        cycle_type_from_traces([0, 1, 0], 3)


def test_type_a_cycle_types_match_sizes():
    classes = classes_of("A4")
    for g, size in zip(classes.representatives, classes.sizes):
        mu = weyl_cycle_type(g.matrix)
        assert factorial(5) // centralizer_order(mu) == size


@pytest.mark.parametrize("name", ["A3", "B3", "G2", "D4", "F4", "C3"])
def test_character_table_orthogonal(name):
    t = character_table(classes_of(name))
    t.check_orthogonality()
    assert len(t) == len(classes_of(name))


def test_g2_degrees():
    assert sorted(char_table("G2").degrees) == [1, 1, 1, 1, 2, 2]


def test_f4_degrees():
    want = Counter({1: 4, 2: 4, 4: 5, 6: 2, 8: 4, 9: 4, 12: 1, 16: 1})
    assert Counter(char_table("F4").degrees) == want


def test_trivial_and_sign_labels():
    for name, sign in [("G2", "phi_1^6"), ("F4", "phi_1^24"), ("B3", "phi_1^9")]:
        t = char_table(name)
        assert t.irreducibles[t.index("phi_1^0")] == [1] * len(t)
        sgn = t.irreducibles[t.index(sign)]
        assert sgn == [determinant(g.matrix) for g in classes_of(name).representatives]


def test_std_label():
    classes = classes_of("E6")
    t = label_phi(character_table(classes), classes)
    chi = t.irreducibles[t.index("phi_6^1")]
    assert chi == [g.trace() for g in classes.representatives]


def test_phi_names():
    assert parse_phi("phi_8,1^9") == (8, 9, 1)
    assert parse_phi("phi_6^1") == (6, 1, 0)
    assert latex_name("phi_8,1^9") == "\\phi_{8,1}^{9}"
    assert standard_order(["phi_2^1", "phi_1^6", "phi_1,1^3", "phi_1^0"]) == [
        "phi_1^0", "phi_1^6", "phi_1,1^3", "phi_2^1"]


def check_published(name):
    pub = published()[name]
    t = char_table(name).reordered(pub["irreducibles"])
    dec = decompose(class_table(name), t)
    assert dec.rows == pub["degrees"]
    return dec


def test_g2_decomposition():
    dec = check_published("G2")
    assert dec.total() == [5, 1, 1, 1, 4, 6]


def test_f4_decomposition():
    check_published("F4")


def test_decomposition_degrees_match_poincare():
    for name in ["G2", "F4"]:
        t = char_table(name)
        dec = decompose(class_table(name), t)
        dims = [sum(m * d for m, d in zip(row, t.degrees)) for row in dec.rows]
        assert dims == class_table(name).padded()[0]


def test_decompose_rejects_bad_values():
    t = symmetric_group_table(3)
    with pytest.raises(NonIntegralMultiplicity):
        decompose([[1], [0], [0]], t)
    with pytest.raises(NegativeMultiplicity):
        decompose([[-1], [-1], [-1]], t)


def test_decomposition_json():
    dec = decompose(class_table("G2"), char_table("G2"))
    data = json.loads(json.dumps(dec.to_json()))
    assert data["irreducibles"] == char_table("G2").names


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_type_a_oracles(n):
    name = "A%d" % n
    t = char_table(name)
    o = an_oracles(n, t)
    ct = class_table(name)
    assert ct.padded()[0] == o["poincare"]
    assert [poly_sum(c) for c in ct.coeffs] == o["total_character"]
    assert decompose(ct, t).total() == o["total_decomposition"]
    # regular character plus n copies of the induced one
    reg = [factorial(n + 1) if i == 0 else 0 for i in range(len(t))]
    assert [r + n * x for r, x in zip(reg, o["induced_character"])] == o["total_character"]
    # multiplicities of Ind are (deg + chi(s)) / 2; compare with <chi, Ind> directly
    assert [t.inner(chi, o["induced_character"]) for chi in t.irreducibles] == [
        (m - chi[0]) // n for m, chi in zip(o["total_decomposition"], t.irreducibles)]


def poly_sum(p):
    return sum(p)


def test_arnold_is_braid_arrangement():
    assert an_oracles(3)["arnold"] == [1, 6, 11, 6]


def test_roundtrip(tmp_path):
    t = char_table("F4")
    path = tmp_path / "f4.json"
    save_table(t, str(path))
    back = load_table(str(path), classes_of("F4"))
    assert back.names == t.names and back.irreducibles == t.irreducibles
    assert back.metadata["alignment"] == t.metadata["alignment"]


def test_roundtrip_realigns_permuted_columns(tmp_path):
    t = char_table("B3")
    data = table_to_json(t)
    perm = list(reversed(range(len(data["classes"]))))
    data["classes"] = [data["classes"][i] for i in perm]
    for irr in data["irreducibles"]:
        irr["values"] = [irr["values"][i] for i in perm]
    path = tmp_path / "b3.json"
    path.write_text(json.dumps(data))
    back = load_table(str(path), classes_of("B3"))
    assert back.irreducibles == t.irreducibles


def test_corrupted_value(tmp_path):
    data = table_to_json(char_table("G2"))
    data["irreducibles"][2]["values"][3] += 1
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    with pytest.raises(OrthogonalityError):
        load_table(str(path))


def test_schema_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"classes": [{"size": 1}]}))
    with pytest.raises(SchemaError):
        load_table(str(path))
    path.write_text("{not json")
    with pytest.raises(SchemaError):
        load_table(str(path))
    data = table_to_json(char_table("G2"))
    data["irreducibles"][0]["values"].pop()
    path.write_text(json.dumps(data))
    with pytest.raises(SchemaError):
        load_table(str(path))


def test_alignment_errors(tmp_path):
    data = table_to_json(char_table("G2"))
    path = tmp_path / "g2.json"
    path.write_text(json.dumps(data))
    with pytest.raises(ClassAlignmentError):
        load_table(str(path), classes_of("B2"))
    for c in data["classes"]:
        del c["invariants"]
    path.write_text(json.dumps(data))
    with pytest.raises(ClassAlignmentError):
        load_table(str(path), classes_of("G2"))


@pytest.mark.parametrize("name", ["F4", "E6"])
def test_dixon_matches_packaged(name):
    classes = classes_of(name)
    packaged = char_table(name)
    assert packaged.metadata["source"].endswith("%s.json" % name)
    computed = label_phi(dixon_table(classes), classes)
    assert sorted(computed.irreducibles) == sorted(packaged.irreducibles)
    for chi_name, row in zip(packaged.names, packaged.irreducibles):
        d, e, _ = parse_phi(chi_name)
        assert computed.metadata["fake_degree_e"][computed.names[computed.irreducibles.index(row)]] == e
        assert row[0] == d


def test_e6_degrees():
    assert sorted(char_table("E6").degrees) == sorted(
        [1, 1, 6, 6, 10, 15, 15, 15, 15, 20, 20, 20, 24, 24, 30, 30, 60, 60, 60, 64, 64, 80, 81, 81, 90])


def test_small_group_enumeration_dixon():
    classes = conjugacy_classes(enumerate_group(system("B2")))
    t = label_phi(dixon_table(classes), classes)
    assert sorted(t.degrees) == [1, 1, 1, 1, 2]
    assert "phi_2^1" in t.names
