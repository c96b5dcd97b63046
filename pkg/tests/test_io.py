import json

import pytest

from posetcoh import io
from posetcoh.errors import FormatError, NotFunctorial
from posetcoh.fixtures import get_fixture, mackey_fixture
from posetcoh.functor import CONTRA, constant_functor
from posetcoh.linalg import QQ, PrimeField


def test_poset_round_trip():
    p = get_fixture("gamma2").poset
    assert io.poset_from_json(json.loads(json.dumps(p.to_json()))) == p
    assert io.poset_from_json("boolean-2") == get_fixture("boolean-2").poset
    assert io.poset_from_json({"fixture": "boolean-2"}) == get_fixture("boolean-2").poset


def test_bad_poset_documents():
    with pytest.raises(FormatError):
        io.poset_from_json({"elements": ["a<b"], "covers": []})
    with pytest.raises(FormatError):
        io.poset_from_json({"elements": ["a"]})
    with pytest.raises(FormatError):
        io.poset_from_json({"elements": ["a", "b"], "covers": [["a"]]})


def test_functor_round_trip():
    f = constant_functor(get_fixture("boolean-3").poset, CONTRA, PrimeField(5), dim=2)
    g = io.functor_from_json(json.loads(json.dumps(f.to_json())))
    assert g.field == PrimeField(5)
    assert g.dims == f.dims and g.maps == f.maps


def test_functor_with_fixture_reference_and_fractions():
    doc = {"poset": "boolean-1", "variance": "co", "dims": {"{}": 1, "{1}": 1},
           "maps": {"{}<{1}": [["-1/2"]]}}
    f = io.functor_from_json(doc)
    assert f.map("{}", "{1}").tolist()[0][0] == QQ("-1/2")


def test_non_functorial_document():
    doc = {"poset": {"elements": ["0", "a", "b", "1"],
                     "covers": [["0", "a"], ["0", "b"], ["a", "1"], ["b", "1"]]},
           "dims": {"0": 1, "a": 1, "b": 1, "1": 1},
           "maps": {"0<a": [["1"]], "0<b": [["2"]], "a<1": [["1"]], "b<1": [["1"]]}}
    with pytest.raises(NotFunctorial):
        io.functor_from_json(doc)


def test_bad_matrices():
    with pytest.raises(FormatError):
        io.matrix_from_json(QQ, [["1", "2"]], (2, 1))
    with pytest.raises(FormatError):
        io.matrix_from_json(QQ, [[1.5]], (1, 1))
    with pytest.raises(FormatError):
        io.matrix_from_json(QQ, [["x"]], (1, 1))
    assert io.matrix_from_json(QQ, [], (0, 3)).shape == (0, 3)


def test_ordering_and_arrangement_documents():
    fx = get_fixture("gamma1")
    fam = io.ordering_from_json(fx.poset, fx.family.to_json())
    assert fam.order(("top",)) == fx.family.order(("top",))
    with pytest.raises(FormatError):
        io.ordering_from_json(fx.poset, {})
    arr = io.arrangement_from_json({"ambient_dim": 2, "hyperplanes": [["1", "−1"], ["0", "1"]]})
    assert arr.normals[0][1] == -1
    with pytest.raises(FormatError):
        io.arrangement_from_json({"ambient_dim": 0, "hyperplanes": []})


def test_mackey_round_trip():
    m = mackey_fixture("gamma1-atom")
    again = io.mackey_from_json(json.loads(json.dumps(m.to_json())))
    assert again.transfers == m.transfers
    assert again.is_weak_mackey()


def test_dump_json_is_compact_for_rows():
    text = io.dump_json({"0": [1, 3, 3], "m": [[1, 0], [0, 1]]})
    assert '"0": [1, 3, 3]' in text and "[1, 0]" in text
    assert json.loads(text) == {"0": [1, 3, 3], "m": [[1, 0], [0, 1]]}


def test_load_json_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(FormatError):
        io.load_json(bad)
    with pytest.raises(FormatError):
        io.load_json(tmp_path / "missing.json")
    with pytest.raises(FormatError):
        io.resolve_input(str(tmp_path / "missing.json"))
