import pytest

from posetcoh.errors import UnknownFixture
from posetcoh.fixtures import (fixture_names, get_fixture, mackey_fixture, mackey_fixture_names,
                               run_fixture_assertions)


@pytest.mark.parametrize("name", ["gamma1", "gamma2", "gamma7", "gamma11", "boolean-2", "boolean-3",
                                  "boolean-4", "partition-3", "partition-4", "coord-arr-3",
                                  "coord-arr-4", "braid-arr-3", "braid-arr-4"])
def test_fixture_assertions_pass(name):
    report = run_fixture_assertions(name)
    assert report.ok, [c for c in report.checks if not c.ok]


def test_unknown_names():
    for name in ("gamma3", "boolean-99", "braid-arr-1", "nonsense"):
        with pytest.raises(UnknownFixture):
            get_fixture(name)
    with pytest.raises(UnknownFixture):
        mackey_fixture("gamma2-atom")


def test_listing_and_json():
    assert "gamma1" in fixture_names()
    data = get_fixture("gamma1").to_json()
    assert data["expected_c_sets"]["b,d<top"] == ["d", "b"]
    assert data["expected_mobius"] == {"bottom<top": -2}
    assert len(mackey_fixture_names()) == 3


def test_gamma_posets_have_expected_shapes():
    g1 = get_fixture("gamma1").poset
    assert len(g1) == 11 and g1.degree(g1.top) == 3
    for name in ("gamma2", "gamma7", "gamma11"):
        p = get_fixture(name).poset
        assert len(p) == 8 and len(p.lower_covers(p.top)) == 3
