import pytest

from posetcoh.errors import MissingCoverMap, NotBelow, NotFunctorial, ShapeMismatch, VarianceError
from posetcoh.fixtures import boolean_poset
from posetcoh.functor import (CO, CONTRA, Functor, atomic_functor, constant_functor, direct_sum,
                              extension_by_zero_constant)
from posetcoh.linalg import QQ, Matrix
from posetcoh.poset import Poset


@pytest.fixture
def diamond():
    return Poset(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def one(x):
    return Matrix.from_rows(QQ, [[x]])


def test_constant_functor_composites(diamond):
    f = constant_functor(diamond, CONTRA, QQ, dim=2)
    assert f.map("0", "1") == Matrix.identity(QQ, 2)
    assert f.violations() == []


def test_non_commuting_square_is_rejected(diamond):
    maps = {("0", "a"): one(1), ("0", "b"): one(2), ("a", "1"): one(1), ("b", "1"): one(1)}
    with pytest.raises(NotFunctorial) as err:
        Functor(diamond, CONTRA, QQ, dict.fromkeys(diamond.elements, 1), maps)
    assert [(v.q, v.p) for v in err.value.violations] == [("0", "1")]
    f = Functor(diamond, CONTRA, QQ, dict.fromkeys(diamond.elements, 1), maps, validate=False)
    assert "0<a<1" in f.violations()[0].describe()


def test_missing_map_and_wrong_shapes(diamond):
    dims = dict.fromkeys(diamond.elements, 1)
    with pytest.raises(MissingCoverMap):
        Functor(diamond, CO, QQ, dims, {})
    with pytest.raises(ShapeMismatch):
        Functor(diamond, CO, QQ, {"a": 1, "1": 2}, {("a", "1"): one(1)})
    with pytest.raises(ShapeMismatch):
        Functor(diamond, CO, QQ, {}, {("0", "1"): Matrix.zeros(QQ, 0, 0)})
    with pytest.raises(VarianceError):
        Functor(diamond, "sideways", QQ, {}, {})


def test_zero_dimensional_maps_may_be_omitted(diamond):
    f = Functor(diamond, CO, QQ, {"a": 1}, {})
    assert f.map("a", "1").shape == (0, 1)


def test_limit_and_colimit_of_constants():
    b3 = boolean_poset(3)
    proper = b3.proper_part()
    f = constant_functor(b3, CONTRA, QQ)
    # the proper part of B_3 is connected
    assert f.limit(proper).dim == 1
    g = constant_functor(b3, CO, QQ)
    assert g.colimit(proper).dim == 1
    # three atoms with no relations among them
    atoms = list(b3.upper_covers(b3.bottom))
    assert f.limit(atoms).dim == 3 and g.colimit(atoms).dim == 3


def test_map_into_limit_and_from_colimit():
    b2 = boolean_poset(2)
    f = extension_by_zero_constant(b2, QQ)
    atoms = list(b2.upper_covers(b2.bottom))
    m, lim = constant_functor(b2, CONTRA, QQ).map_into_limit(b2.top, atoms)
    assert lim.dim == 2 and m.rank() == 1
    m2, col = constant_functor(b2, CO, QQ).map_from_colimit(b2.top, atoms)
    assert col.dim == 2 and m2.rank() == 1
    with pytest.raises(NotBelow):
        f.map_into_limit(atoms[0], [atoms[1]])


def test_atomic_and_direct_sum(diamond):
    a = atomic_functor(diamond, "a", 2, CONTRA, QQ)
    assert a.dims == {"0": 0, "a": 2, "b": 0, "1": 0}
    s = direct_sum(a, constant_functor(diamond, CONTRA, QQ))
    assert s.dim("a") == 3 and s.dim("0") == 1
    assert s.violations() == []


def test_opposite_and_transpose_keep_dimensions(diamond):
    f = constant_functor(diamond, CONTRA, QQ, dim=2)
    t = f.transpose()
    assert t.variance == CO and t.dims == f.dims
    assert t.violations() == []


def test_restrict(diamond):
    f = constant_functor(diamond, CONTRA, QQ)
    r = f.restrict(["0", "a"])
    assert list(r.poset.elements) == ["0", "a"]
