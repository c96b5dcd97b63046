from math import comb

import pytest

from posetcoh.arrangements import (TOP, Arrangement, IntersectionLattice, arrangement_ordering,
                                   braid_arrangement, cl3_violations, coordinate_arrangement,
                                   dij_formula, dij_table, formula_domain, in_region, truncation)
from posetcoh.derived import homology, nerve_homology_oracle
from posetcoh.errors import FormatError, OutOfFormulaDomain
from posetcoh.linalg import QQ
from posetcoh.mobius import mobius
from posetcoh.shelling import verify_ordering


def generic_planes():
    return Arrangement(3, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])


def test_lattice_shapes():
    assert len(IntersectionLattice(coordinate_arrangement(3)).poset) == 8
    braid = IntersectionLattice(braid_arrangement(4))
    assert len(braid.poset) == 15
    assert braid.degree == 3
    assert braid.flat(braid.bottom).dim == 1
    assert mobius(braid.poset, braid.bottom, TOP) == -6


def test_invalid_arrangements():
    with pytest.raises(FormatError):
        Arrangement(2, [[1, 0], [2, 0]])
    with pytest.raises(FormatError):
        Arrangement(2, [[0, 0]])
    with pytest.raises(FormatError):
        Arrangement(2, [[1, 0, 0]])


@pytest.mark.parametrize("build", [lambda: coordinate_arrangement(4), lambda: braid_arrangement(4),
                                   generic_planes])
def test_basis_first_ordering(build):
    lattice = IntersectionLattice(build())
    family = arrangement_ordering(lattice)
    assert verify_ordering(lattice.poset, family).ok
    assert cl3_violations(lattice, family) == []


def test_exterior_powers_are_functors():
    lattice = IntersectionLattice(braid_arrangement(4))
    for j in range(5):
        f = lattice.exterior_power(j)
        assert f.violations() == []
        assert f.dim(TOP) == comb(4, j)


def test_tables():
    assert dij_table(IntersectionLattice(coordinate_arrangement(3))) == {0: [1, 3, 3], 1: [0, 0, 0]}
    assert dij_table(IntersectionLattice(braid_arrangement(4))) == {0: [1, 4, 9, 6], 1: [0, 2, 2, 0]}
    assert dij_table(IntersectionLattice(generic_planes())) == {0: [1, 3, 4], 1: [0, 1, 0]}
    assert dij_table(IntersectionLattice(braid_arrangement(3))) == {0: [1, 4, 3]}


def test_table_cross_check_with_oracle():
    lattice = IntersectionLattice(coordinate_arrangement(4))
    dij_table(lattice, cross_check=True)
    f = lattice.exterior_power(2)
    assert homology(f) == nerve_homology_oracle(f)


def test_formula():
    lattice = IntersectionLattice(generic_planes())
    assert dij_formula(lattice, 1, 1) == 1
    assert dij_formula(lattice, 0, 0) == 1
    assert dij_formula(lattice, 0, 2) == 4
    assert dij_formula(lattice, 1, 0) == 0  # outside the region
    assert (1, 1) in formula_domain(lattice)
    braid = IntersectionLattice(braid_arrangement(4))
    # not essential, so the band has no closed form
    assert in_region(braid, 1, 1)
    with pytest.raises(OutOfFormulaDomain):
        dij_formula(braid, 1, 1)


def test_truncation_adds_a_zero_bottom():
    lattice = IntersectionLattice(coordinate_arrangement(3))
    f = truncation(lattice, 1, 1)
    assert f.poset.bottom == "0" and f.dim("0") == 0
    assert len(f.poset) == 1 + 3 + 3 + 1
    with pytest.raises(FormatError):
        truncation(lattice, 1, 1, bottom="V")


def test_json_form():
    arr = Arrangement(2, [["1", "-1"], [0, 1]], QQ)
    assert arr.to_json() == {"ambient_dim": 2, "hyperplanes": [["1", "-1"], ["0", "1"]]}
