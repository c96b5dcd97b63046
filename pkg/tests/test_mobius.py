from math import factorial

import pytest

from posetcoh.errors import HypothesisFailed, NotComparable, NotPure, PosetCohError
from posetcoh.fixtures import get_fixture
from posetcoh.functor import CO, CONTRA, Functor, atomic_functor, extension_by_zero_constant
from posetcoh.linalg import QQ, Matrix, PrimeField
from posetcoh.mobius import atom_sequence_check, mobius, mobius_to, verify_atomic_cohomology
from posetcoh.poset import Poset


def test_mobius_of_standard_lattices():
    for n in (2, 3, 4):
        b = get_fixture(f"boolean-{n}").poset
        assert mobius(b, b.bottom, b.top) == (-1) ** n
        pi = get_fixture(f"partition-{n}").poset
        assert mobius(pi, pi.bottom, pi.top) == (-1) ** (n - 1) * factorial(n - 1)
    g = get_fixture("gamma1").poset
    assert mobius(g, "bottom", "top") == -2


def test_mobius_basics():
    b = get_fixture("boolean-3").poset
    assert mobius(b, "{1}", "{1}") == 1
    assert mobius(b, "{1}", "{1,2}") == -1
    with pytest.raises(NotComparable):
        mobius(b, "{1}", "{2}")
    values = mobius_to(b, b.top)
    assert sum(values.values()) == 0


def test_atomic_cohomology_matches_mobius():
    fx = get_fixture("partition-3")
    report = verify_atomic_cohomology(fx.poset, fx.family, fx.poset.bottom, 1)
    assert report.ok and report.expected == {1: 2}
    report = verify_atomic_cohomology(fx.poset, fx.family, fx.poset.bottom, 2, field=PrimeField(3))
    assert report.ok and report.cohomology == {1: 4}


def test_atomic_check_needs_purity_and_a_proper_element():
    p = Poset(["0", "x", "y", "z", "1"], [("0", "x"), ("x", "y"), ("y", "1"), ("0", "z"), ("z", "1")])
    with pytest.raises(NotPure):
        verify_atomic_cohomology(p, None, "x", 1)
    b = get_fixture("boolean-2").poset
    with pytest.raises(PosetCohError):
        verify_atomic_cohomology(b, None, b.top, 1)


def test_atom_sequence_on_boolean_lattices():
    ran = 0
    for name in ("boolean-3", "boolean-4"):
        fx = get_fixture(name)
        poset = fx.poset
        atoms = list(poset.upper_covers(poset.bottom))
        for variance in (CONTRA, CO):
            f = extension_by_zero_constant(poset, QQ, variance=variance)
            for k in range(1, len(atoms) + 1):
                try:
                    report = atom_sequence_check(poset, fx.family, f, atoms[:k])
                except HypothesisFailed:
                    continue
                ran += 1
                assert report.alternating_sum == 0, (name, variance, k, report.terms)
                assert report.short_exact in (None, True)
    assert ran == 8


def test_atom_sequence_hypothesis_failure_is_reported():
    fx = get_fixture("boolean-3")
    poset = fx.poset
    # zero maps from the atoms make the restriction at a coatom fail to be onto
    dims = {e: 1 for e in poset.proper_part()}
    maps = {}
    for q, p in poset.covers:
        if q in dims and p in dims:
            maps[(q, p)] = Matrix.zeros(QQ, 1, 1)
    f = Functor(poset, CONTRA, QQ, dims, maps)
    with pytest.raises(HypothesisFailed):
        atom_sequence_check(poset, fx.family, f, ["{1}"])


def test_atom_sequence_rejects_non_atoms_and_nonzero_bottom():
    fx = get_fixture("boolean-3")
    poset = fx.poset
    f = extension_by_zero_constant(poset, QQ)
    with pytest.raises(PosetCohError):
        atom_sequence_check(poset, fx.family, f, ["{1,2}"])
    g = atomic_functor(poset, poset.bottom, 1, CONTRA, QQ)
    with pytest.raises(HypothesisFailed):
        atom_sequence_check(poset, fx.family, g, ["{1}"])
