"""Möbius function, atomic functors and the dimension checks built on them."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable

from .derived import cohomology, homology
from .errors import HypothesisFailed, NotComparable, NotPure, OrderingInvalid, PosetCohError
from .functor import CO, CONTRA, Functor, atomic_functor
from .linalg import Field, QQ, stack_h, stack_v
from .poset import Poset
from .shelling import OrderingFamily, c_set, verify_ordering
from .stability import check_costability, check_stability, poset_degree


def mobius(poset: Poset, p: str, q: str) -> int:
    """``mu(p, q)``: 1 on the diagonal, else minus the sum of ``mu(r, q)`` over ``p < r <= q``."""
    if not poset.leq(p, q):
        raise NotComparable(f"{p!r} is not below {q!r}")
    return mobius_to(poset, q)[p]


def mobius_to(poset: Poset, q: str) -> dict[str, int]:
    """``mu(p, q)`` for every ``p <= q``, computed top-down and cached on the poset."""
    cache = poset.__dict__.setdefault("_mobius_cache", {})
    hit = cache.get(q)
    if hit is not None:
        return hit
    below = poset.strictly_below(q)
    values = {q: 1}
    for p in sorted(below, key=lambda e: -poset.degree(e)):
        values[p] = -sum(values[r] for r in values if poset.lt(p, r))
    cache[q] = values
    return values


@dataclass
class AtomicReport:
    element: str
    multiplicity: int
    expected: dict[int, int]
    cohomology: dict[int, int]
    homology: dict[int, int]

    @property
    def ok(self) -> bool:
        return self.cohomology == self.expected and self.homology == self.expected


def _require_pure(poset: Poset) -> None:
    pure, witness = poset.is_pure()
    if not pure:
        short, long = witness
        raise NotPure(f"maximal chains of lengths {len(short) - 1} and {len(long) - 1}")


def verify_atomic_cohomology(poset: Poset, family: OrderingFamily | None, p: str, m: int,
                             field: Field = QQ, verified: bool = False) -> AtomicReport:
    """Compare both (co)homologies of the atomic functor at ``p`` with ``m |mu(p, top)|``
    placed in degree ``cd(p) - 1``."""
    _require_pure(poset)
    top = poset.require_top()
    if not verified and family is not None:
        if not verify_ordering(poset, family).ok:
            raise OrderingInvalid("ordering fails the shelling axioms")
    if p == top:
        raise PosetCohError("the atomic functor must sit below the top")
    value = m * abs(mobius(poset, p, top))
    expected = {poset.codegree(p) - 1: value} if value else {}
    coh = cohomology(atomic_functor(poset, p, m, CONTRA, field))
    hom = homology(atomic_functor(poset, p, m, CO, field))
    return AtomicReport(p, m, expected, coh, hom)


@dataclass
class AtomSequenceReport:
    """Dimensions of the terms of the atom exact sequence.

    ``terms`` lists the sequence left to right; ``alternating_sum`` must vanish.
    ``short_exact`` is ``None`` unless the extra stability needed for the
    three-term version was verified.
    """

    variance: str
    atoms: list[str]
    terms: list[tuple[str, int]]
    alternating_sum: int
    short_exact: bool | None = None
    short_exact_terms: list[tuple[str, int]] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.alternating_sum == 0 and self.short_exact is not False


def _check_atom_hypothesis(poset: Poset, family: OrderingFamily, f: Functor,
                           atoms: set[str], d: int) -> None:
    for chain in poset.unrefinable_top_chains(d - 2):
        rest = [a for a in poset.sorted(c_set(poset, family, chain)) if a not in atoms]
        if not rest:
            continue
        c0 = chain[0]
        if f.variance == CONTRA:
            m = stack_v(f.field, [f.map(a, c0) for a in rest], f.dim(c0))
            if m.rank() != m.rows:
                raise HypothesisFailed(chain, "restriction to the remaining atoms is not onto")
        else:
            m = stack_h(f.field, [f.map(a, c0) for a in rest], f.dim(c0))
            if m.rank() != m.cols:
                raise HypothesisFailed(chain, "sum of the remaining atoms does not inject")


def atom_sequence_check(poset: Poset, family: OrderingFamily, f: Functor,
                        atoms: Iterable[str], verified: bool = False) -> AtomSequenceReport:
    """Dimension bookkeeping for the exact sequence relating the top two
    (co)homology groups to the atoms in ``atoms``.

    The set ``P - A`` is taken without the top.  Because ``F`` vanishes at the
    bottom, including or omitting the bottom does not change any group.
    """
    _require_pure(poset)
    bottom, top = poset.require_bounded()
    d = poset_degree(poset)
    if d < 3:
        raise PosetCohError("the atom sequence needs degree at least 3")
    if f.dim(bottom):
        raise HypothesisFailed((bottom,), "the functor must vanish at the bottom")
    atoms = list(atoms)
    atom_set = set(atoms)
    for a in atoms:
        if bottom not in poset.lower_covers(a):
            raise PosetCohError(f"{a!r} is not an atom")
    if not verified and not verify_ordering(poset, family).ok:
        raise OrderingInvalid("ordering fails the shelling axioms")
    _check_atom_hypothesis(poset, family, f, atom_set, d)

    whole = [e for e in poset.elements if e != top]
    minus_a = [e for e in whole if e not in atom_set]
    middle = sum(f.dim(a) * abs(mobius(poset, a, top)) for a in atoms)
    if f.variance == CONTRA:
        h_all = cohomology(f, whole)
        h_part = cohomology(f, minus_a)
        terms = [
            (f"H^{d - 3}(P-top)", h_all.get(d - 3, 0)),
            (f"H^{d - 3}(P-A)", h_part.get(d - 3, 0)),
            ("atoms", middle),
            (f"H^{d - 2}(P-top)", h_all.get(d - 2, 0)),
        ]
    else:
        h_all = homology(f, whole)
        h_part = homology(f, minus_a)
        terms = [
            (f"H_{d - 2}(P-top)", h_all.get(d - 2, 0)),
            ("atoms", middle),
            (f"H_{d - 3}(P-A)", h_part.get(d - 3, 0)),
            (f"H_{d - 3}(P-top)", h_all.get(d - 3, 0)),
        ]
    alt = sum((-1) ** k * v for k, (_, v) in enumerate(terms))
    report = AtomSequenceReport(f.variance, atoms, terms, alt)
    if d >= 4:
        check = check_stability if f.variance == CONTRA else check_costability
        if check(poset, family, f, d - 3, verified=True).ok:
            if f.variance == CONTRA:
                three = [terms[1], terms[2], terms[3]]
            else:
                three = [terms[0], terms[1], terms[2]]
            report.short_exact_terms = three
            report.short_exact = three[0][1] + three[2][1] == three[1][1]
    return report
