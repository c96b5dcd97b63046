"""Central hyperplane arrangements: intersection lattices, basis-first coatom
orderings, exterior-power functors and the homology table ``d_{i,j}``."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .derived import homology, nerve_homology_oracle
from .errors import FormatError, OutOfFormulaDomain
from .functor import CO, Functor
from .linalg import QQ, Field, Matrix, compound, kernel_basis, solve, stack_v
from .mobius import mobius
from .poset import Chain, Poset
from .shelling import OrderingFamily, all_top_chains, c_set
from .stability import poset_degree

TOP = "V"


@dataclass
class Arrangement:
    """Hyperplanes of ``K^n`` given by their normal covectors."""

    ambient_dim: int
    normals: list[list]
    field: Field = QQ

    def __post_init__(self):
        rows = []
        for k, v in enumerate(self.normals):
            if len(v) != self.ambient_dim:
                raise FormatError(f"hyperplane {k + 1} has {len(v)} coordinates, "
                                  f"expected {self.ambient_dim}")
            row = [self.field(x) for x in v]
            if all(x == 0 for x in row):
                raise FormatError(f"hyperplane {k + 1} has a zero normal")
            rows.append(row)
        for a in range(len(rows)):
            for b in range(a):
                if Matrix(self.field, 2, self.ambient_dim, [rows[a], rows[b]]).rank() < 2:
                    raise FormatError(f"hyperplanes {b + 1} and {a + 1} coincide")
        self.normals = rows

    @property
    def names(self) -> list[str]:
        return [f"h{k + 1}" for k in range(len(self.normals))]

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim,
                "hyperplanes": [[self.field.format(x) for x in v] for v in self.normals]}


def coordinate_arrangement(n: int, field: Field = QQ) -> Arrangement:
    return Arrangement(n, [[1 if k == i else 0 for k in range(n)] for i in range(n)], field)


def braid_arrangement(n: int, field: Field = QQ) -> Arrangement:
    """Hyperplanes ``x_a = x_b`` in ``K^n``."""
    normals = []
    for a in range(n):
        for b in range(a + 1, n):
            v = [0] * n
            v[a], v[b] = 1, -1
            normals.append(v)
    return Arrangement(n, normals, field)


@dataclass
class Flat:
    name: str
    hyperplanes: frozenset[int]
    annihilator: Matrix  # rows span the covectors vanishing on the flat
    basis: Matrix  # columns form a basis of the flat
    dim: int


class IntersectionLattice:
    """Flats of an arrangement ordered by inclusion.

    A flat is named by the hyperplanes containing it, e.g. ``h1^h3``; the
    whole space is ``V``.  Elements are listed by increasing dimension.
    """

    def __init__(self, arrangement: Arrangement):
        self.arrangement = arrangement
        field = arrangement.field
        n = arrangement.ambient_dim
        normals = arrangement.normals
        m = len(normals)

        def closure(idx: frozenset[int]) -> frozenset[int]:
            ann = Matrix(field, len(idx), n, [normals[k] for k in sorted(idx)])
            r = ann.rank()
            return frozenset(k for k in range(m)
                             if k in idx or stack_v(field, [ann, Matrix(field, 1, n, [normals[k]])]).rank() == r)

        found = {frozenset(): None}
        frontier = [frozenset()]
        while frontier:
            nxt = []
            for s in frontier:
                for k in range(m):
                    if k in s:
                        continue
                    t = closure(s | {k})
                    if t not in found:
                        found[t] = None
                        nxt.append(t)
            frontier = nxt
        flats = []
        for s in found:
            ann = Matrix(field, len(s), n, [normals[k] for k in sorted(s)])
            basis = kernel_basis(ann)
            name = TOP if not s else "^".join(f"h{k + 1}" for k in sorted(s))
            flats.append(Flat(name, s, ann, basis, basis.cols))
        flats.sort(key=lambda f: (f.dim, -len(f.hyperplanes), sorted(f.hyperplanes)))
        self.flats = {f.name: f for f in flats}
        covers = []
        for x in flats:
            for y in flats:
                if y.dim == x.dim + 1 and y.hyperplanes < x.hyperplanes:
                    covers.append((x.name, y.name))
        self.poset = Poset([f.name for f in flats], covers)
        self.poset.require_bounded()

    @property
    def bottom(self) -> str:
        return self.poset.bottom

    @property
    def degree(self) -> int:
        return poset_degree(self.poset)

    def flat(self, name: str) -> Flat:
        return self.flats[name]

    def hyperplane_names(self) -> list[str]:
        return list(self.poset.lower_covers(TOP))

    def covector_rank(self, x: str, coatoms: Sequence[str]) -> int:
        """Dimension of the span of ``coatoms`` viewed as covectors on ``x``."""
        field = self.arrangement.field
        base = self.flats[x].annihilator
        if not coatoms:
            return 0
        rows = stack_v(field, [base] + [self.flats[y].annihilator for y in coatoms],
                       self.arrangement.ambient_dim)
        return rows.rank() - base.rank()

    def is_independent(self, x: str, coatoms: Sequence[str]) -> bool:
        return self.covector_rank(x, coatoms) == len(coatoms)

    def exterior_power(self, j: int, field: Field | None = None) -> Functor:
        """``W -> Lambda^j(W)`` with inclusions mapped to compound matrices."""
        field = field or self.arrangement.field
        dims = {name: comb(f.dim, j) for name, f in self.flats.items()}
        maps = {}
        for q, p in self.poset.covers:
            inc = solve(self.flats[p].basis, self.flats[q].basis)
            maps[(q, p)] = compound(inc, j)
        return Functor(self.poset, CO, field, dims, maps)


def _greedy_basis(lattice: IntersectionLattice, x: str, start: list[str], pool: Sequence[str]) -> list[str]:
    basis = list(start)
    for y in pool:
        if y in basis:
            continue
        if lattice.is_independent(x, basis + [y]):
            basis.append(y)
    return basis


def arrangement_ordering(lattice: IntersectionLattice) -> OrderingFamily:
    """A coatom ordering where both ``C(c)`` and a covector basis form initial segments.

    If ``C(c)`` is independent it is extended to a basis; otherwise a basis is
    picked inside it.  The rest follows in insertion order.
    """
    poset = lattice.poset
    explicit: dict[Chain, tuple[str, ...]] = {}
    family = OrderingFamily(poset, explicit)
    for chain in all_top_chains(poset):
        x = chain[0]
        coatoms = list(poset.lower_covers(x))
        cs = [y for y in coatoms if y in c_set(poset, family, chain)]
        if lattice.is_independent(x, cs):
            basis = _greedy_basis(lattice, x, cs, coatoms)
            head = cs + [y for y in basis if y not in cs]
        else:
            basis = _greedy_basis(lattice, x, [], cs)
            head = basis + [y for y in cs if y not in basis]
        order = tuple(head + [y for y in coatoms if y not in head])
        explicit[chain] = order
        family.chains[chain] = order
    return family


def cl3_violations(lattice: IntersectionLattice, family: OrderingFamily) -> list[Chain]:
    """Chains whose first ``d(c_0)`` coatoms are not a covector basis."""
    poset = lattice.poset
    bad = []
    for chain in all_top_chains(poset):
        x = chain[0]
        k = poset.degree(x)
        head = list(family.order(chain)[:k])
        if len(head) != k or not lattice.is_independent(x, head):
            bad.append(chain)
    return bad


# ---------------------------------------------------------------------------
# The d_{i,j} table


def dij_table(lattice: IntersectionLattice, max_i: int | None = None,
              max_j: int | None = None, cross_check: bool = False) -> dict[int, list[int]]:
    """``d_{i,j} = dim H_i(L - V; Lambda^j)`` as ``{i: [d_{i,0}, d_{i,1}, ...]}``."""
    n = lattice.arrangement.ambient_dim
    max_i = lattice.degree - 2 if max_i is None else max_i
    max_j = n - 1 if max_j is None else max_j
    table = {i: [0] * (max_j + 1) for i in range(max_i + 1)}
    for j in range(max_j + 1):
        f = lattice.exterior_power(j)
        h = homology(f)
        if cross_check:
            oracle = nerve_homology_oracle(f)
            if oracle != h:
                raise AssertionError(f"replacement and nerve homology differ for j={j}: {h} vs {oracle}")
        for i in range(max_i + 1):
            table[i][j] = h.get(i, 0)
    return table


def in_region(lattice: IntersectionLattice, i: int, j: int) -> bool:
    """Whether ``(i, j)`` lies in the segment or band where ``d_{i,j}`` may be nonzero."""
    n = lattice.arrangement.ambient_dim
    d = lattice.degree
    if i == 0:
        return 0 <= j <= n - 1
    return 1 <= i <= d - 2 and d - 1 <= i + j <= n - 1


def dij_formula(lattice: IntersectionLattice, i: int, j: int) -> int:
    """Closed-form value of ``d_{i,j}`` where one is available.

    Raises:
        OutOfFormulaDomain: outside the zero region, the ``i = 0`` cases and the
            band ``i + j = d - 1`` for an essential arrangement.
    """
    poset = lattice.poset
    n = lattice.arrangement.ambient_dim
    d = lattice.degree
    if not in_region(lattice, i, j):
        return 0
    if i == 0:
        if 0 <= j <= d - 2:
            return comb(n, j)
        if j == n - 1:
            return len(lattice.hyperplane_names())
        raise OutOfFormulaDomain(f"no closed form for d_(0,{j})")
    essential = lattice.flat(lattice.bottom).dim == 0
    if not (essential and 1 <= i <= d - 2 and i + j == d - 1):
        raise OutOfFormulaDomain(f"no closed form for d_({i},{j})")
    total = (-1) ** (i + 1) * comb(n, j)
    for dd in range(d - 1 - i, d):
        weight = sum(abs(mobius(poset, x, TOP)) for x in poset.elements if poset.degree(x) == dd)
        total += (-1) ** (dd - d + 1 + i) * comb(dd, j) * weight
    return total


def formula_domain(lattice: IntersectionLattice) -> list[tuple[int, int]]:
    """All ``(i, j)`` with ``0 <= i <= d - 2`` and ``0 <= j < dim V`` that have a closed form."""
    out = []
    n = lattice.arrangement.ambient_dim
    for i in range(lattice.degree - 1):
        for j in range(n):
            try:
                dij_formula(lattice, i, j)
            except OutOfFormulaDomain:
                continue
            out.append((i, j))
    return out


# ---------------------------------------------------------------------------
# The truncation used for the band entries


def truncation(lattice: IntersectionLattice, i: int, j: int, bottom: str = "0") -> Functor:
    """``Lambda^j`` on the flats of degree at least ``d - 1 - i`` with a new bottom
    element carrying the zero space."""
    poset = lattice.poset
    d = lattice.degree
    keep = [e for e in poset.elements if poset.degree(e) >= d - 1 - i]
    if bottom in poset:
        raise FormatError(f"bottom name {bottom!r} clashes with a flat")
    sub = poset.subposet(keep)
    lowest = [e for e in keep if poset.degree(e) == d - 1 - i]
    new = Poset([bottom] + list(sub.elements), [(bottom, e) for e in lowest] + list(sub.covers))
    f = lattice.exterior_power(j)
    dims = {bottom: 0, **{e: f.dim(e) for e in keep}}
    maps = {(q, p): f.maps[(q, p)] for q, p in sub.covers}
    return Functor(new, CO, f.field, dims, maps)
