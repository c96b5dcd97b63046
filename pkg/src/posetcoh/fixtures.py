"""Built-in posets with orderings and known values."""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations
from math import factorial

from .errors import UnknownFixture
from .mobius import mobius
from .poset import Chain, Poset, chain_str, parse_chain
from .shelling import OrderingFamily, c_set, find_ordering, verify_ordering

MAX_BOOLEAN = 6
MAX_PARTITION = 5
MAX_ARRANGEMENT = 5


@dataclass
class Fixture:
    name: str
    poset: Poset
    family: OrderingFamily | None = None
    expected_c_sets: dict[Chain, frozenset[str]] = dc_field(default_factory=dict)
    expected_mobius: dict[tuple[str, str], int] = dc_field(default_factory=dict)
    description: str = ""
    lattice: object | None = None  # the intersection lattice for arrangement fixtures

    def to_json(self) -> dict:
        out = {"name": self.name, "description": self.description, "poset": self.poset.to_json()}
        if self.family is not None:
            out["ordering"] = self.family.to_json()
        if self.expected_c_sets:
            out["expected_c_sets"] = {chain_str(c): self.poset.sorted(s)
                                      for c, s in self.expected_c_sets.items()}
        if self.expected_mobius:
            out["expected_mobius"] = {f"{p}<{q}": v for (p, q), v in self.expected_mobius.items()}
        return out


@dataclass
class FixtureCheck:
    label: str
    ok: bool
    detail: str = ""


@dataclass
class FixtureReport:
    name: str
    checks: list[FixtureCheck]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


# ---------------------------------------------------------------------------
# Families


def boolean_poset(n: int) -> Poset:
    def name(s):
        return "{" + ",".join(str(x) for x in s) + "}"

    subsets = [c for k in range(n + 1) for c in combinations(range(1, n + 1), k)]
    covers = [(name(a), name(b)) for a in subsets for b in subsets
              if len(b) == len(a) + 1 and set(a) < set(b)]
    return Poset([name(s) for s in subsets], covers)


def _set_partitions(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


def partition_poset(n: int) -> Poset:
    """Set partitions of ``{1..n}`` ordered by refinement, finest partition at the bottom."""

    def canon(p):
        return tuple(sorted(tuple(sorted(b)) for b in p))

    def name(p):
        return "|".join("".join(str(x) for x in b) for b in p)

    parts = sorted({canon(p) for p in _set_partitions(list(range(1, n + 1)))},
                   key=lambda p: (-len(p), p))
    covers = []
    for p in parts:
        for a, b in combinations(range(len(p)), 2):
            merged = [blk for k, blk in enumerate(p) if k not in (a, b)] + [p[a] + p[b]]
            covers.append((name(p), name(canon(merged))))
    return Poset([name(p) for p in parts], covers)


def _gamma1() -> Fixture:
    atoms = ["a", "c", "d", "b"]
    coatoms = ["a,c", "a,d", "b,c", "b,d", "c,d"]
    covers = [("bottom", a) for a in atoms]
    covers += [(a, h) for h in coatoms for a in atoms if a in h.split(",")]
    covers += [(h, "top") for h in coatoms]
    poset = Poset(["bottom"] + atoms + coatoms + ["top"], covers)
    family = OrderingFamily(poset, global_order=coatoms + ["a", "c", "d", "b"])
    expected = {
        ("a,c", "top"): frozenset(),
        ("a,d", "top"): frozenset({"a"}),
        ("b,c", "top"): frozenset({"c"}),
        ("b,d", "top"): frozenset({"b", "d"}),
        ("c,d", "top"): frozenset({"c", "d"}),
    }
    return Fixture("gamma1", poset, family, expected, {("bottom", "top"): -2},
                   "four atoms, five coatoms, coatoms ordered a,c < a,d < b,c < b,d < c,d")


def _gamma_triangle(name: str, low: str, third: str) -> Fixture:
    """The shape shared by the degree-3 posets with three coatoms over a single bottom."""
    mid = ["a,m", "s,v", f"{low},{third}"]
    coatoms = ["a,m,s,v", f"a,m,{third}", f"s,v,{third}"]
    covers = [(low, x) for x in mid]
    covers += [("a,m", "a,m,s,v"), ("a,m", f"a,m,{third}"),
               ("s,v", "a,m,s,v"), ("s,v", f"s,v,{third}"),
               (f"{low},{third}", f"s,v,{third}"), (f"{low},{third}", f"a,m,{third}")]
    covers += [(h, "top") for h in coatoms]
    poset = Poset([low] + mid + coatoms + ["top"], covers)
    order = [f"s,v,{third}", f"a,m,{third}", "a,m,s,v", f"{low},{third}", "a,m", "s,v"]
    family = OrderingFamily(poset, global_order=order)
    expected = {
        (f"s,v,{third}", "top"): frozenset(),
        (f"a,m,{third}", "top"): frozenset({f"{low},{third}"}),
        ("a,m,s,v", "top"): frozenset({"a,m", "s,v"}),
    }
    return Fixture(name, poset, family, expected, {},
                   f"single bottom {low}, three coatoms ordered s,v,{third} < a,m,{third} < a,m,s,v")


def _arrangement_fixture(name: str, arrangement) -> Fixture:
    from .arrangements import TOP, IntersectionLattice, arrangement_ordering

    lattice = IntersectionLattice(arrangement)
    poset = lattice.poset
    rank = lattice.degree
    n_mu = (-1) ** rank * _mobius_sign_free(name, rank)
    return Fixture(name, poset, arrangement_ordering(lattice), {},
                   {(poset.bottom, TOP): n_mu}, f"intersection lattice of {len(arrangement.normals)} hyperplanes",
                   lattice)


def _mobius_sign_free(name: str, rank: int) -> int:
    # coordinate lattices are Boolean, braid lattices are partition lattices
    return 1 if name.startswith("coord") else factorial(rank)


_PATTERN = re.compile(r"^(boolean|partition|coord-arr|braid-arr)-(\d+)$")


def fixture_names() -> list[str]:
    return ["boolean-n", "partition-n", "gamma1", "gamma2", "gamma7", "gamma11",
            "coord-arr-n", "braid-arr-n"]


@lru_cache(maxsize=None)
def get_fixture(name: str) -> Fixture:
    """Look up a fixture, e.g. ``gamma1``, ``boolean-3`` or ``braid-arr-4``."""
    if name == "gamma1":
        return _gamma1()
    if name == "gamma2":
        return _gamma_triangle("gamma2", "am", "u")
    if name in ("gamma7", "gamma11"):
        return _gamma_triangle(name, "ma", "w")
    m = _PATTERN.match(name)
    if not m:
        raise UnknownFixture(name)
    kind, n = m.group(1), int(m.group(2))
    if kind == "boolean":
        if not 1 <= n <= MAX_BOOLEAN:
            raise UnknownFixture(name)
        poset = boolean_poset(n)
        return Fixture(name, poset, find_ordering(poset), {},
                       {(poset.bottom, poset.top): (-1) ** n}, f"subsets of a {n}-element set")
    if kind == "partition":
        if not 1 <= n <= MAX_PARTITION:
            raise UnknownFixture(name)
        poset = partition_poset(n)
        return Fixture(name, poset, find_ordering(poset), {},
                       {(poset.bottom, poset.top): (-1) ** (n - 1) * factorial(n - 1)},
                       f"set partitions of a {n}-element set under refinement")
    from .arrangements import braid_arrangement, coordinate_arrangement

    if not 1 <= n <= MAX_ARRANGEMENT or (kind == "braid-arr" and n < 2):
        raise UnknownFixture(name)
    if kind == "coord-arr":
        return _arrangement_fixture(name, coordinate_arrangement(n))
    fx = _arrangement_fixture(name, braid_arrangement(n))
    return fx


def run_fixture_assertions(name: str) -> FixtureReport:
    fx = get_fixture(name)
    poset = fx.poset
    checks = []
    if fx.family is None:
        checks.append(FixtureCheck("ordering exists", False, "no ordering found"))
    else:
        rep = verify_ordering(poset, fx.family)
        checks.append(FixtureCheck("ordering passes CL1 and CL2", rep.ok, "; ".join(rep.describe()[:3])))
        for chain, expected in fx.expected_c_sets.items():
            got = c_set(poset, fx.family, chain)
            checks.append(FixtureCheck(
                f"C({chain_str(chain)})", got == expected,
                f"expected {poset.sorted(expected)}, got {poset.sorted(got)}"))
    for (p, q), value in fx.expected_mobius.items():
        got = mobius(poset, p, q)
        checks.append(FixtureCheck(f"mu({p},{q})", got == value, f"expected {value}, got {got}"))
    return FixtureReport(name, checks)


# ---------------------------------------------------------------------------
# Mackey functors


def _first_coordinate_transfers(g) -> dict:
    """Transfers ``G(j) -> G(i)`` that keep the first coordinate and drop the rest."""
    from .linalg import Matrix

    out = {}
    poset = g.poset
    for i in poset.elements:
        for j in poset.strictly_below(i):
            rows = [[g.field(1) if (r, c) == (0, 0) else g.field(0) for c in range(g.dim(j))]
                    for r in range(g.dim(i))]
            out[(j, i)] = Matrix(g.field, g.dim(i), g.dim(j), rows)
    return out


def mackey_fixture_names() -> list[str]:
    return ["gamma1-coatom", "gamma1-atom", "boolean2-swap"]


def mackey_fixture(name: str, field=None):
    """Weak Mackey functors used to exercise the quasi-unit vanishing test.

    ``gamma1-coatom`` and ``gamma1-atom`` add an extra line at ``a,c`` or at
    ``a`` to the constant functor on the whole of ``gamma1``; transfers keep
    the constant coordinate.  ``boolean2-swap`` is the constant ``K^2`` on the
    square with every transfer swapping the two coordinates.
    """
    from .functor import CONTRA, atomic_functor, constant_functor, direct_sum
    from .linalg import QQ, Matrix
    from .stability import MackeyFunctor

    field = field or QQ
    if name in ("gamma1-coatom", "gamma1-atom"):
        poset = get_fixture("gamma1").poset
        extra = "a,c" if name == "gamma1-coatom" else "a"
        g = direct_sum(constant_functor(poset, CONTRA, field),
                       atomic_functor(poset, extra, 1, CONTRA, field))
        return MackeyFunctor(g, _first_coordinate_transfers(g))
    if name == "boolean2-swap":
        poset = get_fixture("boolean-2").poset
        g = constant_functor(poset, CONTRA, field, dim=2)
        swap = Matrix.from_rows(field, [[0, 1], [1, 0]])
        return MackeyFunctor(g, {(j, i): swap for i in poset.elements for j in poset.strictly_below(i)})
    raise UnknownFixture(name)
