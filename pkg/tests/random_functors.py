"""Seeded generators of bounded posets and functors on them.

Functoriality is built in rather than filtered for: each new cover map is a
random linear map out of the colimit of what has been built so far, composed
with the colimit's coprojections, so every cover path agrees.
"""

from __future__ import annotations

import random

from posetcoh.functor import CO, CONTRA, Functor, diagram_colimit
from posetcoh.linalg import QQ, Matrix, PrimeField
from posetcoh.poset import Poset

F5 = PrimeField(5)
FIELDS = (QQ, F5)


def random_bounded_poset(rng: random.Random, max_size: int = 8) -> Poset:
    """A poset with a bottom ``0``, a top ``1`` and up to ``max_size - 2`` middle elements."""
    m = rng.randint(1, max_size - 2)
    names = [f"x{k}" for k in range(m)]
    density = rng.choice((0.25, 0.4, 0.6))
    less = {(a, b) for a in range(m) for b in range(a + 1, m) if rng.random() < density}
    # transitive closure on the index order, then keep only covers
    for k in range(m):
        for a in range(m):
            for b in range(m):
                if (a, k) in less and (k, b) in less:
                    less.add((a, b))
    covers = [(names[a], names[b]) for a, b in less
              if not any((a, k) in less and (k, b) in less for k in range(m))]
    minimal = [names[b] for b in range(m) if not any((a, b) in less for a in range(m))]
    maximal = [names[a] for a in range(m) if not any((a, b) in less for b in range(m))]
    covers += [("0", x) for x in minimal] + [(x, "1") for x in maximal]
    return Poset(["0"] + names + ["1"], sorted(covers))


def random_matrix(rng: random.Random, field, rows: int, cols: int) -> Matrix:
    style = rng.random()
    if style < 0.1:
        return Matrix.zeros(field, rows, cols)
    if style < 0.3 and rows and cols:
        # rank one
        u = [field(rng.randint(-2, 2)) for _ in range(rows)]
        v = [field(rng.randint(-2, 2)) for _ in range(cols)]
        return Matrix(field, rows, cols, [[a * b for b in v] for a in u])
    return Matrix(field, rows, cols, [[field(rng.randint(-2, 2)) for _ in range(cols)]
                                      for _ in range(rows)])


def _random_covariant(rng: random.Random, poset: Poset, field, dims: dict[str, int]) -> dict:
    maps: dict[tuple[str, str], Matrix] = {}
    comp: dict[tuple[str, str], Matrix] = {}

    def composite(q, p):
        if q == p:
            return Matrix.identity(field, dims[q])
        return comp[(q, p)]

    for p in poset.topological_order():
        below = poset.strictly_below(p)
        if below:
            sub = poset.subposet(below)
            col = diagram_colimit(field, sub.elements, dims, sub.covers, composite)
            psi = random_matrix(rng, field, dims[p], col.dim)
            for q in poset.lower_covers(p):
                maps[(q, p)] = psi @ col.coprojection(q)
            for q in below:
                comp[(q, p)] = psi @ col.coprojection(q)
    return maps


def random_functor(rng: random.Random, variance: str, field=None, poset: Poset | None = None,
                   max_size: int = 8, max_dim: int = 3) -> Functor:
    field = field or rng.choice(FIELDS)
    poset = poset or random_bounded_poset(rng, max_size)
    dims = {e: rng.choice([0] + list(range(1, max_dim + 1)) * 2) for e in poset.elements}
    if variance == CO:
        return Functor(poset, CO, field, dims, _random_covariant(rng, poset, field, dims))
    # a contravariant functor is a covariant one on the dual poset
    dual_maps = _random_covariant(rng, poset.dual(), field, dims)
    maps = {(q, p): dual_maps[(p, q)] for q, p in poset.covers}
    return Functor(poset, CONTRA, field, dims, maps)


def random_suite(seed: int, count: int, variance: str) -> list[Functor]:
    rng = random.Random(seed)
    return [random_functor(rng, variance, FIELDS[k % 2]) for k in range(count)]
