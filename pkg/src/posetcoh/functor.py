"""Vector-space valued functors on finite posets, with limits and colimits."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    MissingCoverMap,
    NotBelow,
    NotFunctorial,
    ShapeMismatch,
    UnknownElement,
    VarianceError,
)
from .linalg import (
    Field,
    Matrix,
    block_matrix,
    kernel_with_free,
    left_kernel_basis,
    right_inverse,
    stack_h,
    stack_v,
)
from .poset import Poset, chain_str

CONTRA = "contra"
CO = "co"


@dataclass(frozen=True)
class Violation:
    """Two cover paths from ``q`` to ``p`` whose composites differ."""

    q: str
    p: str
    path_a: tuple[str, ...]
    path_b: tuple[str, ...]

    def describe(self) -> str:
        return f"{self.q}<{self.p}: {chain_str(self.path_a)} != {chain_str(self.path_b)}"


class Functor:
    """A functor from a finite poset to finite-dimensional vector spaces.

    ``variance`` is ``"contra"`` (maps go down the order) or ``"co"`` (maps go
    up).  Only cover maps are stored; ``maps[(q, p)]`` for a cover ``q < p``
    has shape ``dim F(q) x dim F(p)`` when contravariant and
    ``dim F(p) x dim F(q)`` when covariant.
    """

    def __init__(self, poset: Poset, variance: str, field: Field,
                 dims: Mapping[str, int], maps: Mapping[tuple[str, str], Matrix],
                 validate: bool = True):
        if variance not in (CONTRA, CO):
            raise VarianceError(f"variance must be 'contra' or 'co', got {variance!r}")
        self.poset = poset
        self.variance = variance
        self.field = field
        for e in dims:
            if e not in poset:
                raise UnknownElement(e)
        self.dims = {e: int(dims.get(e, 0)) for e in poset.elements}
        self.maps: dict[tuple[str, str], Matrix] = {}
        for q, p in poset.covers:
            m = maps.get((q, p))
            if m is None:
                if self.dims[q] == 0 or self.dims[p] == 0:
                    m = Matrix.zeros(field, *self._shape(q, p))
                else:
                    raise MissingCoverMap(f"no map given for cover {q}<{p}")
            if m.shape != self._shape(q, p):
                raise ShapeMismatch(
                    f"map {q}<{p} has shape {m.shape}, expected {self._shape(q, p)}")
            if m.field != field:
                raise ShapeMismatch(f"map {q}<{p} is over {m.field.name}, not {field.name}")
            self.maps[(q, p)] = m
        for key in maps:
            if key not in self.maps:
                raise ShapeMismatch(f"{key[0]}<{key[1]} is not a cover of the poset")
        self._composites: dict[tuple[str, str], Matrix] = {}
        if validate:
            bad = self.violations()
            if bad:
                raise NotFunctorial(bad)

    def _shape(self, q: str, p: str) -> tuple[int, int]:
        if self.variance == CONTRA:
            return self.dims[q], self.dims[p]
        return self.dims[p], self.dims[q]

    def __repr__(self):
        return f"Functor({self.variance}, {self.field.name}, {self.poset!r})"

    def dim(self, p: str) -> int:
        return self.dims[p]

    def identity(self, p: str) -> Matrix:
        return Matrix.identity(self.field, self.dims[p])

    def _compose(self, lower: Matrix, upper: Matrix) -> Matrix:
        """Combine ``F(q<r)`` with ``F(r<p)`` into ``F(q<p)``."""
        if self.variance == CONTRA:
            return lower @ upper
        return upper @ lower

    def map(self, q: str, p: str) -> Matrix:
        """The structure map for ``q <= p``, composed along the first cover path."""
        if q == p:
            self.poset._require(q)
            return self.identity(q)
        key = (q, p)
        hit = self._composites.get(key)
        if hit is not None:
            return hit
        if not self.poset.lt(q, p):
            raise NotBelow(f"{q!r} is not below {p!r}")
        if (q, p) in self.maps:
            out = self.maps[(q, p)]
        else:
            r = next(r for r in self.poset.lower_covers(p) if self.poset.leq(q, r))
            out = self._compose(self.map(q, r), self.maps[(r, p)])
        self._composites[key] = out
        return out

    def _canonical_path(self, q: str, p: str) -> tuple[str, ...]:
        path = [p]
        while path[-1] != q:
            path.append(next(r for r in self.poset.lower_covers(path[-1]) if self.poset.leq(q, r)))
        return tuple(reversed(path))

    def violations(self) -> list[Violation]:
        """Pairs ``q < p`` where two cover paths give different composites.

        Proceeding upward, a pair is checked by comparing the routes through
        each lower cover of ``p``.  Once all pairs below ``p`` are known to be
        path independent, this covers every cover path into ``p``.
        """
        poset = self.poset
        out: list[Violation] = []
        for p in poset.topological_order():
            lows = poset.lower_covers(p)
            if len(lows) < 2:
                continue
            for q in poset.strictly_below(p):
                routes = [r for r in lows if poset.leq(q, r)]
                if len(routes) < 2:
                    continue
                first = self._compose(self.map(q, routes[0]), self.maps[(routes[0], p)])
                for r in routes[1:]:
                    other = self._compose(self.map(q, r), self.maps[(r, p)])
                    if other != first:
                        out.append(Violation(q, p, self._canonical_path(q, routes[0]) + (p,),
                                             self._canonical_path(q, r) + (p,)))
                        break
        return out

    # derived functors -------------------------------------------------------
    def restrict(self, subset: Iterable[str]) -> "Functor":
        """Restriction to the induced subposet on ``subset``."""
        sub = self.poset.subposet(subset)
        maps = {(q, p): self.map(q, p) for q, p in sub.covers}
        return Functor(sub, self.variance, self.field,
                       {e: self.dims[e] for e in sub.elements}, maps, validate=False)

    def opposite(self) -> "Functor":
        """The same data viewed on the dual poset with the other variance."""
        dual = self.poset.dual()
        maps = {(p, q): m for (q, p), m in self.maps.items()}
        return Functor(dual, CO if self.variance == CONTRA else CONTRA, self.field,
                       self.dims, maps, validate=False)

    def transpose(self) -> "Functor":
        """The linear dual: transpose every map and flip the variance."""
        maps = {k: m.T for k, m in self.maps.items()}
        return Functor(self.poset, CO if self.variance == CONTRA else CONTRA, self.field,
                       self.dims, maps, validate=False)

    def limit(self, subset: Iterable[str] | None = None) -> "LimitResult":
        if self.variance != CONTRA:
            raise VarianceError("limits are taken of contravariant functors")
        elems = self._members(subset)
        sub = self.poset.subposet(elems)
        return diagram_limit(self.field, sub.elements, self.dims, sub.covers, self.map)

    def colimit(self, subset: Iterable[str] | None = None) -> "ColimitResult":
        if self.variance != CO:
            raise VarianceError("colimits are taken of covariant functors")
        elems = self._members(subset)
        sub = self.poset.subposet(elems)
        return diagram_colimit(self.field, sub.elements, self.dims, sub.covers, self.map)

    def _members(self, subset):
        if subset is None:
            return list(self.poset.elements)
        return self.poset.sorted(set(subset))

    def map_into_limit(self, p: str, subset: Iterable[str]) -> tuple[Matrix, "LimitResult"]:
        """The canonical map ``F(p) -> lim_Q F`` for ``Q`` strictly below ``p``."""
        elems = self._members(subset)
        for q in elems:
            if not self.poset.lt(q, p):
                raise NotBelow(f"{q!r} is not below {p!r}")
        lim = self.limit(elems)
        product = stack_v(self.field, [self.map(q, p) for q in lim.elements], self.dims[p])
        return lim.coordinates(product), lim

    def map_from_colimit(self, p: str, subset: Iterable[str]) -> tuple[Matrix, "ColimitResult"]:
        """The canonical map ``colim_Q F -> F(p)`` for ``Q`` strictly below ``p``."""
        elems = self._members(subset)
        for q in elems:
            if not self.poset.lt(q, p):
                raise NotBelow(f"{q!r} is not below {p!r}")
        col = self.colimit(elems)
        cocone = stack_h(self.field, [self.map(q, p) for q in col.elements], self.dims[p])
        return cocone @ col.section, col

    # serialisation -----------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "poset": self.poset.to_json(),
            "variance": self.variance,
            "field": self.field.name,
            "dims": dict(self.dims),
            "maps": {f"{q}<{p}": m.to_json() for (q, p), m in self.maps.items()},
        }


# ---------------------------------------------------------------------------
# Limits and colimits of diagrams given by cover maps


@dataclass
class LimitResult:
    """``lim`` as a subspace of the product of the values.

    ``basis`` has one column per basis vector of the limit, written in the
    product coordinates; ``offsets[p]`` locates ``F(p)`` in the product.
    """

    field: Field
    elements: list[str]
    dims: dict[str, int]
    offsets: dict[str, int]
    basis: Matrix
    free: list[int]

    @property
    def dim(self) -> int:
        return self.basis.cols

    @property
    def total(self) -> int:
        return self.basis.rows

    def projection(self, p: str) -> Matrix:
        o = self.offsets[p]
        return self.basis.row_slice(o, o + self.dims[p])

    def coordinates(self, vectors: Matrix) -> Matrix:
        """Coordinates of compatible product vectors (columns) in ``basis``."""
        return vectors.submatrix(self.free, range(vectors.cols))


@dataclass
class ColimitResult:
    """``colim`` as a quotient of the coproduct.

    ``quotient`` maps the coproduct onto the colimit and ``section`` is a
    right inverse of it.
    """

    field: Field
    elements: list[str]
    dims: dict[str, int]
    offsets: dict[str, int]
    quotient: Matrix
    section: Matrix

    @property
    def dim(self) -> int:
        return self.quotient.rows

    @property
    def total(self) -> int:
        return self.quotient.cols

    def coprojection(self, p: str) -> Matrix:
        o = self.offsets[p]
        return self.quotient.col_slice(o, o + self.dims[p])


def _offsets(elements: Sequence[str], dims: Mapping[str, int]) -> dict[str, int]:
    out, acc = {}, 0
    for e in elements:
        out[e] = acc
        acc += dims[e]
    return out


def diagram_limit(field: Field, elements: Sequence[str], dims: Mapping[str, int],
                  covers: Sequence[tuple[str, str]],
                  down_map: Callable[[str, str], Matrix]) -> LimitResult:
    """Limit of a contravariant diagram.

    ``down_map(q, p)`` is the map ``F(p) -> F(q)`` for each listed cover.  The
    limit is the kernel of ``(x_p) -> (F(q<p) x_p - x_q)`` over the covers.
    """
    elements = list(elements)
    offsets = _offsets(elements, dims)
    live = [(q, p) for q, p in covers if dims[q] and dims[p]]
    zero_top = [(q, p) for q, p in covers if dims[q] and not dims[p]]
    relations = live + zero_top
    idx = {e: k for k, e in enumerate(elements)}
    blocks = {}
    for r, (q, p) in enumerate(relations):
        if dims[p]:
            blocks[(r, idx[p])] = down_map(q, p)
        blocks[(r, idx[q])] = -Matrix.identity(field, dims[q])
    diff = block_matrix(field, [dims[q] for q, _ in relations], [dims[e] for e in elements], blocks)
    basis, free = kernel_with_free(diff)
    return LimitResult(field, elements, dict((e, dims[e]) for e in elements), offsets, basis, free)


def diagram_colimit(field: Field, elements: Sequence[str], dims: Mapping[str, int],
                    covers: Sequence[tuple[str, str]],
                    up_map: Callable[[str, str], Matrix]) -> ColimitResult:
    """Colimit of a covariant diagram; ``up_map(q, p)`` is ``F(q) -> F(p)``."""
    elements = list(elements)
    offsets = _offsets(elements, dims)
    relations = [(q, p) for q, p in covers if dims[q]]
    idx = {e: k for k, e in enumerate(elements)}
    blocks = {}
    for r, (q, p) in enumerate(relations):
        blocks[(idx[q], r)] = Matrix.identity(field, dims[q])
        if dims[p]:
            blocks[(idx[p], r)] = -up_map(q, p)
    rel = block_matrix(field, [dims[e] for e in elements], [dims[q] for q, _ in relations], blocks)
    quotient = left_kernel_basis(rel)
    section = right_inverse(quotient)
    return ColimitResult(field, elements, dict((e, dims[e]) for e in elements), offsets,
                         quotient, section)


# ---------------------------------------------------------------------------
# Standard functors


def zero_functor(poset: Poset, variance: str, field: Field) -> Functor:
    return Functor(poset, variance, field, {}, {}, validate=False)


def constant_functor(poset: Poset, variance: str, field: Field, dim: int = 1,
                     support: Iterable[str] | None = None) -> Functor:
    """Identity maps on ``support`` (everything by default), zero elsewhere.

    Supports are expected to be convex enough for this to be a functor; for
    the usual case of the poset minus its extremes this holds.
    """
    keep = set(poset.elements if support is None else support)
    dims = {e: (dim if e in keep else 0) for e in poset.elements}
    maps = {}
    for q, p in poset.covers:
        if q in keep and p in keep:
            maps[(q, p)] = Matrix.identity(field, dim)
    return Functor(poset, variance, field, dims, maps)


def extension_by_zero_constant(poset: Poset, field: Field, dim: int = 1,
                               variance: str = CONTRA) -> Functor:
    """The constant functor on the proper part, extended by zero to 0 and 1."""
    return constant_functor(poset, variance, field, dim, poset.proper_part())


def atomic_functor(poset: Poset, p: str, dim: int, variance: str, field: Field) -> Functor:
    """Value ``K^dim`` at ``p`` and zero everywhere else."""
    poset._require(p)
    return Functor(poset, variance, field, {p: dim}, {})


def direct_sum(*functors: Functor) -> Functor:
    if not functors:
        raise ValueError("direct_sum needs at least one functor")
    first = functors[0]
    for g in functors[1:]:
        if g.poset is not first.poset and g.poset != first.poset:
            raise ShapeMismatch("direct sum of functors on different posets")
        if g.variance != first.variance or g.field != first.field:
            raise ShapeMismatch("direct sum needs matching variance and field")
    from .linalg import block_diag

    dims = {e: sum(g.dims[e] for g in functors) for e in first.poset.elements}
    maps = {k: block_diag(first.field, [g.maps[k] for g in functors]) for k in first.maps}
    return Functor(first.poset, first.variance, first.field, dims, maps, validate=False)
