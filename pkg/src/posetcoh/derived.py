"""Derived limits and colimits of functors on posets.

Two independent routes are provided:

* :func:`cohomology` / :func:`homology` build a fibrant (resp. cofibrant)
  replacement inductively from mapping cocylinders (resp. cylinders) and take
  the ordinary limit (resp. colimit) of it degreewise.
* :func:`nerve_cohomology_oracle` / :func:`nerve_homology_oracle` use the
  cosimplicial (resp. simplicial) replacement indexed by chains.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping

from .errors import NotChainMap, NotLowerClosed, ShapeError, VarianceError
from .functor import CO, CONTRA, Functor, diagram_colimit, diagram_limit
from .linalg import (
    ChainComplex,
    CochainComplex,
    Field,
    Matrix,
    block_diag,
    block_matrix,
    cohomology_dims,
    homology_dims,
    stack_h,
    stack_v,
)
from .poset import Poset

GradedDims = dict[int, int]


def _zero(field: Field, r: int, c: int) -> Matrix:
    return Matrix.zeros(field, r, c)


def _eye(field: Field, n: int) -> Matrix:
    return Matrix.identity(field, n)


# ---------------------------------------------------------------------------
# Cocylinder and cylinder


@dataclass
class Cocylinder:
    """``cocyl(f)`` for a cochain map ``f: C -> D`` together with ``i`` and ``pi``.

    In degree ``n`` the cocylinder is ``C^n + D^(n-1) + D^n``.
    """

    complex: CochainComplex
    i: dict[int, Matrix]
    pi: dict[int, Matrix]


def _check_cochain_map(c: CochainComplex, d: CochainComplex, f: Mapping[int, Matrix], degrees):
    for n in degrees:
        fn = f[n] if n in f else _zero(c.field, d.dim(n), c.dim(n))
        fn1 = f[n + 1] if n + 1 in f else _zero(c.field, d.dim(n + 1), c.dim(n + 1))
        if fn.shape != (d.dim(n), c.dim(n)):
            raise ShapeError(f"chain map has shape {fn.shape} in degree {n}")
        if fn1 @ c.d(n) != d.d(n) @ fn:
            raise NotChainMap(f"map does not commute with differentials in degree {n}")


def cocylinder(c: CochainComplex, d: CochainComplex, f: Mapping[int, Matrix],
               check: bool = True) -> Cocylinder:
    """Mapping cocylinder with ``d(c, e, e') = (dc, e' - f(c) - de, de')``."""
    field = c.field
    live = [n for n in list(c.dims) + list(d.dims) if c.dim(n) or d.dim(n)]
    lo = min(live, default=0)
    hi = max(live, default=-1) + 1
    if check:
        _check_cochain_map(c, d, f, range(lo - 1, hi))

    def fmap(n):
        m = f.get(n)
        return m if m is not None else _zero(field, d.dim(n), c.dim(n))

    dims, diffs, inc, proj = {}, {}, {}, {}
    for n in range(lo, hi + 1):
        dims[n] = c.dim(n) + d.dim(n - 1) + d.dim(n)
    for n in range(lo, hi + 1):
        if not dims[n]:
            continue
        src = [c.dim(n), d.dim(n - 1), d.dim(n)]
        tgt = [c.dim(n + 1), d.dim(n), d.dim(n + 1)]
        diffs[n] = block_matrix(field, tgt, src, {
            (0, 0): c.d(n),
            (1, 0): -fmap(n),
            (1, 1): -d.d(n - 1),
            (1, 2): _eye(field, d.dim(n)),
            (2, 2): d.d(n),
        })
        if c.dim(n):
            inc[n] = block_matrix(field, src, [c.dim(n)], {
                (0, 0): _eye(field, c.dim(n)), (2, 0): fmap(n)})
        proj[n] = block_matrix(field, [d.dim(n)], src, {(0, 2): _eye(field, d.dim(n))})
    out = CochainComplex(field, {n: k for n, k in dims.items() if k}, diffs)
    if check:
        out.check()
    return Cocylinder(out, inc, proj)


@dataclass
class Cylinder:
    """``cyl(f)`` for a chain map ``f: C -> D``; degree ``n`` is ``C_n + C_(n-1) + D_n``."""

    complex: ChainComplex
    i: dict[int, Matrix]
    pi: dict[int, Matrix]


def cylinder(c: ChainComplex, d: ChainComplex, f: Mapping[int, Matrix],
             check: bool = True) -> Cylinder:
    """Mapping cylinder with ``d(c, c', e) = (dc + c', -dc', de - f(c'))``."""
    field = c.field
    live = [n for n in list(c.dims) + list(d.dims) if c.dim(n) or d.dim(n)]
    lo = min(live, default=0)
    hi = max(live, default=-1) + 1

    def fmap(n):
        m = f.get(n)
        return m if m is not None else _zero(field, d.dim(n), c.dim(n))

    if check:
        for n in range(lo, hi + 1):
            if fmap(n - 1) @ c.d(n) != d.d(n) @ fmap(n):
                raise NotChainMap(f"map does not commute with differentials in degree {n}")

    dims, diffs, inc, proj = {}, {}, {}, {}
    for n in range(lo, hi + 1):
        dims[n] = c.dim(n) + c.dim(n - 1) + d.dim(n)
    for n in range(lo, hi + 1):
        if not dims[n]:
            continue
        src = [c.dim(n), c.dim(n - 1), d.dim(n)]
        tgt = [c.dim(n - 1), c.dim(n - 2), d.dim(n - 1)]
        diffs[n] = block_matrix(field, tgt, src, {
            (0, 0): c.d(n),
            (0, 1): _eye(field, c.dim(n - 1)),
            (1, 1): -c.d(n - 1),
            (2, 1): -fmap(n - 1),
            (2, 2): d.d(n),
        })
        if c.dim(n):
            inc[n] = block_matrix(field, src, [c.dim(n)], {(0, 0): _eye(field, c.dim(n))})
        proj[n] = block_matrix(field, [d.dim(n)], src, {
            (0, 0): fmap(n), (0, 2): _eye(field, d.dim(n))})
    out = ChainComplex(field, {n: k for n, k in dims.items() if k}, diffs)
    if check:
        out.check()
    return Cylinder(out, inc, proj)


def concentrated(field: Field, dim: int, chain: bool = False):
    """A complex with a single term ``K^dim`` in degree 0."""
    cls = ChainComplex if chain else CochainComplex
    return cls(field, {0: dim} if dim else {}, {})


# ---------------------------------------------------------------------------
# Complex-valued functors


@dataclass
class ComplexFunctor:
    """A functor into (co)chain complexes, stored by cover maps in each degree.

    For the fibrant replacement ``maps[(q, p)][n]`` goes from degree ``n`` at
    ``p`` to degree ``n`` at ``q``; for the cofibrant one it goes the other way.
    """

    poset: Poset
    variance: str
    field: Field
    values: dict[str, CochainComplex | ChainComplex]
    maps: dict[tuple[str, str], dict[int, Matrix]]
    # the unit F(p) -> RF(p) (resp. the counit QF(p) -> F(p)) in degree 0
    unit: dict[str, Matrix] = dc_field(default_factory=dict)
    _composites: dict = dc_field(default_factory=dict, repr=False)

    def dim(self, p: str, n: int) -> int:
        return self.values[p].dim(n)

    def map(self, q: str, p: str, n: int) -> Matrix:
        """Degree ``n`` component of the structure map for ``q <= p``."""
        if q == p:
            return _eye(self.field, self.dim(p, n))
        key = (q, p, n)
        hit = self._composites.get(key)
        if hit is not None:
            return hit
        if (q, p) in self.maps:
            out = self._cover(q, p, n)
        else:
            r = next(r for r in self.poset.lower_covers(p) if self.poset.leq(q, r))
            if self.variance == CONTRA:
                out = self.map(q, r, n) @ self._cover(r, p, n)
            else:
                out = self._cover(r, p, n) @ self.map(q, r, n)
        self._composites[key] = out
        return out

    def _cover(self, q: str, p: str, n: int) -> Matrix:
        m = self.maps[(q, p)].get(n)
        if m is not None:
            return m
        if self.variance == CONTRA:
            return _zero(self.field, self.dim(q, n), self.dim(p, n))
        return _zero(self.field, self.dim(p, n), self.dim(q, n))

    def degrees(self, elements: Iterable[str] | None = None) -> range:
        elements = self.poset.elements if elements is None else elements
        live = [n for e in elements for n, k in self.values[e].dims.items() if k]
        if not live:
            return range(0)
        return range(min(live), max(live) + 1)

    def is_chain_map(self, q: str, p: str) -> bool:
        cq, cp = self.values[q], self.values[p]
        for n in self.degrees([q, p]):
            if self.variance == CONTRA:
                if self.map(q, p, n + 1) @ cp.d(n) != cq.d(n) @ self.map(q, p, n):
                    return False
            else:
                if self.map(q, p, n - 1) @ cq.d(n) != cp.d(n) @ self.map(q, p, n):
                    return False
        return True


def _degree_limit(rf: ComplexFunctor, elements: list[str], covers, n: int):
    dims = {e: rf.dim(e, n) for e in elements}
    return diagram_limit(rf.field, elements, dims, covers, lambda q, p: rf.map(q, p, n))


def _degree_colimit(qf: ComplexFunctor, elements: list[str], covers, n: int):
    dims = {e: qf.dim(e, n) for e in elements}
    return diagram_colimit(qf.field, elements, dims, covers, lambda q, p: qf.map(q, p, n))


@dataclass
class LimitComplex:
    """Degreewise limit of a complex-valued functor, as a cochain complex."""

    complex: CochainComplex
    limits: dict[int, object]


def limit_complex(rf: ComplexFunctor, elements: Iterable[str]) -> LimitComplex:
    elements = rf.poset.sorted(set(elements))
    sub = rf.poset.subposet(elements)
    covers = sub.covers
    degs = rf.degrees(elements)
    lims = {n: _degree_limit(rf, elements, covers, n) for n in degs}
    field = rf.field
    diffs = {}
    for n in degs:
        if n + 1 not in lims or not lims[n].dim or not lims[n + 1].dim:
            continue
        diff = block_diag(field, [rf.values[e].d(n) for e in elements])
        diffs[n] = lims[n + 1].coordinates(diff @ lims[n].basis)
    dims = {n: lim.dim for n, lim in lims.items() if lim.dim}
    return LimitComplex(CochainComplex(field, dims, diffs), lims)


@dataclass
class ColimitComplex:
    """Degreewise colimit of a complex-valued functor, as a chain complex."""

    complex: ChainComplex
    colimits: dict[int, object]


def colimit_complex(qf: ComplexFunctor, elements: Iterable[str]) -> ColimitComplex:
    elements = qf.poset.sorted(set(elements))
    sub = qf.poset.subposet(elements)
    covers = sub.covers
    degs = qf.degrees(elements)
    cols = {n: _degree_colimit(qf, elements, covers, n) for n in degs}
    field = qf.field
    diffs = {}
    for n in degs:
        if n - 1 not in cols or not cols[n].dim or not cols[n - 1].dim:
            continue
        diff = block_diag(field, [qf.values[e].d(n) for e in elements])
        diffs[n] = cols[n - 1].quotient @ diff @ cols[n].section
    dims = {n: col.dim for n, col in cols.items() if col.dim}
    return ColimitComplex(ChainComplex(field, dims, diffs), cols)


# ---------------------------------------------------------------------------
# Replacements


def _require_lower_closed(poset: Poset, subset) -> list[str]:
    if subset is None:
        return list(poset.elements)
    subset = set(subset)
    for e in subset:
        poset._require(e)
    if not poset.is_lower_closed(subset):
        raise NotLowerClosed("the replacement needs a lower-closed set of elements")
    return poset.sorted(subset)


def fibrant_replacement(f: Functor, subset: Iterable[str] | None = None,
                        check: bool = False) -> ComplexFunctor:
    """The cocylinder replacement ``RF`` of a contravariant functor.

    Elements are processed by increasing degree; ``RF(p)`` is the cocylinder
    of ``F(p) -> lim_{<p} RF`` and the structure maps are the limit
    projections composed with the cocylinder projection.
    """
    if f.variance != CONTRA:
        raise VarianceError("fibrant replacement needs a contravariant functor")
    elements = _require_lower_closed(f.poset, subset)
    poset = f.poset
    field = f.field
    members = set(elements)
    rf = ComplexFunctor(poset.subposet(elements), CONTRA, field, {}, {})
    for p in sorted(elements, key=lambda e: (poset.degree(e), poset.index(e))):
        below = [q for q in poset.strictly_below(p) if q in members]
        src = concentrated(field, f.dim(p))
        if not below:
            value = src
            rf.values[p] = value
            rf.unit[p] = _eye(field, f.dim(p))
            continue
        lc = limit_complex(rf, below)
        lim0 = lc.limits.get(0)
        # the unit F(p) -> lim F -> lim RF in degree 0
        if lim0 is not None and lim0.dim:
            product = stack_v(field, [rf.unit[q] @ f.map(q, p) for q in lim0.elements], f.dim(p))
            eps = {0: lim0.coordinates(product)}
        else:
            eps = {}
        cc = cocylinder(src, lc.complex, eps, check=check)
        rf.values[p] = cc.complex
        rf.unit[p] = cc.i.get(0, _zero(field, cc.complex.dim(0), f.dim(p)))
        for q in poset.lower_covers(p):
            if q not in members:
                continue
            comps = {}
            for n, lim in lc.limits.items():
                if not lim.dim or n not in cc.pi:
                    continue
                comps[n] = lim.projection(q) @ cc.pi[n]
            rf.maps[(q, p)] = comps
    return rf


def cofibrant_replacement(f: Functor, subset: Iterable[str] | None = None,
                          check: bool = False) -> ComplexFunctor:
    """The cylinder replacement ``QF`` of a covariant functor.

    ``QF(p)`` is the cylinder of ``colim_{<p} QF -> F(p)``; structure maps are
    the colimit coprojections followed by the cylinder inclusion.
    """
    if f.variance != CO:
        raise VarianceError("cofibrant replacement needs a covariant functor")
    elements = _require_lower_closed(f.poset, subset)
    poset = f.poset
    field = f.field
    members = set(elements)
    qf = ComplexFunctor(poset.subposet(elements), CO, field, {}, {})
    for p in sorted(elements, key=lambda e: (poset.degree(e), poset.index(e))):
        below = [q for q in poset.strictly_below(p) if q in members]
        tgt = concentrated(field, f.dim(p), chain=True)
        if not below:
            qf.values[p] = tgt
            qf.unit[p] = _eye(field, f.dim(p))
            continue
        cc_col = colimit_complex(qf, below)
        col0 = cc_col.colimits.get(0)
        if col0 is not None and col0.dim:
            cocone = stack_h(field, [f.map(q, p) @ qf.unit[q] for q in col0.elements], f.dim(p))
            g = {0: cocone @ col0.section}
        else:
            g = {}
        cyl = cylinder(cc_col.complex, tgt, g, check=check)
        qf.values[p] = cyl.complex
        qf.unit[p] = cyl.pi.get(0, _zero(field, f.dim(p), cyl.complex.dim(0)))
        for q in poset.lower_covers(p):
            if q not in members:
                continue
            comps = {}
            for n, col in cc_col.colimits.items():
                if not col.dim or n not in cyl.i:
                    continue
                comps[n] = cyl.i[n] @ col.coprojection(q)
            qf.maps[(q, p)] = comps
    return qf


def default_subset(poset: Poset) -> list[str]:
    """Everything except the maximum, or the whole poset when there is none."""
    return [e for e in poset.elements if e != poset.top]


def _dense(dims: Mapping[int, int]) -> GradedDims:
    return {n: k for n, k in sorted(dims.items()) if k}


def cohomology(f: Functor, subset: Iterable[str] | None = None) -> GradedDims:
    """``H^*`` of a contravariant functor restricted to ``subset`` (default: drop the top).

    Zero degrees are omitted from the result.
    """
    if f.variance != CONTRA:
        raise VarianceError("cohomology is defined here for contravariant functors")
    subset = default_subset(f.poset) if subset is None else list(subset)
    g = f.restrict(subset)
    rf = fibrant_replacement(g)
    lc = limit_complex(rf, g.poset.elements)
    return _dense(cohomology_dims(lc.complex, check=False))


def homology(f: Functor, subset: Iterable[str] | None = None) -> GradedDims:
    """``H_*`` of a covariant functor restricted to ``subset`` (default: drop the top)."""
    if f.variance != CO:
        raise VarianceError("homology is defined here for covariant functors")
    subset = default_subset(f.poset) if subset is None else list(subset)
    g = f.restrict(subset)
    qf = cofibrant_replacement(g)
    cc = colimit_complex(qf, g.poset.elements)
    return _dense(homology_dims(cc.complex, check=False))


# ---------------------------------------------------------------------------
# Nerve oracles


def _chain_index(chains):
    by_len: dict[int, list] = {}
    for c in chains:
        by_len.setdefault(len(c) - 1, []).append(c)
    return by_len


def nerve_cochain_complex(f: Functor, subset: Iterable[str] | None = None) -> CochainComplex:
    """Cosimplicial replacement: ``C^n`` is the product over ``n``-chains of ``F(q_0)``."""
    if f.variance != CONTRA:
        raise VarianceError("the cochain nerve needs a contravariant functor")
    subset = default_subset(f.poset) if subset is None else list(subset)
    field = f.field
    by_len = _chain_index(f.poset.chains(subset))
    dims, diffs = {}, {}
    offs = {}
    for n, chains in by_len.items():
        o, acc = {}, 0
        for c in chains:
            o[c] = acc
            acc += f.dim(c[0])
        offs[n] = o
        dims[n] = acc
    for n, chains in by_len.items():
        if n + 1 not in by_len or not dims[n] or not dims[n + 1]:
            continue
        m = Matrix.zeros(field, dims[n + 1], dims[n])
        for sigma in by_len[n + 1]:
            r0 = offs[n + 1][sigma]
            rows = f.dim(sigma[0])
            if not rows:
                continue
            for k in range(len(sigma)):
                tau = sigma[:k] + sigma[k + 1:]
                c0 = offs[n][tau]
                if k == 0:
                    block = f.map(sigma[0], sigma[1])
                else:
                    block = Matrix.identity(field, rows)
                    if k % 2:
                        block = -block
                for a in range(block.rows):
                    for b in range(block.cols):
                        x = block.data[a][b]
                        if x:
                            m.data[r0 + a][c0 + b] = field.reduce(m.data[r0 + a][c0 + b] + x)
        diffs[n] = m
    return CochainComplex(field, {n: k for n, k in dims.items() if k}, diffs)


def nerve_chain_complex(f: Functor, subset: Iterable[str] | None = None) -> ChainComplex:
    """Simplicial replacement: ``C_n`` is the sum over ``n``-chains of ``F(q_0)``."""
    if f.variance != CO:
        raise VarianceError("the chain nerve needs a covariant functor")
    subset = default_subset(f.poset) if subset is None else list(subset)
    field = f.field
    by_len = _chain_index(f.poset.chains(subset))
    dims, diffs, offs = {}, {}, {}
    for n, chains in by_len.items():
        o, acc = {}, 0
        for c in chains:
            o[c] = acc
            acc += f.dim(c[0])
        offs[n] = o
        dims[n] = acc
    for n, chains in by_len.items():
        if n == 0 or not dims[n] or not dims[n - 1]:
            continue
        m = Matrix.zeros(field, dims[n - 1], dims[n])
        for sigma in chains:
            c0 = offs[n][sigma]
            if not f.dim(sigma[0]):
                continue
            for k in range(len(sigma)):
                tau = sigma[:k] + sigma[k + 1:]
                r0 = offs[n - 1][tau]
                if k == 0:
                    block = f.map(sigma[0], sigma[1])
                else:
                    block = Matrix.identity(field, f.dim(sigma[0]))
                    if k % 2:
                        block = -block
                for a in range(block.rows):
                    for b in range(block.cols):
                        x = block.data[a][b]
                        if x:
                            m.data[r0 + a][c0 + b] = field.reduce(m.data[r0 + a][c0 + b] + x)
        diffs[n] = m
    return ChainComplex(field, {n: k for n, k in dims.items() if k}, diffs)


def nerve_cohomology_oracle(f: Functor, subset: Iterable[str] | None = None) -> GradedDims:
    return _dense(cohomology_dims(nerve_cochain_complex(f, subset)))


def nerve_homology_oracle(f: Functor, subset: Iterable[str] | None = None) -> GradedDims:
    return _dense(homology_dims(nerve_chain_complex(f, subset)))


def graded_list(dims: Mapping[int, int], top: int | None = None) -> dict[str, int]:
    """JSON-ready form ``{"0": n0, "1": n1, ...}`` filling gaps with zeros."""
    hi = max(dims, default=-1)
    if top is not None:
        hi = max(hi, top)
    return {str(n): dims.get(n, 0) for n in range(0, hi + 1)}
