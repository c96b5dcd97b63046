"""Finite posets given by their cover relation."""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    CycleDetected,
    DuplicateElement,
    NonCoverPair,
    NotAChain,
    NotBounded,
    UnknownElement,
)

Chain = tuple[str, ...]


class Poset:
    """An immutable finite poset.

    Elements are opaque string ids kept in insertion order; every listing
    produced by this class follows that order.  The order relation is the
    reflexive-transitive closure of ``covers``, where a pair ``(q, p)`` means
    ``q`` is covered by ``p``.
    """

    def __init__(self, elements: Iterable[str], covers: Iterable[tuple[str, str]],
                 bottom: str | None = None, top: str | None = None):
        elements = list(elements)
        index: dict[str, int] = {}
        for e in elements:
            if e in index:
                raise DuplicateElement(e)
            index[e] = len(index)
        self.elements: tuple[str, ...] = tuple(elements)
        self._index = index

        up: dict[str, list[str]] = {e: [] for e in elements}
        down: dict[str, list[str]] = {e: [] for e in elements}
        seen = set()
        for q, p in covers:
            for x in (q, p):
                if x not in index:
                    raise UnknownElement(x)
            if q == p:
                raise CycleDetected(f"self-cover on {q!r}")
            if (q, p) in seen:
                continue
            seen.add((q, p))
            up[q].append(p)
            down[p].append(q)
        key = index.__getitem__
        self._up = {e: tuple(sorted(v, key=key)) for e, v in up.items()}
        self._down = {e: tuple(sorted(v, key=key)) for e, v in down.items()}
        self.covers: tuple[tuple[str, str], ...] = tuple(
            (q, p) for q in elements for p in self._up[q])

        self._topo = self._toposort()
        # strict upper sets, built from the top of the order downwards
        above: dict[str, frozenset[str]] = {}
        for e in reversed(self._topo):
            acc = set()
            for p in self._up[e]:
                acc.add(p)
                acc |= above[p]
            above[e] = frozenset(acc)
        self._above = above
        below: dict[str, set[str]] = {e: set() for e in elements}
        for e, ups in above.items():
            for p in ups:
                below[p].add(e)
        self._below = {e: frozenset(v) for e, v in below.items()}

        for q, p in self.covers:
            for r in self._up[q]:
                if r != p and p in above[r]:
                    raise NonCoverPair(q, p, r)

        self.bottom = self._resolve_extreme(bottom, self._above, "bottom")
        self.top = self._resolve_extreme(top, self._below, "top")

    # construction helpers -------------------------------------------------
    def _toposort(self) -> list[str]:
        indeg = {e: len(self._down[e]) for e in self.elements}
        ready = [e for e in self.elements if indeg[e] == 0]
        order = []
        while ready:
            e = ready.pop(0)
            order.append(e)
            for p in self._up[e]:
                indeg[p] -= 1
                if indeg[p] == 0:
                    ready.append(p)
        if len(order) != len(self.elements):
            stuck = [e for e in self.elements if indeg[e] > 0]
            raise CycleDetected(f"cover graph has a cycle through {stuck[0]!r}")
        return order

    def _resolve_extreme(self, declared, strict_rel, what):
        n = len(self.elements)
        if declared is not None:
            if declared not in self._index:
                raise UnknownElement(declared)
            if len(strict_rel[declared]) != n - 1:
                raise NotBounded(f"declared {what} {declared!r} is not comparable to everything")
            return declared
        for e in self.elements:
            if len(strict_rel[e]) == n - 1:
                return e
        return None

    # basic queries --------------------------------------------------------
    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def __repr__(self) -> str:
        return f"Poset({len(self)} elements, {len(self.covers)} covers)"

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poset) and self.elements == other.elements
                and set(self.covers) == set(other.covers))

    def __hash__(self) -> int:
        return hash((self.elements, frozenset(self.covers)))

    def _require(self, x: str) -> None:
        if x not in self._index:
            raise UnknownElement(x)

    def index(self, x: str) -> int:
        self._require(x)
        return self._index[x]

    def sort_key(self, x: str) -> int:
        return self._index[x]

    def sorted(self, xs: Iterable[str]) -> list[str]:
        return sorted(xs, key=self.sort_key)

    def leq(self, q: str, p: str) -> bool:
        self._require(q)
        self._require(p)
        return q == p or p in self._above[q]

    def lt(self, q: str, p: str) -> bool:
        self._require(q)
        self._require(p)
        return p in self._above[q]

    def comparable(self, a: str, b: str) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def is_cover(self, q: str, p: str) -> bool:
        self._require(q)
        return p in self._up[q]

    def upper_covers(self, p: str) -> tuple[str, ...]:
        self._require(p)
        return self._up[p]

    def lower_covers(self, p: str) -> tuple[str, ...]:
        self._require(p)
        return self._down[p]

    def strictly_below(self, p: str) -> list[str]:
        self._require(p)
        return self.sorted(self._below[p])

    def strictly_above(self, p: str) -> list[str]:
        self._require(p)
        return self.sorted(self._above[p])

    def minimal_elements(self) -> list[str]:
        return [e for e in self.elements if not self._down[e]]

    def maximal_elements(self) -> list[str]:
        return [e for e in self.elements if not self._up[e]]

    def topological_order(self) -> list[str]:
        """Elements sorted by degree, ties broken by insertion order."""
        return sorted(self.elements, key=lambda e: (self.degree(e), self._index[e]))

    @property
    def is_bounded(self) -> bool:
        return self.bottom is not None and self.top is not None

    def require_top(self) -> str:
        if self.top is None:
            raise NotBounded("poset has no maximum")
        return self.top

    def require_bounded(self) -> tuple[str, str]:
        if not self.is_bounded:
            raise NotBounded("poset needs both a minimum and a maximum")
        return self.bottom, self.top

    # degree data -----------------------------------------------------------
    @cached_property
    def _degrees(self) -> dict[str, int]:
        deg: dict[str, int] = {}
        for e in self._topo:
            deg[e] = max((deg[q] + 1 for q in self._down[e]), default=0)
        return deg

    def degree(self, p: str) -> int:
        """Length of the longest chain ending at ``p``."""
        self._require(p)
        return self._degrees[p]

    @property
    def height(self) -> int:
        """Length of the longest chain in the poset (``-1`` when empty)."""
        return max(self._degrees.values(), default=-1)

    @cached_property
    def _codegrees(self) -> dict[str, int]:
        top = self.require_top()
        cd = {top: 0}
        for e in reversed(self._topo):
            if e == top:
                continue
            cd[e] = min(cd[p] + 1 for p in self._up[e])
        return cd

    def codegree(self, p: str) -> int:
        """Length of the shortest unrefinable chain from ``p`` to the top."""
        self._require(p)
        if self.top is None:
            raise NotBounded("codegree needs a maximum")
        return self._codegrees[p]

    def maximal_chains(self) -> list[Chain]:
        out: list[Chain] = []

        def grow(chain):
            ups = self._up[chain[-1]]
            if not ups:
                out.append(tuple(chain))
                return
            for p in ups:
                chain.append(p)
                grow(chain)
                chain.pop()

        for m in self.minimal_elements():
            grow([m])
        return out

    def is_pure(self) -> tuple[bool, tuple[Chain, Chain] | None]:
        """Whether all maximal chains have equal length.

        Returns ``(True, None)`` or ``(False, (short, long))`` with two maximal
        chains of different lengths.
        """
        # a shortest and a longest maximal chain through dynamic programming
        longest: dict[str, Chain] = {}
        shortest: dict[str, Chain] = {}
        for e in reversed(self._topo):
            ups = self._up[e]
            if not ups:
                longest[e] = shortest[e] = (e,)
                continue
            longest[e] = (e,) + max((longest[p] for p in ups), key=len)
            shortest[e] = (e,) + min((shortest[p] for p in ups), key=len)
        lo = hi = None
        for m in self.minimal_elements():
            if lo is None or len(shortest[m]) < len(lo):
                lo = shortest[m]
            if hi is None or len(longest[m]) > len(hi):
                hi = longest[m]
        if lo is None or len(lo) == len(hi):
            return True, None
        return False, (lo, hi)

    # subposets --------------------------------------------------------------
    def subposet(self, subset: Iterable[str]) -> "Poset":
        """The induced subposet, with covers recomputed inside the subset."""
        keep = set()
        for x in subset:
            self._require(x)
            keep.add(x)
        elems = [e for e in self.elements if e in keep]
        covers = []
        for q in elems:
            ups = [p for p in self._above[q] if p in keep]
            upset = set(ups)
            for p in ups:
                if not any(r in upset and p in self._above[r] for r in ups):
                    covers.append((q, p))
        return Poset(elems, covers)

    def lower_closure(self, subset: Iterable[str]) -> set[str]:
        out = set()
        for q in subset:
            self._require(q)
            out.add(q)
            out |= self._below[q]
        return out

    def lower_set(self, subset: Iterable[str]) -> "Poset":
        """The induced subposet on everything below some element of ``subset``."""
        return self.subposet(self.lower_closure(subset))

    def is_lower_closed(self, subset: Iterable[str]) -> bool:
        s = set(subset)
        return all(self._below[x] <= s for x in s)

    def interval(self, a: str, b: str) -> list[str]:
        """Closed interval ``[a, b]`` in insertion order."""
        if not self.leq(a, b):
            return []
        return [e for e in self.elements if self.leq(a, e) and self.leq(e, b)]

    def dual(self) -> "Poset":
        return Poset(self.elements, [(p, q) for q, p in self.covers])

    # chains -------------------------------------------------------------------
    def check_chain(self, chain: Sequence[str], unrefinable: bool = False) -> None:
        for x in chain:
            self._require(x)
        for a, b in zip(chain, chain[1:]):
            if not self.lt(a, b):
                raise NotAChain(f"{a!r} is not below {b!r}")
            if unrefinable and not self.is_cover(a, b):
                raise NotAChain(f"{a!r} is not covered by {b!r}")

    def unrefinable_top_chains(self, length: int) -> list[Chain]:
        """All chains ``c_0 < ... < c_length`` of covers ending at the top."""
        top = self.require_top()
        chains: list[Chain] = [(top,)]
        for _ in range(length):
            chains = [(q,) + c for c in chains for q in self._down[c[0]]]
        return chains

    def chains(self, elements: Iterable[str] | None = None) -> list[Chain]:
        """Every nonempty chain, listed by length then lexicographically in insertion order."""
        pool = self.elements if elements is None else self.sorted(set(elements))
        pool_set = set(pool)
        out: list[Chain] = []
        layer: list[Chain] = [(e,) for e in pool]
        while layer:
            out.extend(layer)
            nxt = []
            for c in layer:
                last = c[-1]
                for p in pool:
                    if p in self._above[last] and p in pool_set:
                        nxt.append(c + (p,))
            layer = nxt
        return out

    def order_complex(self, elements: Iterable[str] | None = None) -> list[Chain]:
        """Faces of the order complex (of the subposet on ``elements`` if given)."""
        return self.chains(elements)

    def proper_part(self) -> list[str]:
        """Elements other than the minimum and maximum."""
        return [e for e in self.elements if e != self.bottom and e != self.top]

    # serialisation --------------------------------------------------------------
    def to_json(self) -> dict:
        out = {"elements": list(self.elements), "covers": [list(c) for c in self.covers]}
        if self.bottom is not None:
            out["bottom"] = self.bottom
        if self.top is not None:
            out["top"] = self.top
        return out


def chain_str(chain: Sequence[str]) -> str:
    return "<".join(chain)


def parse_chain(text: str) -> Chain:
    return tuple(x.strip() for x in text.split("<"))


def simplicial_betti(faces: Sequence[Chain], field=None) -> dict[int, int]:
    """Reduced-free Betti numbers of a simplicial complex given by all its faces.

    Used as an independent check of order complexes.
    """
    from .linalg import QQ, ChainComplex, Matrix, homology_dims

    field = field or QQ
    by_dim: dict[int, list[Chain]] = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(tuple(f))
    index = {n: {f: i for i, f in enumerate(fs)} for n, fs in by_dim.items()}
    dims = {n: len(fs) for n, fs in by_dim.items()}
    diffs = {}
    for n, fs in by_dim.items():
        if n == 0:
            continue
        m = Matrix.zeros(field, dims.get(n - 1, 0), len(fs))
        for j, f in enumerate(fs):
            for k in range(len(f)):
                face = f[:k] + f[k + 1:]
                m.data[index[n - 1][face]][j] = field((-1) ** k)
        diffs[n] = m
    return homology_dims(ChainComplex(field, dims, diffs))
