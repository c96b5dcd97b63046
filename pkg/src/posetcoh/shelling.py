"""Recursive coatom orderings: the sets C(c), axiom checks and search.

A chain here is always an unrefinable chain ending at the top, written
bottom-up as a tuple ``(c_0, c_1, ..., top)``.  An ordering family assigns to
each such chain a total order of the coatoms of ``c_0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from .errors import (
    ChainNotToTop,
    NotCoatomOf,
    NotUnrefinable,
    OrderingError,
    SizeGuardExceeded,
)
from .poset import Chain, Poset, chain_str, parse_chain

DEFAULT_CHAIN_LIMIT = 200_000


class OrderingFamily:
    """Coatom orders per chain, given explicitly or by one global priority list.

    Lookups fall back in this order: the explicit entry for the chain, the
    global list, then poset insertion order.  Elements missing from a
    priority list go after the listed ones, in insertion order.
    """

    def __init__(self, poset: Poset, chains: Mapping[Chain, Sequence[str]] | None = None,
                 global_order: Sequence[str] | None = None):
        self.poset = poset
        self.global_order = list(global_order) if global_order is not None else None
        self._rank = {}
        if self.global_order is not None:
            for k, e in enumerate(self.global_order):
                poset._require(e)
                self._rank.setdefault(e, k)
        self.chains: dict[Chain, tuple[str, ...]] = {}
        for c, order in (chains or {}).items():
            c = tuple(c)
            poset.check_chain(c, unrefinable=True)
            expected = set(poset.lower_covers(c[0]))
            if len(order) != len(expected) or set(order) != expected:
                raise OrderingError(
                    f"order for chain {chain_str(c)} must list the coatoms of {c[0]!r} exactly once")
            self.chains[c] = tuple(order)

    def order(self, chain: Sequence[str]) -> tuple[str, ...]:
        chain = tuple(chain)
        hit = self.chains.get(chain)
        if hit is not None:
            return hit
        coatoms = self.poset.lower_covers(chain[0])
        n = len(self.poset)
        return tuple(sorted(coatoms, key=lambda e: (self._rank.get(e, n), self.poset.index(e))))

    def to_json(self) -> dict:
        if self.chains:
            return {"chains": {chain_str(c): list(o) for c, o in self.chains.items()}}
        return {"global": list(self.global_order or [])}

    @classmethod
    def from_json(cls, poset: Poset, data: Mapping) -> "OrderingFamily":
        chains = {parse_chain(k): list(v) for k, v in data.get("chains", {}).items()}
        return cls(poset, chains, data.get("global"))


def _check_top_chain(poset: Poset, chain: Sequence[str]) -> Chain:
    chain = tuple(chain)
    if not chain:
        raise ChainNotToTop("empty chain")
    top = poset.require_top()
    if chain[-1] != top:
        raise ChainNotToTop(f"chain {chain_str(chain)} does not end at the top")
    try:
        poset.check_chain(chain, unrefinable=True)
    except Exception as exc:
        raise NotUnrefinable(str(exc)) from exc
    return chain


def _c_from_prefix(poset: Poset, x: str, earlier: Iterable[str]) -> frozenset[str]:
    earlier = list(earlier)
    return frozenset(y for y in poset.lower_covers(x)
                     if any(poset.lt(y, h) for h in earlier))


def c_set(poset: Poset, family: OrderingFamily, chain: Sequence[str]) -> frozenset[str]:
    """``C(c)``: coatoms of ``c_0`` below some coatom of ``c_1`` listed before ``c_0``."""
    chain = _check_top_chain(poset, chain)
    if len(chain) == 1:
        return frozenset()
    tail = chain[1:]
    order = family.order(tail)
    earlier = order[: order.index(chain[0])]
    return _c_from_prefix(poset, chain[0], earlier)


def all_top_chains(poset: Poset, limit: int | None = DEFAULT_CHAIN_LIMIT) -> list[Chain]:
    """Every unrefinable chain ending at the top, shortest first."""
    top = poset.require_top()
    out: list[Chain] = []
    layer: list[Chain] = [(top,)]
    while layer:
        out.extend(layer)
        if limit is not None and len(out) > limit:
            raise SizeGuardExceeded(f"more than {limit} unrefinable chains")
        layer = [(q,) + c for c in layer for q in poset.lower_covers(c[0])]
    return out


@dataclass(frozen=True)
class CL1Violation:
    chain: Chain
    member: str
    preceded_by: str

    def describe(self) -> str:
        return f"CL1 at {chain_str(self.chain)}: {self.member} comes after non-member {self.preceded_by}"


@dataclass(frozen=True)
class CL2Violation:
    chain: Chain
    earlier: str
    later: str
    witness: str

    def describe(self) -> str:
        return (f"CL2 at {chain_str(self.chain)}: {self.earlier} before {self.later}, "
                f"common lower bound {self.witness} has no factorisation")


@dataclass
class ShellabilityReport:
    cl1: list[CL1Violation] = dc_field(default_factory=list)
    cl2: list[CL2Violation] = dc_field(default_factory=list)
    chains_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.cl1 and not self.cl2

    def describe(self) -> list[str]:
        return [v.describe() for v in self.cl1] + [v.describe() for v in self.cl2]


def _cl1_violation(chain: Chain, order: Sequence[str], cset: frozenset[str]):
    k = len(cset)
    head = order[:k]
    if set(head) == cset:
        return None
    member = next(x for x in order[k:] if x in cset)
    intruder = next(x for x in head if x not in cset)
    return CL1Violation(chain, member, intruder)


def _cl2_witness(poset: Poset, order: Sequence[str], pos: int) -> tuple[str, str] | None:
    """First ``(h', p)`` breaking the factorisation condition for ``order[pos]``."""
    h = order[pos]
    earlier = order[:pos]
    below_h = set(poset.strictly_below(h))
    lower_covers = poset.lower_covers(h)
    for h_prev in earlier:
        for p in poset.strictly_below(h_prev):
            if p not in below_h:
                continue
            if not any(poset.leq(p, q) and poset.lt(q, h2)
                       for h2 in earlier for q in lower_covers):
                return h_prev, p
    return None


def verify_ordering(poset: Poset, family: OrderingFamily,
                    limit: int | None = DEFAULT_CHAIN_LIMIT) -> ShellabilityReport:
    """Check CL1 and CL2 along every unrefinable chain ending at the top."""
    report = ShellabilityReport()
    for chain in all_top_chains(poset, limit):
        order = family.order(chain)
        report.chains_checked += 1
        v = _cl1_violation(chain, order, c_set(poset, family, chain))
        if v:
            report.cl1.append(v)
        for pos in range(1, len(order)):
            w = _cl2_witness(poset, order, pos)
            if w:
                report.cl2.append(CL2Violation(chain, w[0], order[pos], w[1]))
    return report


def codegree_two_final(poset: Poset) -> tuple[bool, str | None]:
    """Necessary condition for a valid ordering: the elements of codegree 1 or 2
    above any ``p`` span a connected subposet.

    Returns ``(ok, offending element)``.
    """
    top = poset.require_top()
    low_cd = [e for e in poset.elements if e != top and poset.codegree(e) <= 2]
    for p in poset.elements:
        if p == top:
            continue
        nodes = [e for e in low_cd if poset.leq(p, e)]
        if not nodes:
            return False, p
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            a = stack.pop()
            for b in nodes:
                if b not in seen and poset.comparable(a, b):
                    seen.add(b)
                    stack.append(b)
        if len(seen) != len(nodes):
            return False, p
    return True, None


class _Search:
    def __init__(self, poset: Poset, budget: int):
        self.poset = poset
        self.memo: dict[tuple[str, frozenset[str]], tuple[str, ...] | None] = {}
        self.budget = budget
        self.steps = 0

    def solve(self, c0: str, cset: frozenset[str]) -> tuple[str, ...] | None:
        key = (c0, cset)
        if key in self.memo:
            return self.memo[key]
        self.memo[key] = None  # guards against re-entry; the poset is acyclic anyway
        poset = self.poset
        coatoms = list(poset.lower_covers(c0))
        members = [x for x in coatoms if x in cset]
        others = [x for x in coatoms if x not in cset]
        result = self._extend(members, others, [])
        self.memo[key] = result
        return result

    def _extend(self, members: list[str], others: list[str], prefix: list[str]):
        if not members and not others:
            return tuple(prefix)
        pool = members if members else others
        for x in pool:
            self.steps += 1
            if self.steps > self.budget:
                raise SizeGuardExceeded(f"ordering search exceeded {self.budget} steps")
            prefix.append(x)
            if (_cl2_witness(self.poset, prefix, len(prefix) - 1) is None
                    and self.solve(x, _c_from_prefix(self.poset, x, prefix[:-1])) is not None):
                rest_m = [y for y in members if y != x]
                rest_o = [y for y in others if y != x]
                found = self._extend(rest_m, rest_o, prefix)
                if found is not None:
                    return found
            prefix.pop()
        return None


def find_ordering(poset: Poset, limit: int | None = DEFAULT_CHAIN_LIMIT,
                  budget: int = 2_000_000, prefilter: bool = True) -> OrderingFamily | None:
    """Search for an ordering family satisfying CL1 and CL2.

    Candidates are tried in insertion order, so the result is deterministic.
    Returns ``None`` when no family exists.
    """
    top = poset.require_top()
    chains = all_top_chains(poset, limit)
    if prefilter and not codegree_two_final(poset)[0]:
        return None
    search = _Search(poset, budget)
    if search.solve(top, frozenset()) is None:
        return None
    explicit: dict[Chain, tuple[str, ...]] = {}
    csets: dict[Chain, frozenset[str]] = {(top,): frozenset()}
    for chain in chains:
        order = search.memo[(chain[0], csets[chain])]
        explicit[chain] = order
        for k, x in enumerate(order):
            csets[(x,) + chain] = _c_from_prefix(poset, x, order[:k])
    return OrderingFamily(poset, explicit)


def is_compatible(poset: Poset, family: OrderingFamily, p: str,
                  subset: Iterable[str]) -> tuple[bool, Chain | None]:
    """Whether ``subset`` is an initial segment of the order at some chain starting at ``p``."""
    subset = set(subset)
    coatoms = set(poset.lower_covers(p))
    if not subset <= coatoms:
        raise NotCoatomOf(f"{sorted(subset - coatoms)} are not covered by {p!r}")
    top = poset.require_top()
    for chain in _chains_from(poset, p, top):
        order = family.order(chain)
        if set(order[: len(subset)]) == subset:
            return True, chain
    return False, None


def _chains_from(poset: Poset, p: str, top: str) -> list[Chain]:
    if p == top:
        return [(top,)]
    return [(p,) + c for u in poset.upper_covers(p) for c in _chains_from(poset, u, top)]


def inherited_family(poset: Poset, family: OrderingFamily, chain: Chain,
                     subset: Iterable[str]) -> tuple[Poset, OrderingFamily]:
    """The poset ``<Q> + {c_0}`` with the ordering family restricted from ``family``.

    ``chain`` starts at ``c_0`` and witnesses that ``Q`` is compatible.
    """
    p = chain[0]
    elems = poset.lower_closure(subset) | {p}
    sub = poset.subposet(elems)
    explicit = {}
    for c in all_top_chains(sub):
        full = c[:-1] + chain
        order = family.order(full)
        explicit[c] = tuple(x for x in order if x in elems)
    return sub, OrderingFamily(sub, explicit)
