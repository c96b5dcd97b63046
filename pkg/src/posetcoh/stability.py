"""Stability and co-stability of functors along a recursive coatom ordering,
and weak Mackey functors with quasi-units."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping

from .errors import DegreeOutOfRange, MissingCoverMap, OrderingInvalid, ShapeMismatch, VarianceError
from .functor import CO, CONTRA, Functor
from .linalg import Matrix, kernel_basis, stack_v
from .poset import Chain, Poset, chain_str
from .shelling import OrderingFamily, c_set, verify_ordering


@dataclass(frozen=True)
class ChainCheck:
    """Rank data of the comparison map at one chain."""

    chain: Chain
    c_set: tuple[str, ...]
    source_dim: int
    target_dim: int
    rank: int

    def describe(self) -> str:
        return (f"{chain_str(self.chain)}: C = {{{', '.join(self.c_set)}}}, "
                f"rank {self.rank} for a {self.target_dim}x{self.source_dim} map")


@dataclass
class StabilityReport:
    degree: int
    variance: str
    failures: list[ChainCheck] = dc_field(default_factory=list)
    chains_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures


def poset_degree(poset: Poset) -> int:
    return poset.degree(poset.require_top())


def _prepare(poset: Poset, family: OrderingFamily, i: int, verified: bool) -> None:
    d = poset_degree(poset)
    if not 1 <= i <= d - 1:
        raise DegreeOutOfRange(f"degree {i} outside 1..{d - 1}")
    if not verified:
        report = verify_ordering(poset, family)
        if not report.ok:
            raise OrderingInvalid("; ".join(report.describe()[:3]))


def check_stability(poset: Poset, family: OrderingFamily, f: Functor, i: int,
                    verified: bool = False) -> StabilityReport:
    """Whether ``F(c_0) -> lim_<C(c)> F`` is onto for every chain of length ``i``."""
    if f.variance != CONTRA:
        raise VarianceError("stability is defined for contravariant functors")
    _prepare(poset, family, i, verified)
    report = StabilityReport(i, CONTRA)
    for chain in poset.unrefinable_top_chains(i):
        report.chains_checked += 1
        cs = c_set(poset, family, chain)
        if not cs:
            continue
        m, lim = f.map_into_limit(chain[0], poset.lower_closure(cs))
        r = m.rank()
        if r != lim.dim:
            report.failures.append(ChainCheck(chain, tuple(poset.sorted(cs)), f.dim(chain[0]), lim.dim, r))
    return report


def check_costability(poset: Poset, family: OrderingFamily, f: Functor, i: int,
                      verified: bool = False) -> StabilityReport:
    """Whether ``colim_<C(c)> F -> F(c_0)`` is one-to-one for every chain of length ``i``."""
    if f.variance != CO:
        raise VarianceError("co-stability is defined for covariant functors")
    _prepare(poset, family, i, verified)
    report = StabilityReport(i, CO)
    for chain in poset.unrefinable_top_chains(i):
        report.chains_checked += 1
        cs = c_set(poset, family, chain)
        if not cs:
            continue
        m, col = f.map_from_colimit(chain[0], poset.lower_closure(cs))
        r = m.rank()
        if r != col.dim:
            report.failures.append(ChainCheck(chain, tuple(poset.sorted(cs)), col.dim, f.dim(chain[0]), r))
    return report


def predict_vanishing(poset: Poset, family: OrderingFamily, f: Functor,
                      verified: bool = False) -> list[int]:
    """Degrees ``i`` in ``1..d-1`` where the (co)stability check passes."""
    if not verified and not verify_ordering(poset, family).ok:
        raise OrderingInvalid("ordering fails the shelling axioms")
    check = check_stability if f.variance == CONTRA else check_costability
    return [i for i in range(1, poset_degree(poset))
            if check(poset, family, f, i, verified=True).ok]


# ---------------------------------------------------------------------------
# Weak Mackey functors


@dataclass(frozen=True)
class MackeyViolation:
    kind: str  # "linearity" or "kernel"
    detail: tuple[str, ...]

    def describe(self) -> str:
        if self.kind == "linearity":
            i, j, l = self.detail
            return f"alpha({i},{j}) is not linear with respect to {l}<{j}"
        k, i, j = self.detail
        return f"kernel condition fails for {k}<{i} against {j}<{i}"


class MackeyFunctor:
    """A contravariant functor ``G`` with transfers ``T(j<i): G(j) -> G(i)``.

    Transfers are wanted for every relation ``j < i``.  Missing ones are
    composed along the first cover path when every cover has a transfer, and
    default to zero when one of the two values is zero.
    """

    def __init__(self, g: Functor, transfers: Mapping[tuple[str, str], Matrix]):
        if g.variance != CONTRA:
            raise VarianceError("a Mackey functor is built on a contravariant functor")
        self.g = g
        poset = g.poset
        self.transfers: dict[tuple[str, str], Matrix] = {}
        for (j, i), m in transfers.items():
            if not poset.lt(j, i):
                raise ShapeMismatch(f"transfer {j}<{i} is not along a relation")
            if m.shape != (g.dim(i), g.dim(j)):
                raise ShapeMismatch(f"transfer {j}<{i} has shape {m.shape}, "
                                    f"expected {(g.dim(i), g.dim(j))}")
            self.transfers[(j, i)] = m
        for i in poset.topological_order():
            for j in poset.strictly_below(i):
                if (j, i) in self.transfers:
                    continue
                self.transfers[(j, i)] = self._fill(j, i)

    def _fill(self, j: str, i: str) -> Matrix:
        g = self.g
        if not g.dim(i) or not g.dim(j):
            return Matrix.zeros(g.field, g.dim(i), g.dim(j))
        if g.poset.is_cover(j, i):
            raise MissingCoverMap(f"no transfer for cover {j}<{i}")
        r = next(r for r in g.poset.lower_covers(i) if g.poset.leq(j, r))
        return self.transfer(r, i) @ self.transfer(j, r)

    def transfer(self, j: str, i: str) -> Matrix:
        return self.transfers[(j, i)]

    def alpha(self, i: str, j: str) -> Matrix:
        """The round trip ``G(j<i) T(j<i)`` on ``G(j)``."""
        return self.g.map(j, i) @ self.transfer(j, i)

    def is_linear(self, j: str, a: Matrix) -> str | None:
        """First ``l < j`` witnessing that ``a`` is not ``G``-linear, or ``None``."""
        g = self.g
        for l in g.poset.strictly_below(j):
            res = g.map(l, j)
            ker = kernel_basis(res)
            if ker.cols and not (res @ a @ ker).is_zero():
                return l
        return None

    def kernel_of(self, k: str) -> Matrix:
        """Basis of the intersection of the kernels of the restrictions out of ``G(k)``."""
        g = self.g
        covers = g.poset.lower_covers(k)
        if not covers:
            return Matrix.identity(g.field, g.dim(k))
        return kernel_basis(stack_v(g.field, [g.map(l, k) for l in covers], g.dim(k)))

    def violations(self) -> list[MackeyViolation]:
        g = self.g
        poset = g.poset
        out = []
        for i in poset.elements:
            for j in poset.strictly_below(i):
                l = self.is_linear(j, self.alpha(i, j))
                if l is not None:
                    out.append(MackeyViolation("linearity", (i, j, l)))
        for i in poset.elements:
            below = poset.strictly_below(i)
            for k in below:
                kk = self.kernel_of(k)
                if not kk.cols:
                    continue
                push = self.transfer(k, i) @ kk
                for j in below:
                    if poset.leq(k, j):
                        continue
                    if not (g.map(j, i) @ push).is_zero():
                        out.append(MackeyViolation("kernel", (k, i, j)))
        return out

    def is_weak_mackey(self) -> bool:
        return not self.violations()

    def quasi_unit_in(self, subset: Iterable[str]) -> bool:
        """Every ``alpha(i, j)`` with ``j < i`` in ``subset`` is a ``G``-linear automorphism."""
        g = self.g
        poset = g.poset
        members = poset.sorted(set(subset))
        for i in members:
            for j in members:
                if not poset.lt(j, i):
                    continue
                a = self.alpha(i, j)
                if a.rank() != g.dim(j):
                    return False
                for l in poset.strictly_below(j):
                    res = g.map(l, j)
                    if (res @ a).rank() != res.rank():
                        return False
                if self.is_linear(j, a) is not None:
                    return False
        return True

    def local_quasi_units(self, family: OrderingFamily, i: int) -> list[Chain]:
        """Chains of length ``i`` where ``{c_0} + <C(c)>`` has no quasi-unit."""
        poset = self.g.poset
        bad = []
        for chain in poset.unrefinable_top_chains(i):
            region = poset.lower_closure(c_set(poset, family, chain)) | {chain[0]}
            if not self.quasi_unit_in(region):
                bad.append(chain)
        return bad

    def to_json(self) -> dict:
        out = self.g.to_json()
        out["transfers"] = {f"{j}<{i}": m.to_json() for (j, i), m in self.transfers.items()}
        return out
