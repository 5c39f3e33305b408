"""Exact and greedy minimum dominating set computation."""

from __future__ import annotations

import itertools
import logging
from typing import Iterable

from pydantic import BaseModel, ConfigDict, computed_field

from girthguard.bounds import evaluate_all
from girthguard.config import get_bb_max_n, get_brute_guard, get_brute_max_n
from girthguard.graph import Graph
from girthguard.utils import PreconditionError, VerificationError, ceil_tolerant

logger = logging.getLogger(__name__)


class DominationCertificate(BaseModel):
    """A dominating set, flagged as minimum only by the exact solvers."""

    model_config = ConfigDict(frozen=True)

    members: tuple[int, ...]
    verified_minimum: bool = False
    method: str = "greedy"

    @computed_field  # type: ignore[prop-decorator]
    @property
    def size(self) -> int:
        return len(self.members)


class SearchStats(BaseModel):
    """Counters from one branch-and-bound run."""

    nodes: int = 0
    pruned: int = 0
    root_bound: int = 0
    incumbent_updates: int = 0


def _mask_of(g: Graph, s: Iterable[int]) -> int:
    mask = 0
    for v in s:
        g.check_vertex(v)
        mask |= 1 << v
    return mask


def _members(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _dominated_mask(g: Graph, mask: int) -> int:
    closed = g.closed_masks
    covered = 0
    rest = mask
    while rest:
        low = rest & -rest
        covered |= closed[low.bit_length() - 1]
        rest ^= low
    return covered


def is_dominating(g: Graph, s: Iterable[int]) -> bool:
    """True iff every vertex outside ``s`` has a neighbour in ``s``.

    Raises:
        PreconditionError: if an id in ``s`` is not a vertex of ``g``.
    """
    return _dominated_mask(g, _mask_of(g, s)) == g.full_mask


def _certify(g: Graph, members: Iterable[int], *, minimum: bool, method: str):
    certificate = DominationCertificate(
        members=tuple(sorted(members)), verified_minimum=minimum, method=method
    )
    if not is_dominating(g, certificate.members):
        raise VerificationError(
            f"{method} produced a non-dominating set {list(certificate.members)}"
        )
    return certificate


def greedy_upper_bound(g: Graph) -> DominationCertificate:
    """Greedy dominating set: repeatedly take the vertex covering the most
    undominated vertices, ties going to the lowest id."""
    closed = g.closed_masks
    undominated = g.full_mask
    chosen: list[int] = []
    while undominated:
        best_v, best_cover = -1, 0
        for v in g.vertices():
            cover = (closed[v] & undominated).bit_count()
            if cover > best_cover:
                best_v, best_cover = v, cover
        chosen.append(best_v)
        undominated &= ~closed[best_v]
    return _certify(g, chosen, minimum=False, method="greedy")


def gamma_brute(
    g: Graph, size_cap: int | None = None, max_n: int | None = None
) -> DominationCertificate:
    """Minimum dominating set by exhaustive enumeration.

    Subsets are tried in increasing cardinality and lexicographic order within a
    cardinality; the first dominating one is returned.

    Args:
        g: Graph with at most ``max_n`` vertices.
        size_cap: Largest cardinality to try; defaults to the greedy set size.
        max_n: Vertex-count guard; defaults to the configured brute-force guard.

    Raises:
        PreconditionError: guard exceeded, ``size_cap < 1`` or nothing found
            within ``size_cap``.
    """
    guard = max_n if max_n is not None else get_brute_guard()
    if g.n > guard:
        raise PreconditionError(
            f"brute force refused: n={g.n} exceeds the guard of {guard} vertices"
        )
    if g.n == 0:
        return DominationCertificate(members=(), verified_minimum=True, method="brute")
    if size_cap is None:
        size_cap = greedy_upper_bound(g).size
    if size_cap < 1:
        raise PreconditionError(f"size_cap must be at least 1, got {size_cap}")

    closed = g.closed_masks
    full = g.full_mask
    for k in range(1, min(size_cap, g.n) + 1):
        for subset in itertools.combinations(range(g.n), k):
            covered = 0
            for v in subset:
                covered |= closed[v]
            if covered == full:
                return _certify(g, subset, minimum=True, method="brute")

    raise PreconditionError(f"no dominating set with at most {size_cap} vertices")


def girth_root_bound(g: Graph) -> int:
    """Best integer lower bound on the domination number of the whole graph from
    the girth-based bounds whose preconditions hold."""
    report = evaluate_all(g)
    best = 0
    for entry in report.gamma_entries():
        if entry.applicable and entry.value is not None:
            best = max(best, ceil_tolerant(entry.value))
    return best


class BranchAndBoundSolver:
    """Exact minimum dominating set by depth-first branch-and-bound.

    The branch vertex is the lowest-id undominated vertex; its closed neighbourhood
    is tried in ascending id order. A node is pruned when the partial size plus an
    admissible bound on the residual instance reaches the incumbent. The girth-based
    bounds apply to the whole graph only, so they are used as a root bound that stops
    the search once the incumbent meets them.
    """

    def __init__(self, g: Graph, use_girth_bounds: bool = True):
        self.g = g
        self.use_girth_bounds = use_girth_bounds
        self.stats = SearchStats()
        self._closed = g.closed_masks
        self._ball2 = self._distance_two_masks()
        self._best_mask = 0
        self._best_size = 0
        self._root_bound = 0

    def _distance_two_masks(self) -> tuple[int, ...]:
        closed = self._closed
        balls = []
        for v in self.g.vertices():
            ball = closed[v]
            for w in self.g.neighbors(v):
                ball |= closed[w]
            balls.append(ball)
        return tuple(balls)

    def _residual_bound(self, undominated: int) -> int:
        """Admissible bound on vertices still needed to dominate ``undominated``."""
        closed = self._closed
        max_cover = 0
        for mask in closed:
            cover = (mask & undominated).bit_count()
            if cover > max_cover:
                max_cover = cover
        counting = -(-undominated.bit_count() // max_cover)

        # Undominated vertices pairwise at distance >= 3 need distinct dominators.
        packing = 0
        blocked = 0
        rest = undominated
        while rest:
            low = rest & -rest
            rest ^= low
            if blocked & low:
                continue
            packing += 1
            blocked |= self._ball2[low.bit_length() - 1]
        return max(counting, packing)

    def solve(self) -> DominationCertificate:
        g = self.g
        if g.n == 0:
            return DominationCertificate(members=(), verified_minimum=True, method="bb")

        incumbent = greedy_upper_bound(g)
        self._best_mask = _mask_of(g, incumbent.members)
        self._best_size = incumbent.size

        self._root_bound = self._residual_bound(g.full_mask)
        if self.use_girth_bounds:
            self._root_bound = max(self._root_bound, girth_root_bound(g))
        self.stats.root_bound = self._root_bound

        if self._best_size > self._root_bound:
            self._search(0, 0, g.full_mask)

        logger.debug(
            "branch-and-bound n=%d gamma=%d nodes=%d pruned=%d root_bound=%d",
            g.n,
            self._best_size,
            self.stats.nodes,
            self.stats.pruned,
            self._root_bound,
        )
        return _certify(g, _members(self._best_mask), minimum=True, method="bb")

    def _search(self, chosen: int, count: int, undominated: int) -> None:
        self.stats.nodes += 1
        if not undominated:
            if count < self._best_size:
                self._best_size = count
                self._best_mask = chosen
                self.stats.incumbent_updates += 1
            return

        if count + self._residual_bound(undominated) >= self._best_size:
            self.stats.pruned += 1
            return

        low = undominated & -undominated
        v = low.bit_length() - 1
        options = self._closed[v]
        while options:
            bit = options & -options
            options ^= bit
            w = bit.bit_length() - 1
            self._search(chosen | bit, count + 1, undominated & ~self._closed[w])
            if self._best_size <= self._root_bound:
                return


def gamma_exact(g: Graph, use_girth_bounds: bool = True) -> DominationCertificate:
    """Minimum dominating set by branch-and-bound (see ``BranchAndBoundSolver``)."""
    return BranchAndBoundSolver(g, use_girth_bounds=use_girth_bounds).solve()


def solve_gamma(g: Graph, method: str = "auto") -> DominationCertificate:
    """Dispatch to the brute-force oracle or the branch-and-bound solver.

    ``auto`` uses brute force up to the configured brute threshold and
    branch-and-bound up to the configured branch-and-bound threshold.

    Raises:
        PreconditionError: unknown method, or ``auto`` on a graph above both
            thresholds.
    """
    if method == "brute":
        return gamma_brute(g)
    if method == "bb":
        return gamma_exact(g)
    if method != "auto":
        raise PreconditionError(f"unknown solver method '{method}'")

    if g.n <= get_brute_max_n():
        return gamma_brute(g)
    if g.n <= get_bb_max_n():
        return gamma_exact(g)
    raise PreconditionError(
        f"n={g.n} exceeds the branch-and-bound threshold of {get_bb_max_n()} vertices"
    )
