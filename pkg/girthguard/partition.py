"""Partition of a graph around a minimum dominating set, and the structural checks
that the girth-based lower bounds rest on.

``build_partition`` seeds one subset per dominating vertex, hands every other vertex
to its lowest-index adjacent dominator, then repeatedly moves a vertex into another
subset whose members are all its neighbours, colouring it green. A move the
minimality argument forbids (a dominating vertex or a green vertex becoming movable)
is turned into a strictly smaller dominating set instead.
"""

from __future__ import annotations

import logging
from enum import Enum
from typing import Iterable, Optional, Sequence

from pydantic import BaseModel, ConfigDict

from girthguard.graph import Girth, Graph, girth as graph_girth, structure_summary
from girthguard.solver import DominationCertificate, is_dominating
from girthguard.utils import PreconditionError, VerificationError

logger = logging.getLogger(__name__)


class Color(str, Enum):
    RED = "red"
    GREEN = "green"


class Move(BaseModel):
    model_config = ConfigDict(frozen=True)

    vertex: int
    source: int
    target: int


class Partition(BaseModel):
    """Disjoint subsets, one per dominating vertex (``centers[i]`` seeds ``subsets[i]``)."""

    model_config = ConfigDict(frozen=True)

    subsets: tuple[tuple[int, ...], ...]
    centers: tuple[int, ...]
    colors: tuple[Color, ...]
    moves: tuple[Move, ...] = ()

    @property
    def size(self) -> int:
        return len(self.subsets)

    def greens(self, index: int | None = None) -> tuple[int, ...]:
        members = (
            (v for subset in self.subsets for v in subset)
            if index is None
            else self.subsets[index]
        )
        return tuple(sorted(v for v in members if self.colors[v] is Color.GREEN))

    def subset_of(self) -> dict[int, int]:
        return {v: i for i, subset in enumerate(self.subsets) for v in subset}


class SmallerSetCertificate(BaseModel):
    """A dominating set strictly smaller than the one the partition was seeded with."""

    model_config = ConfigDict(frozen=True)

    certificate: DominationCertificate
    witness: int
    removed: tuple[int, ...]
    subsets: tuple[int, int]
    input_size: int


class Violation(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: str
    message: str
    subsets: tuple[int, ...] = ()
    vertices: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


class EdgeSplit(BaseModel):
    """Inner edges (inside one subset) and intra edges (between subsets)."""

    model_config = ConfigDict(frozen=True)

    inner: tuple[tuple[int, int], ...]
    intra: tuple[tuple[int, int], ...]


class QuotientGraph(BaseModel):
    """One vertex per subset; an edge wherever some intra edge links two subsets."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    graph: Graph
    degrees: tuple[int, ...]
    edge_count: int


def build_partition(
    g: Graph, d: Sequence[int]
) -> Partition | SmallerSetCertificate:
    """Partition ``g`` around the dominating set ``d``.

    Subset ``i`` is seeded with the ``i``-th smallest member of ``d``. Unassigned
    vertices are handled in ascending id order, each joining the adjacent dominator of
    lowest index. Moves are searched by ascending vertex id, then ascending target
    index; the first applicable move fires and the scan restarts.

    Returns:
        The partition, or a ``SmallerSetCertificate`` when ``d`` turns out not to be
        minimum.

    Raises:
        PreconditionError: ``d`` has duplicates, invalid ids or does not dominate ``g``.
    """
    if len(set(d)) != len(d):
        raise PreconditionError(f"dominating set has duplicate ids: {list(d)}")
    if not is_dominating(g, d):
        raise PreconditionError(f"{sorted(d)} is not a dominating set")

    centers = tuple(sorted(d))
    subsets: list[set[int]] = [{u} for u in centers]
    owner = [-1] * g.n
    for i, u in enumerate(centers):
        owner[u] = i

    for v in g.vertices():
        if owner[v] != -1:
            continue
        i = next(i for i, u in enumerate(centers) if g.has_edge(u, v))
        subsets[i].add(v)
        owner[v] = i

    colors = [Color.RED] * g.n
    center_set = set(centers)
    moves: list[Move] = []

    while True:
        move = _first_move(g, subsets, owner)
        if move is None:
            break
        v, i, j = move

        if v in center_set:
            return _refute(
                g, centers, keep=(), drop=(centers[j],), witness=v, pair=(i, j)
            )
        if colors[v] is Color.GREEN:
            return _refute(
                g,
                centers,
                keep=(v,),
                drop=(centers[i], centers[j]),
                witness=v,
                pair=(i, j),
            )

        subsets[i].discard(v)
        subsets[j].add(v)
        owner[v] = j
        colors[v] = Color.GREEN
        moves.append(Move(vertex=v, source=i, target=j))
        logger.debug("move %d: %d->%d", v, i, j)

    return Partition(
        subsets=tuple(tuple(sorted(s)) for s in subsets),
        centers=centers,
        colors=tuple(colors),
        moves=tuple(moves),
    )


def _first_move(
    g: Graph, subsets: list[set[int]], owner: list[int]
) -> Optional[tuple[int, int, int]]:
    neighbor_masks = g.neighbor_masks
    subset_masks = [_mask(s) for s in subsets]
    for v in g.vertices():
        i = owner[v]
        for j, mask in enumerate(subset_masks):
            if j != i and mask & neighbor_masks[v] == mask:
                return v, i, j
    return None


def _mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _refute(
    g: Graph,
    centers: tuple[int, ...],
    keep: tuple[int, ...],
    drop: tuple[int, ...],
    witness: int,
    pair: tuple[int, int],
) -> SmallerSetCertificate:
    members = (set(centers) - set(drop)) | set(keep)
    certificate = DominationCertificate(
        members=tuple(sorted(members)), verified_minimum=False, method="refutation"
    )
    if certificate.size >= len(centers) or not is_dominating(g, certificate.members):
        raise VerificationError(
            f"refutation via vertex {witness} did not yield a smaller dominating set"
        )
    logger.info(
        "Input set of size %d is not minimum: %s dominates",
        len(centers),
        list(certificate.members),
    )
    return SmallerSetCertificate(
        certificate=certificate,
        witness=witness,
        removed=tuple(sorted(drop)),
        subsets=pair,
        input_size=len(centers),
    )


def is_outer_dominated(g: Graph, s: Iterable[int]) -> Optional[int]:
    """Lowest-id vertex outside ``s`` adjacent to every vertex of ``s``, or ``None``.

    Raises:
        PreconditionError: ``s`` is empty or holds invalid ids.
    """
    members = sorted(set(s))
    if not members:
        raise PreconditionError("outer domination is undefined for an empty set")
    for v in members:
        g.check_vertex(v)

    common = g.neighbor_masks[members[0]]
    for v in members[1:]:
        common &= g.neighbor_masks[v]
    common &= ~_mask(members)
    if not common:
        return None
    return (common & -common).bit_length() - 1


def validate_partition(
    g: Graph, p: Partition, girth: Girth | None = None
) -> list[Violation]:
    """Check a partition against every structural property the bounds rely on.

    Always: disjoint cover, one center per subset, every member equal or adjacent to
    its center, no subset outer-dominated. At girth >= 4: each subset induces a star
    centred at its center. At girth >= 7: at most one intra edge per subset pair.
    Malformed partitions are reported, never raised.
    """
    violations: list[Violation] = []
    girth = girth if girth is not None else graph_girth(g)

    if len(p.centers) != len(p.subsets):
        violations.append(
            Violation(
                kind="centers",
                message=f"{len(p.centers)} centers for {len(p.subsets)} subsets",
            )
        )
        return violations

    seen: dict[int, int] = {}
    for i, subset in enumerate(p.subsets):
        for v in subset:
            if not 0 <= v < g.n:
                violations.append(
                    Violation(
                        kind="range",
                        message=f"subset {i} lists vertex {v} outside the graph",
                        subsets=(i,),
                        vertices=(v,),
                    )
                )
            elif v in seen:
                violations.append(
                    Violation(
                        kind="overlap",
                        message=f"vertex {v} appears in subsets {seen[v]} and {i}",
                        subsets=(seen[v], i),
                        vertices=(v,),
                    )
                )
            else:
                seen[v] = i
    missing = [v for v in g.vertices() if v not in seen]
    if missing:
        violations.append(
            Violation(
                kind="cover",
                message=f"vertices {missing} belong to no subset",
                vertices=tuple(missing),
            )
        )
    if violations:
        return violations

    center_set = set(p.centers)
    for i, subset in enumerate(p.subsets):
        center = p.centers[i]
        dominators = [v for v in subset if v in center_set]
        if dominators != [center]:
            violations.append(
                Violation(
                    kind="center",
                    message=(
                        f"subset {i} holds dominating vertices {dominators}, "
                        f"expected exactly [{center}]"
                    ),
                    subsets=(i,),
                    vertices=tuple(dominators),
                )
            )
        far = [v for v in subset if v != center and not g.has_edge(v, center)]
        if far:
            violations.append(
                Violation(
                    kind="center_adjacency",
                    message=f"subset {i} members {far} are not adjacent to center {center}",
                    subsets=(i,),
                    vertices=tuple(far),
                )
            )
        witness = is_outer_dominated(g, subset) if subset else None
        if witness is not None:
            violations.append(
                Violation(
                    kind="outer_dominated",
                    message=f"subset {i} {list(subset)} is outer-dominated by {witness}",
                    subsets=(i,),
                    vertices=(witness,),
                )
            )
        if girth.at_least(4):
            leaves = [v for v in subset if v != center]
            chords = [
                (a, b)
                for k, a in enumerate(leaves)
                for b in leaves[k + 1 :]
                if g.has_edge(a, b)
            ]
            if chords:
                violations.append(
                    Violation(
                        kind="star",
                        message=(
                            f"subset {i} is not a star centred at {center}: "
                            f"edges {chords} join non-center members"
                        ),
                        subsets=(i,),
                        vertices=tuple(sorted({x for e in chords for x in e})),
                    )
                )

    if girth.at_least(7):
        owner = p.subset_of()
        pair_counts: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for u, v in g.edges:
            a, b = owner[u], owner[v]
            if a != b:
                pair_counts.setdefault((min(a, b), max(a, b)), []).append((u, v))
        for (a, b), edges in sorted(pair_counts.items()):
            if len(edges) > 1:
                violations.append(
                    Violation(
                        kind="intra_pair",
                        message=(
                            f"subsets {a} and {b} are joined by {len(edges)} "
                            f"intra edges {edges}"
                        ),
                        subsets=(a, b),
                        vertices=tuple(sorted({x for e in edges for x in e})),
                    )
                )

    if len(p.moves) > g.n:
        violations.append(
            Violation(kind="moves", message=f"{len(p.moves)} moves exceed n={g.n}")
        )
    moved = [mv.vertex for mv in p.moves]
    repeated = sorted({v for v in moved if moved.count(v) > 1})
    if repeated:
        violations.append(
            Violation(
                kind="moves",
                message=f"vertices {repeated} moved more than once",
                vertices=tuple(repeated),
            )
        )
    return violations


def split_edges(g: Graph, p: Partition) -> EdgeSplit:
    """Classify every edge as inner (both ends in one subset) or intra."""
    owner = p.subset_of()
    inner = []
    intra = []
    for u, v in g.edges:
        (inner if owner[u] == owner[v] else intra).append((u, v))
    return EdgeSplit(inner=tuple(inner), intra=tuple(intra))


def quotient_graph(g: Graph, p: Partition) -> QuotientGraph:
    """Graph on the subsets with an edge wherever an intra edge joins two of them."""
    owner = p.subset_of()
    pairs = set()
    for u, v in g.edges:
        a, b = owner[u], owner[v]
        if a != b:
            pairs.add((min(a, b), max(a, b)))
    h = Graph(p.size, pairs)
    return QuotientGraph(graph=h, degrees=tuple(h.degrees()), edge_count=h.m)


def edge_chain_violations(
    g: Graph, p: Partition, gamma: int, girth: Girth | None = None
) -> list[str]:
    """Check the measured edge-count inequalities behind the lower bounds.

    Each failure is returned as a message naming the inequality and the measured
    quantities. Conditions follow the hypotheses each inequality needs.
    """
    failures: list[str] = []
    girth = girth if girth is not None else graph_girth(g)
    summary = structure_summary(g)
    split = split_edges(g, p)
    inner, intra = len(split.inner), len(split.intra)
    n, m = g.n, g.m

    def check(ok: bool, message: str) -> None:
        if not ok:
            failures.append(message)

    check(p.size == gamma, f"subset count {p.size} != gamma {gamma}")
    check(inner + intra == m, f"|I1|+|I2| = {inner}+{intra} != m = {m}")
    if girth.at_least(4):
        check(inner <= n - gamma, f"|I1| = {inner} > n - gamma = {n - gamma}")

    girth7 = girth.is_finite and girth.value >= 7 and summary.connected
    if girth7 and not summary.is_star:
        half = gamma * (gamma - 1) // 2
        check(intra <= half, f"|I2| = {intra} > gamma(gamma-1)/2 = {half}")
        check(
            m <= n - gamma + half,
            f"m = {m} > n - gamma + gamma(gamma-1)/2 = {n - gamma + half}",
        )
        small = [i for i, s in enumerate(p.subsets) if len(s) < 2]
        check(not small, f"subsets {small} have fewer than 2 vertices")

    quotient = quotient_graph(g, p)
    mindeg2 = summary.min_degree >= 2
    if girth7 and mindeg2:
        large = [i for i, s in enumerate(p.subsets) if len(s) > gamma]
        check(not large, f"subsets {large} have more than gamma = {gamma} vertices")
        check(n <= gamma * gamma, f"n = {n} > gamma^2 = {gamma * gamma}")
        check(
            inner <= gamma * (gamma - 1),
            f"|I1| = {inner} > gamma(gamma-1) = {gamma * (gamma - 1)}",
        )
        check(2 * m <= 3 * gamma * gamma, f"m = {m} > 3 gamma^2 / 2")
        check(
            inner <= 2 * quotient.edge_count,
            f"|I1| = {inner} > 2E(H) = {2 * quotient.edge_count}",
        )

    if girth.is_finite and girth.value >= 12 and mindeg2 and summary.connected:
        l = girth.value // 3
        e_h = quotient.edge_count
        check(intra <= e_h, f"|I2| = {intra} > E(H) = {e_h}")
        check(m <= 3 * e_h, f"m = {m} > 3E(H) = {3 * e_h}")
        check(
            e_h * (l - 1) <= gamma * (gamma - 1),
            f"E(H) = {e_h} > gamma(gamma-1)/(l-1) with l = {l}",
        )
        check(m * (l - 1) <= 3 * gamma * gamma, f"m = {m} > 3 gamma^2/(l-1), l = {l}")
        h_girth = graph_girth(quotient.graph)
        check(h_girth.at_least(l), f"quotient girth {h_girth} < floor(g/3) = {l}")

    return failures


def format_partition(p: Partition) -> str:
    """One line per subset: ``i: center=<u> members=<ids> greens=<ids>``."""
    lines = []
    for i, subset in enumerate(p.subsets):
        members = ",".join(str(v) for v in subset)
        greens = ",".join(str(v) for v in p.greens(i))
        lines.append(f"{i}: center={p.centers[i]} members={members} greens={greens}")
    return "\n".join(lines)


def format_moves(p: Partition) -> str:
    return "\n".join(f"move {mv.vertex}: {mv.source}->{mv.target}" for mv in p.moves)
