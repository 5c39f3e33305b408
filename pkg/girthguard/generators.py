"""Graph families for the verification corpus.

Random generators draw from ``SplitMix64`` so that corpora are reproducible
bit-for-bit from a seed:

    state  = (state + 0x9E3779B97F4A7C15) mod 2**64
    z      = state
    z      = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z      = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output = z ^ (z >> 31)

``below(k)`` is ``output mod k``.
"""

from __future__ import annotations

import functools
import logging
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, model_validator

from girthguard.graph import (
    Graph,
    breadth_first_distances,
    girth,
    read_graph,
    structure_summary,
)
from girthguard.utils import PreconditionError, VerificationError

logger = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1

GeneratorKind = Literal[
    "cycle", "path", "star", "cage", "random_girth", "random", "subdivide"
]

CAGE_NAMES = ("petersen", "heawood", "mcgee", "tutte_coxeter")


class SplitMix64:
    """Small 64-bit mixing generator (see module docstring for the exact update)."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Integer in ``[0, bound)``."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        return self.next_u64() % bound


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise PreconditionError(f"cycle needs n >= 3, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def gen_path(n: int) -> Graph:
    if n < 1:
        raise PreconditionError(f"path needs n >= 1, got {n}")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def gen_star(k: int) -> Graph:
    """Star K_{1,k} with center 0."""
    if k < 1:
        raise PreconditionError(f"star needs k >= 1 leaves, got {k}")
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


def _lcf(n: int, shifts: list[int], repeats: int) -> list[tuple[int, int]]:
    edges = {(min(i, (i + 1) % n), max(i, (i + 1) % n)) for i in range(n)}
    pattern = shifts * repeats
    for i, shift in enumerate(pattern):
        j = (i + shift) % n
        edges.add((min(i, j), max(i, j)))
    return sorted(edges)


# name -> (n, m, girth, degree, edges)
_CAGES: dict[str, tuple[int, int, int, int, list[tuple[int, int]]]] = {
    "petersen": (
        10,
        15,
        5,
        3,
        [(i, (i + 1) % 5) for i in range(5)]
        + [(i, i + 5) for i in range(5)]
        + [(5 + i, 5 + (i + 2) % 5) for i in range(5)],
    ),
    "heawood": (14, 21, 6, 3, _lcf(14, [5, -5], 7)),
    "mcgee": (24, 36, 7, 3, _lcf(24, [12, 7, -7], 8)),
    "tutte_coxeter": (30, 45, 8, 3, _lcf(30, [-13, -9, 7, -7, 9, 13], 5)),
}


@functools.cache
def gen_cage(name: str) -> Graph:
    """Embedded cage, checked against its declared (n, m, girth, degree).

    Raises:
        PreconditionError: unknown name.
        VerificationError: the embedded construction fails its declared profile.
    """
    key = name.strip().lower().replace("-", "_")
    if key not in _CAGES:
        raise PreconditionError(
            f"unknown cage '{name}'; choose from {', '.join(CAGE_NAMES)}"
        )
    n, m, g_expected, degree, edges = _CAGES[key]
    graph = Graph(n, edges)
    summary = structure_summary(graph)
    measured = girth(graph)
    if (
        graph.m != m
        or measured != g_expected
        or summary.min_degree != degree
        or summary.max_degree != degree
    ):
        raise VerificationError(
            f"cage {key} failed validation: n={graph.n} m={graph.m} girth={measured} "
            f"degrees={summary.min_degree}..{summary.max_degree}"
        )
    return graph


def gen_random_girth(n_target: int, g_min: int, seed: int) -> Graph:
    """Connected graph with min degree >= 2 and girth exactly ``g_min``.

    Starts from the cycle C_{g_min} and attaches ears until there are at least
    ``n_target`` vertices. An ear between u and v has length drawn from
    ``[l_min, l_min + g_min]`` with ``l_min = max(1, g_min - dist(u, v))``, so every
    new cycle has length at least ``g_min``.
    """
    if g_min < 3 or n_target < g_min:
        raise PreconditionError(
            f"random_girth needs n_target >= g_min >= 3, got n={n_target} g={g_min}"
        )
    rng = SplitMix64(seed)
    adjacency: list[list[int]] = [
        [(i - 1) % g_min, (i + 1) % g_min] for i in range(g_min)
    ]
    edges = [(i, (i + 1) % g_min) for i in range(g_min)]

    while len(adjacency) < n_target:
        count = len(adjacency)
        u = rng.below(count)
        v = rng.below(count - 1)
        if v >= u:
            v += 1
        dist = breadth_first_distances(adjacency, u)[v]
        length_min = max(1, g_min - dist)
        length = length_min + rng.below(g_min + 1)

        path = [u] + list(range(count, count + length - 1)) + [v]
        adjacency.extend([] for _ in range(length - 1))
        for a, b in zip(path, path[1:]):
            adjacency[a].append(b)
            adjacency[b].append(a)
            edges.append((a, b))

    return Graph(len(adjacency), edges)


def gen_random_connected(n: int, density: float, seed: int) -> Graph:
    """Random connected graph: a random recursive tree plus each remaining pair
    independently with probability ``density``."""
    if n < 1:
        raise PreconditionError(f"random graph needs n >= 1, got {n}")
    if not 0.0 <= density <= 1.0:
        raise PreconditionError(f"density must lie in [0, 1], got {density}")
    rng = SplitMix64(seed)
    edges = {(rng.below(v), v) for v in range(1, n)}
    threshold = int(density * 1_000_000)
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.below(1_000_000) < threshold:
                edges.add((u, v))
    return Graph(n, edges)


def gen_subdivide(g: Graph, k: int) -> Graph:
    """Replace every edge by a path with ``k`` fresh interior vertices."""
    if k < 1:
        raise PreconditionError(f"subdivision count must be >= 1, got {k}")
    edges = []
    fresh = g.n
    for u, v in g.edges:
        path = [u] + list(range(fresh, fresh + k)) + [v]
        fresh += k
        edges.extend(zip(path, path[1:]))
    return Graph(fresh, edges)


class GeneratorSpec(BaseModel):
    """A generator invocation, parsed from ``kind[:key=value,...]``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: GeneratorKind
    n: Optional[int] = None
    k: Optional[int] = None
    girth: Optional[int] = None
    seed: int = 0
    density: float = 0.3
    name: Optional[str] = None
    input: Optional[str] = None
    cage: Optional[str] = None

    @model_validator(mode="after")
    def _check_parameters(self) -> GeneratorSpec:
        required = {
            "cycle": ("n",),
            "path": ("n",),
            "star": ("k",),
            "cage": ("name",),
            "random_girth": ("n", "girth"),
            "random": ("n",),
            "subdivide": ("k",),
        }[self.kind]
        missing = [field for field in required if getattr(self, field) is None]
        if missing:
            raise ValueError(f"{self.kind} needs {', '.join(missing)}")
        if self.kind == "subdivide" and (self.input is None) == (self.cage is None):
            raise ValueError("subdivide needs exactly one of input=FILE or cage=NAME")
        return self

    def label(self) -> str:
        """Canonical spec string."""
        fields = [
            f"{key}={value}"
            for key, value in (
                ("n", self.n),
                ("k", self.k),
                ("girth", self.girth),
                ("name", self.name),
                ("cage", self.cage),
                ("input", self.input),
            )
            if value is not None
        ]
        if self.kind in ("random_girth", "random"):
            fields.append(f"seed={self.seed}")
        if self.kind == "random":
            fields.append(f"density={self.density}")
        kind = self.kind.replace("_", "-")
        return f"{kind}:{','.join(fields)}" if fields else kind


def parse_generator_spec(spec: str) -> GeneratorSpec:
    """Parse ``kind[:key=value,...]``, e.g. ``random-girth:n=30,girth=7,seed=42``.

    Raises:
        PreconditionError: unknown kind, malformed pair or missing parameters.
    """
    kind, _, rest = spec.strip().partition(":")
    kind = kind.strip().lower().replace("-", "_")
    params: dict[str, object] = {"kind": kind}
    for pair in filter(None, (part.strip() for part in rest.split(","))):
        key, sep, value = pair.partition("=")
        if not sep or not key.strip():
            raise PreconditionError(f"malformed parameter '{pair}' in spec '{spec}'")
        params[key.strip().lower()] = value.strip()
    try:
        return GeneratorSpec.model_validate(params)
    except ValueError as exc:
        raise PreconditionError(f"invalid generator spec '{spec}': {exc}") from exc


def build_from_spec(spec: GeneratorSpec) -> Graph:
    """Run the generator a spec describes."""
    match spec.kind:
        case "cycle":
            return gen_cycle(spec.n)
        case "path":
            return gen_path(spec.n)
        case "star":
            return gen_star(spec.k)
        case "cage":
            return gen_cage(spec.name)
        case "random_girth":
            return gen_random_girth(spec.n, spec.girth, spec.seed)
        case "random":
            return gen_random_connected(spec.n, spec.density, spec.seed)
        case "subdivide":
            base = gen_cage(spec.cage) if spec.cage else read_graph(Path(spec.input))
            return gen_subdivide(base, spec.k)
    raise PreconditionError(f"unknown generator kind '{spec.kind}'")
