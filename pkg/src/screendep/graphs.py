"""Finite graph instances for the deposition simulator.

Three families: cycles (the periodic stand-in for the doubly infinite
line), radius-R balls of d-regular trees, and radius-R balls of random
trees whose vertex degrees are drawn from a DegreeDistribution.  Balls
carry a root, per-vertex depths and an interior set (depth <= R - buffer)
so measurements can stay away from the leaf boundary.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from itertools import accumulate

import numpy as np

from .degree import DegreeDistribution


@dataclass(frozen=True)
class GraphInstance:
    """Immutable adjacency view of one finite graph.

    neighbors[v] lists the neighbors of vertex v.  root and depth are None
    for graphs without a distinguished center (cycles).  interior holds the
    vertex ids on which observables are averaged.
    """

    kind: str
    neighbors: tuple[tuple[int, ...], ...]
    interior: tuple[int, ...]
    root: int | None = None
    depth: tuple[int, ...] | None = None
    label: str = ""

    def __post_init__(self):
        n = len(self.neighbors)
        if n == 0:
            raise ValueError("graph must have at least one vertex")
        if not self.interior:
            raise ValueError("interior vertex set is empty")
        for v in self.interior:
            if not 0 <= v < n:
                raise ValueError(f"interior vertex {v} out of range")
        if self.root is not None and not 0 <= self.root < n:
            raise ValueError(f"root {self.root} out of range")

    @property
    def vertex_count(self) -> int:
        return len(self.neighbors)

    @property
    def edge_count(self) -> int:
        return sum(len(nb) for nb in self.neighbors) // 2

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def to_json_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "label": self.label,
            "vertex_count": self.vertex_count,
            "interior_count": len(self.interior),
        }
        if self.root is not None:
            out["root"] = self.root
        return out


def build_cycle(n: int) -> GraphInstance:
    """Cycle on n >= 5 vertices; every vertex is interior."""
    if n < 5:
        raise ValueError(f"cycle needs n >= 5, got {n}")
    neighbors = tuple(((v - 1) % n, (v + 1) % n) for v in range(n))
    return GraphInstance(
        kind="cycle",
        neighbors=neighbors,
        interior=tuple(range(n)),
        label=f"cycle(n={n})",
    )


def _finish_ball(kind: str, adj: list[list[int]], depth: list[int],
                 radius: int, buffer: int, label: str) -> GraphInstance:
    cut = radius - buffer
    interior = tuple(v for v, dep in enumerate(depth) if dep <= cut)
    return GraphInstance(
        kind=kind,
        neighbors=tuple(tuple(nb) for nb in adj),
        interior=interior,
        root=0,
        depth=tuple(depth),
        label=label,
    )


def _validate_ball_params(radius: int, buffer: int) -> None:
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    if buffer < 0:
        raise ValueError(f"buffer must be >= 0, got {buffer}")
    if buffer >= radius:
        raise ValueError(
            f"buffer {buffer} must be < radius {radius} to leave an interior"
        )


def build_regular_ball(d: int, radius: int, buffer: int = 0) -> GraphInstance:
    """Ball of radius `radius` in the d-regular tree, rooted at vertex 0.

    The root has d children and every internal vertex d - 1; vertices at
    depth `radius` are leaves.  Interior = depth <= radius - buffer.
    """
    if d < 2:
        raise ValueError(f"regular tree needs d >= 2, got {d}")
    _validate_ball_params(radius, buffer)
    adj: list[list[int]] = [[]]
    depth = [0]
    frontier = [0]
    for dep in range(radius):
        next_frontier = []
        for v in frontier:
            n_children = d if v == 0 else d - 1
            for _ in range(n_children):
                w = len(adj)
                adj.append([v])
                adj[v].append(w)
                depth.append(dep + 1)
                next_frontier.append(w)
        frontier = next_frontier
    return _finish_ball(
        "regular_ball", adj, depth, radius, buffer,
        f"regular_ball(d={d},R={radius},B={buffer})",
    )


def build_random_ball(
    dist: DegreeDistribution,
    radius: int,
    buffer: int = 0,
    rng: np.random.Generator | np.random.SeedSequence | int | None = None,
) -> GraphInstance:
    """Ball of radius `radius` of a random tree, rooted at vertex 0.

    The root's child count is drawn from dist; every other vertex above
    depth `radius` draws its degree D from dist independently and gets
    D - 1 children.  Vertices are numbered in breadth-first order and
    degrees are drawn in that order, so the instance is a deterministic
    function of the seed.
    """
    _validate_ball_params(radius, buffer)
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    degs = [d for d, _ in dist.atoms]
    cum = list(accumulate(float(w) for _, w in dist.atoms))
    cum[-1] = 1.0

    def draw_degree() -> int:
        return degs[bisect_left(cum, rng.random())]

    adj: list[list[int]] = [[]]
    depth = [0]
    frontier = [0]
    for dep in range(radius):
        next_frontier = []
        for v in frontier:
            n_children = draw_degree() if v == 0 else draw_degree() - 1
            for _ in range(n_children):
                w = len(adj)
                adj.append([v])
                adj[v].append(w)
                depth.append(dep + 1)
                next_frontier.append(w)
        frontier = next_frontier
    return _finish_ball(
        "random_ball", adj, depth, radius, buffer,
        f"random_ball({dist.label()},R={radius},B={buffer})",
    )


@dataclass(frozen=True)
class RandomBallSource:
    """Recipe for drawing a fresh random-tree ball per replica.

    The simulator resolves this into one GraphInstance per replica from
    the replica's graph seed stream, which is what tree-averaged (annealed)
    observables require.
    """

    dist: DegreeDistribution
    radius: int
    buffer: int = 0

    def __post_init__(self):
        _validate_ball_params(self.radius, self.buffer)

    def build(self, rng: np.random.Generator | np.random.SeedSequence | int | None) -> GraphInstance:
        return build_random_ball(self.dist, self.radius, self.buffer, rng)

    @property
    def label(self) -> str:
        return f"random_ball({self.dist.label()},R={self.radius},B={self.buffer})"
