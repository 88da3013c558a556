"""Event-driven simulation of screened multilayer deposition.

Each vertex of a finite graph receives particles at unit rate.  A particle
arriving at v settles at height 1 + max over the closed neighborhood of v
of the current top height, i.e. it is blocked by the tallest stack it can
see, including v's own.  The simulator realizes the arrival process
exactly: the number of arrivals on [0, horizon] is Poisson(n * horizon),
arrival times are iid uniform, and sites are iid uniform over vertices.

Per vertex we track the arrival count, the top height, and a bitmask of
the occupied layers up to l_track (bit h - 1 set iff some particle sits at
height h).  Pattern observables are binary words over a window of the
lowest layers, written top layer first: "0101" means layer 4 empty, layer
3 occupied, layer 2 empty, layer 1 occupied.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence, Union

import numpy as np

from ._version import __version__
from .curves import DensityCurve, SeriesPoint
from .graphs import GraphInstance, RandomBallSource

GraphLike = Union[GraphInstance, RandomBallSource]

_GRAPH_STREAM = 0
_ARRIVAL_STREAM = 1

MAX_TRACKED_LAYERS = 32


class RateConformanceError(AssertionError):
    """A settlement event contradicted the two-layer transition rates."""


@dataclass(frozen=True)
class SiteState:
    """State of one vertex: arrival count, top height, tracked-layer mask."""

    arrivals: int = 0
    top: int = 0
    mask: int = 0

    @property
    def code(self) -> int:
        """Two-layer occupancy code m in {0, 1, 2, 3} (bit 0 = layer 1)."""
        return self.mask & 3


def settle_height(site: SiteState, neighbor_tops: Sequence[int]) -> int:
    """Height at which the next particle arriving at this site settles."""
    h = site.top
    for t in neighbor_tops:
        if t > h:
            h = t
    return h + 1


def _normalize_pattern(p) -> str:
    if isinstance(p, str):
        word = p
    else:
        word = "".join(str(int(b)) for b in p)
    if not word or any(ch not in "01" for ch in word):
        raise ValueError(f"pattern must be a nonempty binary word, got {p!r}")
    return word


@dataclass(frozen=True)
class SimConfig:
    """Run parameters for a deposition estimate.

    sample_times must be strictly increasing and lie in (0, horizon].
    layers lists the single-layer densities to report; patterns are
    top-down binary words over the lowest len(pattern) layers.  measure
    selects which vertices are averaged: the interior set or the root
    alone (tree-averaged observables on random balls use the root).
    """

    horizon: float
    sample_times: tuple[float, ...]
    replicas: int = 100
    seed: int = 0
    l_track: int = 8
    layers: tuple[int, ...] = (1, 2)
    patterns: tuple[str, ...] = ()
    measure: str = "interior"

    def __post_init__(self):
        object.__setattr__(self, "sample_times", tuple(float(t) for t in self.sample_times))
        object.__setattr__(self, "layers", tuple(int(k) for k in self.layers))
        object.__setattr__(
            self, "patterns", tuple(_normalize_pattern(p) for p in self.patterns)
        )
        if self.horizon <= 0:
            raise ValueError(f"horizon must be positive, got {self.horizon}")
        if not self.sample_times:
            raise ValueError("at least one sample time is required")
        if any(t <= 0 for t in self.sample_times):
            raise ValueError("sample times must be positive")
        if any(b >= a for a, b in zip(self.sample_times[1:], self.sample_times)):
            raise ValueError(f"sample times must be strictly increasing: {self.sample_times}")
        if self.sample_times[-1] > self.horizon:
            raise ValueError(
                f"last sample time {self.sample_times[-1]} exceeds horizon {self.horizon}"
            )
        if self.replicas < 1:
            raise ValueError(f"replicas must be >= 1, got {self.replicas}")
        if not 2 <= self.l_track <= MAX_TRACKED_LAYERS:
            raise ValueError(f"l_track must be in [2, {MAX_TRACKED_LAYERS}], got {self.l_track}")
        if not self.layers and not self.patterns:
            raise ValueError("nothing to observe: layers and patterns are both empty")
        if any(not 1 <= k <= self.l_track for k in self.layers):
            raise ValueError(f"layers {self.layers} must lie in 1..l_track={self.l_track}")
        for p in self.patterns:
            if len(p) > self.l_track:
                raise ValueError(
                    f"pattern {p!r} needs {len(p)} tracked layers, l_track={self.l_track}"
                )
        if self.measure not in ("interior", "root"):
            raise ValueError(f"measure must be 'interior' or 'root', got {self.measure!r}")


@dataclass(frozen=True)
class ReplicaSnapshot:
    """Per-vertex mask and arrival-count snapshots at the sample times."""

    sample_times: tuple[float, ...]
    measured: tuple[int, ...]
    masks: np.ndarray
    arrivals: np.ndarray


def observable_names(config: SimConfig) -> tuple[str, ...]:
    """Observable column labels: layer densities then pattern frequencies."""
    return tuple(f"layer:{k}" for k in config.layers) + tuple(
        f"pattern:{p}" for p in config.patterns
    )


def _measured_vertices(graph: GraphInstance, config: SimConfig) -> tuple[int, ...]:
    if config.measure == "root":
        if graph.root is None:
            raise ValueError(f"graph {graph.label!r} has no root to measure")
        return (graph.root,)
    return graph.interior


def run_replica(
    graph: GraphInstance,
    config: SimConfig,
    rng: np.random.Generator | np.random.SeedSequence | int | None,
    *,
    measured: Sequence[int] | None = None,
    check_rates: bool = False,
) -> ReplicaSnapshot:
    """Simulate one arrival realization and snapshot it at the sample times.

    With check_rates=True every settlement is checked against the
    two-layer transition conditions (empty neighborhood creates layer 1;
    an empty site next to only empty or single-layer-1 neighbors, at least
    one of the latter, creates layer 2; a singly occupied site with all
    neighbors empty creates layer 3 on top of its own layer 1; anything
    else must leave layers 1 and 2 unchanged).  A violation raises
    RateConformanceError.
    """
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    n = graph.vertex_count
    nb = graph.neighbors
    if measured is None:
        measured = _measured_vertices(graph, config)
    measured = tuple(measured)

    n_events = rng.poisson(n * config.horizon)
    times = np.sort(rng.random(n_events)) * config.horizon
    sites = rng.integers(0, n, size=n_events)

    bounds = np.searchsorted(times, np.asarray(config.sample_times), side="right")

    arrivals = [0] * n
    tops = [0] * n
    masks = [0] * n
    l_track = config.l_track

    n_times = len(config.sample_times)
    out_masks = np.zeros((n_times, len(measured)), dtype=np.int64)
    out_arrivals = np.zeros((n_times, len(measured)), dtype=np.int64)

    prev = 0
    sites_list = sites.tolist()
    for snap_i, bound in enumerate(bounds):
        for e in range(prev, bound):
            v = sites_list[e]
            nbv = nb[v]
            if check_rates:
                _check_transition(v, nbv, arrivals, tops, masks, l_track)
            else:
                h = tops[v]
                for u in nbv:
                    tu = tops[u]
                    if tu > h:
                        h = tu
                h += 1
                arrivals[v] += 1
                tops[v] = h
                if h <= l_track:
                    masks[v] |= 1 << (h - 1)
        prev = bound
        for j, v in enumerate(measured):
            out_masks[snap_i, j] = masks[v]
            out_arrivals[snap_i, j] = arrivals[v]
    return ReplicaSnapshot(
        sample_times=config.sample_times,
        measured=measured,
        masks=out_masks,
        arrivals=out_arrivals,
    )


def _check_transition(v, nbv, arrivals, tops, masks, l_track):
    """Apply one settlement with the conformance assertions enabled."""
    m_old = masks[v] & 3
    all_empty = arrivals[v] == 0 and all(arrivals[u] == 0 for u in nbv)
    site_empty_layer1_nbr = False
    if arrivals[v] == 0:
        ok = True
        seen_layer1 = False
        for u in nbv:
            if arrivals[u] == 0:
                continue
            if arrivals[u] == 1 and (masks[u] & 3) == 1:
                seen_layer1 = True
            else:
                ok = False
                break
        site_empty_layer1_nbr = ok and seen_layer1
    lone_with_empty_nbrs = (
        m_old == 1 and arrivals[v] == 1 and all(arrivals[u] == 0 for u in nbv)
    )
    if all_empty:
        m_pred = 1
    elif site_empty_layer1_nbr:
        m_pred = 2
    elif lone_with_empty_nbrs:
        m_pred = 3
    else:
        m_pred = m_old

    h = tops[v]
    for u in nbv:
        tu = tops[u]
        if tu > h:
            h = tu
    h += 1
    arrivals[v] += 1
    tops[v] = h
    if h <= l_track:
        masks[v] |= 1 << (h - 1)

    m_new = masks[v] & 3
    if m_new != m_pred:
        raise RateConformanceError(
            f"vertex {v}: settlement at height {h} moved two-layer code "
            f"{m_old} -> {m_new}, transition conditions predicted {m_pred}"
        )


def snapshot_observables(snap: ReplicaSnapshot, config: SimConfig) -> np.ndarray:
    """Per-replica observable means, shape (n_observables, n_times)."""
    n_times = len(snap.sample_times)
    names_count = len(config.layers) + len(config.patterns)
    out = np.empty((names_count, n_times), dtype=np.float64)
    row = 0
    for k in config.layers:
        out[row] = ((snap.masks >> (k - 1)) & 1).mean(axis=1)
        row += 1
    for p in config.patterns:
        width = len(p)
        value = int(p, 2)
        window = (1 << width) - 1
        out[row] = ((snap.masks & window) == value).mean(axis=1)
        row += 1
    return out


def _replica_seed(seed: int, replica: int, stream: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(seed, spawn_key=(replica, stream))


def _resolve_graph(graph: GraphLike, seed: int, replica: int) -> GraphInstance:
    if isinstance(graph, RandomBallSource):
        return graph.build(_replica_seed(seed, replica, _GRAPH_STREAM))
    return graph


def _replica_task(args) -> np.ndarray:
    graph, config, replica = args
    instance = _resolve_graph(graph, config.seed, replica)
    snap = run_replica(
        instance, config, _replica_seed(config.seed, replica, _ARRIVAL_STREAM)
    )
    return snapshot_observables(snap, config)


def _resolve_jobs(n_jobs: int | None) -> int:
    if n_jobs is None:
        n_jobs = int(os.environ.get("SCREENDEP_JOBS", "1"))
    if n_jobs < 1:
        raise ValueError(f"n_jobs must be >= 1, got {n_jobs}")
    return n_jobs


def estimate_densities(
    graph: GraphLike,
    config: SimConfig,
    n_jobs: int | None = None,
) -> DensityCurve:
    """Monte Carlo estimate of the configured observables.

    Runs config.replicas independent replicas (independent arrival
    realizations; for a RandomBallSource also a fresh tree per replica),
    averages each observable over the measured vertices within a replica,
    and reports the mean over replicas with the standard error of the
    replica means.  Replica r derives its streams from
    SeedSequence(seed, spawn_key=(r, 0)) for the graph draw and
    spawn_key=(r, 1) for arrivals, so results are reproducible and
    independent of scheduling; the reduction order over replicas is fixed.
    """
    n_jobs = _resolve_jobs(n_jobs)
    names = observable_names(config)
    reps = config.replicas
    tasks = [(graph, config, r) for r in range(reps)]
    stats = np.empty((reps, len(names), len(config.sample_times)), dtype=np.float64)
    if n_jobs == 1 or reps == 1:
        for r, task in enumerate(tasks):
            stats[r] = _replica_task(task)
    else:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            chunk = max(1, reps // (4 * n_jobs))
            for r, result in enumerate(pool.map(_replica_task, tasks, chunksize=chunk)):
                stats[r] = result
    means = stats.mean(axis=0)
    if reps >= 2:
        stderr = stats.std(axis=0, ddof=1) / np.sqrt(reps)
    else:
        stderr = np.full_like(means, np.nan)

    meta = {
        "graph": graph.label,
        "measure": config.measure,
        "replicas": reps,
        "seed": config.seed,
        "l_track": config.l_track,
        "horizon": config.horizon,
        "version": __version__,
    }
    series = tuple(
        (
            name,
            tuple(
                SeriesPoint(mean=float(means[i, j]), stderr=float(stderr[i, j]), n=reps)
                for j in range(len(config.sample_times))
            ),
        )
        for i, name in enumerate(names)
    )
    return DensityCurve(times=config.sample_times, series=series, meta=meta)


def estimate_pattern(graph: GraphLike, config: SimConfig, pattern) -> DensityCurve:
    """Estimate a single pattern frequency (replaces the observable list)."""
    word = _normalize_pattern(pattern)
    cfg = replace(config, layers=(), patterns=(word,))
    return estimate_densities(graph, cfg)
