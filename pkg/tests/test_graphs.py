"""Graph construction: cycles, regular-tree balls, random-tree balls."""

from __future__ import annotations

from collections import Counter

import pytest

from screendep.degree import DegreeDistribution, make_regular
from screendep.graphs import (
    GraphInstance,
    RandomBallSource,
    build_cycle,
    build_random_ball,
    build_regular_ball,
)


def test_cycle_structure():
    g = build_cycle(7)
    assert g.vertex_count == 7
    assert g.edge_count == 7
    assert all(g.degree(v) == 2 for v in range(7))
    assert g.neighbors[0] == (6, 1)
    assert g.neighbors[3] == (2, 4)
    assert g.interior == tuple(range(7))
    assert g.root is None
    assert g.label == "cycle(n=7)"


def test_cycle_minimum_size():
    with pytest.raises(ValueError):
        build_cycle(4)


def test_regular_ball_counts():
    # root has d children, internal vertices d - 1, so the ball of radius R
    # has 1 + d * (2^R - 1) vertices when d = 3
    g = build_regular_ball(3, radius=12, buffer=4)
    assert g.vertex_count == 1 + 3 * (2 ** 12 - 1) == 12286
    assert g.edge_count == g.vertex_count - 1
    assert len(g.interior) == 1 + 3 * (2 ** 8 - 1) == 766
    assert g.root == 0
    assert g.depth[0] == 0
    assert max(g.depth) == 12


def test_regular_ball_degrees():
    g = build_regular_ball(3, radius=4)
    for v in range(g.vertex_count):
        if g.depth[v] == 4:
            assert g.degree(v) == 1
        else:
            assert g.degree(v) == 3


def test_degree_two_ball_is_a_path():
    g = build_regular_ball(2, radius=5)
    assert g.vertex_count == 11
    degs = Counter(g.degree(v) for v in range(11))
    assert degs == {2: 9, 1: 2}


def test_ball_interior_tracks_buffer():
    g = build_regular_ball(2, radius=5, buffer=2)
    assert set(g.interior) == {v for v in range(11) if g.depth[v] <= 3}


@pytest.mark.parametrize(
    "kwargs",
    [
        {"d": 1, "radius": 3, "buffer": 0},
        {"d": 3, "radius": 0, "buffer": 0},
        {"d": 3, "radius": 3, "buffer": -1},
        {"d": 3, "radius": 3, "buffer": 3},
    ],
)
def test_ball_parameter_validation(kwargs):
    with pytest.raises(ValueError):
        build_regular_ball(**kwargs)


def test_graph_instance_validation():
    with pytest.raises(ValueError):
        GraphInstance(kind="x", neighbors=((1,), (0,)), interior=())
    with pytest.raises(ValueError):
        GraphInstance(kind="x", neighbors=((1,), (0,)), interior=(5,))
    with pytest.raises(ValueError):
        GraphInstance(kind="x", neighbors=((1,), (0,)), interior=(0,), root=9)


TWO_THREE = DegreeDistribution.from_pairs({2: "1/3", 3: "2/3"})


def test_random_ball_is_a_tree_with_drawn_degrees():
    g = build_random_ball(TWO_THREE, radius=8, buffer=2, rng=1)
    assert g.edge_count == g.vertex_count - 1
    assert g.root == 0
    assert max(g.depth) <= 8
    for v in range(g.vertex_count):
        if g.depth[v] == 8:
            assert g.degree(v) == 1
        elif v != 0:
            # internal vertex: one parent plus D - 1 children
            assert g.degree(v) in TWO_THREE.degrees


def test_random_ball_determinism():
    a = build_random_ball(TWO_THREE, radius=6, buffer=1, rng=42)
    b = build_random_ball(TWO_THREE, radius=6, buffer=1, rng=42)
    c = build_random_ball(TWO_THREE, radius=6, buffer=1, rng=43)
    assert a.neighbors == b.neighbors
    assert a.depth == b.depth
    assert c.neighbors != a.neighbors


def test_random_ball_degree_law():
    # degrees of non-leaf vertices are iid draws from the distribution;
    # chi-square with 1 dof over ~40 fixed-seed trees
    counts = Counter()
    for seed in range(40):
        g = build_random_ball(TWO_THREE, radius=9, rng=seed)
        for v in range(g.vertex_count):
            if g.depth[v] < 9:
                counts[g.degree(v)] += 1
    total = sum(counts.values())
    assert total > 2000
    chi2 = sum(
        (counts[d] - total * float(w)) ** 2 / (total * float(w))
        for d, w in TWO_THREE.atoms
    )
    assert chi2 < 11.0, (chi2, counts)


def test_point_mass_random_ball_matches_regular():
    g = build_random_ball(make_regular(3), radius=5, buffer=1, rng=0)
    h = build_regular_ball(3, radius=5, buffer=1)
    assert g.neighbors == h.neighbors
    assert g.interior == h.interior


def test_random_ball_source():
    src = RandomBallSource(TWO_THREE, radius=6, buffer=2)
    assert src.label == "random_ball(2:1/3,3:2/3,R=6,B=2)"
    a = src.build(rng=7)
    b = build_random_ball(TWO_THREE, radius=6, buffer=2, rng=7)
    assert a.neighbors == b.neighbors
    with pytest.raises(ValueError):
        RandomBallSource(TWO_THREE, radius=2, buffer=2)
