"""Graph presentations: layout, adjacency, balls, fresh picks, marks."""

import random
from collections import defaultdict

import pytest

from diffgraph.graphs import (
    CycleFamilySpec,
    GraphPresentation,
    InducedMark,
    ball,
    contracted_degree,
    fresh_edge_far_from,
    fresh_vertex_far_from,
    mark_has_two_infinite_sides,
    parse_graph_spec,
)

SPECS = ["cycles=3", "cycles=3,5", "cycles=4", "rays=1", "rays=2+cycles=4", "rays=3+cycles=5,4"]


def oracle_adjacency(lengths, rays, blocks):
    """Independent layout oracle: materialize the first `blocks` blocks and
    wire components explicitly (rings for cycles, zig-zag positions for
    rays), then read adjacency off the materialization."""
    adj = defaultdict(set)
    ray_ids = [[] for _ in range(rays)]
    base = 0
    for t in range(blocks):
        for r in range(rays):
            ray_ids[r].append(base + r)
        k = lengths[t % len(lengths)] if lengths else 0
        cyc = list(range(base + rays, base + rays + k))
        for i in range(k):
            adj[cyc[i]].add(cyc[(i + 1) % k])
            adj[cyc[(i + 1) % k]].add(cyc[i])
        base += rays + k
    for ids in ray_ids:
        pos_to_id = {}
        for t, vid in enumerate(ids):
            pos = 0 if t == 0 else ((t + 1) // 2 if t % 2 else -(t // 2))
            pos_to_id[pos] = vid
        for p, vid in pos_to_id.items():
            if p + 1 in pos_to_id:
                adj[vid].add(pos_to_id[p + 1])
                adj[pos_to_id[p + 1]].add(vid)
    return adj, base


@pytest.mark.parametrize("spec", SPECS)
def test_neighbors_match_layout_oracle(spec):
    g = parse_graph_spec(spec)
    adj, limit = oracle_adjacency(g.family.lengths, g.family.rays, 40)
    # stay far enough from the materialization boundary that every oracle
    # vertex has both of its neighbors present
    for v in range(limit - 4 * (g.family.rays + sum(g.family.lengths) + 1)):
        assert set(g.neighbors(v)) == adj[v], f"vertex {v} of {spec}"


def test_neighbor_examples():
    assert parse_graph_spec("cycles=3").neighbors(0) == [1, 2]
    assert parse_graph_spec("cycles=3,5").neighbors(3) == [4, 7]
    # single double ray, zig-zag ids 0,+1,-1,+2,-2,...: id 5 sits at +3,
    # between ids 3 (+2) and 7 (+4)
    assert parse_graph_spec("rays=1").neighbors(5) == [3, 7]


@pytest.mark.parametrize("spec", SPECS)
def test_two_regular_and_symmetric(spec):
    g = parse_graph_spec(spec)
    rng = random.Random(13)
    for _ in range(2000):
        v = rng.randrange(10**4)
        nbrs = g.neighbors(v)
        assert g.degree(v) == 2
        assert len(nbrs) == 2
        for w in nbrs:
            assert v in g.neighbors(w)


def test_ball_examples():
    g3 = parse_graph_spec("cycles=3")
    assert ball(g3, {0}, 1) == {0, 1, 2}
    assert ball(g3, set(), 5) == set()
    g35 = parse_graph_spec("cycles=3,5")
    assert ball(g35, {0}, 2) == {0, 1, 2}  # the component is a single triangle


@pytest.mark.parametrize("spec", SPECS)
def test_ball_monotone_and_bounded(spec):
    g = parse_graph_spec(spec)
    rng = random.Random(17)
    for _ in range(50):
        v = rng.randrange(2000)
        prev = {v}
        for r in range(1, 6):
            cur = ball(g, {v}, r)
            assert prev <= cur
            assert len(cur) <= 1 + 2 * r  # max degree 2
            prev = cur


def test_fresh_vertex_examples_and_property():
    g3 = parse_graph_spec("cycles=3")
    assert fresh_vertex_far_from(g3, {0, 1, 2}, 2) == 3
    assert fresh_vertex_far_from(g3, set(), 2) == 0
    mixed = parse_graph_spec("rays=2+cycles=4")
    rng = random.Random(23)
    for g in (g3, mixed):
        for _ in range(40):
            seeds = {rng.randrange(300) for _ in range(rng.randint(0, 12))}
            r = rng.randint(0, 4)
            v = fresh_vertex_far_from(g, seeds, r)
            blocked = ball(g, seeds, r)
            assert v not in blocked
            assert all(u in blocked for u in range(v))  # least such id


def test_fresh_edge_examples():
    g3 = parse_graph_spec("cycles=3")
    assert fresh_edge_far_from(g3, {0, 1, 2}, 2) == (3, 4)
    marked = parse_graph_spec("cycles=3+L=even-components")
    # triangle 0 is marked (component 0); first fresh L-edge skips to triangle 2
    assert fresh_edge_far_from(marked, {0, 1, 2}, 2, want_in_L=True) == (6, 7)
    assert fresh_edge_far_from(marked, {0, 1, 2}, 2, want_in_L=False) == (3, 4)


def test_fresh_edge_endpoints_far_and_adjacent():
    g = parse_graph_spec("rays=2+cycles=4")
    rng = random.Random(29)
    for _ in range(40):
        seeds = {rng.randrange(200) for _ in range(rng.randint(0, 10))}
        r = rng.randint(0, 4)
        v, w = fresh_edge_far_from(g, seeds, r)
        blocked = ball(g, seeds, r)
        assert v not in blocked and w not in blocked
        assert w in g.neighbors(v)


def test_contracted_degree():
    g = parse_graph_spec("cycles=3+L=even-components")
    mark = g.mark
    assert contracted_degree(g, mark, 0) == 1  # both neighbors collapse
    assert contracted_degree(g, mark, 3) == 2  # neighbors outside L stay
    for v in range(300):
        assert contracted_degree(g, mark, v) <= 2


def test_component_indexing():
    g = parse_graph_spec("rays=2+cycles=4")
    # block t: ids [6t, 6t+1] extend the rays, [6t+2 .. 6t+5] form cycle t
    assert g.component_of(0) == 0
    assert g.component_of(1) == 1
    assert g.component_of(2) == 2
    assert g.component_of(8) == 3  # second block's cycle
    assert g.component_of(6) == 0  # second block's first ray vertex


def test_mark_two_sided_evidence():
    both = parse_graph_spec("cycles=3+L=even-components")
    assert mark_has_two_infinite_sides(both, both.mark)
    ray = parse_graph_spec("rays=1+L=even-components")
    # a single ray is one component, so everything is marked
    assert not mark_has_two_infinite_sides(ray, ray.mark)


def test_odd_component_mark():
    g = parse_graph_spec("cycles=3+L=odd-components")
    assert not g.in_L(0)
    assert g.in_L(3)


def test_spec_parse_errors():
    for bad in ["", "cycles=2", "cycles=a", "rays=-1", "L=weird", "cycles=3+cycles=4",
                "foo=1", "cycles"]:
        with pytest.raises(ValueError):
            parse_graph_spec(bad)


def test_mark_requires_presence():
    g = parse_graph_spec("cycles=3")
    with pytest.raises(ValueError):
        g.in_L(0)


def test_custom_mark_predicate():
    fam = CycleFamilySpec(lengths=(3,))
    g = GraphPresentation(fam, mark=InducedMark("even-ids", lambda v: v % 2 == 0))
    assert g.in_L(0) and not g.in_L(1)
