"""Streaming presentations of countable 2-regular graphs.

A presentation is a family of disjoint components laid out over the natural
numbers in blocks: block t holds one new vertex for each double ray, followed
by the t-th cycle of the repeating length pattern (its ids in ring order).
Cycle-only families therefore lay their cycles out consecutively, and each
double ray receives ids in a zig-zag (center first, then alternating sides),
so every vertex of every component gets a finite id.

`cycles=3`                repeating triangles
`cycles=3,5`              alternating 3-cycles and 5-cycles
`rays=2+cycles=4`         two double rays interleaved with 4-cycles
`...+L=even-components`   marks the even-indexed components as the induced
                          subgraph L (rays come first in component order)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable


@dataclass(frozen=True)
class CycleFamilySpec:
    """Repeating cycle-length pattern plus an optional count of double rays."""

    lengths: tuple[int, ...] = ()
    rays: int = 0

    def __post_init__(self):
        if not self.lengths and self.rays == 0:
            raise ValueError("graph family needs at least one cycle length or ray")
        if any(k < 3 for k in self.lengths):
            raise ValueError(f"cycle lengths must be at least 3: {self.lengths}")
        if self.rays < 0:
            raise ValueError("ray count cannot be negative")


@dataclass(frozen=True)
class InducedMark:
    """Vertex predicate selecting V(L); marking whole components keeps L an
    induced, 2-regular subgraph automatically."""

    name: str
    in_L: Callable[[int], bool]


def _ray_pos(t: int) -> int:
    """Position on the ray of its t-th allocated vertex: 0, +1, -1, +2, ..."""
    if t == 0:
        return 0
    return (t + 1) // 2 if t % 2 else -(t // 2)


def _ray_block(p: int) -> int:
    """Inverse of _ray_pos."""
    if p == 0:
        return 0
    return 2 * p - 1 if p > 0 else -2 * p


class GraphPresentation:
    """Locally finite graph on vertex ids 0, 1, 2, ... with symmetric,
    constant-time adjacency derived from the block layout."""

    def __init__(self, family: CycleFamilySpec, mark: InducedMark | None = None, spec: str = ""):
        self.family = family
        self.mark = mark
        self.spec = spec or self._default_spec()
        lengths = family.lengths
        self._prefix = [0]
        for k in lengths:
            self._prefix.append(self._prefix[-1] + k)
        self._pattern = len(lengths)
        self._period_size = family.rays * max(self._pattern, 1) + self._prefix[-1]

    def _default_spec(self) -> str:
        parts = []
        if self.family.rays:
            parts.append(f"rays={self.family.rays}")
        if self.family.lengths:
            parts.append("cycles=" + ",".join(str(k) for k in self.family.lengths))
        if self.mark is not None:
            parts.append(f"L={self.mark.name}")
        return "+".join(parts)

    def __repr__(self):
        return f"<graph {self.spec}>"

    # -- layout arithmetic

    def _block_base(self, t: int) -> int:
        if self._pattern == 0:
            return t * self.family.rays
        q, rem = divmod(t, self._pattern)
        return q * self._period_size + self.family.rays * rem + self._prefix[rem]

    def _locate(self, v: int) -> tuple[int, int]:
        """Map a vertex id to (block index, offset inside block)."""
        if v < 0:
            raise ValueError(f"vertex ids are naturals: {v}")
        rays = self.family.rays
        if self._pattern == 0:
            return divmod(v, rays)
        q, r = divmod(v, self._period_size)
        for rem in range(self._pattern):
            size = rays + self.family.lengths[rem]
            if r < size:
                return q * self._pattern + rem, r
            r -= size
        raise AssertionError("unreachable: block arithmetic out of range")

    def degree(self, v: int) -> int:
        self._locate(v)
        return 2

    def neighbors(self, v: int) -> list[int]:
        t, o = self._locate(v)
        rays = self.family.rays
        if o < rays:
            p = _ray_pos(t)
            return sorted(self._block_base(_ray_block(p + s)) + o for s in (-1, 1))
        k = self.family.lengths[t % self._pattern]
        base = self._block_base(t) + rays
        q = o - rays
        return sorted({base + (q - 1) % k, base + (q + 1) % k})

    def component_of(self, v: int) -> int:
        """Component index: rays take 0..rays-1, the t-th cycle takes rays+t."""
        t, o = self._locate(v)
        if o < self.family.rays:
            return o
        return self.family.rays + t

    def in_L(self, v: int) -> bool:
        if self.mark is None:
            raise ValueError("graph has no induced mark")
        return self.mark.in_L(v)


def parse_graph_spec(spec: str) -> GraphPresentation:
    """Parse the mini-language described in the module docstring."""
    rays = 0
    lengths: tuple[int, ...] = ()
    mark_name = None
    seen = set()
    for part in spec.split("+"):
        key, eq, val = part.partition("=")
        key = key.strip()
        if not eq or key in seen:
            raise ValueError(f"bad graph spec component {part!r} in {spec!r}")
        seen.add(key)
        if key == "cycles":
            try:
                lengths = tuple(int(tok) for tok in val.split(","))
            except ValueError:
                raise ValueError(f"cycle lengths must be integers: {val!r}") from None
        elif key == "rays":
            rays = int(val)
        elif key == "L":
            if val not in ("even-components", "odd-components"):
                raise ValueError(f"unknown induced mark {val!r}")
            mark_name = val
        else:
            raise ValueError(f"unknown graph spec key {key!r}")
    family = CycleFamilySpec(lengths=lengths, rays=rays)
    graph = GraphPresentation(family, mark=None, spec=spec)
    if mark_name is not None:
        parity = 0 if mark_name == "even-components" else 1
        mark = InducedMark(mark_name, lambda v: graph.component_of(v) % 2 == parity)
        graph = GraphPresentation(family, mark=mark, spec=spec)
    return graph


def ball(graph: GraphPresentation, seeds: Iterable[int], radius: int) -> set[int]:
    """All vertices at distance <= radius from the seed set."""
    out = set(seeds)
    frontier = set(out)
    for _ in range(radius):
        nxt = set()
        for v in frontier:
            for w in graph.neighbors(v):
                if w not in out:
                    out.add(w)
                    nxt.add(w)
        frontier = nxt
        if not frontier:
            break
    return out


def _is_far(graph: GraphPresentation, v: int, blocked: set[int], radius: int) -> bool:
    """True iff no vertex within distance `radius` of v lies in `blocked`.
    Local finiteness keeps this a tiny breadth-first probe."""
    if v in blocked:
        return False
    seen = {v}
    frontier = [v]
    for _ in range(radius):
        nxt = []
        for u in frontier:
            for w in graph.neighbors(u):
                if w in blocked:
                    return False
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return True


def _mark_filter(graph, want_in_L, mark):
    if want_in_L is None:
        return lambda v: True
    mark = mark or graph.mark
    if mark is None:
        raise ValueError("want_in_L needs an induced mark")
    return lambda v: mark.in_L(v) == want_in_L


def fresh_vertex_far_from(
    graph: GraphPresentation,
    blocked: Iterable[int],
    radius: int,
    want_in_L: bool | None = None,
    mark: InducedMark | None = None,
    start: int = 0,
) -> int:
    """Least vertex id (>= start) at distance > radius from the blocked set,
    optionally restricted to (un)marked vertices.  Always succeeds: the
    presentation is infinite and the blocked set has a finite ball."""
    blocked = set(blocked)
    matches = _mark_filter(graph, want_in_L, mark)
    v = start
    while True:
        if matches(v) and _is_far(graph, v, blocked, radius):
            return v
        v += 1


def fresh_edge_far_from(
    graph: GraphPresentation,
    blocked: Iterable[int],
    radius: int,
    want_in_L: bool | None = None,
    mark: InducedMark | None = None,
    start: int = 0,
) -> tuple[int, int]:
    """Least edge {v, w} with both endpoints at distance > radius from the
    blocked set.  want_in_L=True demands both endpoints marked (an edge of L),
    want_in_L=False both unmarked; for component marks this is exactly
    membership of the edge in E(L) / its complement."""
    blocked = set(blocked)
    matches = _mark_filter(graph, want_in_L, mark)
    v = start
    while True:
        if matches(v) and _is_far(graph, v, blocked, radius):
            for w in graph.neighbors(v):
                if matches(w) and _is_far(graph, w, blocked, radius):
                    return v, w
        v += 1


def contracted_degree(graph: GraphPresentation, mark: InducedMark, v: int) -> int:
    """Degree of v once V(L) is collapsed to a single vertex: unmarked
    neighbors count individually, marked neighbors collapse to at most one."""
    outside = 0
    inside = 0
    for w in graph.neighbors(v):
        if mark.in_L(w):
            inside = 1
        else:
            outside += 1
    return outside + inside


def mark_coverage_evidence(
    graph: GraphPresentation, mark: InducedMark, probe: int = 4096
) -> dict[str, list[int]]:
    """Finite evidence that both V(L) and its complement keep appearing:
    marked/unmarked counts per quarter of the id window [0, probe)."""
    quarters = [probe // 4, probe // 2, 3 * probe // 4, probe]
    marked = [0, 0, 0, 0]
    unmarked = [0, 0, 0, 0]
    qi = 0
    for v in range(probe):
        while v >= quarters[qi]:
            qi += 1
        (marked if mark.in_L(v) else unmarked)[qi] += 1
    return {"marked": marked, "unmarked": unmarked}


def mark_has_two_infinite_sides(
    graph: GraphPresentation, mark: InducedMark, probe: int = 4096
) -> bool:
    """True when every quarter of the probe window contains vertices of both
    kinds, the finite shadow of `both sides are infinite`."""
    ev = mark_coverage_evidence(graph, mark, probe)
    return all(c > 0 for c in ev["marked"]) and all(c > 0 for c in ev["unmarked"])
