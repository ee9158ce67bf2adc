"""Brute-force validation of everything finitely checkable about a state.

Checks are read-only, independent of the engine's own bookkeeping wherever
that matters (the engine maintains its difference set incrementally; checks
recompute it from the edges), and every failure carries a concrete witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable

from .embedder import STAR1, StateSnapshot
from .groups import Element, Group, SubgroupView, difference_rep


@dataclass
class Verdict:
    name: str
    passed: bool
    witness: Any = None
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "witness": self.witness,
            "details": self.details,
        }


def window_prefix(group: Group, size: int) -> list[Element]:
    return [group.enumerate(n) for n in range(size)]


def check_partial_difference(state: StateSnapshot) -> Verdict:
    """No two edges may share a difference up to sign, zero never appears,
    and the stored difference set must match the one the edges induce."""
    group = state.group
    seen: dict[Element, tuple] = {}
    for a, b in sorted(state.gamma_edges, key=lambda e: (group.enum_key(e[0]), group.enum_key(e[1]))):
        d = group.sub(a, b)
        if d == group.zero:
            return Verdict(
                "partial-difference", False,
                witness={"edge": [group.encode(a), group.encode(b)], "difference": group.encode(d)},
                details={"reason": "zero difference"},
            )
        rep = difference_rep(group, d)
        if rep in seen:
            return Verdict(
                "partial-difference", False,
                witness={
                    "difference": group.encode(rep),
                    "edges": [
                        [group.encode(x) for x in seen[rep]],
                        [group.encode(a), group.encode(b)],
                    ],
                },
                details={"reason": "repeated difference"},
            )
        seen[rep] = (a, b)
    if set(seen) != state.delta_reps:
        extra = sorted(state.delta_reps - set(seen), key=group.enum_key)
        miss = sorted(set(seen) - state.delta_reps, key=group.enum_key)
        return Verdict(
            "partial-difference", False,
            witness={
                "stored-but-not-derived": [group.encode(d) for d in extra[:5]],
                "derived-but-not-stored": [group.encode(d) for d in miss[:5]],
            },
            details={"reason": "stored difference set disagrees with edges"},
        )
    return Verdict("partial-difference", True, details={"differences": len(seen)})


def check_induced_iso(state: StateSnapshot, graph=None) -> Verdict:
    """Embedded vertices must induce an isomorphism: graph edges map onto
    embedded edges and every embedded edge comes from a graph edge."""
    graph = graph or state.graph
    sigma = state.sigma
    inv: dict[Element, int] = {}
    for v, el in sigma.items():
        if el in inv:
            return Verdict(
                "induced-isomorphism", False,
                witness={"element": state.group.encode(el), "vertices": [inv[el], v]},
                details={"reason": "two vertices share an image"},
            )
        inv[el] = v
    edge_set = state.gamma_edges | {(b, a) for a, b in state.gamma_edges}
    for v, el in sigma.items():
        for w in graph.neighbors(v):
            if w in sigma and (el, sigma[w]) not in edge_set:
                return Verdict(
                    "induced-isomorphism", False,
                    witness={"graph-edge": [v, w]},
                    details={"reason": "graph edge missing from the embedding"},
                )
    for a, b in state.gamma_edges:
        if a not in inv or b not in inv:
            return Verdict(
                "induced-isomorphism", False,
                witness={"edge": [state.group.encode(a), state.group.encode(b)]},
                details={"reason": "edge endpoint has no preimage"},
            )
        if inv[b] not in graph.neighbors(inv[a]):
            return Verdict(
                "induced-isomorphism", False,
                witness={"edge": [state.group.encode(a), state.group.encode(b)],
                         "preimages": [inv[a], inv[b]]},
                details={"reason": "embedded edge has no graph edge"},
            )
    return Verdict("induced-isomorphism", True, details={"embedded": len(sigma)})


def check_window_factorization(state: StateSnapshot, window: Iterable[Element]) -> Verdict:
    """Translate exact cover on a finite window: a pair whose difference is
    already realized must be covered by exactly one translated edge; pairs
    with unrealized differences are pending, never double-covered."""
    group = state.group
    window = list(window)
    by_rep: dict[Element, list] = {}
    for a, b in state.gamma_edges:
        by_rep.setdefault(difference_rep(group, group.sub(a, b)), []).append((a, b))
    covered = pending = 0
    doubles = []
    for a, b in combinations(window, 2):
        rep = difference_rep(group, group.sub(a, b))
        edges = by_rep.get(rep)
        if not edges:
            pending += 1
            continue
        matches = 0
        for x, y in edges:
            for p, q in ((x, y), (y, x)):
                g = group.add(group.neg(p), a)
                if group.add(q, g) == b:
                    matches += 1
        if matches == 1:
            covered += 1
        else:
            doubles.append({
                "pair": [group.encode(a), group.encode(b)],
                "covers": matches,
            })
    total = covered + pending + len(doubles)
    details = {
        "window": len(window),
        "pairs": total,
        "covered": covered,
        "pending": pending,
        "pending_fraction": (pending / total) if total else 0.0,
    }
    if doubles:
        return Verdict("window-factorization", False, witness=doubles[:5], details=details)
    return Verdict("window-factorization", True, details=details)


def check_subsystem(state: StateSnapshot, subgroup: SubgroupView | None = None) -> Verdict:
    """The embedding must split along H: marked vertices map into H and
    unmarked ones outside, and a difference lies in H exactly when its edge
    joins two H-images (which must be images of marked vertices)."""
    subgroup = subgroup or state.subgroup
    if subgroup is None:
        raise ValueError("check_subsystem needs a subgroup view")
    if state.mode != STAR1:
        raise ValueError("check_subsystem applies to star1-mode states")
    group = state.group
    graph = state.graph
    inv = state.sigma_inv
    for v, el in sorted(state.sigma.items()):
        if subgroup.contains(el) != graph.in_L(v):
            return Verdict(
                "subsystem-split", False,
                witness={"vertex": v, "element": group.encode(el),
                         "in_L": graph.in_L(v), "in_H": subgroup.contains(el)},
                details={"reason": "vertex image on the wrong side of H"},
            )
    for a, b in state.gamma_edges:
        d = group.sub(a, b)
        both_in_h = subgroup.contains(a) and subgroup.contains(b)
        if both_in_h:
            u, v = inv.get(a), inv.get(b)
            if u is None or v is None or not (graph.in_L(u) and graph.in_L(v)):
                return Verdict(
                    "subsystem-split", False,
                    witness={"edge": [group.encode(a), group.encode(b)]},
                    details={"reason": "H-internal edge not an image of an L-edge"},
                )
            if not subgroup.contains(d):
                return Verdict(
                    "subsystem-split", False,
                    witness={"edge": [group.encode(a), group.encode(b)],
                             "difference": group.encode(d)},
                    details={"reason": "H-internal edge with difference outside H"},
                )
        elif subgroup.contains(d):
            return Verdict(
                "subsystem-split", False,
                witness={"edge": [group.encode(a), group.encode(b)],
                         "difference": group.encode(d)},
                details={"reason": "difference in H from an edge not inside H"},
            )
    return Verdict("subsystem-split", True, details={"edges": len(state.gamma_edges)})


def brute_force_vs(group: Group, members: Iterable[Element], window: Iterable[Element]) -> set[Element]:
    """Exact candidate set on a window by direct evaluation: keep x when the
    set {±(x - y) : y in S} reaches its maximum size 2|S|."""
    members = list(members)
    out = set()
    for x in window:
        values = set()
        for y in members:
            d = group.sub(x, y)
            values.add(d)
            values.add(group.neg(d))
        if len(values) == 2 * len(members):
            out.add(x)
    return out


def check_lemma_vs_injection(
    group: Group, y1: Element, y2: Element, window: Iterable[Element]
) -> Verdict:
    """The reflection x -> y1 - x + y1 must be injective and must carry every
    window element outside the candidate set V_{y1,y2} back into it.

    x = y1 and x = y2 are excluded: they fail membership degenerately (a zero
    repeat in the signed list) and y1 is a fixed point of the reflection, so
    the mapped-into-V claim concerns only the equation-induced bad points.
    """
    if y1 == y2:
        raise ValueError("the two anchors must be distinct")
    window = list(window)
    members = [y1, y2]
    images = set()
    checked = bad = 0
    for x in window:
        image = group.add(group.add(y1, group.neg(x)), y1)
        if image in images:
            return Verdict(
                "vs-injection", False,
                witness={"x": group.encode(x), "image": group.encode(image)},
                details={"reason": "reflection not injective on the window"},
            )
        images.add(image)
        if x == y1 or x == y2:
            continue
        checked += 1
        if brute_force_vs(group, members, [x]):
            continue
        bad += 1
        if not brute_force_vs(group, members, [image]):
            return Verdict(
                "vs-injection", False,
                witness={"x": group.encode(x), "image": group.encode(image)},
                details={"reason": "bad point maps to another bad point"},
            )
    return Verdict("vs-injection", True, details={"window": len(window), "bad": bad,
                                                  "checked": checked})


def check_abelian_bad_set_bound(
    group: Group, members: Iterable[Element], window: Iterable[Element]
) -> Verdict:
    """Over an abelian group the complement of the candidate set within any
    window is at most C(|S|, 2) equation solutions plus the |S| degenerate
    points of S itself."""
    if not group.abelian:
        raise ValueError("the finite bad-set bound is an abelian property")
    members = list(members)
    window = list(window)
    good = brute_force_vs(group, members, window)
    bad = [x for x in window if x not in good]
    k = len(members)
    bound = k * (k - 1) // 2 + k
    details = {"window": len(window), "bad": len(bad), "bound": bound, "size": k}
    if len(bad) > bound:
        return Verdict(
            "abelian-bad-set-bound", False,
            witness={"bad": [group.encode(x) for x in bad[: bound + 3]]},
            details=details,
        )
    return Verdict("abelian-bad-set-bound", True, details=details)
