"""Greedy construction engine.

A session maintains a partial embedding of a locally finite graph F into the
complete graph on a countable involution-free group G, as a partial
difference graph: no two embedded edges share a difference up to sign.  A
fair round-robin of three task families drives the construction so that, in
the limit, every graph vertex is embedded, every group element is hit, and
every nonzero difference is realized exactly once.

Modes:

* ``plain``  -- abelian groups; candidate scans always terminate because the
                set of candidates ruled out by repeated differences is finite.
* ``star``   -- nonabelian groups; the same soundness checks apply but each
                scan is capped by a budget that doubles after an exhausted
                attempt.  Emitted prefixes are always sound; only completion
                is budget-dependent.
* ``star1``  -- subsystem construction over an abelian group with a normal
                subgroup view H: marked vertices land in H, unmarked ones in
                fresh nonzero cosets, and the difference set splits exactly
                along H.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator

from . import graphs
from .groups import (
    Element,
    Group,
    SubgroupView,
    assert_involution_free,
    difference_rep,
)

PLAIN = "plain"
STAR = "star"
STAR1 = "star1"
MODES = (PLAIN, STAR, STAR1)

COVER_VERTEX = "cover-vertex"
COVER_ELEMENT = "cover-element"
COVER_DIFFERENCE = "cover-difference"

DONE = "done"
ALREADY = "already-satisfied"
EXHAUSTED = "budget-exhausted"

# distance kept between fresh vertices/edges and the embedded region
FRESH_RADIUS = 3

_REJECT_KEYS = ("used", "coset", "delta", "distinct")


class RefusalError(RuntimeError):
    """A session cannot be opened for this configuration."""

    def __init__(self, reason: str, witness: Any = None):
        super().__init__(reason)
        self.reason = reason
        self.witness = witness


def vs_membership(group: Group, members: list[Element], x: Element) -> bool:
    """True iff the 2|S| signed differences ±(x - y), y in S, are pairwise
    distinct.

    Uses the pair-equation form: a repeat exists exactly when
    (x - y1) + (x - y2) = 0 for some y1, y2 in S (equal pair included, which
    covers x in S).  The verifier evaluates the same set by exhaustive
    counting; the two implementations are kept independent on purpose.
    """
    diffs = [group.sub(x, y) for y in members]
    zero = group.zero
    for i, d1 in enumerate(diffs):
        for d2 in diffs[i:]:
            if group.add(d1, d2) == zero:
                return False
    return True


@dataclass
class StepReport:
    """What one task execution did: the target, the outcome, the assignments
    made, and how hard the candidate scan had to work."""

    kind: str
    index: int
    target: Any
    outcome: str
    assigned: list[tuple[int, Element]] = field(default_factory=list)
    edges_added: int = 0
    candidates: int = 0
    rejections: dict[str, int] = field(default_factory=dict)
    step: int | None = None

    def as_tuple(self):
        return (
            self.step,
            self.kind,
            self.index,
            self.target,
            self.outcome,
            tuple(self.assigned),
            self.edges_added,
            self.candidates,
            tuple(sorted(self.rejections.items())),
        )


@dataclass
class StateSnapshot:
    """Immutable view of an embedding: what the verifier and the certificate
    layer consume."""

    group: Group
    graph: graphs.GraphPresentation
    mode: str
    subgroup: SubgroupView | None
    sigma: dict[int, Element]
    gamma_edges: set[tuple[Element, Element]]
    delta_reps: set[Element]
    cursors: dict[str, int]
    steps: int

    @property
    def sigma_inv(self) -> dict[Element, int]:
        return {el: v for v, el in self.sigma.items()}


def _new_rejections() -> dict[str, int]:
    return dict.fromkeys(_REJECT_KEYS, 0)


class Session:
    """Single-owner state machine; step one task at a time, snapshot freely."""

    def __init__(
        self,
        group: Group,
        graph: graphs.GraphPresentation,
        mode: str = PLAIN,
        subgroup: SubgroupView | None = None,
        budget: int = 4096,
        involution_prefix: int = 1000,
        evidence_probe: int = 4096,
    ):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}; known: {MODES}")
        report = assert_involution_free(group, involution_prefix)
        if not report.passed:
            raise RefusalError(
                f"group {group.id} has an involution (witness {report.witness!r}); "
                "no group-regular solution can exist, refusing to build",
                witness=report.witness,
            )
        if mode == PLAIN and not group.abelian:
            raise ValueError("plain mode requires an abelian group; use star")
        if mode == STAR1:
            self._validate_subsystem_config(group, graph, subgroup, evidence_probe)
        if group.enumerate(0) != group.zero:
            raise ValueError("group enumeration must start at the identity")

        self.group = group
        self.graph = graph
        self.mode = mode
        self.subgroup = subgroup if mode == STAR1 else None
        self.base_budget = budget if mode == STAR else 0
        self.involution_prefix = involution_prefix

        self.sigma: dict[int, Element] = {}
        self.sigma_inv: dict[Element, int] = {}
        self.gamma_edges: set[tuple[Element, Element]] = set()
        self.delta_reps: set[Element] = set()
        self.delta_signed: set[Element] = set()
        self.cursors = {"vertices": 0, "elements": 0, "differences": 0}
        self.steps_done = 0
        self.rejection_totals = _new_rejections()

        self._family_budget = dict.fromkeys(
            ("vertices", "elements", "differences"), self.base_budget
        )
        self._scan_hint = 0
        self._coset_hints: dict[Element, int] = {}
        self._vertex_frontier: dict[Any, int] = {}
        self._edge_frontier: dict[Any, int] = {}

    @staticmethod
    def _validate_subsystem_config(group, graph, subgroup, evidence_probe):
        if subgroup is None:
            raise ValueError("star1 mode requires a subgroup view")
        if subgroup.parent.id != group.id:
            raise ValueError("subgroup does not belong to the session group")
        if not group.abelian:
            raise ValueError("star1 mode is supported over abelian groups only")
        if graph.mark is None:
            raise RefusalError("star1 mode needs a graph with an induced mark (L=...)")
        if not graphs.mark_has_two_infinite_sides(graph, graph.mark, evidence_probe):
            raise RefusalError(
                "subsystem construction needs both the marked and the unmarked "
                "vertex sets to be infinite; the mark fails that evidence check"
            )
        # infinite-index evidence: distinct coset keys must keep growing
        probe = evidence_probe
        keys = {subgroup.coset_key(group.enumerate(n)) for n in range(probe)}
        if len(keys) * 2 < int(probe**0.5):
            raise RefusalError(
                f"subgroup {subgroup.name} does not show infinite index over a "
                f"prefix of {probe} elements ({len(keys)} cosets seen)"
            )

    # ------------------------------------------------------------------
    # bookkeeping

    def _assign(self, v: int, x: Element):
        self.sigma[v] = x
        self.sigma_inv[x] = v

    def _edge_key(self, a: Element, b: Element) -> tuple[Element, Element]:
        return (a, b) if self.group.enum_key(a) <= self.group.enum_key(b) else (b, a)

    def _add_edge(self, a: Element, b: Element):
        self.gamma_edges.add(self._edge_key(a, b))
        d = self.group.sub(a, b)
        self.delta_signed.add(d)
        self.delta_signed.add(self.group.neg(d))
        self.delta_reps.add(difference_rep(self.group, d))

    def _nonzero_target(self, k: int) -> Element:
        # identity sits at enumeration index 0 (enforced at construction)
        return self.group.enumerate(k + 1)

    def _parent_scan(self) -> Iterator[Element]:
        i = self._scan_hint
        while self.group.enumerate(i) in self.sigma_inv:
            i += 1
        self._scan_hint = i
        while True:
            yield self.group.enumerate(i)
            i += 1

    def _coset_scan(self, rep: Element) -> Iterator[Element]:
        assert self.subgroup is not None
        i = self._coset_hints.get(rep, 0)
        while self.subgroup.coset_element(rep, i) in self.sigma_inv:
            i += 1
        self._coset_hints[rep] = i
        while True:
            yield self.subgroup.coset_element(rep, i)
            i += 1

    # ------------------------------------------------------------------
    # the three extension tasks

    def task_cover_vertex(self, v: int, budget: int = 0) -> StepReport:
        """Embed graph vertex v, joining it to all already-embedded neighbors
        with fresh, pairwise distinct differences."""
        report = StepReport(COVER_VERTEX, v, v, DONE, rejections=_new_rejections())
        if v in self.sigma:
            report.outcome = ALREADY
            return report

        neighbor_images = [self.sigma[w] for w in self.graph.neighbors(v) if w in self.sigma]

        forbidden_keys: set[Element] = set()
        if self.mode == STAR1:
            if self.graph.in_L(v):
                scan = self._coset_scan(self.subgroup.coset_key(self.group.zero))
            else:
                forbidden_keys = {self.subgroup.coset_key(self.group.zero)}
                forbidden_keys.update(self.subgroup.coset_key(img) for img in neighbor_images)
                scan = self._parent_scan()
        else:
            scan = self._parent_scan()

        for x in scan:
            if budget and report.candidates >= budget:
                report.outcome = EXHAUSTED
                return report
            report.candidates += 1
            if x in self.sigma_inv:
                report.rejections["used"] += 1
                continue
            if forbidden_keys and self.subgroup.coset_key(x) in forbidden_keys:
                report.rejections["coset"] += 1
                continue
            if any(self.group.sub(x, w) in self.delta_signed for w in neighbor_images):
                report.rejections["delta"] += 1
                continue
            if not vs_membership(self.group, neighbor_images, x):
                report.rejections["distinct"] += 1
                continue
            self._assign(v, x)
            for img in neighbor_images:
                self._add_edge(x, img)
            report.assigned = [(v, x)]
            report.edges_added = len(neighbor_images)
            return report

    def task_cover_element(self, g: Element) -> StepReport:
        """Map a fresh, far-away graph vertex to the group element g."""
        report = StepReport(COVER_ELEMENT, -1, g, DONE, rejections=_new_rejections())
        if g in self.sigma_inv:
            report.outcome = ALREADY
            return report
        want = self.subgroup.contains(g) if self.mode == STAR1 else None
        start = self._vertex_frontier.get(want, 0)
        v = graphs.fresh_vertex_far_from(
            self.graph, self.sigma.keys(), FRESH_RADIUS, want_in_L=want, start=start
        )
        self._vertex_frontier[want] = v
        report.candidates = v - start + 1
        self._assign(v, g)
        report.assigned = [(v, g)]
        return report

    def task_cover_difference(self, g: Element, budget: int = 0) -> StepReport:
        """Realize the difference g on a fresh, far-away graph edge: embed its
        endpoints at x and y with x - y = g."""
        if g == self.group.zero:
            raise ValueError("zero is never a difference target")
        report = StepReport(COVER_DIFFERENCE, -1, g, DONE, rejections=_new_rejections())
        if difference_rep(self.group, g) in self.delta_reps:
            report.outcome = ALREADY
            return report

        want = self.subgroup.contains(g) if self.mode == STAR1 else None
        start = self._edge_frontier.get(want, 0)
        v, w = graphs.fresh_edge_far_from(
            self.graph, self.sigma.keys(), FRESH_RADIUS, want_in_L=want, start=start
        )
        self._edge_frontier[want] = v

        if self.mode == STAR1 and want:
            scan = self._coset_scan(self.subgroup.coset_key(self.group.zero))
        else:
            scan = self._parent_scan()
        neg_g = self.group.neg(g)

        for x in scan:
            if budget and report.candidates >= budget:
                report.outcome = EXHAUSTED
                return report
            report.candidates += 1
            if x in self.sigma_inv:
                report.rejections["used"] += 1
                continue
            # y is chosen so the oriented difference x - y equals g exactly
            # (left subtraction; this matters in the nonabelian kernel)
            y = self.group.add(neg_g, x)
            if y in self.sigma_inv:
                report.rejections["used"] += 1
                continue
            if self.mode == STAR1 and not want:
                if self.subgroup.contains(x) or self.subgroup.contains(y):
                    report.rejections["coset"] += 1
                    continue
            self._assign(v, x)
            self._assign(w, y)
            self._add_edge(x, y)
            report.assigned = [(v, x), (w, y)]
            report.edges_added = 1
            return report

    # ------------------------------------------------------------------
    # fair scheduling

    def step(self) -> StepReport:
        """Dispatch the next task in round-robin order over the three
        families; in star mode an exhausted task keeps its slot and retries
        with a doubled budget."""
        fam = ("vertices", "elements", "differences")[self.steps_done % 3]
        k = self.cursors[fam]
        if fam == "vertices":
            report = self.task_cover_vertex(k, budget=self._family_budget[fam])
        elif fam == "elements":
            report = self.task_cover_element(self.group.enumerate(k))
        else:
            report = self.task_cover_difference(
                self._nonzero_target(k), budget=self._family_budget[fam]
            )
        report.index = k
        report.step = self.steps_done
        self.steps_done += 1
        if report.outcome == EXHAUSTED:
            self._family_budget[fam] *= 2
        else:
            self.cursors[fam] = k + 1
            self._family_budget[fam] = self.base_budget
        for key, n in report.rejections.items():
            self.rejection_totals[key] += n
        return report

    def run(self, steps: int) -> list[StepReport]:
        if steps < 0:
            raise ValueError("step count cannot be negative")
        return [self.step() for _ in range(steps)]

    def snapshot(self) -> StateSnapshot:
        return StateSnapshot(
            group=self.group,
            graph=self.graph,
            mode=self.mode,
            subgroup=self.subgroup,
            sigma=dict(self.sigma),
            gamma_edges=set(self.gamma_edges),
            delta_reps=set(self.delta_reps),
            cursors=dict(self.cursors),
            steps=self.steps_done,
        )


def new_session(
    group: Group,
    graph: graphs.GraphPresentation,
    mode: str = PLAIN,
    subgroup: SubgroupView | None = None,
    **options,
) -> Session:
    """Open a construction session; refuses groups with involutions and
    subsystem configurations whose cardinality evidence fails."""
    return Session(group, graph, mode=mode, subgroup=subgroup, **options)
