"""Greedy construction of countable difference graphs, with a verifier.

The package embeds a locally finite graph into the complete graph on a
countable involution-free group so that every nonzero group element occurs
exactly once as a difference of adjacent vertices; translating the embedded
copy by the group then decomposes the complete graph into isomorphic spanning
copies.  Sessions emit finite, certified, replayable prefixes of that
construction, and the verifier brute-forces every finitely checkable claim
about them.
"""

from .embedder import (
    PLAIN,
    STAR,
    STAR1,
    RefusalError,
    Session,
    StateSnapshot,
    StepReport,
    new_session,
    vs_membership,
)
from .graphs import CycleFamilySpec, GraphPresentation, InducedMark, parse_graph_spec
from .groups import (
    Group,
    SubgroupView,
    assert_involution_free,
    get_group,
    get_subgroup,
)

__all__ = [
    "PLAIN",
    "STAR",
    "STAR1",
    "RefusalError",
    "Session",
    "StateSnapshot",
    "StepReport",
    "new_session",
    "vs_membership",
    "CycleFamilySpec",
    "GraphPresentation",
    "InducedMark",
    "parse_graph_spec",
    "Group",
    "SubgroupView",
    "assert_involution_free",
    "get_group",
    "get_subgroup",
]

__version__ = "0.1.0"
