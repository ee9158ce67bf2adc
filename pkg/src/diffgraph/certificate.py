"""Certificates: serialized, replayable construction prefixes.

A certificate captures a session's configuration and its full state after a
given number of steps.  The byte layout is stable - fixed field order, sorted
element lists, compact separators - so identical configurations always
produce identical files, and a replay can be compared byte for byte.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from . import graphs
from .embedder import STAR, STAR1, Session, StateSnapshot, new_session
from .groups import Group, get_group, get_subgroup

# bump when an enumeration order or the graph layout changes incompatibly
ORDER_TAG = "enumeration-orders-v1"


def config_dict(session: Session) -> dict:
    cfg = {
        "group": session.group.id,
        "graph": session.graph.spec,
        "mode": session.mode,
    }
    if session.subgroup is not None:
        cfg["subgroup"] = session.subgroup.name
    if session.mode == STAR:
        cfg["budget"] = session.base_budget
    cfg["seedless"] = True
    return cfg


def fingerprint(cfg: dict) -> str:
    preimage = json.dumps({"config": cfg, "orders": ORDER_TAG}, sort_keys=True)
    return hashlib.sha256(preimage.encode("utf-8")).hexdigest()


def encode_certificate(session: Session) -> dict:
    group = session.group
    key = group.enum_key
    cfg = config_dict(session)
    sigma = [[v, group.encode(el)] for v, el in sorted(session.sigma.items())]
    edges = [
        [group.encode(a), group.encode(b)]
        for a, b in sorted(session.gamma_edges, key=lambda e: (key(e[0]), key(e[1])))
    ]
    delta = [group.encode(d) for d in sorted(session.delta_reps, key=key)]
    return {
        "config": cfg,
        "steps": session.steps_done,
        "sigma": sigma,
        "edges": edges,
        "delta": delta,
        "cursors": dict(session.cursors),
        "fingerprint": fingerprint(cfg),
    }


def dumps(cert: dict) -> str:
    return json.dumps(cert, separators=(",", ":")) + "\n"


def write_certificate(session: Session, path: str) -> dict:
    cert = encode_certificate(session)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(cert))
    return cert


def load_certificate(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        cert = json.load(fh)
    if not isinstance(cert, dict):
        raise ValueError("certificate must be a JSON object")
    missing = {"config", "steps", "sigma", "edges", "delta", "cursors", "fingerprint"} - set(cert)
    if missing:
        raise ValueError(f"certificate is missing fields: {sorted(missing)}")
    return cert


def session_from_config(cfg: dict, **options) -> Session:
    group = get_group(cfg["group"])
    graph = graphs.parse_graph_spec(cfg["graph"])
    subgroup = get_subgroup(cfg["subgroup"], group) if "subgroup" in cfg else None
    if cfg.get("mode") == STAR and "budget" in cfg:
        options.setdefault("budget", cfg["budget"])
    return new_session(group, graph, mode=cfg.get("mode", "plain"), subgroup=subgroup, **options)


def snapshot_from_certificate(cert: dict) -> StateSnapshot:
    """Rebuild a verifiable state directly from certificate contents.

    The snapshot mirrors what the file says, even if inconsistent; the
    verifier's job is to catch that."""
    cfg = cert["config"]
    group = get_group(cfg["group"])
    graph = graphs.parse_graph_spec(cfg["graph"])
    subgroup = get_subgroup(cfg["subgroup"], group) if "subgroup" in cfg else None
    sigma = {int(v): group.decode(obj) for v, obj in cert["sigma"]}
    edges = {(group.decode(a), group.decode(b)) for a, b in cert["edges"]}
    delta = {group.decode(obj) for obj in cert["delta"]}
    return StateSnapshot(
        group=group,
        graph=graph,
        mode=cfg.get("mode", "plain"),
        subgroup=subgroup,
        sigma=sigma,
        gamma_edges=edges,
        delta_reps=delta,
        cursors=dict(cert["cursors"]),
        steps=int(cert["steps"]),
    )


def replay(cert: dict, **options):
    """Re-run the construction the certificate describes.

    Returns (session, reports); determinism means re-encoding the session
    reproduces the certificate byte for byte."""
    session = session_from_config(cert["config"], **options)
    reports = session.run(int(cert["steps"]))
    return session, reports
