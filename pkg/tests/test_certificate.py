"""Certificate serialization: stable bytes, fingerprints, replay."""

import json

import pytest

from diffgraph import certificate
from diffgraph.embedder import STAR1, new_session
from diffgraph.graphs import parse_graph_spec
from diffgraph.groups import get_group, get_subgroup


def build_session(steps=150):
    s = new_session(get_group("z"), parse_graph_spec("cycles=3"))
    s.run(steps)
    return s


def test_round_trip_preserves_state(tmp_path):
    s = build_session()
    path = tmp_path / "cert.json"
    certificate.write_certificate(s, str(path))
    cert = certificate.load_certificate(str(path))
    snap = certificate.snapshot_from_certificate(cert)
    assert snap.sigma == s.sigma
    assert snap.gamma_edges == s.gamma_edges
    assert snap.delta_reps == s.delta_reps
    assert snap.cursors == s.cursors
    assert snap.steps == s.steps_done


def test_serialization_is_byte_stable():
    a = certificate.dumps(certificate.encode_certificate(build_session()))
    b = certificate.dumps(certificate.encode_certificate(build_session()))
    assert a == b


def test_replay_reproduces_reports_and_bytes():
    s = build_session()
    cert = certificate.encode_certificate(s)
    replayed, reports = certificate.replay(cert)
    assert len(reports) == cert["steps"]
    assert certificate.dumps(certificate.encode_certificate(replayed)) == certificate.dumps(cert)

    # and two replays produce identical report streams
    _, again = certificate.replay(cert)
    assert [r.as_tuple() for r in again] == [r.as_tuple() for r in reports]


def test_fingerprint_depends_on_config():
    s = build_session(30)
    base = certificate.encode_certificate(s)["fingerprint"]
    other = new_session(get_group("z"), parse_graph_spec("cycles=3,5"))
    other.run(30)
    assert certificate.encode_certificate(other)["fingerprint"] != base
    # steps do not enter the fingerprint, only the configuration does
    longer = build_session(60)
    assert certificate.encode_certificate(longer)["fingerprint"] == base


def test_element_encodings_per_group(tmp_path):
    s = build_session(60)
    cert = certificate.encode_certificate(s)
    assert all(isinstance(el, int) for _, el in cert["sigma"])

    s2 = new_session(get_group("z2"), parse_graph_spec("cycles=3"))
    s2.run(60)
    cert2 = certificate.encode_certificate(s2)
    assert all(isinstance(el, list) and len(el) == 2 for _, el in cert2["sigma"])

    s3 = new_session(get_group("fpk"), parse_graph_spec("cycles=3"), mode="star")
    s3.run(60)
    cert3 = certificate.encode_certificate(s3)
    assert all(set(el) == {"word", "shift"} for _, el in cert3["sigma"])
    assert cert3["config"]["budget"] == 4096


def test_subsystem_config_round_trip():
    s = new_session(get_group("z2"), parse_graph_spec("cycles=3+L=even-components"),
                    mode=STAR1, subgroup=get_subgroup("z-cross-0", get_group("z2")))
    s.run(90)
    cert = certificate.encode_certificate(s)
    assert cert["config"]["subgroup"] == "z-cross-0"
    snap = certificate.snapshot_from_certificate(cert)
    assert snap.subgroup is not None
    assert snap.mode == STAR1
    replayed, _ = certificate.replay(cert)
    assert certificate.encode_certificate(replayed) == cert


def test_malformed_json_raises_with_location(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"config": {')
    with pytest.raises(json.JSONDecodeError):
        certificate.load_certificate(str(path))


def test_missing_fields_rejected(tmp_path):
    path = tmp_path / "partial.json"
    path.write_text(json.dumps({"config": {}, "steps": 0}))
    with pytest.raises(ValueError, match="missing fields"):
        certificate.load_certificate(str(path))


def test_stable_field_order():
    cert = certificate.encode_certificate(build_session(30))
    assert list(cert) == ["config", "steps", "sigma", "edges", "delta", "cursors",
                          "fingerprint"]
    assert list(cert["config"]) == ["group", "graph", "mode", "seedless"]
