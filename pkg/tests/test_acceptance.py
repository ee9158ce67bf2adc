"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -s` to see the lines as they print.
"""

import math
import random
import time
from contextlib import contextmanager

import pytest

from diffgraph import certificate, vs_membership
from diffgraph.cli import main as cli_main
from diffgraph.embedder import STAR1, RefusalError, new_session
from diffgraph.graphs import parse_graph_spec
from diffgraph.groups import get_group, get_subgroup
from diffgraph.verifier import (
    brute_force_vs,
    check_abelian_bad_set_bound,
    check_induced_iso,
    check_lemma_vs_injection,
    check_partial_difference,
    check_subsystem,
    check_window_factorization,
    window_prefix,
)

Z = get_group("z")
Z2 = get_group("z2")
FPK = get_group("fpk")


@contextmanager
def criterion(number, name):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number} {name}: FAIL")
        raise
    print(f"ACCEPTANCE {number} {name}: PASS")


@pytest.fixture(scope="module")
def abelian_build():
    """Criterion 1/2 workload: z, cycles=3, plain, 3000 steps, timed."""
    session = new_session(Z, parse_graph_spec("cycles=3"))
    start = time.monotonic()
    session.run(3000)
    elapsed = time.monotonic() - start
    return session, elapsed


@pytest.fixture(scope="module")
def subsystem_build():
    """Criterion 7 workload: z2 / z-cross-0, star1, 3000 steps, timed."""
    session = new_session(
        Z2,
        parse_graph_spec("cycles=3+L=even-components"),
        mode=STAR1,
        subgroup=get_subgroup("z-cross-0", Z2),
    )
    start = time.monotonic()
    session.run(3000)
    elapsed = time.monotonic() - start
    return session, elapsed


def test_1_end_to_end_abelian_build(abelian_build):
    with criterion(1, "end-to-end abelian build"):
        session, elapsed = abelian_build
        assert elapsed < 30.0, f"3000 steps took {elapsed:.1f}s"
        snap = session.snapshot()
        assert check_partial_difference(snap).passed
        assert check_induced_iso(snap).passed
        assert all(session.cursors[fam] >= 1000
                   for fam in ("vertices", "elements", "differences"))


def test_2_exact_cover_window(abelian_build):
    with criterion(2, "exact-cover window"):
        session, _ = abelian_build
        window = window_prefix(Z, 100)
        verdict = check_window_factorization(session.snapshot(), window)
        assert verdict.passed, verdict.witness

        short = new_session(Z, parse_graph_spec("cycles=3"))
        short.run(300)
        early = check_window_factorization(short.snapshot(), window)
        assert early.passed
        assert verdict.details["pending_fraction"] < early.details["pending_fraction"]


def test_3_finite_bad_set_bound():
    with criterion(3, "abelian finite bad-set bound"):
        rng = random.Random(2026)
        prefix = window_prefix(Z, 200)
        window = window_prefix(Z, 2000)
        for _ in range(100):
            members = rng.sample(prefix, rng.randint(1, 6))
            verdict = check_abelian_bad_set_bound(Z, members, window)
            assert verdict.passed, verdict.details


def test_4_nonabelian_injection():
    with criterion(4, "nonabelian reflection injection"):
        rng = random.Random(2027)
        window = window_prefix(FPK, 500)
        for _ in range(50):
            y1, y2 = rng.sample(window, 2)
            verdict = check_lemma_vs_injection(FPK, y1, y2, window)
            assert verdict.passed, verdict.witness


def test_5_pathology_reproduction():
    with criterion(5, "nonabelian infinite-fiber pathology"):
        y1, y2 = ((), 0), ((), 2)
        assert FPK.add(y1, y2) == ((), 2)
        window = window_prefix(FPK, 500)
        bad = [x for x in window if not vs_membership(FPK, [y1, y2], x)]
        assert len(bad) >= 10, f"only {len(bad)} failures"


def test_6_involution_refusal():
    with criterion(6, "involution refusal"):
        demo = get_group("z2xz-demo")
        with pytest.raises(RefusalError) as exc:
            new_session(demo, parse_graph_spec("cycles=3"))
        assert exc.value.witness == (1, 0)


def test_7_subsystem_build(subsystem_build):
    with criterion(7, "subsystem build"):
        session, elapsed = subsystem_build
        assert elapsed < 60.0, f"3000 steps took {elapsed:.1f}s"
        snap = session.snapshot()
        assert check_subsystem(snap).passed
        assert check_partial_difference(snap).passed
        assert check_induced_iso(snap).passed


def test_8_oracle_agreement():
    with criterion(8, "candidate-set oracle agreement"):
        rng = random.Random(2028)
        groups = [Z, Z2, FPK]
        prefixes = {g.id: window_prefix(g, 256) for g in groups}
        for i in range(10**4):
            group = groups[i % 3]
            prefix = prefixes[group.id]
            members = rng.sample(prefix, rng.randint(0, 6))
            x = rng.choice(prefix)
            fast = vs_membership(group, members, x)
            brute = bool(brute_force_vs(group, members, [x]))
            assert fast == brute, (group.id, members, x)


def test_9_determinism(tmp_path):
    with criterion(9, "byte-identical certificates"):
        args = ["build", "--group", "z", "--graph", "cycles=3", "--steps", "3000"]
        a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
        assert cli_main(args + ["--out", a]) == 0
        assert cli_main(args + ["--out", b]) == 0
        bytes_a, bytes_b = open(a, "rb").read(), open(b, "rb").read()
        assert bytes_a == bytes_b
        # the replay path agrees byte for byte as well
        cert = certificate.load_certificate(a)
        replayed, _ = certificate.replay(cert)
        assert certificate.dumps(certificate.encode_certificate(replayed)).encode() == bytes_a
