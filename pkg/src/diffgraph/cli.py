"""Operator surface: build certified prefixes, verify and inspect them.

    diffgraph build --group z --graph cycles=3 --mode plain --steps 3000 --out cert.json
    diffgraph verify cert.json --window 100
    diffgraph inspect cert.json

Graph specs: `cycles=3` (triangles forever), `cycles=3,5` (alternating
pattern), `rays=2+cycles=4` (two double rays plus 4-cycles), and an optional
`+L=even-components` / `+L=odd-components` induced mark for subsystem runs.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from . import certificate, graphs, verifier
from .embedder import RefusalError, STAR1, new_session
from .groups import GROUP_IDS, SUBGROUP_NAMES, get_group, get_subgroup

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diffgraph",
        description="Greedy difference-graph construction over countable groups",
        epilog=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="run a construction session and write a certificate")
    b.add_argument("--group", choices=GROUP_IDS, required=True)
    b.add_argument("--graph", required=True, help="graph spec, e.g. cycles=3")
    b.add_argument("--mode", choices=("plain", "star", "star1"), default="plain")
    b.add_argument("--subgroup", choices=SUBGROUP_NAMES, help="required for star1")
    b.add_argument("--steps", type=int, required=True)
    b.add_argument("--budget", type=int, default=4096, help="candidate cap per task (star mode)")
    b.add_argument("--window", type=int, default=0,
                   help="run the verifier inline on this enumeration prefix (0 = skip)")
    b.add_argument("--out", default="certificate.json")

    v = sub.add_parser("verify", help="check a certificate and report verdicts")
    v.add_argument("path")
    v.add_argument("--window", type=int, default=100)
    v.add_argument("--json", dest="json_out", help="also write the verdicts as JSON")

    i = sub.add_parser("inspect", help="summarize a certificate")
    i.add_argument("path")
    i.add_argument("--window", type=int, default=100)
    return parser


def _print_verdicts(verdicts) -> bool:
    width = max(len(v.name) for v in verdicts)
    ok = True
    for v in verdicts:
        status = "pass" if v.passed else "FAIL"
        extra = " ".join(f"{k}={val}" for k, val in sorted(v.details.items()))
        print(f"{v.name:<{width}}  {status}  {extra}")
        if not v.passed:
            ok = False
            print(f"{'':<{width}}  witness: {json.dumps(v.witness, sort_keys=True)}")
    return ok


def _collect_verdicts(state, window_size: int):
    verdicts = [
        verifier.check_partial_difference(state),
        verifier.check_induced_iso(state),
    ]
    if window_size > 0:
        window = verifier.window_prefix(state.group, window_size)
        verdicts.append(verifier.check_window_factorization(state, window))
    if state.mode == STAR1:
        verdicts.append(verifier.check_subsystem(state))
    return verdicts


def cmd_build(args) -> int:
    group = get_group(args.group)
    try:
        graph = graphs.parse_graph_spec(args.graph)
        subgroup = get_subgroup(args.subgroup, group) if args.subgroup else None
        session = new_session(group, graph, mode=args.mode, subgroup=subgroup,
                              budget=args.budget)
    except RefusalError as exc:
        print(f"refused: {exc.reason}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    reports = session.run(args.steps)
    cert = certificate.write_certificate(session, args.out)

    outcomes = Counter(r.outcome for r in reports)
    print(f"wrote {args.out} ({args.steps} steps, fingerprint {cert['fingerprint'][:12]})")
    print("cursors: " + " ".join(f"{k}={n}" for k, n in sorted(session.cursors.items())))
    print(f"embedded vertices: {len(session.sigma)}  edges: {len(session.gamma_edges)}  "
          f"differences: {len(session.delta_reps)}")
    print("rejected candidates: "
          + " ".join(f"{k}={n}" for k, n in sorted(session.rejection_totals.items())))
    if outcomes.get("budget-exhausted"):
        print(f"budget-exhausted attempts: {outcomes['budget-exhausted']}")

    if args.window > 0:
        ok = _print_verdicts(_collect_verdicts(session.snapshot(), args.window))
        if not ok:
            return EXIT_CHECK_FAILED
    return EXIT_OK


def _load(path: str):
    try:
        return certificate.load_certificate(path)
    except FileNotFoundError:
        print(f"error: no such file: {path}", file=sys.stderr)
    except json.JSONDecodeError as exc:
        print(f"error: malformed certificate JSON at {path}:{exc.lineno}:{exc.colno}: {exc.msg}",
              file=sys.stderr)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return None


def cmd_verify(args) -> int:
    cert = _load(args.path)
    if cert is None:
        return EXIT_USAGE
    state = certificate.snapshot_from_certificate(cert)
    verdicts = _collect_verdicts(state, args.window)
    expected = certificate.fingerprint(cert["config"])
    verdicts.append(verifier.Verdict(
        "fingerprint", cert["fingerprint"] == expected,
        witness=None if cert["fingerprint"] == expected else {
            "stored": cert["fingerprint"], "expected": expected},
        details={},
    ))
    ok = _print_verdicts(verdicts)
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            json.dump({"certificate": args.path, "passed": ok,
                       "checks": [v.as_dict() for v in verdicts]}, fh, indent=2)
            fh.write("\n")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_inspect(args) -> int:
    cert = _load(args.path)
    if cert is None:
        return EXIT_USAGE
    state = certificate.snapshot_from_certificate(cert)
    cfg = cert["config"]
    print(f"certificate: {args.path}")
    print("config: " + " ".join(f"{k}={cfg[k]}" for k in cfg))
    print(f"steps: {state.steps}")
    print("cursors: " + " ".join(f"{k}={n}" for k, n in sorted(state.cursors.items())))
    print(f"embedded vertices: {len(state.sigma)}  edges: {len(state.gamma_edges)}  "
          f"differences: {len(state.delta_reps)}")
    if state.sigma:
        sizes = Counter(state.graph.component_of(v) for v in state.sigma)
        comp, size = max(sizes.items(), key=lambda kv: (kv[1], -kv[0]))
        print(f"largest embedded component: {size} vertices (component {comp})")
    else:
        print("largest embedded component: 0 vertices")
    if args.window > 0:
        window = verifier.window_prefix(state.group, args.window)
        verdict = verifier.check_window_factorization(state, window)
        d = verdict.details
        print(f"window {d['window']}: covered={d['covered']} pending={d['pending']} "
              f"pending_fraction={d['pending_fraction']:.4f}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"build": cmd_build, "verify": cmd_verify, "inspect": cmd_inspect}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
