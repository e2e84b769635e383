#!/usr/bin/env python3
"""Find, verify and record an explicit move sequence joining the two
shipped 3-string diagrams.

The two diagrams are homotopic by interchanging the single and doubled
band loops, yet their trigon orbits are disjoint, so any witness must
climb through crossing-increasing moves.  This drives the library's
bounded equivalence search (whose tunnel phase quotients free trigon
moves into orbit nodes), replays the witness through full move
validation, and freezes it as a JSON artifact next to the corpus.

Usage:
    python scripts/witness_search.py [--budget 12] [--node-limit 4000]
        [--time-limit 600] [--out src/flatstring/data/counterexample_witness.json]
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from flatstring import (canonical_text, equivalent_bounded, load_corpus,  # noqa: E402
                        parse, replay_witness)


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--budget", type=int, default=12)
    ap.add_argument("--node-limit", type=int, default=4000)
    ap.add_argument("--time-limit", type=float, default=600.0)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent
                                         / "src/flatstring/data/counterexample_witness.json"))
    args = ap.parse_args()

    corpus = {e.name: e for e in load_corpus()}
    a = corpus["counterexample_left"].code
    b = corpus["counterexample_right"].code
    t0 = time.time()
    verdict = equivalent_bounded(a, b, budget=args.budget,
                                 node_limit=args.node_limit,
                                 time_limit=args.time_limit)
    elapsed = time.time() - t0
    print(f"status: {verdict.status} ({elapsed:.1f}s)")
    for key in ("via", "tunnel_orbits_explored", "peak_crossings", "expansions"):
        if key in verdict.details:
            print(f"  {key}: {verdict.details[key]}")
    if verdict.status != "equivalent-with-witness":
        print("no witness found under these limits; nothing written")
        return 1

    ca, cb = canonical_text(a), canonical_text(b)
    ok = replay_witness(ca, cb, verdict.witness)
    peak = max(parse(s.state).n_crossings for s in verdict.witness)
    print(f"witness: {len(verdict.witness)} moves, peak {peak} crossings, "
          f"replay ok: {ok}")
    if not ok:
        return 2
    payload = {"from": ca, "to": cb, "budget": args.budget,
               "peak_crossings": peak,
               "steps": [s.to_json() for s in verdict.witness]}
    Path(args.out).write_text(json.dumps(payload, indent=1, sort_keys=True))
    print("wrote", args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
