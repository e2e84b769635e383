"""
Command-line front end.

Every subcommand is a thin shell over one library operation and emits a
deterministic report: human text by default, stable JSON (schema
``report_v1``) with ``--format json``.  Exit codes: 0 all checks passed,
1 usage or input error, 2 a mathematical check failed, 3 inconclusive
under the configured resource limits (for searches, only with --strict).

Code arguments are literal code strings; ``@name`` pulls the named entry
from the shipped corpus.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict

from .classify import classify
from .corpus import check_entries, load_corpus, load_genus_table
from .gausscode import (CodeSyntaxError, FlatstringError, GaussCode,
                        ValidationError, canonical_text, parse, serialize)
from .moves import enumerate_decreasing, enumerate_increasing, enumerate_r3
from .render import to_dot, to_svg
from .search import (DEFAULT_ORBIT_CAP, InconclusiveError, equivalent_bounded,
                     is_crossing_irreducible, reduce_monotone, scramble,
                     type3_orbit)
from .surface import carter_genus, trace_faces

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MATH_FAIL = 2
EXIT_INCONCLUSIVE = 3


def _load_code(arg: str) -> GaussCode:
    if arg.startswith("@"):
        name = arg[1:]
        for entry in load_corpus():
            if entry.name == name:
                return entry.code
        raise FlatstringError(f"no corpus entry named {name!r}")
    return parse(arg)


class Report:
    """Accumulates a deterministic report for one invocation."""

    def __init__(self, command: str, args: argparse.Namespace):
        self.command = command
        self.inputs: dict = {}
        self.result: dict = {}
        self.limits: dict = {}
        self.caveats: list[str] = []
        self.lines: list[str] = []
        self.exit_code = EXIT_OK
        self._args = args
        self._t0 = time.monotonic()

    def say(self, text: str) -> None:
        self.lines.append(text)

    def emit(self) -> int:
        if self._args.format == "json":
            payload = {"schema": "report_v1", "command": self.command,
                       "inputs": self.inputs, "result": self.result,
                       "limits": self.limits, "caveats": self.caveats,
                       "exit_code": self.exit_code}
            if self._args.timing:
                payload["timing"] = {"seconds": round(time.monotonic() - self._t0, 3)}
            print(json.dumps(payload, sort_keys=True, indent=1))
        else:
            for line in self.lines:
                print(line)
            for caveat in self.caveats:
                print(f"caveat: {caveat}")
        return self.exit_code


def _surface_json(code: GaussCode) -> dict:
    rep = carter_genus(code)
    return {"genus_total": rep.genus_total,
            "genus_per_component": list(rep.genus_per_component),
            "component_count": rep.component_count,
            "connected": rep.connected}


# -- subcommand bodies --------------------------------------------------------


def cmd_validate(args, rep: Report) -> None:
    code = _load_code(args.code)
    rep.inputs["code"] = serialize(code)
    rep.result = {"valid": True, "crossings": code.n_crossings,
                  "components": code.n_components,
                  "canonical": canonical_text(code)}
    rep.say(f"valid: {serialize(code)}")
    rep.say(f"crossings: {code.n_crossings}  components: {code.n_components}")


def cmd_canon(args, rep: Report) -> None:
    code = _load_code(args.code)
    canon = canonical_text(code)
    rep.inputs["code"] = serialize(code)
    rep.result = {"canonical": canon}
    rep.say(canon)
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(to_svg(code))
        rep.result["svg"] = args.svg
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(to_dot(code))
        rep.result["dot"] = args.dot


def cmd_genus(args, rep: Report) -> None:
    code = _load_code(args.code)
    rep.inputs["code"] = canonical_text(code)
    rep.result = _surface_json(code)
    r = carter_genus(code)
    rep.say(f"genus_total: {r.genus_total}")
    rep.say(f"genus_per_component: {list(r.genus_per_component)}")
    rep.say(f"component_count: {r.component_count}  connected: {r.connected}")


def cmd_faces(args, rep: Report) -> None:
    code = _load_code(args.code)
    decomp = trace_faces(code)
    rep.inputs["code"] = canonical_text(code)
    faces = [{"degree": f.degree, "corners": list(f.corners),
              "walk": [[s.component, s.position, s.end] for s in f.walk]}
             for f in decomp.faces]
    rep.result = {"vertices": decomp.vertices, "edges": decomp.edges,
                  "faces": faces, "degree_sum": decomp.degree_sum,
                  "groups": [{"members": list(g.members), "V": g.vertices,
                              "E": g.edges, "F": len(g.faces),
                              "euler": g.euler, "genus": g.genus}
                             for g in decomp.groups]}
    rep.say(f"V={decomp.vertices} E={decomp.edges} F={decomp.n_faces}")
    for f in decomp.faces:
        rep.say(f"  face degree {f.degree}: corners {' '.join(f.corners) or '-'}")


def cmd_moves(args, rep: Report) -> None:
    code = _load_code(args.code)
    budget = args.budget if args.budget is not None else code.n_crossings + 2
    rep.inputs["code"] = canonical_text(code)
    rep.limits["budget"] = budget
    dec = enumerate_decreasing(code)
    tri = enumerate_r3(code)
    inc = enumerate_increasing(code, budget)
    rep.result = {"decreasing": [s.describe() for s in dec],
                  "r3": [s.describe() for s in tri],
                  "increasing": [s.describe() for s in inc]}
    rep.say(f"decreasing: {len(dec)}  r3: {len(tri)}  increasing: {len(inc)}")
    for s in dec + tri:
        rep.say(f"  {s.kind} {s.data}")


def cmd_orbit(args, rep: Report) -> None:
    code = _load_code(args.code)
    orbit = type3_orbit(code, args.cap, args.workers)
    rep.inputs["code"] = canonical_text(code)
    rep.limits["cap"] = args.cap
    rep.result = {"size": len(orbit.members), "exhausted": orbit.exhausted,
                  "members": list(orbit.members),
                  "adjacency": {k: list(v) for k, v in sorted(orbit.adjacency.items())}}
    rep.say(f"orbit size: {len(orbit.members)} (exhausted: {orbit.exhausted})")
    for m in orbit.members:
        rep.say(f"  {m}")
    if not orbit.exhausted:
        rep.exit_code = EXIT_INCONCLUSIVE if args.strict else EXIT_OK
        rep.caveats.append("orbit cap reached; summary is partial")


def cmd_reduce(args, rep: Report) -> None:
    code = _load_code(args.code)
    res = reduce_monotone(code, args.cap, args.workers)
    rep.inputs["code"] = canonical_text(code)
    rep.limits["cap"] = args.cap
    rep.result = {"reduced": canonical_text(res.code),
                  "complete": res.complete,
                  "trace": res.trace.to_json()}
    rep.say(f"reduced: {canonical_text(res.code)}")
    rep.say(f"steps: {len(res.trace.steps)}  complete: {res.complete}")
    for s in res.trace.steps:
        rep.say(f"  {s.move.kind:13s} -> {s.next}  "
                f"(crossings {s.crossings_after}, genus {s.genus_after})")
    if not res.complete:
        rep.exit_code = EXIT_INCONCLUSIVE if args.strict else EXIT_OK
        rep.caveats.append("reduction interrupted by the orbit cap")


def cmd_irreducible(args, rep: Report) -> None:
    code = _load_code(args.code)
    rep.inputs["code"] = canonical_text(code)
    rep.limits["cap"] = args.cap
    try:
        res = is_crossing_irreducible(code, args.cap, args.workers)
    except InconclusiveError as exc:
        rep.result = {"irreducible": None, "reason": str(exc)}
        rep.say(f"inconclusive: {exc}")
        rep.exit_code = EXIT_INCONCLUSIVE
        return
    rep.result = {"irreducible": res.irreducible,
                  "orbit_size": len(res.orbit.members)}
    if res.witness is not None:
        member, site = res.witness
        rep.result["witness"] = {"member": member, "site": site.describe()}
        rep.say(f"reducible: {site.kind} available at orbit member {member}")
    else:
        rep.say(f"crossing-irreducible (orbit of {len(res.orbit.members)} exhausted)")


def cmd_classify(args, rep: Report) -> None:
    code = _load_code(args.code)
    rep.inputs["code"] = canonical_text(code)
    rep.limits["cap"] = args.cap
    try:
        cls = classify(code, orbit_cap=args.cap, workers=args.workers)
    except InconclusiveError as exc:
        rep.result = {"error": str(exc)}
        rep.say(f"inconclusive: {exc}")
        rep.exit_code = EXIT_INCONCLUSIVE
        return
    rep.result = cls.to_json()
    rep.caveats.extend(cls.caveats)
    rep.say(f"connected_class: {cls.connected_class}")
    rep.say(f"parallel: {cls.parallel_status}")
    for p in cls.parallel_pairs:
        rep.say(f"  pair ({p.first},{p.second}): {p.status} ({p.reason})")
    rep.say(f"reduced: {cls.reduced_code}")


def cmd_equiv(args, rep: Report) -> None:
    a, b = _load_code(args.code_a), _load_code(args.code_b)
    rep.inputs = {"a": canonical_text(a), "b": canonical_text(b)}
    rep.limits = {"budget": args.budget, "node_limit": args.node_limit,
                  "time_limit": args.time_limit, "cap": args.cap}
    verdict = equivalent_bounded(
        a, b, budget=args.budget, node_limit=args.node_limit,
        time_limit=args.time_limit, orbit_cap=args.cap, workers=args.workers)
    payload = verdict.to_json()
    if (args.require_connected_nonparallel
            and verdict.status == "distinct-orbits-at-minimum"
            and not verdict.details.get("hypotheses_checked")):
        payload["status"] = "inconclusive-budget-exhausted"
        rep.caveats.append("distinctness withheld: hypotheses not certified")
    rep.result = payload
    rep.say(f"status: {payload['status']}")
    if verdict.witness:
        rep.say(f"witness: {len(verdict.witness)} moves")
        for s in verdict.witness:
            rep.say(f"  {s.direction:7s} {s.move.kind:13s} -> {s.next}")
    if "caveat" in verdict.details:
        rep.caveats.append(verdict.details["caveat"])
    if payload["status"] == "inconclusive-budget-exhausted" and args.strict:
        rep.exit_code = EXIT_INCONCLUSIVE


def cmd_scramble(args, rep: Report) -> None:
    code = _load_code(args.code)
    budget = args.budget if args.budget is not None else code.n_crossings + 8
    res = scramble(code, args.seed, args.steps, budget)
    rep.inputs["code"] = serialize(code)
    rep.limits = {"seed": args.seed, "steps": args.steps, "budget": budget}
    rep.result = {"code": serialize(res.code),
                  "canonical": canonical_text(res.code),
                  "steps_applied": res.steps_applied,
                  "stalled": res.stalled,
                  "moves": [m.describe() for m in res.moves]}
    rep.say(serialize(res.code))
    if res.stalled:
        rep.caveats.append("no applicable move remained; stopped early")


def cmd_corpus_check(args, rep: Report) -> None:
    entries = load_corpus() + load_genus_table()
    results = check_entries(entries, args.cap)
    bad = [r for r in results if not r.ok]
    rep.result = {"entries": len(entries), "checks": len(results),
                  "failures": [asdict(r) for r in bad]}
    rep.say(f"{len(entries)} entries, {len(results)} checks, {len(bad)} failures")
    for r in bad:
        rep.say(f"  FAIL {r.entry}.{r.key}: expected {r.expected}, got {r.actual}")
    if bad:
        rep.exit_code = EXIT_MATH_FAIL


def cmd_verify_counterexample(args, rep: Report) -> None:
    entries = {e.name: e for e in load_corpus()}
    left = entries["counterexample_left"]
    right = entries["counterexample_right"]
    steps: list[tuple[str, bool | None, str]] = []

    def record(name: str, ok: bool | None, detail: str) -> None:
        steps.append((name, ok, detail))
        tag = "PASS" if ok else ("INCONCLUSIVE" if ok is None else "FAIL")
        rep.say(f"[{tag}] {name}: {detail}")

    # 1: validation
    try:
        for e in (left, right):
            parse(e.text)
        record("validate", True,
               f"both 3-string codes parse and validate "
               f"({left.code.n_crossings} crossings each)")
    except (CodeSyntaxError, ValidationError) as exc:
        record("validate", False, str(exc))

    # 2: crossing-irreducibility
    try:
        ir_l = is_crossing_irreducible(left.code, args.cap)
        ir_r = is_crossing_irreducible(right.code, args.cap)
        ok = ir_l.irreducible and ir_r.irreducible
        record("crossing-irreducible", ok,
               f"left={ir_l.irreducible} right={ir_r.irreducible}")
    except InconclusiveError as exc:
        record("crossing-irreducible", None, str(exc))
        ir_l = ir_r = None

    # 3: orbit exhaustion and disjointness
    if ir_l and ir_r:
        ol, orr = ir_l.orbit, ir_r.orbit
        disjoint = not (ol.member_set & orr.member_set)
        ok = ol.exhausted and orr.exhausted and disjoint
        record("disjoint-trigon-orbits", ok,
               f"orbit sizes {len(ol.members)} and {len(orr.members)}, "
               f"disjoint={disjoint}")
    else:
        record("disjoint-trigon-orbits", None, "skipped: step 2 incomplete")

    # 4: the parallel pair that voids the uniqueness hypotheses
    cls_l = classify(left.code, orbit_cap=args.cap)
    cls_r = classify(right.code, orbit_cap=args.cap)
    flagged = (cls_l.parallel_status != "none-detected"
               and cls_r.parallel_status != "none-detected")
    record("parallel-pair-flagged", flagged,
           f"left={cls_l.parallel_status} right={cls_r.parallel_status} "
           f"(connected: {cls_l.connected_class}/{cls_r.connected_class}); "
           "the connected-non-parallel uniqueness statement does not apply")

    # 5: optional witness search
    if args.witness_search:
        budget = args.budget or left.code.n_crossings + 4
        verdict = equivalent_bounded(left.code, right.code, budget=budget,
                                     node_limit=args.node_limit,
                                     time_limit=args.time_limit,
                                     orbit_cap=args.cap)
        if verdict.status == "equivalent-with-witness":
            record("interchange-witness", True,
                   f"witness with {len(verdict.witness)} moves within budget {budget}")
        else:
            record("interchange-witness", None,
                   f"{verdict.status} (budget {budget}); "
                   "honest inconclusive, not a distinctness claim")

    rep.result = {"steps": [{"name": n, "ok": ok, "detail": d}
                            for n, ok, d in steps]}
    if any(ok is False for _, ok, _ in steps):
        rep.exit_code = EXIT_MATH_FAIL
    elif any(ok is None for _, ok, _ in steps):
        rep.exit_code = EXIT_INCONCLUSIVE


# -- argument wiring -----------------------------------------------------------


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--strict", action="store_true",
                    help="exit 3 on inconclusive search results")
    sp.add_argument("--timing", action="store_true",
                    help="include wall-clock timing in JSON reports")
    sp.add_argument("--workers", type=int, default=1,
                    help="abstract worker count for orbit expansion")
    sp.add_argument("--cap", type=int, default=DEFAULT_ORBIT_CAP,
                    help="orbit member cap")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="flatstring",
        description="flat virtual n-strings as signed multi-component Gauss codes")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        _add_common(sp)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("validate", cmd_validate, help="parse and validate a code")
    sp.add_argument("code")
    sp = add("canon", cmd_canon, help="canonical form (and optional drawings)")
    sp.add_argument("code")
    sp.add_argument("--svg", help="write a chord-diagram SVG here")
    sp.add_argument("--dot", help="write the diagram graph in DOT here")
    sp = add("genus", cmd_genus, help="carrier-surface genus report")
    sp.add_argument("code")
    sp = add("faces", cmd_faces, help="face decomposition of the carrier")
    sp.add_argument("code")
    sp = add("moves", cmd_moves, help="available move sites")
    sp.add_argument("code")
    sp.add_argument("--budget", type=int, default=None)
    sp = add("orbit", cmd_orbit, help="trigon-move orbit of the canonical form")
    sp.add_argument("code")
    sp = add("reduce", cmd_reduce, help="monotone crossing reduction")
    sp.add_argument("code")
    sp = add("irreducible", cmd_irreducible, help="crossing-irreducibility test")
    sp.add_argument("code")
    sp = add("classify", cmd_classify, help="connectedness and parallelism screen")
    sp.add_argument("code")
    sp = add("equiv", cmd_equiv, help="bounded equivalence search")
    sp.add_argument("code_a")
    sp.add_argument("code_b")
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--node-limit", type=int, default=4000)
    sp.add_argument("--time-limit", type=float, default=None)
    sp.add_argument("--require-connected-nonparallel", action="store_true",
                    help="withhold distinctness unless hypotheses certify")
    sp = add("scramble", cmd_scramble, help="seeded random moves")
    sp.add_argument("code")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--budget", type=int, default=None)
    add("corpus-check", cmd_corpus_check,
        help="re-derive every expectation in the shipped corpus")
    sp = add("verify-counterexample", cmd_verify_counterexample,
             help="machine-check the 3-string counterexample")
    sp.add_argument("--witness-search", action="store_true",
                    help="also search for an explicit interchange witness")
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--node-limit", type=int, default=4000)
    sp.add_argument("--time-limit", type=float, default=600.0)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    rep = Report(args.command, args)
    try:
        args.fn(args, rep)
    except (CodeSyntaxError, ValidationError) as exc:
        rep.result = {"error": str(exc)}
        rep.say(f"error: {exc}")
        rep.exit_code = EXIT_USAGE
    except InconclusiveError as exc:
        rep.result = {"error": str(exc)}
        rep.say(f"inconclusive: {exc}")
        rep.exit_code = EXIT_INCONCLUSIVE
    except FlatstringError as exc:
        rep.result = {"error": str(exc)}
        rep.say(f"error: {exc}")
        rep.exit_code = EXIT_USAGE
    return rep.emit()


if __name__ == "__main__":
    sys.exit(main())
