"""
Orbit and reduction machinery over the flat move graph.

All searches work on canonical forms, so node identity is exactly "equal up
to isotopy and (de)stabilization".  Witnesses and reduction traces are
sequences of replayable steps; a forward step applies its move site to the
step's start state, a reverse step applies it to the end state (it records
travelling a decreasing move backwards).
"""

from __future__ import annotations

import random
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from .gausscode import FlatstringError, GaussCode, canonical_form, canonical_text, parse
from .surface import carter_genus
from .moves import (MoveSite, apply_move, enumerate_decreasing, enumerate_increasing,
                    enumerate_r3)

DEFAULT_ORBIT_CAP = 10_000


class InconclusiveError(FlatstringError):
    """A search hit a resource cap before reaching a definite answer."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class WitnessStep:
    """One replayable edge of the move graph between canonical codes."""

    state: str
    move: MoveSite
    next: str
    direction: str = "forward"   # "reverse": applying move to next gives state
    crossings_after: int = 0
    genus_after: int = 0

    def to_json(self) -> dict:
        return {"state": self.state, "move": self.move.describe(),
                "direction": self.direction, "next": self.next,
                "crossings_after": self.crossings_after,
                "genus_after": self.genus_after}


def replay_step(step: WitnessStep) -> bool:
    """Re-run one step through full site validation."""
    if step.direction == "forward":
        src, dst = step.state, step.next
    else:
        src, dst = step.next, step.state
    out = apply_move(parse(src), step.move)
    return canonical_text(out) == dst


def replay_witness(start: str, end: str, steps: Iterable[WitnessStep]) -> bool:
    """Check that the steps chain canonical ``start`` to canonical ``end``."""
    at = canonical_text(parse(start))
    for step in steps:
        if step.state != at or not replay_step(step):
            return False
        at = step.next
    return at == canonical_text(parse(end))


# -- Type 3 orbits ------------------------------------------------------------


@dataclass(frozen=True)
class OrbitSummary:
    """BFS closure of a canonical code under Type 3 moves."""

    start: str
    members: tuple[str, ...]               # BFS discovery order
    adjacency: dict[str, tuple[str, ...]]
    parents: dict[str, tuple[str, MoveSite] | None]
    exhausted: bool

    @property
    def member_set(self) -> frozenset[str]:
        return frozenset(self.members)

    def path_to(self, member: str) -> list[WitnessStep]:
        """Forward Type 3 steps from the orbit start to a member."""
        chain: list[tuple[str, MoveSite, str]] = []
        at = member
        while True:
            par = self.parents[at]
            if par is None:
                break
            prev, site = par
            chain.append((prev, site, at))
            at = prev
        chain.reverse()
        return [_mk_step(state, site, nxt) for state, site, nxt in chain]


def _mk_step(state: str, site: MoveSite, nxt: str,
             direction: str = "forward") -> WitnessStep:
    code = parse(nxt if direction == "forward" else state)
    return WitnessStep(state, site, nxt, direction,
                       crossings_after=code.n_crossings,
                       genus_after=carter_genus(code).genus_total)


def _expand_many(codes: list[GaussCode], fn, workers: int):
    if workers > 1 and len(codes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, codes))
    return [fn(c) for c in codes]


def type3_orbit(code: GaussCode, cap: int = DEFAULT_ORBIT_CAP,
                workers: int = 1) -> OrbitSummary:
    """Closure of the canonical form under trigon moves, up to ``cap``
    members; ``exhausted`` is False on a capped, partial summary.  All
    members share crossing count and carrier genus."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    start_code = canonical_form(code)
    start = canonical_text(code)
    n0, g0 = start_code.n_crossings, carter_genus(start_code).genus_total

    members: list[str] = [start]
    parents: dict[str, tuple[str, MoveSite] | None] = {start: None}
    adjacency: dict[str, tuple[str, ...]] = {}
    frontier: list[tuple[str, GaussCode]] = [(start, start_code)]
    exhausted = True
    while frontier:
        codes = [c for _, c in frontier]
        all_sites = _expand_many(codes, enumerate_r3, workers)
        next_frontier: list[tuple[str, GaussCode]] = []
        for (text, cc), sites in zip(frontier, all_sites):
            nbrs: list[str] = []
            for site in sites:
                out = canonical_form(apply_move(cc, site, trusted=True))
                if out.n_crossings != n0 or carter_genus(out).genus_total != g0:
                    raise AssertionError("Type 3 move broke an invariant")
                out_text = canonical_text(out)
                nbrs.append(out_text)
                if out_text not in parents:
                    if len(members) >= cap:
                        exhausted = False
                        continue
                    parents[out_text] = (text, site)
                    members.append(out_text)
                    next_frontier.append((out_text, out))
            adjacency[text] = tuple(nbrs)
        frontier = next_frontier
    return OrbitSummary(start, tuple(members), adjacency, parents, exhausted)


# -- crossing-irreducibility ---------------------------------------------------


@dataclass(frozen=True)
class IrreducibilityResult:
    irreducible: bool
    orbit: OrbitSummary
    witness: tuple[str, MoveSite] | None   # orbit member with a decreasing site


def is_crossing_irreducible(code: GaussCode, cap: int = DEFAULT_ORBIT_CAP,
                            workers: int = 1) -> IrreducibilityResult:
    """Whether no Type-3-orbit member admits a decreasing move.

    Raises :class:`InconclusiveError` when the orbit does not exhaust under
    the cap, carrying the partial orbit.
    """
    orbit = type3_orbit(code, cap, workers)
    if not orbit.exhausted:
        raise InconclusiveError("orbit cap exceeded", partial=orbit)
    for text in orbit.members:
        dec = enumerate_decreasing(parse(text))
        if dec:
            return IrreducibilityResult(False, orbit, (text, dec[0]))
    return IrreducibilityResult(True, orbit, None)


# -- monotone reduction --------------------------------------------------------


@dataclass(frozen=True)
class ReductionTrace:
    """Move-by-move record of a monotone reduction.  Crossing count never
    increases along the steps and drops at every decreasing move; carrier
    genus never increases."""

    initial: str
    final: str
    steps: tuple[WitnessStep, ...]

    def to_json(self) -> dict:
        return {"initial": self.initial, "final": self.final,
                "steps": [s.to_json() for s in self.steps]}


@dataclass(frozen=True)
class ReductionResult:
    code: GaussCode          # canonical crossing-irreducible representative
    trace: ReductionTrace
    complete: bool           # False when an orbit cap interrupted reduction
    certificate: IrreducibilityResult | None


def reduce_monotone(code: GaussCode, cap: int = DEFAULT_ORBIT_CAP,
                    workers: int = 1) -> ReductionResult:
    """Monotone crossing reduction: repeatedly walk the Type 3 orbit to the
    first member (BFS order) with a decreasing site and apply that site,
    until crossing-irreducible.  Deterministic; both the crossing count and
    the carrier genus are non-increasing along the trace."""
    initial = canonical_text(code)
    current = canonical_form(code)
    steps: list[WitnessStep] = []
    while True:
        orbit = type3_orbit(current, cap, workers)
        if not orbit.exhausted:
            trace = ReductionTrace(initial, canonical_text(current), tuple(steps))
            return ReductionResult(current, trace, False, None)
        found: tuple[str, MoveSite] | None = None
        for text in orbit.members:
            dec = enumerate_decreasing(parse(text))
            if dec:
                found = (text, dec[0])
                break
        if found is None:
            trace = ReductionTrace(initial, canonical_text(current), tuple(steps))
            cert = IrreducibilityResult(True, orbit, None)
            return ReductionResult(current, trace, True, cert)
        member_text, site = found
        steps.extend(orbit.path_to(member_text))
        after = canonical_form(apply_move(parse(member_text), site, trusted=True))
        steps.append(_mk_step(member_text, site, canonical_text(after)))
        current = after


# -- scrambling ----------------------------------------------------------------


@dataclass(frozen=True)
class ScrambleResult:
    code: GaussCode
    steps_applied: int
    stalled: bool
    moves: tuple[MoveSite, ...] = field(default=())


def scramble(code: GaussCode, seed: int, steps: int,
             budget: int | None = None) -> ScrambleResult:
    """Apply ``steps`` seeded uniform random moves (decreasing, trigon and
    increasing within ``budget``).  Deterministic per seed; returns early
    with ``stalled`` when no move applies."""
    if budget is None:
        budget = code.n_crossings + 2
    rng = random.Random(seed)
    current = code
    applied: list[MoveSite] = []
    for _ in range(steps):
        sites = (enumerate_decreasing(current) + enumerate_r3(current)
                 + enumerate_increasing(current, budget))
        if not sites:
            return ScrambleResult(current, len(applied), True, tuple(applied))
        site = rng.choice(sites)
        current = apply_move(current, site, trusted=True)
        applied.append(site)
    return ScrambleResult(current, len(applied), False, tuple(applied))


# -- bounded equivalence -------------------------------------------------------


@dataclass(frozen=True)
class EquivalenceVerdict:
    status: str   # equivalent-with-witness | distinct-orbits-at-minimum |
                  # inconclusive-budget-exhausted
    witness: tuple[WitnessStep, ...] | None
    details: dict

    def to_json(self) -> dict:
        return {"status": self.status,
                "witness": None if self.witness is None
                else [s.to_json() for s in self.witness],
                "details": self.details}


def _reversed_steps(steps: Iterable[WitnessStep]) -> list[WitnessStep]:
    out = []
    for s in reversed(list(steps)):
        code = parse(s.state)
        out.append(WitnessStep(s.next, s.move, s.state, "reverse",
                               crossings_after=code.n_crossings,
                               genus_after=carter_genus(code).genus_total))
    return out


def _all_sites(code: GaussCode, budget: int) -> list[MoveSite]:
    return (enumerate_decreasing(code) + enumerate_r3(code)
            + enumerate_increasing(code, budget))


class _TunnelSearch:
    """Bidirectional search over trigon orbits of fixed crossing count.

    Edges are crossing-neutral tunnels: one increasing move within budget,
    trigon moves at the raised count, one decreasing move returning to the
    base count.  Orbits quotient out the free trigon moves, which keeps
    the frontier tiny compared to the raw move graph.
    """

    def __init__(self, base: int, budget: int, orbit_cap: int,
                 deadline: float | None, work_limit: int):
        self.base = base
        self.budget = budget
        self.orbit_cap = orbit_cap
        self.deadline = deadline
        self.work_limit = work_limit
        self.work = 0
        self._orbits: dict[str, OrbitSummary] = {}

    def orbit_at(self, text: str) -> tuple[str, OrbitSummary]:
        got = self._orbits.get(text)
        if got is None:
            got = type3_orbit(parse(text), self.orbit_cap)
            self.work += 1
            for member in got.members:
                self._orbits[member] = got
        return min(got.members), got

    def out_of_budget(self) -> bool:
        if self.work >= self.work_limit:
            return True
        return self.deadline is not None and time.monotonic() > self.deadline

    def tunnels(self, orbit: OrbitSummary):
        """Yield (entry member, up site, lifted text, inner member,
        down site, landing text) tunnel descriptors."""
        for member in orbit.members:
            code = parse(member)
            for up in enumerate_increasing(code, self.budget):
                if self.out_of_budget():
                    return
                lifted = canonical_text(apply_move(code, up, trusted=True))
                _, inner = self.orbit_at(lifted)
                for inner_member in inner.members:
                    inner_code = parse(inner_member)
                    for down in enumerate_decreasing(inner_code):
                        landed = apply_move(inner_code, down, trusted=True)
                        if landed.n_crossings != self.base:
                            continue
                        yield (member, up, lifted, inner_member, down,
                               canonical_text(landed))

    def relocate(self, frm: str, to: str) -> list[WitnessStep]:
        if frm == to:
            return []
        return type3_orbit(parse(frm), self.orbit_cap).path_to(to)

    def run(self, start_a: str, start_b: str):
        """Return (meet key, parents) or (None, parents)."""
        ka, _ = self.orbit_at(start_a)
        kb, _ = self.orbit_at(start_b)
        parents: list[dict] = [{ka: None}, {kb: None}]
        if ka == kb:
            return ka, parents
        queues = [deque([ka]), deque([kb])]
        while queues[0] or queues[1]:
            if self.out_of_budget():
                return None, parents
            side = 0 if queues[0] and (not queues[1]
                                       or len(queues[0]) <= len(queues[1])) else 1
            key = queues[side].popleft()
            orbit = self.orbit_at(key)[1]
            for rec in self.tunnels(orbit):
                landing = rec[-1]
                lk, _ = self.orbit_at(landing)
                if lk in parents[side]:
                    continue
                parents[side][lk] = (key,) + rec
                queues[side].append(lk)
                if lk in parents[1 - side]:
                    return lk, parents
        return None, parents

    def chain_steps(self, parents: dict, meet: str,
                    root_text: str) -> tuple[list[WitnessStep], str]:
        hops = []
        at = meet
        while parents[at] is not None:
            rec = parents[at]
            hops.append(rec)
            at = rec[0]
        hops.reverse()
        steps: list[WitnessStep] = []
        cursor = root_text
        for _, member, up, lifted, inner_member, down, landing in hops:
            steps.extend(self.relocate(cursor, member))
            steps.append(_mk_step(member, up, lifted))
            steps.extend(self.relocate(lifted, inner_member))
            steps.append(_mk_step(inner_member, down, landing))
            cursor = landing
        return steps, cursor


def equivalent_bounded(a: GaussCode, b: GaussCode, *,
                       budget: int | None = None,
                       node_limit: int = 4000,
                       time_limit: float | None = None,
                       orbit_cap: int = DEFAULT_ORBIT_CAP,
                       workers: int = 1) -> EquivalenceVerdict:
    """Decide equivalence within resource bounds.

    Three phases.  Monotone reduction on both codes: meeting orbits give a
    witness, and disjoint exhausted orbits certify distinctness when both
    inputs are machine-checked connected and non-parallel (outside that
    class disjoint minima prove nothing).  Then, for equal irreducible
    crossing counts, a bidirectional search over trigon orbits joined by
    crossing-neutral tunnels (one increasing move, trigon moves, one
    decreasing move) within the crossing ``budget``.  Finally a plain
    bidirectional breadth-first search over all moves.  Resource
    exhaustion is reported honestly as inconclusive; witnesses replay
    through full move validation.
    """
    from .classify import classify  # local import to avoid a module cycle

    lo = max(a.n_crossings, b.n_crossings)
    if budget is None:
        budget = lo + 2
    if budget < lo:
        raise ValueError("budget below current crossing count")
    deadline = None if time_limit is None else time.monotonic() + time_limit
    ca, cb = canonical_text(a), canonical_text(b)
    details: dict = {"budget": budget, "node_limit": node_limit}

    if ca == cb:
        return EquivalenceVerdict("equivalent-with-witness", (), details)

    red_a = reduce_monotone(a, orbit_cap, workers)
    red_b = reduce_monotone(b, orbit_cap, workers)
    if red_a.complete and red_b.complete:
        orbit_a = red_a.certificate.orbit
        fin_a, fin_b = canonical_text(red_a.code), canonical_text(red_b.code)
        if fin_b in orbit_a.member_set:
            witness = (list(red_a.trace.steps)
                       + orbit_a.path_to(fin_b)
                       + _reversed_steps(red_b.trace.steps))
            details["via"] = "monotone reduction to a common orbit"
            return EquivalenceVerdict("equivalent-with-witness",
                                      tuple(witness), details)
        rep_a = classify(red_a.code, orbit_cap=orbit_cap)
        rep_b = classify(red_b.code, orbit_cap=orbit_cap)
        hypotheses = (rep_a.connected_class and rep_b.connected_class
                      and rep_a.parallel_status == "none-detected"
                      and rep_b.parallel_status == "none-detected")
        details["reduced"] = [fin_a, fin_b]
        details["orbit_sizes"] = [len(orbit_a.members),
                                  len(red_b.certificate.orbit.members)]
        details["hypotheses_checked"] = hypotheses
        if hypotheses:
            details["caveat"] = ("non-parallelism is heuristic: "
                                 "certification assumes no undetected parallel pair")
            return EquivalenceVerdict("distinct-orbits-at-minimum", None, details)

        # Same irreducible crossing count but distinct orbits and failed
        # hypotheses: look for a crossing-neutral tunnel path.
        if (red_a.code.n_crossings == red_b.code.n_crossings
                and budget >= red_a.code.n_crossings + 1):
            tun = _TunnelSearch(red_a.code.n_crossings, budget, orbit_cap,
                                deadline, node_limit)
            meet, parents = tun.run(fin_a, fin_b)
            details["tunnel_orbits_explored"] = tun.work
            if meet is not None:
                fwd, end_fwd = tun.chain_steps(parents[0], meet, fin_a)
                back, end_back = tun.chain_steps(parents[1], meet, fin_b)
                witness = (list(red_a.trace.steps) + fwd
                           + tun.relocate(end_fwd, end_back)
                           + _reversed_steps(back)
                           + _reversed_steps(red_b.trace.steps))
                details["via"] = "tunnel search over trigon orbits"
                details["peak_crossings"] = max(
                    (parse(s.state).n_crossings for s in witness),
                    default=red_a.code.n_crossings)
                return EquivalenceVerdict("equivalent-with-witness",
                                          tuple(witness), details)

    # Bidirectional BFS in lockstep rounds (symmetric in (a, b)).
    sides = [{ca: None}, {cb: None}]   # node -> (parent, site) or None
    frontiers = [[canonical_form(a)], [canonical_form(b)]]
    expansions = details.get("tunnel_orbits_explored", 0)

    def expand(side: int) -> str | None:
        nonlocal expansions
        seen = sides[side]
        new_frontier: list[GaussCode] = []
        for cc in frontiers[side]:
            text = canonical_text(cc)
            for site in _all_sites(cc, budget):
                out = canonical_form(apply_move(cc, site, trusted=True))
                out_text = canonical_text(out)
                if out_text in seen:
                    continue
                seen[out_text] = (text, site)
                new_frontier.append(out)
                if out_text in sides[1 - side]:
                    frontiers[side] = new_frontier
                    return out_text
            expansions += 1
            if expansions >= node_limit:
                break
            if deadline is not None and time.monotonic() > deadline:
                break
        frontiers[side] = new_frontier
        return None

    def chain(side: int, node: str) -> list[WitnessStep]:
        steps: list[tuple[str, MoveSite, str]] = []
        at = node
        while sides[side][at] is not None:
            prev, site = sides[side][at]
            steps.append((prev, site, at))
            at = prev
        steps.reverse()
        return [_mk_step(s, m, t) for s, m, t in steps]

    while frontiers[0] and frontiers[1]:
        if expansions >= node_limit or (
                deadline is not None and time.monotonic() > deadline):
            details["expansions"] = expansions
            return EquivalenceVerdict("inconclusive-budget-exhausted", None, details)
        for side in (0, 1):
            meet = expand(side)
            if meet is not None:
                fwd = chain(0, meet)
                back = chain(1, meet)
                witness = fwd + [
                    WitnessStep(s.next, s.move, s.state, "reverse",
                                crossings_after=parse(s.state).n_crossings,
                                genus_after=carter_genus(parse(s.state)).genus_total)
                    for s in reversed(back)]
                details["expansions"] = expansions
                details["via"] = "bidirectional search"
                return EquivalenceVerdict("equivalent-with-witness",
                                          tuple(witness), details)
    details["expansions"] = expansions
    return EquivalenceVerdict("inconclusive-budget-exhausted", None, details)
