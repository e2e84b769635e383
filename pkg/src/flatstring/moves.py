"""
Flat Reidemeister moves on Gauss codes, detected on the carrier surface.

Detection is face-based: a decreasing Type 1 site is a degree-1 face
(monogon), a decreasing Type 2 site is a degree-2 face whose two corners
are distinct crossings (bigon), and a Type 3 site is a degree-3 face with
three distinct corners (trigon).  Face-based detection is exactly "local
move on the carrier surface", which is what keeps genus monotone under
decreasing moves and invariant under Type 3 moves.

Word surgeries:

* Type 1 decrease: delete the two adjacent passages of the monogon's
  crossing.
* Type 2 decrease: delete all four passages of the bigon's two crossings.
* Type 3: each trigon side joins two consecutive passages; swap the two
  passages of every side.  The three transpositions are pairwise disjoint
  and passage roles travel with the passages, so signs are conserved.
* Type 1 increase: insert a kink of either handedness into any gap.
* Type 2 increase: push a strand across another strand bounding a common
  face (finger move).  For arcs in different connected pieces of the
  carrier every side pairing is reachable after a stabilization, so all
  four pairings are enumerated; within one piece only side pairs that
  actually share a face are offered, which keeps bounded search finite.

Face walks produced by the surface module keep the face on the right of
the walk direction; a side traversed via its "tail" end runs along the
strand, via its "head" end against it.  The finger push from side A across
side B then inserts, writing x for the crossing the moving strand meets
first and y for the second:

* along the moving strand: always ``x y``;
* along the crossed strand: ``x y`` when the two sides disagree
  (tail/head), ``y x`` when they agree;
* x's source passage is on the crossed strand iff side B is a tail;
  y's source is then on the other strand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .gausscode import GaussCode, Passage, ValidationError
from .surface import diagram_components, trace_faces

R1_DECREASE = "r1-decrease"
R2_DECREASE = "r2-decrease"
R3 = "r3"
R1_INCREASE = "r1-increase"
R2_INCREASE = "r2-increase"

_DELTA = {R1_DECREASE: -1, R2_DECREASE: -2, R3: 0,
          R1_INCREASE: +1, R2_INCREASE: +2}


class StaleSiteError(ValidationError):
    """The move site does not belong to the given code."""


@dataclass(frozen=True, order=True)
class MoveSite:
    """A located applicable move.

    data layout by kind:
      r1-decrease  (label, (component, position))        monogon loop arc
      r2-decrease  (label_a, label_b, side arcs)         bigon
      r3           ((c,p), (c,p), (c,p))                 the three side arcs
      r1-increase  ((component, gap), sign_char)
      r2-increase  ((c., gap_a), (c., gap_b), variant)   ordered strand pair
    """

    kind: str
    data: tuple

    @property
    def delta(self) -> int:
        return _DELTA[self.kind]

    def describe(self) -> dict:
        return {"kind": self.kind, "delta": self.delta, "data": _plain(self.data)}


def _plain(obj):
    if isinstance(obj, tuple):
        return [_plain(x) for x in obj]
    return obj


@dataclass(frozen=True)
class Move:
    """A move together with its crossing-count delta, for traces."""

    site: MoveSite

    @property
    def delta(self) -> int:
        return self.site.delta


# -- helpers ----------------------------------------------------------------


def _fresh_labels(code: GaussCode, count: int) -> list[str]:
    used = set(code.crossings)
    out: list[str] = []
    i = 0
    while len(out) < count:
        lab = f"x{i}"
        if lab not in used:
            out.append(lab)
        i += 1
    return out


def _words(code: GaussCode) -> list[list[Passage]]:
    return [list(c) for c in code.components]


def _build(words: Iterable[Iterable[Passage]]) -> GaussCode:
    return GaussCode(tuple(tuple(w) for w in words))


def _delete_labels(code: GaussCode, labels: set[str]) -> GaussCode:
    return _build([p for p in w if p.label not in labels]
                  for w in code.components)


def _group_index(code: GaussCode) -> dict[int, int]:
    return {ci: gi
            for gi, grp in enumerate(diagram_components(code))
            for ci in grp}


# -- decreasing moves --------------------------------------------------------


def enumerate_decreasing(code: GaussCode) -> list[MoveSite]:
    """All monogon and bigon sites; empty iff no decreasing move exists."""
    sites: list[MoveSite] = []
    seen_r1: set[str] = set()
    seen_r2: set[frozenset[str]] = set()
    for face in trace_faces(code).faces:
        if face.degree == 1:
            side = face.walk[0]
            label = face.corners[0]
            if label not in seen_r1:
                seen_r1.add(label)
                sites.append(MoveSite(R1_DECREASE,
                                      (label, (side.component, side.position))))
        elif face.degree == 2:
            a, b = face.corners
            pair = frozenset((a, b))
            if a != b and pair not in seen_r2:
                seen_r2.add(pair)
                arcs = tuple(sorted((s.component, s.position) for s in face.walk))
                sites.append(MoveSite(R2_DECREASE, (min(a, b), max(a, b), arcs)))
    sites.sort()
    return sites


def enumerate_r3(code: GaussCode) -> list[MoveSite]:
    """All trigon sites: degree-3 faces with three distinct crossings."""
    sites: list[MoveSite] = []
    for face in trace_faces(code).faces:
        if face.degree != 3 or len(set(face.corners)) != 3:
            continue
        arcs = {(s.component, s.position) for s in face.walk}
        if len(arcs) != 3:
            continue
        sites.append(MoveSite(R3, tuple(sorted(arcs))))
    sites.sort()
    return sites


def _apply_r1_decrease(code: GaussCode, site: MoveSite) -> GaussCode:
    label = site.data[0]
    return _delete_labels(code, {label})


def _apply_r2_decrease(code: GaussCode, site: MoveSite) -> GaussCode:
    return _delete_labels(code, {site.data[0], site.data[1]})


def _apply_r3(code: GaussCode, site: MoveSite) -> GaussCode:
    words = _words(code)
    touched: set[tuple[int, int]] = set()
    for ci, pi in site.data:
        L = len(words[ci])
        qi = (pi + 1) % L
        if (ci, pi) in touched or (ci, qi) in touched:
            raise StaleSiteError("overlapping trigon sides")
        touched.update({(ci, pi), (ci, qi)})
        words[ci][pi], words[ci][qi] = words[ci][qi], words[ci][pi]
    return _build(words)


# -- increasing moves --------------------------------------------------------


def _gaps(code: GaussCode) -> list[tuple[int, int]]:
    """All insertion gaps: gap g of a component sits before position g;
    an empty component has the single gap 0."""
    out = []
    for ci, comp in enumerate(code.components):
        for g in range(max(len(comp), 1)):
            out.append((ci, g))
    return out


def _insert(words: list[list[Passage]], ci: int, gap: int,
            block: list[Passage]) -> None:
    words[ci][gap:gap] = block


def enumerate_r1_increase(code: GaussCode, budget: int) -> list[MoveSite]:
    if code.n_crossings + 1 > budget:
        return []
    return [MoveSite(R1_INCREASE, (gap, sign))
            for gap in _gaps(code) for sign in ("+", "-")]


def _apply_r1_increase(code: GaussCode, site: MoveSite) -> GaussCode:
    (ci, gap), sign = site.data
    (lab,) = _fresh_labels(code, 1)
    block = [Passage(lab, True), Passage(lab, False)]
    if sign == "-":
        block.reverse()
    words = _words(code)
    _insert(words, ci, gap, block)
    return _build(words)


# A finger push is named by the ordered pair of strand gaps plus a variant.
# Variants 0..3 encode the (side of mover, side of crossed) choice as bits
# (0 = tail, 1 = head); variants >= _RAW_BASE index the raw candidate list
# used for pushes involving crossing-free loops or a strand and itself.
_RAW_BASE = 10


def _edge_of_gap(code: GaussCode, ci: int, gap: int) -> tuple[int, int] | None:
    L = len(code.components[ci])
    if L == 0:
        return None
    return (ci, (gap - 1) % L)


def _push_blocks(sides: int, x: str, y: str):
    """Insertion blocks for a finger push with given side bits.

    Returns (mover block, crossed block).  Bit 1 of ``sides`` is the side
    of the crossed strand (1 = head); bit 0 the side of the mover.
    """
    mover_side, crossed_side = sides & 1, (sides >> 1) & 1
    x_src_on_crossed = crossed_side == 0
    mover = [Passage(x, not x_src_on_crossed), Passage(y, x_src_on_crossed)]
    crossed = [Passage(x, x_src_on_crossed), Passage(y, not x_src_on_crossed)]
    if mover_side == crossed_side:
        crossed.reverse()
    return mover, crossed


def _apply_push(code: GaussCode, ga: tuple[int, int], gb: tuple[int, int],
                sides: int) -> GaussCode:
    x, y = _fresh_labels(code, 2)
    mover, crossed = _push_blocks(sides, x, y)
    words = _words(code)
    (ca, a), (cb, b) = ga, gb
    if ca == cb:
        first, second = ((ca, a, mover), (cb, b, crossed))
        if a < b:
            first, second = ((cb, b, crossed), (ca, a, mover))
        _insert(words, first[0], first[1], first[2])
        _insert(words, second[0], second[1], second[2])
    else:
        _insert(words, ca, a, mover)
        _insert(words, cb, b, crossed)
    return _build(words)


_SAME_GAP_SHAPES = ((0, 1, 0, 1), (0, 1, 1, 0), (0, 0, 1, 1))


def _raw_candidates(code: GaussCode, ga: tuple[int, int],
                    gb: tuple[int, int]) -> list[GaussCode]:
    """Candidate insertions checked by looking for the new bigon."""
    x, y = _fresh_labels(code, 2)
    out: list[GaussCode] = []
    if ga == gb:
        ci, gap = ga
        for shape in _SAME_GAP_SHAPES:
            for rx in (True, False):
                for ry in (True, False):
                    roles = {0: [rx, not rx], 1: [ry, not ry]}
                    block = []
                    for which in shape:
                        lab = x if which == 0 else y
                        block.append(Passage(lab, roles[which].pop(0)))
                    words = _words(code)
                    _insert(words, ci, gap, block)
                    out.append(_build(words))
    else:
        for order_b in ((x, y), (y, x)):
            for rx in (True, False):
                for ry in (True, False):
                    role = {x: [rx, not rx], y: [ry, not ry]}
                    block_a = [Passage(x, role[x].pop(0)),
                               Passage(y, role[y].pop(0))]
                    block_b = [Passage(l, role[l].pop(0)) for l in order_b]
                    words = _words(code)
                    (ca, a), (cb, b) = ga, gb
                    if ca == cb and a < b:
                        _insert(words, cb, b, block_b)
                        _insert(words, ca, a, block_a)
                    else:
                        _insert(words, ca, a, block_a)
                        if ca == cb:
                            b2 = b + 2 if b > a else b
                            _insert(words, cb, b2, block_b)
                        else:
                            _insert(words, cb, b, block_b)
                    out.append(_build(words))
    return out


def _has_new_bigon(code: GaussCode, x: str, y: str) -> bool:
    for face in trace_faces(code).faces:
        if face.degree == 2 and set(face.corners) == {x, y}:
            return True
    return False


def enumerate_r2_increase(code: GaussCode, budget: int) -> list[MoveSite]:
    if code.n_crossings + 2 > budget:
        return []
    group = _group_index(code)
    decomp = trace_faces(code)

    # side pairings per unordered edge pair sharing a face
    shared: dict[tuple, set[tuple[int, int]]] = {}
    for face in decomp.faces:
        sides = [((s.component, s.position), 0 if s.end == "tail" else 1)
                 for s in face.walk]
        for ea, sa in sides:
            for eb, sb in sides:
                if ea != eb:
                    shared.setdefault((ea, eb), set()).add((sa, sb))

    sites: list[MoveSite] = []
    gaps = _gaps(code)
    for ga in gaps:
        ea = _edge_of_gap(code, *ga)
        for gb in gaps:
            eb = _edge_of_gap(code, *gb)
            same_group = group[ga[0]] == group[gb[0]]
            if ea is not None and eb is not None and ea != eb:
                if same_group:
                    combos = shared.get((ea, eb), ())
                else:
                    combos = ((0, 0), (0, 1), (1, 0), (1, 1))
                for sa, sb in sorted(combos):
                    sites.append(MoveSite(R2_INCREASE, (ga, gb, sa | (sb << 1))))
            else:
                # crossing-free loop involved, or a strand pushed across
                # itself: keep candidates that actually create the bigon
                if ga == gb or not same_group:
                    x, y = _fresh_labels(code, 2)
                    for k, cand in enumerate(_raw_candidates(code, ga, gb)):
                        if _has_new_bigon(cand, x, y):
                            sites.append(MoveSite(
                                R2_INCREASE, (ga, gb, _RAW_BASE + k)))
    sites.sort()
    return sites


def _apply_r2_increase(code: GaussCode, site: MoveSite) -> GaussCode:
    ga, gb, variant = site.data
    if variant < _RAW_BASE:
        return _apply_push(code, ga, gb, variant)
    return _raw_candidates(code, ga, gb)[variant - _RAW_BASE]


def enumerate_increasing(code: GaussCode, budget: int) -> list[MoveSite]:
    """All crossing-adding sites whose result stays within ``budget``."""
    return enumerate_r1_increase(code, budget) + enumerate_r2_increase(code, budget)


# -- dispatch ----------------------------------------------------------------

_APPLIERS = {
    R1_DECREASE: _apply_r1_decrease,
    R2_DECREASE: _apply_r2_decrease,
    R3: _apply_r3,
    R1_INCREASE: _apply_r1_increase,
    R2_INCREASE: _apply_r2_increase,
}


def apply_move(code: GaussCode, site: MoveSite, *, trusted: bool = False) -> GaussCode:
    """Apply a move site to a code.

    Unless ``trusted``, the site must come from the matching enumeration of
    this very code; anything else raises :class:`StaleSiteError`.
    """
    if not trusted:
        if site.kind in (R1_DECREASE, R2_DECREASE):
            fresh = enumerate_decreasing(code)
        elif site.kind == R3:
            fresh = enumerate_r3(code)
        else:
            fresh = enumerate_increasing(code, code.n_crossings + 2)
        if site not in fresh:
            raise StaleSiteError(f"site {site} is not applicable here")
    return _APPLIERS[site.kind](code, site)
