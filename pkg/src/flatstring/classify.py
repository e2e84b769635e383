"""
Connectedness and parallelism screening of reduced strings.

Connectedness of a string's class is read off a crossing-irreducible
representative: the class is connected exactly when that representative's
diagram is a single crossing-connected piece.  Parallelism of component
pairs is only ever screened heuristically: deciding whether two loops are
powers of parallel curves in general needs free-homotopy comparison in
surface groups, so the report distinguishes ``confirmed-parallel`` and
``suspect`` findings from ``none-detected``, and never claims
non-parallelism as a theorem.  Both checks run after reduction; for
connected strings the minimal representative is exactly the right place to
test parallelism, which is why the ordering is enforced here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gausscode import GaussCode, Passage, canonical_text
from .surface import diagram_components
from .search import DEFAULT_ORBIT_CAP, InconclusiveError, reduce_monotone

HEURISTIC_CAVEAT = (
    "parallelism screening is heuristic: confirmed-parallel findings are "
    "sound, but none-detected does not prove non-parallelism")


@dataclass(frozen=True)
class PairFlag:
    first: int
    second: int
    status: str        # "confirmed-parallel" or "suspect"
    reason: str


@dataclass(frozen=True)
class ClassReport:
    connected_class: bool
    parallel_status: str               # confirmed-parallel | suspect | none-detected
    parallel_pairs: tuple[PairFlag, ...]
    reduced_code: str
    caveats: tuple[str, ...]

    def to_json(self) -> dict:
        return {"connected_class": self.connected_class,
                "parallel_status": self.parallel_status,
                "parallel_pairs": [vars(p) for p in self.parallel_pairs],
                "reduced_code": self.reduced_code,
                "caveats": list(self.caveats)}


def _self_labels(code: GaussCode, ci: int) -> list[str]:
    inside = [p.label for p in code.components[ci]]
    return [lab for lab in dict.fromkeys(inside) if inside.count(lab) == 2]


def _subcode(code: GaussCode, ci: int) -> GaussCode:
    own = set(_self_labels(code, ci))
    return GaussCode((tuple(p for p in code.components[ci] if p.label in own),))


def _sign_multiset(code: GaussCode, ci: int) -> tuple[int, ...]:
    sub = _subcode(code, ci)
    return tuple(sorted(c.sign for c in sub.crossings.values()))


def _spiral_code(k: int) -> GaussCode:
    """The k-th power of an embedded loop, drawn as a spiral closing up
    across its own turns: nested word s_{k-1} .. s_1 s_1 .. s_{k-1} with
    every crossing's source on the closing arc."""
    labels = [f"s{i}" for i in range(1, k)]
    word = [Passage(lab, False) for lab in reversed(labels)]
    word += [Passage(lab, True) for lab in labels]
    return GaussCode((tuple(word),))


def _is_loop_power(sub: GaussCode) -> bool:
    """Whether a one-component subcode is the power pattern of a plain
    loop, tested by exact class comparison with the spiral family (both
    spiral handednesses canonicalize identically)."""
    k = sub.n_crossings + 1
    if k < 2:
        return False
    return canonical_text(sub) == canonical_text(_spiral_code(k))


def parallel_heuristic(code: GaussCode) -> tuple[PairFlag, ...]:
    """Screen component pairs of a crossing-irreducible code.

    confirmed-parallel: the pair shares no crossings, lies in one diagram
    piece or is a pair of crossing-free loops, and the self-crossing
    subcodes are equal or one is the spiral power pattern over the
    other's plain loop.  suspect: no shared crossings and equal
    self-sign multisets.
    """
    group = {ci: gi for gi, grp in enumerate(diagram_components(code))
             for ci in grp}
    flags: list[PairFlag] = []
    n = code.n_components
    for i in range(n):
        for j in range(i + 1, n):
            labels_i = {p.label for p in code.components[i]}
            labels_j = {p.label for p in code.components[j]}
            if labels_i & labels_j:
                continue
            both_free = not code.components[i] and not code.components[j]
            located = group[i] == group[j] or both_free
            sub_i, sub_j = _subcode(code, i), _subcode(code, j)
            same_shape = canonical_text(sub_i) == canonical_text(sub_j)
            powerish = ((sub_i.n_crossings == 0 and _is_loop_power(sub_j))
                        or (sub_j.n_crossings == 0 and _is_loop_power(sub_i)))
            if located and (same_shape or powerish):
                why = "equal subcodes" if same_shape else "power pattern over a plain loop"
                flags.append(PairFlag(i, j, "confirmed-parallel", why))
            elif _sign_multiset(code, i) == _sign_multiset(code, j):
                flags.append(PairFlag(i, j, "suspect",
                                      "no mutual crossings, equal self-sign multisets"))
    return tuple(flags)


def classify(code: GaussCode, *, orbit_cap: int = DEFAULT_ORBIT_CAP,
             workers: int = 1) -> ClassReport:
    """Reduce, then report class connectedness and the parallelism screen.

    Raises :class:`InconclusiveError` when the reduction cannot finish
    under the orbit cap.
    """
    red = reduce_monotone(code, orbit_cap, workers)
    if not red.complete:
        raise InconclusiveError("reduction interrupted by orbit cap",
                                partial=red)
    reduced = red.code
    connected = len(diagram_components(reduced)) == 1
    pairs = parallel_heuristic(reduced)
    if any(p.status == "confirmed-parallel" for p in pairs):
        status = "confirmed-parallel"
    elif pairs:
        status = "suspect"
    else:
        status = "none-detected"
    return ClassReport(connected, status, pairs, canonical_text(reduced),
                       (HEURISTIC_CAVEAT,))
