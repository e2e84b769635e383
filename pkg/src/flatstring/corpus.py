"""
Shipped code library and its self-checking expectations.

Corpus files use the code grammar plus annotation lines:

    # comment
    name: a+ b- / a+ b-
    expect: genus=0 surface_components=1 crossings=2
    expect: irreducible=false
    note: free-text provenance, ignored by the checker

``expect:`` keys are re-derived by :func:`check_entries`; a mismatch is a
build failure.  Supported keys: crossings, genus, surface_components,
connected, faces, trigons, decreasing, irreducible, orbit_size,
classify_connected, parallel, and the relational canonical_equals=NAME /
canonical_differs=NAME against another entry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .classify import classify
from .gausscode import GaussCode, canonical_text, parse
from .moves import enumerate_decreasing, enumerate_r3
from .search import DEFAULT_ORBIT_CAP, is_crossing_irreducible
from .surface import carter_genus, trace_faces


@dataclass
class CorpusEntry:
    name: str
    text: str
    code: GaussCode
    expect: dict[str, str] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class CheckResult:
    entry: str
    key: str
    expected: str
    actual: str

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


def parse_corpus(text: str) -> list[CorpusEntry]:
    entries: list[CorpusEntry] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if ":" not in line:
            raise ValueError(f"line {lineno}: corpus entries need 'name: code'")
        head, body = (s.strip() for s in line.split(":", 1))
        if head == "expect":
            if not entries:
                raise ValueError(f"line {lineno}: expect before any entry")
            for pair in body.split():
                key, _, value = pair.partition("=")
                entries[-1].expect[key] = value
        elif head == "note":
            if not entries:
                raise ValueError(f"line {lineno}: note before any entry")
            entries[-1].notes.append(body)
        else:
            entries.append(CorpusEntry(head, body, parse(body)))
    return entries


def _bool(value: bool) -> str:
    return "true" if value else "false"


def derive(entry: CorpusEntry, key: str, by_name: dict[str, CorpusEntry],
           orbit_cap: int = DEFAULT_ORBIT_CAP) -> str:
    code = entry.code
    if key == "crossings":
        return str(code.n_crossings)
    if key == "genus":
        return str(carter_genus(code).genus_total)
    if key == "surface_components":
        return str(carter_genus(code).component_count)
    if key == "connected":
        return _bool(carter_genus(code).connected)
    if key == "faces":
        return str(trace_faces(code).n_faces)
    if key == "face_degrees":
        degs = sorted(f.degree for f in trace_faces(code).faces)
        return ",".join(str(d) for d in degs)
    if key == "trigons":
        return str(len(enumerate_r3(code)))
    if key == "decreasing":
        return str(len(enumerate_decreasing(code)))
    if key == "irreducible":
        return _bool(is_crossing_irreducible(code, orbit_cap).irreducible)
    if key == "orbit_size":
        res = is_crossing_irreducible(code, orbit_cap)
        return str(len(res.orbit.members))
    if key == "classify_connected":
        return _bool(classify(code, orbit_cap=orbit_cap).connected_class)
    if key == "parallel":
        return classify(code, orbit_cap=orbit_cap).parallel_status
    raise KeyError(f"unknown expectation key {key!r}")


def check_entries(entries: list[CorpusEntry],
                  orbit_cap: int = DEFAULT_ORBIT_CAP) -> list[CheckResult]:
    by_name = {e.name: e for e in entries}
    results: list[CheckResult] = []
    for entry in entries:
        for key, expected in sorted(entry.expect.items()):
            if key in ("canonical_equals", "canonical_differs"):
                same = (canonical_text(entry.code)
                        == canonical_text(by_name[expected].code))
                holds = same if key == "canonical_equals" else not same
                results.append(CheckResult(entry.name, f"{key}={expected}",
                                           "true", _bool(holds)))
            else:
                actual = derive(entry, key, by_name, orbit_cap)
                results.append(CheckResult(entry.name, key, expected, actual))
    return results


def _load(filename: str) -> list[CorpusEntry]:
    text = resources.files("flatstring.data").joinpath(filename).read_text()
    return parse_corpus(text)


def load_corpus() -> list[CorpusEntry]:
    """The main shipped library, including the two 3-string diagrams."""
    return _load("corpus.txt")


def load_genus_table() -> list[CorpusEntry]:
    """Hand-traced face/genus oracle for every class with <= 2 crossings."""
    return _load("genus_table.txt")
