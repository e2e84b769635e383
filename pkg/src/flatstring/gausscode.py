"""
Signed multi-component Gauss codes for curve diagrams on oriented surfaces.

A diagram of n oriented loops on a closed oriented surface is recorded, up
to isotopy and handle (de)stabilization, by its Gauss code: one cyclic word
per loop listing the double points ("crossings") in traversal order, plus
one sign per crossing.

Sign convention.  Every crossing is passed exactly twice.  Order the two
passages by canonical traversal order (component index, then position in
the word).  The sign is ``+`` when the ordered pair of tangent directions
(direction at the first passage, direction at the second passage) is
positively oriented on the surface, ``-`` otherwise.

Because the sign is relative to traversal order, rotating a cyclic word can
change which passage comes first and therefore which sign character the
same geometric crossing serializes with.  Internally each passage stores
which side of the orientation pair it is (``is_source``), so rotations,
component permutations and moves are sign-safe by construction; the
serialized sign is recomputed from traversal order on output.

Text grammar (bit-exact on output)::

    file       := entry (newline entry)*        # '#' starts a comment
    entry      := [name ':'] codestring
    codestring := component (' / ' component)*
    component  := '()' | passage (' ' passage)*
    passage    := label sign
    label      := [a-z0-9_]+
    sign       := '+' | '-'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple


LABEL_RE = re.compile(r"[a-z0-9_]+\Z")
_PASSAGE_RE = re.compile(r"([a-z0-9_]+)([+-])\Z")


class FlatstringError(Exception):
    """Base class for all errors raised by this package."""


class CodeSyntaxError(FlatstringError):
    """Raised when a code string does not conform to the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at column {position})")
        self.position = position


class ValidationError(FlatstringError):
    """Raised when a structurally parsed code violates an invariant."""


class Passage(NamedTuple):
    """One traversal of a crossing.  ``is_source`` marks the passage whose
    direction comes first in the positively oriented direction pair."""

    label: str
    is_source: bool


class Crossing(NamedTuple):
    """A double point with its serialized sign (+1 or -1)."""

    label: str
    sign: int


Component = tuple  # cyclic word of Passage; () is a crossing-free loop


@dataclass(frozen=True)
class GaussCode:
    """A virtual n-string: ordered components, each a cyclic passage word.

    Instances are immutable values; all operations in this package are pure
    functions over them.  Equality is structural (component order, word
    rotation and passage roles all count); use :func:`canonical_form` to
    compare strings up to relabeling, rotation and component reordering.
    """

    components: tuple[tuple[Passage, ...], ...]

    def __post_init__(self) -> None:
        if not isinstance(self.components, tuple) or len(self.components) < 1:
            raise ValidationError("a code needs at least one component")
        seen: dict[str, list[Passage]] = {}
        for comp in self.components:
            for p in comp:
                if not LABEL_RE.match(p.label):
                    raise ValidationError(f"bad label {p.label!r}")
                seen.setdefault(p.label, []).append(p)
        for label, ps in seen.items():
            if len(ps) != 2:
                raise ValidationError(
                    f"label {label!r} appears {len(ps)} time(s), expected 2")
            if ps[0].is_source == ps[1].is_source:
                raise ValidationError(
                    f"label {label!r} has inconsistent passage roles")

    # -- basic queries ----------------------------------------------------

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def n_crossings(self) -> int:
        return sum(len(c) for c in self.components) // 2

    def passages(self) -> Iterator[tuple[int, int, Passage]]:
        """Yield (component index, position, passage) in traversal order."""
        for ci, comp in enumerate(self.components):
            for pi, p in enumerate(comp):
                yield ci, pi, p

    @property
    def crossings(self) -> dict[str, Crossing]:
        """Map label -> crossing with its traversal-order sign."""
        out: dict[str, Crossing] = {}
        for _, _, p in self.passages():
            if p.label not in out:
                out[p.label] = Crossing(p.label, +1 if p.is_source else -1)
        return out

    def occurrences(self, label: str) -> tuple[tuple[int, int], tuple[int, int]]:
        """The two (component, position) slots of a label, traversal order."""
        hits = [(ci, pi) for ci, pi, p in self.passages() if p.label == label]
        if len(hits) != 2:
            raise KeyError(label)
        return hits[0], hits[1]


# -- parsing and serialization --------------------------------------------


def parse(text: str) -> GaussCode:
    """Parse a single codestring.  Raises :class:`CodeSyntaxError` for
    grammar violations and :class:`ValidationError` for semantic ones
    (label count, sign mismatch between the two passages of a label)."""
    body = text.strip()
    if not body:
        raise CodeSyntaxError("empty code string", 0)
    raw_components = [c.strip() for c in body.split("/")]
    words: list[list[tuple[str, str]]] = []
    cursor = 0
    for chunk in raw_components:
        pos = text.find(chunk, cursor)
        cursor = pos + len(chunk) if pos >= 0 else cursor
        if chunk == "()":
            words.append([])
            continue
        if not chunk:
            raise CodeSyntaxError("empty component (write '()')", max(pos, 0))
        word: list[tuple[str, str]] = []
        for tok in chunk.split():
            m = _PASSAGE_RE.match(tok)
            if not m:
                at = text.find(tok, max(pos, 0))
                raise CodeSyntaxError(f"bad passage token {tok!r}", max(at, 0))
            word.append((m.group(1), m.group(2)))
        words.append(word)

    # Per-label sign consistency, then role assignment by traversal order.
    sign_at: dict[str, str] = {}
    count: dict[str, int] = {}
    for word in words:
        for label, sign in word:
            count[label] = count.get(label, 0) + 1
            if label in sign_at and sign_at[label] != sign:
                raise ValidationError(f"sign mismatch on label {label!r}")
            sign_at[label] = sign
    for label, n in count.items():
        if n != 2:
            raise ValidationError(
                f"label {label!r} appears {n} time(s), expected 2")

    seen_once: set[str] = set()
    components: list[tuple[Passage, ...]] = []
    for word in words:
        comp: list[Passage] = []
        for label, sign in word:
            first = label not in seen_once
            seen_once.add(label)
            # '+': the traversal-first passage is the source.
            comp.append(Passage(label, first == (sign == "+")))
        components.append(tuple(comp))
    return GaussCode(tuple(components))


def serialize(code: GaussCode) -> str:
    """Render a code in the text grammar.  Inverse of :func:`parse`."""
    signs = {c.label: "+" if c.sign > 0 else "-" for c in code.crossings.values()}
    parts = []
    for comp in code.components:
        if not comp:
            parts.append("()")
        else:
            parts.append(" ".join(p.label + signs[p.label] for p in comp))
    return " / ".join(parts)


def parse_file(text: str) -> list[tuple[str | None, GaussCode]]:
    """Parse a multi-entry file: ``[name ':'] codestring`` per line."""
    out: list[tuple[str | None, GaussCode]] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name: str | None = None
        if ":" in line:
            name, line = (s.strip() for s in line.split(":", 1))
        out.append((name, parse(line)))
    return out


# -- elementary symmetries -------------------------------------------------


def rotate(code: GaussCode, component: int, shift: int) -> GaussCode:
    """Rotate one cyclic word.  Passage roles travel with the passages, so
    this is the geometric basepoint change (serialized signs may flip)."""
    comps = list(code.components)
    word = comps[component]
    if word:
        k = shift % len(word)
        comps[component] = word[k:] + word[:k]
    return GaussCode(tuple(comps))


def permute(code: GaussCode, order: Iterable[int]) -> GaussCode:
    """Reorder components by the given permutation of indices."""
    order = tuple(order)
    if sorted(order) != list(range(code.n_components)):
        raise ValueError("not a permutation of component indices")
    return GaussCode(tuple(code.components[i] for i in order))


def relabel(code: GaussCode, mapping: dict[str, str]) -> GaussCode:
    """Rename crossing labels via an injective mapping."""
    values = list(mapping.values())
    if len(set(values)) != len(values):
        raise ValueError("relabeling is not injective")
    return GaussCode(tuple(
        tuple(Passage(mapping.get(p.label, p.label), p.is_source) for p in comp)
        for comp in code.components))


def mirror(code: GaussCode) -> GaussCode:
    """Reverse the surface orientation: every crossing sign negates."""
    return GaussCode(tuple(
        tuple(Passage(p.label, not p.is_source) for p in comp)
        for comp in code.components))


# -- canonical form ---------------------------------------------------------

# A layout is a component order plus one rotation per component.  Its key is
# the flat stream of (first-occurrence rank, sign) tokens with a separator
# after each component; the separator compares below every passage token, so
# empty and shorter components sort first.  The canonical form realizes the
# minimal key; crossings are then relabeled 1..k by first occurrence.

_SEP = (-1, -1)


def _component_tokens(word: tuple[Passage, ...], start: int,
                      ranks: dict[str, tuple[int, int]]) -> list[tuple[int, int]]:
    """Tokens for one rotated component, extending ranks in place."""
    toks: list[tuple[int, int]] = []
    n = len(word)
    for k in range(n):
        p = word[(start + k) % n]
        got = ranks.get(p.label)
        if got is None:
            got = (len(ranks), 0 if p.is_source else 1)
            ranks[p.label] = got
        toks.append(got)
    toks.append(_SEP)
    return toks


@lru_cache(maxsize=200_000)
def canonical_form(code: GaussCode) -> GaussCode:
    """Normal form over component permutations x per-component rotations,
    crossings relabeled 1..k by first occurrence; idempotent, and constant
    on the orbit of (rotation, relabeling, component permutation)."""
    comps = code.components
    n = len(comps)
    best: list[tuple[int, int]] | None = None

    def extend(prefix: list[tuple[int, int]], ranks: dict[str, tuple[int, int]],
               used: int) -> None:
        nonlocal best
        if used == (1 << n) - 1:
            if best is None or prefix < best:
                best = list(prefix)
            return
        for i in range(n):
            if used & (1 << i):
                continue
            word = comps[i]
            for start in range(len(word)) if word else (0,):
                sub = dict(ranks)
                cand = prefix + _component_tokens(word, start, sub)
                if best is not None and cand > best[:len(cand)]:
                    continue
                extend(cand, sub, used | (1 << i))

    extend([], {}, 0)
    assert best is not None

    # Rebuild the code from the winning token stream.
    components: list[tuple[Passage, ...]] = []
    word_acc: list[Passage] = []
    seen: set[int] = set()
    for rank, sign in best:
        if (rank, sign) == _SEP:
            components.append(tuple(word_acc))
            word_acc = []
            continue
        label = str(rank + 1)
        if rank not in seen:
            seen.add(rank)
            word_acc.append(Passage(label, sign == 0))
        else:
            word_acc.append(Passage(label, sign != 0))
    return GaussCode(tuple(components))


def canonical_text(code: GaussCode) -> str:
    """Serialized canonical form; equal exactly for codes that agree up to
    rotation, relabeling and component reordering."""
    return serialize(canonical_form(code))
