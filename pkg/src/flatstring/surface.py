"""
Carrier surface of a Gauss code via ribbon-graph face tracing.

Thicken the underlying 4-valent graph (one vertex per crossing, one edge
per arc between consecutive passages) to a ribbon graph using the rotation
system determined by crossing signs, and cap every boundary circle with a
disk.  The result is the minimal-genus closed oriented surface carrying the
diagram with all complementary faces disks; handle removal is therefore
implicit and never represented.

Rotation system.  At a crossing whose positively-oriented direction pair is
(source passage, target passage), the counterclockwise order of the four
incident edge-ends is::

    out(source), out(target), in(source), in(target)

Faces are the orbits of next = sigma o iota on edge-ends, where iota swaps
the two ends of an edge and sigma is the counterclockwise rotation.  Genus
per connected piece comes from Euler's formula chi = V - E + F = 2 - 2g.

A crossing-free component contributes a standalone sphere: (V, E, F) =
(0, 0, 2), genus 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .gausscode import GaussCode


class EdgeSide(NamedTuple):
    """One side of a diagram arc, named by the arc's start slot and end."""

    component: int
    position: int      # arc runs passage (c, position) -> (c, position+1)
    end: str           # "tail" or "head"


class Face(NamedTuple):
    """A disk face: its boundary walk of edge sides and corner crossings."""

    walk: tuple[EdgeSide, ...]
    corners: tuple[str, ...]

    @property
    def degree(self) -> int:
        return len(self.walk)


class FaceGroup(NamedTuple):
    """Cell-structure counts for one connected diagram piece."""

    members: tuple[int, ...]   # link-component indices in this piece
    vertices: int
    edges: int
    faces: tuple[Face, ...]
    euler: int
    genus: int


@dataclass(frozen=True)
class FaceDecomposition:
    faces: tuple[Face, ...]
    groups: tuple[FaceGroup, ...]
    vertices: int
    edges: int

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def degree_sum(self) -> int:
        return sum(f.degree for f in self.faces)


class SurfaceReport(NamedTuple):
    genus_total: int
    genus_per_component: tuple[int, ...]
    component_count: int
    connected: bool


def diagram_components(code: GaussCode) -> tuple[tuple[int, ...], ...]:
    """Partition link components into crossing-connected groups.

    Two loops land in one group when they are joined by a chain of shared
    crossing labels; crossing-free loops are singletons.
    """
    n = code.n_components
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    first_comp: dict[str, int] = {}
    for ci, _, p in code.passages():
        if p.label in first_comp:
            a, b = find(first_comp[p.label]), find(ci)
            if a != b:
                parent[max(a, b)] = min(a, b)
        else:
            first_comp[p.label] = ci

    groups: dict[int, list[int]] = {}
    for ci in range(n):
        groups.setdefault(find(ci), []).append(ci)
    return tuple(tuple(sorted(g)) for _, g in sorted(groups.items()))


def _half_edges(code: GaussCode):
    """Index arcs and edge-ends.  Arc j of a component of length L runs
    from passage j to passage (j+1) % L; end 0 is the tail, 1 the head.
    Returns (edge list, sigma permutation, edge count)."""
    edges: list[tuple[int, int]] = []       # flat edge id -> (component, position)
    edge_id: dict[tuple[int, int], int] = {}
    for ci, comp in enumerate(code.components):
        for pi in range(len(comp)):
            edge_id[(ci, pi)] = len(edges)
            edges.append((ci, pi))

    def out_he(ci: int, pi: int) -> int:
        return 2 * edge_id[(ci, pi)]

    def in_he(ci: int, pi: int) -> int:
        L = len(code.components[ci])
        return 2 * edge_id[(ci, (pi - 1) % L)] + 1

    slots: dict[str, dict[bool, tuple[int, int]]] = {}
    for ci, pi, p in code.passages():
        slots.setdefault(p.label, {})[p.is_source] = (ci, pi)

    sigma = [0] * (2 * len(edges))
    for label, by_role in slots.items():
        s, t = by_role[True], by_role[False]
        cycle = [out_he(*s), out_he(*t), in_he(*s), in_he(*t)]
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            sigma[a] = b
    return edges, sigma, len(edges)


@lru_cache(maxsize=200_000)
def trace_faces(code: GaussCode) -> FaceDecomposition:
    """Trace all disk faces of the capped ribbon graph.

    Every edge side lies in exactly one face walk, so the face degrees sum
    to 2E.  Crossing-free components contribute two degree-0 faces each.
    """
    edges, sigma, n_edges = _half_edges(code)
    faces: list[Face] = []
    face_of_edge: dict[int, list[int]] = {}
    visited = [False] * (2 * n_edges)
    for start in range(2 * n_edges):
        if visited[start]:
            continue
        walk: list[EdgeSide] = []
        corners: list[str] = []
        he = start
        while not visited[he]:
            visited[he] = True
            e, end = divmod(he, 2)
            ci, pi = edges[e]
            walk.append(EdgeSide(ci, pi, "head" if end else "tail"))
            # corner at the crossing where the far end of this arc lands
            L = len(code.components[ci])
            far = (ci, (pi + 1) % L) if end == 0 else (ci, pi)
            corners.append(code.components[far[0]][far[1]].label)
            face_of_edge.setdefault(e, []).append(len(faces))
            he = sigma[he ^ 1]
        faces.append(Face(tuple(walk), tuple(corners)))

    # Group faces by diagram component.
    partition = diagram_components(code)
    group_of_comp = {ci: gi for gi, grp in enumerate(partition) for ci in grp}
    grouped: list[list[Face]] = [[] for _ in partition]
    for face in faces:
        grouped[group_of_comp[face.walk[0].component]].append(face)

    all_faces: list[Face] = []
    groups: list[FaceGroup] = []
    for gi, grp in enumerate(partition):
        v = len({p.label for ci in grp for p in code.components[ci]})
        e = sum(len(code.components[ci]) for ci in grp)
        fs = grouped[gi]
        if e == 0:
            # crossing-free loop on its own sphere: two capping disks
            fs = [Face((), ()), Face((), ())]
        chi = v - e + len(fs)
        genus = (2 - chi) // 2
        groups.append(FaceGroup(grp, v, e, tuple(fs), chi, genus))
        all_faces.extend(fs)
    return FaceDecomposition(tuple(all_faces), tuple(groups),
                             vertices=code.n_crossings, edges=n_edges)


def carter_genus(code: GaussCode) -> SurfaceReport:
    """Genus data of the carrier surface.  The genus of a non-connected
    carrier is the sum over its connected pieces."""
    decomp = trace_faces(code)
    per = tuple(g.genus for g in decomp.groups)
    return SurfaceReport(
        genus_total=sum(per),
        genus_per_component=per,
        component_count=len(per),
        connected=len(per) == 1,
    )
