"""Colored multigraphs and the mutation operations the solver pipeline needs.

Edges are identified by explicit ids, so parallel edges and loops are
unambiguous.  An *edge end* (dart) is a pair ``(edge_id, end)`` with
``end in (0, 1)``; loops contribute both ends at the same vertex.  All
values are immutable: mutating operations return new graphs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import FormatError, InputError

VertexId = int | str
EdgeEnd = tuple["EdgeId", int]
EdgeId = int | str


@dataclass(frozen=True)
class Edge:
    id: EdgeId
    u: VertexId
    v: VertexId
    color: int = 1

    @property
    def endpoints(self) -> tuple[VertexId, VertexId]:
        return (self.u, self.v)

    def is_loop(self) -> bool:
        return self.u == self.v

    def end_vertex(self, end: int) -> VertexId:
        return self.u if end == 0 else self.v


class ColoredMultigraph:
    """A finite undirected multigraph whose edges carry colors ``1..c``."""

    def __init__(self, vertices: Iterable[VertexId], edges: Iterable[Edge],
                 colors: int = 1):
        self.vertices: tuple[VertexId, ...] = tuple(sorted(set(vertices), key=_id_key))
        self.edges: tuple[Edge, ...] = tuple(edges)
        self.colors = int(colors)
        self._by_id = {e.id: e for e in self.edges}
        self._validate()

    def _validate(self) -> None:
        vset = set(self.vertices)
        if len(self._by_id) != len(self.edges):
            raise InputError("duplicate edge ids")
        if self.colors < 0:
            raise InputError("color count must be non-negative")
        for e in self.edges:
            if e.u not in vset or e.v not in vset:
                raise InputError(f"edge {e.id!r} references unknown vertex")
            if not 1 <= e.color <= max(self.colors, 1):
                raise InputError(
                    f"edge {e.id!r} has color {e.color}, expected 1..{self.colors}")

    # -- basic queries ----------------------------------------------------

    def edge(self, edge_id: EdgeId) -> Edge:
        try:
            return self._by_id[edge_id]
        except KeyError:
            raise InputError(f"unknown edge id {edge_id!r}") from None

    def has_vertex(self, v: VertexId) -> bool:
        return v in set(self.vertices)

    def edge_ends_at(self, v: VertexId) -> tuple[EdgeEnd, ...]:
        """All edge ends attached to ``v``; a loop contributes two ends."""
        out: list[EdgeEnd] = []
        for e in self.edges:
            if e.u == v:
                out.append((e.id, 0))
            if e.v == v:
                out.append((e.id, 1))
        return tuple(out)

    def degree(self, v: VertexId) -> int:
        return len(self.edge_ends_at(v))

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degree(v) for v in self.vertices))

    def incident_vertices(self) -> dict[VertexId, list[EdgeId]]:
        out: dict[VertexId, list[EdgeId]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.u].append(e.id)
            if e.v != e.u:
                out[e.v].append(e.id)
        return out

    def edge_multiset(self) -> tuple[tuple[tuple[VertexId, VertexId], int], ...]:
        """Sorted multiset of (endpoint pair, color), ignoring edge ids."""
        items = []
        for e in self.edges:
            pair = tuple(sorted((e.u, e.v), key=_id_key))
            items.append((pair, e.color))
        return tuple(sorted(items, key=lambda t: (_id_key(t[0][0]), _id_key(t[0][1]), t[1])))

    def connected_components(self) -> list[set[VertexId]]:
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            ru, rv = find(e.u), find(e.v)
            if ru != rv:
                parent[ru] = rv
        comps: dict[VertexId, set[VertexId]] = {}
        for v in self.vertices:
            comps.setdefault(find(v), set()).add(v)
        return list(comps.values())

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    def fresh_vertex_id(self, hint: str = "v") -> VertexId:
        ints = [v for v in self.vertices if isinstance(v, int)]
        if len(ints) == len(self.vertices):
            return (max(ints) + 1) if ints else 0
        k = 0
        names = set(self.vertices)
        while f"{hint}{k}" in names:
            k += 1
        return f"{hint}{k}"

    def fresh_edge_id(self, hint: str = "e") -> EdgeId:
        ints = [e.id for e in self.edges if isinstance(e.id, int)]
        if len(ints) == len(self.edges):
            return (max(ints) + 1) if ints else 0
        k = 0
        names = set(self._by_id)
        while f"{hint}{k}" in names:
            k += 1
        return f"{hint}{k}"

    def __repr__(self) -> str:
        return (f"ColoredMultigraph({len(self.vertices)} vertices, "
                f"{len(self.edges)} edges, c={self.colors})")

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e.id, "u": e.u, "v": e.v, "color": e.color}
                      for e in sorted(self.edges, key=lambda e: _id_key(e.id))],
            "colors": self.colors,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "ColoredMultigraph":
        try:
            vertices = data["vertices"]
            edges = [Edge(d["id"], d["u"], d["v"], d.get("color", 1))
                     for d in data["edges"]]
            colors = data.get("colors", max((e.color for e in edges), default=1))
        except (KeyError, TypeError) as exc:
            raise FormatError(f"malformed graph JSON: {exc}") from None
        try:
            return cls(vertices, edges, colors)
        except InputError as exc:
            raise FormatError(str(exc)) from None


def _id_key(x) -> tuple:
    return (0, x, "") if isinstance(x, int) else (1, 0, str(x))


class RotationSystem:
    """Cyclic permutation of the edge ends around each vertex of a graph."""

    def __init__(self, order: Mapping[VertexId, Sequence[EdgeEnd]]):
        self.order: dict[VertexId, tuple[EdgeEnd, ...]] = {
            v: tuple(tuple(d) for d in darts) for v, darts in order.items()}

    def covers(self, g: ColoredMultigraph) -> bool:
        for v in g.vertices:
            want = sorted(g.edge_ends_at(v))
            have = sorted(self.order.get(v, ()))
            if want != have:
                return False
        return True

    def reversed_at(self, v: VertexId) -> "RotationSystem":
        order = dict(self.order)
        order[v] = tuple(reversed(order[v]))
        return RotationSystem(order)

    def reversed_all(self) -> "RotationSystem":
        return RotationSystem({v: tuple(reversed(d)) for v, d in self.order.items()})


# ---------------------------------------------------------------------------
# Mutation operations
# ---------------------------------------------------------------------------


def vertex_split(g: ColoredMultigraph, v: VertexId,
                 moved: Iterable[EdgeEnd],
                 new_vertex: VertexId | None = None) -> ColoredMultigraph:
    """Split vertex ``v``: re-attach the edge ends in ``moved`` to a new vertex.

    ``moved`` may be empty, which merely adds an isolated vertex; callers
    that feed drawings should avoid that case since isolated vertices are
    never drawn.
    """
    if not g.has_vertex(v):
        raise InputError(f"unknown vertex {v!r}")
    moved = [tuple(d) for d in moved]
    at_v = set(g.edge_ends_at(v))
    for d in moved:
        if d not in at_v:
            raise InputError(f"edge end {d!r} is not attached to {v!r}")
    vnew = new_vertex if new_vertex is not None else g.fresh_vertex_id("split")
    if g.has_vertex(vnew):
        raise InputError(f"new vertex id {vnew!r} already present")
    moved_set = set(moved)
    edges = []
    for e in g.edges:
        u0, u1 = e.u, e.v
        if (e.id, 0) in moved_set:
            u0 = vnew
        if (e.id, 1) in moved_set:
            u1 = vnew
        edges.append(Edge(e.id, u0, u1, e.color))
    return ColoredMultigraph(list(g.vertices) + [vnew], edges, g.colors)


def contract_pair(g: ColoredMultigraph, v: VertexId, w: VertexId) -> ColoredMultigraph:
    """Identify ``w`` with ``v`` (the inverse of a vertex split)."""
    if not g.has_vertex(v) or not g.has_vertex(w):
        raise InputError("unknown vertex")
    edges = [Edge(e.id, v if e.u == w else e.u, v if e.v == w else e.v, e.color)
             for e in g.edges]
    vertices = [x for x in g.vertices if x != w]
    return ColoredMultigraph(vertices, edges, g.colors)


def remove_edges(g: ColoredMultigraph, ids: Iterable[EdgeId]) -> ColoredMultigraph:
    """Delete the listed edges; vertices are kept."""
    ids = set(ids)
    for i in ids:
        g.edge(i)
    return ColoredMultigraph(g.vertices,
                             [e for e in g.edges if e.id not in ids],
                             g.colors)


def double_edges(g: ColoredMultigraph) -> tuple[ColoredMultigraph, list[tuple[EdgeId, EdgeId]]]:
    """Replace every edge by a pair of parallel copies.

    Returns the doubled graph together with the list of twin edge pairs.
    """
    edges: list[Edge] = []
    twins: list[tuple[EdgeId, EdgeId]] = []
    for e in g.edges:
        a = f"{e.id}@a"
        b = f"{e.id}@b"
        edges.append(Edge(a, e.u, e.v, e.color))
        edges.append(Edge(b, e.u, e.v, e.color))
        twins.append((a, b))
    return ColoredMultigraph(g.vertices, edges, g.colors), twins


def hardening(g: ColoredMultigraph, rot: RotationSystem) -> ColoredMultigraph:
    """Rigidify a cellularly embedded graph so drawings must reuse its rotation.

    Every edge ``e = uv`` becomes two internally disjoint length-3 twin
    paths through fresh vertices ``w1/w2`` tagged per endpoint, and every
    vertex gains a cycle through its ``w1, w2`` vertices in rotation order.
    The output keeps the input's colors on all replacement edges.
    """
    if not rot.covers(g):
        raise InputError("rotation system does not cover the graph")
    vertices: list[VertexId] = list(g.vertices)
    edges: list[Edge] = []

    def w(tag: int, v: VertexId, e: EdgeId, end: int) -> str:
        # Loops need the end index to keep the four vertices distinct.
        return f"w{tag}|{v}|{e}|{end}"

    for e in g.edges:
        u, v = e.u, e.v
        w1u, w2u = w(1, u, e.id, 0), w(2, u, e.id, 0)
        w1v, w2v = w(1, v, e.id, 1), w(2, v, e.id, 1)
        vertices += [w1u, w2u, w1v, w2v]
        c = e.color
        edges += [
            Edge(f"P|{e.id}|0", u, w1u, c),
            Edge(f"P|{e.id}|1", w1u, w2v, c),
            Edge(f"P|{e.id}|2", w2v, v, c),
            Edge(f"Q|{e.id}|0", u, w2u, c),
            Edge(f"Q|{e.id}|1", w2u, w1v, c),
            Edge(f"Q|{e.id}|2", w1v, v, c),
        ]
    for v in g.vertices:
        darts = rot.order.get(v, ())
        ring: list[str] = []
        for (eid, end) in darts:
            ring.append(w(1, v, eid, end))
            ring.append(w(2, v, eid, end))
        color = g.edge(darts[0][0]).color if darts else 1
        for i in range(len(ring)):
            a, b = ring[i], ring[(i + 1) % len(ring)]
            if len(ring) == 1:
                break
            edges.append(Edge(f"H|{v}|{i}", a, b, color))
    return ColoredMultigraph(vertices, edges, g.colors)
