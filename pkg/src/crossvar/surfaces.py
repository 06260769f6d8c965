"""Surfaces as glued triangle collections, their classification, and 2-complexes.

A surface is stored as a set of abstract triangles together with side
gluings.  Triangle ``t`` has corners ``(t, 0..2)``; side ``(t, s)`` is the
directed segment from corner ``s`` to corner ``(s + 1) % 3``.  A gluing
``((t1, s1), (t2, s2), reversed)`` identifies two sides; ``reversed=True``
matches them head-to-tail (corner ``s1`` with corner ``s2 + 1``), which is
the orientation-compatible way to glue two coherently oriented triangles.

Everything here uses the Euler genus convention: a connected surface with
``b`` boundary circles satisfies ``chi = 2 - genus - b``, where orientable
surfaces have even genus (twice the handle count) and non-orientable ones
count crosscaps.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import FormatError, InputError, StructureError

Side = tuple[int, int]          # (triangle index, side index 0..2)
Corner = tuple[int, int]        # (triangle index, corner index 0..2)
Gluing = tuple[Side, Side, bool]


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        while p != self.parent[p]:
            self.parent[p] = self.parent[self.parent[p]]
            p = self.parent[p]
        root = p
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[rx] = ry
        return True

    def groups(self) -> dict:
        out: dict = {}
        for x in list(self.parent):
            out.setdefault(self.find(x), []).append(x)
        return out


@dataclass(frozen=True, order=True)
class SurfaceComponent:
    orientable: bool
    genus: int          # Euler genus
    boundary: int

    def __post_init__(self):
        if self.genus < 0 or self.boundary < 0:
            raise InputError("genus and boundary counts must be non-negative")
        if not self.orientable and self.genus < 1:
            raise InputError("a non-orientable component needs genus >= 1")
        if self.orientable and self.genus % 2 != 0:
            raise InputError("orientable Euler genus is even")

    @property
    def chi(self) -> int:
        return 2 - self.genus - self.boundary


@dataclass(frozen=True)
class SurfaceSignature:
    """Homeomorphism type of a (possibly disconnected) compact surface."""

    components: tuple[SurfaceComponent, ...]

    def __init__(self, components: Iterable[SurfaceComponent | tuple]):
        comps = []
        for c in components:
            if not isinstance(c, SurfaceComponent):
                c = SurfaceComponent(*c)
            comps.append(c)
        object.__setattr__(self, "components", tuple(sorted(comps)))

    @staticmethod
    def sphere() -> "SurfaceSignature":
        return SurfaceSignature([SurfaceComponent(True, 0, 0)])

    @staticmethod
    def disk() -> "SurfaceSignature":
        return SurfaceSignature([SurfaceComponent(True, 0, 1)])

    @staticmethod
    def torus() -> "SurfaceSignature":
        return SurfaceSignature([SurfaceComponent(True, 2, 0)])

    @staticmethod
    def projective_plane() -> "SurfaceSignature":
        return SurfaceSignature([SurfaceComponent(False, 1, 0)])

    @staticmethod
    def klein_bottle() -> "SurfaceSignature":
        return SurfaceSignature([SurfaceComponent(False, 2, 0)])

    @property
    def genus(self) -> int:
        return sum(c.genus for c in self.components)

    @property
    def boundary(self) -> int:
        return sum(c.boundary for c in self.components)

    @property
    def chi(self) -> int:
        return sum(c.chi for c in self.components)

    def is_orientable(self) -> bool:
        return all(c.orientable for c in self.components)

    def to_json_dict(self) -> dict:
        return {"components": [
            {"orientable": c.orientable, "genus": c.genus, "boundary": c.boundary}
            for c in self.components]}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "SurfaceSignature":
        try:
            return cls([SurfaceComponent(bool(c["orientable"]), int(c["genus"]),
                                         int(c["boundary"]))
                        for c in data["components"]])
        except (KeyError, TypeError, InputError) as exc:
            raise FormatError(f"malformed surface JSON: {exc}") from None


def topological_size(sig: SurfaceSignature) -> int:
    """Components plus total Euler genus plus total boundary circles."""
    return len(sig.components) + sig.genus + sig.boundary


# ---------------------------------------------------------------------------
# Triangulations
# ---------------------------------------------------------------------------


class Triangulation:
    """Triangles plus side gluings; boundary sides are the unglued ones."""

    def __init__(self, num_triangles: int, gluings: Iterable[Gluing]):
        self.num_triangles = int(num_triangles)
        self.gluings: tuple[Gluing, ...] = tuple(
            (tuple(a), tuple(b), bool(rev)) for a, b, rev in gluings)
        self._check_sides()
        self._corner_uf = self._build_corner_classes()

    # -- structural bookkeeping -------------------------------------------

    def _check_sides(self) -> None:
        seen: set[Side] = set()
        for a, b, _ in self.gluings:
            for s in (a, b):
                t, i = s
                if not (0 <= t < self.num_triangles and 0 <= i < 3):
                    raise StructureError(f"gluing references missing side {s}")
                if s in seen:
                    raise StructureError(f"side {s} glued twice")
                seen.add(s)
            if a == b:
                raise StructureError(f"side {a} glued to itself")

    def _build_corner_classes(self) -> _UnionFind:
        uf = _UnionFind()
        for t in range(self.num_triangles):
            for c in range(3):
                uf.find((t, c))
        for (t1, s1), (t2, s2), rev in self.gluings:
            a0, a1 = (t1, s1), (t1, (s1 + 1) % 3)
            b0, b1 = (t2, s2), (t2, (s2 + 1) % 3)
            if rev:
                uf.union(a0, b1)
                uf.union(a1, b0)
            else:
                uf.union(a0, b0)
                uf.union(a1, b1)
        return uf

    def all_sides(self) -> list[Side]:
        return [(t, s) for t in range(self.num_triangles) for s in range(3)]

    def glued_partner(self) -> dict[Side, tuple[Side, bool]]:
        out: dict[Side, tuple[Side, bool]] = {}
        for a, b, rev in self.gluings:
            out[a] = (b, rev)
            out[b] = (a, rev)
        return out

    def boundary_sides(self) -> list[Side]:
        partner = self.glued_partner()
        return [s for s in self.all_sides() if s not in partner]

    def corner_class(self, corner: Corner):
        return self._corner_uf.find(corner)

    def vertex_classes(self) -> dict:
        return self._corner_uf.groups()

    def side_class(self, side: Side):
        partner = self.glued_partner()
        if side in partner:
            return min(side, partner[side][0])
        return side

    def num_vertices(self) -> int:
        return len(self.vertex_classes())

    def num_edges(self) -> int:
        return 3 * self.num_triangles - len(self.gluings)

    def euler_characteristic(self) -> int:
        return self.num_vertices() - self.num_edges() + self.num_triangles

    # -- validity -----------------------------------------------------------

    def side_endpoints(self, side: Side) -> tuple[Corner, Corner]:
        t, s = side
        return (t, s), (t, (s + 1) % 3)

    def is_strict(self) -> bool:
        """True when every triangle has three distinct vertices and edges."""
        for t in range(self.num_triangles):
            cs = {self.corner_class((t, c)) for c in range(3)}
            if len(cs) != 3:
                return False
            es = {self.side_class((t, s)) for s in range(3)}
            if len(es) != 3:
                return False
        # No two distinct edge classes may join the same vertex pair within
        # a triangle fan ambiguity; strictness above is what the storage
        # format requires.
        return True

    def validate(self) -> None:
        """Raise unless the gluing is a surface with proper vertex links."""
        self._check_links()
        if not self.is_strict():
            raise StructureError("triangulation is weak (coinciding corners)")

    def _check_links(self) -> None:
        # Slots: (corner, 0) touches the side starting there, (corner, 1)
        # the side ending there.  Each corner is a link segment between its
        # two slots; gluings pair slots.  Links must be single paths/cycles.
        partner = self.glued_partner()

        def slots_of_side(side: Side):
            (t, s) = side
            c_start, c_end = (t, s), (t, (s + 1) % 3)
            return (c_start, 0), (c_end, 1)

        pairing: dict = {}
        for a, b, rev in self.gluings:
            (a0, a1) = slots_of_side(a)
            (b0, b1) = slots_of_side(b)
            if rev:
                pairing[a0] = b1
                pairing[b1] = a0
                pairing[a1] = b0
                pairing[b0] = a1
            else:
                pairing[a0] = b0
                pairing[b0] = a0
                pairing[a1] = b1
                pairing[b1] = a1
        for root, corners in self.vertex_classes().items():
            uf = _UnionFind()
            for c in corners:
                uf.union((c, 0), (c, 1))
            for c in corners:
                for k in (0, 1):
                    other = pairing.get((c, k))
                    if other is not None:
                        uf.union((c, k), other)
            roots = {uf.find((c, 0)) for c in corners}
            if len(roots) != 1:
                raise StructureError(
                    f"vertex {root} has a disconnected link (pinch point)")

    # -- classification ------------------------------------------------------

    def component_of_triangles(self) -> list[list[int]]:
        uf = _UnionFind()
        for t in range(self.num_triangles):
            uf.find(t)
        for (t1, _), (t2, _), _ in self.gluings:
            uf.union(t1, t2)
        groups = uf.groups()
        return [sorted(g) for g in sorted(groups.values(), key=min)]

    def _component_orientable(self, triangles: list[int]) -> bool:
        partner = self.glued_partner()
        sign = {triangles[0]: 1}
        stack = [triangles[0]]
        adj: dict[int, list[tuple[int, bool]]] = {t: [] for t in triangles}
        for (t1, s1), (t2, s2), rev in self.gluings:
            if t1 in adj:
                adj[t1].append((t2, rev))
                adj[t2].append((t1, rev))
        while stack:
            t = stack.pop()
            for (t2, rev) in adj[t]:
                # Coherent orientation across a head-to-tail gluing keeps the
                # sign; a parallel gluing flips it.
                want = sign[t] if rev else -sign[t]
                if t2 not in sign:
                    sign[t2] = want
                    stack.append(t2)
                elif sign[t2] != want:
                    return False
        return True

    def _component_boundary_count(self, triangles: list[int]) -> int:
        tset = set(triangles)
        partner = self.glued_partner()
        banks = [s for s in self.all_sides() if s[0] in tset and s not in partner]
        if not banks:
            return 0
        # Walk the boundary: rotate around the pivot vertex through the glued
        # fan until the next unglued side.  Sides are not coherently directed
        # along the boundary, so we track which endpoint of the current side
        # the pivot is (0 = start corner, 1 = end corner) and flip it when
        # advancing to the next side.
        def next_boundary(side: Side, pivot_end: int) -> tuple[Side, int]:
            state = (side, pivot_end)
            for _ in range(6 * self.num_triangles + 3):
                (t, s), e = state
                if e == 0:
                    cand = ((t, (s + 2) % 3), 1)
                else:
                    cand = ((t, (s + 1) % 3), 0)
                if cand[0] not in partner:
                    return cand
                (t2, s2), rev = partner[cand[0]]
                if cand[1] == 0:
                    state = ((t2, s2), 1 if rev else 0)
                else:
                    state = ((t2, s2), 0 if rev else 1)
            raise StructureError("boundary walk did not close (bad links)")

        count = 0
        seen: set[Side] = set()
        for s in banks:
            if s in seen:
                continue
            count += 1
            cur, pivot = s, 1
            while True:
                seen.add(cur)
                nxt, touched = next_boundary(cur, pivot)
                if nxt == s:
                    break
                cur, pivot = nxt, 1 - touched
        return count


def classify(t: Triangulation) -> SurfaceSignature:
    """Homeomorphism type of each connected component of a triangulation."""
    t._check_links()
    comps = []
    for triangles in t.component_of_triangles():
        tset = set(triangles)
        corners = [(tt, c) for tt in triangles for c in range(3)]
        v = len({t.corner_class(c) for c in corners})
        glu = sum(1 for (a, b, _) in t.gluings if a[0] in tset)
        e = 3 * len(triangles) - glu
        f = len(triangles)
        chi = v - e + f
        b = t._component_boundary_count(triangles)
        orientable = t._component_orientable(triangles)
        genus = 2 - chi - b
        if genus < 0:
            raise StructureError(f"impossible Euler data (chi={chi}, b={b})")
        comps.append(SurfaceComponent(orientable, genus, b))
    return SurfaceSignature(comps)


def barycentric_subdivide(t: Triangulation) -> Triangulation:
    """Midpoint-subdivide every triangle into four.

    Accepts weak triangulations; two applications of this map always
    produce a strict one.
    """
    # Sub-triangle ids: triangle t yields 4*t + i with i=0..2 the corner
    # triangles and i=3 the central one.
    def corner_tri(t_, i):
        return 4 * t_ + i

    def central(t_):
        return 4 * t_ + 3

    gluings: list[Gluing] = []
    for tt in range(t.num_triangles):
        for i in range(3):
            gluings.append((
                (corner_tri(tt, i), 1), (central(tt), (i + 2) % 3), True))
    for (t1, s1), (t2, s2), rev in t.gluings:
        # halves of side (t, s): first = (corner_tri(t, s), 0),
        # second = (corner_tri(t, s+1), 2)
        a_first = (corner_tri(t1, s1), 0)
        a_second = (corner_tri(t1, (s1 + 1) % 3), 2)
        b_first = (corner_tri(t2, s2), 0)
        b_second = (corner_tri(t2, (s2 + 1) % 3), 2)
        if rev:
            gluings.append((a_first, b_second, True))
            gluings.append((a_second, b_first, True))
        else:
            gluings.append((a_first, b_first, False))
            gluings.append((a_second, b_second, False))
    return Triangulation(4 * t.num_triangles, gluings)


# ---------------------------------------------------------------------------
# Standard models
# ---------------------------------------------------------------------------


def _polygon_fan(n: int) -> tuple[int, list[Gluing]]:
    """Fan triangulation of an n-gon; rim side of triangle i is (i, 1)."""
    gluings: list[Gluing] = []
    for i in range(n):
        gluings.append(((i, 2), ((i + 1) % n, 0), True))
    return n, gluings


def _closed_component_model(comp: SurfaceComponent) -> Triangulation:
    if comp.orientable and comp.genus == 0:
        # Two triangles glued side-by-side ("pillowcase" sphere).
        return Triangulation(2, [((0, s), (1, s), False) for s in range(3)])
    if comp.orientable:
        h = comp.genus // 2
        n, gluings = _polygon_fan(4 * h)
        for k in range(h):
            a, b = 4 * k, 4 * k + 1
            gluings.append(((a, 1), (a + 2, 1), True))
            gluings.append(((b, 1), (b + 2, 1), True))
        return Triangulation(n, gluings)
    g = comp.genus
    n, gluings = _polygon_fan(2 * g)
    for k in range(g):
        gluings.append(((2 * k, 1), (2 * k + 1, 1), False))
    return Triangulation(n, gluings)


def _drop_triangles(t: Triangulation, count: int) -> Triangulation:
    """Remove `count` pairwise vertex-disjoint triangles (punches holes)."""
    chosen: list[int] = []
    used_vertices: set = set()
    for tri in range(t.num_triangles):
        classes = {t.corner_class((tri, c)) for c in range(3)}
        if len(classes) == 3 and not (classes & used_vertices):
            chosen.append(tri)
            used_vertices |= classes
            if len(chosen) == count:
                break
    if len(chosen) < count:
        raise StructureError("not enough room to punch boundary holes")
    keep = [tri for tri in range(t.num_triangles) if tri not in set(chosen)]
    renum = {old: new for new, old in enumerate(keep)}
    gluings = [((renum[a[0]], a[1]), (renum[b[0]], b[1]), rev)
               for (a, b, rev) in t.gluings
               if a[0] in renum and b[0] in renum]
    return Triangulation(len(keep), gluings)


def _shift(t: Triangulation, offset: int) -> list[Gluing]:
    return [(((a[0] + offset), a[1]), ((b[0] + offset), b[1]), rev)
            for (a, b, rev) in t.gluings]


def triangulation_of(sig: SurfaceSignature) -> Triangulation:
    """A strict triangulation realizing the given signature."""
    parts: list[Triangulation] = []
    for comp in sig.components:
        model = _closed_component_model(SurfaceComponent(
            comp.orientable, comp.genus, 0))
        model = barycentric_subdivide(barycentric_subdivide(model))
        if comp.boundary:
            model = barycentric_subdivide(model)
            model = _drop_triangles(model, comp.boundary)
        parts.append(model)
    total = 0
    gluings: list[Gluing] = []
    for p in parts:
        gluings += _shift(p, total)
        total += p.num_triangles
    out = Triangulation(total, gluings)
    if classify(out) != sig:
        raise StructureError("standard model construction failed")
    return out


# ---------------------------------------------------------------------------
# 2-complexes
# ---------------------------------------------------------------------------


@dataclass
class TwoComplex:
    """A space built from a simple graph by attaching triangles to 3-cycles.

    ``isolated_colors`` labels edges that belong to no triangle.  ``tags``
    carries provenance written by the reduction pipeline (which points were
    identified, necklace membership, region markers); it never affects the
    topology.
    """

    vertices: set
    edges: dict                       # edge id -> frozenset({u, v})
    triangles: list                   # list of frozenset({u, v, w})
    isolated_colors: dict = field(default_factory=dict)
    tags: dict = field(default_factory=dict)

    def copy(self) -> "TwoComplex":
        return TwoComplex(set(self.vertices), dict(self.edges),
                          list(self.triangles), dict(self.isolated_colors),
                          json.loads(json.dumps(self.tags, default=list))
                          if self.tags else {})

    # -- queries -------------------------------------------------------------

    def edge_pairs(self) -> set:
        return set(self.edges.values())

    def edges_of_triangle(self, tri) -> list:
        a, b, c = sorted(tri, key=str)
        return [frozenset({a, b}), frozenset({b, c}), frozenset({a, c})]

    def triangles_of_edge(self) -> dict:
        out: dict = {eid: [] for eid in self.edges}
        pair_to_eid = {pair: eid for eid, pair in self.edges.items()}
        for i, tri in enumerate(self.triangles):
            for pair in self.edges_of_triangle(tri):
                eid = pair_to_eid.get(pair)
                if eid is not None:
                    out[eid].append(i)
        return out

    def isolated_edges(self) -> list:
        toe = self.triangles_of_edge()
        return [eid for eid, tris in toe.items() if not tris]

    def size(self) -> int:
        return len(self.vertices) + len(self.edges) + len(self.triangles)

    # -- validity ------------------------------------------------------------

    def validate(self) -> None:
        pairs_seen: set = set()
        for eid, pair in self.edges.items():
            if len(pair) != 2:
                raise StructureError(f"edge {eid!r} is a loop")
            if not pair <= self.vertices:
                raise StructureError(f"edge {eid!r} references missing vertex")
            if pair in pairs_seen:
                raise StructureError(f"parallel edge {eid!r}")
            pairs_seen.add(pair)
        toe = self.triangles_of_edge()
        pair_to_eid = {pair: eid for eid, pair in self.edges.items()}
        for tri in self.triangles:
            if len(tri) != 3:
                raise StructureError("triangle without three distinct vertices")
            for pair in self.edges_of_triangle(tri):
                if pair not in pair_to_eid:
                    raise StructureError("triangle boundary edge missing")
        for eid, color in self.isolated_colors.items():
            if toe.get(eid):
                raise StructureError(
                    f"color label on non-isolated edge {eid!r}")

    def edges_with_three_triangles(self) -> list:
        return [eid for eid, tris in self.triangles_of_edge().items()
                if len(tris) > 2]

    # -- local structure -------------------------------------------------------

    def vertex_link_components(self, v) -> tuple[list[list], int]:
        """Surface-link components at ``v`` plus the isolated-edge incidence count.

        Each component is a list of incident surface-edge ids; components
        that close into cycles correspond to interior disk sectors, open
        paths to boundary half-disks.
        """
        toe = self.triangles_of_edge()
        pair_to_eid = {pair: eid for eid, pair in self.edges.items()}
        surf_edges = [eid for eid, pair in self.edges.items()
                      if v in pair and toe[eid]]
        uf = _UnionFind()
        for eid in surf_edges:
            uf.find(eid)
        for tri in self.triangles:
            if v in tri:
                others = sorted(tri - {v}, key=str)
                e1 = pair_to_eid[frozenset({v, others[0]})]
                e2 = pair_to_eid[frozenset({v, others[1]})]
                uf.union(e1, e2)
        comps = [sorted(g, key=str) for g in uf.groups().values()] if surf_edges else []
        wire = sum(1 for eid, pair in self.edges.items()
                   if v in pair and not toe[eid])
        return comps, wire

    def _link_component_is_cycle(self, v, comp_edges: list) -> bool:
        # A component is a cycle iff every edge in it meets two triangles at v.
        toe = self.triangles_of_edge()
        for eid in comp_edges:
            at_v = [i for i in toe[eid] if v in self.triangles[i]]
            if len(at_v) != 2:
                return False
        return True


def singular_points(c: TwoComplex) -> set:
    """Vertices with no disk, half-disk, or segment neighborhood.

    Edges shared by three or more triangles would make every interior point
    singular; the pipeline rejects such complexes before this check, and
    they are reported via ``TwoComplex.edges_with_three_triangles``.
    """
    out = set()
    for v in c.vertices:
        comps, wire = c.vertex_link_components(v)
        if not comps:
            if wire == 2:
                continue            # interior of a wire path
            if wire == 0:
                out.add(v)          # isolated vertex: not even a segment
            else:
                out.add(v)          # wire endpoint or branch point
            continue
        if wire == 0 and len(comps) == 1:
            continue                # single disk or half-disk sector
        out.add(v)
    return out


def complex_from_json_dict(data: Mapping) -> TwoComplex:
    try:
        vertices = set(data["vertices"])
        edges = {e["id"]: frozenset((e["u"], e["v"])) for e in data["edges"]}
        triangles = [frozenset(t) for t in data["triangles"]]
        colors = {e["id"]: e["color"] for e in data["edges"] if "color" in e}
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed complex JSON: {exc}") from None
    out = TwoComplex(vertices, edges, triangles, colors)
    out.validate()
    return out


def complex_to_json_dict(c: TwoComplex) -> dict:
    edges = []
    for eid, pair in sorted(c.edges.items(), key=lambda kv: str(kv[0])):
        u, v = sorted(pair, key=str)
        d = {"id": eid, "u": u, "v": v}
        if eid in c.isolated_colors:
            d["color"] = c.isolated_colors[eid]
        edges.append(d)
    return {
        "vertices": sorted(c.vertices, key=str),
        "edges": edges,
        "triangles": [sorted(t, key=str) for t in c.triangles],
    }
