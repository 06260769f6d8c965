"""Drawings of colored multigraphs on surfaces, up to homeomorphism.

A drawing is stored as a decorated combinatorial map:

* the *planarization*: a map (:class:`~crossvar.maps.RotMap`) whose vertices
  are the drawn graph's vertex images plus the intersection points, and
  whose pieces are the maximal arcs between consecutive marked points;
* a *pass pairing* at every intersection vertex telling which two darts
  belong to the same strand running straight through;
* *routes*: per graph edge, the dart sequence its curve follows;
* *regions*: a partition of the traced faces into complement components,
  each decorated with extra genus, orientability, the number of host
  boundary circles it contains, and a gluing orientation bit per face;
* *free components*: host components disjoint from the drawing.

The host surface is recovered by Euler-characteristic bookkeeping plus an
orientation-parity check, so classification needs no geometric realization.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InputError, StructureError
from .maps import Dart, RotMap, State
from .surfaces import SurfaceComponent, SurfaceSignature

VERTEX = "vertex"
CROSSING = "crossing"


@dataclass(frozen=True)
class Region:
    """One complement component: which faces bound it and what it carries."""

    faces: tuple[int, ...]
    genus: int = 0
    orientable: bool = True
    host_circles: int = 0
    flips: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.faces:
            raise StructureError("region without boundary faces")
        if self.genus < 0 or self.host_circles < 0:
            raise StructureError("negative region decoration")
        if not self.orientable and self.genus < 1:
            raise StructureError("non-orientable region needs genus >= 1")
        if self.orientable and self.genus % 2:
            raise StructureError("orientable region genus must be even")
        flips = self.flips or tuple(1 for _ in self.faces)
        if len(flips) != len(self.faces) or any(f not in (1, -1) for f in flips):
            raise StructureError("one +-1 flip per region face required")
        object.__setattr__(self, "flips", tuple(flips))

    @property
    def chi(self) -> int:
        return 2 - self.genus - (len(self.faces) + self.host_circles)


@dataclass(frozen=True)
class Route:
    """The curve of one graph edge: the dart starting each piece, in order."""

    edge_id: object
    color: int
    darts: tuple[Dart, ...]


class CombinatorialDrawing:
    def __init__(self, rmap: RotMap, kinds: Sequence[str],
                 passes: dict[int, tuple[tuple[Dart, Dart], ...]],
                 routes: Sequence[Route],
                 regions: Sequence[Region] | None,
                 free_components: SurfaceSignature | None = None):
        self.map = rmap
        self.kinds = tuple(kinds)
        self.passes = {v: tuple(tuple(sorted(pair)) for pair in prs)
                       for v, prs in passes.items()}
        self.routes = tuple(routes)
        self.regions = tuple(regions) if regions is not None else None
        self.free_components = free_components or SurfaceSignature([])
        self._validate()

    # -- validation -----------------------------------------------------------

    def _validate(self) -> None:
        m = self.map
        if len(self.kinds) != m.num_vertices:
            raise StructureError("one kind per planarization vertex required")
        for v, kind in enumerate(self.kinds):
            if kind not in (VERTEX, CROSSING):
                raise StructureError(f"unknown vertex kind {kind!r}")
            if m.degree(v) == 0:
                raise StructureError("isolated points cannot appear in a drawing")
        for v, prs in self.passes.items():
            if self.kinds[v] != CROSSING:
                raise StructureError("pass pairing on a non-crossing vertex")
            darts = [d for pair in prs for d in pair]
            if sorted(darts) != sorted(m.rot[v]):
                raise StructureError(f"passes at {v} do not pair all darts")
            if len(prs) < 2:
                raise StructureError(
                    f"intersection {v} needs multiplicity >= 2")
        for v, kind in enumerate(self.kinds):
            if kind == CROSSING and v not in self.passes:
                raise StructureError(f"crossing {v} lacks a pass pairing")
        used: list[Dart] = []
        for route in self.routes:
            self._check_route(route)
            used.extend(route.darts)
        if sorted(d[0] for d in used) != sorted(range(m.num_pieces)):
            raise StructureError("routes must cover every piece exactly once")
        transitions = set()
        for route in self.routes:
            for i in range(len(route.darts) - 1):
                arrive = m.opposite(route.darts[i])
                depart = route.darts[i + 1]
                transitions.add(tuple(sorted((arrive, depart))))
        declared = {pair for prs in self.passes.values() for pair in prs}
        if transitions != declared:
            raise StructureError("pass pairings disagree with the routes")
        if self.regions is not None:
            self._check_regions()

    def _check_route(self, route: Route) -> None:
        m = self.map
        if not route.darts:
            raise StructureError(f"edge {route.edge_id!r} has an empty route")
        start = m.vertex_of(route.darts[0])
        end = m.vertex_of(m.opposite(route.darts[-1]))
        if self.kinds[start] != VERTEX or self.kinds[end] != VERTEX:
            raise StructureError(
                f"edge {route.edge_id!r} must start and end at drawing vertices")
        for i in range(len(route.darts) - 1):
            mid = m.vertex_of(m.opposite(route.darts[i]))
            if self.kinds[mid] != CROSSING:
                raise StructureError(
                    f"edge {route.edge_id!r} passes through a drawing vertex")
            if m.vertex_of(route.darts[i + 1]) != mid:
                raise StructureError(f"edge {route.edge_id!r} route is not a walk")

    def _check_regions(self) -> None:
        nf = self.map.num_faces()
        seen: list[int] = []
        for r in self.regions:
            seen.extend(r.faces)
        if sorted(seen) != list(range(nf)):
            raise StructureError("regions must partition the faces")

    # -- basic queries -------------------------------------------------------

    def is_empty(self) -> bool:
        return self.map.num_pieces == 0

    def graph_vertices(self) -> list[int]:
        return [v for v, k in enumerate(self.kinds) if k == VERTEX]

    def intersection_vertices(self) -> list[int]:
        return [v for v, k in enumerate(self.kinds) if k == CROSSING]

    def multiplicity(self, v: int) -> int:
        return len(self.passes[v])

    def pieces_count(self) -> int:
        return self.map.num_pieces

    def route_of_piece(self) -> dict[int, tuple[object, int]]:
        out: dict[int, tuple[object, int]] = {}
        for route in self.routes:
            for pos, d in enumerate(route.darts):
                out[d[0]] = (route.edge_id, pos)
        return out

    def edge_colors(self) -> dict[object, int]:
        return {r.edge_id: r.color for r in self.routes}

    def route_by_id(self, edge_id) -> Route:
        for r in self.routes:
            if r.edge_id == edge_id:
                return r
        raise InputError(f"unknown edge {edge_id!r}")

    def drawn_graph(self):
        """The colored multigraph this is a drawing of (vertices = map ids)."""
        from .graphs import ColoredMultigraph, Edge
        m = self.map
        edges = []
        for route in self.routes:
            u = m.vertex_of(route.darts[0])
            v = m.vertex_of(m.opposite(route.darts[-1]))
            edges.append(Edge(route.edge_id, u, v, route.color))
        colors = max([r.color for r in self.routes], default=1)
        return ColoredMultigraph(self.graph_vertices(), edges, colors)

    # -- intersections ----------------------------------------------------------

    def pass_vertices_of_route(self, route: Route) -> list[int]:
        m = self.map
        return [m.vertex_of(m.opposite(d)) for d in route.darts[:-1]]

    def is_crossing_point(self, v: int) -> bool:
        """Multiplicity-2 points: crossing iff the two passes interleave."""
        prs = self.passes[v]
        if len(prs) != 2:
            return False
        order = self.map.rot[v]
        pos = {d: i for i, d in enumerate(order)}
        a = sorted(pos[d] for d in prs[0])
        b = sorted(pos[d] for d in prs[1])
        return a[0] < b[0] < a[1] < b[1] or b[0] < a[0] < b[1] < a[1]

    def analyze(self) -> "IntersectionReport":
        m = self.map
        points = []
        edge_cross_count: dict[object, int] = {r.edge_id: 0 for r in self.routes}
        crossing_pairs: dict[tuple, int] = {}
        tangency = False
        multi = False
        piece_owner = self.route_of_piece()
        for v in self.intersection_vertices():
            mult = self.multiplicity(v)
            kind = "multi"
            if mult == 2:
                kind = "crossing" if self.is_crossing_point(v) else "tangency"
            if kind == "tangency":
                tangency = True
            if kind == "multi":
                multi = True
            owners = []
            for pair in self.passes[v]:
                owners.append(piece_owner[pair[0][0]][0])
            points.append(IntersectionPoint(v, mult, kind, tuple(owners)))
            if kind == "crossing":
                e1, e2 = owners
                key = tuple(sorted((str(e1), str(e2))))
                crossing_pairs[key] = crossing_pairs.get(key, 0) + 1
                edge_cross_count[e1] += 1
                edge_cross_count[e2] += 1
        normal = not tangency and not multi
        simple = normal
        if normal:
            colors = self.edge_colors()
            graph = self.drawn_graph()
            ends = {e.id: {e.u, e.v} for e in graph.edges}
            for p in points:
                e1, e2 = p.edges
                if e1 == e2:
                    simple = False
                elif ends[e1] & ends[e2]:
                    simple = False
            for key, cnt in crossing_pairs.items():
                if cnt > 1:
                    simple = False
        return IntersectionReport(tuple(points), normal, simple,
                                  edge_cross_count, crossing_pairs)

    def crossing_total(self) -> int:
        return sum(1 for p in self.analyze().points if p.kind == "crossing")

    def intersection_point_count(self) -> int:
        return len(self.intersection_vertices())

    def pairwise_intersection_count(self) -> int:
        """Number of strand pairs meeting at points, summed over points."""
        return sum(math.comb(self.multiplicity(v), 2)
                   for v in self.intersection_vertices())

    def color_crossing_matrix(self, c: int | None = None):
        """Symmetric color-by-color crossing counts; needs a normal drawing."""
        report = self.analyze()
        if not report.normal:
            return None
        colors = self.edge_colors()
        cmax = c or max(list(colors.values()) + [1])
        if any(col > cmax for col in colors.values()):
            raise InputError("drawing uses colors outside the policy range")
        mat = [[0] * cmax for _ in range(cmax)]
        for p in report.points:
            if p.kind != "crossing":
                continue
            i, j = sorted((colors[p.edges[0]], colors[p.edges[1]]))
            mat[i - 1][j - 1] += 1
            if i != j:
                mat[j - 1][i - 1] += 1
        return mat

    # -- host recovery -------------------------------------------------------------

    def side_usage(self) -> dict[int, list[tuple[int, Dart]]]:
        """Per piece, the (face, crossing dart) for each of its two sides."""
        out: dict[int, list[tuple[int, Dart]]] = {p: [] for p in range(self.map.num_pieces)}
        for f, orbit in enumerate(self.map.faces()):
            for st in orbit:
                out[st[0][0]].append((f, st[0]))
        return out

    def host_signature(self) -> SurfaceSignature:
        """Classify the surface this decorated map is drawn on."""
        if self.regions is None:
            raise StructureError("drawing carries no region decorations")
        m = self.map
        if m.num_pieces == 0:
            return self.free_components
        # Components: union of map components joined through regions.
        comp_of_vertex: dict[int, int] = {}
        for i, comp in enumerate(m.vertex_components()):
            for v in comp:
                comp_of_vertex[v] = i
        n_mapcomp = len(m.vertex_components())
        parent = list(range(n_mapcomp))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        face_comp = []
        for orbit in m.faces():
            face_comp.append(comp_of_vertex[m.vertex_of(orbit[0][0])])
        region_of_face: dict[int, Region] = {}
        for r in self.regions:
            for f in r.faces:
                region_of_face[f] = r
            first = find(face_comp[r.faces[0]])
            for f in r.faces[1:]:
                parent[find(face_comp[f])] = first
        groups: dict[int, list[int]] = {}
        for i in range(n_mapcomp):
            groups.setdefault(find(i), []).append(i)

        # chi and boundary per host component
        chi = {g: 0 for g in groups}
        bnd = {g: 0 for g in groups}
        nonor = {g: False for g in groups}
        for i, comp in enumerate(m.vertex_components()):
            g = find(i)
            inner_pieces = sum(1 for (u, v) in m.pieces if comp_of_vertex[u] == i)
            chi[g] += len(comp) - inner_pieces
        seen_regions = set()
        for r in self.regions:
            g = find(face_comp[r.faces[0]])
            if id(r) in seen_regions:
                continue
            seen_regions.add(id(r))
            chi[g] += r.chi
            bnd[g] += r.host_circles
            if not r.orientable:
                nonor[g] = True

        # Orientability: parity union-find over regions, one constraint per
        # piece.  Two sides crossed via the same dart by their face
        # representatives glue "parallel", which flips orientation.
        puf_parent: dict[int, int] = {}
        puf_par: dict[int, int] = {}

        def pfind(x):
            puf_parent.setdefault(x, x)
            puf_par.setdefault(x, 0)
            if puf_parent[x] == x:
                return x, 0
            root, par = pfind(puf_parent[x])
            puf_parent[x] = root
            puf_par[x] ^= par
            return root, puf_par[x]

        def punion(x, y, parity) -> bool:
            rx, px = pfind(x)
            ry, py = pfind(y)
            if rx == ry:
                return (px ^ py) == parity
            puf_parent[rx] = ry
            puf_par[rx] = px ^ py ^ parity
            return True

        region_index = {id(r): i for i, r in enumerate(self.regions)}
        flip_of_face: dict[int, int] = {}
        for r in self.regions:
            for f, fl in zip(r.faces, r.flips):
                flip_of_face[f] = 0 if fl == 1 else 1
        usage = self.side_usage()
        for p, sides in usage.items():
            if len(sides) != 2:
                raise StructureError("piece without exactly two sides")
            (f1, d1), (f2, d2) = sides
            r1 = region_index[id(region_of_face[f1])]
            r2 = region_index[id(region_of_face[f2])]
            parity = (1 if d1 == d2 else 0) ^ flip_of_face[f1] ^ flip_of_face[f2]
            if not punion(r1, r2, parity):
                g = find(face_comp[f1])
                nonor[g] = True

        comps = []
        for g in groups:
            orientable = not nonor[g]
            genus = 2 - chi[g] - bnd[g]
            if genus < 0 or (orientable and genus % 2):
                raise StructureError(
                    f"decorations do not close up (chi={chi[g]}, b={bnd[g]}, "
                    f"orientable={orientable})")
            comps.append(SurfaceComponent(orientable, genus, bnd[g]))
        return SurfaceSignature(list(comps) + list(self.free_components.components))

    # -- canonical form ---------------------------------------------------------

    def canonical_form(self) -> tuple:
        """Label-independent encoding, minimized over starting darts and a
        global reflection; used to deduplicate enumerated drawings."""
        m = self.map
        if m.num_pieces == 0:
            return ("empty", tuple(sorted(
                (c.orientable, c.genus, c.boundary)
                for c in self.free_components.components)))
        best = None
        for sense in (1, -1):
            for start in m.darts():
                enc = self._encode_from(start, sense)
                if best is None or enc < best:
                    best = enc
        return best

    def _encode_from(self, start: Dart, sense: int) -> tuple:
        m = self.map
        vnum: dict[int, int] = {}
        pnum: dict[int, int] = {}
        vflip: dict[int, int] = {}

        def know_vertex(v, flipped):
            if v not in vnum:
                vnum[v] = len(vnum)
                vflip[v] = flipped

        queue: list[Dart] = [start]
        know_vertex(m.vertex_of(start), 1 if sense == 1 else -1)
        rot_out: list[tuple] = []
        seen_darts: set[Dart] = set()
        order: list[Dart] = []
        while queue:
            d = queue.pop(0)
            if d in seen_darts:
                continue
            v = m.vertex_of(d)
            darts = m.rot[v]
            i = darts.index(d)
            step = vflip[v]
            seq = [darts[(i + step * k) % len(darts)] for k in range(len(darts))]
            for dd in seq:
                seen_darts.add(dd)
                order.append(dd)
                if dd[0] not in pnum:
                    pnum[dd[0]] = len(pnum)
                opp = m.opposite(dd)
                w = m.vertex_of(opp)
                if w not in vnum:
                    know_vertex(w, vflip[v] * m.signs[dd[0]])
                    queue.append(opp)
        if len(seen_darts) != 2 * m.num_pieces:
            # Disconnected: continue from the least unvisited dart.
            rest = sorted(set(m.darts()) - seen_darts)
            while rest:
                d = rest[0]
                know_vertex(m.vertex_of(d), 1)
                sub: list[Dart] = [d]
                while sub:
                    dd = sub.pop(0)
                    if dd in seen_darts:
                        continue
                    v = m.vertex_of(dd)
                    darts = m.rot[v]
                    i = darts.index(dd)
                    step = vflip[v]
                    seq = [darts[(i + step * k) % len(darts)]
                           for k in range(len(darts))]
                    for d3 in seq:
                        seen_darts.add(d3)
                        order.append(d3)
                        if d3[0] not in pnum:
                            pnum[d3[0]] = len(pnum)
                        opp = m.opposite(d3)
                        w = m.vertex_of(opp)
                        if w not in vnum:
                            know_vertex(w, vflip[v] * m.signs[d3[0]])
                            sub.append(opp)
                rest = sorted(set(m.darts()) - seen_darts)

        def dart_code(d: Dart) -> tuple:
            return (pnum[d[0]], d[1])

        rot_code = []
        for v in sorted(vnum, key=lambda x: vnum[x]):
            darts = m.rot[v]
            step = vflip[v]
            best_rotation = min(
                tuple(dart_code(darts[(s + step * k) % len(darts)])
                      for k in range(len(darts)))
                for s in range(len(darts)))
            rot_code.append((self.kinds[v], best_rotation))
        sign_code = tuple(
            m.signs[p] * vflip[m.pieces[p][0]] * vflip[m.pieces[p][1]]
            if m.pieces[p][0] != m.pieces[p][1] else m.signs[p]
            for p in sorted(pnum, key=lambda x: pnum[x]))
        route_code = tuple(sorted(
            (r.color, tuple(dart_code(d) for d in r.darts))
            for r in self.routes))
        pass_code = tuple(sorted(
            tuple(sorted(tuple(sorted(map(dart_code, pair))) for pair in prs))
            for v, prs in self.passes.items()))
        if self.regions is None:
            region_code = None
        else:
            face_code = {}
            for f, orbit in enumerate(self.map.faces()):
                face_code[f] = min(
                    min((dart_code(st[0]), st[1]) for st in orbit),
                    min((dart_code(st[0]), st[1])
                        for st in (self.map.mirror(s) for s in orbit)))
            region_code = tuple(sorted(
                (tuple(sorted(face_code[f] for f in r.faces)), r.genus,
                 r.orientable, r.host_circles,
                 tuple(sorted(zip((face_code[f] for f in r.faces), r.flips))))
                for r in self.regions))
        free_code = tuple(sorted(
            (c.orientable, c.genus, c.boundary)
            for c in self.free_components.components))
        return (rot_code and tuple(rot_code), sign_code, route_code,
                pass_code, region_code, free_code)


@dataclass(frozen=True)
class IntersectionPoint:
    vertex: int
    multiplicity: int
    kind: str                   # "crossing" | "tangency" | "multi"
    edges: tuple                # owning edge id per pass


@dataclass(frozen=True)
class IntersectionReport:
    points: tuple[IntersectionPoint, ...]
    normal: bool
    simple: bool
    edge_crossings: dict
    crossing_pairs: dict

    def crossings(self) -> int:
        return sum(1 for p in self.points if p.kind == "crossing")

    def crossed_edges(self) -> set:
        out = set()
        for p in self.points:
            out.update(p.edges)
        return out


def pieces(d: CombinatorialDrawing) -> int:
    """Total number of pieces the intersections cut the edges into."""
    return d.pieces_count()


def analyze(d: CombinatorialDrawing) -> IntersectionReport:
    return d.analyze()


def color_crossing_matrix(d: CombinatorialDrawing, c: int | None = None):
    return d.color_crossing_matrix(c)


# ---------------------------------------------------------------------------
# Restriction (edge/vertex removal on the decorated map)
# ---------------------------------------------------------------------------


def restrict_to_edges(d: CombinatorialDrawing, keep: Iterable) -> CombinatorialDrawing:
    """Subdrawing on the listed edges; host decorations are dropped.

    Removing strands can demote intersection points: a point left with a
    single pass dissolves into the strand, a point left with none vanishes.
    The result carries ``regions=None`` and is meant for crossing-structure
    analysis (policy values never consult regions except through an
    explicitly supplied host).
    """
    keep = set(keep)
    m = d.map
    kept_routes = [r for r in d.routes if r.edge_id in keep]
    kept_pieces = sorted({dd[0] for r in kept_routes for dd in r.darts})
    alive = set(kept_pieces)

    # Surviving passes per crossing.
    new_passes: dict[int, list[tuple[Dart, Dart]]] = {}
    for v, prs in d.passes.items():
        left = [pair for pair in prs if pair[0][0] in alive]
        if left:
            new_passes[v] = left

    # Vertices that remain marked: drawing vertices touched by kept routes,
    # crossings with >= 2 surviving passes.
    marked: set[int] = set()
    for r in kept_routes:
        marked.add(m.vertex_of(r.darts[0]))
        marked.add(m.vertex_of(m.opposite(r.darts[-1])))
    for v, prs in new_passes.items():
        if len(prs) >= 2:
            marked.add(v)

    # Rebuild routes, merging consecutive pieces across dissolved crossings.
    new_vertices: dict[int, int] = {}
    kinds: list[str] = []

    def vid(v: int) -> int:
        if v not in new_vertices:
            new_vertices[v] = len(kinds)
            kinds.append(d.kinds[v])
        return new_vertices[v]

    pieces_out: list[tuple[int, int]] = []
    signs_out: list[int] = []
    rot_entries: dict[int, dict[Dart, Dart]] = {}
    new_routes: list[Route] = []
    piece_map: dict[int, tuple[int, int]] = {}   # old piece -> (new piece, flipped?)

    for r in kept_routes:
        segments: list[list[Dart]] = [[]]
        for i, dd in enumerate(r.darts):
            segments[-1].append(dd)
            if i < len(r.darts) - 1:
                mid = m.vertex_of(m.opposite(dd))
                if mid in marked:
                    segments.append([])
        new_darts: list[Dart] = []
        for seg in segments:
            u = m.vertex_of(seg[0])
            w = m.vertex_of(m.opposite(seg[-1]))
            pid = len(pieces_out)
            sign = 1
            for dd in seg:
                sign *= m.signs[dd[0]]
            pieces_out.append((vid(u), vid(w)))
            signs_out.append(sign)
            piece_map[seg[0][0]] = (pid, seg[0][1])
            piece_map[seg[-1][0]] = (pid, seg[-1][1])
            rot_entries.setdefault(seg[0][0], {})[seg[0]] = (pid, 0)
            rot_entries.setdefault(seg[-1][0], {})[m.opposite(seg[-1])] = (pid, 1)
            new_darts.append((pid, 0))
        new_routes.append(Route(r.edge_id, r.color, tuple(new_darts)))

    rot: list[list[Dart]] = [[] for _ in kinds]
    for old_v, new_v in new_vertices.items():
        for dd in m.rot[old_v]:
            mapped = rot_entries.get(dd[0], {}).get(dd)
            if mapped is not None and m.vertex_of(dd) == old_v:
                rot[new_v].append(mapped)
    passes_out: dict[int, tuple[tuple[Dart, Dart], ...]] = {}
    for v, prs in new_passes.items():
        if v not in new_vertices or kinds[new_vertices[v]] != CROSSING:
            continue
        mapped_pairs = []
        for pair in prs:
            mapped_pairs.append(tuple(sorted(
                rot_entries[pp[0]][pp] for pp in pair)))
        passes_out[new_vertices[v]] = tuple(mapped_pairs)

    return CombinatorialDrawing(
        RotMap(len(kinds), pieces_out, rot, signs_out),
        kinds, passes_out, new_routes, regions=None)


def crossed_subdrawing(d: CombinatorialDrawing) -> CombinatorialDrawing:
    """Restriction to the edges that are involved in at least one intersection."""
    involved = set()
    owner = d.route_of_piece()
    for v in d.intersection_vertices():
        for pair in d.passes[v]:
            involved.add(owner[pair[0][0]][0])
    return restrict_to_edges(d, involved)


def remove_vertex(d: CombinatorialDrawing, map_vertex: int) -> CombinatorialDrawing:
    """Remove a drawn graph vertex together with all edges ending there."""
    if d.kinds[map_vertex] != VERTEX:
        raise InputError("only drawn graph vertices can be removed")
    m = d.map
    keep = [r.edge_id for r in d.routes
            if m.vertex_of(r.darts[0]) != map_vertex
            and m.vertex_of(m.opposite(r.darts[-1])) != map_vertex]
    return restrict_to_edges(d, keep)


def empty_drawing(host: SurfaceSignature) -> CombinatorialDrawing:
    return CombinatorialDrawing(RotMap(0, [], []), [], {}, [], [], host)
