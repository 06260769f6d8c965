"""Storage of drawings as walks in a host triangulation, and back.

``realize`` turns a decorated drawing into an explicit triangulation of its
host in which every piece of the drawing is one marked interior edge path:
each region becomes a polygon (its face walks joined by cuts, plus
handle/crosscap letters and free boundary holes), polygons are
ear-triangulated, glued along the piece sides, and the result is
midpoint-subdivided twice so it is a strict triangulation.  The
construction realizes the representation-size bound of
``96 * (topological size + pieces)`` triangles.

``import_walks`` reverses the process from any walk representation: it
rebuilds the planarization from walk incidences, reads rotations and edge
signs off the triangle fans, cuts the triangulation along the walks to
recover the regions, and searches the leftover gluing orientation bits so
the rebuilt drawing classifies to the original surface.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .build import drawing_from_routes
from .drawings import CombinatorialDrawing, Region, Route
from .errors import FormatError, InputError, StructureError
from .maps import Dart, RotMap
from .surfaces import (Gluing, Side, SurfaceSignature, Triangulation,
                       barycentric_subdivide, classify, topological_size,
                       triangulation_of)

Corner = tuple[int, int]


@dataclass
class WalkRep:
    """A triangulation plus edge-disjoint interior walks, one per edge."""

    triangulation: Triangulation
    walks: tuple            # (edge_id, color, tuple of concrete sides)

    def to_json_dict(self) -> dict:
        return {
            "triangles": self.triangulation.num_triangles,
            "gluings": [[list(a), list(b), rev]
                        for a, b, rev in self.triangulation.gluings],
            "walks": [{"id": eid, "color": color,
                       "sides": [list(s) for s in sides]}
                      for (eid, color, sides) in self.walks],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "WalkRep":
        try:
            t = Triangulation(
                data["triangles"],
                [(tuple(a), tuple(b), bool(rev))
                 for a, b, rev in data["gluings"]])
            walks = tuple((w["id"], w.get("color", 1),
                           tuple(tuple(s) for s in w["sides"]))
                          for w in data["walks"])
        except (KeyError, TypeError, StructureError) as exc:
            raise FormatError(f"malformed walk representation: {exc}") from None
        return cls(t, walks)


@dataclass
class Realization:
    triangulation: Triangulation
    piece_sides: dict            # piece -> tuple of sides, ordered end 0 -> 1
    vertex_corner: dict          # map vertex -> a representative Corner
    sector_corners: dict         # Corner -> (map vertex, rotation slot)


# ---------------------------------------------------------------------------
# realize
# ---------------------------------------------------------------------------


def realize(d: CombinatorialDrawing) -> Realization:
    if d.regions is None:
        raise InputError("realization needs region decorations")
    m = d.map
    if m.num_pieces == 0:
        t = triangulation_of(d.free_components) if d.free_components.components \
            else Triangulation(0, [])
        return Realization(t, {}, {}, {})

    faces = m.faces()
    polygons: list[list[dict]] = []
    cut_counter = itertools.count()

    def face_word(face_idx: int, flip: int) -> list[dict]:
        orbit = faces[face_idx]
        word = []
        for pos, st in enumerate(orbit):
            dart, _ = st
            nxt = orbit[(pos + 1) % len(orbit)]
            word.append({
                "kind": "piece", "piece": dart[0],
                "from": m.vertex_of(dart),
                "to": m.vertex_of(m.opposite(dart)),
                "forward": dart[1] == 0,
                # corner following this slot along the walk:
                "corner_after": m.corner_of_state(nxt),
            })
        if flip == -1:
            rev = []
            for pos in range(len(word) - 1, -1, -1):
                w = word[pos]
                prev = word[pos - 1]
                rev.append({
                    "kind": "piece", "piece": w["piece"],
                    "from": w["to"], "to": w["from"],
                    "forward": not w["forward"],
                    "corner_after": prev["corner_after"],
                })
            word = rev
        return word

    for r in d.regions:
        slots: list[dict] = list(face_word(r.faces[0], r.flips[0]))
        for f, fl in zip(r.faces[1:], r.flips[1:]):
            cid = ("cut", next(cut_counter))
            slots.append({"kind": "pair", "id": cid})
            slots.extend(face_word(f, fl))
            slots.append({"kind": "pair", "id": cid})
        for _ in range(r.host_circles):
            cid = ("cuth", next(cut_counter))
            slots.append({"kind": "pair", "id": cid})
            slots.append({"kind": "hole"})
            slots.append({"kind": "pair", "id": cid})
        if r.orientable:
            for _ in range(r.genus // 2):
                a = ("ha", next(cut_counter))
                b = ("hb", next(cut_counter))
                slots.extend([{"kind": "pair", "id": a}, {"kind": "pair", "id": b},
                              {"kind": "pair", "id": a}, {"kind": "pair", "id": b}])
        else:
            for _ in range(r.genus):
                c = ("cc", next(cut_counter))
                slots.extend([{"kind": "cross", "id": c}, {"kind": "cross", "id": c}])
        polygons.append(slots)

    tris = 0
    gluings: list[Gluing] = []
    slot_side: list[dict[int, Side]] = []
    corner_sector: dict[Corner, tuple] = {}
    for pi, slots in enumerate(polygons):
        if len(slots) == 1:
            # Pad with a slit (cut that closes right back) so the fan below
            # never glues a triangle to itself; a one-slot fan would.
            sid = ("slit", next(cut_counter))
            slots.extend([{"kind": "pair", "id": sid},
                          {"kind": "pair", "id": sid}])
        n = len(slots)
        # Center fan: slot j is side 1 of its own triangle, so no gluing
        # ever pairs two sides of one triangle (midpoint subdivision cannot
        # untangle those).
        mapping: dict[int, Side] = {}
        corner_at: dict[int, Corner] = {}
        base = tris
        for i in range(n):
            gluings.append(((base + i, 2), (base + (i + 1) % n, 0), True))
            mapping[i] = (base + i, 1)
            corner_at[i] = (base + i, 1)
        tris += n
        slot_side.append(mapping)
        for j, slot in enumerate(slots):
            if slot["kind"] == "piece":
                corner_sector[corner_at[(j + 1) % n]] = slot["corner_after"]

    pending: dict = {}
    piece_slots: dict[int, list[tuple[int, int]]] = {}
    for pi, slots in enumerate(polygons):
        for j, slot in enumerate(slots):
            if slot["kind"] == "piece":
                piece_slots.setdefault(slot["piece"], []).append((pi, j))
            elif slot["kind"] == "hole":
                continue
            else:
                key = (slot["kind"], slot["id"])
                if key in pending:
                    a = pending.pop(key)
                    gluings.append((slot_side[a[0]][a[1]],
                                    slot_side[pi][j],
                                    slot["kind"] == "pair"))
                else:
                    pending[key] = (pi, j)
    if pending:
        raise StructureError("unpaired polygon letters")
    piece_fwd_side: dict[int, tuple[Side, bool]] = {}
    for piece, locs in piece_slots.items():
        if len(locs) != 2:
            raise StructureError(f"piece {piece} has {len(locs)} polygon sides")
        (p1, j1), (p2, j2) = locs
        s1, s2 = polygons[p1][j1], polygons[p2][j2]
        gluings.append((slot_side[p1][j1], slot_side[p2][j2],
                        s1["forward"] != s2["forward"]))
        piece_fwd_side[piece] = (slot_side[p1][j1], s1["forward"])

    t = Triangulation(tris, gluings)
    piece_paths = {p: [side] for p, (side, _) in piece_fwd_side.items()}
    sectors = dict(corner_sector)
    for _ in range(2):
        t, piece_paths, sectors = _subdivide_tracked(t, piece_paths, sectors)
    for piece, (side, forward) in piece_fwd_side.items():
        if not forward:
            piece_paths[piece] = list(reversed(piece_paths[piece]))

    if d.free_components.components:
        extra = triangulation_of(d.free_components)
        offset = t.num_triangles
        gl = list(t.gluings) + [
            ((a[0] + offset, a[1]), (b[0] + offset, b[1]), rev)
            for (a, b, rev) in extra.gluings]
        t = Triangulation(offset + extra.num_triangles, gl)

    vertex_corner: dict = {}
    for corner, (v, slot) in sectors.items():
        vertex_corner.setdefault(v, corner)
    missing = set(range(m.num_vertices)) - set(vertex_corner)
    if missing:
        raise StructureError(f"vertices lost in realization: {missing}")
    return Realization(t, {p: tuple(path) for p, path in piece_paths.items()},
                       vertex_corner, sectors)


def _subdivide_tracked(t: Triangulation, piece_paths, sectors):
    t2 = barycentric_subdivide(t)

    def halves(side: Side) -> list[Side]:
        tt, s = side
        return [(4 * tt + s, 0), (4 * tt + (s + 1) % 3, 2)]

    new_paths = {}
    for p, path in piece_paths.items():
        out: list[Side] = []
        for side in path:
            out.extend(halves(side))
        new_paths[p] = out
    new_sectors = {(4 * tt + c, 0): val for (tt, c), val in sectors.items()}
    return t2, new_paths, new_sectors


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------


def export_walks(d: CombinatorialDrawing,
                 host: SurfaceSignature | None = None) -> WalkRep:
    """Walk representation using at most ``96 * (s + pieces)`` triangles."""
    if host is None:
        host = d.host_signature()
    elif d.host_signature() != host:
        raise InputError("drawing is not decorated for that host")
    real = realize(d)
    walks = []
    for route in d.routes:
        sides: list[Side] = []
        for dart in route.darts:
            path = real.piece_sides[dart[0]]
            sides.extend(path if dart[1] == 0 else list(reversed(path)))
        walks.append((route.edge_id, route.color, tuple(sides)))
    budget = 96 * (topological_size(host) + d.pieces_count())
    if real.triangulation.num_triangles > budget:
        raise StructureError(
            f"representation too large: {real.triangulation.num_triangles} "
            f"triangles > 96(s+u) = {budget}")
    return WalkRep(real.triangulation, tuple(walks))


# ---------------------------------------------------------------------------
# triangle fans
# ---------------------------------------------------------------------------


def vertex_fans(t: Triangulation) -> dict:
    """For each vertex class: the cyclic fan as an alternating sequence
    ``("corner", corner)`` / ``("side", side_class, exit_copy)``, plus a
    flag telling whether the fan closes (interior vertex).

    The walk direction is arbitrary per vertex; all consumers are invariant
    under flipping it.
    """
    partner = t.glued_partner()
    by_vertex: dict = {}
    for tt in range(t.num_triangles):
        for c in range(3):
            by_vertex.setdefault(t.corner_class((tt, c)), []).append((tt, c))

    def side_at(corner: Corner, which: int) -> Side:
        tt, c = corner
        return (tt, c) if which == 0 else (tt, (c + 2) % 3)

    fans = {}
    for vclass, corners in by_vertex.items():
        boundary_entries = []
        for corner in corners:
            for which in (0, 1):
                if side_at(corner, which) not in partner:
                    boundary_entries.append((corner, which))
        closed = not boundary_entries
        if closed:
            cur, entered = corners[0], 0
        else:
            cur, entered = boundary_entries[0]
        seq: list[tuple] = []
        visited = set()
        for _ in range(len(corners) + 1):
            seq.append(("corner", cur))
            visited.add(cur)
            exit_side = side_at(cur, 1 - entered)
            if exit_side not in partner:
                seq.append(("boundary", exit_side))
                break
            (t2, s2), rev = partner[exit_side]
            cls = t.side_class(exit_side)
            seq.append(("side", cls, exit_side))
            which = 1 - entered
            if which == 0:
                img = (t2, (s2 + 1) % 3) if rev else (t2, s2)
            else:
                img = (t2, s2) if rev else (t2, (s2 + 1) % 3)
            img_which = which ^ (1 if rev else 0)
            cur, entered = img, img_which
            if closed and cur == corners[0]:
                break
        if len(visited) != len(corners):
            raise StructureError("pinched vertex fan")
        fans[vclass] = (seq, closed)
    return fans


# ---------------------------------------------------------------------------
# import
# ---------------------------------------------------------------------------


def import_walks(rep: WalkRep) -> CombinatorialDrawing:
    """Rebuild the decorated drawing a walk representation stands for."""
    t = rep.triangulation
    partner = t.glued_partner()
    walk_class_owner: dict = {}
    for (eid, color, sides) in rep.walks:
        if not sides:
            raise FormatError(f"walk {eid!r} is empty")
        for s in sides:
            s = tuple(s)
            if s not in partner:
                raise FormatError("walks must stay in the interior")
            cls = t.side_class(s)
            if cls in walk_class_owner:
                raise FormatError("walks share a triangulation edge")
            walk_class_owner[cls] = eid

    def ends_of(side: Side):
        a, b = t.side_endpoints(side)
        return t.corner_class(a), t.corner_class(b)

    walk_seqs = []
    for (eid, color, sides) in rep.walks:
        sides = [tuple(s) for s in sides]
        u0, u1 = ends_of(sides[0])
        if len(sides) > 1:
            n0, n1 = ends_of(sides[1])
            start = u0 if u1 in (n0, n1) else u1
        else:
            start = u0
        seq = [start]
        cur = start
        for s in sides:
            a, b = ends_of(s)
            if cur not in (a, b):
                raise FormatError(f"walk {eid!r} is not an edge path")
            cur = b if a == cur else a
            seq.append(cur)
        walk_seqs.append((eid, color, sides, seq))

    visits: dict = {}
    walk_endpoints = set()
    for (eid, color, sides, seq) in walk_seqs:
        walk_endpoints.update((seq[0], seq[-1]))
        for v in seq[1:-1]:
            visits[v] = visits.get(v, 0) + 1
    for v in visits:
        if v in walk_endpoints:
            raise FormatError("a walk passes through a walk endpoint")
    marked = set(walk_endpoints) | {v for v, k in visits.items() if k >= 2}

    fans = vertex_fans(t)

    # Fine map over every triangulation vertex the walks touch.
    fine_id: dict = {}
    for (eid, color, sides, seq) in walk_seqs:
        for v in seq:
            fine_id.setdefault(v, len(fine_id))
    fine_pieces: list[tuple[int, int]] = []
    piece_of_class: dict = {}
    for (eid, color, sides, seq) in walk_seqs:
        for i, s in enumerate(sides):
            cls = t.side_class(s)
            piece_of_class[cls] = len(fine_pieces)
            fine_pieces.append((fine_id[seq[i]], fine_id[seq[i + 1]]))

    fine_rot: list[list[Dart]] = [[] for _ in fine_id]
    gaps: dict[int, list[list[Corner]]] = {}
    prev_copy: dict[tuple, Side] = {}
    for v, idx in fine_id.items():
        seq, closed = fans[v]
        if not closed:
            raise FormatError("walks touch the host boundary")
        entries = []              # (side class, exit copy) of walk edges, fan order
        gap_lists: list[list[Corner]] = [[]]
        for item in seq:
            if item[0] == "corner":
                gap_lists[-1].append(item[1])
            elif item[0] == "side" and item[1] in piece_of_class:
                entries.append((item[1], item[2]))
                gap_lists.append([])
        if len(gap_lists) > 1:
            gap_lists[0] = gap_lists.pop() + gap_lists[0]
        for cls, copy in entries:
            p = piece_of_class[cls]
            u, w = fine_pieces[p]
            fine_rot[idx].append((p, 0 if u == idx else 1))
            prev_copy[(cls, idx)] = copy
        gaps[idx] = gap_lists
    fine_signs = []
    for p, (u, w) in enumerate(fine_pieces):
        cls = next(c for c, pp in piece_of_class.items() if pp == p)
        a = prev_copy.get((cls, u))
        b = prev_copy.get((cls, w))
        if a is None or b is None:
            raise StructureError("triangle fan misses a walk edge")
        fine_signs.append(1 if a != b else -1)

    # Coarse map: keep marked vertices, merge pieces across the rest.
    coarse_id: dict = {}
    for v in marked:
        coarse_id[v] = len(coarse_id)
    coarse_pieces: list[tuple[int, int]] = []
    coarse_signs: list[int] = []
    dart_lift: dict[Dart, Dart] = {}
    coarse_routes = []
    for (eid, color, sides, seq) in walk_seqs:
        segs: list[list[int]] = [[]]       # indices into sides
        for i in range(len(sides)):
            segs[-1].append(i)
            if i < len(sides) - 1 and seq[i + 1] in marked:
                segs.append([])
        darts = []
        for seg in segs:
            i0, i1 = seg[0], seg[-1]
            u, w = seq[i0], seq[i1 + 1]
            if u not in marked or w not in marked:
                raise StructureError("segment endpoint unmarked")
            sign = 1
            for i in seg:
                sign *= fine_signs[piece_of_class[t.side_class(sides[i])]]
            pid = len(coarse_pieces)
            coarse_pieces.append((coarse_id[u], coarse_id[w]))
            coarse_signs.append(sign)
            first_cls = t.side_class(sides[i0])
            last_cls = t.side_class(sides[i1])
            p_first = piece_of_class[first_cls]
            p_last = piece_of_class[last_cls]
            dart_lift[(p_first, 0 if fine_pieces[p_first][0] == fine_id[u] else 1)] = (pid, 0)
            dart_lift[(p_last, 0 if fine_pieces[p_last][0] == fine_id[w] else 1)] = (pid, 1)
            darts.append((pid, 0))
        coarse_routes.append((eid, color, darts))
    coarse_rot: list[list[Dart]] = [[] for _ in coarse_id]
    coarse_gaps: dict[int, list[list[Corner]]] = {}
    for v in marked:
        fidx = fine_id[v]
        cid = coarse_id[v]
        for dart in fine_rot[fidx]:
            if dart not in dart_lift:
                raise StructureError("marked vertex has an unlifted dart")
            coarse_rot[cid].append(dart_lift[dart])
        coarse_gaps[cid] = gaps[fidx]

    walk_classes = set(walk_class_owner)
    frag_of_tri, fragments = _fragments(t, walk_classes)
    probe = drawing_from_routes(len(coarse_id), coarse_pieces, coarse_rot,
                                coarse_routes, signs=coarse_signs,
                                regions=None)
    target = classify(t)
    regions, free = _solve_regions(probe, t, frag_of_tri, fragments,
                                   coarse_gaps, walk_classes, target)
    return CombinatorialDrawing(probe.map, probe.kinds, probe.passes,
                                probe.routes, regions, free)


def _fragments(t: Triangulation, walk_classes: set):
    parent = list(range(t.num_triangles))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, b, rev) in t.gluings:
        if t.side_class(a) in walk_classes:
            continue
        ra, rb = find(a[0]), find(b[0])
        if ra != rb:
            parent[ra] = rb
    frag_of_tri = [find(x) for x in range(t.num_triangles)]
    fragments: dict[int, list[int]] = {}
    for tt in range(t.num_triangles):
        fragments.setdefault(frag_of_tri[tt], []).append(tt)
    return frag_of_tri, fragments


def fragment_cut(t: Triangulation, triangles: list,
                 drop_classes: set) -> Triangulation:
    """Sub-triangulation of a fragment, cut open along the given edges."""
    sub_ids = {tt: i for i, tt in enumerate(triangles)}
    gl = []
    for (a, b, rev) in t.gluings:
        if a[0] in sub_ids and b[0] in sub_ids and \
                t.side_class(a) not in drop_classes:
            gl.append(((sub_ids[a[0]], a[1]), (sub_ids[b[0]], b[1]), rev))
    return Triangulation(len(triangles), gl)


def _solve_regions(probe: CombinatorialDrawing, t: Triangulation,
                   frag_of_tri, fragments, coarse_gaps, walk_classes, target):
    m = probe.map
    faces = m.faces()
    face_frag: dict[int, int] = {}
    for fidx, orbit in enumerate(faces):
        v, slot = m.corner_of_state(orbit[0])
        gap_lists = coarse_gaps[v]
        gap = gap_lists[(slot + 1) % len(gap_lists)]
        frs = {frag_of_tri[c[0]] for c in gap}
        if len(frs) != 1:
            raise StructureError("face corner gap spans fragments")
        face_frag[fidx] = frs.pop()

    proto = []
    free = []
    for fid, tris in fragments.items():
        fcs = tuple(sorted(f for f, fr in face_frag.items() if fr == fid))
        sub = classify(fragment_cut(t, tris, walk_classes))
        if not fcs:
            free.extend(sub.components)
            continue
        if len(sub.components) != 1:
            raise StructureError("fragment is disconnected")
        comp = sub.components[0]
        host_circles = comp.boundary - len(fcs)
        if host_circles < 0:
            raise StructureError("more faces than fragment boundary circles")
        proto.append((fcs, comp.genus, comp.orientable, host_circles))

    choices = [list(itertools.product((1, -1), repeat=max(len(fcs) - 1, 0)))
               for (fcs, *_rest) in proto]
    for combo in itertools.product(*choices):
        regions = []
        for (fcs, genus, orientable, hc), flips in zip(proto, combo):
            regions.append(Region(fcs, genus, orientable, hc,
                                  (1,) + tuple(flips)))
        try:
            cand = CombinatorialDrawing(m, probe.kinds, probe.passes,
                                        probe.routes, regions,
                                        SurfaceSignature(free))
            if cand.host_signature() == target:
                return tuple(regions), SurfaceSignature(free)
        except StructureError:
            continue
    raise StructureError("no decoration reproduces the host surface")
