"""Cutting a host along a drawing and assembling the search complexes.

``cut_along`` opens the realized host triangulation along every piece of
the drawing.  Interior points of the drawing's strands split into one point
per local sector (an intersection of multiplicity ``m`` yields ``2m``
sector points), while each drawn graph vertex stays a single point, which
usually becomes a pinch point of the resulting 2-complex.

``ComplexAssembly`` then walks the choice tree: isolated colored edges for
the drawing's strands, extra isolated edges for planned removals, point
identifications for planned vertex splits, and finally necklace encodings
replacing every isolated edge.  Every emitted complex carries tags
describing where its special points came from, which the embedder and the
witness extractor consume.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .drawings import CombinatorialDrawing, VERTEX
from .errors import InputError, StructureError
from .surfaces import (SurfaceSignature, Triangulation, TwoComplex,
                       barycentric_subdivide, classify, singular_points,
                       triangulation_of)
from .walkrep import Realization, fragment_cut, realize, vertex_fans


def _cut_triangulation(real: Realization):
    t = real.triangulation
    cut_classes = set()
    for path in real.piece_sides.values():
        for side in path:
            cut_classes.add(t.side_class(side))
    kept = [(a, b, rev) for (a, b, rev) in t.gluings
            if t.side_class(a) not in cut_classes]
    return Triangulation(t.num_triangles, kept), cut_classes


def _subdivide_labels(labels: dict) -> dict:
    return {(4 * tt + c, 0): val for (tt, c), val in labels.items()}


def cut_along(d: CombinatorialDrawing) -> TwoComplex:
    """The 2-complex obtained by cutting the host along the drawing."""
    real = realize(d)
    sector_label = dict(real.sector_corners)       # corner -> (map vertex, slot)
    cut_t, cut_classes = _cut_triangulation(real)
    host_t = real.triangulation

    for _ in range(3):
        complex_, ok = _complex_from_cut(d, host_t, cut_t, cut_classes,
                                         sector_label)
        if ok:
            return complex_
        host_t2 = barycentric_subdivide(host_t)
        sector_label = _subdivide_labels(sector_label)
        new_cut_classes = set()
        for cls in cut_classes:
            tt, s = cls
            for half in ((4 * tt + s, 0), (4 * tt + (s + 1) % 3, 2)):
                new_cut_classes.add(host_t2.side_class(half))
        host_t = host_t2
        cut_classes = new_cut_classes
        cut_t = Triangulation(host_t.num_triangles,
                              [(a, b, rev) for (a, b, rev) in host_t.gluings
                               if host_t.side_class(a) not in new_cut_classes])
    raise StructureError("cut complex could not be made simplicial")


def _complex_from_cut(d, host_t, cut_t, cut_classes, sector_label):
    # Vertex classes of the cut triangulation, then merge the sectors of
    # each drawn graph vertex back into a single point.
    class_of: dict = {}
    for tt in range(cut_t.num_triangles):
        for c in range(3):
            class_of[(tt, c)] = cut_t.corner_class((tt, c))
    merge: dict = {}
    node_of_vertex: dict = {}
    sector_of_class: dict = {}
    for corner, (v, slot) in sector_label.items():
        cls = class_of[corner]
        sector_of_class.setdefault(cls, (v, slot))
        if d.kinds[v] == VERTEX:
            key = ("node", v)
            node_of_vertex[v] = key
            merge[cls] = key

    def vid(cls):
        return merge.get(cls, ("pt", cls))

    vertices = set()
    edges: dict = {}
    edge_id_of_pair: dict = {}
    for tt in range(cut_t.num_triangles):
        for c in range(3):
            vertices.add(vid(class_of[(tt, c)]))
    partner = cut_t.glued_partner()
    for tt in range(cut_t.num_triangles):
        for s in range(3):
            side = (tt, s)
            if side in partner and partner[side][0] < side:
                continue
            a, b = cut_t.side_endpoints(side)
            u, w = vid(class_of[a]), vid(class_of[b])
            if u == w:
                return None, False          # loop after merging: subdivide
            pair = frozenset((u, w))
            if pair in edge_id_of_pair:
                return None, False          # parallel edge: subdivide
            eid = ("s", len(edges))
            edge_id_of_pair[pair] = eid
            edges[eid] = pair
    triangles = []
    for tt in range(cut_t.num_triangles):
        tri = {vid(class_of[(tt, c)]) for c in range(3)}
        if len(tri) != 3:
            return None, False
        triangles.append(frozenset(tri))

    # Interior representatives per fragment (for removal/split points).
    boundary_classes = set()
    for tt in range(cut_t.num_triangles):
        for s in range(3):
            if (tt, s) not in partner:
                a, b = cut_t.side_endpoints((tt, s))
                boundary_classes.add(class_of[a])
                boundary_classes.add(class_of[b])
    frag_of_tri = _fragment_ids(cut_t)
    interior_reps: dict = {}
    for tt in range(cut_t.num_triangles):
        fid = frag_of_tri[tt]
        for c in range(3):
            cls = class_of[(tt, c)]
            if cls in boundary_classes or cls in sector_of_class:
                continue
            reps = interior_reps.setdefault(fid, [])
            node = vid(cls)
            if node not in reps and len(reps) < 12:
                reps.append(node)

    sector_probe: dict = {}
    for tt in range(cut_t.num_triangles):
        for s in range(3):
            a, b = cut_t.side_endpoints((tt, s))
            for x, y in ((a, b), (b, a)):
                cls = class_of[x]
                if cls in sector_of_class and vid(cls)[0] == "node":
                    key = sector_of_class[cls]
                    sector_probe.setdefault(key, vid(class_of[y]))

    out = TwoComplex(vertices, edges, triangles)
    out.validate()
    out.tags = {
        "drawing_nodes": {("node", v): v for v in node_of_vertex},
        "interior_reps": interior_reps,
        "sector_probe": sector_probe,
        "edge_slots": {},
        "necklaces": {},
    }
    return out, True


def _fragment_ids(cut_t: Triangulation) -> list[int]:
    parent = list(range(cut_t.num_triangles))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, b, _) in cut_t.gluings:
        ra, rb = find(a[0]), find(b[0])
        if ra != rb:
            parent[ra] = rb
    return [find(x) for x in range(cut_t.num_triangles)]


def host_complex(host: SurfaceSignature) -> TwoComplex:
    """The complex of the bare host (cut along the empty drawing)."""
    t = triangulation_of(host) if host.components else Triangulation(0, [])
    vertices = set()
    edges: dict = {}
    pair_ids: dict = {}
    triangles = []
    for tt in range(t.num_triangles):
        tri = []
        for c in range(3):
            tri.append(("pt", t.corner_class((tt, c))))
        vertices.update(tri)
        triangles.append(frozenset(tri))
    partner = t.glued_partner()
    for tt in range(t.num_triangles):
        for s in range(3):
            if (tt, s) in partner and partner[(tt, s)][0] < (tt, s):
                continue
            a, b = t.side_endpoints((tt, s))
            pair = frozenset((("pt", t.corner_class(a)), ("pt", t.corner_class(b))))
            if pair not in pair_ids:
                pair_ids[pair] = ("s", len(edges))
                edges[pair_ids[pair]] = pair
    frag = _fragment_ids(t)
    boundary_classes = set()
    for tt in range(t.num_triangles):
        for s in range(3):
            if (tt, s) not in partner:
                a, b = t.side_endpoints((tt, s))
                boundary_classes.add(t.corner_class(a))
                boundary_classes.add(t.corner_class(b))
    reps: dict = {}
    for tt in range(t.num_triangles):
        for c in range(3):
            cls = t.corner_class((tt, c))
            if cls in boundary_classes:
                continue
            lst = reps.setdefault(frag[tt], [])
            node = ("pt", cls)
            if node not in lst and len(lst) < 12:
                lst.append(node)
    out = TwoComplex(vertices, edges, triangles)
    out.validate()
    out.tags = {"drawing_nodes": {}, "interior_reps": reps,
                "sector_probe": {}, "edge_slots": {}, "necklaces": {}}
    return out


# ---------------------------------------------------------------------------
# Building on the cut complex
# ---------------------------------------------------------------------------


def add_isolated_chain(c: TwoComplex, u, v, color: int, tag) -> list:
    """Add an isolated edge as a subdivided chain between existing points."""
    if u not in c.vertices or v not in c.vertices:
        raise InputError("chain endpoints must be complex vertices")
    n = 3 if u == v else 2
    mids = [("iso", tag, i) for i in range(n - 1)]
    stops = [u] + mids + [v]
    ids = []
    for i in range(len(stops) - 1):
        eid = ("iso", tag, "e", i)
        pair = frozenset((stops[i], stops[i + 1]))
        c.edges[eid] = pair
        c.isolated_colors[eid] = color
        ids.append(eid)
    c.vertices.update(mids)
    c.tags.setdefault("edge_slots", {})[tag] = {
        "u": u, "v": v, "color": color, "edges": ids, "mids": mids}
    return ids


def identify_points(c: TwoComplex, points: Sequence) -> object:
    """Identify several existing points into one (reversing vertex splits)."""
    points = list(points)
    target = points[0]
    rename = {p: target for p in points[1:]}
    new_edges = {}
    for eid, pair in c.edges.items():
        u, w = tuple(pair)
        u2, w2 = rename.get(u, u), rename.get(w, w)
        if u2 == w2:
            raise StructureError("identification would create a loop edge")
        new_edges[eid] = frozenset((u2, w2))
    seen_pairs = set()
    for pair in new_edges.values():
        if pair in seen_pairs:
            raise StructureError("identification would create a parallel edge")
        seen_pairs.add(pair)
    c.edges = new_edges
    c.triangles = [frozenset(rename.get(x, x) for x in tri)
                   for tri in c.triangles]
    c.vertices = {rename.get(x, x) for x in c.vertices}
    c.tags.setdefault("identified", []).append(
        {"target": target, "points": points})
    for key in ("drawing_nodes",):
        tagmap = c.tags.get(key, {})
        for p in points[1:]:
            if p in tagmap:
                tagmap[target] = tagmap.pop(p)
    return target


def necklace_encode(c: TwoComplex, thickness_of_color, beads_of_color) -> None:
    """Replace every isolated-edge slot with a necklace of its color's type."""
    slots = c.tags.get("edge_slots", {})
    for tag, info in sorted(slots.items(), key=lambda kv: str(kv[0])):
        color = info["color"]
        h = thickness_of_color(color)
        k = beads_of_color(color)
        for eid in info["edges"]:
            del c.edges[eid]
            del c.isolated_colors[eid]
        for mid in info["mids"]:
            c.vertices.discard(mid)
        u, v = info["u"], info["v"]
        a, b = ("nk", tag, "a"), ("nk", tag, "b")
        c.vertices.update((a, b))
        wires = []
        for stop0, stop1, name in ((u, a, "ua"), (a, b, "ab"), (b, v, "bv")):
            for j in range(h):
                mid = ("nk", tag, name, j)
                c.vertices.add(mid)
                for i, pair in enumerate(((stop0, mid), (mid, stop1))):
                    eid = ("nk", tag, name, j, i)
                    c.edges[eid] = frozenset(pair)
                    c.isolated_colors[eid] = color
                    wires.append(eid)
        for hub, name in ((a, "la"), (b, "lb")):
            for j in range(k):
                p, q = ("nk", tag, name, j, "p"), ("nk", tag, name, j, "q")
                c.vertices.update((p, q))
                for i, pair in enumerate(((hub, p), (p, q), (q, hub))):
                    eid = ("nk", tag, name, j, i)
                    c.edges[eid] = frozenset(pair)
                    c.isolated_colors[eid] = color
                    wires.append(eid)
        c.tags.setdefault("necklaces", {})[tag] = {
            "u": u, "v": v, "hubs": (a, b), "type": (h, k), "color": color,
            "edges": wires}
    c.tags["edge_slots"] = {}


# ---------------------------------------------------------------------------
# The full choice tree
# ---------------------------------------------------------------------------


@dataclass
class AssemblyChoice:
    """Metadata identifying one emitted complex, kept for witnesses."""

    removal_pairs: tuple        # per color: tuple of (x, y) point descriptors
    partition: tuple            # partition of the split budget
    merge_groups: tuple         # tuple of point-descriptor tuples


def _point_menu(c: TwoComplex, extra: int):
    """Selectable points: drawing endpoints and per-fragment interior slots.

    Returns descriptors; interior descriptors are ("frag", fid, i) with i
    indexing distinct fresh points inside the same fragment.
    """
    menu = [("node", v) for v in sorted(c.tags.get("drawing_nodes", {}).values(),
                                        key=str)]
    for fid in sorted(c.tags.get("interior_reps", {}), key=str):
        for i in range(extra):
            menu.append(("frag", fid, i))
    return menu


def _resolve_point(c: TwoComplex, desc):
    if desc[0] == "node":
        for node, v in c.tags["drawing_nodes"].items():
            if v == desc[1]:
                return node
        raise InputError(f"unknown drawing node {desc!r}")
    _, fid, i = desc
    reps = c.tags["interior_reps"][fid]
    if i >= len(reps):
        raise StructureError("fragment ran out of interior slots")
    return reps[i]


def assemble_complexes(base: TwoComplex, drawing: CombinatorialDrawing,
                       p: int, q: Sequence[int],
                       thickness_of_color, beads_of_color):
    """Yield every complex of the reduction for one candidate drawing.

    Each yield is ``(complex, AssemblyChoice)``; the complex already has its
    isolated edges replaced by necklaces.
    """
    q = list(q)
    slots_budget = 2 * (sum(q) + p) + 2
    menu = _point_menu(base, slots_budget)

    removal_allocations = _removal_choices(menu, q)
    for removal in removal_allocations:
        for partition, merges in _merge_choices(menu, p, removal):
            c = base.copy()
            c.tags.setdefault("edge_slots", {})
            for route in drawing.routes:
                u = ("node", drawing.map.vertex_of(route.darts[0]))
                v = ("node", drawing.map.vertex_of(
                    drawing.map.opposite(route.darts[-1])))
                add_isolated_chain(c, u, v, route.color,
                                   ("strand", route.edge_id))
            try:
                for color_idx, pairs in enumerate(removal):
                    for j, (xd, yd) in enumerate(pairs):
                        x = _resolve_point(c, xd)
                        y = _resolve_point(c, yd)
                        add_isolated_chain(c, x, y, color_idx + 1,
                                           ("removal", color_idx + 1, j))
                for group in merges:
                    identify_points(c, [_resolve_point(c, g) for g in group])
            except StructureError:
                continue
            necklace_encode(c, thickness_of_color, beads_of_color)
            try:
                c.validate()
            except StructureError:
                continue
            yield c, AssemblyChoice(tuple(tuple(r) for r in removal),
                                    tuple(partition),
                                    tuple(tuple(g) for g in merges))


def _removal_choices(menu, q: list[int]):
    """All ways to pin the endpoints of the removal slots onto the menu.

    Points may coincide (an isolated edge may be a loop) and may repeat
    across slots; interior descriptors with different indices stand for
    distinct points of the same fragment.
    """
    per_color = []
    for qi in q:
        pair_options = list(
            itertools.combinations_with_replacement(menu, 2))
        per_color.append(list(
            itertools.combinations_with_replacement(pair_options, qi)))
    for combo in itertools.product(*per_color):
        yield [list(pairs) for pairs in combo]


def _partitions_of(p: int):
    if p == 0:
        yield ()
        return
    def rec(n, mx):
        if n == 0:
            yield ()
            return
        for first in range(min(n, mx), 0, -1):
            for rest in rec(n - first, first):
                yield (first,) + rest
    yield from rec(p, p)


def _merge_choices(menu, p: int, removal):
    used_interior = {d for pairs in removal for pt in pairs for d in pt
                     if d[0] == "frag"}
    for partition in _partitions_of(p):
        if not partition:
            yield (), ()
            continue
        needed = [k + 1 for k in partition]
        pools = [menu] * len(needed)
        for groups in _distinct_groups(menu, needed):
            yield partition, groups


def _distinct_groups(menu, sizes: list[int]):
    """Pairwise-disjoint point groups of the given sizes from the menu."""
    def rec(i, taken):
        if i == len(sizes):
            yield ()
            return
        for group in itertools.combinations(
                [x for x in menu if x not in taken], sizes[i]):
            for rest in rec(i + 1, taken | set(group)):
                yield (group,) + rest
    yield from rec(0, set())
