"""Convenience constructors for drawings.

Pass pairings and vertex kinds are implied by the routes, so most callers
only describe the planarization, the rotations, and the routes.
"""

from __future__ import annotations

from typing import Sequence

from .drawings import CROSSING, VERTEX, CombinatorialDrawing, Region, Route
from .errors import StructureError
from .maps import Dart, RotMap
from .surfaces import SurfaceSignature


def drawing_from_routes(num_vertices: int, pieces: Sequence[tuple[int, int]],
                        rot: Sequence[Sequence[Dart]],
                        routes: Sequence[tuple],
                        signs: Sequence[int] | None = None,
                        regions: Sequence[Region] | None = None,
                        host: SurfaceSignature | None = None,
                        free_components: SurfaceSignature | None = None,
                        outer_face: int | None = None) -> CombinatorialDrawing:
    """Build a drawing from routes given as ``(edge_id, color, darts)``.

    When ``regions`` is omitted but ``host`` is given, every face becomes
    its own genus-0 region (a cellular decoration) and the host's extra
    genus or boundary circles go into ``outer_face`` (default: the last
    face).  With neither, the drawing is left undecorated.
    """
    rmap = RotMap(num_vertices, pieces, rot, signs)
    route_objs = [Route(eid, color, tuple(tuple(d) for d in darts))
                  for (eid, color, darts) in routes]
    kinds = [VERTEX] * num_vertices
    interior: set[int] = set()
    for r in route_objs:
        for d in r.darts[:-1]:
            interior.add(rmap.vertex_of(rmap.opposite(d)))
    for v in interior:
        kinds[v] = CROSSING
    passes: dict[int, list[tuple[Dart, Dart]]] = {}
    for r in route_objs:
        for i in range(len(r.darts) - 1):
            arrive = rmap.opposite(r.darts[i])
            depart = r.darts[i + 1]
            v = rmap.vertex_of(arrive)
            passes.setdefault(v, []).append(tuple(sorted((arrive, depart))))
    if regions is None and host is not None:
        nf = rmap.num_faces()
        extra_genus = host.genus
        extra_b = host.boundary
        orientable = host.is_orientable()
        if nf == 0:
            regions = []
        else:
            target = outer_face if outer_face is not None else nf - 1
            regions = []
            for f in range(nf):
                if f == target:
                    regions.append(Region((f,), extra_genus, orientable, extra_b))
                else:
                    regions.append(Region((f,)))
    d = CombinatorialDrawing(rmap, kinds,
                             {v: tuple(p) for v, p in passes.items()},
                             route_objs, regions, free_components)
    if host is not None and d.host_signature() != host:
        raise StructureError(
            f"decorations classify as {d.host_signature().to_json_dict()}, "
            f"expected {host.to_json_dict()}")
    return d


def two_edges_one_crossing(host: SurfaceSignature | None = None,
                           colors: tuple[int, int] = (1, 1)) -> CombinatorialDrawing:
    """Two independent edges meeting in a single genuine crossing."""
    host = host or SurfaceSignature.sphere()
    return drawing_from_routes(
        5,
        pieces=[(0, 4), (4, 1), (2, 4), (4, 3)],
        rot=[[(0, 0)], [(1, 1)], [(2, 0)], [(3, 1)],
             [(0, 1), (2, 1), (1, 0), (3, 0)]],
        routes=[("e1", colors[0], [(0, 0), (1, 0)]),
                ("e2", colors[1], [(2, 0), (3, 0)])],
        host=host)


def two_edges_one_tangency(host: SurfaceSignature | None = None) -> CombinatorialDrawing:
    """Same strands, but the passes do not interleave at the meeting point."""
    host = host or SurfaceSignature.sphere()
    return drawing_from_routes(
        5,
        pieces=[(0, 4), (4, 1), (2, 4), (4, 3)],
        rot=[[(0, 0)], [(1, 1)], [(2, 0)], [(3, 1)],
             [(0, 1), (1, 0), (2, 1), (3, 0)]],
        routes=[("e1", 1, [(0, 0), (1, 0)]),
                ("e2", 1, [(2, 0), (3, 0)])],
        host=host)


def self_crossing_loop(host: SurfaceSignature | None = None,
                       color: int = 1) -> CombinatorialDrawing:
    """One edge from a vertex back to itself crossing itself once."""
    host = host or SurfaceSignature.sphere()
    return drawing_from_routes(
        2,
        pieces=[(0, 1), (1, 1), (1, 0)],
        rot=[[(0, 0), (2, 1)],
             [(0, 1), (1, 1), (1, 0), (2, 0)]],
        routes=[("e", color, [(0, 0), (1, 0), (2, 0)])],
        host=host)


def two_edges_crossing_twice(host: SurfaceSignature | None = None,
                             colors: tuple[int, int] = (1, 1)) -> CombinatorialDrawing:
    """Two edges that cross each other in two genuine crossings."""
    host = host or SurfaceSignature.sphere()
    return drawing_from_routes(
        6,
        pieces=[(0, 4), (4, 5), (5, 1), (2, 4), (4, 5), (5, 3)],
        rot=[[(0, 0)], [(2, 1)], [(3, 0)], [(5, 1)],
             [(0, 1), (3, 1), (1, 0), (4, 0)],
             [(1, 1), (4, 1), (2, 0), (5, 0)]],
        routes=[("e1", colors[0], [(0, 0), (1, 0), (2, 0)]),
                ("e2", colors[1], [(3, 0), (4, 0), (5, 0)])],
        host=host)


def three_pairwise_crossing_edges(host: SurfaceSignature | None = None) -> CombinatorialDrawing:
    """Three edges, each pair crossing once (a triangle of crossings)."""
    host = host or SurfaceSignature.sphere()
    # Crossings: x=6 (e1,e2), y=7 (e1,e3), z=8 (e2,e3); endpoints 0..5.
    return drawing_from_routes(
        9,
        pieces=[(0, 6), (6, 7), (7, 1),          # e1
                (2, 6), (6, 8), (8, 3),          # e2
                (4, 7), (7, 8), (8, 5)],         # e3
        rot=[[(0, 0)], [(2, 1)], [(3, 0)], [(5, 1)], [(6, 0)], [(8, 1)],
             [(0, 1), (3, 1), (1, 0), (4, 0)],
             [(1, 1), (6, 1), (2, 0), (7, 0)],
             [(4, 1), (7, 1), (5, 0), (8, 0)]],
        routes=[("e1", 1, [(0, 0), (1, 0), (2, 0)]),
                ("e2", 1, [(3, 0), (4, 0), (5, 0)]),
                ("e3", 1, [(6, 0), (7, 0), (8, 0)])],
        host=host)
