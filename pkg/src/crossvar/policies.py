"""The catalog of crossing-counting policies.

A policy scores a drawing with a value in ``Z+ ∪ {inf}`` (``inf`` meaning
"not an allowed drawing") and provides the piece bound: a non-decreasing
function bounding the piece count of any fully-crossing drawing by its
score.  The two together drive both candidate enumeration and the solver's
correctness contract:

* the score never increases when vertices or edges are removed, when
  disjoint vertices or crossing-free edges are added, or under
  homeomorphisms of the host;
* a fully-crossing drawing with finite score ``v`` has at most
  ``piece_bound(v)`` pieces.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .drawings import CombinatorialDrawing, restrict_to_edges, remove_vertex
from .errors import FormatError, InputError
from .maps import Dart

INFEASIBLE = math.inf

VARIANTS = (
    "traditional", "k-planar", "k-quasi-planar", "min-k-planar", "k-gap",
    "fan-crossing", "weak-fan-planar", "strong-fan-planar", "k-intersecting",
    "color-matrix", "edge-count", "pair", "odd",
)

_NEEDS_K = {"k-planar", "k-quasi-planar", "min-k-planar", "k-gap",
            "k-intersecting"}


@dataclass(frozen=True)
class Policy:
    variant: str
    k: int | None = None
    matrix: tuple[tuple[int, ...], ...] | None = None
    colors: int = 1
    simple: bool = False

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise InputError(f"unknown policy variant {self.variant!r}")
        if self.variant in _NEEDS_K:
            if self.k is None or self.k < (2 if self.variant == "k-intersecting" else 1):
                raise InputError(f"{self.variant} needs a parameter k")
        elif self.k is not None:
            raise InputError(f"{self.variant} takes no parameter k")
        if self.variant == "color-matrix":
            if self.matrix is None:
                raise InputError("color-matrix needs a matrix")
            m = tuple(tuple(int(x) for x in row) for row in self.matrix)
            if len(m) != self.colors or any(len(r) != self.colors for r in m):
                raise InputError("matrix must be colors x colors")
            if any(m[i][j] != m[j][i] for i in range(len(m)) for j in range(len(m))):
                raise InputError("matrix must be symmetric")
            if any(x < 0 for row in m for x in row):
                raise InputError("matrix entries must be non-negative")
            object.__setattr__(self, "matrix", m)
        elif self.matrix is not None:
            raise InputError(f"{self.variant} takes no matrix")

    def to_json_dict(self) -> dict:
        out: dict = {"variant": self.variant, "colors": self.colors}
        if self.k is not None:
            out["k"] = self.k
        if self.matrix is not None:
            out["matrix"] = [list(r) for r in self.matrix]
        if self.simple:
            out["simple"] = True
        return out

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "Policy":
        try:
            return cls(variant=data["variant"], k=data.get("k"),
                       matrix=tuple(tuple(r) for r in data["matrix"])
                       if "matrix" in data else None,
                       colors=int(data.get("colors", 1)),
                       simple=bool(data.get("simple", False)))
        except (KeyError, TypeError) as exc:
            raise FormatError(f"malformed policy JSON: {exc}") from None
        except InputError as exc:
            raise FormatError(str(exc)) from None


def traditional(colors: int = 1) -> Policy:
    return Policy("traditional", colors=colors)


# ---------------------------------------------------------------------------
# Piece bound (the non-decreasing companion function)
# ---------------------------------------------------------------------------


def piece_bound(policy: Policy, i: int) -> int:
    """Maximum piece count of a fully-crossing drawing scoring ``i``."""
    if i < 0:
        raise InputError("piece bound takes a non-negative argument")
    v = policy.variant
    if v == "k-intersecting":
        return 2 * policy.k * i
    if v == "edge-count":
        return 4 * math.comb(i, 2)
    if v in ("pair", "odd"):
        return 4 * max(i * 2 ** i, 9 ** i)
    return 4 * i


# ---------------------------------------------------------------------------
# Scoring
# ---------------------------------------------------------------------------


def policy_value(policy: Policy, d: CombinatorialDrawing,
                 host=None) -> int | float:
    """Score a drawing: the generalized crossing count, or ``inf``.

    ``host`` is only consulted by the strongly fan-planar variant, which
    needs the boundary-marked face; all other variants are purely local to
    the crossing structure.
    """
    if policy.variant == "color-matrix":
        colors = d.edge_colors().values()
        if any(col > policy.colors for col in colors):
            raise InputError("drawing uses colors outside the policy range")
    report = d.analyze()
    if policy.simple and not report.simple:
        return INFEASIBLE
    v = policy.variant

    if v == "k-intersecting":
        if any(p.multiplicity > policy.k for p in report.points):
            return INFEASIBLE
        return len(report.points)

    if v == "edge-count":
        carrying = set()
        for p in report.points:
            carrying.update(p.edges)
        ell = len(carrying)
        if d.pairwise_intersection_count() > math.comb(ell, 2):
            return INFEASIBLE
        return ell

    if not report.normal:
        return INFEASIBLE
    ncross = report.crossings()

    if v == "traditional":
        return ncross
    if v == "k-planar":
        if any(cnt > policy.k for cnt in report.edge_crossings.values()):
            return INFEASIBLE
        return ncross
    if v == "k-quasi-planar":
        crossers = sorted({e for pair in report.crossing_pairs for e in _unkey(pair, d)})
        rel = {frozenset(_unkey(pair, d)) for pair in report.crossing_pairs
               if len(_unkey(pair, d)) == 2}
        for group in itertools.combinations(crossers, policy.k):
            if all(frozenset((a, b)) in rel
                   for a, b in itertools.combinations(group, 2)):
                return INFEASIBLE
        return ncross
    if v == "min-k-planar":
        cnt = report.edge_crossings
        for p in report.points:
            if p.kind != "crossing":
                continue
            e1, e2 = p.edges
            if e1 == e2:
                continue
            if cnt[e1] > policy.k and cnt[e2] > policy.k:
                return INFEASIBLE
        return ncross
    if v == "k-gap":
        if not _gap_assignment_exists(report, policy.k):
            return INFEASIBLE
        return ncross
    if v == "color-matrix":
        mat = d.color_crossing_matrix(policy.colors)
        for i in range(policy.colors):
            for j in range(policy.colors):
                if mat[i][j] > policy.matrix[i][j]:
                    return INFEASIBLE
        return ncross
    if v in ("fan-crossing", "weak-fan-planar", "strong-fan-planar"):
        return _fan_value(policy, d, report, host)
    if v in ("pair", "odd"):
        pair_counts: dict[frozenset, int] = {}
        for p in report.points:
            e1, e2 = p.edges
            if e1 == e2:
                continue
            pair_counts[frozenset((e1, e2))] = pair_counts.get(
                frozenset((e1, e2)), 0) + 1
        if v == "pair":
            ell = len(pair_counts)
        else:
            ell = sum(1 for c in pair_counts.values() if c % 2 == 1)
        if ncross > max(ell * 2 ** ell, 9 ** ell):
            return INFEASIBLE
        return ell
    raise InputError(f"unknown policy variant {v!r}")


def _unkey(pair_key: tuple, d: CombinatorialDrawing) -> tuple:
    ids = {str(r.edge_id): r.edge_id for r in d.routes}
    a, b = pair_key
    return tuple({ids[a], ids[b]})


def _gap_assignment_exists(report, k: int) -> bool:
    """Can every crossing be charged to one of its edges, at most k each?"""
    crossings = [p for p in report.points if p.kind == "crossing"]
    load: dict = {}
    assign: dict[int, object] = {}

    def try_place(i: int, banned: set) -> bool:
        for e in crossings[i].edges:
            if load.get(e, 0) < k:
                assign[i] = e
                load[e] = load.get(e, 0) + 1
                return True
        for e in crossings[i].edges:
            if e in banned:
                continue
            # Free a slot on e by relocating some other crossing.
            for j, f in list(assign.items()):
                if f != e:
                    continue
                load[e] -= 1
                del assign[j]
                if try_place(j, banned | {e}):
                    assign[i] = e
                    load[e] = load.get(e, 0) + 1
                    return True
                assign[j] = e
                load[e] += 1
        return False

    for i in range(len(crossings)):
        if not try_place(i, set()):
            return False
    return True


# -- fan variants ------------------------------------------------------------


def _fan_value(policy: Policy, d: CombinatorialDrawing, report, host):
    graph = d.drawn_graph()
    ends = {e.id: (e.u, e.v) for e in graph.edges}
    fans: dict[object, list] = {}
    for p in report.points:
        e1, e2 = p.edges
        if e1 == e2:
            return INFEASIBLE     # a self-crossing strand is nobody's fan
        fans.setdefault(e1, []).append((p.vertex, e2))
        fans.setdefault(e2, []).append((p.vertex, e1))
    for e, items in fans.items():
        partners = [f for (_, f) in items]
        common = set(ends[partners[0]])
        for f in partners[1:]:
            common &= set(ends[f])
        if not common:
            return INFEASIBLE
    ncross = report.crossings()
    if policy.variant == "fan-crossing":
        return ncross

    # Weak condition: arcs from the shared fan vertex approach each crossed
    # edge from one side only.
    for e, items in fans.items():
        partners = [f for (_, f) in items]
        common = set(ends[partners[0]])
        for f in partners[1:]:
            common &= set(ends[f])
        for v in common:
            sides = {}
            ok = True
            for (x, f) in items:
                s = _side_of_approach(d, e, f, x, v)
                if s is None:
                    continue
                sides.setdefault(f, s)
            vals = set(sides.values())
            if len(vals) > 1:
                return INFEASIBLE
        # one shared vertex suffices; if several, any consistent one works
    if policy.variant == "weak-fan-planar":
        return ncross

    if host is None or host.boundary != 1:
        return INFEASIBLE     # the enclosure test needs one marked boundary
    for e, items in fans.items():
        byf: dict[object, list] = {}
        for (x, f) in items:
            byf.setdefault(f, []).append(x)
        fs = sorted(byf, key=str)
        for f1, f2 in itertools.combinations(fs, 2):
            if _encloses_both_ends(d, e, f1, f2):
                return INFEASIBLE
    return ncross


def _orientation_along(d: CombinatorialDrawing, route) -> list[int]:
    """Carried local orientation when arriving at each interior stop."""
    m = d.map
    out = []
    sigma = 1
    for dart in route.darts[:-1]:
        sigma *= m.signs[dart[0]]
        out.append(sigma)
    return out


def _side_of_approach(d: CombinatorialDrawing, e, f, x: int, v) -> int | None:
    """Which side of ``e`` the strand of ``f`` coming from ``v`` lies on at
    crossing ``x``; consistent along ``e`` up to one global flip."""
    m = d.map
    re = d.route_by_id(e)
    rf = d.route_by_id(f)
    stops_e = d.pass_vertices_of_route(re)
    if x not in stops_e:
        return None
    i = stops_e.index(x)
    arrive_e = m.opposite(re.darts[i])
    depart_e = re.darts[i + 1]
    sigma = _orientation_along(d, re)[i]
    stops_f = d.pass_vertices_of_route(rf)
    j = stops_f.index(x)
    u0 = m.vertex_of(rf.darts[0])
    toward_v = m.opposite(rf.darts[j]) if u0 == v else rf.darts[j + 1]
    order = m.rot[x]
    pos = {dd: idx for idx, dd in enumerate(order)}
    n = len(order)
    span = (pos[depart_e] - pos[arrive_e]) % n
    rel = (pos[toward_v] - pos[arrive_e]) % n
    side = 1 if 0 < rel < span else -1
    return side * sigma


def _subdrawing_faces(d: CombinatorialDrawing, keep_pieces: set):
    """Face orbits of a sub-collection of pieces, traced on the full map by
    skipping darts outside the sub-collection."""
    m = d.map

    def next_kept(dart: Dart, sense: int) -> Dart:
        cur = dart
        for _ in range(2 * m.num_pieces + 1):
            cur = m.rot_step(cur, sense)
            if cur[0] in keep_pieces:
                return cur
        raise InputError("vertex without kept darts")

    def step(state):
        dart, s = state
        a = m.opposite(dart)
        s2 = s * m.signs[dart[0]]
        return (next_kept(a, s2), s2)

    states = {(dd, s) for dd in m.darts() if dd[0] in keep_pieces
              for s in (1, -1)}
    orbits = []
    while states:
        st = min(states)
        orbit = [st]
        cur = step(st)
        while cur != st:
            orbit.append(cur)
            cur = step(cur)
        states -= set(orbit)
        orbits.append(orbit)
    return orbits


def _encloses_both_ends(d: CombinatorialDrawing, e, f1, f2) -> bool:
    """Do the three strands fence off both endpoints of ``e`` from the
    boundary-marked face?"""
    m = d.map
    keep = set()
    for eid in (e, f1, f2):
        for dart in d.route_by_id(eid).darts:
            keep.add(dart[0])
    orbits = _subdrawing_faces(d, keep)
    # Locate the sub-face that absorbs the boundary-marked region.
    outer_faces = set()
    for r in d.regions or ():
        if r.host_circles:
            outer_faces.update(r.faces)
    if not outer_faces:
        return True
    full_faces = m.faces()
    marked_states = set()
    for fidx in outer_faces:
        for st in full_faces[fidx]:
            marked_states.add(st)
            marked_states.add(m.mirror(st))
    outer_orbit_ids = set()
    for oi, orbit in enumerate(orbits):
        o_states = set(orbit) | {m.mirror(s) for s in orbit}
        # A full-drawing face lies inside this sub-face when rotating from
        # one of its states reaches this orbit without crossing kept pieces.
        for st in marked_states:
            dart, s = st
            if dart[0] in keep and st in o_states:
                outer_orbit_ids.add(oi)
    if not outer_orbit_ids:
        # The marked region touches no kept piece: walk from a marked corner
        # to the nearest kept dart.
        for fidx in outer_faces:
            st = full_faces[fidx][0]
            dart, s = st
            v = m.vertex_of(dart)
            cur = dart
            for _ in range(2 * m.num_pieces + 1):
                if cur[0] in keep:
                    break
                cur = m.rot_step(cur, s)
            else:
                return False      # subdrawing entirely elsewhere: no fence
            for oi, orbit in enumerate(orbits):
                o_states = set(orbit) | {m.mirror(x) for x in orbit}
                if (cur, s) in o_states:
                    outer_orbit_ids.add(oi)
    ends = set()
    re = d.route_by_id(e)
    ends.add(m.vertex_of(re.darts[0]))
    ends.add(m.vertex_of(m.opposite(re.darts[-1])))
    for oi in outer_orbit_ids:
        for st in orbits[oi]:
            if m.vertex_of(st[0]) in ends:
                ends.discard(m.vertex_of(st[0]))
    return bool(ends)


# ---------------------------------------------------------------------------
# Axiom suite
# ---------------------------------------------------------------------------


@dataclass
class AxiomViolation:
    policy: Policy
    drawing_index: int
    check: str
    detail: str


def fully_crossing(d: CombinatorialDrawing) -> bool:
    if d.is_empty():
        return True
    owner = d.route_of_piece()
    touched = set()
    for v in d.intersection_vertices():
        for pair in d.passes[v]:
            touched.add(owner[pair[0][0]][0])
    return touched == {r.edge_id for r in d.routes}


def axiom_suite(policy: Policy, sample: Sequence[CombinatorialDrawing],
                host=None) -> list[AxiomViolation]:
    """Check the defining conditions of a crossing-counting policy on a
    sample: monotone under deletions, and the piece bound on fully-crossing
    drawings.  Returns all violations found."""
    bad: list[AxiomViolation] = []
    for idx, d in enumerate(sample):
        base = policy_value(policy, d, host)
        for route in d.routes:
            rest = restrict_to_edges(d, [r.edge_id for r in d.routes
                                         if r.edge_id != route.edge_id])
            val = policy_value(policy, rest, host)
            if val > base:
                bad.append(AxiomViolation(
                    policy, idx, "edge-removal",
                    f"removing {route.edge_id!r}: {val} > {base}"))
        for v in d.graph_vertices():
            val = policy_value(policy, remove_vertex(d, v), host)
            if val > base:
                bad.append(AxiomViolation(
                    policy, idx, "vertex-removal", f"vertex {v}: {val} > {base}"))
        if fully_crossing(d) and base != INFEASIBLE:
            if d.pieces_count() > piece_bound(policy, int(base)):
                bad.append(AxiomViolation(
                    policy, idx, "piece-bound",
                    f"{d.pieces_count()} pieces > bound {piece_bound(policy, int(base))}"))
    return bad


def catalog() -> list[dict]:
    """Human-readable list of every variant with its piece-bound formula."""
    formulas = {
        "traditional": "4*i", "k-planar": "4*i", "k-quasi-planar": "4*i",
        "min-k-planar": "4*i", "k-gap": "4*i", "fan-crossing": "4*i",
        "weak-fan-planar": "4*i", "strong-fan-planar": "4*i",
        "k-intersecting": "2*k*i", "color-matrix": "4*i",
        "edge-count": "4*C(i,2)", "pair": "4*max(i*2^i, 9^i)",
        "odd": "4*max(i*2^i, 9^i)",
    }
    return [{"variant": v, "piece_bound": formulas[v],
             "needs_k": v in _NEEDS_K, "needs_matrix": v == "color-matrix"}
            for v in VARIANTS]
