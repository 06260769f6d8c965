"""Combinatorial maps: rotation systems with edge signs, and face tracing.

A map records a multigraph (vertices ``0..n-1``, pieces as endpoint pairs)
together with a cyclic order of darts at each vertex and a sign per piece.
Darts are ``(piece, end)`` pairs; a loop contributes both of its darts to
the same vertex's rotation.

Face tracing works on *states* ``(dart, sense)`` where ``sense`` is the
local rotation direction carried along the walk and flips when crossing a
negative piece.  The face successor is::

    step(d, s):  a = opposite(d); s' = s * sign(d); return (rot_step(a, s'), s')

Orbits of ``step`` are directed face walks; each geometric face consists of
an orbit and its mirror (``mirror(d, s) = (rot_step(d, -s), -s)``), so the
face count is half the orbit count.  This is exact on non-orientable maps
as well, where a face may run along both sides of the same piece.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import StructureError

Dart = tuple[int, int]          # (piece index, end 0/1)
State = tuple[Dart, int]        # (dart, sense +1/-1)


class RotMap:
    """Immutable rotation map with signs; the kernel under all drawings."""

    def __init__(self, num_vertices: int, pieces: Sequence[tuple[int, int]],
                 rot: Sequence[Sequence[Dart]], signs: Sequence[int] | None = None):
        self.num_vertices = int(num_vertices)
        self.pieces: tuple[tuple[int, int], ...] = tuple(
            (int(u), int(v)) for (u, v) in pieces)
        self.rot: tuple[tuple[Dart, ...], ...] = tuple(
            tuple((int(p), int(e)) for (p, e) in darts) for darts in rot)
        if signs is None:
            signs = [1] * len(self.pieces)
        self.signs: tuple[int, ...] = tuple(int(s) for s in signs)
        self._dart_pos: dict[Dart, tuple[int, int]] = {}
        self._validate()
        self._faces: list[list[State]] | None = None

    def _validate(self) -> None:
        if len(self.rot) != self.num_vertices:
            raise StructureError("rotation must list every vertex")
        if len(self.signs) != len(self.pieces):
            raise StructureError("one sign per piece required")
        if any(s not in (1, -1) for s in self.signs):
            raise StructureError("signs must be +1 or -1")
        expected: dict[Dart, int] = {}
        for p, (u, v) in enumerate(self.pieces):
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise StructureError(f"piece {p} references missing vertex")
            expected[(p, 0)] = u
            expected[(p, 1)] = v
        seen: set[Dart] = set()
        for v, darts in enumerate(self.rot):
            for i, d in enumerate(darts):
                if d in seen:
                    raise StructureError(f"dart {d} appears twice")
                seen.add(d)
                if expected.get(d) != v:
                    raise StructureError(f"dart {d} not incident to vertex {v}")
                self._dart_pos[d] = (v, i)
        if seen != set(expected):
            raise StructureError("rotation misses some darts")

    # -- basic structure ----------------------------------------------------

    @property
    def num_pieces(self) -> int:
        return len(self.pieces)

    def vertex_of(self, d: Dart) -> int:
        return self._dart_pos[d][0]

    def opposite(self, d: Dart) -> Dart:
        return (d[0], 1 - d[1])

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def rot_step(self, d: Dart, direction: int) -> Dart:
        v, i = self._dart_pos[d]
        darts = self.rot[v]
        return darts[(i + direction) % len(darts)]

    def darts(self) -> list[Dart]:
        return [d for darts in self.rot for d in darts]

    # -- face tracing ---------------------------------------------------------

    def face_step(self, state: State) -> State:
        d, s = state
        a = self.opposite(d)
        s2 = s * self.signs[d[0]]
        return (self.rot_step(a, s2), s2)

    def mirror(self, state: State) -> State:
        d, s = state
        return (self.rot_step(d, -s), -s)

    def face_orbits(self) -> list[list[State]]:
        todo: set[State] = {(d, s) for d in self.darts() for s in (1, -1)}
        orbits: list[list[State]] = []
        while todo:
            start = min(todo)
            orbit = [start]
            cur = self.face_step(start)
            while cur != start:
                orbit.append(cur)
                cur = self.face_step(cur)
            todo -= set(orbit)
            orbits.append(orbit)
        return orbits

    def faces(self) -> list[list[State]]:
        """One directed walk per geometric face (mirror orbits merged).

        The representative orbit is the mirror-pair member containing the
        smaller state, so face indices are stable for equal maps.
        """
        if self._faces is not None:
            return self._faces
        orbits = self.face_orbits()
        by_state = {}
        for idx, orbit in enumerate(orbits):
            for st in orbit:
                by_state[st] = idx
        chosen: list[list[State]] = []
        used: set[int] = set()
        for idx, orbit in enumerate(orbits):
            if idx in used:
                continue
            mirror_idx = by_state[self.mirror(orbit[0])]
            if mirror_idx == idx:
                raise StructureError("self-mirrored face walk (corrupt map)")
            used.add(idx)
            used.add(mirror_idx)
            chosen.append(orbit)
        self._faces = chosen
        return chosen

    def num_faces(self) -> int:
        if not self.pieces:
            return 0
        return len(self.faces())

    def euler_characteristic(self) -> int:
        """chi of the closed-up surface induced by the map (per component)."""
        return self.num_vertices - self.num_pieces + self.num_faces()

    # -- corners ---------------------------------------------------------------

    def corner_of_state(self, state: State) -> tuple[int, int]:
        """Corner ``(vertex, slot)`` a face walk turns through at this state.

        Slot ``i`` at vertex ``v`` is the gap between ``rot[v][i]`` and
        ``rot[v][i + 1]``; each corner is visited by exactly two states
        (one per direction).
        """
        d, s = state
        v, i = self._dart_pos[d]
        deg = len(self.rot[v])
        if s == 1:
            return (v, (i - 1) % deg)
        return (v, i)

    def corners(self) -> list[tuple[int, int]]:
        return [(v, i) for v in range(self.num_vertices)
                for i in range(len(self.rot[v]))]

    def face_of_corner(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for f, orbit in enumerate(self.faces()):
            for st in orbit:
                out[self.corner_of_state(st)] = f
        return out

    def side_class(self, state: State) -> tuple[State, State]:
        """The two states crossing the same geometric side of a piece."""
        d, s = state
        other = (self.opposite(d), -s * self.signs[d[0]])
        return (min(state, other), max(state, other))

    # -- connectivity & orientability --------------------------------------------

    def vertex_components(self) -> list[list[int]]:
        parent = list(range(self.num_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (u, v) in self.pieces:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        comps: dict[int, list[int]] = {}
        for v in range(self.num_vertices):
            comps.setdefault(find(v), []).append(v)
        return sorted(comps.values(), key=lambda c: c[0])

    def component_orientable(self, comp_vertices: Iterable[int]) -> bool:
        comp = set(comp_vertices)
        color: dict[int, int] = {}
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in comp}
        for p, (u, v) in enumerate(self.pieces):
            if u in comp:
                adj[u].append((v, self.signs[p]))
                adj[v].append((u, self.signs[p]))
        for start in comp:
            if start in color:
                continue
            color[start] = 1
            stack = [start]
            while stack:
                x = stack.pop()
                for (y, sg) in adj[x]:
                    want = color[x] * sg
                    if y not in color:
                        color[y] = want
                        stack.append(y)
                    elif color[y] != want:
                        return False
        return True

    # -- normalization ------------------------------------------------------------

    def with_signs(self, signs: Sequence[int]) -> "RotMap":
        return RotMap(self.num_vertices, self.pieces, self.rot, signs)

    def tree_normalized_signs(self) -> tuple[int, ...]:
        """Signs equivalent under vertex flips with a spanning tree all-positive."""
        parent: dict[int, tuple[int, int] | None] = {}
        flip = [1] * self.num_vertices
        seen: set[int] = set()
        for root in range(self.num_vertices):
            if root in seen:
                continue
            seen.add(root)
            stack = [root]
            tree: list[int] = []
            while stack:
                x = stack.pop()
                for p, (u, v) in enumerate(self.pieces):
                    if u == v:
                        continue
                    if u == x and v not in seen:
                        flip[v] = flip[x] * self.signs[p]
                        seen.add(v)
                        stack.append(v)
                    elif v == x and u not in seen:
                        flip[u] = flip[x] * self.signs[p]
                        seen.add(u)
                        stack.append(u)
        out = []
        for p, (u, v) in enumerate(self.pieces):
            if u == v:
                out.append(self.signs[p])
            else:
                out.append(self.signs[p] * flip[u] * flip[v])
        return tuple(out)
