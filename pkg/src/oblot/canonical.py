"""Canonical labeling of colored graphs and automorphism orbits.

The canonizer assigns labels ``0..n-1`` to the vertices of a colored graph so
that two colored graphs receive byte-identical encodings exactly when a
color-preserving isomorphism exists between them.  The algorithm is classic
individualization-refinement:

* start from the ordered partition of vertices by color (colors ascending),
* refine to an equitable partition by splitting cells on neighbor counts,
* when a cell with several vertices remains, branch on each of its members,
* at each discrete leaf, read off a candidate labeling and keep the one whose
  adjacency encoding is lexicographically smallest.

Two leaves with equal encodings differ by an automorphism; those discovered
automorphisms are collected (they generate the full automorphism group) and
also used to prune branches that are equivalent to ones already explored.
Orbits are the connected components of the vertex set under the generators.

Configurations are canonized by treating robot counts as vertex colors.  The
pendant-vertex encoding in :func:`oblot.graphs.configuration_graph` yields the
same equivalence and serves as an independent oracle in the test suite.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from functools import cached_property

from .errors import InternalError
from .graphs import Configuration, Graph, validate_configuration


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    """Order-invariant encoding of a colored graph.

    ``encoding`` is a pure function of the isomorphism class; ``labeling``
    maps each original vertex index to its canonical label.  Equality and
    hashing use the encoding alone: two forms compare equal exactly when the
    underlying objects are isomorphic, regardless of which labeling realized
    the encoding.
    """

    encoding: bytes
    labeling: tuple[int, ...]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self.encoding == other.encoding

    def __hash__(self) -> int:
        return hash(self.encoding)

    def hex(self) -> str:
        return self.encoding.hex()


@dataclass(frozen=True)
class OrbitPartition:
    """Vertex orbits under the color-preserving automorphism group.

    ``orbits`` partitions the vertex set; the sequence is sorted by rank,
    where the rank of an orbit is the minimum canonical label among its
    vertices.  Ranks identify orbits everywhere downstream (moves, plans,
    traces) because they are invariant across isomorphic copies.
    """

    orbits: tuple[tuple[int, ...], ...]
    ranks: tuple[int, ...]

    @cached_property
    def _by_rank(self) -> dict[int, tuple[int, ...]]:
        return dict(zip(self.ranks, self.orbits))

    def orbit_of_rank(self, rank: int) -> tuple[int, ...]:
        try:
            return self._by_rank[rank]
        except KeyError:
            raise InternalError(f"no orbit with rank {rank}") from None

    @cached_property
    def orbit_rank_of_vertex(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for orbit, rank in zip(self.orbits, self.ranks):
            for v in orbit:
                out[v] = rank
        return out


def _refine(adj: tuple[frozenset[int], ...], cells: list[list[int]]) -> list[list[int]]:
    """Split cells on neighbor counts until the ordered partition is equitable.

    Fragments replace their cell in place, ordered by ascending count, so the
    process is equivariant under isomorphism: corresponding partitions of
    isomorphic graphs refine to corresponding partitions.
    """
    cells = [sorted(c) for c in cells]
    changed = True
    while changed:
        changed = False
        for ti, target in enumerate(cells):
            if len(target) == 1:
                continue
            for splitter in cells:
                sset = frozenset(splitter)
                counts = [len(adj[v] & sset) for v in target]
                if len(set(counts)) > 1:
                    groups: dict[int, list[int]] = {}
                    for v, cnt in zip(target, counts):
                        groups.setdefault(cnt, []).append(v)
                    frags = [groups[cnt] for cnt in sorted(groups)]
                    cells[ti : ti + 1] = frags
                    changed = True
                    break
            if changed:
                break
    return cells


def _adjacency_bits(n: int, adj: tuple[frozenset[int], ...], order: list[int]) -> bytes:
    """Upper-triangular adjacency bits row-major under the given vertex order."""
    bits = bytearray((n * (n - 1) // 2 + 7) // 8)
    idx = 0
    for i in range(n):
        vi = order[i]
        nbrs = adj[vi]
        for j in range(i + 1, n):
            if order[j] in nbrs:
                bits[idx >> 3] |= 0x80 >> (idx & 7)
            idx += 1
    return bytes(bits)


class _Canonizer:
    """One individualization-refinement search over a colored graph."""

    def __init__(self, n: int, adj: tuple[frozenset[int], ...], colors: tuple[int, ...]):
        self.n = n
        self.adj = adj
        self.colors = colors
        self.best_bits: bytes | None = None
        self.best_order: list[int] | None = None
        self.generators: list[tuple[int, ...]] = []

    def run(self) -> None:
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(self.colors):
            cells.setdefault(c, []).append(v)
        initial = [cells[c] for c in sorted(cells)]
        self._search(initial, ())

    def _search(self, cells: list[list[int]], prefix: tuple[int, ...]) -> None:
        cells = _refine(self.adj, cells)
        target_index = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target_index is None:
            self._visit_leaf([c[0] for c in cells])
            return
        target = cells[target_index]
        explored: list[int] = []
        for w in target:
            if self._in_explored_orbit(w, explored, prefix):
                continue
            explored.append(w)
            branched = (
                cells[:target_index]
                + [[w], [u for u in target if u != w]]
                + cells[target_index + 1 :]
            )
            self._search(branched, prefix + (w,))

    def _visit_leaf(self, order: list[int]) -> None:
        bits = _adjacency_bits(self.n, self.adj, order)
        if self.best_bits is None or bits < self.best_bits:
            self.best_bits = bits
            self.best_order = order
        elif bits == self.best_bits:
            # Equal encodings mean the two leaf labelings differ by a
            # color-preserving automorphism: send u to the vertex this leaf
            # placed where the best leaf placed u.
            phi = tuple(order[pos] for pos in self._best_labeling)
            if any(phi[v] != v for v in range(self.n)):
                self.generators.append(phi)

    @property
    def _best_labeling(self) -> list[int]:
        assert self.best_order is not None
        lab = [0] * self.n
        for pos, v in enumerate(self.best_order):
            lab[v] = pos
        return lab

    def _in_explored_orbit(self, w: int, explored: list[int], prefix: tuple[int, ...]) -> bool:
        """Skip a branch whose subtree is the automorphic image of an explored one."""
        if not explored:
            return False
        fixing = [g for g in self.generators if all(g[p] == p for p in prefix)]
        if not fixing:
            return False
        orbit = {w}
        frontier = [w]
        explored_set = set(explored)
        while frontier:
            v = frontier.pop()
            for g in fixing:
                img = g[v]
                if img in explored_set:
                    return True
                if img not in orbit:
                    orbit.add(img)
                    frontier.append(img)
        return False


def _pack_field(payload: bytes) -> bytes:
    return struct.pack(">I", len(payload)) + payload


def _encode(n: int, colors_in_canonical_order: list[int], bits: bytes) -> bytes:
    color_bytes = b"".join(struct.pack(">I", c) for c in colors_in_canonical_order)
    return _pack_field(struct.pack(">I", n)) + _pack_field(color_bytes) + _pack_field(bits)


def _canonize(g: Graph, colors: tuple[int, ...]) -> tuple[CanonicalForm, list[tuple[int, ...]]]:
    n = g.n
    if n == 0:
        return CanonicalForm(encoding=_encode(0, [], b""), labeling=()), []
    engine = _Canonizer(n, g.adjacency_sets, colors)
    engine.run()
    assert engine.best_order is not None
    order = engine.best_order
    labeling = [0] * n
    for pos, v in enumerate(order):
        labeling[v] = pos
    canon_colors = [colors[v] for v in order]
    form = CanonicalForm(
        encoding=_encode(n, canon_colors, engine.best_bits or b""),
        labeling=tuple(labeling),
    )
    return form, engine.generators


def canonical_form(g: Graph, coloring: tuple[int, ...]) -> CanonicalForm:
    """Canonical form for a colored graph, deterministic in the input data."""
    if len(coloring) != g.n:
        raise InternalError(
            f"coloring length {len(coloring)} does not match vertex count {g.n}"
        )
    form, _ = _canonize(g, tuple(coloring))
    return form


def canonical_configuration(c: Configuration) -> CanonicalForm:
    """Canonical form of a configuration, robot counts acting as colors."""
    validate_configuration(c, require_robots=False)
    return canonical_form(c.graph, c.lam)


def automorphism_orbits(c: Configuration) -> OrbitPartition:
    """Partition the vertices into orbits of the configuration's automorphisms.

    Orbits are closed from the generators discovered during canonization by
    union-find; each orbit is ranked by the minimum canonical label among its
    vertices and the sequence is sorted by rank.
    """
    validate_configuration(c, require_robots=False)
    g = c.graph
    form, generators = _canonize(g, c.lam)
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for gen in generators:
        for v in range(g.n):
            union(v, gen[v])
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    ranked = sorted(
        (min(form.labeling[v] for v in orbit), tuple(sorted(orbit)))
        for orbit in groups.values()
    )
    return OrbitPartition(
        orbits=tuple(orbit for _, orbit in ranked),
        ranks=tuple(rank for rank, _ in ranked),
    )


def occupied_orbits(p: OrbitPartition, c: Configuration) -> tuple[int, ...]:
    """Ranks (ascending) of the orbits that carry robots.

    Vertices sharing an orbit are forced by symmetry to carry equal robot
    counts; a violation means the partition does not belong to ``c``.
    """
    occupied: list[int] = []
    for orbit, rank in zip(p.orbits, p.ranks):
        counts = {c.lam[v] for v in orbit}
        if len(counts) > 1:
            raise InternalError(
                f"orbit {orbit} carries unequal robot counts {sorted(counts)}"
            )
        if counts.pop() > 0:
            occupied.append(rank)
    return tuple(occupied)
