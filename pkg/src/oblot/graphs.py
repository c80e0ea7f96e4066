"""Core value types: finite undirected graphs and robot configurations.

A configuration pairs a graph with a per-vertex robot count.  Both types are
immutable values; every operation that mutates conceptually returns a new
object.  Vertices are dense integer indices ``0..n-1``.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from .errors import InputError

# Color-per-vertex carrier used by the canonizer; robot counts double as colors.
VertexColoring = "tuple[int, ...]"


@dataclass(frozen=True)
class Graph:
    """Finite undirected graph with vertices ``0..n-1``.

    ``edges`` is normalized at construction: each pair sorted, the sequence
    sorted and duplicate-free.  Equality is structural (``n`` plus edge set)
    and independent of the order edges were supplied in; ``name`` is a
    decorative tag that never participates in comparisons.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError(f"vertex count must be nonnegative, got {self.n}")
        seen: set[tuple[int, int]] = set()
        for pair in self.edges:
            if len(pair) != 2:
                raise InputError(f"edge must be a pair, got {pair!r}")
            u, v = pair
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"edge endpoint out of range: {pair!r} with n={self.n}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputError(f"duplicate edge {key!r}")
            seen.add(key)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def adjacency_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.neighbors)

    def to_json_obj(self) -> dict:
        obj: dict = {"n": self.n, "edges": [list(e) for e in self.edges]}
        if self.name is not None:
            obj["name"] = self.name
        return obj


@dataclass(frozen=True)
class Configuration:
    """A graph plus the number of robots sitting on each vertex."""

    graph: Graph
    lam: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", tuple(int(x) for x in self.lam))


def validate_configuration(c: Configuration, *, require_robots: bool = True) -> None:
    """Raise :class:`InputError` unless ``c`` satisfies the type invariants.

    Structural operations (canonization, orbits) work for empty placements
    too and pass ``require_robots=False``; everything involving moves needs
    at least one robot.
    """
    if len(c.lam) != c.graph.n:
        raise InputError(
            f"length mismatch: lambda has {len(c.lam)} entries for {c.graph.n} vertices"
        )
    if any(x < 0 for x in c.lam):
        raise InputError("robot counts must be nonnegative")
    if require_robots and sum(c.lam) < 1:
        raise InputError("zero robots: at least one robot is required")


def total_robots(c: Configuration) -> int:
    return sum(c.lam)


def configuration_graph(c: Configuration) -> Graph:
    """Encode ``c`` as an uncolored graph by attaching pendant vertices.

    Each vertex ``v`` receives ``lam(v) + 1`` fresh pendant neighbors, so the
    result has ``2n + k`` vertices and ``|E| + n + k`` edges.  Occupied and
    empty vertices stay distinguishable because every vertex gets at least one
    pendant.  Original vertices keep their indices; pendants are appended in
    vertex order.
    """
    validate_configuration(c, require_robots=False)
    g = c.graph
    edges = list(g.edges)
    nxt = g.n
    for v in range(g.n):
        for _ in range(c.lam[v] + 1):
            edges.append((v, nxt))
            nxt += 1
    return Graph(n=nxt, edges=tuple(edges))


def _warn_unknown_fields(obj: dict, known: set[str], what: str) -> None:
    for key in obj:
        if key not in known:
            warnings.warn(f"ignoring unknown field {key!r} in {what} document", stacklevel=3)


def load_graph(text: str) -> Graph:
    """Parse a graph JSON document: ``{"name": ..., "n": ..., "edges": [[u,v], ...]}``.

    Pure function of the document content; identical bytes yield equal graphs.
    Unknown fields warn rather than fail.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"graph parse error: {e}") from e
    if not isinstance(obj, dict):
        raise InputError("graph document must be a JSON object")
    for req in ("n", "edges"):
        if req not in obj:
            raise InputError(f"graph document missing field {req!r}")
    _warn_unknown_fields(obj, {"name", "n", "edges"}, "graph")
    n = obj["n"]
    if not isinstance(n, int):
        raise InputError(f"field 'n' must be an integer, got {n!r}")
    edges = obj["edges"]
    if not isinstance(edges, list):
        raise InputError("field 'edges' must be a list of pairs")
    name = obj.get("name")
    if name is not None and not isinstance(name, str):
        raise InputError("field 'name' must be a string")
    pairs = []
    for e in edges:
        if not isinstance(e, list) or len(e) != 2 or not all(isinstance(x, int) for x in e):
            raise InputError(f"edge must be a pair of integers, got {e!r}")
        pairs.append((e[0], e[1]))
    return Graph(n=n, edges=tuple(pairs), name=name)


def load_graph_file(path: str | Path) -> Graph:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise InputError(f"cannot read graph file {path}: {e}") from e
    return load_graph(text)


def load_configuration(text: str, base_dir: str | Path | None = None) -> Configuration:
    """Parse a configuration document: ``{"graph": <object or path>, "lambda": [...]}``.

    A string ``graph`` field is a file path, resolved relative to ``base_dir``
    when given.  The result is validated.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"configuration parse error: {e}") from e
    if not isinstance(obj, dict):
        raise InputError("configuration document must be a JSON object")
    for req in ("graph", "lambda"):
        if req not in obj:
            raise InputError(f"configuration document missing field {req!r}")
    _warn_unknown_fields(obj, {"graph", "lambda"}, "configuration")
    gfield = obj["graph"]
    if isinstance(gfield, str):
        gpath = Path(gfield)
        if base_dir is not None and not gpath.is_absolute():
            gpath = Path(base_dir) / gpath
        graph = load_graph_file(gpath)
    elif isinstance(gfield, dict):
        graph = load_graph(json.dumps(gfield))
    else:
        raise InputError("field 'graph' must be an object or a file path string")
    lam = obj["lambda"]
    if not isinstance(lam, list) or not all(isinstance(x, int) for x in lam):
        raise InputError("field 'lambda' must be a list of integers")
    c = Configuration(graph=graph, lam=tuple(lam))
    validate_configuration(c)
    return c


def load_configuration_file(path: str | Path) -> Configuration:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise InputError(f"cannot read configuration file {path}: {e}") from e
    return load_configuration(text, base_dir=path.parent)
