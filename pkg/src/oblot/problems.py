"""Final-configuration predicates for the supported problem family.

A problem is a predicate over configurations; the final set F of a hypergraph
is the set of classes whose representative satisfies it.  All predicates are
isomorphism-invariant, which is what makes F well defined on classes.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from pathlib import Path

from .canonical import canonical_form
from .errors import InputError
from .graphs import Configuration, total_robots
from .hypergraph import ConfigHypergraph

KINDS = ("gathering", "pattern", "explicit", "geodesic_mutual_visibility")


@dataclass(frozen=True)
class ProblemSpec:
    """Problem kind plus target placements for the kinds that need them.

    ``targets`` is empty for gathering and geodesic mutual visibility; for
    pattern and explicit problems it lists λ sequences on the input graph's
    own vertex indexing, matched up to isomorphism (robots are disoriented
    and cannot tell isomorphic placements apart).
    """

    kind: str
    targets: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InputError(f"unknown problem kind {self.kind!r}; expected one of {KINDS}")
        if self.kind not in ("pattern", "explicit") and self.targets:
            raise InputError(f"{self.kind} problem carries no targets")
        object.__setattr__(
            self, "targets", tuple(tuple(int(x) for x in t) for t in self.targets)
        )


def _check_target_dims(spec: ProblemSpec, c: Configuration) -> None:
    n, k = c.graph.n, total_robots(c)
    for t in spec.targets:
        if len(t) != n:
            raise InputError(
                f"target length {len(t)} does not match vertex count {n}"
            )
        if any(x < 0 for x in t):
            raise InputError("target robot counts must be nonnegative")
        if sum(t) != k:
            raise InputError(f"target sums to {sum(t)}, expected k={k}")


def _has_clear_geodesic(c: Configuration, u: int, v: int) -> bool:
    """Whether some shortest u-v path has no robot on its interior vertices.

    Layered search: a vertex w lies on a shortest path iff
    dist(u,w) + dist(w,v) = dist(u,v); restrict the BFS from u to vertices
    that satisfy this and are unoccupied (except the endpoints) and ask
    whether v stays reachable.
    """
    g = c.graph
    du = _bfs_distances(g, u)
    dv = _bfs_distances(g, v)
    d = du[v]
    if d is None:
        return False

    def usable(w: int) -> bool:
        if du[w] is None or dv[w] is None or du[w] + dv[w] != d:
            return False
        return w in (u, v) or c.lam[w] == 0

    seen = {u}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        if w == v:
            return True
        for x in g.adjacency_sets[w]:
            if x not in seen and du[x] == du[w] + 1 and usable(x):
                seen.add(x)
                queue.append(x)
    return False


def _bfs_distances(g, source: int) -> list[int | None]:
    dist: list[int | None] = [None] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        w = queue.popleft()
        for x in g.adjacency_sets[w]:
            if dist[x] is None:
                dist[x] = dist[w] + 1
                queue.append(x)
    return dist


def is_final(spec: ProblemSpec, c: Configuration) -> bool:
    """Whether ``c`` is a final configuration for the problem."""
    k = total_robots(c)
    if spec.kind == "gathering":
        # All robots on one vertex; robots sense exact multiplicities, so
        # the predicate is simply that some count equals k.
        return k > 0 and any(x == k for x in c.lam)
    if spec.kind in ("pattern", "explicit"):
        _check_target_dims(spec, c)
        mine = canonical_form(c.graph, c.lam)
        return any(
            canonical_form(c.graph, t) == mine for t in spec.targets
        )
    # geodesic mutual visibility: multiplicity-free, and every pair of
    # occupied vertices joined by some robot-free shortest path.
    if any(x > 1 for x in c.lam):
        return False
    occupied = [v for v in range(c.graph.n) if c.lam[v] == 1]
    for i, u in enumerate(occupied):
        for v in occupied[i + 1 :]:
            if not _has_clear_geodesic(c, u, v):
                return False
    return True


def resolve_final_set(spec: ProblemSpec, h: ConfigHypergraph) -> frozenset[int]:
    """Indices of the hypergraph classes that are final for the problem."""
    return frozenset(
        i for i, entry in enumerate(h.configs) if is_final(spec, entry.rep)
    )


def load_problem(text: str) -> ProblemSpec:
    """Parse a problem document.

    Accepted forms: ``{"type":"gathering"}``,
    ``{"type":"pattern","targets":[[...], ...]}``,
    ``{"type":"explicit","final":[[...], ...]}``,
    ``{"type":"geodesic-mutual-visibility"}``.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"problem parse error: {e}") from e
    if not isinstance(obj, dict) or "type" not in obj:
        raise InputError("problem document must be a JSON object with a 'type' field")
    kind_field = obj["type"]
    if kind_field == "gathering":
        return ProblemSpec(kind="gathering")
    if kind_field == "geodesic-mutual-visibility":
        return ProblemSpec(kind="geodesic_mutual_visibility")
    if kind_field in ("pattern", "explicit"):
        field = "targets" if kind_field == "pattern" else "final"
        if field not in obj:
            raise InputError(f"{kind_field} problem requires field {field!r}")
        raw = obj[field]
        ok = isinstance(raw, list) and all(
            isinstance(t, list) and all(isinstance(x, int) for x in t) for t in raw
        )
        if not ok:
            raise InputError(f"field {field!r} must be a list of integer lists")
        return ProblemSpec(kind=kind_field, targets=tuple(tuple(t) for t in raw))
    raise InputError(f"unknown problem type {kind_field!r}")


def load_problem_file(path: str | Path) -> ProblemSpec:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise InputError(f"cannot read problem file {path}: {e}") from e
    return load_problem(text)
