"""Configuration hypergraph construction and serialization.

The hypergraph for a graph G and robot count k has one vertex per isomorphism
class of k-robot placements and one hyperarc (C, Δ) per distinct outcome set Δ
reachable from C; the hyperarc carries every move whose outcome set is
exactly Δ.  Building is deterministic: configurations are sorted by canonical
encoding, hyperarcs by (source index, Δ index tuple), moves in lexicographic
move order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from .canonical import CanonicalForm, automorphism_orbits, canonical_form
from .errors import InputError, InternalError
from .graphs import Configuration, Graph, load_graph
from .moves import Move, enumerate_moves, fsync_outcomes, move_from_json_obj, ssync_outcomes

FORMAT_VERSION = 1

SCHEDULERS = ("fsync", "ssync")


@dataclass(frozen=True)
class ConfigEntry:
    """One hypergraph vertex: a canonical class plus a concrete representative.

    The representative is the lexicographically smallest placement of the
    class on the input graph's own vertex indexing.  Orbit ranks used in
    stored moves come from the canonizer and are therefore identical for
    every member of the class.
    """

    form: CanonicalForm
    rep: Configuration


@dataclass(frozen=True)
class Hyperarc:
    source: int
    delta: tuple[int, ...]
    moves: tuple[Move, ...]


@dataclass(frozen=True)
class ConfigHypergraph:
    graph: Graph
    k: int
    scheduler: str
    configs: tuple[ConfigEntry, ...]
    hyperarcs: tuple[Hyperarc, ...]

    @cached_property
    def index(self) -> dict[bytes, int]:
        return {entry.form.encoding: i for i, entry in enumerate(self.configs)}

    def index_of(self, c: Configuration) -> int:
        if len(c.lam) != self.graph.n:
            raise InputError(
                "configuration does not belong to this hypergraph "
                f"(n={self.graph.n}, k={self.k})"
            )
        enc = canonical_form(self.graph, c.lam).encoding
        try:
            return self.index[enc]
        except KeyError:
            raise InputError(
                "configuration does not belong to this hypergraph "
                f"(n={self.graph.n}, k={self.k})"
            ) from None

    @cached_property
    def arcs_by_source(self) -> dict[int, tuple[Hyperarc, ...]]:
        out: dict[int, list[Hyperarc]] = {}
        for arc in self.hyperarcs:
            out.setdefault(arc.source, []).append(arc)
        return {s: tuple(arcs) for s, arcs in out.items()}


def _weak_compositions(total: int, parts: int):
    """All λ with given length and sum, ascending lexicographic order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _weak_compositions(total - head, parts - 1):
            yield (head, *rest)


def enumerate_configurations(g: Graph, k: int) -> tuple[ConfigEntry, ...]:
    """One entry per isomorphism class of k-robot placements on g.

    All C(n+k-1, k) placements are generated in ascending lexicographic
    order and deduplicated by canonical encoding, so the representative of a
    class is its lexicographically smallest member.  Entries are sorted by
    encoding bytes.
    """
    if k < 1:
        raise InputError(f"robot count must be at least 1, got {k}")
    by_encoding: dict[bytes, ConfigEntry] = {}
    for lam in _weak_compositions(k, g.n):
        form = canonical_form(g, lam)
        if form.encoding not in by_encoding:
            by_encoding[form.encoding] = ConfigEntry(
                form=form, rep=Configuration(graph=g, lam=lam)
            )
    return tuple(entry for _, entry in sorted(by_encoding.items()))


def build(g: Graph, k: int, scheduler: str = "fsync") -> ConfigHypergraph:
    """Construct the full configuration hypergraph for (g, k).

    For every configuration class and every one of its moves, the scheduler's
    outcome set Δ is computed; moves with identical (source, Δ) merge into one
    hyperarc.
    """
    if scheduler not in SCHEDULERS:
        raise InputError(f"unknown scheduler {scheduler!r}; expected one of {SCHEDULERS}")
    outcomes = fsync_outcomes if scheduler == "fsync" else ssync_outcomes
    entries = enumerate_configurations(g, k)
    index = {entry.form.encoding: i for i, entry in enumerate(entries)}
    arcs: dict[tuple[int, tuple[int, ...]], list[Move]] = {}
    for i, entry in enumerate(entries):
        p = automorphism_orbits(entry.rep)
        for m in enumerate_moves(entry.rep, p):
            oset = outcomes(entry.rep, p, m)
            try:
                delta = tuple(sorted(index[enc] for enc in oset.encodings))
            except KeyError:
                raise InternalError(
                    "move outcome escapes the configuration set; "
                    "robot conservation is violated"
                ) from None
            arcs.setdefault((i, delta), []).append(m)
    hyperarcs = tuple(
        Hyperarc(source=s, delta=d, moves=tuple(ms))
        for (s, d), ms in sorted(arcs.items())
    )
    return ConfigHypergraph(
        graph=g, k=k, scheduler=scheduler, configs=entries, hyperarcs=hyperarcs
    )


def to_json_obj(h: ConfigHypergraph) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "graph": h.graph.to_json_obj(),
        "k": h.k,
        "scheduler": h.scheduler,
        "configs": [{"lambda": list(e.rep.lam)} for e in h.configs],
        "hyperarcs": [
            {
                "source": a.source,
                "delta": list(a.delta),
                "moves": [m.to_json_obj() for m in a.moves],
            }
            for a in h.hyperarcs
        ],
    }


def to_dot(h: ConfigHypergraph) -> str:
    """Graphviz rendering: one labeled node per config, one point node per
    hyperarc, arrows source -> hyperarc -> each Δ member."""
    lines = ["digraph hypergraph {"]
    for i, e in enumerate(h.configs):
        lam = ",".join(str(x) for x in e.rep.lam)
        lines.append(f'  c{i} [shape=ellipse, label="C{i} [{lam}]"];')
    for j, a in enumerate(h.hyperarcs):
        lines.append(f'  a{j} [shape=point, label=""];')
        lines.append(f"  c{a.source} -> a{j};")
        for d in a.delta:
            lines.append(f"  a{j} -> c{d};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(h: ConfigHypergraph, format: str) -> str:
    if format == "json":
        return json.dumps(to_json_obj(h), sort_keys=True, separators=(",", ":")) + "\n"
    if format == "dot":
        return to_dot(h)
    raise InputError(f"unknown export format {format!r}; expected 'json' or 'dot'")


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise InputError(msg)


def loads(document: str) -> ConfigHypergraph:
    """Rebuild a hypergraph from its JSON export, validating invariants."""
    try:
        obj = json.loads(document)
    except json.JSONDecodeError as e:
        raise InputError(f"hypergraph parse error: {e}") from e
    _require(isinstance(obj, dict), "hypergraph document must be a JSON object")
    version = obj.get("format_version")
    _require(
        version == FORMAT_VERSION,
        f"unsupported format_version {version!r}; this build reads {FORMAT_VERSION}",
    )
    for req in ("graph", "k", "scheduler", "configs", "hyperarcs"):
        _require(req in obj, f"hypergraph document missing field {req!r}")
    g = load_graph(json.dumps(obj["graph"]))
    k = obj["k"]
    _require(isinstance(k, int) and k >= 1, f"field 'k' must be a positive integer, got {k!r}")
    scheduler = obj["scheduler"]
    _require(scheduler in SCHEDULERS, f"unknown scheduler {scheduler!r}")
    raw_configs = obj["configs"]
    _require(isinstance(raw_configs, list) and raw_configs, "field 'configs' must be a non-empty list")
    entries: list[ConfigEntry] = []
    seen: set[bytes] = set()
    for rc in raw_configs:
        _require(isinstance(rc, dict) and "lambda" in rc, "config entry must carry 'lambda'")
        lam = rc["lambda"]
        _require(
            isinstance(lam, list) and all(isinstance(x, int) for x in lam),
            "config 'lambda' must be a list of integers",
        )
        _require(sum(lam) == k, f"config lambda {lam} does not sum to k={k}")
        rep = Configuration(graph=g, lam=tuple(lam))
        form = canonical_form(g, rep.lam)
        _require(form.encoding not in seen, f"duplicate configuration class for lambda {lam}")
        seen.add(form.encoding)
        entries.append(ConfigEntry(form=form, rep=rep))
    raw_arcs = obj["hyperarcs"]
    _require(isinstance(raw_arcs, list), "field 'hyperarcs' must be a list")
    arcs: list[Hyperarc] = []
    seen_arcs: set[tuple[int, tuple[int, ...]]] = set()
    for ra in raw_arcs:
        _require(isinstance(ra, dict), "hyperarc entry must be an object")
        for req in ("source", "delta", "moves"):
            _require(req in ra, f"hyperarc entry missing field {req!r}")
        source = ra["source"]
        _require(
            isinstance(source, int) and 0 <= source < len(entries),
            f"hyperarc source {source!r} out of range",
        )
        delta_list = ra["delta"]
        _require(
            isinstance(delta_list, list)
            and all(isinstance(d, int) and 0 <= d < len(entries) for d in delta_list),
            f"hyperarc delta {delta_list!r} must list config indices",
        )
        delta = tuple(sorted(set(delta_list)))
        _require(len(delta) == len(delta_list), f"hyperarc delta {delta_list!r} has duplicates")
        key = (source, delta)
        _require(key not in seen_arcs, f"duplicate hyperarc (source={source}, delta={delta_list})")
        seen_arcs.add(key)
        raw_moves = ra["moves"]
        _require(isinstance(raw_moves, list) and raw_moves, "hyperarc 'moves' must be non-empty")
        moves = tuple(move_from_json_obj(rm) for rm in raw_moves)
        arcs.append(Hyperarc(source=source, delta=delta, moves=moves))
    return ConfigHypergraph(
        graph=g, k=k, scheduler=scheduler, configs=tuple(entries), hyperarcs=tuple(arcs)
    )
