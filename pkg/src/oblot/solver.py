"""Solvability fixed point, worst-case-optimal planning, round dispatch.

A configuration class is solvable when some move guarantees progress toward F
no matter how the adversary resolves it: the least fixed point containing F
and closed under "some hyperarc's Δ lies inside the set".  The plan assigns
each solvable class its worst-case-optimal distance and the move realizing
it.

Distances are computed bottom-up by level rather than by recursion: level 0
is F, and a class enters level r when some hyperarc has every Δ member
already assigned with maximum distance r-1.  At the round a class is first
assignable, every newly eligible hyperarc attains the same (minimal) worst
case, so the move tie-break reduces to the minimum move among those
hyperarcs' per-arc minimal moves.
"""

from __future__ import annotations

from dataclasses import dataclass

from .canonical import canonical_form
from .errors import InputError, InternalError
from .graphs import Configuration, total_robots, validate_configuration
from .hypergraph import ConfigHypergraph, build
from .moves import Move
from .problems import ProblemSpec, resolve_final_set

FINAL = "final"
UNSOLVABLE = "unsolvable"
STEP = "step"


@dataclass(frozen=True)
class SolvabilityResult:
    solvable: frozenset[int]
    final: frozenset[int]


@dataclass(frozen=True)
class PlanEntry:
    """Worst-case distance to F and the first move to perform.

    ``move`` is None exactly for final classes (the nil move, distance 0).
    """

    distance: int
    move: Move | None


@dataclass(frozen=True)
class MoveDecision:
    """Round verdict for one configuration: final, unsolvable, or a step."""

    status: str
    move: Move | None = None
    distance: int | None = None

    def to_json_obj(self) -> dict:
        obj: dict = {"status": self.status}
        if self.status == STEP:
            assert self.move is not None and self.distance is not None
            obj["move"] = self.move.to_json_obj()
            obj["distance"] = self.distance
        return obj


def _check_final_indices(h: ConfigHypergraph, final) -> frozenset[int]:
    fin = frozenset(final)
    for i in fin:
        if not (0 <= i < len(h.configs)):
            raise InputError(f"final index {i} out of range for {len(h.configs)} configs")
    return fin


def solve(h: ConfigHypergraph, final) -> SolvabilityResult:
    """Least fixed point of solvability over the hypergraph.

    Start from F; add a class whenever one of its hyperarcs has its whole Δ
    inside the current set.  Classes are never removed, so the loop stabilizes
    within one pass per added class.
    """
    fin = _check_final_indices(h, final)
    solvable = set(fin)
    changed = True
    while changed:
        changed = False
        for arc in h.hyperarcs:
            if arc.source not in solvable and all(d in solvable for d in arc.delta):
                solvable.add(arc.source)
                changed = True
    return SolvabilityResult(solvable=frozenset(solvable), final=fin)


def plan(h: ConfigHypergraph, final, solvability: SolvabilityResult) -> dict[int, PlanEntry]:
    """Distance and first move for every solvable class.

    Tie-break, fully specified so that all robots agree: within a hyperarc
    the minimal move under the lexicographic move order represents the arc;
    across hyperarcs the minimal (worst-case distance, move) pair wins.
    """
    fin = _check_final_indices(h, final)
    if fin != solvability.final:
        raise InputError("solvability result was computed for a different final set")
    solvable = solvability.solvable
    entries: dict[int, PlanEntry] = {i: PlanEntry(distance=0, move=None) for i in fin}
    pending = set(solvable) - set(fin)
    level = 0
    while pending:
        level += 1
        added: dict[int, PlanEntry] = {}
        for c in sorted(pending):
            best: tuple[int, tuple, Move] | None = None
            for arc in h.arcs_by_source.get(c, ()):
                if not all(d in solvable for d in arc.delta):
                    continue
                if not all(d in entries for d in arc.delta):
                    continue
                worst = 1 + max(entries[d].distance for d in arc.delta)
                move = arc.moves[0]
                key = (worst, move.sort_key(), move)
                if best is None or key[:2] < best[:2]:
                    best = key
            if best is None:
                continue
            distance, _, move = best
            if distance != level:
                raise InternalError(
                    f"level computation out of order: class {c} assignable at "
                    f"distance {distance} but first reached at level {level}"
                )
            added[c] = PlanEntry(distance=distance, move=move)
        if not added:
            raise InternalError(
                f"plan cannot reach classes {sorted(pending)} marked solvable"
            )
        entries.update(added)
        pending -= set(added)
    return entries


def move_to(c: Configuration, spec: ProblemSpec) -> MoveDecision:
    """Round dispatch: what the robots seeing configuration ``c`` should do.

    Builds the hypergraph for (G, k), resolves F, and answers final,
    unsolvable (stay put forever), or the planned step.  Pure function of the
    configuration's class and the problem.
    """
    validate_configuration(c)
    h = build(c.graph, total_robots(c), "fsync")
    fin = resolve_final_set(spec, h)
    result = solve(h, fin)
    idx = h.index[canonical_form(c.graph, c.lam).encoding]
    return decide(h, fin, result, plan(h, fin, result), idx)


def decide(
    h: ConfigHypergraph,
    final: frozenset[int],
    solvability: SolvabilityResult,
    entries: dict[int, PlanEntry],
    idx: int,
) -> MoveDecision:
    """The MoveDecision for class ``idx`` given precomputed solver state."""
    if idx in final:
        return MoveDecision(status=FINAL)
    if idx not in solvability.solvable:
        return MoveDecision(status=UNSOLVABLE)
    entry = entries[idx]
    if entry.move is None or entry.distance < 1:
        raise InternalError(f"non-final solvable class {idx} has no planned move")
    return MoveDecision(status=STEP, move=entry.move, distance=entry.distance)
