"""Round-by-round FSYNC execution against pluggable adversaries.

Each round the robots recompute their decision from the current
configuration's class alone (they are oblivious); if the decision is a step,
the adversary resolves which vertex every robot lands on inside its target
orbit.  The worst adversary consults the planner's distance table, the random
adversary draws reproducibly from a seeded generator, and the first adversary
always picks the lexicographically smallest raw placement.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .canonical import automorphism_orbits, canonical_form
from .errors import BudgetExceededError, InputError
from .graphs import Configuration, total_robots, validate_configuration
from .hypergraph import ConfigHypergraph, build
from .moves import fsync_outcomes, raw_fsync_outcomes
from .problems import ProblemSpec, resolve_final_set
from .solver import (
    FINAL,
    STEP,
    UNSOLVABLE,
    MoveDecision,
    PlanEntry,
    SolvabilityResult,
    decide,
    plan,
    solve,
)

REACHED_FINAL = "reached_final"
MAX_ROUNDS_EXCEEDED = "max_rounds_exceeded"

ADVERSARY_KINDS = ("worst", "random", "first")


@dataclass(frozen=True)
class AdversaryStrategy:
    kind: str
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ADVERSARY_KINDS:
            raise InputError(
                f"unknown adversary {self.kind!r}; expected one of {ADVERSARY_KINDS}"
            )
        if (self.kind == "random") != (self.seed is not None):
            raise InputError("exactly the random adversary takes a seed")


def parse_adversary(text: str) -> AdversaryStrategy:
    """Parse ``worst``, ``first``, or ``random:<seed>``."""
    if text in ("worst", "first"):
        return AdversaryStrategy(kind=text)
    if text.startswith("random:"):
        try:
            seed = int(text.split(":", 1)[1])
        except ValueError:
            raise InputError(f"random adversary needs an integer seed, got {text!r}") from None
        return AdversaryStrategy(kind="random", seed=seed)
    raise InputError(
        f"unknown adversary {text!r}; expected worst, first, or random:<seed>"
    )


@dataclass(frozen=True)
class RoundRecord:
    round: int
    lam: tuple[int, ...]
    decision: MoveDecision
    outcome_lam: tuple[int, ...]

    def to_json_obj(self) -> dict:
        return {
            "round": self.round,
            "lambda": list(self.lam),
            "decision": self.decision.to_json_obj(),
            "outcome_lambda": list(self.outcome_lam),
        }


@dataclass(frozen=True)
class ExecutionTrace:
    status: str
    rounds: tuple[RoundRecord, ...]

    def to_json_obj(self) -> dict:
        return {
            "status": self.status,
            "rounds": [r.to_json_obj() for r in self.rounds],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":")) + "\n"


@dataclass(frozen=True)
class _SolverState:
    """Hypergraph and solver tables computed once per execution."""

    h: ConfigHypergraph
    final: frozenset[int]
    result: SolvabilityResult
    entries: dict[int, PlanEntry] = field(compare=False)

    def index_of(self, lam: tuple[int, ...]) -> int:
        return self.h.index[canonical_form(self.h.graph, lam).encoding]

    def remaining_distance(self, lam: tuple[int, ...]) -> int:
        return self.entries[self.index_of(lam)].distance


def _solver_state(c0: Configuration, spec: ProblemSpec) -> _SolverState:
    h = build(c0.graph, total_robots(c0), "fsync")
    fin = resolve_final_set(spec, h)
    result = solve(h, fin)
    entries = plan(h, fin, result)
    return _SolverState(h=h, final=fin, result=result, entries=entries)


def _pick_outcome(
    state: _SolverState,
    outcomes: tuple[tuple[int, ...], ...],
    adversary: AdversaryStrategy,
    rng: random.Random | None,
) -> tuple[int, ...]:
    if adversary.kind == "first":
        return outcomes[0]
    if adversary.kind == "random":
        assert rng is not None
        return rng.choice(outcomes)
    # worst: maximize remaining distance; break ties toward the smallest
    # canonical encoding, then the smallest raw placement, so runs replay
    # byte-identically.
    def key(lam: tuple[int, ...]) -> tuple[int, bytes, tuple[int, ...]]:
        enc = canonical_form(state.h.graph, lam).encoding
        return (-state.remaining_distance(lam), enc, lam)

    return min(outcomes, key=key)


def run_fsync(
    c0: Configuration,
    spec: ProblemSpec,
    adversary: AdversaryStrategy,
    max_rounds: int | None = None,
) -> ExecutionTrace:
    """Execute the optimal algorithm from ``c0`` until F, unsolvable, or budget.

    The hypergraph is computed once and reused across rounds, which is
    observationally identical to recomputing it (the decision is a pure
    function of the class).  An unsolvable start records a single nil round
    and stops: the robots never move.  ``max_rounds`` bounds the number of
    executed steps and defaults to plan distance + 1 when solvable, else 1,
    so an overrun always signals a planner defect rather than a slow run.
    """
    validate_configuration(c0)
    state = _solver_state(c0, spec)
    rng = random.Random(adversary.seed) if adversary.kind == "random" else None
    idx0 = state.index_of(c0.lam)
    if max_rounds is None:
        solvable0 = idx0 in state.result.solvable
        max_rounds = state.entries[idx0].distance + 1 if solvable0 else 1
    if max_rounds < 1:
        raise InputError(f"max_rounds must be positive, got {max_rounds}")
    records: list[RoundRecord] = []
    cur = c0.lam
    t = 0
    while True:
        idx = state.index_of(cur)
        decision = decide(state.h, state.final, state.result, state.entries, idx)
        if decision.status == FINAL:
            records.append(RoundRecord(round=t, lam=cur, decision=decision, outcome_lam=cur))
            return ExecutionTrace(status=REACHED_FINAL, rounds=tuple(records))
        if decision.status == UNSOLVABLE:
            records.append(RoundRecord(round=t, lam=cur, decision=decision, outcome_lam=cur))
            return ExecutionTrace(status=UNSOLVABLE, rounds=tuple(records))
        if t >= max_rounds:
            return ExecutionTrace(status=MAX_ROUNDS_EXCEEDED, rounds=tuple(records))
        assert decision.status == STEP and decision.move is not None
        conf = Configuration(graph=state.h.graph, lam=cur)
        p = automorphism_orbits(conf)
        outcomes = raw_fsync_outcomes(conf, p, decision.move)
        chosen = _pick_outcome(state, outcomes, adversary, rng)
        records.append(RoundRecord(round=t, lam=cur, decision=decision, outcome_lam=chosen))
        cur = chosen
        t += 1


@dataclass(frozen=True)
class PlaySummary:
    max_rounds_used: int
    min_rounds_used: int
    all_reach_final: bool


def enumerate_adversary_plays(
    c0: Configuration,
    spec: ProblemSpec,
    bound: int | None = None,
    node_cap: int = 100_000,
) -> PlaySummary:
    """Exhaust every adversary resolution under optimal robot play.

    Decision and outcomes depend only on the class, so the recursion memoizes
    per class; planned moves strictly decrease the distance, which bounds the
    depth.  ``bound``, when given, must be at least the plan distance of the
    start; ``node_cap`` aborts pathologically large explorations loudly
    instead of truncating them.
    """
    validate_configuration(c0)
    state = _solver_state(c0, spec)
    idx0 = state.index_of(c0.lam)
    if idx0 not in state.result.solvable:
        raise InputError("start configuration is unsolvable; nothing to enumerate")
    if bound is not None and bound < state.entries[idx0].distance:
        raise InputError(
            f"bound {bound} is below the plan distance {state.entries[idx0].distance}"
        )
    memo: dict[int, PlaySummary] = {}
    visited = 0

    def explore(idx: int) -> PlaySummary:
        nonlocal visited
        if idx in memo:
            return memo[idx]
        visited += 1
        if visited > node_cap:
            raise BudgetExceededError(
                f"adversary-play enumeration exceeded the node cap of {node_cap}"
            )
        if idx in state.final:
            summary = PlaySummary(0, 0, True)
            memo[idx] = summary
            return summary
        entry = state.entries[idx]
        assert entry.move is not None
        rep = state.h.configs[idx].rep
        p = automorphism_orbits(rep)
        children = sorted(
            state.h.index[enc]
            for enc in fsync_outcomes(rep, p, entry.move).encodings
        )
        subs = [explore(ch) for ch in children]
        summary = PlaySummary(
            max_rounds_used=1 + max(s.max_rounds_used for s in subs),
            min_rounds_used=1 + min(s.min_rounds_used for s in subs),
            all_reach_final=all(s.all_reach_final for s in subs),
        )
        memo[idx] = summary
        return summary

    return explore(idx0)
