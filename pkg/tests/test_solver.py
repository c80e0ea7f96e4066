import math
import random

import pytest

from oblot.errors import InputError
from oblot.graphs import Configuration, Graph
from oblot.hypergraph import build
from oblot.moves import Move
from oblot.problems import ProblemSpec, resolve_final_set
from oblot.solver import MoveDecision, decide, move_to, plan, solve

from bruteforce import (
    all_placements,
    config_isomorphic,
    connected_graph_corpus,
    game_solve,
    mtf_recursive,
    random_graph,
)

GATHER = ProblemSpec(kind="gathering")


def _gather_setup(g, k):
    h = build(g, k)
    fin = resolve_final_set(GATHER, h)
    result = solve(h, fin)
    return h, fin, result


def test_k23_gathering_solvable_set(k23):
    h, fin, result = _gather_setup(k23, 2)
    mixed = h.index_of(Configuration(k23, (1, 0, 1, 0, 0)))
    dist2 = h.index_of(Configuration(k23, (1, 1, 0, 0, 0)))
    dist3 = h.index_of(Configuration(k23, (0, 0, 1, 1, 0)))
    assert result.final == fin
    assert result.solvable == fin | {mixed}
    assert dist2 not in result.solvable
    assert dist3 not in result.solvable


def test_k23_gathering_plan(k23):
    h, fin, result = _gather_setup(k23, 2)
    entries = plan(h, fin, result)
    mixed = h.index_of(Configuration(k23, (1, 0, 1, 0, 0)))
    assert set(entries) == set(result.solvable)
    for i in fin:
        assert entries[i].distance == 0 and entries[i].move is None
    e = entries[mixed]
    assert e.distance == 1
    # nil on the three-side orbit wins the tie-break against moving both
    assert e.move == Move(assignments=((3, None), (4, 3)))
    # and the chosen arc lands on the three-side multiplicity
    mult3 = h.index_of(Configuration(k23, (0, 0, 2, 0, 0)))
    arcs = {a.moves: a.delta for a in h.arcs_by_source[mixed]}
    chosen = next(d for ms, d in arcs.items() if e.move in ms)
    assert chosen == (mult3,)


def test_all_final_means_all_distance_zero(k23):
    h = build(k23, 2)
    fin = frozenset(range(len(h.configs)))
    result = solve(h, fin)
    assert result.solvable == fin
    entries = plan(h, fin, result)
    assert all(e.distance == 0 and e.move is None for e in entries.values())


def test_c4_gathering_unsolvable_everywhere_but_final(c4_cycle):
    # both the antipodal and the adjacent placement are stuck by symmetry
    h, fin, result = _gather_setup(c4_cycle, 2)
    assert result.solvable == fin
    assert len(fin) == 1


def test_small_path_facts(p3, p4, k2):
    h, fin, result = _gather_setup(p3, 2)
    entries = plan(h, fin, result)
    ends = h.index_of(Configuration(p3, (1, 0, 1)))
    assert entries[ends].distance == 1

    h, fin, result = _gather_setup(k2, 2)
    assert h.index_of(Configuration(k2, (1, 1))) not in result.solvable

    h, fin, result = _gather_setup(p4, 2)
    entries = plan(h, fin, result)
    assert h.index_of(Configuration(p4, (1, 0, 0, 1))) not in result.solvable
    assert entries[h.index_of(Configuration(p4, (1, 1, 0, 0)))].distance == 1


def test_p5_endpoints_distance_two():
    p5 = Graph(n=5, edges=((0, 1), (1, 2), (2, 3), (3, 4)))
    h, fin, result = _gather_setup(p5, 2)
    entries = plan(h, fin, result)
    ends = h.index_of(Configuration(p5, (1, 0, 0, 0, 1)))
    assert entries[ends].distance == 2


def _assert_bellman(h, fin, result, entries):
    for i in range(len(h.configs)):
        usable = [
            a
            for a in h.arcs_by_source.get(i, ())
            if all(d in result.solvable for d in a.delta)
        ]
        if i in fin:
            assert entries[i].distance == 0
        elif i in result.solvable:
            best = min(1 + max(entries[d].distance for d in a.delta) for a in usable)
            assert entries[i].distance == best
        else:
            assert not usable


def test_distances_satisfy_bellman_optimality(k23):
    for g, k in ((k23, 2), (k23, 3)):
        h, fin, result = _gather_setup(g, k)
        entries = plan(h, fin, result)
        _assert_bellman(h, fin, result, entries)


def _raw_gather_final(k):
    return lambda lam: any(x == k for x in lam)


def test_agrees_with_raw_game_oracle_named(k23, c4_cycle, p3, p4, k2):
    for g in (k23, c4_cycle, p3, p4, k2):
        h, fin, result = _gather_setup(g, 2)
        entries = plan(h, fin, result)
        solvable_raw, dist_raw = game_solve(g, 2, _raw_gather_final(2))
        for lam in all_placements(g.n, 2):
            i = h.index_of(Configuration(g, lam))
            assert (lam in solvable_raw) == (i in result.solvable)
            if lam in solvable_raw:
                assert dist_raw[lam] == entries[i].distance


def test_agrees_with_raw_game_oracle_random():
    rng = random.Random(20414)
    for _ in range(12):
        n = rng.randrange(2, 6)
        k = rng.randrange(2, 4)
        g = random_graph(rng, n)
        targets = tuple(
            tuple(lam) for lam in rng.sample(all_placements(n, k), rng.randrange(1, 4))
        )
        spec = ProblemSpec(kind="explicit", targets=targets)
        h = build(g, k)
        fin = resolve_final_set(spec, h)
        result = solve(h, fin)
        entries = plan(h, fin, result)

        def raw_final(lam, g=g, targets=targets):
            return any(
                config_isomorphic(Configuration(g, lam), Configuration(g, t))
                for t in targets
            )

        solvable_raw, dist_raw = game_solve(g, k, raw_final)
        for lam in all_placements(n, k):
            i = h.index_of(Configuration(g, lam))
            assert (lam in solvable_raw) == (i in result.solvable)
            if lam in solvable_raw:
                assert dist_raw[lam] == entries[i].distance


def test_matches_recursive_transcription_k23(k23):
    h, fin, result = _gather_setup(k23, 2)
    entries = plan(h, fin, result)
    for i in range(len(h.configs)):
        d, m = mtf_recursive(h, fin, result.solvable, i)
        if i in result.solvable:
            assert (d, m) == (entries[i].distance, entries[i].move)
        else:
            assert d == math.inf


def test_matches_recursive_transcription_corpus():
    for g in connected_graph_corpus(4):
        for k in (1, 2):
            h, fin, result = _gather_setup(g, k)
            entries = plan(h, fin, result)
            for i in sorted(result.solvable):
                d, m = mtf_recursive(h, fin, result.solvable, i)
                assert (d, m) == (entries[i].distance, entries[i].move)


def test_plan_deterministic(k23):
    h, fin, result = _gather_setup(k23, 2)
    assert plan(h, fin, result) == plan(h, fin, result)


def test_plan_rejects_foreign_solvability(k23):
    h, fin, result = _gather_setup(k23, 2)
    with pytest.raises(InputError, match="different final set"):
        plan(h, frozenset([0]), result)


def test_final_indices_validated(k23):
    h = build(k23, 2)
    with pytest.raises(InputError, match="out of range"):
        solve(h, {99})


def test_move_to_statuses(k23, c4_cycle):
    final = move_to(Configuration(k23, (0, 2, 0, 0, 0)), GATHER)
    assert final == MoveDecision(status="final")
    assert final.to_json_obj() == {"status": "final"}

    stuck = move_to(Configuration(c4_cycle, (1, 0, 1, 0)), GATHER)
    assert stuck == MoveDecision(status="unsolvable")
    assert stuck.to_json_obj() == {"status": "unsolvable"}

    step = move_to(Configuration(k23, (0, 1, 1, 0, 0)), GATHER)
    assert step.status == "step"
    assert step.distance == 1
    assert step.to_json_obj() == {
        "status": "step",
        "move": [[3, None], [4, 3]],
        "distance": 1,
    }


def test_decide_uses_class_of_argument(k23):
    h, fin, result = _gather_setup(k23, 2)
    entries = plan(h, fin, result)
    mixed = h.index_of(Configuration(k23, (0, 1, 0, 0, 1)))
    d = decide(h, fin, result, entries, mixed)
    assert d.status == "step" and d.distance == 1
