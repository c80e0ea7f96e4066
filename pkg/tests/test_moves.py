import pytest
from hypothesis import given
from hypothesis import strategies as st

from oblot.canonical import automorphism_orbits, canonical_configuration
from oblot.errors import InputError, InternalError
from oblot.graphs import Configuration, Graph
from oblot.moves import (
    Move,
    compare_moves,
    enumerate_moves,
    fsync_outcomes,
    move_from_json_obj,
    raw_fsync_outcomes,
    raw_ssync_outcomes,
    ssync_outcomes,
)

from bruteforce import (
    all_placements,
    connected_graph_corpus,
    orbit_of,
    raw_move_outcomes,
    raw_moves,
    raw_ssync_move_outcomes,
)


def _configs(max_n: int, max_k: int):
    for g in connected_graph_corpus(max_n):
        for k in range(1, max_k + 1):
            for lam in all_placements(g.n, k):
                yield Configuration(g, lam)


def test_k23_mixed_has_eight_sorted_moves(k23):
    c = Configuration(k23, (1, 0, 1, 0, 0))
    p = automorphism_orbits(c)
    moves = enumerate_moves(c, p)
    assert len(moves) == 8
    assert all(m.sources == (3, 4) for m in moves)
    keys = [m.sort_key() for m in moves]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_move_count_matches_bruteforce():
    for c in _configs(4, 2):
        p = automorphism_orbits(c)
        assert len(enumerate_moves(c, p)) == len(raw_moves(c.graph, c.lam))


def _as_brute_move(p, m: Move):
    orbit_sets = {frozenset(o) for o in p.orbits}
    out = {}
    for rank, target in m.assignments:
        src = orbit_of(orbit_sets, p.orbit_of_rank(rank)[0])
        dst = None if target is None else orbit_of(orbit_sets, p.orbit_of_rank(target)[0])
        out[src] = dst
    return out


def test_fsync_raw_outcomes_match_per_robot_oracle():
    # destination multisets per vertex vs per-robot cartesian product
    for c in _configs(4, 2):
        p = automorphism_orbits(c)
        orbits = {frozenset(o) for o in p.orbits}
        for m in enumerate_moves(c, p):
            got = set(raw_fsync_outcomes(c, p, m))
            want = raw_move_outcomes(c.graph, c.lam, orbits, _as_brute_move(p, m))
            assert got == want


def test_ssync_raw_outcomes_match_per_robot_oracle():
    for c in _configs(4, 2):
        p = automorphism_orbits(c)
        orbits = {frozenset(o) for o in p.orbits}
        for m in enumerate_moves(c, p):
            got = set(raw_ssync_outcomes(c, p, m))
            want = raw_ssync_move_outcomes(c.graph, c.lam, orbits, _as_brute_move(p, m))
            assert got == want


def test_outcomes_conserve_robots():
    for c in _configs(4, 2):
        k = sum(c.lam)
        p = automorphism_orbits(c)
        for m in enumerate_moves(c, p):
            for lam in raw_ssync_outcomes(c, p, m):
                assert sum(lam) == k


def test_fsync_subset_of_ssync():
    for c in _configs(4, 2):
        p = automorphism_orbits(c)
        for m in enumerate_moves(c, p):
            assert fsync_outcomes(c, p, m).forms <= ssync_outcomes(c, p, m).forms


def test_compare_moves_nil_below_rank():
    a = Move(assignments=((1, None), (2, 1)))
    b = Move(assignments=((1, 2), (2, 1)))
    assert compare_moves(a, b) == -1
    assert compare_moves(b, a) == 1
    assert compare_moves(a, a) == 0


def test_compare_moves_swap_is_least_without_nil():
    # two mutually adjacent occupied orbits 1, 2 with private targets 4, 3:
    # among the moves where both orbits receive an instruction the
    # exchange (1 -> 2, 2 -> 1) sorts first
    both_move = [
        Move(assignments=((1, a), (2, b))) for a in (2, 4) for b in (1, 3)
    ]
    least = min(both_move, key=Move.sort_key)
    assert least == Move(assignments=((1, 2), (2, 1)))


def test_compare_moves_incomparable():
    a = Move(assignments=((1, None),))
    b = Move(assignments=((2, None),))
    with pytest.raises(InputError, match="incomparable"):
        compare_moves(a, b)


def test_move_json_round_trip():
    m = Move(assignments=((0, None), (3, 1)))
    assert m.to_json_obj() == [[0, None], [3, 1]]
    assert move_from_json_obj(m.to_json_obj()) == m


def test_move_from_json_errors():
    with pytest.raises(InputError, match="list of pairs"):
        move_from_json_obj({"0": 1})
    with pytest.raises(InputError, match="must be a pair"):
        move_from_json_obj([[0, 1, 2]])
    with pytest.raises(InputError, match="int, int"):
        move_from_json_obj([[0, "x"]])


def test_target_of_unknown_rank():
    m = Move(assignments=((0, 1),))
    assert m.target_of(0) == 1
    with pytest.raises(InternalError, match="no assignment"):
        m.target_of(5)


def test_k2_swap_keeps_class(k2):
    c = Configuration(k2, (1, 1))
    p = automorphism_orbits(c)
    moves = enumerate_moves(c, p)
    assert moves == (Move(assignments=((0, 0),)),)
    out = fsync_outcomes(c, p, moves[0])
    assert out.forms == {canonical_configuration(c)}
    # under adversarial activation a lone mover creates a multiplicity
    sout = ssync_outcomes(c, p, moves[0])
    assert sout.forms == {
        canonical_configuration(c),
        canonical_configuration(Configuration(k2, (2, 0))),
    }


def test_isolated_vertex_has_no_moves():
    c = Configuration(Graph(n=1, edges=()), (2,))
    p = automorphism_orbits(c)
    assert enumerate_moves(c, p) == ()


def test_k23_distinct_two_side_outcomes(k23):
    # both robots on the two-vertex side: a single move, two classes under
    # full activation, one extra (the mixed class) under adversarial activation
    c = Configuration(k23, (1, 1, 0, 0, 0))
    p = automorphism_orbits(c)
    moves = enumerate_moves(c, p)
    assert len(moves) == 1
    f = fsync_outcomes(c, p, moves[0])
    assert f.forms == {
        canonical_configuration(Configuration(k23, (0, 0, 2, 0, 0))),
        canonical_configuration(Configuration(k23, (0, 0, 1, 1, 0))),
    }
    s = ssync_outcomes(c, p, moves[0])
    assert s.forms == f.forms | {
        canonical_configuration(Configuration(k23, (1, 0, 1, 0, 0)))
    }


def _permuted(g: Graph, lam, perm):
    edges = tuple((perm[a], perm[b]) for a, b in g.edges)
    new_lam = [0] * g.n
    for v in range(g.n):
        new_lam[perm[v]] = lam[v]
    return Configuration(Graph(n=g.n, edges=edges), tuple(new_lam))


@given(st.integers(2, 5), st.data())
def test_moves_and_outcomes_invariant_under_relabeling(n, data):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = tuple(p for p in pairs if data.draw(st.booleans()))
    g = Graph(n=n, edges=edges)
    lam = list(data.draw(st.integers(0, 1)) for _ in range(n))
    if sum(lam) == 0:
        lam[data.draw(st.integers(0, n - 1))] = 1
    perm = tuple(data.draw(st.permutations(range(n))))
    c1 = Configuration(g, tuple(lam))
    c2 = _permuted(g, tuple(lam), perm)
    p1 = automorphism_orbits(c1)
    p2 = automorphism_orbits(c2)
    m1 = enumerate_moves(c1, p1)
    m2 = enumerate_moves(c2, p2)
    assert [m.sort_key() for m in m1] == [m.sort_key() for m in m2]
    for a, b in zip(m1, m2):
        assert fsync_outcomes(c1, p1, a).encodings == fsync_outcomes(c2, p2, b).encodings
        assert ssync_outcomes(c1, p1, a).encodings == ssync_outcomes(c2, p2, b).encodings
