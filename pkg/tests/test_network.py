import itertools
import random
from fractions import Fraction

import pytest

from graphentropy import codes
from graphentropy.errors import BudgetExceeded, ParseError, Undetermined
from graphentropy.graph import (DirectedGraph, bidirected_cycle, complete_graph, directed_cycle,
                                enumerate_digraphs, is_acyclic, is_isomorphic, minimal_split,
                                random_dag)
from graphentropy.logvalue import LogValue
from graphentropy.network import (CodingAssignment, Network, coding_capacity_11,
                                  evaluate_network, find_solution, identify, is_solution,
                                  is_solvable, parse_network, split_graph, theorem8_check,
                                  theorem8_harness)

RELAY = "nodes 3\n0 -> 1\n1 -> 2\npair 0 2"
BOTTLENECK = "nodes 5\n0 -> 2\n1 -> 2\n2 -> 3\n2 -> 4\npair 0 3\npair 1 4"
# sources 0, 1; xor node 2; targets 3 (sees 1 and 2) and 4 (sees 0 and 2)
BUTTERFLY = ("nodes 5\n0 -> 2\n1 -> 2\n1 -> 3\n2 -> 3\n0 -> 4\n2 -> 4\n"
             "pair 0 3\npair 1 4")


def xor_assignment(net):
    return CodingAssignment.from_functions(net, 2, {
        2: lambda a, b: a ^ b, 3: lambda b, x: b ^ x, 4: lambda a, x: a ^ x})


# ------------------------------------------------------------------ parsing

def test_parse_relay():
    net = parse_network(RELAY)
    assert net.k == 1 and net.pairs == ((0, 2),)


def test_parse_bottleneck():
    net = parse_network(BOTTLENECK)
    assert net.k == 2 and net.sources == (0, 1) and net.targets == (3, 4)


@pytest.mark.parametrize("text, line", [
    ("nodes 3\n0 -> 1\n1 -> 2\n2 -> 0\npair 1 2", None),
    ("nodes 3\n0 -> 1\n1 -> 2\npair 1 2", 4),
    ("nodes 3\n0 -> 2\n1 -> 2\npair 0 2\npair 1 2", 5),
    ("nodes 3\n0 -> 2\npair 0 3", 3),
    ("nodes 3\n0 -> 2\npair 0", 3),
])
def test_parse_network_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_network(text)
    assert exc.value.line == line


def test_network_round_trip():
    net = parse_network(BUTTERFLY)
    assert parse_network(net.to_text()) == net


def test_network_invariants():
    with pytest.raises(ValueError):
        Network(directed_cycle(3), ())
    with pytest.raises(ValueError):
        Network(DirectedGraph.from_edges(3, [(0, 1), (1, 2)]), ((1, 2),))


# ------------------------------------------------------------- split/identify

def test_split_examples():
    net = split_graph(complete_graph(2), {0})
    assert net.pairs == ((0, 2),) and net.graph.edges == {(0, 1), (1, 2)}
    net = split_graph(directed_cycle(3), {0})
    assert net.graph.edges == {(0, 1), (1, 2), (2, 3)} and net.pairs == ((0, 3),)
    net = split_graph(bidirected_cycle(5), minimal_split(bidirected_cycle(5)))
    assert net.k == 3 and is_acyclic(net.graph)


def test_split_accepts_any_valid_split():
    g = bidirected_cycle(5)
    for k in range(6):
        for B in itertools.combinations(range(5), k):
            if g.induced_acyclic(set(range(5)) - set(B)):
                assert split_graph(g, B).k == k
            else:
                with pytest.raises(ValueError):
                    split_graph(g, B)


def test_identify_examples():
    assert identify(parse_network(RELAY)) == directed_cycle(2)
    g = identify(parse_network(BOTTLENECK))
    assert g.edges == {(0, 2), (1, 2), (2, 0), (2, 1)}


def test_identify_inverts_split_exhaustively():
    for n in range(1, 4):
        for g in enumerate_digraphs(n):
            for k in range(n + 1):
                for B in itertools.combinations(range(n), k):
                    if g.induced_acyclic(set(range(n)) - set(B)):
                        assert identify(split_graph(g, B)) == g


def test_identify_inverts_split_random_n5():
    rng = random.Random(5)
    for _ in range(200):
        g = DirectedGraph(5, frozenset((u, v) for u in range(5) for v in range(5)
                                       if rng.random() < 0.3))
        for B in (minimal_split(g), frozenset(range(5))):
            assert is_isomorphic(identify(split_graph(g, B)), g)


# --------------------------------------------------------------- evaluation

def test_evaluate_examples():
    net = parse_network(RELAY)
    ident = CodingAssignment.from_functions(net, 3, {1: lambda x: x, 2: lambda x: x})
    assert all(evaluate_network(net, ident, (x,)) == (x,) for x in range(3))
    zero = CodingAssignment.from_functions(net, 3, {1: lambda x: 0, 2: lambda x: 0})
    assert all(evaluate_network(net, zero, (x,)) == (0,) for x in range(3))


def test_xor_tree_truth_table():
    # the bottleneck network with an xor middle node and relaying targets
    net = parse_network(BOTTLENECK)
    asg = CodingAssignment.from_functions(net, 2, {
        2: lambda a, b: a ^ b, 3: lambda x: x, 4: lambda x: x})
    table = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0}
    for (a, b), parity in table.items():
        assert evaluate_network(net, asg, (a, b)) == (parity, parity)
    assert not is_solution(net, asg, 2)


def test_is_solution_examples():
    relay = parse_network(RELAY)
    ident = CodingAssignment.from_functions(relay, 2, {1: lambda x: x, 2: lambda x: x})
    assert is_solution(relay, ident, 2)
    bott = parse_network(BOTTLENECK)
    assert find_solution(bott, 2) is None
    fly = parse_network(BUTTERFLY)
    assert is_solution(fly, xor_assignment(fly), 2)


def test_assignment_checks():
    relay = parse_network(RELAY)
    with pytest.raises(ValueError):
        evaluate_network(relay, CodingAssignment(2, {1: (0, 1)}), (0,))
    with pytest.raises(ValueError):
        evaluate_network(relay, CodingAssignment(2, {1: (0,), 2: (0, 1)}), (0,))
    asg = CodingAssignment(2, {1: (0, 1), 2: (0, 1)})
    assert CodingAssignment.from_json(asg.to_json()) == asg


# ---------------------------------------------------------------- theorem 8

def test_split_check_identity_on_k2():
    g = complete_graph(2)
    for s in (2, 3):
        strat = codes.GuessingStrategy.from_functions(g, s, [lambda x: x, lambda x: x])
        r = theorem8_check(g, {0}, strat, s)
        assert r.fixpoints.count == s and r.fixpoint_log == LogValue(s, s)
        assert r.solved and r.equivalent and r.consistent_ok


def test_split_check_constant_on_k2():
    g = complete_graph(2)
    strat = codes.GuessingStrategy.from_functions(g, 2, [lambda x: x, lambda x: 0])
    r = theorem8_check(g, {0}, strat, 2)
    assert r.fixpoints.count == 1 and not r.solved and r.equivalent


def test_split_check_harness():
    reports = theorem8_harness(100, seed=1)
    assert all(r.equivalent and r.consistent_ok for _, _, r in reports)
    assert any(r.solved for _, _, r in reports) and any(not r.solved for _, _, r in reports)


def test_split_check_invalid_split():
    g = directed_cycle(3)
    strat = codes.GuessingStrategy.from_functions(g, 2, [lambda x: x] * 3)
    with pytest.raises(ValueError):
        theorem8_check(g, set(), strat, 2)


def test_split_check_non_minimal_split_flag():
    g = directed_cycle(3)
    strat = codes.GuessingStrategy.from_functions(g, 2, [lambda x: x] * 3)
    r = theorem8_check(g, {0, 1}, strat, 2)
    assert not r.minimal and r.equivalent and not r.solved


# -------------------------------------------------------------- solvability

def test_solvable_examples():
    relay = parse_network(RELAY)
    assert all(is_solvable(relay, s) for s in (2, 3, 5))
    assert not is_solvable(parse_network(BOTTLENECK), 2)
    c5 = bidirected_cycle(5)
    assert not is_solvable(split_graph(c5, minimal_split(c5)), 2)
    assert is_solvable(parse_network(BUTTERFLY), 2)


def test_solvable_sandwich_mode(monkeypatch):
    assert is_solvable(parse_network(RELAY), 2, mode="sandwich")
    assert not is_solvable(parse_network(BOTTLENECK), 2, mode="sandwich")
    c5 = bidirected_cycle(5)
    # k = 3 exceeds the upper bound 5/2, so the sandwich decides it
    assert not is_solvable(split_graph(c5, minimal_split(c5)), 2, mode="sandwich")

    relay = parse_network(RELAY)
    open_bracket = codes.GuessBounds(LogValue(1, 2), Fraction(1), None)
    monkeypatch.setattr(codes, "guessing_bounds", lambda g, s: open_bracket)
    with pytest.raises(Undetermined) as exc:
        is_solvable(relay, 2, mode="sandwich")
    assert exc.value.lower == LogValue(1, 2) and exc.value.upper == 1


def test_capacity_examples():
    assert coding_capacity_11(parse_network(RELAY))
    assert not coding_capacity_11(parse_network(BOTTLENECK))
    rng = random.Random(4)
    for _ in range(5):
        dag = random_dag(4, 0.5, rng)
        # splitting an acyclic graph at any non-empty B leaves an acyclic identified graph
        net = split_graph(dag, {0})
        assert not coding_capacity_11(net)


def test_witness_search_agrees_with_solvability():
    rng = random.Random(12)
    checked = 0
    for _ in range(30):
        g = DirectedGraph(4, frozenset((u, v) for u in range(4) for v in range(4)
                                       if rng.random() < 0.35))
        B = minimal_split(g)
        if not B:
            continue
        net = split_graph(g, B)
        solvable = is_solvable(net, 2)
        if solvable:
            assert coding_capacity_11(net)
        try:
            witness = find_solution(net, 2, max_assignments=2 ** 16)
        except BudgetExceeded:
            continue
        # the assignment search is exhaustive, so it decides solvability on its own
        assert (witness is not None) == solvable
        checked += 1
    assert checked >= 10
