import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from graphentropy.errors import ParseError
from graphentropy.graph import (
    DirectedGraph, all_self_loops, bidirected_cycle, canonical_form, complete_graph,
    directed_cycle, enumerate_digraphs, enumerate_tournaments, has_topological_order,
    induced_subgraph, is_acyclic, is_isomorphic, max_induced_acyclic,
    max_induced_acyclic_bruteforce, minimal_split, parse_graph, random_dag, random_graph,
    relabel, reverse, shift, topological_order)

C5_TEXT = "nodes 5\n0 <-> 1\n1 <-> 2\n2 <-> 3\n3 <-> 4\n4 <-> 0"


@st.composite
def graphs(draw, max_n=6, loops=True):
    n = draw(st.integers(1, max_n))
    cells = [(u, v) for u in range(n) for v in range(n) if loops or u != v]
    chosen = draw(st.lists(st.sampled_from(cells), unique=True)) if cells else []
    return DirectedGraph(n, frozenset(chosen))


# ------------------------------------------------------------------ parsing

def test_parse_single_edge():
    g = parse_graph("nodes 2\n0 -> 1")
    assert g.n == 2 and g.edges == {(0, 1)}


def test_parse_pentagon_has_ten_ordered_edges():
    g = parse_graph(C5_TEXT)
    assert g.n == 5 and len(g.edges) == 10
    assert g == bidirected_cycle(5)


def test_parse_self_loop():
    g = parse_graph("nodes 1\n0 -> 0")
    assert g.edges == {(0, 0)}


def test_parse_comments_and_blank_lines():
    g = parse_graph("# header\n\nnodes 3\n# edge list\n0 -> 1\n\n1 -> 2\n")
    assert g.edges == {(0, 1), (1, 2)}


@pytest.mark.parametrize("text, line", [
    ("nodes 2\n0 -> 2", 2),
    ("nodes 2\n0 -> 1\n0 -> 1", 3),
    ("nodes 2\n0 -> 1 extra", 2),
    ("nodes 2\n0->1", 2),
    ("nodes 2\na -> b", 2),
    ("nodes 3\n0 -> 1\n1 <-> 0", 3),
    ("0 -> 1", 1),
])
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(ParseError) as exc:
        parse_graph(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_parse_requires_nodes_header():
    with pytest.raises(ParseError):
        parse_graph("# only a comment\n")


def test_to_text_round_trip():
    g = parse_graph(C5_TEXT)
    assert parse_graph(g.to_text()) == g


def test_constructor_rejects_out_of_range():
    with pytest.raises(ValueError):
        DirectedGraph(2, frozenset({(0, 2)}))
    with pytest.raises(ValueError):
        DirectedGraph(0)
    with pytest.raises(ValueError):
        DirectedGraph(25)


def test_in_neighbors_sorted():
    g = DirectedGraph(4, frozenset({(3, 0), (1, 0), (2, 0)}))
    assert g.in_neighbors(0) == (1, 2, 3)
    assert g.in_neighbors(1) == ()


# ------------------------------------------------------------- acyclicity

def test_acyclic_examples():
    assert is_acyclic(DirectedGraph(4))
    assert not is_acyclic(directed_cycle(3))
    assert not is_acyclic(parse_graph("nodes 1\n0 -> 0"))


def test_acyclic_agrees_with_topological_order_oracle():
    rng = random.Random(11)
    for _ in range(1000):
        n = rng.randint(1, 8)
        g = random_graph(n, rng.uniform(0.05, 0.4), rng, loops=rng.random() < 0.2)
        assert is_acyclic(g) == has_topological_order(g)


def test_topological_order_respects_edges():
    rng = random.Random(3)
    for _ in range(50):
        g = random_dag(7, 0.4, rng)
        order = topological_order(g)
        pos = {v: i for i, v in enumerate(order)}
        assert all(pos[u] < pos[v] for u, v in g.edges)


# ------------------------------------------------------------ transforms

def test_reverse_examples():
    assert reverse(bidirected_cycle(5)) == bidirected_cycle(5)
    assert reverse(DirectedGraph(2, frozenset({(0, 1)}))).edges == {(1, 0)}


@given(graphs())
def test_reverse_involution(g):
    assert reverse(reverse(g)) == g


def test_shift_examples():
    g = DirectedGraph(3, frozenset({(0, 1)}))
    assert shift(g, 0) == g
    assert shift(g, 1).edges == {(0, 2)}
    with pytest.raises(ValueError):
        shift(g, 3)


@given(graphs(), st.data())
def test_shift_properties(g, data):
    t = data.draw(st.integers(0, g.n - 1))
    h = shift(g, t)
    assert len(h.edges) == len(g.edges)
    assert shift(h, (g.n - t) % g.n) == g
    assert all(((u, (v + t) % g.n) in h.edges) for u, v in g.edges)


def test_relabel_and_induced_subgraph():
    g = directed_cycle(4)
    h = relabel(g, [1, 2, 3, 0])
    assert is_isomorphic(g, h)
    sub, mapping = induced_subgraph(g, {0, 1, 2})
    assert sub.n == 3 and len(sub.edges) == 2 and is_acyclic(sub)
    assert sorted(mapping) == [0, 1, 2]


# ------------------------------------------------------ acyclic sets, splits

def test_max_induced_acyclic_examples():
    rng = random.Random(5)
    dag = random_dag(6, 0.5, rng)
    assert max_induced_acyclic(dag) == (6, frozenset(range(6)))
    size, witness = max_induced_acyclic(bidirected_cycle(5))
    assert size == 2 and bidirected_cycle(5).induced_acyclic(witness)
    assert max_induced_acyclic(complete_graph(4))[0] == 1


def test_pentagon_acyclic_bruteforce():
    g = bidirected_cycle(5)
    best = max(len(S) for r in range(6) for S in itertools.combinations(range(5), r)
               if g.induced_acyclic(S))
    assert best == 2


def test_minimal_split_examples():
    assert minimal_split(random_dag(5, 0.5, random.Random(1))) == frozenset()
    B = minimal_split(complete_graph(3))
    assert len(B) == 2
    for k in (3, 4, 5):
        B = minimal_split(directed_cycle(k))
        assert len(B) == 1


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=7))
def test_split_and_acyclic_sizes_complement(g):
    size, witness = max_induced_acyclic(g)
    assert size == len(witness) and g.induced_acyclic(witness)
    assert size == max_induced_acyclic_bruteforce(g)
    B = minimal_split(g)
    assert len(B) + size == g.n
    assert g.induced_acyclic(set(range(g.n)) - B)


def test_acyclic_search_on_larger_graphs():
    rng = random.Random(9)
    for _ in range(5):
        g = random_graph(12, 0.25, rng, loops=True)
        size, w = max_induced_acyclic(g)
        assert g.induced_acyclic(w) and size == max_induced_acyclic_bruteforce(g)


# --------------------------------------------------------------- tournaments

@pytest.mark.parametrize("n, count", [(2, 1), (3, 2), (4, 4), (5, 12), (6, 56)])
def test_tournament_counts(n, count):
    reps = enumerate_tournaments(n)
    assert len(reps) == count
    for t in reps:
        assert len(t.edges) == n * (n - 1) // 2
        assert all(t.has_edge(u, v) != t.has_edge(v, u)
                   for u, v in itertools.combinations(range(n), 2))


def test_tournaments_pairwise_non_isomorphic():
    for n in (4, 5):
        reps = enumerate_tournaments(n)
        scores = [tuple(sorted(len(t.out_neighbors(v)) for v in range(n))) for t in reps]
        for (a, sa), (b, sb) in itertools.combinations(zip(reps, scores), 2):
            if sa != sb:
                continue
            assert not any(relabel(a, p) == b for p in itertools.permutations(range(n)))


def test_tournament_range():
    with pytest.raises(ValueError):
        enumerate_tournaments(7)
    with pytest.raises(ValueError):
        enumerate_tournaments(1)


def test_canonical_form_is_permutation_invariant():
    rng = random.Random(2)
    for _ in range(30):
        g = random_graph(5, 0.4, rng, loops=True)
        perm = list(range(5))
        rng.shuffle(perm)
        assert canonical_form(relabel(g, perm)) == canonical_form(g)


@pytest.mark.parametrize("n, count", [(1, 2), (2, 10), (3, 104)])
def test_digraph_class_counts_with_loops(n, count):
    # known counts of digraphs with loops up to isomorphism (OEIS A000595)
    assert len(enumerate_digraphs(n, loops=True)) == count


@pytest.mark.parametrize("n, count", [(2, 3), (3, 16), (4, 218)])
def test_digraph_class_counts_without_loops(n, count):
    # OEIS A000273
    assert len(enumerate_digraphs(n, loops=False)) == count


def test_families():
    assert all_self_loops(3).edges == {(0, 0), (1, 1), (2, 2)}
    assert len(complete_graph(4).edges) == 12
    assert len(bidirected_cycle(6).edges) == 12
    assert directed_cycle(1).edges == {(0, 0)}
