
import numpy as np
import pytest
from hypothesis import given, strategies as st

from graphentropy.codes import validate_code
from graphentropy.constructions import (Block, CLIQUE, DCYCLE, LR_CYCLE, best_blocks,
                                        block_code, block_syndromes, check_block,
                                        construct_code, lr_pair_code, lr_pair_coloring,
                                        sum_zero_code)
from graphentropy.errors import BudgetExceeded
from graphentropy.graph import (DirectedGraph, bidirected_cycle, complete_graph,
                                directed_cycle)
from graphentropy.words import (Code, check_size, digit_table, format_word, index_word,
                                parse_word, word_index)


@given(st.integers(1, 6), st.integers(2, 5), st.data())
def test_word_index_round_trip(n, s, data):
    idx = data.draw(st.integers(0, s ** n - 1))
    w = index_word(idx, n, s)
    assert word_index(w, s) == idx
    assert tuple(digit_table(n, s)[idx]) == w


def test_index_is_big_endian():
    assert word_index((1, 0, 0), 2) == 4
    assert index_word(1, 3, 2) == (0, 0, 1)


def test_format_and_parse():
    assert format_word((0, 1, 1), 2) == "011"
    assert format_word((11, 3), 12) == [11, 3]
    assert parse_word("0121", 3) == (0, 1, 2, 1)
    assert parse_word([11, 0], 12) == (11, 0)
    with pytest.raises(ValueError):
        parse_word("012", 2)


def test_check_size_budget():
    assert check_size(5, 2) == 32
    with pytest.raises(BudgetExceeded):
        check_size(21, 2)


def test_code_json_round_trip():
    c = Code.from_strings(["00101", "10010"])
    assert Code.from_json(c.to_json()) == c
    assert c.to_json()["words"] == ["00101", "10010"]
    with pytest.raises(ValueError):
        Code(frozenset({(0, 2)}), 2, 2)


def test_block_codes_are_valid():
    c5 = bidirected_cycle(5)
    code = lr_pair_code(5, 4)
    assert len(code) == 32 and validate_code(c5, code)
    k4 = complete_graph(4)
    code = sum_zero_code(4, 3)
    assert len(code) == 27 and validate_code(k4, code)
    with pytest.raises(ValueError):
        lr_pair_code(5, 2)


def test_lr_pair_coloring_classes_are_codes():
    c5 = bidirected_cycle(5)
    colours, count = lr_pair_coloring(5, 4)
    assert count == 32
    classes = {}
    for x, c in enumerate(colours):
        classes.setdefault(int(c), []).append(index_word(x, 5, 4))
    assert len(classes) == 32
    assert all(validate_code(c5, Code(frozenset(ws), 5, 4)) for ws in classes.values())


def test_check_block():
    g = directed_cycle(3)
    assert check_block(g, Block(DCYCLE, (0, 1, 2)), 2)
    assert not check_block(g, Block(DCYCLE, (0, 2, 1)), 2)
    assert not check_block(g, Block(CLIQUE, (0, 1)), 2)
    assert not check_block(bidirected_cycle(4), Block(LR_CYCLE, (0, 1, 2, 3)), 2)
    assert check_block(bidirected_cycle(4), Block(LR_CYCLE, (0, 1, 2, 3)), 4)


@pytest.mark.parametrize("g, s, size", [
    (directed_cycle(4), 2, 2),
    (complete_graph(3), 3, 9),
    (bidirected_cycle(5), 4, 32),
    (bidirected_cycle(6), 2, 8),
    (DirectedGraph(3), 2, 1),
])
def test_construct_code_sizes(g, s, size):
    code = construct_code(g, s)
    assert len(code) == size and validate_code(g, code)


def test_block_syndromes_partition_into_codes():
    g = DirectedGraph.from_edges(5, [(0, 1), (1, 2), (2, 0), (4, 4)], bidirected=[(3, 4)])
    blocks = best_blocks(g, 2)
    colours, count = block_syndromes(g, 2, blocks)
    code = block_code(g, 2, blocks)
    assert count * len(code) == 2 ** 5
    assert len(np.unique(colours)) == count
    digits = digit_table(5, 2)
    for c in range(count):
        ws = {tuple(int(x) for x in digits[i]) for i in np.nonzero(colours == c)[0]}
        assert validate_code(g, Code(frozenset(ws), 5, 2))
