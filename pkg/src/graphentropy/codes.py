"""Guessing numbers, graph codes, guessing strategies and index codes.

Two words u, v *conflict* on a graph when some vertex j sees the same
letters on all its in-neighbours in u and v but u_j != v_j. A graph code is
a conflict-free word set; the fixpoints of any guessing strategy form one,
and any graph code is contained in the fixpoints of the strategy it induces.
So the guessing number is log_s of the independence number of the
*confusion graph* (words joined when they conflict), and the shortest index
code is log_s of its chromatic number.

Whether two words conflict only depends on which coordinates of u - v
(mod s) vanish, so the confusion graph is a Cayley graph on Z_s^n. The
exact maximum-code search uses this to fix the zero word in the code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from . import constructions, search
from .errors import BudgetExceeded
from .graph import DirectedGraph, max_induced_acyclic
from .logvalue import Complement, LogValue
from .words import (Code, check_size, digit_table, format_word, index_word,
                    neighbor_keys, parse_word, place_values, word_index)

EXACT_WORDS = 2 ** 15
GREEDY_WORDS = 2 ** 12
DEFAULT_NODES = 5_000_000


def conflicts(g: DirectedGraph, s: int, u, v) -> bool:
    """Whether words u and v cannot both belong to a graph code of g."""
    if len(u) != g.n or len(v) != g.n:
        raise ValueError(f"words must have length {g.n}")
    for x in (*u, *v):
        if not 0 <= x < s:
            raise ValueError(f"letter {x} outside 0..{s - 1}")
    for j in range(g.n):
        if u[j] != v[j] and all(u[i] == v[i] for i in g.in_neighbors(j)):
            return True
    return False


def _conflicting_differences(g: DirectedGraph, s: int) -> np.ndarray:
    # conflict[d] for every difference word d = u - v mod s
    digits = digit_table(g.n, s)
    zero = digits == 0
    out = np.zeros(digits.shape[0], dtype=bool)
    for j in range(g.n):
        ins = list(g.in_neighbors(j))
        agree = zero[:, ins].all(axis=1) if ins else np.ones(digits.shape[0], dtype=bool)
        out |= agree & ~zero[:, j]
    return out


def _mask_to_int(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


class _Rows:
    """Lazily materialised bitset rows of a Cayley graph on Z_s^n."""

    def __init__(self, digits, s, connection: np.ndarray):
        self.digits = digits
        self.s = s
        self.connection = connection
        self.places = place_values(digits.shape[1], s)
        self.cache = {}

    def __len__(self):
        return self.digits.shape[0]

    def neighbours_mask(self, x: int) -> np.ndarray:
        diff = ((self.digits - self.digits[x]) % self.s) @ self.places
        return self.connection[diff]

    def __getitem__(self, x: int) -> int:
        r = self.cache.get(x)
        if r is None:
            r = self.cache[x] = _mask_to_int(self.neighbours_mask(x))
        return r

    def __iter__(self):
        return (self[x] for x in range(len(self)))


class ConfusionGraph:
    """Undirected graph on A^n; words adjacent iff they conflict on g."""

    def __init__(self, g: DirectedGraph, s: int):
        self.g = g
        self.s = s
        self.size = check_size(g.n, s)
        self.digits = digit_table(g.n, s)
        self.conflict_difference = _conflicting_differences(g, s)
        self.conflict_difference.setflags(write=False)
        self.rows = _Rows(self.digits, s, self.conflict_difference)
        compat = ~self.conflict_difference
        compat[0] = False
        self.compat_rows = _Rows(self.digits, s, compat)

    def adjacent(self, x: int, y: int) -> bool:
        diff = int(((self.digits[x] - self.digits[y]) % self.s) @ place_values(self.g.n, self.s))
        return bool(self.conflict_difference[diff])

    def word(self, x: int) -> tuple:
        return index_word(x, self.g.n, self.s)

    def edge_count(self) -> int:
        return int(self.conflict_difference.sum()) * self.size // 2

    def greedy_code_indices(self, order=None) -> list:
        """A maximal conflict-free set, scanning words in ``order``."""
        alive = np.ones(self.size, dtype=bool)
        chosen = []
        for x in (range(self.size) if order is None else order):
            if alive[x]:
                chosen.append(x)
                alive &= ~self.rows.neighbours_mask(x)
                alive[x] = False
        return chosen


def build_confusion_graph(g: DirectedGraph, s: int) -> ConfusionGraph:
    return ConfusionGraph(g, s)


# ----------------------------------------------------------------- codes

def validate_code(g: DirectedGraph, code: Code) -> bool:
    """True iff every coordinate is a function of its in-neighbour coordinates on the code."""
    if code.n != g.n:
        raise ValueError(f"code length {code.n} does not match graph size {g.n}")
    for j in range(g.n):
        ins = g.in_neighbors(j)
        seen = {}
        for w in code.words:
            key = tuple(w[i] for i in ins)
            if seen.setdefault(key, w[j]) != w[j]:
                return False
    return True


def _code_from_indices(g, s, indices) -> Code:
    return Code(frozenset(index_word(x, g.n, s) for x in indices), g.n, s)


def max_graph_code(g: DirectedGraph, s: int, *, lower_bound_only: bool = False,
                   max_nodes: int = DEFAULT_NODES) -> Code:
    """A maximum graph code (maximum independent set of the confusion graph).

    With ``lower_bound_only`` a maximal code from the best of the block
    constructions and greedy search is returned instead.
    """
    size = check_size(g.n, s)
    construct = constructions.construct_code(g, s)
    if lower_bound_only:
        if size > GREEDY_WORDS:
            return construct
        greedy = ConfusionGraph(g, s).greedy_code_indices()
        return construct if len(construct) >= len(greedy) else _code_from_indices(g, s, greedy)
    if size > EXACT_WORDS:
        raise BudgetExceeded(f"exact code search limited to {EXACT_WORDS} words; "
                             "use lower_bound_only for a maximal code")
    cg = ConfusionGraph(g, s)
    seed = [word_index(w, s) for w in construct]
    # translate the seed so that it contains word 0 (Cayley symmetry)
    if seed and 0 not in seed:
        base = cg.digits[seed[0]]
        seed = [int(((cg.digits[x] - base) % s) @ place_values(g.n, s)) for x in seed]
    best = search.max_clique(cg.compat_rows, cg.size, must_include=0,
                             max_nodes=max_nodes, initial=seed)
    return _code_from_indices(g, s, best)


@dataclass(frozen=True)
class GuessBounds:
    """Sandwich for a guessing number: lower code size vs rational upper bound."""

    lower: LogValue
    upper: Fraction
    code: Code

    @property
    def closed(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self):
        return self.lower if self.closed else None


def guessing_number(g: DirectedGraph, s: int, mode: str = "exact", **kw):
    """log_s of the largest graph code.

    ``mode="exact"`` returns a LogValue. ``mode="sandwich"`` returns a
    GuessBounds pairing a constructed code with the Shannon LP bound; its
    ``value`` is set only when the two agree exactly.
    """
    if mode == "exact":
        return LogValue(len(max_graph_code(g, s, **kw)), s)
    if mode == "sandwich":
        return guessing_bounds(g, s)
    raise ValueError(f"unknown mode {mode!r}")


def guessing_bounds(g: DirectedGraph, s: int) -> GuessBounds:
    from .entropic import MAX_GROUND, entropy_bound

    code = max_graph_code(g, s, lower_bound_only=True)
    if g.n <= MAX_GROUND:
        upper = entropy_bound(g, "shannon")
    else:
        upper = Fraction(g.n - max_induced_acyclic(g)[0])
    return GuessBounds(LogValue(len(code), s), upper, code)


# ------------------------------------------------------------ strategies

@dataclass(frozen=True)
class GuessingStrategy:
    """Per-vertex lookup tables from in-neighbour letters to a guess.

    ``tables[j]`` has ``s ** d(j)`` entries, row-major over in-neighbour
    tuples in ascending vertex order (first in-neighbour most significant).
    """

    s: int
    in_neighbors: tuple
    tables: tuple

    def __post_init__(self):
        tables = tuple(tuple(int(x) for x in t) for t in self.tables)
        if len(tables) != len(self.in_neighbors):
            raise ValueError("one table per vertex required")
        for j, (ins, t) in enumerate(zip(self.in_neighbors, tables)):
            if len(t) != self.s ** len(ins):
                raise ValueError(f"vertex {j}: table has {len(t)} entries, "
                                 f"expected {self.s ** len(ins)}")
            if any(not 0 <= x < self.s for x in t):
                raise ValueError(f"vertex {j}: table entry outside 0..{self.s - 1}")
        object.__setattr__(self, "tables", tables)
        object.__setattr__(self, "in_neighbors", tuple(tuple(x) for x in self.in_neighbors))

    @classmethod
    def for_graph(cls, g: DirectedGraph, s: int, tables) -> "GuessingStrategy":
        return cls(s, tuple(g.in_neighbors(j) for j in range(g.n)), tuple(tables))

    @classmethod
    def from_functions(cls, g: DirectedGraph, s: int, funcs) -> "GuessingStrategy":
        """Tabulate callables ``funcs[j](*in_neighbour_letters)``."""
        tables = []
        for j in range(g.n):
            d = len(g.in_neighbors(j))
            tables.append([funcs[j](*args) % s for args in product(range(s), repeat=d)])
        return cls.for_graph(g, s, tables)

    def guess(self, word) -> tuple:
        out = []
        for ins, t in zip(self.in_neighbors, self.tables):
            key = 0
            for i in ins:
                key = key * self.s + word[i]
            out.append(t[key])
        return tuple(out)

    def to_json(self) -> dict:
        return {"s": self.s, "tables": {str(j): list(t) for j, t in enumerate(self.tables)}}


def sum_zero_strategy(g: DirectedGraph, s: int) -> GuessingStrategy:
    """Each vertex guesses the letter making its closed in-neighbourhood sum to 0 mod s."""
    return GuessingStrategy.from_functions(
        g, s, [lambda *xs: -sum(xs) for _ in range(g.n)])


def strategy_from_code(g: DirectedGraph, code: Code) -> GuessingStrategy:
    """Strategy whose fixpoints contain ``code``; unrealised table rows guess 0."""
    if not validate_code(g, code):
        raise ValueError("code is not a valid graph code for this graph")
    s = code.s
    tables = []
    for j in range(g.n):
        ins = g.in_neighbors(j)
        t = [0] * (s ** len(ins))
        for w in code.words:
            t[word_index([w[i] for i in ins], s)] = w[j]
        tables.append(t)
    return GuessingStrategy.for_graph(g, s, tables)


def _fixpoint_mask(g: DirectedGraph, strat: GuessingStrategy, s: int) -> np.ndarray:
    if strat.s != s:
        raise ValueError(f"strategy alphabet {strat.s} differs from s={s}")
    if len(strat.tables) != g.n:
        raise ValueError("strategy has the wrong number of vertices")
    digits = digit_table(g.n, s)
    ok = np.ones(digits.shape[0], dtype=bool)
    for j in range(g.n):
        if strat.in_neighbors[j] != g.in_neighbors(j):
            raise ValueError(f"vertex {j}: strategy in-neighbours do not match the graph")
        table = np.asarray(strat.tables[j], dtype=np.int16)
        ok &= table[neighbor_keys(digits, g.in_neighbors(j), s)] == digits[:, j]
    return ok


def fixpoints(g: DirectedGraph, strat: GuessingStrategy, s: int) -> Code:
    """Words on which every player guesses correctly."""
    idx = np.flatnonzero(_fixpoint_mask(g, strat, s))
    return _code_from_indices(g, s, idx.tolist())


def fixpoint_count(g: DirectedGraph, strat: GuessingStrategy, s: int) -> LogValue:
    """Number of fixpoints m as LogValue(m, s); success probability is m / s^n."""
    return LogValue(int(_fixpoint_mask(g, strat, s).sum()), s)


def best_strategy_fixpoints(g: DirectedGraph, s: int, max_strategies: int = 2 ** 26) -> int:
    """Maximum fixpoint count over every guessing strategy, by exhaustion.

    Independent of the conflict relation: each vertex's candidate tables are
    enumerated outright and the per-word success indicators multiplied.
    """
    digits = digit_table(g.n, s)
    per_vertex = []
    total = 1
    for j in range(g.n):
        d = len(g.in_neighbors(j))
        rows = s ** d
        options = s ** rows
        total *= options
        if total > max_strategies:
            raise BudgetExceeded(f"more than {max_strategies} strategies")
        opts = np.arange(options, dtype=np.int64)
        tables = np.empty((options, rows), dtype=np.int16)
        for r in range(rows - 1, -1, -1):
            tables[:, r] = opts % s
            opts //= s
        key = neighbor_keys(digits, g.in_neighbors(j), s)
        per_vertex.append((tables[:, key] == digits[:, j]).astype(np.int64))
    if g.n == 1:
        return int(per_vertex[0].sum(axis=1).max())
    *head, a, b = per_vertex
    best = 0
    for combo in product(*[range(m.shape[0]) for m in head]):
        prefix = np.ones(digits.shape[0], dtype=np.int64)
        for m, t in zip(head, combo):
            prefix = prefix * m[t]
        best = max(best, int(((a * prefix) @ b.T).max()))
    return best


# ----------------------------------------------------------- index codes

@dataclass(frozen=True)
class IndexCode:
    """A broadcast scheme: ``colours[x]`` is the message sent for word index x."""

    length: LogValue
    colours: tuple
    n: int
    s: int
    exact: bool

    @property
    def messages(self) -> int:
        return self.length.count

    def colour_classes(self) -> list:
        classes = {}
        for x, c in enumerate(self.colours):
            classes.setdefault(c, []).append(x)
        return [Code(frozenset(index_word(x, self.n, self.s) for x in xs), self.n, self.s)
                for _, xs in sorted(classes.items())]

    def as_dict(self) -> dict:
        return {format_word(index_word(x, self.n, self.s), self.s)
                if self.s <= 10 else ",".join(map(str, index_word(x, self.n, self.s))): c
                for x, c in enumerate(self.colours)}


def _normalise(colours) -> tuple:
    relabel = {}
    return tuple(relabel.setdefault(int(c), len(relabel)) for c in colours)


def coloring_from_mapping(g: DirectedGraph, s: int, mapping: dict) -> tuple:
    """Colour tuple (by word index) from a word -> colour mapping."""
    size = check_size(g.n, s)
    out = [None] * size
    for w, c in mapping.items():
        word = parse_word(w.split(",") if (isinstance(w, str) and "," in w) else w, s)
        out[word_index(word, s)] = int(c)
    if any(c is None for c in out):
        raise ValueError("colouring does not cover every word")
    return tuple(out)


def is_index_coloring(g: DirectedGraph, s: int, colours) -> bool:
    """Every colour class is a graph code (equivalently a proper colouring)."""
    classes = {}
    for x, c in enumerate(colours):
        classes.setdefault(c, []).append(index_word(x, g.n, s))
    return all(validate_code(g, Code(frozenset(ws), g.n, s)) for ws in classes.values())


def min_index_code(g: DirectedGraph, s: int, mode: str = "exact", *, coloring=None,
                   max_nodes: int = DEFAULT_NODES) -> IndexCode:
    """Shortest index code: minimum colouring of the confusion graph.

    ``mode="exact"`` runs a DSATUR branch and bound (s^n <= 2^15).
    ``mode="construct"`` returns the best of a supplied colouring, the
    block-construction cosets and greedy DSATUR, flagged as an upper bound.
    """
    size = check_size(g.n, s)
    blocks = constructions.best_blocks(g, s)
    built, _ = constructions.block_syndromes(g, s, blocks)
    candidates = [_normalise(built)]
    if coloring is not None:
        colours = _normalise(coloring)
        if len(colours) != size or not is_index_coloring(g, s, colours):
            raise ValueError("supplied colouring is not a valid index code")
        candidates.append(colours)
    if mode == "construct":
        if size <= GREEDY_WORDS:
            cg = ConfusionGraph(g, s)
            candidates.append(_normalise(search.dsatur_coloring(list(cg.rows), size)))
        best = min(candidates, key=lambda c: max(c))
        return IndexCode(LogValue(max(best) + 1, s), best, g.n, s, exact=False)
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    if size > EXACT_WORDS:
        raise BudgetExceeded(f"exact colouring limited to {EXACT_WORDS} words")
    cg = ConfusionGraph(g, s)
    rows = list(cg.rows)
    upper = min(candidates, key=lambda c: max(c))
    lower = None
    if size <= 2 ** 10:
        alpha = len(max_graph_code(g, s, max_nodes=max_nodes))
        lower = -(-size // alpha)
    colours = search.chromatic_coloring(rows, size, max_nodes=max_nodes,
                                        upper=list(upper), lower=lower)
    colours = _normalise(colours)
    return IndexCode(LogValue(max(colours) + 1, s), colours, g.n, s, exact=True)


def public_guessing_number(g: DirectedGraph, s: int, **kw) -> Complement:
    """n - i(G, s) as an exact (n, LogValue) pair."""
    return Complement(g.n, min_index_code(g, s, **kw).length)


def code_entropy(code: Code, S, s: int) -> LogValue:
    """log_s of the number of distinct projections of the code onto S.

    This is H(S) under the uniform distribution on the code when every
    projection class has the same size, and an upper bound on it otherwise.
    """
    if not len(code):
        raise ValueError("code must be non-empty")
    if s != code.s:
        raise ValueError(f"code alphabet {code.s} differs from s={s}")
    cols = sorted(S)
    return LogValue(len({tuple(w[i] for i in cols) for w in code.words}), s)


def code_entropy_uniform(code: Code, S) -> float:
    """Exact Shannon entropy (base s) of the projection under the uniform code distribution."""
    cols = sorted(S)
    counts = {}
    for w in code.words:
        key = tuple(w[i] for i in cols)
        counts[key] = counts.get(key, 0) + 1
    m = len(code)
    return -sum(c / m * math.log(c / m, code.s) for c in counts.values())
