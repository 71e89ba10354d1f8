"""Multiple-unicast networks and their correspondence with graphs.

Splitting a graph at a vertex set B turns each b in B into a source copy
(keeping b's id and out-edges) and a target copy (id n + position of b in
sorted B, keeping b's in-edges). Every other vertex keeps its id, so each
vertex's in-neighbours, listed in ascending id order, correspond one to one
with its in-neighbours in the original graph. A guessing table therefore
transfers to the network unchanged, which fixes the argument order of the
coding functions canonically.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from . import codes
from .graph import random_graph
from .entropic import entropy_bound
from .errors import BudgetExceeded, ParseError, Undetermined
from .graph import (DirectedGraph, _EDGE_RE, _add_edge_line, _parse_header,
                    _parse_lines, is_acyclic, max_induced_acyclic, minimal_split,
                    topological_order)
from .words import word_index

_PAIR_RE = re.compile(r"pair (\d+) (\d+)")


@dataclass(frozen=True)
class Network:
    """Acyclic graph with k ordered (source, target) pairs."""

    graph: DirectedGraph
    pairs: tuple

    def __post_init__(self):
        pairs = tuple((int(a), int(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not is_acyclic(self.graph):
            raise ValueError("network graph must be acyclic")
        sources = [a for a, _ in pairs]
        targets = [b for _, b in pairs]
        if len(set(sources)) != len(sources) or len(set(targets)) != len(targets):
            raise ValueError("sources and targets must be pairwise distinct")
        if set(sources) & set(targets):
            raise ValueError("a vertex cannot be both a source and a target")
        for a in sources:
            if self.graph.in_neighbors(a):
                raise ValueError(f"source {a} has incoming edges")

    @property
    def k(self) -> int:
        return len(self.pairs)

    @property
    def sources(self) -> tuple:
        return tuple(a for a, _ in self.pairs)

    @property
    def targets(self) -> tuple:
        return tuple(b for _, b in self.pairs)

    def to_text(self) -> str:
        return self.graph.to_text() + "".join(f"pair {a} {b}\n" for a, b in self.pairs)


def parse_network(text: str) -> Network:
    """Graph file format plus ``pair <source> <target>`` lines."""
    lines = _parse_lines(text)
    n = _parse_header(lines)
    edges: set = set()
    pairs = []
    pair_lines = []
    for lineno, line in lines:
        m = _EDGE_RE.fullmatch(line)
        if m:
            _add_edge_line(m, n, edges, lineno)
            continue
        m = _PAIR_RE.fullmatch(line)
        if not m:
            raise ParseError(f"malformed line {line!r}", lineno)
        a, b = int(m.group(1)), int(m.group(2))
        for x in (a, b):
            if x >= n:
                raise ParseError(f"vertex {x} out of range for {n} nodes", lineno)
        used = {v for p in pairs for v in p}
        if a in used or b in used or a == b:
            raise ParseError(f"pair {a} {b} reuses an endpoint", lineno)
        pairs.append((a, b))
        pair_lines.append(lineno)
    g = DirectedGraph(n, frozenset(edges))
    if not is_acyclic(g):
        raise ParseError("network graph has a directed cycle")
    for (a, _), lineno in zip(pairs, pair_lines):
        if g.in_neighbors(a):
            raise ParseError(f"source {a} has incoming edges", lineno)
    return Network(g, tuple(pairs))


def split_graph(g: DirectedGraph, B) -> Network:
    """Duplicate each b in B into a source (out-edges) and a target (in-edges)."""
    B = sorted(set(B))
    if any(not 0 <= b < g.n for b in B):
        raise ValueError("split set has a vertex out of range")
    if not g.induced_acyclic(set(range(g.n)) - set(B)):
        raise ValueError(f"{B} is not a split: the rest of the graph has a cycle")
    target = {b: g.n + i for i, b in enumerate(B)}
    edges = set()
    for u, v in g.edges:
        edges.add((u, target.get(v, v)))
    net_graph = DirectedGraph(g.n + len(B), frozenset(edges))
    return Network(net_graph, tuple((b, target[b]) for b in B))


def identify(net: Network) -> DirectedGraph:
    """Merge each target into its source; remaining ids are compacted in order."""
    merge = {b: a for a, b in net.pairs}
    keep = [v for v in range(net.graph.n) if v not in merge]
    new_id = {v: i for i, v in enumerate(keep)}
    for b, a in merge.items():
        new_id[b] = new_id[a]
    edges = frozenset((new_id[u], new_id[v]) for u, v in net.graph.edges)
    return DirectedGraph(len(keep), edges)


# ------------------------------------------------------------ evaluation

@dataclass(frozen=True)
class CodingAssignment:
    """Lookup tables for the non-source vertices, keyed by vertex id."""

    s: int
    tables: dict

    @classmethod
    def from_strategy(cls, net: Network, strat: codes.GuessingStrategy) -> "CodingAssignment":
        """Tables of a guessing strategy on the graph ``net`` was split from."""
        n = len(strat.tables)
        tables = {}
        for v in range(net.graph.n):
            if v in net.sources:
                continue
            orig = v if v < n else net.sources[net.targets.index(v)]
            tables[v] = tuple(strat.tables[orig])
        return cls(strat.s, tables)

    @classmethod
    def from_functions(cls, net: Network, s: int, funcs: dict) -> "CodingAssignment":
        tables = {}
        for v, fn in funcs.items():
            d = len(net.graph.in_neighbors(v))
            tables[v] = tuple(fn(*args) % s for args in itertools.product(range(s), repeat=d))
        return cls(s, tables)

    def check(self, net: Network):
        for v in range(net.graph.n):
            if v in net.sources:
                continue
            t = self.tables.get(v)
            if t is None:
                raise ValueError(f"vertex {v} has no coding table")
            if len(t) != self.s ** len(net.graph.in_neighbors(v)):
                raise ValueError(f"vertex {v}: table size does not match its in-degree")

    def to_json(self) -> dict:
        return {"s": self.s, "tables": {str(v): list(t) for v, t in sorted(self.tables.items())}}

    @classmethod
    def from_json(cls, data: dict) -> "CodingAssignment":
        return cls(int(data["s"]), {int(v): tuple(int(x) for x in t)
                                    for v, t in data["tables"].items()})


def evaluate_network(net: Network, asg: CodingAssignment, inputs) -> tuple:
    """Values at the targets, in pair order, for source values ``inputs``."""
    asg.check(net)
    if len(inputs) != net.k:
        raise ValueError(f"expected {net.k} input letters")
    val = dict(zip(net.sources, inputs))
    for v in topological_order(net.graph):
        if v in val:
            continue
        key = word_index([val[u] for u in net.graph.in_neighbors(v)], asg.s)
        val[v] = asg.tables[v][key]
    return tuple(val[t] for t in net.targets)


def is_solution(net: Network, asg: CodingAssignment, s: int) -> bool:
    """Every target reproduces its source's letter for all s^k inputs."""
    if asg.s != s:
        raise ValueError("assignment alphabet does not match s")
    return all(evaluate_network(net, asg, x) == x
               for x in itertools.product(range(s), repeat=net.k))


def find_solution(net: Network, s: int, max_assignments: int = 2 ** 22):
    """Exhaustive search for a solving assignment (tiny networks only)."""
    free = [v for v in range(net.graph.n) if v not in net.sources]
    sizes = [s ** len(net.graph.in_neighbors(v)) for v in free]
    total = 1
    for r in sizes:
        total *= s ** r
    if total > max_assignments:
        raise BudgetExceeded(f"{total} assignments exceed the budget of {max_assignments}")
    for combo in itertools.product(*[itertools.product(range(s), repeat=r) for r in sizes]):
        asg = CodingAssignment(s, dict(zip(free, combo)))
        if is_solution(net, asg, s):
            return asg
    return None


# ------------------------------------------------------ split equivalence check

@dataclass(frozen=True)
class SplitReport:
    fixpoints: object          # LogValue, fixpoint count of the strategy on g
    solved: bool               # the transferred tables solve the split network
    full_success: bool         # fixpoint count equals s^k
    equivalent: bool           # full_success == solved
    consistent_count: int      # words on which every vertex outside B guesses right
    consistent_ok: bool        # consistent_count == s^k for any tables
    minimal: bool              # |B| equals the minimal split size

    @property
    def fixpoint_log(self):
        return self.fixpoints


def theorem8_check(g: DirectedGraph, B, strat: codes.GuessingStrategy, s: int) -> SplitReport:
    """Compare a strategy on g with the same tables used on the split network.

    All players succeed with probability (1/s)^(n-k), i.e. on exactly s^k
    words, iff the tables solve the network split at B (k = |B|). Also
    counts the words on which the vertices outside B guess correctly, which
    is s^k for any tables since they induce an acyclic graph.
    """
    B = sorted(set(B))
    net = split_graph(g, B)
    k = len(B)
    fp = codes.fixpoint_count(g, strat, s)
    asg = CodingAssignment.from_strategy(net, strat)
    solved = is_solution(net, asg, s)
    full = fp.count == s ** k

    outside = [v for v in range(g.n) if v not in B]
    consistent = 0
    for word in itertools.product(range(s), repeat=g.n):
        guess = strat.guess(word)
        if all(guess[v] == word[v] for v in outside):
            consistent += 1
    return SplitReport(fp, solved, full, full == solved, consistent,
                       consistent == s ** k, k == len(minimal_split(g)))


# ------------------------------------------------------------- solvability

def is_solvable(net: Network, s: int, mode: str = "auto") -> bool:
    """Solvable over an alphabet of size s iff the identified graph has guessing number k.

    The guessing number of the identified graph never exceeds k (the
    sources form a split), so solvability is ``g >= k``. ``mode="exact"``
    runs the maximum-code search; ``"sandwich"`` uses a constructed code
    against the Shannon bound and raises Undetermined if neither settles it;
    ``"auto"`` tries exact and falls back to the sandwich on budget.
    """
    g = identify(net)
    k = net.k
    if mode in ("exact", "auto"):
        try:
            return codes.guessing_number(g, s, "exact").compare(k) >= 0
        except BudgetExceeded:
            if mode == "exact":
                raise
    if mode not in ("exact", "auto", "sandwich"):
        raise ValueError(f"unknown mode {mode!r}")
    bounds = codes.guessing_bounds(g, s)
    if bounds.lower.compare(k) >= 0:
        return True
    if bounds.upper < k:
        return False
    raise Undetermined(f"guessing number bracket [{bounds.lower}, {bounds.upper}] straddles k={k}",
                       bounds.lower, bounds.upper)


def coding_capacity_11(net: Network, ineq="shannon", groups=None) -> bool:
    """(1,1) coding capacity under the chosen inequalities: entropy bound of G_N >= k."""
    return entropy_bound(identify(net), ineq, groups) >= Fraction(net.k)


def random_split(g: DirectedGraph, rng) -> list:
    """A split obtained by growing a random acyclic set greedily (not necessarily minimal)."""
    order = list(range(g.n))
    rng.shuffle(order)
    keep = set()
    for v in order:
        if g.induced_acyclic(keep | {v}):
            keep.add(v)
    return sorted(set(range(g.n)) - keep)


def acyclic_bound(g: DirectedGraph) -> int:
    return g.n - max_induced_acyclic(g)[0]


def theorem8_harness(trials: int, seed: int, max_n: int = 6, s: int = 2) -> list:
    """Split reports for seeded random (graph, split, tables) triples.

    Half of the strategies are random tables; the rest come from a maximum
    code on a minimal split so that solved instances are exercised too.
    """
    import random

    rng = random.Random(seed)
    out = []
    for i in range(trials):
        n = rng.randint(1, max_n)
        g = random_graph(n, rng.uniform(0.2, 0.7), rng, loops=rng.random() < 0.3)
        if i % 2:
            B = sorted(minimal_split(g))
            strat = codes.strategy_from_code(g, codes.max_graph_code(g, s))
        else:
            B = random_split(g, rng)
            strat = codes.GuessingStrategy.for_graph(g, s, [
                [rng.randrange(s) for _ in range(s ** len(g.in_neighbors(j)))]
                for j in range(n)])
        out.append((g, tuple(B), theorem8_check(g, B, strat, s)))
    return out
