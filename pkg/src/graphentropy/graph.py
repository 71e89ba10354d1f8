"""Directed graphs on vertices 0..n-1 and the structural searches used elsewhere.

Vertex subsets are handled internally as int bitmasks (bit ``v`` set when
vertex ``v`` is a member) and exposed as ``frozenset`` objects.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

from .errors import ParseError

MAX_VERTICES = 24

_NODES_RE = re.compile(r"nodes (\d+)")
_EDGE_RE = re.compile(r"(\d+) (->|<->) (\d+)")


@dataclass(frozen=True)
class DirectedGraph:
    """A finite directed graph; self-loops allowed, no parallel edges."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        edges = frozenset((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, bidirected: Iterable = ()) -> "DirectedGraph":
        es = set(map(tuple, edges))
        for u, v in bidirected:
            es.add((u, v))
            es.add((v, u))
        return cls(n, frozenset(es))

    @cached_property
    def _in(self) -> tuple:
        ins = [[] for _ in range(self.n)]
        for u, v in self.edges:
            ins[v].append(u)
        return tuple(tuple(sorted(x)) for x in ins)

    @cached_property
    def _out(self) -> tuple:
        outs = [[] for _ in range(self.n)]
        for u, v in self.edges:
            outs[u].append(v)
        return tuple(tuple(sorted(x)) for x in outs)

    @cached_property
    def out_masks(self) -> tuple:
        return tuple(sum(1 << v for v in vs) for vs in self._out)

    @cached_property
    def in_masks(self) -> tuple:
        return tuple(sum(1 << u for u in us) for us in self._in)

    def in_neighbors(self, j: int) -> tuple:
        """Sorted tails of the edges with head ``j``."""
        return self._in[j]

    def out_neighbors(self, j: int) -> tuple:
        return self._out[j]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def is_bidirected(self, u: int, v: int) -> bool:
        return (u, v) in self.edges and (v, u) in self.edges

    def induced_acyclic(self, vertices) -> bool:
        """Whether the subgraph induced on ``vertices`` has no directed cycle."""
        return _acyclic_mask(self.out_masks, _as_mask(vertices))

    def adjacency_bits(self) -> int:
        """Row-major adjacency matrix packed into an int (bit ``u*n+v``)."""
        return sum(1 << (u * self.n + v) for u, v in self.edges)

    def to_text(self) -> str:
        lines = [f"nodes {self.n}"]
        lines += [f"{u} -> {v}" for u, v in sorted(self.edges)]
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"DirectedGraph(n={self.n}, edges={sorted(self.edges)})"


def _as_mask(vertices) -> int:
    if isinstance(vertices, int):
        return vertices
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _members(mask: int) -> frozenset:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def _acyclic_mask(out_masks, alive: int) -> bool:
    # Kahn's algorithm restricted to the alive vertices
    indeg = {}
    for v in _members(alive):
        indeg.setdefault(v, 0)
        for w in _members(out_masks[v] & alive):
            indeg[w] = indeg.get(w, 0) + 1
    queue = deque(v for v, d in indeg.items() if d == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for w in _members(out_masks[v] & alive):
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == len(indeg)


# ---------------------------------------------------------------- parsing

def _parse_lines(text: str):
    """Yield (line number, stripped content) for the non-comment, non-blank lines."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield lineno, line.strip()


def _parse_header(lines) -> int:
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise ParseError("missing 'nodes <n>' header") from None
    m = _NODES_RE.fullmatch(line)
    if not m:
        raise ParseError(f"expected 'nodes <n>', got {line!r}", lineno)
    n = int(m.group(1))
    if not 1 <= n <= MAX_VERTICES:
        raise ParseError(f"node count {n} outside 1..{MAX_VERTICES}", lineno)
    return n


def _add_edge_line(m, n, edges, lineno):
    u, arrow, v = int(m.group(1)), m.group(2), int(m.group(3))
    for x in (u, v):
        if x >= n:
            raise ParseError(f"vertex {x} out of range for {n} nodes", lineno)
    new = [(u, v)] if arrow == "->" else [(u, v), (v, u)]
    if arrow == "<->" and u == v:
        raise ParseError(f"'<->' needs two distinct vertices, got {u}", lineno)
    for e in new:
        if e in edges:
            raise ParseError(f"duplicate edge {e[0]} -> {e[1]}", lineno)
        edges.add(e)


def parse_graph(text: str) -> DirectedGraph:
    """Parse the graph file format (``nodes n`` then ``u -> v`` / ``u <-> v`` lines)."""
    lines = _parse_lines(text)
    n = _parse_header(lines)
    edges: set = set()
    for lineno, line in lines:
        m = _EDGE_RE.fullmatch(line)
        if not m:
            raise ParseError(f"malformed edge line {line!r}", lineno)
        _add_edge_line(m, n, edges, lineno)
    return DirectedGraph(n, frozenset(edges))


# ------------------------------------------------------- basic structure

def is_acyclic(g: DirectedGraph) -> bool:
    """True iff ``g`` has no directed cycle. A self-loop counts as a cycle."""
    return _acyclic_mask(g.out_masks, (1 << g.n) - 1)


def has_topological_order(g: DirectedGraph) -> bool:
    """Independent acyclicity check by repeatedly peeling off sink vertices."""
    remaining = set(range(g.n))
    while remaining:
        sinks = [v for v in remaining if not any(w in remaining for w in g.out_neighbors(v))]
        if not sinks:
            return False
        remaining.difference_update(sinks)
    return True


def topological_order(g: DirectedGraph) -> list:
    """Vertices in a topological order; raises ValueError on a cycle."""
    indeg = [len(g.in_neighbors(v)) for v in range(g.n)]
    queue = deque(v for v in range(g.n) if indeg[v] == 0)
    order = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in g.out_neighbors(v):
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if len(order) != g.n:
        raise ValueError("graph has a directed cycle")
    return order


def reverse(g: DirectedGraph) -> DirectedGraph:
    """The dual graph with every edge direction flipped."""
    return DirectedGraph(g.n, frozenset((v, u) for u, v in g.edges))


def shift(g: DirectedGraph, t: int) -> DirectedGraph:
    """Shifted graph: (v1, v2) is an edge of ``g`` iff (v1, v2 + t mod n) is an edge of the result."""
    if not 0 <= t < g.n:
        raise ValueError(f"shift {t} outside 0..{g.n - 1}")
    return DirectedGraph(g.n, frozenset((u, (v + t) % g.n) for u, v in g.edges))


def relabel(g: DirectedGraph, perm) -> DirectedGraph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    return DirectedGraph(g.n, frozenset((perm[u], perm[v]) for u, v in g.edges))


def induced_subgraph(g: DirectedGraph, vertices) -> tuple:
    """Induced subgraph on ``vertices`` renumbered in ascending order; returns (graph, old ids)."""
    keep = sorted(_members(_as_mask(vertices)))
    index = {v: i for i, v in enumerate(keep)}
    edges = frozenset((index[u], index[v]) for u, v in g.edges if u in index and v in index)
    return DirectedGraph(len(keep), edges), keep


# ----------------------------------------------------- acyclic subgraphs

def _shortest_cycle(out_masks, alive: int):
    """Vertices of a shortest directed cycle inside ``alive``, or None."""
    best = None
    for u in _members(alive):
        if out_masks[u] & (1 << u):
            return [u]
    for u in sorted(_members(alive)):
        parent = {u: None}
        queue = deque([u])
        found = None
        while queue and found is None:
            x = queue.popleft()
            for y in _members(out_masks[x] & alive):
                if y == u:
                    found = x
                    break
                if y not in parent:
                    parent[y] = x
                    queue.append(y)
        if found is not None:
            cyc = []
            x = found
            while x is not None:
                cyc.append(x)
                x = parent[x]
            if best is None or len(cyc) < len(best):
                best = cyc
                if len(best) == 2:
                    return best
    return best


def _strip(out_masks, in_masks, alive: int) -> int:
    # vertices without in- or out-neighbours among alive ones lie on no cycle
    changed = True
    while changed:
        changed = False
        for v in _members(alive):
            if not (out_masks[v] & alive) or not (in_masks[v] & alive):
                alive &= ~(1 << v)
                changed = True
    return alive


def _fvs_at_most(out_masks, in_masks, alive: int, k: int):
    alive = _strip(out_masks, in_masks, alive)
    if not alive:
        return 0
    if k == 0:
        return None
    cycle = _shortest_cycle(out_masks, alive)
    for v in cycle:
        r = _fvs_at_most(out_masks, in_masks, alive & ~(1 << v), k - 1)
        if r is not None:
            return r | (1 << v)
    return None


def _min_feedback_set(g: DirectedGraph) -> int:
    full = (1 << g.n) - 1
    for k in range(g.n + 1):
        r = _fvs_at_most(g.out_masks, g.in_masks, full, k)
        if r is not None:
            return r
    raise AssertionError("unreachable: removing every vertex leaves an acyclic graph")


def max_induced_acyclic(g: DirectedGraph) -> tuple:
    """Largest vertex set inducing an acyclic subgraph, as (size, witness).

    Computed as the complement of a minimum feedback vertex set found by
    iterative deepening that branches on the vertices of a shortest cycle.
    """
    fvs = _min_feedback_set(g)
    witness = _members(((1 << g.n) - 1) & ~fvs)
    return len(witness), witness


def minimal_split(g: DirectedGraph) -> frozenset:
    """A minimum-size vertex set whose removal leaves an acyclic graph."""
    return _members(_min_feedback_set(g))


def max_induced_acyclic_bruteforce(g: DirectedGraph) -> int:
    """Exhaustive oracle over all 2^n subsets (small n only)."""
    best = 0
    for mask in range(1 << g.n):
        size = bin(mask).count("1")
        if size > best and _acyclic_mask(g.out_masks, mask):
            best = size
    return best


# ---------------------------------------------------- isomorphism / census

def canonical_form(g: DirectedGraph) -> int:
    """Minimum packed adjacency matrix over all vertex permutations (n <= 8)."""
    if g.n > 8:
        raise ValueError("canonical_form enumerates all permutations; n must be <= 8")
    n = g.n
    best = None
    for perm in itertools.permutations(range(n)):
        code = 0
        for u, v in g.edges:
            code |= 1 << (perm[u] * n + perm[v])
        if best is None or code < best:
            best = code
    return best


def from_adjacency_bits(n: int, bits: int) -> DirectedGraph:
    return DirectedGraph(n, frozenset((i // n, i % n) for i in range(n * n) if bits >> i & 1))


def is_isomorphic(g: DirectedGraph, h: DirectedGraph) -> bool:
    return g.n == h.n and len(g.edges) == len(h.edges) and canonical_form(g) == canonical_form(h)


def enumerate_tournaments(n: int) -> list:
    """One representative per isomorphism class of tournaments on n vertices.

    Classes on n vertices are grown from those on n-1 vertices by adding a
    vertex with every possible orientation towards the old ones, then
    deduplicated by canonical form.
    """
    if not 2 <= n <= 6:
        raise ValueError(f"tournament census supports 2 <= n <= 6, got {n}")
    reps = {canonical_form(DirectedGraph(1)): DirectedGraph(1)}
    for size in range(2, n + 1):
        nxt = {}
        new = size - 1
        for t in reps.values():
            for orient in range(1 << new):
                edges = set(t.edges)
                for v in range(new):
                    edges.add((new, v) if orient >> v & 1 else (v, new))
                cand = DirectedGraph(size, frozenset(edges))
                nxt.setdefault(canonical_form(cand), cand)
        reps = nxt
    return [reps[k] for k in sorted(reps)]


def enumerate_digraphs(n: int, loops: bool = True) -> list:
    """Isomorphism-class representatives of all digraphs on n <= 4 vertices."""
    if not 1 <= n <= 4:
        raise ValueError("enumerate_digraphs supports 1 <= n <= 4")
    cells = [(u, v) for u in range(n) for v in range(n) if loops or u != v]
    codes = np.arange(1 << len(cells), dtype=np.int64)
    bits = (codes[:, None] >> np.arange(len(cells))) & 1
    best = None
    for perm in itertools.permutations(range(n)):
        weights = np.array([1 << (perm[u] * n + perm[v]) for u, v in cells], dtype=np.int64)
        packed = bits @ weights
        best = packed if best is None else np.minimum(best, packed)
    return [from_adjacency_bits(n, int(b)) for b in np.unique(best)]


# ---------------------------------------------------------------- families

def directed_cycle(k: int) -> DirectedGraph:
    return DirectedGraph(k, frozenset((i, (i + 1) % k) for i in range(k)))


def bidirected_cycle(k: int) -> DirectedGraph:
    return DirectedGraph.from_edges(k, (), [(i, (i + 1) % k) for i in range(k)])


def complete_graph(n: int) -> DirectedGraph:
    return DirectedGraph(n, frozenset((u, v) for u in range(n) for v in range(n) if u != v))


def all_self_loops(n: int) -> DirectedGraph:
    return DirectedGraph(n, frozenset((v, v) for v in range(n)))


def random_graph(n: int, p: float, rng, loops: bool = False) -> DirectedGraph:
    edges = [(u, v) for u in range(n) for v in range(n)
             if (loops or u != v) and rng.random() < p]
    return DirectedGraph(n, frozenset(edges))


def random_dag(n: int, p: float, rng) -> DirectedGraph:
    order = list(range(n))
    rng.shuffle(order)
    edges = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return DirectedGraph(n, frozenset(edges))
