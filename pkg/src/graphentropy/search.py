"""Exact independent-set and colouring search on undirected graphs held as
bitset adjacency rows (``rows[v]`` is an int with bit ``u`` set iff u ~ v).
"""

from __future__ import annotations

from .errors import BudgetExceeded


def _low(x: int) -> int:
    return (x & -x).bit_length() - 1


def _iter_bits(x: int):
    while x:
        b = x & -x
        yield b.bit_length() - 1
        x ^= b


def complement_rows(rows, size: int) -> list:
    full = (1 << size) - 1
    return [(~r & full) & ~(1 << v) for v, r in enumerate(rows)]


def _colour_order(P: int, adj) -> list:
    # greedy sequential colouring of P in the graph adj; returns (vertex, colour) by colour
    out = []
    colour = 0
    while P:
        colour += 1
        Q = P
        while Q:
            v = _low(Q)
            Q &= ~adj[v] & ~(1 << v)
            P &= ~(1 << v)
            out.append((v, colour))
    return out


def max_clique(adj, size: int, *, must_include=None, max_nodes=None, initial=()) -> list:
    """Maximum clique by branch and bound with greedy-colouring upper bounds.

    ``must_include`` restricts the search to cliques containing that vertex,
    which is exact whenever the graph is vertex-transitive. ``initial`` seeds
    the incumbent. Raises BudgetExceeded after ``max_nodes`` search nodes.
    """
    best = list(initial)
    nodes = 0
    stack_r = []

    def expand(P: int):
        nonlocal best, nodes
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise BudgetExceeded(f"clique search exceeded {max_nodes} nodes")
        for v, c in reversed(_colour_order(P, adj)):
            if len(stack_r) + c <= len(best):
                return
            stack_r.append(v)
            newP = P & adj[v]
            if newP:
                expand(newP)
            elif len(stack_r) > len(best):
                best = list(stack_r)
            stack_r.pop()
            P &= ~(1 << v)

    full = (1 << size) - 1
    if must_include is None:
        expand(full)
    else:
        if not best:
            best = [must_include]
        stack_r.append(must_include)
        P = adj[must_include] & full
        if P:
            expand(P)
        stack_r.pop()
    return sorted(best)


def max_independent_set(rows, size: int, **kw) -> list:
    """Maximum independent set, via max_clique on the complement graph."""
    return max_clique(complement_rows(rows, size), size, **kw)


def greedy_independent_set(rows, size: int, order=None) -> list:
    """A maximal independent set built by scanning vertices in ``order``."""
    chosen = []
    blocked = 0
    for v in (range(size) if order is None else order):
        if not blocked >> v & 1:
            chosen.append(v)
            blocked |= rows[v] | (1 << v)
    return chosen


def greedy_clique(rows, size: int) -> list:
    """A maximal clique grown from each start vertex; returns the largest."""
    best = []
    for start in range(size):
        clique = [start]
        cand = rows[start]
        while cand:
            v = max(_iter_bits(cand), key=lambda u: (rows[u] & cand).bit_count())
            clique.append(v)
            cand &= rows[v]
        if len(clique) > len(best):
            best = clique
    return sorted(best)


def dsatur_coloring(rows, size: int) -> list:
    """Greedy DSATUR colouring; returns a colour index per vertex."""
    colour = [-1] * size
    sat = [0] * size  # bitmask of neighbour colours
    degree = [r.bit_count() for r in rows]
    for _ in range(size):
        v = max((u for u in range(size) if colour[u] < 0),
                key=lambda u: (sat[u].bit_count(), degree[u], -u))
        c = 0
        while sat[v] >> c & 1:
            c += 1
        colour[v] = c
        for u in _iter_bits(rows[v]):
            sat[u] |= 1 << c
    return colour


def chromatic_coloring(rows, size: int, *, max_nodes=None, upper=None, lower=None) -> list:
    """Minimum colouring by DSATUR branch and bound.

    ``upper`` is an optional known proper colouring used as incumbent;
    ``lower`` an optional proven lower bound (e.g. a clique size).
    Raises BudgetExceeded after ``max_nodes`` search nodes.
    """
    if size == 0:
        return []
    best = dsatur_coloring(rows, size)
    if upper is not None and max(upper) < max(best):
        best = list(upper)
    best_k = max(best) + 1
    lb = max(lower or 0, len(greedy_clique(rows, size)))
    if best_k <= lb:
        return best

    colour = [-1] * size
    classes = []  # bitmask per colour
    nodes = 0

    def pick():
        bestv, key = -1, None
        for u in range(size):
            if colour[u] >= 0:
                continue
            s = sum(1 for m in classes if m & rows[u])
            k = (s, (rows[u]).bit_count())
            if key is None or k > key:
                bestv, key = u, k
        return bestv

    def rec(done: int):
        nonlocal best, best_k, nodes
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise BudgetExceeded(f"colouring search exceeded {max_nodes} nodes")
        if done == size:
            best, best_k = list(colour), len(classes)
            return
        v = pick()
        for c in range(len(classes)):
            if not classes[c] & rows[v]:
                colour[v] = c
                classes[c] |= 1 << v
                rec(done + 1)
                classes[c] &= ~(1 << v)
                colour[v] = -1
                if best_k <= lb:
                    return
        if len(classes) + 1 < best_k:
            colour[v] = len(classes)
            classes.append(1 << v)
            rec(done + 1)
            classes.pop()
            colour[v] = -1

    rec(0)
    return best


def is_proper_coloring(rows, colouring) -> bool:
    return all(colouring[u] != colouring[v] for v, r in enumerate(rows) for u in _iter_bits(r))
