"""Explicit graph codes and index-code colourings built from vertex-disjoint blocks.

Three block shapes are used, each a spanning subgraph pattern that the
graph must contain:

* a directed cycle v0 -> v1 -> ... -> v0 (a self-loop is the length-1 case):
  every vertex copies its predecessor, so the block carries one free letter;
* a bidirected clique on c vertices: letters sum to 0 mod s, c - 1 free letters;
* a bidirected cycle of length k >= 4 when s = t^2 is a square: each letter
  is a pair (L, R) of base-t digits and each vertex's L equals its left
  neighbour's R, giving k free base-t digits, i.e. k/2 letters.

Vertices in no block are pinned to letter 0. Because adding edges never
invalidates a code, the product of block codes is a code for the whole graph.
Its cosets (fixed block syndromes) colour A^n into s^n / |code| classes that
are all codes, which gives an index code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .graph import DirectedGraph
from .words import Code, digit_table, place_values

DCYCLE, CLIQUE, LR_CYCLE = "directed-cycle", "clique", "lr-cycle"


@dataclass(frozen=True)
class Block:
    kind: str
    vertices: tuple

    def value(self, s: int) -> Fraction:
        """log_s of the number of block assignments in the block code."""
        k = len(self.vertices)
        if self.kind == DCYCLE:
            return Fraction(1)
        if self.kind == CLIQUE:
            return Fraction(k - 1)
        return Fraction(k, 2)


def square_root(s: int):
    t = math.isqrt(s)
    return t if t * t == s else None


def check_block(g: DirectedGraph, b: Block, s: int) -> bool:
    vs = b.vertices
    k = len(vs)
    if len(set(vs)) != k or k == 0:
        return False
    if b.kind == DCYCLE:
        return all(g.has_edge(vs[i], vs[(i + 1) % k]) for i in range(k))
    if b.kind == CLIQUE:
        return k >= 2 and all(g.is_bidirected(u, v) for i, u in enumerate(vs) for v in vs[i + 1:])
    if b.kind == LR_CYCLE:
        return (k >= 4 and square_root(s) is not None
                and all(g.is_bidirected(vs[i], vs[(i + 1) % k]) for i in range(k)))
    return False


# ----------------------------------------------------------- block search

class _Budget:
    def __init__(self, limit):
        self.left = limit

    def spend(self) -> bool:
        self.left -= 1
        return self.left >= 0


def _directed_cycles_from(g, v, allowed, budget):
    # simple cycles starting at v whose other vertices lie in allowed
    if g.has_edge(v, v):
        yield (v,)
    path = [v]
    onpath = {v}

    def dfs(u):
        for w in g.out_neighbors(u):
            if not budget.spend():
                return
            if w == v and len(path) >= 2:
                yield tuple(path)
            elif w in allowed and w not in onpath:
                path.append(w)
                onpath.add(w)
                yield from dfs(w)
                path.pop()
                onpath.discard(w)

    yield from dfs(v)


def _bi_neighbors(g, u, allowed):
    return [w for w in g.out_neighbors(u) if w in allowed and w != u and g.has_edge(w, u)]


def _cliques_with(g, v, allowed, budget):
    cand = _bi_neighbors(g, v, allowed)

    def grow(clique, cands):
        for i, w in enumerate(cands):
            if not budget.spend():
                return
            new = clique + (w,)
            yield new
            rest = [x for x in cands[i + 1:] if g.is_bidirected(w, x)]
            yield from grow(new, rest)

    yield from grow((v,), cand)


def _bicycles_from(g, v, allowed, budget):
    path = [v]
    onpath = {v}

    def dfs(u):
        for w in _bi_neighbors(g, u, allowed):
            if not budget.spend():
                return
            if w not in onpath:
                path.append(w)
                onpath.add(w)
                if len(path) >= 4 and g.is_bidirected(w, v) and path[1] < w:
                    yield tuple(path)
                yield from dfs(w)
                path.pop()
                onpath.discard(w)

    yield from dfs(v)


def best_blocks(g: DirectedGraph, s: int, budget: int = 200_000) -> list:
    """Vertex-disjoint blocks maximising the total free-letter count.

    Exhaustive when the search finishes inside ``budget`` steps, otherwise
    the best packing found so far (still a valid construction).
    """
    bud = _Budget(budget)
    square = square_root(s) is not None
    best_val, best = Fraction(-1), []

    def rec(remaining: frozenset, chosen: list, val: Fraction):
        nonlocal best_val, best
        if val > best_val:
            best_val, best = val, list(chosen)
        if not remaining or val + len(remaining) <= best_val or bud.left <= 0:
            return
        v = min(remaining)
        rest = remaining - {v}
        options = [Block(CLIQUE, c) for c in _cliques_with(g, v, rest, bud)]
        options += [Block(DCYCLE, c) for c in _directed_cycles_from(g, v, rest, bud)]
        if square:
            options += [Block(LR_CYCLE, c) for c in _bicycles_from(g, v, rest, bud)]
        options.sort(key=lambda b: -b.value(s))
        for b in options:
            chosen.append(b)
            rec(remaining - set(b.vertices), chosen, val + b.value(s))
            chosen.pop()
        rec(rest, chosen, val)

    rec(frozenset(range(g.n)), [], Fraction(0))
    return best


# ----------------------------------------------------- codes and colourings

def _block_assignments(b: Block, s: int):
    k = len(b.vertices)
    if b.kind == DCYCLE:
        return [(a,) * k for a in range(s)]
    if b.kind == CLIQUE:
        out = []
        for head in product(range(s), repeat=k - 1):
            out.append(head + ((-sum(head)) % s,))
        return out
    t = square_root(s)
    out = []
    for p in product(range(t), repeat=k):
        # vertex i holds L = p[i] (shared with left neighbour's R) and R = p[i+1]
        out.append(tuple(p[i] * t + p[(i + 1) % k] for i in range(k)))
    return out


def block_code(g: DirectedGraph, s: int, blocks) -> Code:
    """The product code of the blocks, other vertices fixed at letter 0."""
    for b in blocks:
        if not check_block(g, b, s):
            raise ValueError(f"{b} is not present in the graph")
    parts = [(b.vertices, _block_assignments(b, s)) for b in blocks]
    words = []
    for combo in product(*[a for _, a in parts]):
        w = [0] * g.n
        for (vs, _), assign in zip(parts, combo):
            for v, x in zip(vs, assign):
                w[v] = x
        words.append(tuple(w))
    return Code(frozenset(words), g.n, s)


def block_syndromes(g: DirectedGraph, s: int, blocks) -> tuple:
    """Colour of every word in A^n (indexed by word index) and the colour count.

    A colour is the tuple of block syndromes plus the letters of vertices
    outside every block, packed as a mixed-radix integer.
    """
    digits = digit_table(g.n, s).astype(np.int64)
    colour = np.zeros(digits.shape[0], dtype=np.int64)
    radix_total = 1
    covered = set()

    def push(values, radix):
        nonlocal colour, radix_total
        colour = colour * radix + values
        radix_total *= radix

    for b in blocks:
        vs = b.vertices
        k = len(vs)
        covered.update(vs)
        if b.kind == DCYCLE:
            for i in range(k - 1):
                push((digits[:, vs[i + 1]] - digits[:, vs[i]]) % s, s)
        elif b.kind == CLIQUE:
            push(digits[:, list(vs)].sum(axis=1) % s, s)
        else:
            t = square_root(s)
            for i in range(k):
                left_r = digits[:, vs[i - 1]] % t
                own_l = digits[:, vs[i]] // t
                push((own_l - left_r) % t, t)
    for v in range(g.n):
        if v not in covered:
            push(digits[:, v], s)
    return colour, radix_total


def lr_pair_code(k: int, s: int) -> Code:
    """The L-R pairing code on the bidirected k-cycle 0-1-...-(k-1) for square s."""
    if square_root(s) is None:
        raise ValueError(f"L-R pairing needs a square alphabet size, got {s}")
    return Code(frozenset(_block_assignments(Block(LR_CYCLE, tuple(range(k))), s)), k, s)


def lr_pair_coloring(k: int, s: int) -> tuple:
    """Colouring that broadcasts each of the k L-R pair differences mod sqrt(s)."""
    from .graph import bidirected_cycle
    return block_syndromes(bidirected_cycle(k), s, [Block(LR_CYCLE, tuple(range(k)))])


def sum_zero_code(n: int, s: int) -> Code:
    """Words whose letters sum to 0 mod s: the '0-mod-s' code on a bidirected K_n."""
    return Code(frozenset(_block_assignments(Block(CLIQUE, tuple(range(n))), s)), n, s)


def construct_code(g: DirectedGraph, s: int, budget: int = 200_000) -> Code:
    return block_code(g, s, best_blocks(g, s, budget))


def codeword_mask(code: Code) -> np.ndarray:
    mask = np.zeros(code.s ** code.n, dtype=bool)
    if len(code):
        mask[np.array(sorted(code.words), dtype=np.int64) @ place_values(code.n, code.s)] = True
    return mask
