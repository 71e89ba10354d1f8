"""Entropy-like set functions: Shannon, Zhang-Yeung and file-defined
inequalities, and the graph entropy / index code linear programs built on them.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, ParseError
from .graph import DirectedGraph
from .lp import LinearConstraint, LinearProgram, solve_lp

MAX_GROUND = 13
POLICIES = ("singletons", "upto2")


def subset_mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _check_ground(n: int):
    if not 1 <= n <= MAX_GROUND:
        raise BudgetExceeded(f"ground set size {n} outside 1..{MAX_GROUND}")


def elemental_shannon_inequalities(n: int) -> list:
    """The elemental generators of the Shannon cone, all in ``... >= 0`` form.

    n monotonicity rows f(V) - f(V - i) >= 0 and C(n,2) 2^(n-2) rows
    I(i; j | K) = f(iK) + f(jK) - f(ijK) - f(K) >= 0.
    """
    _check_ground(n)
    full = (1 << n) - 1
    out = [LinearConstraint(((full, 1), (full & ~(1 << i), -1))) for i in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        rest = full & ~(1 << i) & ~(1 << j)
        sub = rest
        while True:
            k = sub
            out.append(LinearConstraint((
                (k | 1 << i, 1), (k | 1 << j, 1), (k | 1 << i | 1 << j, -1), (k, -1))))
            if sub == 0:
                break
            sub = (sub - 1) & rest
    return out


# -------------------------------------------------------------- Zhang-Yeung

def zy_terms(a: int, b: int, c: int, d: int) -> tuple:
    """Terms of W - U for groups given as masks.

    U = 2f(C) + 2f(D) + f(A) + f(AB) + 4f(ACD) + f(BCD)
    W = 3f(CD) + 3f(AC) + 3f(AD) + f(BC) + f(BD)
    """
    u = ((c, 2), (d, 2), (a, 1), (a | b, 1), (a | c | d, 4), (b | c | d, 1))
    w = ((c | d, 3), (a | c, 3), (a | d, 3), (b | c, 1), (b | d, 1))
    return tuple(w) + tuple((m, -k) for m, k in u)


def mutual_information(f, a: int, b: int, c: int = 0) -> Fraction:
    """I_f(A; B | C) = f(AC) + f(BC) - f(ABC) - f(C)."""
    return f(a | c) + f(b | c) - f(a | b | c) - f(c)


def zy_mutual_information_form(f, a, b, c, d) -> Fraction:
    """RHS minus LHS of 2I(C;D) <= I(A;B) + I(A;CD) + 3I(C;D|A) + I(C;D|B)."""
    lhs = 2 * mutual_information(f, c, d)
    rhs = (mutual_information(f, a, b) + mutual_information(f, a, c | d)
           + 3 * mutual_information(f, c, d, a) + mutual_information(f, c, d, b))
    return rhs - lhs


def _groups(n: int, policy: str) -> list:
    if policy not in POLICIES:
        raise ValueError(f"unknown group policy {policy!r}; use one of {POLICIES}")
    size = 1 if policy == "singletons" else 2
    out = []
    for k in range(1, size + 1):
        out += [subset_mask(c) for c in itertools.combinations(range(n), k)]
    return out


def disjoint_group_tuples(n: int, arity: int, policy: str):
    """Ordered tuples of pairwise-disjoint non-empty groups drawn per policy."""
    groups = _groups(n, policy)

    def rec(used: int, acc: tuple):
        if len(acc) == arity:
            yield acc
            return
        for gm in groups:
            if not gm & used:
                yield from rec(used | gm, acc + (gm,))

    yield from rec(0, ())


def zy_instances(n: int, policy: str = "singletons") -> list:
    """Zhang-Yeung inequalities W - U >= 0 over ordered disjoint group tuples (A,B,C,D)."""
    if n < 4:
        return []
    return [LinearConstraint(zy_terms(*t)) for t in disjoint_group_tuples(n, 4, policy)]


# ----------------------------------------------------- inequality files

_TERM_RE = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?f\(([^()]*)\)\s*")
_NAME_RE = re.compile(r"[A-Z][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Template:
    """Signed combination of f over unions of placeholder groups, ``>= 0``."""

    placeholders: tuple
    terms: tuple  # (coefficient, tuple of placeholder names)

    def instantiate(self, groups: dict) -> LinearConstraint:
        terms = []
        for coef, names in self.terms:
            mask = 0
            for name in names:
                mask |= groups[name]
            terms.append((mask, coef))
        return LinearConstraint(tuple(terms))


@dataclass(frozen=True)
class InequalitySet:
    name: str
    templates: tuple
    groups: str = "singletons"

    def instances(self, n: int, policy=None) -> list:
        policy = policy or self.groups
        out = []
        for t in self.templates:
            for combo in disjoint_group_tuples(n, len(t.placeholders), policy):
                con = t.instantiate(dict(zip(t.placeholders, combo)))
                if not con.trivial:
                    out.append(con)
        return out


def _parse_template(line: str, lineno: int, declared) -> Template:
    if not line.endswith(">= 0"):
        raise ParseError("template must end with '>= 0'", lineno)
    body = line[: -len(">= 0")].rstrip()
    if not body:
        raise ParseError("empty template", lineno)
    pos, terms, names = 0, [], []
    while pos < len(body):
        m = _TERM_RE.match(body, pos)
        if not m or m.end() == pos:
            raise ParseError(f"syntax error near {body[pos:]!r}", lineno)
        sign, coef, inner = m.groups()
        if sign is None and terms:
            raise ParseError(f"missing '+' or '-' before term {m.group(0).strip()!r}", lineno)
        value = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            value = -value
        parts = [p.strip() for p in inner.split("|")]
        for p in parts:
            if not _NAME_RE.fullmatch(p) or (declared is not None and p not in declared):
                raise ParseError(f"unknown placeholder {p!r}", lineno)
        if len(set(parts)) != len(parts):
            raise ParseError(f"placeholder repeated in union f({inner})", lineno)
        for p in parts:
            if p not in names:
                names.append(p)
        terms.append((value, tuple(parts)))
        pos = m.end()
    return Template(tuple(sorted(names)), tuple(terms))


def load_inequality_set(text: str, name: str = "custom") -> InequalitySet:
    """Parse an inequality file.

    Lines: ``#`` comments, optional headers ``groups: singletons|upto2`` and
    ``placeholders: A, B, C, D``, then one template per line such as
    ``3*f(C|D) - 2*f(C) + f(A|B) >= 0``.
    """
    groups = "singletons"
    declared = None
    templates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("groups:"):
            groups = line.split(":", 1)[1].strip()
            if groups not in POLICIES:
                raise ParseError(f"unknown group policy {groups!r}", lineno)
            continue
        if line.startswith("placeholders:"):
            declared = {p.strip() for p in line.split(":", 1)[1].split(",") if p.strip()}
            for p in declared:
                if not _NAME_RE.fullmatch(p):
                    raise ParseError(f"bad placeholder name {p!r}", lineno)
            continue
        templates.append(_parse_template(line, lineno, declared))
    return InequalitySet(name, tuple(templates), groups)


ZY_TEMPLATE_TEXT = """\
# Zhang-Yeung inequality in U <= W form, written as W - U >= 0
groups: singletons
placeholders: A, B, C, D
3*f(C|D) + 3*f(A|C) + 3*f(A|D) + f(B|C) + f(B|D) - 2*f(C) - 2*f(D) - f(A) - f(A|B) - 4*f(A|C|D) - f(B|C|D) >= 0
"""


# --------------------------------------------------------- graph programs

def graph_constraints(g: DirectedGraph) -> list:
    """Determinism f(j + in(j)) - f(in(j)) = 0 per vertex, and caps f({i}) <= 1."""
    out = []
    for j in range(g.n):
        ins = subset_mask(g.in_neighbors(j))
        out.append(LinearConstraint(((ins | 1 << j, 1), (ins, -1)), "=="))
    out += [LinearConstraint(((1 << i, 1),), "<=", 1) for i in range(g.n)]
    return out


def _extra(n: int, ineq, groups: str) -> list:
    if ineq == "shannon":
        return []
    if ineq == "zy":
        return zy_instances(n, groups)
    if isinstance(ineq, InequalitySet):
        return ineq.instances(n, None if groups is None else groups)
    raise ValueError(f"unknown inequality selector {ineq!r}")


def _dedupe(constraints) -> list:
    seen, out = set(), []
    for c in constraints:
        k = c.key()
        if k not in seen and not c.trivial:
            seen.add(k)
            out.append(c)
    return out


def entropy_program(g: DirectedGraph, ineq="shannon", groups=None) -> LinearProgram:
    """Maximise f(V) over entropy-like f meeting the graph's determinism constraints."""
    _check_ground(g.n)
    if groups is None and not isinstance(ineq, InequalitySet):
        groups = "singletons"
    cons = elemental_shannon_inequalities(g.n) + _extra(g.n, ineq, groups) + graph_constraints(g)
    full = (1 << g.n) - 1
    return LinearProgram(g.n, _dedupe(cons), ((full, 1),), "max")


def entropy_bound(g: DirectedGraph, ineq="shannon", groups=None) -> Fraction:
    """E_S(G), or the instantiated E_ZY / custom bound, as an exact rational."""
    res = solve_lp(entropy_program(g, ineq, groups))
    if not res.optimal:
        raise AssertionError(f"entropy LP returned {res.status}; f = 0 is always feasible")
    return res.value


def index_program(g: DirectedGraph, ineq="shannon", groups=None) -> LinearProgram:
    """Minimise f(w) on V + {w} with w broadcast, w determined by V and f(V) = n."""
    n = g.n
    _check_ground(n + 1)
    if groups is None and not isinstance(ineq, InequalitySet):
        groups = "singletons"
    w = 1 << n
    full = (1 << n) - 1
    cons = elemental_shannon_inequalities(n + 1) + _extra(n + 1, ineq, groups)
    for j in range(n):
        ins = subset_mask(g.in_neighbors(j)) | w
        cons.append(LinearConstraint(((ins | 1 << j, 1), (ins, -1)), "=="))
    cons.append(LinearConstraint(((full | w, 1), (full, -1)), "=="))
    cons.append(LinearConstraint(((full, 1),), "==", n))
    cons += [LinearConstraint(((1 << i, 1),), "<=", 1) for i in range(n)]
    return LinearProgram(n + 1, _dedupe(cons), ((w, 1),), "min")


def index_code_bound(g: DirectedGraph, ineq="shannon", groups=None) -> Fraction:
    """i_S(G), or the instantiated i_ZY / custom bound, as an exact rational."""
    res = solve_lp(index_program(g, ineq, groups))
    if not res.optimal:
        raise AssertionError(f"index-code LP returned {res.status}")
    return res.value
