"""Exact linear programming over set functions.

A program's variables are the values f(S) of a set function on the
non-empty subsets S of a ground set {0..g-1} (subsets as bitmasks
1..2^g-1, f(empty) = 0). Variables are non-negative; every program built in
this package contains the Shannon elemental inequalities, which already
force f >= 0, so the bound loses nothing.

``solve_lp`` returns exact rational optima with a primal solution and dual
multipliers. Two routes produce candidates:

* ``exact``: a two-phase tableau simplex in ``fractions.Fraction``
  arithmetic, largest-coefficient pivoting for a bounded number of steps
  and then Bland's rule, which cannot cycle;
* ``certified``: HiGHS dual simplex in floating point, whose primal and
  dual vectors are snapped to nearby rationals and accepted only if they
  pass the exact certificate check.

Every optimum is re-verified in exact arithmetic before it is returned:
primal feasibility of each constraint, dual sign conditions, dual
feasibility of each column, and equality of primal and dual objectives.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import LPError

RELATIONS = ("<=", "==", ">=")


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class SetFunction:
    """Rational values on the non-empty subsets of {0..ground-1}; f(empty) = 0."""

    ground: int
    values: tuple  # values[mask - 1]

    def __call__(self, subset) -> Fraction:
        mask = subset if isinstance(subset, int) else sum(1 << v for v in set(subset))
        return Fraction(0) if mask == 0 else self.values[mask - 1]

    @classmethod
    def from_callable(cls, ground: int, func) -> "SetFunction":
        return cls(ground, tuple(_frac(func(m)) for m in range(1, 1 << ground)))

    def items(self):
        return ((m, self.values[m - 1]) for m in range(1, 1 << self.ground))


@dataclass(frozen=True)
class LinearConstraint:
    """``sum coef * f(subset) <relation> bound`` with merged, non-zero terms."""

    terms: tuple
    relation: str = ">="
    bound: Fraction = Fraction(0)

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"relation must be one of {RELATIONS}, got {self.relation!r}")
        merged = {}
        for mask, c in self.terms:
            if mask == 0:
                continue  # f(empty) = 0
            if mask < 0:
                raise ValueError(f"negative subset mask {mask}")
            merged[mask] = merged.get(mask, Fraction(0)) + _frac(c)
        object.__setattr__(self, "terms",
                           tuple(sorted((m, c) for m, c in merged.items() if c != 0)))
        object.__setattr__(self, "bound", _frac(self.bound))

    @property
    def trivial(self) -> bool:
        return not self.terms

    def lhs(self, f) -> Fraction:
        return sum((c * f(m) for m, c in self.terms), Fraction(0))

    def satisfied(self, f) -> bool:
        v = self.lhs(f)
        if self.relation == "<=":
            return v <= self.bound
        if self.relation == ">=":
            return v >= self.bound
        return v == self.bound

    def key(self):
        return (self.terms, self.relation, self.bound)


@dataclass
class LinearProgram:
    ground: int
    constraints: list
    objective: tuple
    sense: str = "max"

    def __post_init__(self):
        if self.sense not in ("max", "min"):
            raise ValueError(f"sense must be 'max' or 'min', got {self.sense!r}")
        self.objective = LinearConstraint(tuple(self.objective)).terms
        nvars = (1 << self.ground) - 1
        for con in self.constraints:
            for m, _ in con.terms:
                if m > nvars:
                    raise ValueError(f"subset {m} outside a ground set of size {self.ground}")

    @property
    def num_vars(self) -> int:
        return (1 << self.ground) - 1

    def objective_value(self, f) -> Fraction:
        return sum((c * f(m) for m, c in self.objective), Fraction(0))


@dataclass
class LPResult:
    """Outcome of ``solve_lp``.

    ``duals[i]`` is the multiplier of ``constraints[i]`` for the program in
    maximisation form (a min program is read as max of the negated
    objective): >= 0 on ``<=`` rows, <= 0 on ``>=`` rows, free on ``==`` rows.
    """

    status: str
    value: Optional[Fraction] = None
    primal: Optional[SetFunction] = None
    duals: Optional[tuple] = None
    method: str = ""
    pivots: int = 0
    notes: list = field(default_factory=list)

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


# ------------------------------------------------------------ certificate

def _max_form_objective(lp: LinearProgram) -> dict:
    sign = 1 if lp.sense == "max" else -1
    return {m: sign * c for m, c in lp.objective}


def check_primal(lp: LinearProgram, x: SetFunction) -> bool:
    if x.ground != lp.ground or any(v < 0 for v in x.values):
        return False
    return all(con.satisfied(x) for con in lp.constraints)


def check_dual(lp: LinearProgram, y) -> bool:
    if len(y) != len(lp.constraints):
        return False
    column = {}
    for con, yi in zip(lp.constraints, y):
        if con.relation == "<=" and yi < 0:
            return False
        if con.relation == ">=" and yi > 0:
            return False
        if yi:
            for m, c in con.terms:
                column[m] = column.get(m, Fraction(0)) + yi * c
    cmax = _max_form_objective(lp)
    for m in set(column) | set(cmax):
        if column.get(m, Fraction(0)) < cmax.get(m, Fraction(0)):
            return False
    return True


def dual_objective(lp: LinearProgram, y) -> Fraction:
    return sum((yi * con.bound for con, yi in zip(lp.constraints, y)), Fraction(0))


def verify_certificate(lp: LinearProgram, result: LPResult) -> bool:
    """Exact check that ``result`` is a proven optimum of ``lp``."""
    if not result.optimal or result.primal is None or result.duals is None:
        return False
    x, y = result.primal, result.duals
    if not check_primal(lp, x) or not check_dual(lp, y):
        return False
    primal_max = sum((c * x(m) for m, c in _max_form_objective(lp).items()), Fraction(0))
    if primal_max != dual_objective(lp, y):
        return False
    return result.value == lp.objective_value(x)


# ----------------------------------------------------------- exact simplex

class _Tableau:
    def __init__(self, rows, ncols):
        self.rows = rows  # list of lists; last entry is the right-hand side
        self.ncols = ncols
        self.basis = []
        self.pivots = 0

    def pivot(self, r: int, c: int, obj_rows):
        row = self.rows[r]
        inv = 1 / Fraction(row[c])
        nz = [j for j, v in enumerate(row) if v]
        for j in nz:
            row[j] = row[j] * inv
        for i, other in enumerate(self.rows):
            if i != r:
                f = other[c]
                if f:
                    for j in nz:
                        other[j] = other[j] - f * row[j]
        for other in obj_rows:
            f = other[c]
            if f:
                for j in nz:
                    other[j] = other[j] - f * row[j]
        self.basis[r] = c
        self.pivots += 1

    def ratio_row(self, c: int):
        best, best_ratio = None, None
        for i, row in enumerate(self.rows):
            a = row[c]
            if a > 0:
                ratio = Fraction(row[-1]) / a
                if (best is None or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[i] < self.basis[best])):
                    best, best_ratio = i, ratio
        return best


def _run_phase(tab: _Tableau, obj, allowed, dantzig_limit: int, pivot_limit: int):
    """Maximise; ``obj`` holds -reduced costs. Returns 'optimal' or 'unbounded'."""
    start = tab.pivots
    while True:
        steps = tab.pivots - start
        if steps > pivot_limit:
            raise LPError(f"simplex exceeded {pivot_limit} pivots")
        if steps < dantzig_limit:
            c, val = None, 0
            for j in allowed:
                if obj[j] < val:
                    c, val = j, obj[j]
        else:
            c = next((j for j in allowed if obj[j] < 0), None)
        if c is None:
            return "optimal"
        r = tab.ratio_row(c)
        if r is None:
            return "unbounded"
        tab.pivot(r, c, [obj])


def _exact_simplex(lp: LinearProgram, dantzig_limit: int = 2000,
                   pivot_limit: int = 1_000_000) -> LPResult:
    nv = lp.num_vars
    cmax = _max_form_objective(lp)
    rows_spec = []
    for con in lp.constraints:
        coeffs = {m - 1: c for m, c in con.terms}
        rel, b = con.relation, con.bound
        flipped = b < 0
        if flipped:
            coeffs = {j: -c for j, c in coeffs.items()}
            b = -b
            rel = {"<=": ">=", ">=": "<=", "==": "=="}[rel]
        rows_spec.append((coeffs, rel, b, flipped))

    # column layout: structural | slack/surplus | artificial
    m = len(rows_spec)
    slack_of, art_of = {}, {}
    col = nv
    for i, (_, rel, _, _) in enumerate(rows_spec):
        if rel != "==":
            slack_of[i] = col
            col += 1
    for i, (_, rel, _, _) in enumerate(rows_spec):
        if rel != "<=":
            art_of[i] = col
            col += 1
    ncols = col
    rows = []
    basis = []
    for i, (coeffs, rel, b, _) in enumerate(rows_spec):
        row = [0] * (ncols + 1)
        for j, c in coeffs.items():
            row[j] = c
        if rel == "<=":
            row[slack_of[i]] = 1
            basis.append(slack_of[i])
        else:
            if rel == ">=":
                row[slack_of[i]] = -1
            row[art_of[i]] = 1
            basis.append(art_of[i])
        row[-1] = b
        rows.append(row)
    tab = _Tableau(rows, ncols)
    tab.basis = basis
    artificial = set(art_of.values())
    non_art = [j for j in range(ncols) if j not in artificial]

    if artificial:
        # phase 1: maximise -sum(artificials)
        w = [0] * (ncols + 1)
        for j in artificial:
            w[j] = 1
        for i, bcol in enumerate(basis):
            if bcol in artificial:
                w = [a - b for a, b in zip(w, rows[i])]
        _run_phase(tab, w, list(range(ncols)), dantzig_limit, pivot_limit)
        if w[-1] < 0:
            return LPResult("infeasible", method="exact", pivots=tab.pivots)
        for i in range(m):
            if tab.basis[i] in artificial:
                j = next((j for j in non_art if rows[i][j] != 0), None)
                if j is not None:
                    tab.pivot(i, j, [])

    obj = [0] * (ncols + 1)
    for mask, c in cmax.items():
        obj[mask - 1] = -c
    for i, bcol in enumerate(tab.basis):
        f = obj[bcol]
        if f:
            obj = [a - f * b for a, b in zip(obj, rows[i])]
    status = _run_phase(tab, obj, non_art, dantzig_limit, pivot_limit)
    if status == "unbounded":
        return LPResult("unbounded", method="exact", pivots=tab.pivots)

    xs = [Fraction(0)] * nv
    for i, bcol in enumerate(tab.basis):
        if bcol < nv:
            xs[bcol] = Fraction(rows[i][-1])
    cost = lambda j: cmax.get(j + 1, Fraction(0)) if j < nv else Fraction(0)  # noqa: E731
    duals = []
    for i, (_, rel, _, flipped) in enumerate(rows_spec):
        idcol = slack_of[i] if rel == "<=" else art_of[i]
        y = sum((cost(tab.basis[r]) * rows[r][idcol] for r in range(m)), Fraction(0))
        duals.append(-y if flipped else y)
    x = SetFunction(lp.ground, tuple(xs))
    return LPResult("optimal", lp.objective_value(x), x, tuple(duals),
                    method="exact", pivots=tab.pivots)


# --------------------------------------------------------- certified float

_DENOMINATORS = (1, 2, 6, 12, 60, 840, 27720, 10 ** 6)


def _snap(values, limit: int) -> list:
    return [Fraction(float(v)).limit_denominator(limit) for v in values]


def _float_simplex(lp: LinearProgram) -> Optional[LPResult]:
    from scipy.optimize import linprog
    from scipy.sparse import csr_matrix

    nv = lp.num_vars
    sign = 1 if lp.sense == "max" else -1
    c = np.zeros(nv)
    for mask, coef in lp.objective:
        c[mask - 1] = -sign * float(coef)
    ub, eq = [], []
    for i, con in enumerate(lp.constraints):
        (eq if con.relation == "==" else ub).append(i)

    def build(idx, negate_ge):
        data, ri, ci, b = [], [], [], []
        for r, i in enumerate(idx):
            con = lp.constraints[i]
            s = -1.0 if (negate_ge and con.relation == ">=") else 1.0
            for mask, coef in con.terms:
                data.append(s * float(coef))
                ri.append(r)
                ci.append(mask - 1)
            b.append(s * float(con.bound))
        if not idx:
            return None, None
        return csr_matrix((data, (ri, ci)), shape=(len(idx), nv)), np.array(b)

    A_ub, b_ub = build(ub, True)
    A_eq, b_eq = build(eq, False)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq,
                      bounds=(0, None), method="highs-ds")
    if res.status != 0:
        return None
    y_float = np.zeros(len(lp.constraints))
    if ub:
        marg = -np.asarray(res.ineqlin.marginals)
        for r, i in enumerate(ub):
            y_float[i] = marg[r] * (-1.0 if lp.constraints[i].relation == ">=" else 1.0)
    if eq:
        marg = -np.asarray(res.eqlin.marginals)
        for r, i in enumerate(eq):
            y_float[i] = marg[r]
    for limit in _DENOMINATORS:
        x = SetFunction(lp.ground, tuple(max(v, Fraction(0)) for v in _snap(res.x, limit)))
        y = tuple(_snap(y_float, limit))
        cand = LPResult("optimal", lp.objective_value(x), x, y, method="certified")
        if verify_certificate(lp, cand):
            return cand
    return None


_observers: list = []


def add_observer(fn):
    """Register ``fn(lp, result)``, called after every verified optimum."""
    _observers.append(fn)
    return fn


def remove_observer(fn):
    _observers.remove(fn)


def solve_lp(lp: LinearProgram, method: str = "auto") -> LPResult:
    """Solve ``lp`` exactly.

    ``method`` is ``"auto"`` (certified float route, falling back to the
    exact simplex when snapping fails or the float solve is not optimal),
    ``"exact"`` or ``"certified"`` (raises LPError if no certificate).
    """
    if method not in ("auto", "exact", "certified"):
        raise ValueError(f"unknown method {method!r}")
    kept = [c for c in lp.constraints if not c.trivial]
    for con in lp.constraints:
        if con.trivial and not con.satisfied(SetFunction(lp.ground, (Fraction(0),) * lp.num_vars)):
            return LPResult("infeasible", method="trivial-row")
    work = lp if len(kept) == len(lp.constraints) else LinearProgram(
        lp.ground, kept, lp.objective, lp.sense)

    result = None
    if method in ("auto", "certified"):
        result = _float_simplex(work)
        if result is None and method == "certified":
            raise LPError("floating-point solution could not be certified")
    if result is None:
        result = _exact_simplex(work)
    if not result.optimal:
        return result
    if work is not lp:
        # re-expand duals to the caller's constraint list
        it = iter(result.duals)
        result.duals = tuple(Fraction(0) if c.trivial else next(it) for c in lp.constraints)
    if not verify_certificate(lp, result):
        raise LPError("optimal solution failed exact certificate verification")
    for fn in list(_observers):
        fn(lp, result)
    return result
