"""Dense two-phase simplex over named variables and labeled constraints.

Small and deterministic by design: most-negative-reduced-cost entering
with a lexicographic leaving tie-break, so degenerate problems neither
cycle nor wander, and reruns pivot identically.  Problems are stated
with named variables (default bound x >= 0, optionally free or boxed)
and labeled rows; solutions report which labels bind at the optimum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
STALLED = "stalled"

_RELATIONS = ("<=", ">=", "==")

# pivot eligibility / optimality test
_PIVOT_TOL = 1e-9
# residual tolerance when classifying feasibility and active rows
_FEAS_TOL = 1e-7
_trace = None  # diagnostic hook, called once per pivot when set


class LpError(ValueError):
    """Malformed program: unknown variable, duplicate label, bad relation."""


@dataclass
class _Variable:
    name: str
    lower: float | None
    upper: float | None


@dataclass
class _Row:
    coeffs: dict
    relation: str
    rhs: float
    label: str


class LinearProgram:
    """Mutable LP builder; hand the finished program to ``solve``."""

    def __init__(self, sense: str = "max"):
        if sense not in ("max", "min"):
            raise LpError("sense must be 'max' or 'min'")
        self.sense = sense
        self._vars = []
        self._index = {}
        self._objective = {}
        self._rows = []
        self._labels = set()

    def add_variable(self, name: str, lower=0.0, upper=None):
        """Declare a variable; default bound is x >= 0, lower=None frees it."""
        if not name:
            raise LpError("variable name must be nonempty")
        if name in self._index:
            raise LpError(f"variable {name!r} declared twice")
        if lower is not None and upper is not None and upper < lower:
            raise LpError(f"variable {name!r} has empty bound interval")
        self._index[name] = len(self._vars)
        self._vars.append(_Variable(name, lower, upper))

    def set_objective(self, coeffs: Mapping[str, float]):
        for name in coeffs:
            if name not in self._index:
                raise LpError(f"objective uses undeclared variable {name!r}")
        self._objective = {k: float(v) for k, v in coeffs.items() if v != 0.0}

    def add_constraint(self, coeffs: Mapping[str, float], relation: str,
                       rhs: float, label: str = None):
        if relation not in _RELATIONS:
            raise LpError(f"relation must be one of {_RELATIONS}")
        for name in coeffs:
            if name not in self._index:
                raise LpError(f"constraint uses undeclared variable {name!r}")
        if label is None:
            label = f"row{len(self._rows)}"
        if label in self._labels:
            raise LpError(f"duplicate constraint label {label!r}")
        self._labels.add(label)
        self._rows.append(
            _Row({k: float(v) for k, v in coeffs.items()}, relation,
                 float(rhs), label)
        )

    @property
    def variable_names(self):
        return [v.name for v in self._vars]

    @property
    def constraint_labels(self):
        return [r.label for r in self._rows]


@dataclass
class LpSolution:
    status: str
    objective_value: float = None
    values: dict = field(default_factory=dict)
    active_labels: tuple = ()
    iterations: int = 0
    max_violation: float = 0.0

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL


def format_lp(lp: LinearProgram) -> str:
    """Human-readable listing of the program, for logs and debugging."""
    parts = []
    obj = " + ".join(
        f"{c:g}*{v}" for v, c in sorted(lp._objective.items())
    ) or "0"
    parts.append(f"{lp.sense} {obj}")
    parts.append("subject to:")
    for row in lp._rows:
        lhs = " + ".join(
            f"{c:g}*{v}" for v, c in sorted(row.coeffs.items())
        ) or "0"
        parts.append(f"  [{row.label}] {lhs} {row.relation} {row.rhs:g}")
    for v in lp._vars:
        lo = "-inf" if v.lower is None else f"{v.lower:g}"
        hi = "+inf" if v.upper is None else f"{v.upper:g}"
        parts.append(f"  {lo} <= {v.name} <= {hi}")
    return "\n".join(parts)


def solve(lp: LinearProgram, max_pivots: int = 50000) -> LpSolution:
    """Two-phase simplex.  Statuses: optimal, infeasible, unbounded, stalled.

    The entering column is the most negative reduced cost; the leaving row
    breaks ratio ties lexicographically over the initial-basis columns,
    which prevents cycling and keeps the pivot sequence reproducible.
    """
    # --- rewrite variables onto y >= 0 columns ---------------------------
    # each original variable becomes one or two columns plus a constant
    # shift: x = shift + sum(sign * y_col)
    col_of = []              # per column: (var position, sign)
    var_cols = []            # per variable: list of (col, sign), shift
    extra_rows = []          # upper-bound rows introduced by boxed variables
    for pos, v in enumerate(lp._vars):
        cols = []
        if v.lower is not None:
            shift = v.lower
            cols.append((len(col_of), 1.0))
            col_of.append((pos, 1.0))
            if v.upper is not None:
                extra_rows.append(
                    _Row({v.name: 1.0}, "<=", v.upper, f"_bound[{v.name}]")
                )
        elif v.upper is not None:
            # free below, capped above: x = upper - y
            shift = v.upper
            cols.append((len(col_of), -1.0))
            col_of.append((pos, -1.0))
        else:
            shift = 0.0
            cols.append((len(col_of), 1.0))
            col_of.append((pos, 1.0))
            cols.append((len(col_of), -1.0))
            col_of.append((pos, -1.0))
        var_cols.append((cols, shift))

    rows = list(lp._rows) + extra_rows
    n_struct = len(col_of)
    m = len(rows)

    a = np.zeros((m, n_struct))
    b = np.zeros(m)
    rels = []
    for r, row in enumerate(rows):
        rhs = row.rhs
        for name, coeff in row.coeffs.items():
            cols, shift = var_cols[lp._index[name]]
            rhs -= coeff * shift
            for col, sign in cols:
                a[r, col] += coeff * sign
        rel = row.relation
        if rhs < 0.0:
            a[r] = -a[r]
            rhs = -rhs
            rel = {"<=": ">=", ">=": "<=", "==": "=="}[rel]
        elif rhs == 0.0 and rel == ">=":
            a[r] = -a[r]
            rel = "<="
        b[r] = rhs
        rels.append(rel)

    # bound shifts only displace the objective by a constant, so the
    # tableau cost ignores them; the reported value is recomputed in the
    # original variable space at the end
    c_struct = np.zeros(n_struct)
    sign = 1.0 if lp.sense == "max" else -1.0
    for name, coeff in lp._objective.items():
        cols, _ = var_cols[lp._index[name]]
        for col, s in cols:
            c_struct[col] += sign * coeff * s

    # --- slack, surplus and artificial columns ---------------------------
    n_slack = sum(1 for rel in rels if rel != "==")
    n_art = sum(1 for rel in rels if rel != "<=")
    n_total = n_struct + n_slack + n_art
    tab = np.zeros((m, n_total + 1))
    tab[:, :n_struct] = a
    tab[:, -1] = b
    basis = np.empty(m, dtype=int)
    art_cols = []
    col = n_struct
    acol = n_struct + n_slack
    for r, rel in enumerate(rels):
        if rel == "<=":
            tab[r, col] = 1.0
            basis[r] = col
            col += 1
        elif rel == ">=":
            tab[r, col] = -1.0
            col += 1
            tab[r, acol] = 1.0
            basis[r] = acol
            art_cols.append(acol)
            acol += 1
        else:
            tab[r, acol] = 1.0
            basis[r] = acol
            art_cols.append(acol)
            acol += 1
    art_mask = np.zeros(n_total, dtype=bool)
    art_mask[art_cols] = True

    iterations = 0

    lex_cols = basis.copy()  # initial basis columns double as B^-1 for ties

    def run(cost, allowed, retire_artificials=False):
        # reduced costs are recomputed from the tableau every step; the
        # incremental update drifts after enough degenerate pivots and
        # starts hallucinating entering columns
        nonlocal iterations, tab
        while iterations < max_pivots:
            z = cost[basis] @ tab[:, :-1] - cost
            candidates = np.flatnonzero(allowed & (z < -_PIVOT_TOL))
            if candidates.size == 0:
                return OPTIMAL
            # most-negative entering escapes degenerate plateaus that trap
            # the smallest-index rule; lexicographic ties below keep it
            # from cycling
            j = int(candidates[np.argmin(z[candidates])])
            coljv = tab[:, j]
            eligible = np.flatnonzero(coljv > _PIVOT_TOL)
            if eligible.size == 0:
                return UNBOUNDED
            ratios = tab[eligible, -1] / coljv[eligible]
            best = ratios.min()
            cand = eligible[ratios <= best + 1e-10 * (1.0 + abs(best))]
            # degenerate ties: lexicographic test over the initial-basis
            # columns (they carry B^-1), provably cycle-free
            for k in lex_cols:
                if cand.size == 1:
                    break
                keys = tab[cand, k] / coljv[cand]
                low = keys.min()
                cand = cand[keys <= low + 1e-12 * (1.0 + abs(low))]
            r = int(cand[np.argmin(basis[cand])])
            if _trace is not None:
                _trace(
                    iterations=iterations,
                    enter=j,
                    z=float(z[j]),
                    leave=int(basis[r]),
                    ratio=float(best),
                    obj=float(cost[basis] @ tab[:, -1]),
                    ties=int(cand.size),
                    basis=tuple(basis),
                )
            piv = tab[r, j]
            tab[r] /= piv
            factor = tab[:, j].copy()
            factor[r] = 0.0
            tab -= np.outer(factor, tab[r])
            tab[:, j] = 0.0
            tab[r, j] = 1.0
            rhs = tab[:, -1]
            rhs[(rhs < 0.0) & (rhs > -1e-10)] = 0.0
            if retire_artificials and art_mask[basis[r]]:
                allowed[basis[r]] = False
            basis[r] = j
            iterations += 1
        return STALLED

    # --- phase 1: drive artificials to zero ------------------------------
    if art_cols:
        cost1 = np.zeros(n_total)
        cost1[art_cols] = -1.0
        allowed1 = np.ones(n_total, dtype=bool)
        status = run(cost1, allowed1, retire_artificials=True)
        if status == STALLED:
            return LpSolution(STALLED, iterations=iterations)
        art_load = float(tab[np.isin(basis, art_cols), -1].sum())
        if art_load > _FEAS_TOL:
            return LpSolution(INFEASIBLE, iterations=iterations)
        # pivot lingering artificials out of the basis, or drop their rows
        drop = []
        for r in range(m):
            if art_mask[basis[r]]:
                nz = np.flatnonzero(
                    (~art_mask) & (np.abs(tab[r, :-1]) > _PIVOT_TOL)
                )
                if nz.size == 0:
                    drop.append(r)
                    continue
                j = int(nz[0])
                piv = tab[r, j]
                tab[r] /= piv
                for i in range(m):
                    if i != r and tab[i, j] != 0.0:
                        tab[i] -= tab[i, j] * tab[r]
                basis[r] = j
        if drop:
            keep = np.setdiff1d(np.arange(m), np.array(drop, dtype=int))
            tab = tab[keep]
            basis = basis[keep]
            m = len(keep)

    # --- phase 2: original objective --------------------------------------
    cost2 = np.zeros(n_total)
    cost2[:n_struct] = c_struct
    allowed2 = ~art_mask
    status = run(cost2, allowed2)
    if status == STALLED:
        return LpSolution(STALLED, iterations=iterations)
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, iterations=iterations)

    y = np.zeros(n_total)
    y[basis] = tab[:, -1]
    values = {}
    for pos, v in enumerate(lp._vars):
        cols, shift = var_cols[pos]
        values[v.name] = float(shift + sum(s * y[col] for col, s in cols))

    objective = sum(
        coeff * values[name] for name, coeff in lp._objective.items()
    )

    active = []
    worst = 0.0
    for row in lp._rows:
        lhs = sum(coeff * values[name] for name, coeff in row.coeffs.items())
        resid = lhs - row.rhs
        if row.relation == "<=":
            worst = max(worst, resid)
        elif row.relation == ">=":
            worst = max(worst, -resid)
        else:
            worst = max(worst, abs(resid))
        if abs(resid) <= _FEAS_TOL:
            active.append(row.label)
    for v in lp._vars:
        x = values[v.name]
        if v.lower is not None:
            worst = max(worst, v.lower - x)
        if v.upper is not None:
            worst = max(worst, x - v.upper)

    return LpSolution(OPTIMAL, float(objective), values, tuple(active),
                      iterations, float(worst))
