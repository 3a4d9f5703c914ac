"""Robust ranking from indirect preference statements.

The decision maker states pairwise preferences, intensity comparisons,
criteria importance orderings and interaction signs.  All of them compile
into linear constraints over a 2-additive capacity in Moebius form plus a
shared slack ``eps`` that turns strict statements into margins.  Linear
programs then answer: is any compatible capacity left, which pairwise
statements hold for all of them (necessary) or at least one (possible),
and which single capacity represents the whole compatible set best.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from . import lp as lps
from .choquet import choquet_moebius, shapley, two_additive, validate
from .scales import NormalizedTable

# strict statements separate sides by at least eps; weak ones do not
STATEMENT_ARITY = {
    "weak_pref": ("alternative", 2),
    "strict_pref": ("alternative", 2),
    "indifference": ("alternative", 2),
    "intensity_strict": ("alternative", 4),
    "intensity_indiff": ("alternative", 4),
    "importance_strict": ("criterion", 2),
    "importance_indiff": ("criterion", 2),
    "interaction_positive": ("criterion", 2),
    "interaction_negative": ("criterion", 2),
}

# margins below this count as zero when classifying relations
EPS_TOL = 1e-9


class StatementError(ValueError):
    """Unknown kind, wrong arity or references outside the project."""


class IncompatibleError(ValueError):
    """Operation needs a compatible statement set but none exists."""


class SolverStall(RuntimeError):
    """The simplex hit its pivot budget; results would be unreliable."""


@dataclass(frozen=True)
class PreferenceStatement:
    """One elicited statement: a kind plus its alternative or criterion ids."""

    kind: str
    args: tuple
    label: str = ""

    def __post_init__(self):
        if self.kind not in STATEMENT_ARITY:
            raise StatementError(f"unknown statement kind {self.kind!r}")
        _, arity = STATEMENT_ARITY[self.kind]
        if len(self.args) != arity:
            raise StatementError(
                f"{self.kind} takes {arity} ids, got {len(self.args)}"
            )
        if arity == 2 and self.args[0] == self.args[1]:
            raise StatementError(f"{self.kind} compares an id with itself")
        if arity == 4 and (self.args[0] == self.args[1]
                           or self.args[2] == self.args[3]):
            raise StatementError(
                "intensity statements compare two distinct pairs"
            )

    def describe(self) -> str:
        return f"{self.kind}({', '.join(self.args)})"


def statement(kind: str, *args, label: str = "") -> PreferenceStatement:
    return PreferenceStatement(kind, tuple(args), label)


@dataclass
class ConstraintSystem:
    """Compiled constraint view of a statement set over a normalized table.

    Capacity variables: one ``m[i]`` per criterion and a signed pair of
    columns ``p[i|j]`` / ``q[i|j]`` per criterion pair, standing for the
    positive and negative part of the pair mass m_ij = p - q.  With the
    rows m_i - sum_j q_ij >= 0 this set projects exactly onto the
    2-additive monotone capacities: any feasible point maps to a valid
    capacity, and any valid capacity is reached by splitting each pair
    mass into its positive and negative part.  That replaces the
    exponential family "m_i + sum over subsets >= 0" with n linear rows.
    """

    criteria: tuple
    alternatives: tuple
    statements: tuple
    table: NormalizedTable
    choquet_exprs: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for a in self.alternatives:
            if a not in self.choquet_exprs:
                self.choquet_exprs[a] = self._expr(a)

    # --- variable names ---------------------------------------------------
    def var_m(self, c) -> str:
        return f"m[{c}]"

    def var_pair(self, ci, cj):
        i, j = sorted((self.criteria.index(ci), self.criteria.index(cj)))
        a, b = self.criteria[i], self.criteria[j]
        return f"p[{a}|{b}]", f"q[{a}|{b}]"

    def _expr(self, alternative) -> dict:
        """Choquet integral of one alternative as var -> coefficient."""
        row = self.table.row(alternative)
        expr = {}
        for c in self.criteria:
            expr[self.var_m(c)] = row[c]
        for ci, cj in combinations(self.criteria, 2):
            v = min(row[ci], row[cj])
            p, q = self.var_pair(ci, cj)
            expr[p] = v
            expr[q] = -v
        return expr

    def shapley_expr(self, criterion) -> dict:
        expr = {self.var_m(criterion): 1.0}
        for other in self.criteria:
            if other == criterion:
                continue
            p, q = self.var_pair(criterion, other)
            expr[p] = expr.get(p, 0.0) + 0.5
            expr[q] = expr.get(q, 0.0) - 0.5
        return expr

    def interaction_expr(self, ci, cj) -> dict:
        p, q = self.var_pair(ci, cj)
        return {p: 1.0, q: -1.0}

    # --- program assembly ---------------------------------------------------
    def base_program(self, sense: str = "max") -> lps.LinearProgram:
        """Fresh LP with capacity variables, eps, and the axiom rows."""
        prog = lps.LinearProgram(sense)
        for c in self.criteria:
            prog.add_variable(self.var_m(c))
        for ci, cj in combinations(self.criteria, 2):
            p, q = self.var_pair(ci, cj)
            prog.add_variable(p)
            prog.add_variable(q)
        # eps may go negative (how badly incompatible a set is) and is
        # capped above so maximizing it stays bounded without strict rows
        prog.add_variable("eps", lower=None, upper=1.0)
        norm = {self.var_m(c): 1.0 for c in self.criteria}
        for ci, cj in combinations(self.criteria, 2):
            p, q = self.var_pair(ci, cj)
            norm[p] = 1.0
            norm[q] = -1.0
        prog.add_constraint(norm, "==", 1.0, label="normalization")
        for c in self.criteria:
            row = {self.var_m(c): 1.0}
            for other in self.criteria:
                if other == c:
                    continue
                _, q = self.var_pair(c, other)
                row[q] = -1.0
            prog.add_constraint(row, ">=", 0.0, label=f"monotone[{c}]")
        for st, label in zip(self.statements, self.statement_labels()):
            coeffs, rel, rhs = self._statement_row(st)
            prog.add_constraint(coeffs, rel, rhs, label=label)
        return prog

    def statement_labels(self) -> list:
        out, seen = [], set()
        for i, st in enumerate(self.statements):
            label = st.label or f"s{i}:{st.describe()}"
            if label in seen:
                label = f"{label}#{i}"
            seen.add(label)
            out.append(label)
        return out

    def _statement_row(self, st: PreferenceStatement):
        kind, args = st.kind, st.args
        if kind in ("weak_pref", "strict_pref", "indifference"):
            a, b = args
            coeffs = _diff(self.choquet_exprs[a], self.choquet_exprs[b])
            if kind == "strict_pref":
                coeffs["eps"] = coeffs.get("eps", 0.0) - 1.0
                return coeffs, ">=", 0.0
            if kind == "weak_pref":
                return coeffs, ">=", 0.0
            return coeffs, "==", 0.0
        if kind in ("intensity_strict", "intensity_indiff"):
            a, b, c, d = args
            first = _diff(self.choquet_exprs[a], self.choquet_exprs[b])
            second = _diff(self.choquet_exprs[c], self.choquet_exprs[d])
            coeffs = _diff(first, second)
            if kind == "intensity_strict":
                coeffs["eps"] = coeffs.get("eps", 0.0) - 1.0
                return coeffs, ">=", 0.0
            return coeffs, "==", 0.0
        if kind in ("importance_strict", "importance_indiff"):
            ci, cj = args
            coeffs = _diff(self.shapley_expr(ci), self.shapley_expr(cj))
            if kind == "importance_strict":
                coeffs["eps"] = -1.0
                return coeffs, ">=", 0.0
            return coeffs, "==", 0.0
        if kind == "interaction_positive":
            coeffs = self.interaction_expr(*args)
            coeffs["eps"] = -1.0
            return coeffs, ">=", 0.0
        coeffs = {k: -v for k, v in self.interaction_expr(*args).items()}
        coeffs["eps"] = -1.0
        return coeffs, ">=", 0.0

    def capacity_from(self, values: dict):
        singles = [values.get(self.var_m(c), 0.0) for c in self.criteria]
        pairs = {}
        for i, j in combinations(range(len(self.criteria)), 2):
            p, q = self.var_pair(self.criteria[i], self.criteria[j])
            mass = values.get(p, 0.0) - values.get(q, 0.0)
            if mass != 0.0:
                pairs[(i, j)] = mass
        return two_additive(singles, pairs)


def _diff(left: dict, right: dict) -> dict:
    out = dict(left)
    for k, v in right.items():
        out[k] = out.get(k, 0.0) - v
    return out


def compile_statements(statements, table: NormalizedTable) -> ConstraintSystem:
    """Check statement ids against the table and build the constraint view."""
    alts = set(table.alternatives)
    crits = set(table.criteria)
    for st in statements:
        domain, _ = STATEMENT_ARITY[st.kind]
        pool = alts if domain == "alternative" else crits
        for ref in st.args:
            if ref not in pool:
                raise StatementError(
                    f"{st.describe()} references unknown {domain} {ref!r}"
                )
    return ConstraintSystem(
        tuple(table.criteria), tuple(table.alternatives), tuple(statements),
        table
    )


def _solve(prog) -> lps.LpSolution:
    sol = lps.solve(prog)
    if sol.status == lps.STALLED:
        raise SolverStall(f"simplex stalled after {sol.iterations} pivots")
    return sol


def feasibility(system: ConstraintSystem):
    """Maximize the shared margin eps.  Returns (eps_star, compatible).

    ``eps_star`` is None when even the weak versions of the statements
    admit no capacity at all; compatible means eps_star > 0.
    """
    prog = system.base_program("max")
    prog.set_objective({"eps": 1.0})
    sol = _solve(prog)
    if sol.status != lps.OPTIMAL:
        return None, False
    eps = sol.objective_value
    return eps, eps > EPS_TOL


def necessary(system: ConstraintSystem, a, b) -> bool:
    """True when every compatible capacity scores a at least as high as b."""
    if a == b:
        return True
    prog = system.base_program("max")
    prog.set_objective({"eps": 1.0})
    coeffs = _diff(system.choquet_exprs[b], system.choquet_exprs[a])
    coeffs["eps"] = coeffs.get("eps", 0.0) - 1.0
    prog.add_constraint(coeffs, ">=", 0.0, label="challenge")
    sol = _solve(prog)
    if sol.status != lps.OPTIMAL:
        return True
    return sol.objective_value <= EPS_TOL


def possible(system: ConstraintSystem, a, b) -> bool:
    """True when at least one compatible capacity scores a >= b."""
    if a == b:
        return True
    prog = system.base_program("max")
    prog.set_objective({"eps": 1.0})
    coeffs = _diff(system.choquet_exprs[a], system.choquet_exprs[b])
    prog.add_constraint(coeffs, ">=", 0.0, label="challenge")
    sol = _solve(prog)
    if sol.status != lps.OPTIMAL:
        return False
    return sol.objective_value > EPS_TOL


@dataclass(frozen=True)
class RelationMatrices:
    """Necessary and possible weak preference over all ordered pairs."""

    alternatives: tuple
    necessary: tuple  # tuple of tuples of bool, row a, column b
    possible: tuple

    def is_necessary(self, a, b) -> bool:
        i = self.alternatives.index(a)
        j = self.alternatives.index(b)
        return self.necessary[i][j]

    def is_possible(self, a, b) -> bool:
        i = self.alternatives.index(a)
        j = self.alternatives.index(b)
        return self.possible[i][j]

    def strictly_necessary_pairs(self) -> list:
        """Ordered pairs (a, b) with N(a,b) and not N(b,a)."""
        out = []
        for i, a in enumerate(self.alternatives):
            for j, b in enumerate(self.alternatives):
                if i != j and self.necessary[i][j] and not self.necessary[j][i]:
                    out.append((a, b))
        return out

    def incomparable_pairs(self) -> list:
        """Unordered pairs neither necessarily ordered one way nor the other."""
        out = []
        n = len(self.alternatives)
        for i in range(n):
            for j in range(i + 1, n):
                if not self.necessary[i][j] and not self.necessary[j][i]:
                    out.append((self.alternatives[i], self.alternatives[j]))
        return out


def _relation_cell(system, a, b):
    return necessary(system, a, b), possible(system, a, b)


def relations(system: ConstraintSystem, jobs: int = 1) -> RelationMatrices:
    """Necessary and possible matrices over all ordered pairs.

    ``jobs`` > 1 fans the pairwise programs out over processes; results
    are identical either way, this is purely a wall-clock knob.
    """
    alts = system.alternatives
    n = len(alts)
    pairs = [(a, b) for a in alts for b in alts if a != b]
    if jobs > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            cells = list(pool.map(_relation_cell, [system] * len(pairs),
                                  [p[0] for p in pairs],
                                  [p[1] for p in pairs],
                                  chunksize=max(1, len(pairs) // (jobs * 4))))
    else:
        cells = [_relation_cell(system, a, b) for a, b in pairs]
    nec = [[True] * n for _ in range(n)]
    pos = [[True] * n for _ in range(n)]
    for (a, b), (is_nec, is_pos) in zip(pairs, cells):
        i, j = alts.index(a), alts.index(b)
        nec[i][j] = is_nec
        pos[i][j] = is_pos
    return RelationMatrices(
        alts,
        tuple(tuple(row) for row in nec),
        tuple(tuple(row) for row in pos),
    )


def most_representative(system: ConstraintSystem, rel: RelationMatrices):
    """Single capacity summarizing all compatible ones.

    Stage one maximizes the common margin on every strictly necessary
    pair; stage two keeps that margin and minimizes the largest score gap
    over pairs the compatible set leaves unresolved.  Returns
    ``(capacity, eps_star, delta)``.
    """
    strict_pairs = rel.strictly_necessary_pairs()
    prog = system.base_program("max")
    prog.set_objective({"eps": 1.0})
    for a, b in strict_pairs:
        coeffs = _diff(system.choquet_exprs[a], system.choquet_exprs[b])
        coeffs["eps"] = coeffs.get("eps", 0.0) - 1.0
        prog.add_constraint(coeffs, ">=", 0.0, label=f"gap[{a}>{b}]")
    sol = _solve(prog)
    if sol.status != lps.OPTIMAL or sol.objective_value <= EPS_TOL:
        raise IncompatibleError(
            "no capacity is compatible with the statement set"
        )
    eps_star = sol.objective_value

    incomparable = rel.incomparable_pairs()
    prog2 = system.base_program("min")
    prog2.add_variable("delta")
    prog2.set_objective({"delta": 1.0})
    prog2.add_constraint({"eps": 1.0}, "==", eps_star, label="eps_fixed")
    for a, b in strict_pairs:
        coeffs = _diff(system.choquet_exprs[a], system.choquet_exprs[b])
        coeffs["eps"] = coeffs.get("eps", 0.0) - 1.0
        prog2.add_constraint(coeffs, ">=", 0.0, label=f"gap[{a}>{b}]")
    for a, b in incomparable:
        coeffs = _diff(system.choquet_exprs[a], system.choquet_exprs[b])
        up = dict(coeffs)
        up["delta"] = up.get("delta", 0.0) - 1.0
        prog2.add_constraint(up, "<=", 0.0, label=f"spread_hi[{a}~{b}]")
        lo = dict(coeffs)
        lo["delta"] = lo.get("delta", 0.0) + 1.0
        prog2.add_constraint(lo, ">=", 0.0, label=f"spread_lo[{a}~{b}]")
    sol2 = _solve(prog2)
    if sol2.status != lps.OPTIMAL:
        raise IncompatibleError(
            "margin from stage one cannot be kept while bounding spreads"
        )
    capacity = system.capacity_from(sol2.values)
    _recheck(system, capacity, eps_star)
    return capacity, eps_star, sol2.objective_value


_RECHECK_TOL = 1e-6


def _recheck(system: ConstraintSystem, capacity, eps):
    """Confirm the capacity honors every statement, without the solver.

    Semantic evaluation straight from Choquet values, Shapley values and
    pair masses; guards against simplex drift ever leaking out.
    """
    problems = [str(v) for v in validate(capacity)]
    crits = system.criteria
    value = {}
    for a in system.alternatives:
        row = system.table.row(a)
        value[a] = choquet_moebius([row[c] for c in crits], capacity)
    phi = shapley(capacity)

    def spread(kind, args):
        if kind in ("weak_pref", "strict_pref", "indifference"):
            return value[args[0]] - value[args[1]]
        if kind in ("intensity_strict", "intensity_indiff"):
            return (value[args[0]] - value[args[1]]
                    - value[args[2]] + value[args[3]])
        if kind in ("importance_strict", "importance_indiff"):
            return phi[crits.index(args[0])] - phi[crits.index(args[1])]
        return capacity.pair(crits.index(args[0]), crits.index(args[1]))

    for st in system.statements:
        gap = spread(st.kind, st.args)
        if st.kind in ("strict_pref", "intensity_strict", "importance_strict",
                       "interaction_positive"):
            ok = gap >= eps - _RECHECK_TOL
        elif st.kind == "interaction_negative":
            ok = gap <= -eps + _RECHECK_TOL
        elif st.kind == "weak_pref":
            ok = gap >= -_RECHECK_TOL
        else:
            ok = abs(gap) <= _RECHECK_TOL
        if not ok:
            problems.append(f"{st.describe()} off by {gap - eps:+.2e}")
    if problems:
        raise RuntimeError(
            "representative capacity failed the independent recheck: "
            + "; ".join(problems)
        )


@dataclass(frozen=True)
class RankEntry:
    alternative: str
    value: float
    rank: int


def rank(capacity, table: NormalizedTable) -> list:
    """Choquet scores ranked best first; ties share a dense rank."""
    order = list(table.criteria)
    scored = []
    for a in table.alternatives:
        row = table.row(a)
        x = [row[c] for c in order]
        scored.append((a, choquet_moebius(x, capacity)))
    scored.sort(key=lambda t: (-t[1], t[0]))
    entries = []
    current_rank = 0
    prev_value = None
    for a, v in scored:
        if prev_value is None or prev_value - v > EPS_TOL:
            current_rank += 1
            prev_value = v
        entries.append(RankEntry(a, v, current_rank))
    return entries


def diagnose(statements, table: NormalizedTable) -> list:
    """Irreducible incompatible subset of the statements (deletion filter).

    Walks the statements in order, dropping any whose removal leaves the
    rest incompatible; what survives is incompatible but loses the
    property when any single statement is removed.  Raises when the full
    set is already compatible.
    """
    statements = list(statements)
    _, compatible = feasibility(compile_statements(statements, table))
    if compatible:
        raise IncompatibleError(
            "statement set is compatible; nothing to diagnose"
        )
    kept = list(statements)
    i = 0
    while i < len(kept):
        trial = kept[:i] + kept[i + 1:]
        _, compatible = feasibility(compile_statements(trial, table))
        if not compatible:
            kept = trial
        else:
            i += 1
    return kept


@dataclass(frozen=True)
class SolveOutcome:
    """Everything one robustness pass produces."""

    epsilon_star: float  # None when even weak satisfaction fails
    has_compatible_model: bool
    relations: RelationMatrices = None
    capacity: object = None
    delta: float = None
    ranking: tuple = ()


def solve_system(system: ConstraintSystem, jobs: int = 1) -> SolveOutcome:
    """Feasibility, relations, representative capacity and ranking in one go."""
    eps_star, compatible = feasibility(system)
    if not compatible:
        return SolveOutcome(eps_star, False)
    rel = relations(system, jobs=jobs)
    capacity, eps_star, delta = most_representative(system, rel)
    ranking = tuple(rank(capacity, system.table))
    return SolveOutcome(eps_star, True, rel, capacity, delta, ranking)
