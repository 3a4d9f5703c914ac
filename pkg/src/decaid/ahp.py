"""Pairwise comparison matrices, priority derivation and consistency control.

Judgments live on the classic nine-point scale and are kept as exact
rationals, so reciprocity is never a floating point question.  Priorities
are derived with the principal eigenvector (power iteration) by default;
row geometric and arithmetic means are available as cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

# admissible judgment values: 1/9 ... 1/2, 1, 2 ... 9
SAATY_VALUES = tuple(Fraction(1, k) for k in range(9, 1, -1)) + tuple(
    Fraction(k) for k in range(1, 10)
)

# tabled mean consistency index of random matrices, by order
RANDOM_INDEX = {
    1: 0.0,
    2: 0.0,
    3: 0.58,
    4: 0.90,
    5: 1.12,
    6: 1.24,
    7: 1.32,
    8: 1.41,
    9: 1.45,
    10: 1.49,
}

CR_THRESHOLD = 0.10


class AhpError(ValueError):
    """Invalid judgment, malformed matrix or failed derivation."""


class ConvergenceError(AhpError):
    """Power iteration did not converge within the iteration budget."""


def saaty_judgment(value) -> Fraction:
    """Coerce ``value`` to an exact nine-point-scale judgment.

    Accepts Fraction, int, strings like ``"1/7"`` or ``"3"``, and floats
    (snapped when within 1e-9 of an admissible value).  Anything else
    raises AhpError.
    """
    if isinstance(value, Fraction):
        frac = value
    elif isinstance(value, int):
        frac = Fraction(value)
    elif isinstance(value, str):
        try:
            frac = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise AhpError(f"cannot read judgment {value!r}") from None
    elif isinstance(value, float):
        frac = Fraction(value).limit_denominator(9)
        if abs(float(frac) - value) > 1e-9:
            raise AhpError(f"{value!r} is not a nine-point scale judgment")
    else:
        raise AhpError(f"cannot read judgment {value!r}")
    if frac not in SAATY_VALUES:
        raise AhpError(
            f"{value!r} is outside the admissible set 1/9..1/2, 1, 2..9"
        )
    return frac


@dataclass(frozen=True)
class PairwiseMatrix:
    """Square positive reciprocal matrix over a tuple of compared items.

    Entries are exact rationals; ``entries[r][s]`` answers how strongly
    item ``r`` beats item ``s``.
    """

    items: tuple
    entries: tuple

    def __post_init__(self):
        n = len(self.items)
        if n < 2:
            raise AhpError("need at least two items to compare")
        if len(set(self.items)) != n:
            raise AhpError("compared items must be distinct")
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise AhpError("entry grid must be square over the items")
        for r in range(n):
            if self.entries[r][r] != 1:
                raise AhpError(f"diagonal entry ({r},{r}) must equal 1")
            for s in range(n):
                e = self.entries[r][s]
                if not isinstance(e, Fraction):
                    raise AhpError("entries must be exact rationals")
                if e <= 0:
                    raise AhpError(f"entry ({r},{s}) must be positive")
                if self.entries[r][s] * self.entries[s][r] != 1:
                    raise AhpError(f"reciprocity broken at ({r},{s})")

    @property
    def n(self) -> int:
        return len(self.items)

    def index(self, item) -> int:
        try:
            return self.items.index(item)
        except ValueError:
            raise AhpError(f"unknown item {item!r}") from None

    def entry(self, r_item, s_item) -> Fraction:
        return self.entries[self.index(r_item)][self.index(s_item)]

    def as_array(self) -> np.ndarray:
        return np.array([[float(e) for e in row] for row in self.entries])


def build_matrix(items: Sequence, judgments: Iterable) -> PairwiseMatrix:
    """Assemble a PairwiseMatrix from one judgment per unordered item pair.

    ``judgments`` yields ``(row_item, col_item, value)`` triples; the value
    states how strongly ``row_item`` beats ``col_item`` and must sit on the
    nine-point scale.  The mirror entry is filled with the exact reciprocal.
    """
    items = tuple(items)
    n = len(items)
    pos = {}
    for i, it in enumerate(items):
        if it in pos:
            raise AhpError(f"duplicate item {it!r}")
        pos[it] = i
    grid = [[None] * n for _ in range(n)]
    for i in range(n):
        grid[i][i] = Fraction(1)
    for r_item, s_item, value in judgments:
        if r_item not in pos or s_item not in pos:
            raise AhpError(f"judgment names unknown item: ({r_item!r}, {s_item!r})")
        r, s = pos[r_item], pos[s_item]
        if r == s:
            raise AhpError(f"self-comparison for {r_item!r}")
        if grid[r][s] is not None:
            raise AhpError(f"pair ({r_item!r}, {s_item!r}) judged twice")
        v = saaty_judgment(value)
        grid[r][s] = v
        grid[s][r] = 1 / v
    for r in range(n):
        for s in range(n):
            if grid[r][s] is None:
                raise AhpError(f"missing judgment for pair ({items[r]!r}, {items[s]!r})")
    return PairwiseMatrix(items, tuple(tuple(row) for row in grid))


def from_grid(items: Sequence, rows: Sequence[Sequence]) -> PairwiseMatrix:
    """Build a matrix from a full grid of values (exact rationals or ints).

    Unlike build_matrix this does not force entries onto the nine-point
    scale; reciprocity and positivity are still required.
    """
    entries = tuple(
        tuple(v if isinstance(v, Fraction) else Fraction(v) for v in row)
        for row in rows
    )
    return PairwiseMatrix(tuple(items), entries)


@dataclass(frozen=True)
class PriorityVector:
    """Nonnegative weights over items, normalized to sum one."""

    items: tuple
    weights: tuple
    method: str

    def __post_init__(self):
        if len(self.items) != len(self.weights):
            raise AhpError("one weight per item required")
        if any(w < -1e-12 for w in self.weights):
            raise AhpError("weights must be nonnegative")
        if abs(sum(self.weights) - 1.0) > 1e-9:
            raise AhpError("weights must sum to one")

    def as_dict(self) -> dict:
        return dict(zip(self.items, self.weights))

    def weight(self, item) -> float:
        return self.weights[self.items.index(item)]


def principal_eigen(matrix: PairwiseMatrix, tol: float = 1e-10,
                    max_iter: int = 10000):
    """Principal eigenvector and eigenvalue via power iteration.

    Starts from the uniform vector, renormalizes in L1 at each step and
    stops when the iterate moves less than ``tol`` in max norm.  Returns
    ``(PriorityVector, lambda_max)``.
    """
    a = matrix.as_array()
    n = matrix.n
    v = np.full(n, 1.0 / n)
    lam = float(n)
    for _ in range(max_iter):
        w = a @ v
        lam = float(w.sum())
        w = w / lam
        if np.max(np.abs(w - v)) < tol:
            v = w
            break
        v = w
    else:
        raise ConvergenceError(
            f"power iteration did not converge in {max_iter} iterations"
        )
    weights = tuple(float(x) for x in v / v.sum())
    return PriorityVector(matrix.items, weights, "eigenvector"), lam


def row_geometric_mean(matrix: PairwiseMatrix) -> PriorityVector:
    """Priorities as normalized geometric means of the matrix rows."""
    a = matrix.as_array()
    raw = np.exp(np.log(a).mean(axis=1))
    weights = raw / raw.sum()
    return PriorityVector(matrix.items, tuple(float(w) for w in weights),
                          "row-geometric-mean")


def row_arithmetic_mean(matrix: PairwiseMatrix) -> PriorityVector:
    """Priorities as normalized arithmetic means of the matrix rows."""
    a = matrix.as_array()
    raw = a.mean(axis=1)
    weights = raw / raw.sum()
    return PriorityVector(matrix.items, tuple(float(w) for w in weights),
                          "row-arithmetic-mean")


@dataclass(frozen=True)
class ConsistencyReport:
    n: int
    lambda_max: float
    consistency_index: float
    random_index: float
    consistency_ratio: float
    acceptable: bool


def consistency(matrix: PairwiseMatrix, ri_source=None,
                threshold: float = CR_THRESHOLD) -> ConsistencyReport:
    """Consistency index and ratio of a reciprocal matrix.

    ``ri_source`` may be None (tabled values), a mapping from order to
    random index, or a callable ``n -> ri``.  For n <= 2 the ratio is zero
    by convention.  A zero random index with a nonzero consistency index
    yields an infinite ratio.
    """
    n = matrix.n
    _, lam = principal_eigen(matrix)
    ci = (lam - n) / (n - 1) if n > 1 else 0.0
    if ci < 0 and ci > -1e-9:
        ci = 0.0  # lambda_max >= n up to float noise
    if ri_source is None:
        if n not in RANDOM_INDEX:
            raise AhpError(
                f"no tabled random index for n={n}; pass one explicitly"
            )
        ri = RANDOM_INDEX[n]
    elif callable(ri_source):
        ri = float(ri_source(n))
    elif isinstance(ri_source, Mapping):
        ri = float(ri_source[n])
    else:
        ri = float(ri_source)
    if n <= 2:
        cr = 0.0
    elif ri == 0.0:
        cr = 0.0 if abs(ci) <= 1e-12 else math.inf
    else:
        cr = ci / ri
    return ConsistencyReport(n, lam, ci, ri, cr, cr <= threshold)


def is_cardinally_consistent(matrix: PairwiseMatrix, tol: float = 1e-9) -> bool:
    """True when a_rs * a_sk == a_rk for every index triple, within tol."""
    a = matrix.as_array()
    n = matrix.n
    for r in range(n):
        for s in range(n):
            for k in range(n):
                if abs(a[r, s] * a[s, k] - a[r, k]) > tol:
                    return False
    return True


def inconsistent_triads(matrix: PairwiseMatrix, top: int = 3) -> list:
    """Index triples deviating most from cardinal consistency.

    For items r, s, t the judgment a_rt should equal a_rs * a_st; the
    deviation is measured on the log scale, so over- and understatements
    of equal ratio weigh the same.  Returns up to ``top`` pairs
    ``((r, s, t), deviation)``, worst first, skipping exact triples.
    Useful for pointing a reviser at the judgments to revisit.
    """
    if top < 0:
        raise AhpError("top must be nonnegative")
    a = matrix.as_array()
    found = []
    n = matrix.n
    for r in range(n):
        for s in range(r + 1, n):
            for t in range(s + 1, n):
                dev = abs(math.log(a[r, t]) - math.log(a[r, s])
                          - math.log(a[s, t]))
                if dev > 1e-12:
                    found.append(((r, s, t), dev))
    found.sort(key=lambda pair: (-pair[1], pair[0]))
    return found[:top]


def random_index(n: int, samples: int = 500, seed: int = 0) -> float:
    """Monte Carlo random index: mean consistency index of random matrices.

    Upper triangles are drawn uniformly from the admissible judgment set
    with a seeded generator, so results are reproducible.
    """
    if not 3 <= n <= 15:
        raise AhpError("random_index supports 3 <= n <= 15")
    if samples < 1:
        raise AhpError("need at least one sample")
    rng = np.random.default_rng(seed)
    values = np.array([float(v) for v in SAATY_VALUES])
    total = 0.0
    for _ in range(samples):
        a = np.ones((n, n))
        for r in range(n):
            for s in range(r + 1, n):
                v = values[rng.integers(0, len(values))]
                a[r, s] = v
                a[s, r] = 1.0 / v
        lam = _lambda_max(a)
        total += (lam - n) / (n - 1)
    return total / samples


def _lambda_max(a: np.ndarray, tol: float = 1e-10, max_iter: int = 10000) -> float:
    n = a.shape[0]
    v = np.full(n, 1.0 / n)
    lam = float(n)
    for _ in range(max_iter):
        w = a @ v
        lam = float(w.sum())
        w = w / lam
        if np.max(np.abs(w - v)) < tol:
            return lam
        v = w
    raise ConvergenceError(f"power iteration did not converge in {max_iter} iterations")


def classic_ahp_score(priorities: Mapping[str, PriorityVector],
                      criteria_weights: PriorityVector) -> dict:
    """Weighted-sum synthesis of local priorities (the classic full method).

    ``priorities`` maps criterion id to a priority vector over one shared
    alternative tuple; ``criteria_weights`` weighs the criteria.  Returns
    alternative -> global score (scores sum to one).
    """
    if set(priorities) != set(criteria_weights.items):
        raise AhpError("criteria weights must cover exactly the scored criteria")
    vectors = list(priorities.values())
    alts = vectors[0].items
    if any(pv.items != alts for pv in vectors):
        raise AhpError("all criteria must rank the same alternatives")
    scores = {a: 0.0 for a in alts}
    for crit, pv in priorities.items():
        w = criteria_weights.weight(crit)
        for a, p in zip(pv.items, pv.weights):
            scores[a] += w * p
    return scores
