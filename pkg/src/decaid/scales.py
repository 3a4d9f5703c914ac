"""Commensurable value scales from reference levels.

A criterion gets a handful of reference levels, the levels get pairwise
compared, the resulting priorities are rescaled to [0, 1] by min-max, and
every rating in between is valued by linear interpolation.  This keeps the
comparison effort small while producing scales that can be aggregated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .ahp import PriorityVector

MAXIMIZE = "maximize"
MINIMIZE = "minimize"


class ScaleError(ValueError):
    """Malformed criterion, reference set or rating."""


@dataclass(frozen=True)
class CriterionSpec:
    """Identity and measurement scale of one evaluation criterion.

    ``numeric`` flags criteria measured on a physical scale (cost, time)
    rather than a bounded judgment score; those are excluded from scoring
    budgets that count only judgment scales.
    """

    id: str
    name: str
    direction: str
    scale_min: float
    scale_max: float
    numeric: bool = False

    def __post_init__(self):
        if not self.id:
            raise ScaleError("criterion id must be nonempty")
        if self.direction not in (MAXIMIZE, MINIMIZE):
            raise ScaleError(
                f"{self.id}: direction must be {MAXIMIZE!r} or {MINIMIZE!r}"
            )
        if not self.scale_min < self.scale_max:
            raise ScaleError(f"{self.id}: scale_min must be below scale_max")


@dataclass(frozen=True)
class ReferenceLevels:
    """Strictly increasing reference levels for one criterion."""

    criterion: str
    levels: tuple

    def __post_init__(self):
        if len(self.levels) < 2:
            raise ScaleError(f"{self.criterion}: need at least two reference levels")
        for lo, hi in zip(self.levels, self.levels[1:]):
            if not lo < hi:
                raise ScaleError(
                    f"{self.criterion}: reference levels must strictly increase"
                )

    def check_bounds(self, spec: CriterionSpec):
        if self.levels[0] < spec.scale_min or self.levels[-1] > spec.scale_max:
            raise ScaleError(
                f"{self.criterion}: reference levels leave the scale "
                f"[{spec.scale_min}, {spec.scale_max}]"
            )


@dataclass(frozen=True)
class NormalizedScale:
    """Piecewise-linear value function through (level, value) anchor points.

    Values span exactly [0, 1]: the worst anchor sits at 0 and the best at
    1.  Between anchors the scale interpolates; outside them it refuses to
    extrapolate.
    """

    criterion: str
    levels: tuple
    values: tuple

    def __post_init__(self):
        if len(self.levels) != len(self.values):
            raise ScaleError(f"{self.criterion}: one value per level required")
        if len(self.levels) < 2:
            raise ScaleError(f"{self.criterion}: need at least two anchor points")
        for lo, hi in zip(self.levels, self.levels[1:]):
            if not lo < hi:
                raise ScaleError(f"{self.criterion}: levels must strictly increase")
        if abs(min(self.values)) > 1e-9 or abs(max(self.values) - 1.0) > 1e-9:
            raise ScaleError(
                f"{self.criterion}: anchor values must span exactly [0, 1]"
            )


def normalize_priorities(priorities: PriorityVector,
                         criterion: str = "") -> NormalizedScale:
    """Min-max rescale of level priorities into a [0, 1] scale.

    The priority vector's items are the reference levels themselves (they
    must be numeric).  The least attractive level maps to 0, the most
    attractive to 1.  All-equal priorities leave min-max undefined.
    """
    try:
        levels = tuple(float(it) for it in priorities.items)
    except (TypeError, ValueError):
        raise ScaleError(
            f"{criterion or 'scale'}: compared items must be numeric levels"
        ) from None
    lo = min(priorities.weights)
    hi = max(priorities.weights)
    if hi - lo <= 1e-12:
        raise ScaleError(
            f"{criterion or 'scale'}: all priorities equal, min-max undefined"
        )
    pairs = sorted(zip(levels, priorities.weights))
    ordered_levels = tuple(l for l, _ in pairs)
    values = tuple((w - lo) / (hi - lo) for _, w in pairs)
    return NormalizedScale(criterion, ordered_levels, values)


def interpolate(scale: NormalizedScale, r: float) -> float:
    """Value of rating ``r`` on the piecewise-linear scale.

    r must lie within [first level, last level]; anchor hits return the
    anchor value exactly.
    """
    levels, values = scale.levels, scale.values
    if r < levels[0] or r > levels[-1]:
        raise ScaleError(
            f"{scale.criterion}: rating {r} outside anchored range "
            f"[{levels[0]}, {levels[-1]}]"
        )
    for s in range(len(levels) - 1):
        if r <= levels[s + 1]:
            if r == levels[s]:
                return values[s]
            if r == levels[s + 1]:
                return values[s + 1]
            span = levels[s + 1] - levels[s]
            return values[s] + (values[s + 1] - values[s]) / span * (r - levels[s])
    return values[-1]


def monotonicity_check(scale: NormalizedScale, direction: str) -> list:
    """Warnings for anchor values that move against the criterion direction.

    A maximize criterion should value higher levels at least as much; a
    minimize criterion the opposite.  Violations are reported, not fatal:
    judgments occasionally encode genuine non-monotone worth.
    """
    warnings = []
    for s in range(len(scale.levels) - 1):
        lo_v, hi_v = scale.values[s], scale.values[s + 1]
        if direction == MAXIMIZE and hi_v < lo_v - 1e-12:
            warnings.append(
                f"{scale.criterion}: value drops from {lo_v:.4f} to {hi_v:.4f} "
                f"between levels {scale.levels[s]:g} and {scale.levels[s + 1]:g} "
                f"despite maximize direction"
            )
        if direction == MINIMIZE and hi_v > lo_v + 1e-12:
            warnings.append(
                f"{scale.criterion}: value rises from {lo_v:.4f} to {hi_v:.4f} "
                f"between levels {scale.levels[s]:g} and {scale.levels[s + 1]:g} "
                f"despite minimize direction"
            )
    return warnings


def _lookup(seq, item, what):
    try:
        return seq.index(item)
    except ValueError:
        raise ScaleError(f"unknown {what}: {item}") from None


@dataclass(frozen=True)
class RatingTable:
    """Raw performance ratings, alternatives by criteria."""

    alternatives: tuple
    criteria: tuple
    rows: tuple  # one tuple of floats per alternative, criterion order

    def __post_init__(self):
        if len(set(self.alternatives)) != len(self.alternatives):
            raise ScaleError("alternative ids must be distinct")
        if len(set(self.criteria)) != len(self.criteria):
            raise ScaleError("criterion ids must be distinct")
        if len(self.rows) != len(self.alternatives):
            raise ScaleError("one row per alternative required")
        for row in self.rows:
            if len(row) != len(self.criteria):
                raise ScaleError("one rating per criterion required")

    def rating(self, alternative, criterion) -> float:
        a = _lookup(self.alternatives, alternative, "alternative")
        c = _lookup(self.criteria, criterion, "criterion")
        return self.rows[a][c]

    def row(self, alternative) -> dict:
        a = _lookup(self.alternatives, alternative, "alternative")
        return dict(zip(self.criteria, self.rows[a]))


@dataclass(frozen=True)
class NormalizedTable:
    """Commensurable [0, 1] values, alternatives by criteria."""

    alternatives: tuple
    criteria: tuple
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != len(self.alternatives):
            raise ScaleError("one row per alternative required")
        for a, row in zip(self.alternatives, self.rows):
            if len(row) != len(self.criteria):
                raise ScaleError("one value per criterion required")
            for c, v in zip(self.criteria, row):
                if v < -1e-9 or v > 1 + 1e-9:
                    raise ScaleError(f"value for ({a}, {c}) outside [0, 1]: {v}")

    def value(self, alternative, criterion) -> float:
        a = _lookup(self.alternatives, alternative, "alternative")
        c = _lookup(self.criteria, criterion, "criterion")
        return self.rows[a][c]

    def row(self, alternative) -> dict:
        a = _lookup(self.alternatives, alternative, "alternative")
        return dict(zip(self.criteria, self.rows[a]))


def normalize_table(ratings: RatingTable,
                    scales: Mapping[str, NormalizedScale]) -> NormalizedTable:
    """Apply each criterion's scale to its rating column."""
    for c in ratings.criteria:
        if c not in scales:
            raise ScaleError(f"no normalized scale for criterion {c}")
    rows = []
    for a, row in zip(ratings.alternatives, ratings.rows):
        out = []
        for c, r in zip(ratings.criteria, row):
            try:
                out.append(interpolate(scales[c], r))
            except ScaleError as exc:
                raise ScaleError(f"alternative {a}: {exc}") from None
        rows.append(tuple(out))
    return NormalizedTable(ratings.alternatives, ratings.criteria, tuple(rows))


def dominates(table, a, b, directions: Mapping[str, str] = None) -> bool:
    """True when ``a`` beats ``b``: at least as good everywhere, strictly
    better somewhere.

    On a NormalizedTable all values already point the same way and
    ``directions`` is ignored.  On a raw RatingTable a directions mapping
    (criterion -> maximize/minimize) says which way each column points.
    """
    ra = table.row(a)
    rb = table.row(b)
    if isinstance(table, NormalizedTable):
        directions = {c: MAXIMIZE for c in table.criteria}
    elif directions is None:
        raise ScaleError("raw ratings need a directions mapping")
    strict = False
    for c in table.criteria:
        if directions.get(c, MAXIMIZE) == MINIMIZE:
            va, vb = -ra[c], -rb[c]
        else:
            va, vb = ra[c], rb[c]
        if va < vb:
            return False
        if va > vb:
            strict = True
    return strict


def mse(estimated: Mapping, actual: Mapping) -> float:
    """Mean squared error between two score mappings over the same keys."""
    if set(estimated) != set(actual):
        raise ScaleError("score mappings must cover the same alternatives")
    if not estimated:
        raise ScaleError("cannot average over zero alternatives")
    return sum((actual[k] - estimated[k]) ** 2 for k in estimated) / len(estimated)


def comparison_budget(n_judgment_criteria: int, n_alternatives: int,
                      ref_counts: Sequence[int]) -> dict:
    """Pairwise comparison counts: full method versus reference levels.

    The full method compares every pair of alternatives on each
    judgment-scale criterion; the reference-level route only compares each
    criterion's levels among themselves.  ``ref_counts`` covers all scaled
    criteria and may be longer than ``n_judgment_criteria`` when some
    criteria carry pre-existing numeric measurements.
    """
    if n_judgment_criteria < 0 or n_alternatives < 0:
        raise ScaleError("counts must be nonnegative")
    if any(t < 2 for t in ref_counts):
        raise ScaleError("every criterion needs at least two reference levels")
    full = n_judgment_criteria * math.comb(n_alternatives, 2)
    parsimonious = sum(math.comb(t, 2) for t in ref_counts)
    return {"full_ahp": full, "parsimonious": parsimonious}
