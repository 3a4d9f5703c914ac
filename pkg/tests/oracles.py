"""Independent reference computations the test suite checks the engine against.

Everything here is deliberately naive: exact rational arithmetic where the
engine uses floats, and brute-force enumeration where the engine solves
linear programs.  Slow but unarguable.
"""

from fractions import Fraction

import numpy as np


def interpolate_exact(levels, values, r):
    """Piecewise-linear interpolation with Fractions, no rounding at all."""
    levels = [Fraction(l) for l in levels]
    values = [Fraction(v) for v in values]
    r = Fraction(r)
    if r < levels[0] or r > levels[-1]:
        raise ValueError(f"{r} outside [{levels[0]}, {levels[-1]}]")
    for (l0, v0), (l1, v1) in zip(zip(levels, values), zip(levels[1:], values[1:])):
        if l0 <= r <= l1:
            if r == l0:
                return v0
            return v0 + (v1 - v0) * (r - l0) / (l1 - l0)
    return values[-1]


def normalized_table_exact(ratings, references, reference_values, criteria):
    """Rational recomputation of the whole normalized evaluation table."""
    table = {}
    for alt, row in ratings.items():
        table[alt] = {}
        for cid, rating in zip(criteria, row):
            table[alt][cid] = interpolate_exact(
                references[cid], [Fraction(str(v)) for v in reference_values[cid]],
                Fraction(str(rating)),
            )
    return table


# --- brute-force 2-additive capacity grid -------------------------------------

def grid_capacities(n, step_units=20):
    """Every 2-additive Moebius capacity on the 1/step_units grid.

    Returns (singletons, pairs) float arrays, one row per capacity; pair
    columns follow itertools.combinations order.  Feasibility screened
    with the exact binding-coalition rule: m_i plus all negative pair
    masses touching i stays nonnegative.
    """
    from itertools import combinations

    pair_idx = list(combinations(range(n), 2))
    if n == 2:
        rows_s, rows_p = [], []
        for a1 in range(step_units + 1):
            for a2 in range(step_units + 1):
                b = step_units - a1 - a2
                if b < -step_units or b > step_units:
                    continue
                if a1 + min(b, 0) < 0 or a2 + min(b, 0) < 0:
                    continue
                rows_s.append((a1, a2))
                rows_p.append((b,))
        s = np.array(rows_s, dtype=float) / step_units
        p = np.array(rows_p, dtype=float) / step_units
        return s, p
    if n != 3:
        raise ValueError("grid oracle covers n = 2 or 3 only")
    b12 = np.arange(-step_units, step_units + 1)
    b13 = np.arange(-step_units, step_units + 1)
    g12, g13 = np.meshgrid(b12, b13, indexing="ij")
    g12 = g12.ravel()
    g13 = g13.ravel()
    rows_s, rows_p = [], []
    for a1 in range(step_units + 1):
        for a2 in range(step_units + 1):
            for a3 in range(step_units + 1):
                rest = step_units - a1 - a2 - a3
                b23 = rest - g12 - g13
                ok = np.abs(b23) <= step_units
                ok &= a1 + np.minimum(g12, 0) + np.minimum(g13, 0) >= 0
                ok &= a2 + np.minimum(g12, 0) + np.minimum(b23, 0) >= 0
                ok &= a3 + np.minimum(g13, 0) + np.minimum(b23, 0) >= 0
                if not ok.any():
                    continue
                k = int(ok.sum())
                rows_s.append(np.tile((a1, a2, a3), (k, 1)))
                rows_p.append(np.stack(
                    [g12[ok], g13[ok], b23[ok]], axis=1))
    s = np.concatenate(rows_s).astype(float) / step_units
    p = np.concatenate(rows_p).astype(float) / step_units
    return s, p


def grid_choquet(singletons, pairs, x):
    """Vectorized 2-additive Choquet value of one point for every capacity."""
    from itertools import combinations

    n = singletons.shape[1]
    x = np.asarray(x, dtype=float)
    val = singletons @ x
    for col, (i, j) in enumerate(combinations(range(n), 2)):
        val = val + pairs[:, col] * min(x[i], x[j])
    return val


def grid_margins(table, statements, singletons, pairs):
    """Statement semantics evaluated at every grid capacity.

    ``statements`` is a list of (kind, args) tuples with the same meaning
    as the engine's preference statements.  Returns (hard, eps, scores):
    ``hard`` marks capacities satisfying the margin-free rows (weak
    preference, the indifference kinds), ``eps`` is the largest shared
    margin each capacity leaves for the margin-carrying rows (capped at
    one, like the engine's eps variable), ``scores`` maps alternative id
    to its value under every capacity.
    """
    from itertools import combinations

    crits = list(table.criteria)
    n = len(crits)
    count = singletons.shape[0]
    scores = {}
    for a in table.alternatives:
        row = table.row(a)
        scores[a] = grid_choquet(singletons, pairs, [row[c] for c in crits])
    phi = singletons.copy()
    pair_cols = list(combinations(range(n), 2))
    for col, (i, j) in enumerate(pair_cols):
        phi[:, i] += 0.5 * pairs[:, col]
        phi[:, j] += 0.5 * pairs[:, col]

    hard = np.ones(count, dtype=bool)
    eps = np.full(count, 1.0)
    for kind, args in statements:
        if kind in ("weak_pref", "strict_pref", "indifference"):
            d = scores[args[0]] - scores[args[1]]
            if kind == "weak_pref":
                hard &= d >= -1e-12
            elif kind == "strict_pref":
                eps = np.minimum(eps, d)
            else:
                hard &= np.abs(d) <= 1e-12
        elif kind in ("intensity_strict", "intensity_indiff"):
            a, b, c, d_ = args
            gap = (scores[a] - scores[b]) - (scores[c] - scores[d_])
            if kind == "intensity_strict":
                eps = np.minimum(eps, gap)
            else:
                hard &= np.abs(gap) <= 1e-12
        elif kind in ("importance_strict", "importance_indiff"):
            d = phi[:, crits.index(args[0])] - phi[:, crits.index(args[1])]
            if kind == "importance_strict":
                eps = np.minimum(eps, d)
            else:
                hard &= np.abs(d) <= 1e-12
        elif kind in ("interaction_positive", "interaction_negative"):
            i, j = sorted((crits.index(args[0]), crits.index(args[1])))
            mass = pairs[:, pair_cols.index((i, j))]
            eps = np.minimum(eps, mass if kind == "interaction_positive"
                             else -mass)
        else:
            raise ValueError(f"unknown statement kind {kind!r}")
    return hard, eps, scores


def capacity_value_exact(masses, coalition, n):
    """mu(S) from Moebius masses, summing subsets of S exactly.

    ``coalition`` may be a bitmask or an iterable of criterion indices.
    """
    if not isinstance(coalition, int):
        mask = 0
        for i in coalition:
            mask |= 1 << i
        coalition = mask
    total = Fraction(0)
    for mask, mass in masses.items():
        if mask & ~coalition == 0:
            total += Fraction(mass)
    return total
