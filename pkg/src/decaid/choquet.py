"""Capacities, Moebius transforms and the Choquet integral.

Criteria are indexed 0..n-1 and coalitions are bitmasks, so a capacity is
just a dict from mask to float.  The 2-additive case stores only singleton
and pair masses, which is what the preference-learning layer solves for.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence


class CapacityError(ValueError):
    """Structurally malformed capacity or evaluation vector."""


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        if i < 0:
            raise CapacityError(f"criterion index {i} is negative")
        bit = 1 << i
        if m & bit:
            raise CapacityError(f"criterion index {i} repeated")
        m |= bit
    return m


def members(mask: int) -> tuple:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def subsets_of(mask: int):
    """All submasks of ``mask``, including 0 and mask itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class MoebiusCapacity:
    """Capacity in Moebius representation.

    ``masses`` maps a coalition bitmask to its Moebius mass; absent masks
    carry zero.  ``two_additive`` restricts masses to singletons and pairs.
    Construction only checks structure; numeric soundness (normalization,
    monotonicity) is the job of ``validate``.
    """

    n: int
    masses: dict = field(default_factory=dict)
    two_additive: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise CapacityError("need at least one criterion")
        full = (1 << self.n) - 1
        for mask, mass in self.masses.items():
            if not isinstance(mask, int) or mask <= 0 or mask & ~full:
                raise CapacityError(f"bad coalition mask {mask!r} for n={self.n}")
            if self.two_additive and bin(mask).count("1") > 2:
                raise CapacityError(
                    f"mask {mask:#b} has more than two members in a "
                    f"2-additive capacity"
                )
            float(mass)

    def mass(self, mask: int) -> float:
        return float(self.masses.get(mask, 0.0))

    def singleton(self, i: int) -> float:
        return self.mass(1 << i)

    def pair(self, i: int, j: int) -> float:
        if i == j:
            raise CapacityError("pair mass needs two distinct criteria")
        return self.mass((1 << i) | (1 << j))


def two_additive(singletons: Sequence[float], pairs: Mapping = None) -> MoebiusCapacity:
    """Build a 2-additive capacity from singleton masses and pair masses.

    ``pairs`` maps (i, j) index tuples (order irrelevant) to masses.
    """
    n = len(singletons)
    masses = {}
    for i, m in enumerate(singletons):
        if m != 0.0:
            masses[1 << i] = float(m)
    seen = set()
    for (i, j), m in (pairs or {}).items():
        if i == j:
            raise CapacityError("pair mass needs two distinct criteria")
        key = (1 << i) | (1 << j)
        if key in seen:
            raise CapacityError(f"pair ({i}, {j}) given twice")
        seen.add(key)
        if m != 0.0:
            masses[key] = float(m)
    return MoebiusCapacity(n, masses, two_additive=True)


def moebius_to_capacity(m: MoebiusCapacity, coalition) -> float:
    """Capacity value mu(S) = sum of masses of all subsets of S."""
    mask = coalition if isinstance(coalition, int) else mask_of(coalition)
    full = (1 << m.n) - 1
    if mask & ~full:
        raise CapacityError(f"coalition {mask:#b} outside the criteria set")
    return sum(m.masses.get(sub, 0.0) for sub in subsets_of(mask))


def capacity_to_moebius(mu: Mapping[int, float], n: int) -> MoebiusCapacity:
    """Invert a set function into Moebius masses.

    ``mu`` maps every nonempty coalition mask to its capacity value;
    missing masks are treated as an error since the inversion needs the
    whole lattice.  mu(empty) is taken as 0.
    """
    full = (1 << n) - 1
    masses = {}
    for mask in range(1, full + 1):
        if mask not in mu:
            raise CapacityError(f"capacity misses coalition {mask:#b}")
        total = 0.0
        for sub in subsets_of(mask):
            if sub == 0:
                continue
            sign = -1 if (bin(mask ^ sub).count("1") % 2) else 1
            total += sign * float(mu[sub])
        # inversion dust below 1e-12 is dropped so the 2-additive flag
        # reflects structure, not rounding noise
        if abs(total) > 1e-12:
            masses[mask] = total
    is_2add = all(bin(k).count("1") <= 2 for k in masses)
    return MoebiusCapacity(n, masses, two_additive=is_2add)


def choquet(x: Sequence[float], mu: Mapping[int, float]) -> float:
    """Choquet integral from the capacity itself (sorted-differences form).

    C(x) = sum_i (x_(i) - x_(i-1)) * mu({j : x_j >= x_(i)}) with x_(0)=0.
    """
    n = len(x)
    order = sorted(range(n), key=lambda i: x[i])
    total = 0.0
    prev = 0.0
    for pos, i in enumerate(order):
        xi = float(x[i])
        if xi > prev:
            tail = mask_of(order[pos:])
            total += (xi - prev) * float(mu.get(tail, 0.0))
        prev = xi
    return total


def choquet_moebius(x: Sequence[float], m: MoebiusCapacity) -> float:
    """Choquet integral from Moebius masses: sum m(T) * min_{i in T} x_i."""
    if len(x) != m.n:
        raise CapacityError(f"expected {m.n} values, got {len(x)}")
    total = 0.0
    for mask, mass in m.masses.items():
        lo = min(float(x[i]) for i in members(mask))
        total += float(mass) * lo
    return total


def choquet_two_additive(x: Sequence[float], m: MoebiusCapacity) -> float:
    """2-additive form: sum_i m_i x_i + sum_{i<j} m_ij min(x_i, x_j)."""
    if not m.two_additive:
        raise CapacityError("capacity is not 2-additive")
    if len(x) != m.n:
        raise CapacityError(f"expected {m.n} values, got {len(x)}")
    total = 0.0
    for i in range(m.n):
        total += m.singleton(i) * float(x[i])
    for mask, mass in m.masses.items():
        mem = members(mask)
        if len(mem) == 2:
            total += float(mass) * min(float(x[mem[0]]), float(x[mem[1]]))
    return total


@dataclass(frozen=True)
class Violation:
    """One broken capacity constraint, pinned to its instance."""

    constraint: str  # "normalization" | "nonnegativity" | "monotonicity"
    criterion: int = None
    coalition: tuple = ()
    amount: float = 0.0

    def __str__(self):
        if self.constraint == "normalization":
            return f"masses sum to {self.amount:.6g}, expected 1"
        if self.constraint == "nonnegativity":
            return f"singleton mass m({self.criterion}) = {self.amount:.6g} < 0"
        return (
            f"m({self.criterion}) + pair masses towards {self.coalition} "
            f"= {self.amount:.6g} < 0"
        )


def validate(m: MoebiusCapacity, tol: float = 1e-9) -> list:
    """All violated 2-additive capacity conditions, empty when valid.

    Checks normalization (masses sum to 1), nonnegative singleton masses,
    and monotonicity: m_i plus the pair masses linking i into any coalition
    of the remaining criteria stays nonnegative.  The monotonicity family
    is screened in its exact worst-case form: for each i, the binding
    coalition is the set of partners with negative pair mass, so only that
    single instance needs an explicit check per criterion; any reported
    violation names the witness coalition.
    """
    violations = []
    total = sum(float(v) for v in m.masses.values())
    if abs(total - 1.0) > tol:
        violations.append(Violation("normalization", amount=total))
    for i in range(m.n):
        mi = m.singleton(i)
        if mi < -tol:
            violations.append(Violation("nonnegativity", criterion=i, amount=mi))
    for i in range(m.n):
        worst = [
            j for j in range(m.n)
            if j != i and m.pair(i, j) < 0.0
        ]
        amount = m.singleton(i) + sum(m.pair(i, j) for j in worst)
        if amount < -tol:
            violations.append(
                Violation("monotonicity", criterion=i,
                          coalition=tuple(worst), amount=amount)
            )
    return violations


def shapley(m: MoebiusCapacity) -> list:
    """Shapley importance of each criterion: m_i + sum_j m_ij / 2."""
    if not m.two_additive:
        raise CapacityError("Shapley shortcut needs a 2-additive capacity")
    phi = [m.singleton(i) for i in range(m.n)]
    for mask, mass in m.masses.items():
        mem = members(mask)
        if len(mem) == 2:
            phi[mem[0]] += float(mass) / 2.0
            phi[mem[1]] += float(mass) / 2.0
    return phi


def interaction(m: MoebiusCapacity, i: int, j: int) -> float:
    """Interaction index of a pair; equals its Moebius mass when 2-additive."""
    if not m.two_additive:
        raise CapacityError("interaction shortcut needs a 2-additive capacity")
    return m.pair(i, j)


def capacity_table(m: MoebiusCapacity) -> dict:
    """Full set function mu on every nonempty coalition (small n only)."""
    if m.n > 20:
        raise CapacityError("refusing to enumerate 2^n coalitions for n > 20")
    full = (1 << m.n) - 1
    return {mask: moebius_to_capacity(m, mask) for mask in range(1, full + 1)}


def random_capacity(rng, n: int) -> MoebiusCapacity:
    """Random valid 2-additive capacity, for property testing.

    Draws raw singleton masses and pair masses, repairs monotonicity by
    shrinking negative pair masses against the involved singletons, then
    normalizes the total mass to one.
    """
    singles = rng.uniform(0.05, 1.0, size=n)
    pairs = {}
    for i, j in combinations(range(n), 2):
        if rng.uniform() < 0.7:
            lo = -min(singles[i], singles[j]) / max(n - 1, 1)
            pairs[(i, j)] = rng.uniform(lo, 1.0)
    total = float(singles.sum() + sum(pairs.values()))
    if total <= 1e-9:
        return two_additive([1.0 / n] * n, {})
    singles = [float(s) / total for s in singles]
    pairs = {k: float(v) / total for k, v in pairs.items()}
    return two_additive(singles, pairs)
