"""Two-phase simplex: known optima, statuses, degeneracy, brute-force parity."""

from itertools import combinations

import numpy as np
import pytest

from decaid import lp


def program(sense="max"):
    return lp.LinearProgram(sense)


# --- builder validation -----------------------------------------------------

def test_builder_rejects_malformed_programs():
    with pytest.raises(lp.LpError):
        lp.LinearProgram("maximize")
    p = program()
    p.add_variable("x")
    with pytest.raises(lp.LpError):
        p.add_variable("x")
    with pytest.raises(lp.LpError):
        p.add_variable("")
    with pytest.raises(lp.LpError):
        p.add_variable("y", lower=2.0, upper=1.0)
    with pytest.raises(lp.LpError):
        p.set_objective({"ghost": 1.0})
    with pytest.raises(lp.LpError):
        p.add_constraint({"ghost": 1.0}, "<=", 1.0)
    with pytest.raises(lp.LpError):
        p.add_constraint({"x": 1.0}, "<", 1.0)
    p.add_constraint({"x": 1.0}, "<=", 1.0, label="cap")
    with pytest.raises(lp.LpError):
        p.add_constraint({"x": 1.0}, ">=", 0.0, label="cap")


# --- textbook optima -----------------------------------------------------------

def test_two_variable_maximum():
    p = program("max")
    p.add_variable("x")
    p.add_variable("y")
    p.set_objective({"x": 3.0, "y": 2.0})
    p.add_constraint({"x": 1.0, "y": 1.0}, "<=", 4.0, label="sum")
    p.add_constraint({"x": 1.0, "y": 3.0}, "<=", 6.0, label="mix")
    s = lp.solve(p)
    assert s.is_optimal
    assert s.objective_value == pytest.approx(12.0)
    assert s.values["x"] == pytest.approx(4.0)
    assert s.values["y"] == pytest.approx(0.0)
    assert "sum" in s.active_labels


def test_minimization_with_surplus_rows():
    p = program("min")
    p.add_variable("x")
    p.set_objective({"x": 2.0})
    p.add_constraint({"x": 1.0}, ">=", 3.0)
    s = lp.solve(p)
    assert s.is_optimal
    assert s.objective_value == pytest.approx(6.0)


def test_equality_constraints_via_phase_one():
    # balanced two-by-two transportation, heavily degenerate
    p = program("min")
    for name in ("x11", "x12", "x21", "x22"):
        p.add_variable(name)
    p.set_objective({"x11": 1.0, "x12": 2.0, "x21": 3.0, "x22": 1.0})
    p.add_constraint({"x11": 1.0, "x12": 1.0}, "==", 10.0, label="s1")
    p.add_constraint({"x21": 1.0, "x22": 1.0}, "==", 10.0, label="s2")
    p.add_constraint({"x11": 1.0, "x21": 1.0}, "==", 10.0, label="d1")
    p.add_constraint({"x12": 1.0, "x22": 1.0}, "==", 10.0, label="d2")
    s = lp.solve(p)
    assert s.is_optimal
    assert s.objective_value == pytest.approx(20.0)
    assert s.max_violation < 1e-7


def test_boxed_and_free_variables():
    p = program("max")
    p.add_variable("x", lower=0.0, upper=3.5)
    p.set_objective({"x": 1.0})
    assert lp.solve(p).objective_value == pytest.approx(3.5)

    p = program("min")
    p.add_variable("x", lower=None)  # free
    p.set_objective({"x": 1.0})
    p.add_constraint({"x": 1.0}, ">=", -2.5)
    s = lp.solve(p)
    assert s.objective_value == pytest.approx(-2.5)
    assert s.values["x"] == pytest.approx(-2.5)

    p = program("max")
    p.add_variable("x", lower=None, upper=2.0)  # capped above only
    p.set_objective({"x": 1.0})
    assert lp.solve(p).objective_value == pytest.approx(2.0)


def test_negative_rhs_rows_are_renormalized():
    # -x <= -2 means x >= 2
    p = program("min")
    p.add_variable("x")
    p.set_objective({"x": 1.0})
    p.add_constraint({"x": -1.0}, "<=", -2.0)
    assert lp.solve(p).objective_value == pytest.approx(2.0)


def test_empty_objective_reports_a_feasible_point():
    p = program("max")
    p.add_variable("x")
    p.add_constraint({"x": 1.0}, ">=", 1.0)
    p.add_constraint({"x": 1.0}, "<=", 5.0)
    s = lp.solve(p)
    assert s.is_optimal
    assert s.objective_value == pytest.approx(0.0)
    assert 1.0 - 1e-9 <= s.values["x"] <= 5.0 + 1e-9


# --- statuses --------------------------------------------------------------------

def test_infeasible_program_is_reported():
    p = program("max")
    p.add_variable("x")
    p.set_objective({"x": 1.0})
    p.add_constraint({"x": 1.0}, "<=", 1.0)
    p.add_constraint({"x": 1.0}, ">=", 2.0)
    s = lp.solve(p)
    assert s.status == lp.INFEASIBLE
    assert s.objective_value is None
    assert not s.is_optimal


def test_unbounded_program_is_reported():
    p = program("max")
    p.add_variable("x")
    p.set_objective({"x": 1.0})
    p.add_constraint({"x": 1.0}, ">=", 5.0)
    assert lp.solve(p).status == lp.UNBOUNDED


def test_pivot_budget_exhaustion_returns_stalled():
    p = program("max")
    p.add_variable("x")
    p.add_variable("y")
    p.set_objective({"x": 3.0, "y": 2.0})
    p.add_constraint({"x": 1.0, "y": 1.0}, "<=", 4.0)
    p.add_constraint({"x": 1.0, "y": 3.0}, "<=", 6.0)
    s = lp.solve(p, max_pivots=1)
    assert s.status == lp.STALLED
    assert s.objective_value is None


# --- degeneracy -------------------------------------------------------------------

def test_classic_cycling_instance_terminates():
    # cycles forever under naive most-negative pivoting without a
    # lexicographic guard; optimum is -0.05 at x = (0.04, 0, 1, 0)
    p = program("min")
    for name in ("x1", "x2", "x3", "x4"):
        p.add_variable(name)
    p.set_objective({"x1": -0.75, "x2": 150.0, "x3": -0.02, "x4": 6.0})
    p.add_constraint(
        {"x1": 0.25, "x2": -60.0, "x3": -0.04, "x4": 9.0}, "<=", 0.0)
    p.add_constraint(
        {"x1": 0.5, "x2": -90.0, "x3": -0.02, "x4": 3.0}, "<=", 0.0)
    p.add_constraint({"x3": 1.0}, "<=", 1.0)
    s = lp.solve(p)
    assert s.is_optimal
    assert s.objective_value == pytest.approx(-0.05)
    assert s.values["x1"] == pytest.approx(0.04)
    assert s.values["x3"] == pytest.approx(1.0)


def test_degenerate_plateaus_do_not_stall():
    # all-zero right-hand sides force long runs of zero-ratio pivots
    rng = np.random.default_rng(29)
    for trial in range(40):
        n, m = 4, 6
        p = program("max")
        for i in range(n):
            p.add_variable(f"x{i}", lower=0.0, upper=1.0)
        p.set_objective({f"x{i}": float(rng.normal()) for i in range(n)})
        for r in range(m):
            coeffs = {f"x{i}": float(rng.integers(-3, 4)) for i in range(n)}
            p.add_constraint(coeffs, ">=" if r % 2 else "<=", 0.0)
        s = lp.solve(p, max_pivots=2000)
        assert s.status in (lp.OPTIMAL, lp.INFEASIBLE), f"trial {trial}"
        if s.is_optimal:
            assert s.max_violation < 1e-7


def test_reruns_pivot_identically():
    p1 = program("max")
    p2 = program("max")
    for p in (p1, p2):
        for i in range(3):
            p.add_variable(f"x{i}")
        p.set_objective({"x0": 1.0, "x1": 2.0, "x2": 1.5})
        p.add_constraint({"x0": 1.0, "x1": 1.0}, "<=", 3.0)
        p.add_constraint({"x1": 1.0, "x2": 2.0}, "<=", 4.0)
        p.add_constraint({"x0": 2.0, "x2": 1.0}, ">=", 1.0)
    a, b = lp.solve(p1), lp.solve(p2)
    assert a.values == b.values
    assert a.iterations == b.iterations
    assert a.objective_value == b.objective_value


# --- random programs against a vertex-enumeration oracle ---------------------------

def brute_force_box_lp(c, a, b, cap):
    """Exact optimum of max c'x s.t. ax <= b, 0 <= x <= cap.

    Enumerates every basic point: choose n rows among the inequality rows
    and the box faces, solve the square system, keep feasible solutions.
    The box keeps the feasible set compact so the optimum is attained.
    """
    m, n = a.shape
    rows = [(a[r], b[r]) for r in range(m)]
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        rows.append((e, 0.0))
        rows.append((e, cap))
    best = None
    for chosen in combinations(range(len(rows)), n):
        aa = np.array([rows[k][0] for k in chosen])
        bb = np.array([rows[k][1] for k in chosen])
        if abs(np.linalg.det(aa)) < 1e-9:
            continue
        x = np.linalg.solve(aa, bb)
        if np.any(a @ x > b + 1e-9) or np.any(x < -1e-9) or np.any(x > cap + 1e-9):
            continue
        val = float(c @ x)
        if best is None or val > best:
            best = val
    return best


def test_solver_matches_brute_force_on_random_boxed_programs():
    rng = np.random.default_rng(31)
    for trial in range(60):
        n = int(rng.integers(2, 4))
        m = int(rng.integers(2, 6))
        a = rng.integers(-4, 5, size=(m, n)).astype(float)
        b = rng.integers(0, 11, size=m).astype(float)
        c = rng.integers(-5, 6, size=n).astype(float)
        cap = 5.0

        p = program("max")
        for i in range(n):
            p.add_variable(f"x{i}", lower=0.0, upper=cap)
        p.set_objective({f"x{i}": c[i] for i in range(n)})
        for r in range(m):
            p.add_constraint({f"x{i}": a[r, i] for i in range(n)}, "<=", b[r])

        s = lp.solve(p)
        expected = brute_force_box_lp(c, a, b, cap)
        assert s.is_optimal, f"trial {trial}: {s.status}"
        assert expected is not None
        assert s.objective_value == pytest.approx(expected, abs=1e-7), (
            f"trial {trial}")
        assert s.max_violation < 1e-7


# --- reporting ---------------------------------------------------------------------

def test_active_labels_name_the_binding_rows():
    p = program("max")
    p.add_variable("x")
    p.add_variable("y")
    p.set_objective({"x": 1.0, "y": 1.0})
    p.add_constraint({"x": 1.0}, "<=", 2.0, label="a")
    p.add_constraint({"y": 1.0}, "<=", 3.0, label="b")
    p.add_constraint({"x": 1.0, "y": 1.0}, "<=", 10.0, label="c")
    s = lp.solve(p)
    assert set(s.active_labels) == {"a", "b"}
    assert s.iterations > 0


def test_format_lp_shows_rows_and_bounds():
    p = program("min")
    p.add_variable("x", lower=None, upper=7.0)
    p.set_objective({"x": 2.0})
    p.add_constraint({"x": 1.0}, ">=", -1.0, label="floor")
    text = lp.format_lp(p)
    assert "min 2*x" in text
    assert "[floor] 1*x >= -1" in text
    assert "-inf <= x <= 7" in text
