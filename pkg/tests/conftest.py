"""Shared fixtures: the demonstration project at every stage of the pipeline.

The full robust solve takes a few seconds, so outcomes are session scoped
and reused by the unit and acceptance layers alike.  Wall-clock times are
recorded where an acceptance criterion bounds them.
"""

import time

import pytest

from decaid import casestudy, naror, scales, store


@pytest.fixture(scope="session")
def case_project():
    return casestudy.build_project(round="final")


@pytest.fixture(scope="session")
def case_project_first():
    return casestudy.build_project(round="first")


@pytest.fixture(scope="session")
def case_scales(case_project):
    """(consistency reports, scale map, warnings) for the demo project."""
    return store.build_scales(case_project)


@pytest.fixture(scope="session")
def case_table(case_project, case_scales):
    _, scale_map, _ = case_scales
    return store.normalized_table(case_project, scale_map)


@pytest.fixture(scope="session")
def final_system(case_project, case_table):
    return naror.compile_statements(case_project.statements, case_table)


@pytest.fixture(scope="session")
def final_outcome(final_system):
    """Timed full solve of the final statement round."""
    t0 = time.perf_counter()
    outcome = naror.solve_system(final_system)
    elapsed = time.perf_counter() - t0
    return outcome, elapsed


@pytest.fixture(scope="session")
def first_outcome(case_project_first, case_scales):
    _, scale_map, _ = case_scales
    table = store.normalized_table(case_project_first, scale_map)
    system = naror.compile_statements(case_project_first.statements, table)
    return naror.solve_system(system)


@pytest.fixture()
def tiny_project():
    """Two maximize criteria, three alternatives, consistent matrices."""
    from fractions import Fraction as F

    project = store.new_project("tiny")
    store.set_criteria(project, [
        scales.CriterionSpec("g1", "first", scales.MAXIMIZE, 0, 10),
        scales.CriterionSpec("g2", "second", scales.MAXIMIZE, 0, 10),
    ])
    store.set_alternatives(project, ["a", "b", "c"])
    store.set_ratings(project, "a", {"g1": F(9), "g2": F(2)})
    store.set_ratings(project, "b", {"g1": F(5), "g2": F(5)})
    store.set_ratings(project, "c", {"g1": F(2), "g2": F(9)})
    for cid in ("g1", "g2"):
        store.set_references(project, cid, [F(0), F(5), F(10)])
        from decaid import ahp
        store.put_matrix(project, cid, ahp.build_matrix(
            [F(0), F(5), F(10)],
            [(F(0), F(5), F(1, 3)), (F(0), F(10), F(1, 9)),
             (F(5), F(10), F(1, 3))],
        ))
    return project
