"""Project document: mutation rules, number formats, persistence, reporting."""

import json
import threading
import time
from fractions import Fraction as F

import pytest

from decaid import ahp, naror, scales, store


# --- number parsing -----------------------------------------------------------

@pytest.mark.parametrize("text,expected", [
    ("0,0899", F(899, 10000)),
    ("0.0899", F(899, 10000)),
    ("7,500", F(7500)),
    ("2.500", F(2500)),
    ("12 000", F(12000)),
    ("1.234", F(1234)),       # lone separator in 3-digit grouping
    ("1.2345", F(12345, 10000)),
    ("1,23", F(123, 100)),
    ("1.234.567", F(1234567)),
    ("1,234.5", F(24690, 20)),
    ("1.234,5", F(12345, 10)),
    ("-0,5", F(-1, 2)),
    ("+3", F(3)),
    ("1/3", F(1, 3)),
    (7, F(7)),
    (0.25, F(1, 4)),
])
def test_parse_number_formats(text, expected):
    assert store.parse_number(text) == expected


@pytest.mark.parametrize("text", ["", "abc", "1,2,3.4.5", "--3", "1/0"])
def test_parse_number_rejects_garbage(text):
    with pytest.raises(store.ProjectError):
        store.parse_number(text)


# --- mutation rules --------------------------------------------------------------

def test_new_project_requires_an_id():
    with pytest.raises(store.ProjectError):
        store.new_project("")


def test_every_mutation_bumps_the_version(tiny_project):
    v = tiny_project.version
    store.add_statement(tiny_project, naror.statement("weak_pref", "a", "b"))
    assert tiny_project.version == v + 1
    store.remove_statement(tiny_project, 0)
    assert tiny_project.version == v + 2
    store.append_round(tiny_project, 0.1, 0.2, [])
    assert tiny_project.version == v + 3


def test_criteria_are_frozen_once_anything_depends_on_them(tiny_project):
    with pytest.raises(store.ProjectError, match="depend"):
        store.set_criteria(tiny_project, [
            scales.CriterionSpec("g9", "late", scales.MAXIMIZE, 0, 1)])
    fresh = store.new_project("fresh")
    with pytest.raises(store.ProjectError, match="distinct"):
        store.set_criteria(fresh, [
            scales.CriterionSpec("g1", "a", scales.MAXIMIZE, 0, 1),
            scales.CriterionSpec("g1", "b", scales.MAXIMIZE, 0, 1)])


def test_alternatives_cannot_orphan_data(tiny_project):
    with pytest.raises(store.ProjectError, match="ratings exist"):
        store.set_alternatives(tiny_project, ["a", "b"])
    # an unrated alternative can only be pinned by a statement
    store.set_alternatives(tiny_project, ["a", "b", "c", "d"])
    store.add_statement(tiny_project, naror.statement("weak_pref", "a", "d"))
    with pytest.raises(store.ProjectError, match="statement.*removed"):
        store.set_alternatives(tiny_project, ["a", "b", "c"])
    with pytest.raises(store.ProjectError, match="distinct"):
        store.set_alternatives(store.new_project("p"), ["x", "x"])


def test_ratings_must_cover_criteria_exactly(tiny_project):
    with pytest.raises(store.ProjectError, match="unknown alternative"):
        store.set_ratings(tiny_project, "zz", {"g1": 1, "g2": 1})
    with pytest.raises(store.ProjectError, match="missing: g2"):
        store.set_ratings(tiny_project, "a", {"g1": 1})
    with pytest.raises(store.ProjectError, match="unknown: g9"):
        store.set_ratings(tiny_project, "a", {"g1": 1, "g2": 1, "g9": 1})
    with pytest.raises(store.ProjectError, match="outside scale"):
        store.set_ratings(tiny_project, "a", {"g1": 11, "g2": 1})


def test_references_menu_stays_inside_the_scale(tiny_project):
    with pytest.raises(store.ProjectError, match="leave the scale"):
        store.set_references(tiny_project, "g1", [0, 5, 12])
    with pytest.raises(store.ProjectError, match="matrix over the old levels"):
        store.set_references(tiny_project, "g1", [0, 4, 10])
    # replacing with the same levels is a no-op refresh, always legal
    store.set_references(tiny_project, "g1", [0, 5, 10])


def test_matrix_needs_references_and_matching_items(tiny_project):
    fresh = store.new_project("p")
    store.set_criteria(fresh, [
        scales.CriterionSpec("g1", "one", scales.MAXIMIZE, 0, 10)])
    matrix = ahp.from_grid([F(0), F(10)], [[F(1), F(3)], [F(1, 3), F(1)]])
    with pytest.raises(store.ProjectError, match="reference levels"):
        store.put_matrix(fresh, "g1", matrix)
    store.set_references(fresh, "g1", [0, 5, 10])
    with pytest.raises(store.ProjectError, match="exactly the reference"):
        store.put_matrix(fresh, "g1", matrix)


def test_statement_ids_are_checked_against_the_project(tiny_project):
    with pytest.raises(store.ProjectError, match="unknown alternative"):
        store.add_statement(tiny_project,
                            naror.statement("weak_pref", "a", "zz"))
    with pytest.raises(store.ProjectError, match="unknown criterion"):
        store.add_statement(tiny_project,
                            naror.statement("importance_strict", "g1", "g9"))
    with pytest.raises(store.ProjectError, match="no statement at index"):
        store.remove_statement(tiny_project, 0)
    st = naror.statement("weak_pref", "a", "b")
    store.add_statement(tiny_project, st)
    assert store.remove_statement(tiny_project, 0) is st


# --- persistence -------------------------------------------------------------------

def test_document_roundtrip_preserves_everything(tiny_project):
    store.add_statement(tiny_project,
                        naror.statement("strict_pref", "a", "b", label="ab"))
    store.set_ratings(tiny_project, "a", {"g1": F(1, 3), "g2": F(2)})
    store.append_round(tiny_project, 0.25, 0.5,
                       [naror.RankEntry("a", 0.9, 1)])
    doc = store.save(tiny_project)
    text = json.dumps(doc)  # must be JSON-ready as-is
    back = store.load(json.loads(text))
    assert store.save(back) == doc
    assert back.ratings["a"]["g1"] == F(1, 3)
    assert back.statements[0].label == "ab"
    assert back.rounds[0].ranking == [("a", 0.9, 1)]
    assert back.version == tiny_project.version


def test_exact_fractions_survive_as_readable_strings(tiny_project):
    store.set_ratings(tiny_project, "a", {"g1": F(1, 3), "g2": F(1, 4)})
    doc = store.save(tiny_project)
    assert doc["ratings"]["a"]["g1"] == "1/3"
    assert doc["ratings"]["a"]["g2"] == "0.25"


def test_load_rejects_malformed_documents(tiny_project):
    doc = store.save(tiny_project)
    with pytest.raises(store.ProjectError, match="unknown document field"):
        store.load({**doc, "extra": 1})
    clipped = dict(doc)
    del clipped["ratings"]
    with pytest.raises(store.ProjectError, match="missing document field"):
        store.load(clipped)
    with pytest.raises(store.ProjectError, match="schema_version"):
        store.load({**doc, "schema_version": 99})
    with pytest.raises(store.ProjectError, match="malformed project JSON"):
        store.load("{not json")
    with pytest.raises(store.ProjectError, match="JSON object"):
        store.load("[]")
    bad = json.loads(json.dumps(doc))
    bad["statements"] = [{"args": ["a", "b"]}]
    with pytest.raises(store.ProjectError, match="malformed statement"):
        store.load(bad)
    bad = json.loads(json.dumps(doc))
    bad["ratings"]["a"]["g1"] = "one third"
    with pytest.raises(store.ProjectError, match="malformed number"):
        store.load(bad)
    bad = json.loads(json.dumps(doc))
    bad["matrices"]["g1"] = {"items": ["0"]}
    with pytest.raises(store.ProjectError, match="malformed matrix"):
        store.load(bad)


def test_file_roundtrip(tiny_project, tmp_path):
    path = tmp_path / "tiny.json"
    store.save_file(tiny_project, path)
    back = store.load_file(path)
    assert store.save(back) == store.save(tiny_project)
    assert not path.with_name(path.name + ".tmp").exists()


def test_concurrent_reads_never_see_a_torn_file(tiny_project, tmp_path):
    # the service reads documents outside the writer's lock
    path = tmp_path / "tiny.json"
    store.save_file(tiny_project, path)
    stop = threading.Event()
    failures = []

    def writer():
        while not stop.is_set():
            store.save_file(tiny_project, path)

    def reader():
        while not stop.is_set():
            try:
                store.load_file(path)
            except Exception as exc:  # noqa: BLE001 - any error is the bug
                failures.append(exc)
                return

    threads = [threading.Thread(target=writer),
               threading.Thread(target=reader),
               threading.Thread(target=reader)]
    for t in threads:
        t.start()
    time.sleep(0.4)
    stop.set()
    for t in threads:
        t.join()
    assert failures == []


# --- CSV import ----------------------------------------------------------------------

def unrated_project():
    project = store.new_project("csv")
    store.set_criteria(project, [
        scales.CriterionSpec("g1", "first", scales.MAXIMIZE, 0, 10),
        scales.CriterionSpec("g2", "second", scales.MAXIMIZE, 0, 10),
    ])
    return project


def test_import_performances_with_mixed_number_formats():
    project = unrated_project()
    csv_text = "id,g1,g2\nx,\"7,5\",2\ny,5,\"2,5\"\n"
    table = store.import_performances(project, csv_text)
    assert table.alternatives == ("x", "y")
    assert table.rating("x", "g1") == 7.5
    assert project.ratings["y"]["g2"] == F(5, 2)


@pytest.mark.parametrize("csv_text,message", [
    ("", "empty"),
    ("id,g1,g9\nx,1,2\n", "unknown criterion"),
    ("id,g1\nx,1\n", "missing criterion"),
    ("id,g1,g2\nx,1\n", "has 2 cells"),
    ("id,g1,g2\nx,1,2\nx,3,4\n", "duplicate alternative"),
    ("id,g1,g2\n,1,2\n", "may not be blank"),
    ("id,g1,g2\nx,fast,2\n", "row 'x', column g1"),
])
def test_import_performances_names_the_problem(tiny_project, csv_text, message):
    with pytest.raises(store.ProjectError, match=message):
        store.import_performances(tiny_project, csv_text)


def test_rating_table_requires_complete_ratings(tiny_project):
    store.set_alternatives(tiny_project, ["a", "b", "c", "d"])
    with pytest.raises(store.ProjectError, match="no ratings for alternative d"):
        store.rating_table(tiny_project)


# --- pipeline stages ------------------------------------------------------------------

def test_pipeline_errors_name_their_stage(tiny_project):
    empty = store.new_project("empty")
    with pytest.raises(store.PipelineError) as err:
        store.build_scales(empty)
    assert err.value.stage == "scales"
    assert str(err.value).startswith("[scales]")

    nomatrix = store.new_project("nm")
    store.set_criteria(nomatrix, [
        scales.CriterionSpec("g1", "one", scales.MAXIMIZE, 0, 10)])
    store.set_references(nomatrix, "g1", [0, 10])
    with pytest.raises(store.PipelineError) as err:
        store.build_scales(nomatrix)
    assert err.value.stage == "consistency"

    noalts = store.new_project("na")
    store.set_criteria(noalts, [
        scales.CriterionSpec("g1", "one", scales.MAXIMIZE, 0, 10)])
    with pytest.raises(store.PipelineError) as err:
        store.build_report(noalts)
    assert err.value.stage == "scales"

    unrated = tiny_project
    store.set_alternatives(unrated, ["a", "b", "c", "d"])
    with pytest.raises(store.PipelineError) as err:
        store.build_report(unrated)
    assert err.value.stage == "normalization"


def test_build_report_full_pass(tiny_project):
    store.add_statement(tiny_project, naror.statement("weak_pref", "a", "b"))
    bundle = store.build_report(tiny_project)
    assert bundle.project_id == "tiny"
    assert bundle.project_version == tiny_project.version
    assert bundle.has_compatible_model
    assert bundle.epsilon_star > 0
    assert len(bundle.shapley) == 2
    assert bundle.budget["parsimonious"] == 2 * 3
    assert [e.alternative for e in bundle.ranking[:1]] == ["a"]
    doc = bundle.to_dict()
    json.dumps(doc)  # whole bundle must serialize
    assert doc["relations"]["alternatives"] == ["a", "b", "c"]
    nec = doc["relations"]["necessary"]
    assert nec[0][1] is True  # the stated pair
    report_version_before = tiny_project.version
    assert tiny_project.version == report_version_before  # pure read


def test_build_report_incompatible_produces_a_diagnosis(tiny_project):
    store.add_statement(tiny_project,
                        naror.statement("strict_pref", "a", "b"))
    store.add_statement(tiny_project,
                        naror.statement("strict_pref", "b", "a"))
    bundle = store.build_report(tiny_project)
    assert not bundle.has_compatible_model
    assert bundle.diagnosis and len(bundle.diagnosis) == 2
    assert bundle.ranking == []
    assert bundle.relations is None
    json.dumps(bundle.to_dict())
    text = store.bundle_to_text(bundle)
    assert "conflicting statements" in text
    assert "strict_pref(a, b)" in text


def test_report_text_contains_every_block(tiny_project):
    store.add_statement(tiny_project, naror.statement("weak_pref", "a", "b"))
    bundle = store.build_report(tiny_project)
    text = store.bundle_to_text(bundle)
    for heading in ("consistency", "normalized scales",
                    "normalized evaluations", "comparison budget",
                    "robustness", "necessary relation", "possible relation",
                    "criteria importance", "ranking"):
        assert heading in text, heading
    assert f"epsilon* = {bundle.epsilon_star:.6f}" in text
    top = bundle.ranking[0]
    assert f"{top.value:.4f}" in text
    # the relation grids use one X or dot per ordered pair
    assert text.count("X") + text.count(".") >= 2 * 9
