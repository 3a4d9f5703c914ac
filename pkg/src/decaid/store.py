"""Project documents: mutation, persistence, ingestion and reporting.

A project bundles criteria, alternatives, ratings, reference levels,
judgment matrices, preference statements and a log of solve rounds.  Every
mutation bumps the version.  Documents serialize to JSON with all numbers
as decimal strings and judgments as integer pairs, so a round trip is
exact on every platform.
"""

from __future__ import annotations

import csv
import io
import json
import os
import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction

from . import ahp, choquet, naror, scales
from .ahp import PairwiseMatrix
from .naror import PreferenceStatement
from .scales import CriterionSpec

SCHEMA_VERSION = 1

_DOCUMENT_FIELDS = (
    "schema_version", "id", "version", "criteria", "alternatives",
    "ratings", "references", "matrices", "statements", "rounds",
)


class ProjectError(ValueError):
    """Invalid mutation or malformed document."""


class PipelineError(RuntimeError):
    """A report stage failed; ``stage`` names the culprit."""

    def __init__(self, stage: str, message: str):
        super().__init__(message)
        self.stage = stage

    def __str__(self):
        return f"[{self.stage}] {super().__str__()}"


@dataclass
class Alternative:
    id: str
    name: str = ""


@dataclass
class Round:
    """Snapshot of one solve: statements in force and the outcome."""

    at: str
    version: int
    statements: list
    epsilon_star: float = None
    delta: float = None
    ranking: list = field(default_factory=list)  # (alternative, value, rank)


@dataclass
class Project:
    id: str
    criteria: list = field(default_factory=list)
    alternatives: list = field(default_factory=list)
    ratings: dict = field(default_factory=dict)
    references: dict = field(default_factory=dict)
    matrices: dict = field(default_factory=dict)
    statements: list = field(default_factory=list)
    rounds: list = field(default_factory=list)
    version: int = 0

    def criterion(self, cid: str) -> CriterionSpec:
        for spec in self.criteria:
            if spec.id == cid:
                return spec
        raise ProjectError(f"unknown criterion {cid!r}")

    def criterion_ids(self):
        return [spec.id for spec in self.criteria]

    def alternative_ids(self):
        return [alt.id for alt in self.alternatives]


def new_project(project_id: str) -> Project:
    if not project_id:
        raise ProjectError("project id must be nonempty")
    return Project(project_id)


# --- mutation ----------------------------------------------------------------

def _bump(project: Project):
    project.version += 1


def set_criteria(project: Project, specs):
    specs = list(specs)
    ids = [s.id for s in specs]
    if len(set(ids)) != len(ids):
        raise ProjectError("criterion ids must be distinct")
    if project.ratings or project.references or project.matrices \
            or project.statements:
        raise ProjectError(
            "criteria cannot change while ratings, references, matrices or "
            "statements depend on them"
        )
    project.criteria = specs
    _bump(project)


def set_alternatives(project: Project, alternatives):
    alts = [a if isinstance(a, Alternative) else Alternative(str(a))
            for a in alternatives]
    ids = [a.id for a in alts]
    if len(set(ids)) != len(ids):
        raise ProjectError("alternative ids must be distinct")
    keep = set(ids)
    orphaned = [a for a in project.ratings if a not in keep]
    if orphaned:
        raise ProjectError(
            f"ratings exist for removed alternatives: {', '.join(sorted(orphaned))}"
        )
    for st in project.statements:
        domain, _ = naror.STATEMENT_ARITY[st.kind]
        if domain == "alternative":
            for ref in st.args:
                if ref not in keep:
                    raise ProjectError(
                        f"statement {st.describe()} references removed "
                        f"alternative {ref!r}"
                    )
    project.alternatives = alts
    _bump(project)


def set_ratings(project: Project, alternative: str, ratings: dict):
    if alternative not in project.alternative_ids():
        raise ProjectError(f"unknown alternative {alternative!r}")
    wanted = set(project.criterion_ids())
    got = set(ratings)
    if got != wanted:
        missing = ", ".join(sorted(wanted - got)) or "none"
        extra = ", ".join(sorted(got - wanted)) or "none"
        raise ProjectError(
            f"ratings for {alternative} must cover each criterion exactly "
            f"(missing: {missing}; unknown: {extra})"
        )
    clean = {}
    for cid, value in ratings.items():
        spec = project.criterion(cid)
        value = value if isinstance(value, Fraction) else Fraction(str(value))
        if value < Fraction(str(spec.scale_min)) \
                or value > Fraction(str(spec.scale_max)):
            raise ProjectError(
                f"rating {value} for ({alternative}, {cid}) outside scale "
                f"[{spec.scale_min:g}, {spec.scale_max:g}]"
            )
        clean[cid] = value
    project.ratings[alternative] = clean
    _bump(project)


def set_references(project: Project, criterion: str, levels):
    spec = project.criterion(criterion)
    levels = tuple(
        l if isinstance(l, Fraction) else Fraction(str(l)) for l in levels
    )
    ref = scales.ReferenceLevels(criterion, levels)
    if levels[0] < Fraction(str(spec.scale_min)) \
            or levels[-1] > Fraction(str(spec.scale_max)):
        raise ProjectError(
            f"{criterion}: reference levels leave the scale "
            f"[{spec.scale_min:g}, {spec.scale_max:g}]"
        )
    if criterion in project.matrices:
        items = set(project.matrices[criterion].items)
        if items != set(levels):
            raise ProjectError(
                f"{criterion}: a judgment matrix over the old levels exists; "
                f"replace or remove it first"
            )
    project.references[criterion] = ref.levels
    _bump(project)


def put_matrix(project: Project, criterion: str, matrix: PairwiseMatrix):
    project.criterion(criterion)
    if criterion not in project.references:
        raise ProjectError(f"{criterion}: set reference levels before judging")
    if set(matrix.items) != set(project.references[criterion]):
        raise ProjectError(
            f"{criterion}: matrix items must be exactly the reference levels"
        )
    project.matrices[criterion] = matrix
    _bump(project)


def add_statement(project: Project, st: PreferenceStatement):
    domain, _ = naror.STATEMENT_ARITY[st.kind]
    pool = set(project.alternative_ids()) if domain == "alternative" \
        else set(project.criterion_ids())
    for ref in st.args:
        if ref not in pool:
            raise ProjectError(
                f"{st.describe()} references unknown {domain} {ref!r}"
            )
    project.statements.append(st)
    _bump(project)


def remove_statement(project: Project, index: int):
    if not 0 <= index < len(project.statements):
        raise ProjectError(f"no statement at index {index}")
    removed = project.statements.pop(index)
    _bump(project)
    return removed


def append_round(project: Project, epsilon_star, delta, ranking):
    """Log one solve outcome; the round list is append-only."""
    project.rounds.append(Round(
        at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        version=project.version,
        statements=[_statement_doc(st) for st in project.statements],
        epsilon_star=epsilon_star,
        delta=delta,
        ranking=[(e.alternative, e.value, e.rank) for e in ranking],
    ))
    _bump(project)


# --- number parsing ----------------------------------------------------------

_GROUPED = re.compile(r"^\d{1,3}(?:([.,   ])\d{3})+$")


def parse_number(text) -> Fraction:
    """Exact rational from a human-formatted number.

    Handles plain decimals, decimal commas ("0,0899"), and period, comma
    or thin-space thousands grouping ("7,500", "2.500", "12 000").  When
    both separators appear, the rightmost is the decimal mark.  A single
    separator in exact 3-digit grouping reads as thousands.
    """
    s = str(text).strip()
    neg = s.startswith("-")
    if neg or s.startswith("+"):
        s = s[1:]
    if not s or s[0] in "+-":
        raise ProjectError(f"cannot parse number {text!r}")
    if "," in s and "." in s:
        dec = max(s.rfind(","), s.rfind("."))
        dec_char = s[dec]
        group_char = "." if dec_char == "," else ","
        s = s.replace(group_char, "").replace(" ", "").replace(" ", "")
        s = s.replace(" ", "").replace(dec_char, ".")
    elif _GROUPED.match(s):
        for ch in ".,   ":
            s = s.replace(ch, "")
    else:
        s = s.replace(" ", "").replace(" ", "").replace(" ", "")
        s = s.replace(",", ".")
    try:
        value = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ProjectError(f"cannot parse number {text!r}") from None
    return -value if neg else value


def import_performances(project: Project, source) -> scales.RatingTable:
    """Load a ratings CSV: first column alternative id, then one column
    per criterion id.  Returns the resulting table view.

    Accepts a text blob or any iterable of lines.  Cells go through
    ``parse_number``, so the usual thousands and decimal-comma formats
    work.  Errors name the offending row and column.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    reader = csv.reader(source)
    rows = [row for row in reader if any(cell.strip() for cell in row)]
    if not rows:
        raise ProjectError("ratings CSV is empty, expected a header row")
    header = [cell.strip() for cell in rows[0]]
    if len(header) < 1:
        raise ProjectError("ratings CSV header has no columns")
    columns = header[1:]
    known = set(project.criterion_ids())
    unknown = [c for c in columns if c not in known]
    if unknown:
        raise ProjectError(f"unknown criterion column(s): {', '.join(unknown)}")
    missing = [c for c in project.criterion_ids() if c not in columns]
    if missing:
        raise ProjectError(f"missing criterion column(s): {', '.join(missing)}")
    alternatives = []
    ratings = {}
    for row in rows[1:]:
        if len(row) != len(header):
            raise ProjectError(
                f"row for {row[0].strip()!r} has {len(row)} cells, "
                f"expected {len(header)}"
            )
        alt = row[0].strip()
        if not alt:
            raise ProjectError("alternative id column may not be blank")
        if alt in ratings:
            raise ProjectError(f"duplicate alternative row {alt!r}")
        cells = {}
        for cid, cell in zip(columns, row[1:]):
            try:
                cells[cid] = parse_number(cell)
            except ProjectError:
                raise ProjectError(
                    f"cannot parse rating at row {alt!r}, column {cid}: "
                    f"{cell.strip()!r}"
                ) from None
        alternatives.append(alt)
        ratings[alt] = cells
    set_alternatives(project, alternatives)
    for alt in alternatives:
        set_ratings(project, alt, ratings[alt])
    return rating_table(project)


def rating_table(project: Project) -> scales.RatingTable:
    """Float view of the exact stored ratings, in declared order."""
    criteria = tuple(project.criterion_ids())
    alts = tuple(project.alternative_ids())
    rows = []
    for alt in alts:
        if alt not in project.ratings:
            raise ProjectError(f"no ratings for alternative {alt}")
        rows.append(tuple(float(project.ratings[alt][c]) for c in criteria))
    return scales.RatingTable(alts, criteria, tuple(rows))


# --- persistence -------------------------------------------------------------

def _frac_doc(value: Fraction) -> str:
    """Decimal string when the expansion terminates, num/den otherwise."""
    d = value.denominator
    scale = 1
    digits = 0
    while d % 2 == 0:
        d //= 2
        scale *= 5
        digits += 1
    while d % 5 == 0:
        d //= 5
        scale *= 2
        digits += 1
    if d != 1:
        return f"{value.numerator}/{value.denominator}"
    n = value.numerator * scale
    if digits == 0:
        return str(n)
    sign = "-" if n < 0 else ""
    text = str(abs(n)).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def _frac_parse(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ProjectError(f"malformed number {text!r}") from None


def _float_doc(value):
    return None if value is None else repr(float(value))


def _float_parse(text):
    if text is None:
        return None
    try:
        return float(text)
    except ValueError:
        raise ProjectError(f"malformed number {text!r}") from None


def _statement_doc(st: PreferenceStatement) -> dict:
    return {"kind": st.kind, "args": list(st.args), "label": st.label}


def _statement_parse(doc) -> PreferenceStatement:
    try:
        return PreferenceStatement(
            doc["kind"], tuple(doc["args"]), doc.get("label", "")
        )
    except (KeyError, TypeError):
        raise ProjectError(f"malformed statement {doc!r}") from None


def _matrix_doc(matrix: PairwiseMatrix) -> dict:
    return {
        "items": [_frac_doc(Fraction(it)) for it in matrix.items],
        "rows": [
            [[e.numerator, e.denominator] for e in row]
            for row in matrix.entries
        ],
    }


def _matrix_parse(doc) -> PairwiseMatrix:
    try:
        items = tuple(_frac_parse(it) for it in doc["items"])
        rows = tuple(
            tuple(Fraction(int(n), int(d)) for n, d in row)
            for row in doc["rows"]
        )
    except (KeyError, TypeError, ValueError, ZeroDivisionError):
        raise ProjectError("malformed matrix document") from None
    return PairwiseMatrix(items, rows)


def save(project: Project) -> dict:
    """Project as a JSON-ready document (all numbers as decimal strings)."""
    return {
        "schema_version": SCHEMA_VERSION,
        "id": project.id,
        "version": project.version,
        "criteria": [
            {
                "id": s.id,
                "name": s.name,
                "direction": s.direction,
                "scale_min": repr(float(s.scale_min)),
                "scale_max": repr(float(s.scale_max)),
                "numeric": s.numeric,
            }
            for s in project.criteria
        ],
        "alternatives": [{"id": a.id, "name": a.name}
                         for a in project.alternatives],
        "ratings": {
            alt: {cid: _frac_doc(v) for cid, v in sorted(cells.items())}
            for alt, cells in sorted(project.ratings.items())
        },
        "references": {
            cid: [_frac_doc(l) for l in levels]
            for cid, levels in sorted(project.references.items())
        },
        "matrices": {
            cid: _matrix_doc(m) for cid, m in sorted(project.matrices.items())
        },
        "statements": [_statement_doc(st) for st in project.statements],
        "rounds": [
            {
                "at": r.at,
                "version": r.version,
                "statements": r.statements,
                "epsilon_star": _float_doc(r.epsilon_star),
                "delta": _float_doc(r.delta),
                "ranking": [
                    [alt, _float_doc(v), rank] for alt, v, rank in r.ranking
                ],
            }
            for r in project.rounds
        ],
    }


def load(document) -> Project:
    """Rebuild a project from a document produced by ``save``."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ProjectError(f"malformed project JSON: {exc}") from None
    if not isinstance(document, dict):
        raise ProjectError("project document must be a JSON object")
    unknown = set(document) - set(_DOCUMENT_FIELDS)
    if unknown:
        raise ProjectError(
            f"unknown document field(s): {', '.join(sorted(unknown))}"
        )
    missing = set(_DOCUMENT_FIELDS) - set(document)
    if missing:
        raise ProjectError(
            f"missing document field(s): {', '.join(sorted(missing))}"
        )
    if document["schema_version"] != SCHEMA_VERSION:
        raise ProjectError(
            f"unsupported schema_version {document['schema_version']!r}, "
            f"expected {SCHEMA_VERSION}"
        )
    try:
        project = Project(
            id=document["id"],
            criteria=[
                CriterionSpec(
                    c["id"], c["name"], c["direction"],
                    _float_parse(c["scale_min"]), _float_parse(c["scale_max"]),
                    bool(c["numeric"]),
                )
                for c in document["criteria"]
            ],
            alternatives=[
                Alternative(a["id"], a.get("name", ""))
                for a in document["alternatives"]
            ],
            ratings={
                alt: {cid: _frac_parse(v) for cid, v in cells.items()}
                for alt, cells in document["ratings"].items()
            },
            references={
                cid: tuple(_frac_parse(l) for l in levels)
                for cid, levels in document["references"].items()
            },
            matrices={
                cid: _matrix_parse(m)
                for cid, m in document["matrices"].items()
            },
            statements=[_statement_parse(s) for s in document["statements"]],
            rounds=[
                Round(
                    at=r["at"],
                    version=int(r["version"]),
                    statements=list(r["statements"]),
                    epsilon_star=_float_parse(r["epsilon_star"]),
                    delta=_float_parse(r["delta"]),
                    ranking=[
                        (alt, _float_parse(v), int(rank))
                        for alt, v, rank in r["ranking"]
                    ],
                )
                for r in document["rounds"]
            ],
            version=int(document["version"]),
        )
    except (KeyError, TypeError) as exc:
        raise ProjectError(f"malformed project document: {exc}") from None
    return project


def save_file(project: Project, path):
    # replace atomically: a concurrent reader sees old or new, never torn
    text = json.dumps(save(project), indent=2, sort_keys=True)
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as handle:
        handle.write(text + "\n")
    os.replace(tmp, path)


def load_file(path) -> Project:
    with open(path, encoding="utf-8") as handle:
        return load(handle.read())


# --- reporting ---------------------------------------------------------------

@dataclass
class ReportBundle:
    """Everything one full pipeline pass produces, tied to a version."""

    project_id: str
    project_version: int
    consistency: dict          # criterion -> ConsistencyReport
    scales: dict               # criterion -> NormalizedScale
    warnings: list
    table: scales.NormalizedTable
    budget: dict
    epsilon_star: float = None
    has_compatible_model: bool = False
    delta: float = None
    shapley: list = field(default_factory=list)       # (criterion, value)
    interactions: list = field(default_factory=list)  # (ci, cj, mass)
    capacity: dict = None      # singletons/pairs export
    relations: dict = None
    ranking: list = field(default_factory=list)       # RankEntry
    diagnosis: list = None     # statement docs when incompatible

    def to_dict(self) -> dict:
        doc = {
            "project_id": self.project_id,
            "project_version": self.project_version,
            "consistency": {
                cid: {
                    "n": rep.n,
                    "lambda_max": rep.lambda_max,
                    "consistency_index": rep.consistency_index,
                    "random_index": rep.random_index,
                    "consistency_ratio": rep.consistency_ratio,
                    "acceptable": rep.acceptable,
                }
                for cid, rep in self.consistency.items()
            },
            "scales": {
                cid: {
                    "levels": list(sc.levels),
                    "values": list(sc.values),
                }
                for cid, sc in self.scales.items()
            },
            "warnings": list(self.warnings),
            "normalized_table": {
                "alternatives": list(self.table.alternatives),
                "criteria": list(self.table.criteria),
                "rows": [list(r) for r in self.table.rows],
            },
            "budget": dict(self.budget),
            "epsilon_star": self.epsilon_star,
            "has_compatible_model": self.has_compatible_model,
            "delta": self.delta,
            "shapley": [[cid, v] for cid, v in self.shapley],
            "interactions": [[a, b, v] for a, b, v in self.interactions],
            "capacity": self.capacity,
            "relations": self.relations,
            "ranking": [
                [e.alternative, e.value, e.rank] for e in self.ranking
            ],
            "diagnosis": self.diagnosis,
        }
        return doc


def _stage(stage_name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except PipelineError:
        raise
    except (ValueError, RuntimeError) as exc:
        raise PipelineError(stage_name, str(exc)) from exc


def build_scales(project: Project):
    """Eigenvector, normalize and screen every criterion scale.

    Returns (consistency reports, scale map, warnings), all keyed or
    ordered by declared criterion order.
    """
    if not project.criteria:
        raise PipelineError("scales", "project has no criteria")
    consistency = {}
    scale_map = {}
    warnings = []
    for spec in project.criteria:
        cid = spec.id
        if cid not in project.matrices:
            raise PipelineError(
                "consistency", f"no judgment matrix for criterion {cid}"
            )
        matrix = project.matrices[cid]
        consistency[cid] = _stage("consistency", ahp.consistency, matrix)
        pv, _ = _stage("consistency", ahp.principal_eigen, matrix)
        scale = _stage("scales", scales.normalize_priorities, pv, cid)
        scale_map[cid] = scale
        warnings.extend(scales.monotonicity_check(scale, spec.direction))
    return consistency, scale_map, warnings


def normalized_table(project: Project, scale_map) -> scales.NormalizedTable:
    """Rebuild the performance table on the common [0, 1] scales."""
    ratings = _stage("normalization", rating_table, project)
    return _stage("normalization", scales.normalize_table, ratings, scale_map)


def build_report(project: Project, jobs: int = 1) -> ReportBundle:
    """Run consistency, scaling, normalization and robustness end to end.

    Pure read: the project document is left untouched.  Raises
    PipelineError naming the failing stage on incomplete projects.
    """
    if not project.alternatives:
        raise PipelineError("scales", "project has no alternatives")
    consistency, scale_map, warnings = build_scales(project)
    table = normalized_table(project, scale_map)

    n_judgment = sum(1 for s in project.criteria if not s.numeric)
    budget = scales.comparison_budget(
        n_judgment, len(project.alternatives),
        [len(project.references[c]) for c in project.criterion_ids()],
    )

    system = _stage("robustness", naror.compile_statements,
                    project.statements, table)
    eps_star, compatible = _stage("robustness", naror.feasibility, system)
    bundle = ReportBundle(
        project_id=project.id,
        project_version=project.version,
        consistency=consistency,
        scales=scale_map,
        warnings=warnings,
        table=table,
        budget=budget,
        epsilon_star=eps_star,
        has_compatible_model=compatible,
    )
    if not compatible:
        core = _stage("robustness", naror.diagnose, project.statements, table)
        bundle.diagnosis = [_statement_doc(st) for st in core]
        return bundle

    rel = _stage("robustness", naror.relations, system, jobs=jobs)
    capacity, eps_star, delta = _stage(
        "robustness", naror.most_representative, system, rel
    )
    ranking = _stage("robustness", naror.rank, capacity, table)
    phi = choquet.shapley(capacity)
    criteria = project.criterion_ids()
    bundle.epsilon_star = eps_star
    bundle.delta = delta
    bundle.shapley = [(cid, phi[i]) for i, cid in enumerate(criteria)]
    bundle.interactions = [
        (criteria[i], criteria[j], capacity.pair(i, j))
        for i in range(len(criteria)) for j in range(i + 1, len(criteria))
        if capacity.pair(i, j) != 0.0
    ]
    bundle.capacity = {
        "singletons": {cid: capacity.singleton(i)
                       for i, cid in enumerate(criteria)},
        "pairs": [
            [criteria[i], criteria[j], capacity.pair(i, j)]
            for i in range(len(criteria)) for j in range(i + 1, len(criteria))
            if capacity.pair(i, j) != 0.0
        ],
    }
    bundle.relations = {
        "alternatives": list(rel.alternatives),
        "necessary": [list(row) for row in rel.necessary],
        "possible": [list(row) for row in rel.possible],
    }
    bundle.ranking = list(ranking)
    return bundle


# --- plain-text rendering ----------------------------------------------------

def _render_table(headers, rows) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def bundle_to_text(bundle: ReportBundle) -> str:
    """Aligned terminal tables for the whole report."""
    blocks = [f"project {bundle.project_id} (version {bundle.project_version})"]

    rows = [
        [cid, str(rep.n), f"{rep.lambda_max:.4f}",
         f"{rep.consistency_index:.4f}", f"{rep.consistency_ratio:.4f}",
         "yes" if rep.acceptable else "NO"]
        for cid, rep in bundle.consistency.items()
    ]
    blocks.append("consistency\n" + _render_table(
        ["criterion", "n", "lambda", "CI", "CR", "acceptable"], rows))

    rows = []
    for cid, sc in bundle.scales.items():
        anchors = ", ".join(
            f"{lv:g}:{val:.4f}" for lv, val in zip(sc.levels, sc.values)
        )
        rows.append([cid, anchors])
    blocks.append("normalized scales\n" + _render_table(
        ["criterion", "level:value"], rows))

    if bundle.warnings:
        blocks.append("warnings\n" + "\n".join(
            f"  - {w}" for w in bundle.warnings))

    headers = ["alternative"] + list(bundle.table.criteria)
    rows = [
        [alt] + [f"{v:.4f}" for v in row]
        for alt, row in zip(bundle.table.alternatives, bundle.table.rows)
    ]
    blocks.append("normalized evaluations\n" + _render_table(headers, rows))

    blocks.append(
        "comparison budget\n"
        f"  full pairwise approach: {bundle.budget['full_ahp']}\n"
        f"  reference levels only:  {bundle.budget['parsimonious']}"
    )

    if bundle.epsilon_star is None:
        blocks.append("robustness\n  no capacity satisfies the statements")
    else:
        blocks.append(
            "robustness\n"
            f"  epsilon* = {bundle.epsilon_star:.6f}\n"
            f"  compatible model: {'yes' if bundle.has_compatible_model else 'no'}"
            + ("" if bundle.delta is None else f"\n  delta = {bundle.delta:.6f}")
        )

    if bundle.relations is not None:
        alts = bundle.relations["alternatives"]
        for name in ("necessary", "possible"):
            grid = bundle.relations[name]
            rows = [
                [a] + ["X" if cell else "." for cell in row]
                for a, row in zip(alts, grid)
            ]
            blocks.append(f"{name} relation (row at least as good as column)\n"
                          + _render_table([""] + list(alts), rows))

    if bundle.diagnosis is not None:
        lines = [
            f"  - {doc['kind']}({', '.join(doc['args'])})"
            for doc in bundle.diagnosis
        ]
        blocks.append("conflicting statements\n" + "\n".join(lines))

    if bundle.shapley:
        ordered = sorted(bundle.shapley, key=lambda t: (-t[1], t[0]))
        rows = [[cid, f"{v:.4f}"] for cid, v in ordered]
        blocks.append("criteria importance (Shapley)\n" + _render_table(
            ["criterion", "value"], rows))

    if bundle.interactions:
        rows = [[a, b, f"{v:+.4f}"] for a, b, v in bundle.interactions]
        blocks.append("pair interactions\n" + _render_table(
            ["first", "second", "mass"], rows))

    if bundle.ranking:
        rows = [
            [str(e.rank), e.alternative, f"{e.value:.4f}"]
            for e in bundle.ranking
        ]
        blocks.append("ranking\n" + _render_table(
            ["rank", "alternative", "value"], rows))

    return "\n\n".join(blocks) + "\n"
