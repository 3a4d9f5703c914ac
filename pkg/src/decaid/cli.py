"""Batch command line for the whole pipeline.

One verb per engine operation chain: project setup, consistency checks,
scale building, statements, the robust solve and plain reports.  Exit
codes: 0 on success, 1 on domain errors (one line on stderr), 2 on usage
errors.  ``--format json`` swaps the aligned tables for the same bundle
the HTTP service returns, so scripts and humans share one binary.
"""

import argparse
import csv
import json
import re
import sys
from fractions import Fraction

from . import ahp, casestudy, naror, scales, store


def _add_common(parser, fmt=True):
    parser.add_argument("--project", required=True, metavar="PATH",
                        help="project document (JSON)")
    if fmt:
        parser.add_argument("--format", choices=("text", "json"),
                            default="text", help="output style")


def _emit(args, payload, text):
    if getattr(args, "format", "text") == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _load(args) -> store.Project:
    return store.load_file(args.project)


def _consistency_doc(report):
    return {
        "n": report.n,
        "lambda_max": report.lambda_max,
        "consistency_index": report.consistency_index,
        "random_index": report.random_index,
        "consistency_ratio": report.consistency_ratio,
        "acceptable": report.acceptable,
    }


# --- verbs -------------------------------------------------------------------

def _cmd_init(args):
    path = args.project
    try:
        with open(path, encoding="utf-8"):
            pass
    except FileNotFoundError:
        pass
    else:
        raise store.ProjectError(f"refusing to overwrite existing {path}")
    if args.template == "case-study":
        project = casestudy.build_project(round=args.round)
    else:
        project = store.new_project(args.id or "project")
    if args.id:
        project.id = args.id
    store.save_file(project, path)
    _emit(args, {"id": project.id, "version": project.version},
          f"created {project.id} (version {project.version}) at {path}")
    return 0


def _cmd_import_performances(args):
    project = _load(args)
    with open(args.csv, encoding="utf-8", newline="") as handle:
        table = store.import_performances(project, handle)
    store.save_file(project, args.project)
    _emit(args, {
        "alternatives": len(table.alternatives),
        "criteria": len(table.criteria),
        "version": project.version,
    }, "imported %d alternatives on %d criteria (version %d)" % (
        len(table.alternatives), len(table.criteria), project.version))
    return 0


def _cmd_set_references(args):
    project = _load(args)
    tokens = [t for t in re.split(r"[,\s]+", args.levels.strip()) if t]
    levels = [store.parse_number(t) for t in tokens]
    store.set_references(project, args.criterion, levels)
    store.save_file(project, args.project)
    _emit(args, {
        "criterion": args.criterion,
        "levels": [str(l) for l in levels],
        "version": project.version,
    }, "%s references: %s (version %d)" % (
        args.criterion, ", ".join(str(l) for l in levels), project.version))
    return 0


def _read_matrix_csv(path):
    with open(path, encoding="utf-8", newline="") as handle:
        rows = [r for r in csv.reader(handle) if any(c.strip() for c in r)]
    if len(rows) < 2:
        raise store.ProjectError("matrix CSV needs a header and one row per level")
    items = [store.parse_number(c) for c in rows[0][1:] if c.strip()]
    grid = []
    for row in rows[1:]:
        cells = []
        for cell in row[1:len(items) + 1]:
            cell = cell.strip()
            try:
                cells.append(Fraction(cell))
            except (ValueError, ZeroDivisionError):
                cells.append(store.parse_number(cell))
        grid.append(cells)
    return items, grid


def _cmd_import_matrix(args):
    project = _load(args)
    items, grid = _read_matrix_csv(args.csv)
    matrix = ahp.from_grid(items, grid)
    store.put_matrix(project, args.criterion, matrix)
    report = ahp.consistency(matrix)
    store.save_file(project, args.project)
    _emit(args, {
        "criterion": args.criterion,
        "consistency": _consistency_doc(report),
        "version": project.version,
    }, "%s matrix (%dx%d): CR %.4f, %s (version %d)" % (
        args.criterion, report.n, report.n, report.consistency_ratio,
        "acceptable" if report.acceptable else "NOT acceptable",
        project.version))
    return 0


def _cmd_check(args):
    project = _load(args)
    if args.ri == "montecarlo":
        ri_source = lambda n: ahp.random_index(n, samples=args.samples,
                                               seed=args.seed)
    else:
        ri_source = None
    reports = {}
    for spec in project.criteria:
        matrix = project.matrices.get(spec.id)
        if matrix is not None:
            reports[spec.id] = ahp.consistency(matrix, ri_source=ri_source)
    payload = {
        "criteria": {cid: _consistency_doc(r) for cid, r in reports.items()},
        "missing": [s.id for s in project.criteria
                    if s.id not in project.matrices],
    }
    headers = ["criterion", "n", "lambda_max", "CI", "RI", "CR", "acceptable"]
    rows = []
    for spec in project.criteria:
        rep = reports.get(spec.id)
        if rep is None:
            rows.append([spec.id, "-", "-", "-", "-", "-", "no matrix"])
        else:
            rows.append([
                spec.id, str(rep.n), f"{rep.lambda_max:.4f}",
                f"{rep.consistency_index:.4f}", f"{rep.random_index:.4f}",
                f"{rep.consistency_ratio:.4f}",
                "yes" if rep.acceptable else "NO",
            ])
    _emit(args, payload, store._render_table(headers, rows))
    return 0


def _cmd_normalize(args):
    project = _load(args)
    _, scale_map, warnings = store.build_scales(project)
    table = store.normalized_table(project, scale_map)
    payload = {
        "scales": {
            cid: {"levels": list(s.levels), "values": list(s.values)}
            for cid, s in scale_map.items()
        },
        "warnings": list(warnings),
        "table": {
            "alternatives": list(table.alternatives),
            "criteria": list(table.criteria),
            "rows": [list(r) for r in table.rows],
        },
    }
    blocks = []
    rows = []
    for cid in project.criterion_ids():
        s = scale_map[cid]
        rows.append([cid, "  ".join(
            f"{l:g}:{v:.4f}" for l, v in zip(s.levels, s.values))])
    blocks.append("normalized reference values\n"
                  + store._render_table(["criterion", "level:value"], rows))
    if warnings:
        blocks.append("warnings\n" + "\n".join(f"  {w}" for w in warnings))
    headers = ["alternative"] + list(table.criteria)
    rows = [[alt] + [f"{v:.4f}" for v in row]
            for alt, row in zip(table.alternatives, table.rows)]
    blocks.append("normalized evaluations\n"
                  + store._render_table(headers, rows))
    _emit(args, payload, "\n\n".join(blocks))
    return 0


def _cmd_add_statement(args):
    project = _load(args)
    st = naror.statement(args.kind, *args.args, label=args.label)
    store.add_statement(project, st)
    store.save_file(project, args.project)
    _emit(args, {
        "statements": len(project.statements),
        "version": project.version,
    }, "added %s; %d statements in force (version %d)" % (
        st.describe(), len(project.statements), project.version))
    return 0


def _cmd_solve(args):
    project = _load(args)
    bundle = store.build_report(project, jobs=args.jobs)
    if not bundle.has_compatible_model:
        _emit(args, bundle.to_dict(), store.bundle_to_text(bundle))
        print("error: statements are incompatible, see diagnosis",
              file=sys.stderr)
        return 1
    store.append_round(project, bundle.epsilon_star, bundle.delta,
                       bundle.ranking)
    store.save_file(project, args.project)
    _emit(args, bundle.to_dict(), store.bundle_to_text(bundle))
    return 0


def _cmd_rank(args):
    project = _load(args)
    bundle = store.build_report(project, jobs=args.jobs)
    if not bundle.has_compatible_model:
        raise naror.IncompatibleError(
            "statements are incompatible, run diagnose")
    payload = {
        "epsilon_star": bundle.epsilon_star,
        "ranking": [[e.alternative, e.value, e.rank]
                    for e in bundle.ranking],
    }
    rows = [[str(e.rank), e.alternative, f"{e.value:.4f}"]
            for e in bundle.ranking]
    _emit(args, payload, store._render_table(["rank", "alternative", "value"],
                                             rows))
    return 0


def _cmd_diagnose(args):
    project = _load(args)
    _, scale_map, _ = store.build_scales(project)
    table = store.normalized_table(project, scale_map)
    system = naror.compile_statements(project.statements, table)
    eps_star, compatible = naror.feasibility(system)
    if compatible:
        _emit(args, {"compatible": True, "epsilon_star": eps_star},
              f"statements are compatible (margin {eps_star:.6f})")
        return 0
    core = naror.diagnose(project.statements, table)
    payload = {
        "compatible": False,
        "epsilon_star": eps_star,
        "conflict": [store._statement_doc(st) for st in core],
    }
    lines = ["statements are incompatible; smallest conflicting set:"]
    lines += [f"  {st.describe()}" for st in core]
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_report(args):
    project = _load(args)
    bundle = store.build_report(project, jobs=args.jobs)
    _emit(args, bundle.to_dict(), store.bundle_to_text(bundle))
    return 0


def _cmd_budget(args):
    project = _load(args)
    if not project.criteria:
        raise store.ProjectError("project has no criteria")
    for spec in project.criteria:
        if spec.id not in project.references:
            raise store.ProjectError(
                f"no reference levels for criterion {spec.id}")
    n_judgment = sum(1 for s in project.criteria if not s.numeric)
    budget = scales.comparison_budget(
        n_judgment, len(project.alternatives),
        [len(project.references[c]) for c in project.criterion_ids()],
    )
    _emit(args, budget,
          "comparison budget\n"
          f"  full pairwise approach: {budget['full_ahp']}\n"
          f"  reference levels only:  {budget['parsimonious']}")
    return 0


def _cmd_serve(args):
    import uvicorn

    from .service import create_app

    app = create_app(args.root)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


# --- wiring ------------------------------------------------------------------

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="decaid",
        description="Multi-criteria decision aiding: sparse rating scales, "
                    "interacting criteria, robust rankings.",
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    p = sub.add_parser("init", help="create a project document")
    _add_common(p)
    p.add_argument("--id", default="", help="project identifier")
    p.add_argument("--template", choices=("empty", "case-study"),
                   default="empty")
    p.add_argument("--round", choices=("none", "first", "final"),
                   default="final",
                   help="statement set for the case-study template")
    p.set_defaults(func=_cmd_init)

    p = sub.add_parser("import-performances",
                       help="load a ratings CSV (alternative id, then one "
                            "column per criterion)")
    p.add_argument("csv", help="CSV file path")
    _add_common(p)
    p.set_defaults(func=_cmd_import_performances)

    p = sub.add_parser("set-references",
                       help="set the reference levels of one criterion")
    _add_common(p)
    p.add_argument("--criterion", required=True)
    p.add_argument("--levels", required=True,
                   help="comma or space separated rating levels")
    p.set_defaults(func=_cmd_set_references)

    p = sub.add_parser("import-matrix",
                       help="load a pairwise judgment matrix over the "
                            "reference levels")
    p.add_argument("csv", help="CSV grid, header row and column are levels")
    _add_common(p)
    p.add_argument("--criterion", required=True)
    p.set_defaults(func=_cmd_import_matrix)

    p = sub.add_parser("check", help="consistency report for every matrix")
    _add_common(p)
    p.add_argument("--ri", choices=("table", "montecarlo"), default="table",
                   help="random index source")
    p.add_argument("--samples", type=int, default=500,
                   help="Monte Carlo sample count")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("normalize",
                       help="build the [0,1] scales and the normalized table")
    _add_common(p)
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("add-statement", help="append a preference statement")
    p.add_argument("kind", choices=sorted(naror.STATEMENT_ARITY))
    p.add_argument("args", nargs="+",
                   help="alternative or criterion identifiers")
    _add_common(p)
    p.add_argument("--label", default="")
    p.set_defaults(func=_cmd_add_statement)

    p = sub.add_parser("solve",
                       help="run the robust analysis and append a round")
    _add_common(p)
    p.add_argument("--jobs", type=int, default=1, help="LP parallelism")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("rank", help="print the representative ranking")
    _add_common(p)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("diagnose",
                       help="find a smallest conflicting statement set")
    _add_common(p)
    p.set_defaults(func=_cmd_diagnose)

    p = sub.add_parser("report", help="full report without mutating anything")
    _add_common(p)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("budget", help="pairwise comparison counts")
    _add_common(p)
    p.set_defaults(func=_cmd_budget)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--root", default="projects",
                   help="directory for project documents")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, store.PipelineError, naror.SolverStall,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
