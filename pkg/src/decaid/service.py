"""HTTP service around the engine, for the browser elicitation client.

Projects live as JSON documents in one directory, a file per id, exactly
the format the command line reads and writes.  Every mutation carries
the version the caller last saw plus the project token issued at
creation; a stale version earns 409 with the current snapshot, so no
edit is silently dropped.  Solve and rank run on worker threads and
publish immutable results under /jobs/{id}; what-if analyses never
touch the stored document.
"""

import json
import re
import secrets
import threading
import uuid
from fractions import Fraction
from pathlib import Path

from fastapi import Body, FastAPI, Header, HTTPException

from . import ahp, casestudy, naror, store

_ID_PATTERN = re.compile(r"[A-Za-z0-9][A-Za-z0-9._-]{0,63}")


def _domain(exc, *loc):
    """Map an engine error onto the 422 shape with a field path."""
    return HTTPException(
        status_code=422,
        detail=[{"loc": list(loc) or ["body"], "msg": str(exc),
                 "type": "domain_error"}],
    )


def _consistency_doc(report):
    return {
        "n": report.n,
        "lambda_max": report.lambda_max,
        "consistency_index": report.consistency_index,
        "random_index": report.random_index,
        "consistency_ratio": report.consistency_ratio,
        "acceptable": report.acceptable,
    }


class _Repo:
    """Directory of project documents plus the token sidecar."""

    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._guard = threading.Lock()
        self._locks = {}

    def lock(self, project_id: str) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(project_id, threading.Lock())

    def _path(self, project_id: str) -> Path:
        if not _ID_PATTERN.fullmatch(project_id):
            raise HTTPException(404, detail="unknown project")
        return self.root / f"{project_id}.json"

    def exists(self, project_id: str) -> bool:
        return self._path(project_id).is_file()

    def load(self, project_id: str) -> store.Project:
        path = self._path(project_id)
        if not path.is_file():
            raise HTTPException(404, detail="unknown project")
        return store.load_file(path)

    def save(self, project: store.Project):
        store.save_file(project, self._path(project.id))

    # tokens are the only state outside the documents themselves
    def _tokens(self) -> dict:
        path = self.root / "tokens.json"
        if not path.is_file():
            return {}
        return json.loads(path.read_text(encoding="utf-8"))

    def issue_token(self, project_id: str) -> str:
        token = secrets.token_hex(16)
        with self._guard:
            tokens = self._tokens()
            tokens[project_id] = token
            (self.root / "tokens.json").write_text(
                json.dumps(tokens, indent=2, sort_keys=True) + "\n",
                encoding="utf-8",
            )
        return token

    def check_token(self, project_id: str, token):
        expected = self._tokens().get(project_id, "")
        if not (token and secrets.compare_digest(expected, token)):
            raise HTTPException(403, detail="missing or wrong project token")


def create_app(root="projects") -> FastAPI:
    """Application factory; ``root`` is the project storage directory."""
    app = FastAPI(title="decision aiding service")
    repo = _Repo(root)
    jobs = {}
    jobs_guard = threading.Lock()

    def checked(project_id, version, token) -> store.Project:
        # call while holding the per-project lock
        project = repo.load(project_id)
        repo.check_token(project_id, token)
        if version != project.version:
            raise HTTPException(409, detail={
                "message": f"version conflict: expected {project.version}, "
                           f"got {version}",
                "current": store.save(project),
            })
        return project

    def spawn(worker) -> str:
        job_id = uuid.uuid4().hex
        with jobs_guard:
            jobs[job_id] = {"status": "running"}

        def body():
            try:
                result = worker()
            except (ValueError, RuntimeError) as exc:
                with jobs_guard:
                    jobs[job_id] = {"status": "failed", "error": str(exc)}
            else:
                with jobs_guard:
                    jobs[job_id] = {"status": "done", **result}

        threading.Thread(target=body, daemon=True).start()
        return job_id

    # --- project documents ------------------------------------------------

    @app.post("/projects", status_code=201)
    def create_project(body: dict = Body(...)):
        document = body.get("document")
        if document is not None:
            try:
                project = store.load(document)
            except ValueError as exc:
                raise _domain(exc, "body", "document") from None
        else:
            project_id = body.get("id", "")
            if not _ID_PATTERN.fullmatch(str(project_id)):
                raise _domain("project id must match " + _ID_PATTERN.pattern,
                              "body", "id")
            template = body.get("template", "empty")
            if template == "case-study":
                try:
                    project = casestudy.build_project(
                        round=body.get("round", "final"))
                except ValueError as exc:
                    raise _domain(exc, "body", "round") from None
                project.id = project_id
            elif template == "empty":
                project = store.new_project(project_id)
            else:
                raise _domain(f"unknown template {template!r}",
                              "body", "template")
        if repo.exists(project.id):
            raise HTTPException(409, detail={
                "message": f"project {project.id} already exists"})
        with repo.lock(project.id):
            repo.save(project)
            token = repo.issue_token(project.id)
        return {"document": store.save(project), "token": token}

    @app.get("/projects/{project_id}")
    def get_project(project_id: str):
        return store.save(repo.load(project_id))

    @app.put("/projects/{project_id}")
    def put_project(project_id: str, body: dict = Body(...),
                    x_project_token: str = Header(default="")):
        try:
            incoming = store.load(body)
        except ValueError as exc:
            raise _domain(exc, "body") from None
        if incoming.id != project_id:
            raise _domain(f"document id {incoming.id!r} does not match "
                          f"the url", "body", "id")
        with repo.lock(project_id):
            checked(project_id, incoming.version, x_project_token)
            incoming.version += 1
            repo.save(incoming)
        return {"document": store.save(incoming)}

    # --- granular mutations -------------------------------------------------

    def parse_cell(value):
        if isinstance(value, str):
            return store.parse_number(value)
        if isinstance(value, (int, float)):
            return Fraction(str(value))
        raise store.ProjectError(f"cannot parse number {value!r}")

    @app.put("/projects/{project_id}/ratings/{alternative}")
    def put_ratings(project_id: str, alternative: str,
                    body: dict = Body(...),
                    x_project_token: str = Header(default="")):
        with repo.lock(project_id):
            project = checked(project_id, body.get("version"),
                              x_project_token)
            try:
                values = {cid: parse_cell(v)
                          for cid, v in dict(body.get("values") or {}).items()}
                store.set_ratings(project, alternative, values)
            except ValueError as exc:
                raise _domain(exc, "body", "values") from None
            repo.save(project)
        return {"version": project.version}

    @app.put("/projects/{project_id}/references/{criterion}")
    def put_references(project_id: str, criterion: str,
                       body: dict = Body(...),
                       x_project_token: str = Header(default="")):
        with repo.lock(project_id):
            project = checked(project_id, body.get("version"),
                              x_project_token)
            try:
                levels = [parse_cell(v) for v in body.get("levels") or []]
                store.set_references(project, criterion, levels)
            except ValueError as exc:
                raise _domain(exc, "body", "levels") from None
            repo.save(project)
        return {"version": project.version}

    @app.put("/projects/{project_id}/matrices/{criterion}")
    def put_matrix(project_id: str, criterion: str, body: dict = Body(...),
                   x_project_token: str = Header(default="")):
        try:
            matrix = store._matrix_parse(body)
        except ValueError as exc:
            raise _domain(exc, "body") from None
        with repo.lock(project_id):
            project = checked(project_id, body.get("version"),
                              x_project_token)
            try:
                store.put_matrix(project, criterion, matrix)
                report = ahp.consistency(matrix)
                triads = ahp.inconsistent_triads(matrix)
            except ValueError as exc:
                raise _domain(exc, "body", "rows") from None
            repo.save(project)
        return {"version": project.version,
                "consistency": _consistency_doc(report),
                "triads": [[r, s, t, dev] for (r, s, t), dev in triads]}

    @app.post("/projects/{project_id}/statements")
    def post_statement(project_id: str, body: dict = Body(...),
                       x_project_token: str = Header(default="")):
        with repo.lock(project_id):
            project = checked(project_id, body.get("version"),
                              x_project_token)
            try:
                st = naror.statement(body.get("kind", ""),
                                     *body.get("args", []),
                                     label=body.get("label", ""))
                store.add_statement(project, st)
            except ValueError as exc:
                raise _domain(exc, "body", "args") from None
            repo.save(project)
        return {"version": project.version,
                "statements": len(project.statements)}

    @app.delete("/projects/{project_id}/statements/{index}")
    def delete_statement(project_id: str, index: int, version: int,
                         x_project_token: str = Header(default="")):
        with repo.lock(project_id):
            project = checked(project_id, version, x_project_token)
            try:
                store.remove_statement(project, index)
            except ValueError as exc:
                raise _domain(exc, "path", "index") from None
            repo.save(project)
        return {"version": project.version,
                "statements": len(project.statements)}

    # --- computations -------------------------------------------------------

    @app.post("/projects/{project_id}/compute/normalize")
    def compute_normalize(project_id: str):
        project = repo.load(project_id)
        try:
            _, scale_map, warnings = store.build_scales(project)
            table = store.normalized_table(project, scale_map)
        except (ValueError, RuntimeError) as exc:
            raise _domain(exc, "body") from None
        return {
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

    @app.post("/projects/{project_id}/compute/solve", status_code=202)
    def compute_solve(project_id: str,
                      x_project_token: str = Header(default="")):
        with repo.lock(project_id):
            project = repo.load(project_id)
            repo.check_token(project_id, x_project_token)
        snapshot_version = project.version

        def worker():
            bundle = store.build_report(project)
            if bundle.has_compatible_model:
                with repo.lock(project_id):
                    current = repo.load(project_id)
                    # record the round only if nobody moved the project
                    if current.version == snapshot_version:
                        store.append_round(current, bundle.epsilon_star,
                                           bundle.delta, bundle.ranking)
                        repo.save(current)
            return {"bundle": bundle.to_dict()}

        return {"job": spawn(worker)}

    @app.post("/projects/{project_id}/compute/rank", status_code=202)
    def compute_rank(project_id: str):
        project = repo.load(project_id)

        def worker():
            bundle = store.build_report(project)
            if not bundle.has_compatible_model:
                return {"epsilon_star": bundle.epsilon_star,
                        "ranking": None,
                        "diagnosis": bundle.diagnosis}
            return {
                "epsilon_star": bundle.epsilon_star,
                "ranking": [[e.alternative, e.value, e.rank]
                            for e in bundle.ranking],
            }

        return {"job": spawn(worker)}

    @app.post("/projects/{project_id}/whatif")
    def whatif(project_id: str, body: dict = Body(...)):
        project = repo.load(project_id)
        try:
            tentative = [store._statement_parse(doc)
                         for doc in body.get("statements", [])]
        except ValueError as exc:
            raise _domain(exc, "body", "statements") from None
        project.statements = list(tentative)
        try:
            bundle = store.build_report(project)
        except (ValueError, RuntimeError) as exc:
            raise _domain(exc, "body", "statements") from None
        return {"bundle": bundle.to_dict()}

    @app.get("/projects/{project_id}/relations")
    def get_relations(project_id: str):
        project = repo.load(project_id)
        try:
            table = store.normalized_table(
                project, store.build_scales(project)[1])
            system = naror.compile_statements(project.statements, table)
            _, compatible = naror.feasibility(system)
            if not compatible:
                return {"compatible": False, "alternatives": None,
                        "necessary": None, "possible": None}
            rel = naror.relations(system)
        except (ValueError, RuntimeError) as exc:
            raise _domain(exc, "body") from None
        return {
            "compatible": True,
            "alternatives": list(rel.alternatives),
            "necessary": [list(row) for row in rel.necessary],
            "possible": [list(row) for row in rel.possible],
        }

    @app.get("/jobs/{job_id}")
    def get_job(job_id: str):
        with jobs_guard:
            job = jobs.get(job_id)
            if job is None:
                raise HTTPException(404, detail="unknown job")
            return dict(job)

    return app
