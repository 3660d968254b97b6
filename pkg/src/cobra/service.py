"""HTTP service hosting interactive clustering sessions.

One service instance serves one dataset.  Each session runs the merge loop
in its own worker thread, bridged to request handlers by a SessionOracle;
the handlers never block on a session's run, and the run never holds the
manager lock while waiting for a human answer.

Sessions live in memory only.  A completed session's result document is the
same shape the batch CLI writes, so a session driven by a scripted client
is comparable byte-for-byte (minus wall time) with a batch run.
"""

from __future__ import annotations

import csv
import secrets
import threading
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .constraints import Relation
from .core import run_cobra
from .dataset import Dataset, dedupe, load_csv, normalize
from .documents import dataset_fingerprint, result_document
from .oracles import OracleAbort, SessionOracle, StaleAnswerError
from .superinstances import build_super_instances


def project_2d(data: Dataset) -> np.ndarray:
    """Top-2 principal-component coordinates for every instance.

    The sign of each component is fixed by making its largest-magnitude
    loading positive, so layouts are reproducible across runs.  Data with a
    single feature keeps it as the first coordinate, second zero.
    """
    x = data.features
    centered = x - x.mean(axis=0)
    coords = np.zeros((x.shape[0], 2), dtype=np.float64)
    if x.shape[1] == 1:
        coords[:, 0] = centered[:, 0]
        return coords
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    components = vt[: min(2, vt.shape[0])].copy()
    for row in components:
        peak = int(np.argmax(np.abs(row)))
        if row[peak] < 0:
            row *= -1.0
    coords[:, : components.shape[0]] = centered @ components.T
    return coords


@dataclass
class _Session:
    id: str
    n_super: int
    seed: int
    oracle: SessionOracle
    thread: Optional[threading.Thread] = None
    phase: str = "live"  # live | completed | cancelled
    result: Optional[dict] = None
    error: Optional[str] = None
    progress: dict = field(
        default_factory=lambda: {"n_clusters": None, "oracle_count": 0}
    )


class SessionManager:
    def __init__(self, max_sessions: int):
        self._lock = threading.Lock()
        self._sessions: dict[str, _Session] = {}
        self._max_sessions = max_sessions

    def create(self, n_super: int, seed: int) -> _Session:
        with self._lock:
            live = sum(1 for s in self._sessions.values() if s.phase == "live")
            if live >= self._max_sessions:
                raise HTTPException(
                    status_code=409,
                    detail=f"session limit reached ({self._max_sessions} live)",
                )
            session = _Session(
                id=secrets.token_hex(8),
                n_super=n_super,
                seed=seed,
                oracle=SessionOracle(),
            )
            self._sessions[session.id] = session
            return session

    def get(self, session_id: str) -> _Session:
        with self._lock:
            try:
                return self._sessions[session_id]
            except KeyError:
                raise HTTPException(
                    status_code=404, detail=f"unknown session {session_id!r}"
                ) from None


def _session_state(session: _Session) -> str:
    if session.phase != "live":
        return session.phase
    if session.oracle.pending() is not None:
        return "awaiting_answer"
    return "created" if session.oracle.questions_asked == 0 else "running"


def create_app(
    data_path: str,
    label_column: Optional[str] = None,
    delimiter: str = ",",
    n_super: int = 25,
    seed: int = 0,
    ui_dir: Optional[str] = None,
    max_sessions: int = 8,
) -> FastAPI:
    raw = load_csv(data_path, label_column=label_column, delimiter=delimiter)
    deduped = dedupe(raw)
    prepared = normalize(deduped)
    with open(data_path, newline="") as fh:
        header = [h.strip() for h in next(csv.reader(fh, delimiter=delimiter))]
    feature_names = [h for h in header if h != label_column]
    fingerprint = dataset_fingerprint(data_path)
    coords = project_2d(prepared)
    base_config = {
        "data": data_path,
        "label_column": label_column,
        "delimiter": delimiter,
    }

    app = FastAPI(title="interactive constraint clustering")
    manager = SessionManager(max_sessions)
    projections: dict[tuple[int, int], object] = {}
    projections_lock = threading.Lock()

    def super_instances_for(ns: int, sd: int):
        with projections_lock:
            key = (ns, sd)
            if key not in projections:
                projections[key] = build_super_instances(prepared, ns, sd)
            return projections[key]

    def pair_view(instance_id: int) -> dict:
        return {
            "id": instance_id,
            "features": [float(v) for v in deduped.features[instance_id]],
            "xy": [float(coords[instance_id, 0]), float(coords[instance_id, 1])],
        }

    def run_session(session: _Session) -> None:
        def note_progress(n_clusters: int, oracle_count: int) -> None:
            session.progress = {
                "n_clusters": n_clusters,
                "oracle_count": oracle_count,
            }

        try:
            started = time.perf_counter()
            run = run_cobra(
                prepared,
                session.n_super,
                session.oracle,
                session.seed,
                super_instances=super_instances_for(session.n_super, session.seed),
                progress=note_progress,
            )
            wall_time = time.perf_counter() - started
            config = dict(base_config, n_super=session.n_super, seed=session.seed)
            session.result = result_document(config, run, wall_time, fingerprint)
            session.progress = {
                "n_clusters": run.clustering.n_clusters,
                "oracle_count": run.query_log.oracle_count,
            }
            session.phase = "completed"
        except OracleAbort:
            session.phase = "cancelled"
        except Exception as exc:
            session.error = str(exc)
            session.phase = "cancelled"
            session.oracle.cancel()

    @app.get("/dataset/meta")
    def dataset_meta():
        return {
            "data": data_path,
            "n": prepared.n,
            "n_features": prepared.n_features,
            "feature_names": feature_names,
            "default_n_super": n_super,
            "default_seed": seed,
            "max_sessions": max_sessions,
        }

    @app.get("/dataset/projection")
    def dataset_projection(session_id: Optional[str] = None):
        if session_id is None:
            ns, sd = n_super, seed
        else:
            session = manager.get(session_id)
            ns, sd = session.n_super, session.seed
        si = super_instances_for(ns, sd)
        membership = si.membership(prepared.n)
        return {
            "n_super": si.n_super,
            "medoids": list(si.medoids),
            "points": [
                {
                    "id": i,
                    "xy": [float(coords[i, 0]), float(coords[i, 1])],
                    "super_instance": int(membership[i]),
                }
                for i in range(prepared.n)
            ],
        }

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        body = await _json_body(request)
        ns = _int_field(body, "n_super", n_super)
        sd = _int_field(body, "seed", seed)
        if not 2 <= ns <= prepared.n:
            raise HTTPException(
                status_code=400,
                detail=f"n_super must be in [2, {prepared.n}], got {ns}",
            )
        session = manager.create(ns, sd)
        session.thread = threading.Thread(
            target=run_session, args=(session,), daemon=True
        )
        session.thread.start()
        return {"id": session.id}

    @app.get("/sessions/{session_id}")
    def session_view(session_id: str):
        session = manager.get(session_id)
        state = _session_state(session)
        view = {
            "id": session.id,
            "state": state,
            "config": {"n_super": session.n_super, "seed": session.seed},
            "progress": session.progress,
            "result_available": session.result is not None,
        }
        if session.error:
            view["error"] = session.error
        return view

    @app.get("/sessions/{session_id}/pending")
    def session_pending(session_id: str):
        session = manager.get(session_id)
        pending = session.oracle.pending()
        state = _session_state(session)
        if state == "awaiting_answer" and pending is not None:
            pending_seq, id_a, id_b = pending
            return {
                "state": state,
                "seq": pending_seq,
                "a": pair_view(id_a),
                "b": pair_view(id_b),
                "progress": session.progress,
            }
        view = {"state": state, "progress": session.progress}
        if state == "completed":
            view["summary"] = {
                "oracle_count": session.result["oracle_count"],
                "n_clusters_found": session.result["n_clusters_found"],
            }
        return view

    @app.post("/sessions/{session_id}/answer")
    async def session_answer(session_id: str, request: Request):
        session = manager.get(session_id)
        body = await _json_body(request)
        seq = _int_field(body, "seq", None)
        answer_text = body.get("answer")
        try:
            answer = Relation(answer_text)
        except ValueError:
            raise HTTPException(
                status_code=400,
                detail=f"answer must be 'must-link' or 'cannot-link', got {answer_text!r}",
            ) from None
        if answer is Relation.UNKNOWN:
            raise HTTPException(status_code=400, detail="answer cannot be 'unknown'")
        if session.phase != "live":
            raise HTTPException(
                status_code=409, detail=f"session is {session.phase}"
            )
        try:
            session.oracle.submit(seq, answer)
        except StaleAnswerError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from None
        return {"accepted": True, "seq": seq}

    @app.post("/sessions/{session_id}/cancel")
    def session_cancel(session_id: str):
        session = manager.get(session_id)
        if session.phase == "completed":
            raise HTTPException(status_code=409, detail="session already completed")
        session.oracle.cancel()
        if session.thread is not None:
            session.thread.join(timeout=5.0)
        session.phase = "cancelled"
        return {"state": "cancelled"}

    @app.get("/sessions/{session_id}/result")
    def session_result(session_id: str):
        session = manager.get(session_id)
        if session.result is None:
            raise HTTPException(
                status_code=409,
                detail=f"session is {_session_state(session)}, not completed",
            )
        return JSONResponse(session.result)

    if ui_dir is not None:
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


async def _json_body(request: Request) -> dict:
    try:
        body = await request.json()
    except Exception:
        raise HTTPException(status_code=400, detail="body must be JSON") from None
    if not isinstance(body, dict):
        raise HTTPException(status_code=400, detail="body must be a JSON object")
    return body


def _int_field(body: dict, name: str, default) -> int:
    value = body.get(name, default)
    if value is None or isinstance(value, bool) or not isinstance(value, int):
        raise HTTPException(
            status_code=400, detail=f"{name!r} must be an integer, got {value!r}"
        )
    return value
