"""HTTP/JSON mission service: parse, compile, export, and mission storage.

Backend for the map UI. Missions persist one JSON document per id in a
data directory with atomic write-temp-and-rename, optimistic concurrency
via a monotonically increasing revision, and lock-free reads on immutable
in-memory snapshots. All errors use a uniform {code, message, detail}
envelope. Endpoints live under /api/v1; a static directory (the UI bundle)
can be mounted at the root.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
import time
import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from w2w.compiler import CompileError, compile_mission, export_waypoints
from w2w.model import command_to_dict, validate_mission
from w2w.nl import ClauseParseError, parse_nl
from w2w.tokens import parse_tokens, render


@dataclass(frozen=True)
class MissionRecord:
    id: str
    name: str
    utterance: str
    tokens: str
    created_at: str
    updated_at: str
    revision: int

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "utterance": self.utterance,
            "tokens": self.tokens,
            "createdAt": self.created_at,
            "updatedAt": self.updated_at,
            "revision": self.revision,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MissionRecord":
        return cls(
            id=d["id"],
            name=d.get("name", ""),
            utterance=d.get("utterance", ""),
            tokens=d["tokens"],
            created_at=d["createdAt"],
            updated_at=d["updatedAt"],
            revision=d["revision"],
        )


class NotFound(KeyError):
    pass


class RevisionConflict(Exception):
    def __init__(self, current: int, given: int):
        super().__init__(f"revision conflict: store at {current}, request gave {given}")
        self.current = current
        self.given = given


def _utcnow() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="milliseconds")


class MissionStore:
    """File-per-mission JSON store with crash-consistent atomic writes.

    Writers serialize on a lock and publish a fresh immutable snapshot
    dict; readers grab the current snapshot without locking.
    """

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._records: dict[str, MissionRecord] = {}
        for path in sorted(self.data_dir.glob("*.json")):
            with open(path, encoding="utf-8") as fh:
                rec = MissionRecord.from_dict(json.load(fh))
            self._records[rec.id] = rec

    def _write_file(self, rec: MissionRecord) -> None:
        target = self.data_dir / f"{rec.id}.json"
        fd, tmp = tempfile.mkstemp(dir=self.data_dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(rec.to_dict(), fh, indent=2, sort_keys=True)
                fh.write("\n")
            os.replace(tmp, target)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def list(self) -> list[MissionRecord]:
        return sorted(self._records.values(), key=lambda r: (r.created_at, r.id))

    def get(self, mission_id: str) -> MissionRecord:
        rec = self._records.get(mission_id)
        if rec is None:
            raise NotFound(mission_id)
        return rec

    def create(self, name: str, tokens: str, utterance: str = "") -> MissionRecord:
        now = _utcnow()
        rec = MissionRecord(
            id=uuid.uuid4().hex,
            name=name,
            utterance=utterance,
            tokens=tokens,
            created_at=now,
            updated_at=now,
            revision=1,
        )
        with self._lock:
            self._write_file(rec)
            self._records = {**self._records, rec.id: rec}
        return rec

    def update(
        self,
        mission_id: str,
        revision: int,
        tokens: str | None = None,
        name: str | None = None,
        utterance: str | None = None,
    ) -> MissionRecord:
        with self._lock:
            rec = self._records.get(mission_id)
            if rec is None:
                raise NotFound(mission_id)
            if rec.revision != revision:
                raise RevisionConflict(rec.revision, revision)
            rec = replace(
                rec,
                tokens=rec.tokens if tokens is None else tokens,
                name=rec.name if name is None else name,
                utterance=rec.utterance if utterance is None else utterance,
                updated_at=_utcnow(),
                revision=rec.revision + 1,
            )
            self._write_file(rec)
            self._records = {**self._records, rec.id: rec}
        return rec

    def delete(self, mission_id: str) -> None:
        with self._lock:
            if mission_id not in self._records:
                raise NotFound(mission_id)
            records = dict(self._records)
            del records[mission_id]
            path = self.data_dir / f"{mission_id}.json"
            if path.exists():
                path.unlink()
            self._records = records


class ParseBody(BaseModel):
    text: str


class CompileBody(BaseModel):
    tokens: str


class MissionCreateBody(BaseModel):
    tokens: str
    name: str = ""
    utterance: str = ""


class MissionUpdateBody(BaseModel):
    revision: int
    tokens: str | None = None
    name: str | None = None
    utterance: str | None = None


def _envelope(status: int, code: str, message: str, detail: dict | None = None) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"code": code, "message": message, "detail": detail or {}}
    )


def _mission_payload(tokens: str) -> dict:
    """Parse + compile tokens into the {waypoints, stats} response body."""
    mission = parse_tokens(tokens)
    waypoints, stats = compile_mission(mission)
    return {"waypoints": [w.to_dict() for w in waypoints], "stats": stats.to_dict()}


def create_app(data_dir: str | Path, static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="w2w mission service", version="1")
    store = MissionStore(data_dir)
    app.state.store = store

    @app.middleware("http")
    async def request_log(request: Request, call_next):
        t0 = time.perf_counter()
        response = await call_next(request)
        print(
            json.dumps(
                {
                    "method": request.method,
                    "path": request.url.path,
                    "status": response.status_code,
                    "ms": round(1000.0 * (time.perf_counter() - t0), 2),
                }
            ),
            flush=True,
        )
        return response

    @app.exception_handler(RequestValidationError)
    async def bad_body(request: Request, exc: RequestValidationError):
        return _envelope(400, "bad_request", "malformed request body", {"errors": exc.errors()})

    @app.exception_handler(NotFound)
    async def not_found(request: Request, exc: NotFound):
        return _envelope(404, "unknown_mission", f"no mission with id {exc.args[0]!r}")

    @app.exception_handler(RevisionConflict)
    async def conflict(request: Request, exc: RevisionConflict):
        return _envelope(
            409,
            "revision_conflict",
            str(exc),
            {"currentRevision": exc.current, "givenRevision": exc.given},
        )

    @app.exception_handler(ClauseParseError)
    async def clause_error(request: Request, exc: ClauseParseError):
        return _envelope(
            422,
            "clause_parse_error",
            exc.reason,
            {"clause": exc.clause, "offset": exc.offset, "hint": exc.hint},
        )

    @app.exception_handler(CompileError)
    async def compile_error(request: Request, exc: CompileError):
        return _envelope(422, exc.code, str(exc), {"commandIndex": exc.command_index})

    @app.exception_handler(ValueError)
    async def value_error(request: Request, exc: ValueError):
        # token syntax/semantic errors and residual validation problems
        code = "token_error" if hasattr(exc, "offset") else "invalid_value"
        detail = {"offset": exc.offset} if hasattr(exc, "offset") else {}
        return _envelope(422, code, str(exc), detail)

    @app.post("/api/v1/parse")
    async def parse_text(body: ParseBody):
        if not body.text.strip():
            return _envelope(400, "bad_request", "text must be non-empty")
        if body.text.lstrip().startswith("["):
            mission = parse_tokens(body.text)
            trace = []
        else:
            mission, parse_trace = parse_nl(body.text)
            trace = [t.to_dict() for t in parse_trace]
        diagnostics = [d.to_dict() for d in validate_mission(mission)]
        errors = [d for d in diagnostics if d["severity"] == "error"]
        tokens = "" if errors else render(mission)
        return {
            "tokens": tokens,
            "mission": {"commands": [command_to_dict(c) for c in mission.commands]},
            "trace": trace,
            "diagnostics": diagnostics,
        }

    @app.post("/api/v1/compile")
    async def compile_tokens(body: CompileBody):
        return _mission_payload(body.tokens)

    @app.get("/api/v1/missions")
    async def list_missions():
        return {"missions": [r.to_dict() for r in store.list()]}

    @app.post("/api/v1/missions", status_code=201)
    async def create_mission(body: MissionCreateBody):
        parse_tokens(body.tokens)  # 422 on invalid tokens
        rec = store.create(name=body.name, tokens=body.tokens, utterance=body.utterance)
        return rec.to_dict()

    @app.get("/api/v1/missions/{mission_id}")
    async def get_mission(mission_id: str):
        return store.get(mission_id).to_dict()

    @app.put("/api/v1/missions/{mission_id}")
    async def update_mission(mission_id: str, body: MissionUpdateBody):
        if body.tokens is not None:
            parse_tokens(body.tokens)
        rec = store.update(
            mission_id,
            revision=body.revision,
            tokens=body.tokens,
            name=body.name,
            utterance=body.utterance,
        )
        return rec.to_dict()

    @app.delete("/api/v1/missions/{mission_id}", status_code=204)
    async def delete_mission(mission_id: str):
        store.delete(mission_id)
        return Response(status_code=204)

    @app.get("/api/v1/missions/{mission_id}/export")
    async def export_mission(mission_id: str, format: str = "json"):
        rec = store.get(mission_id)
        if format not in ("json", "csv"):
            return _envelope(422, "unknown_format", f"unknown export format {format!r}")
        mission = parse_tokens(rec.tokens)
        waypoints, stats = compile_mission(mission)
        payload = export_waypoints(waypoints, stats, format, tokens=rec.tokens)
        media = "application/json" if format == "json" else "text/csv"
        return Response(
            content=payload,
            media_type=media,
            headers={"Content-Disposition": f'attachment; filename="{rec.id}.{format}"'},
        )

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
