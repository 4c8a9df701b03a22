"""Local HTTP facade over the template store: examples, lifted templates,
and selection sessions. The primary test suite runs fully against this API.
"""

from __future__ import annotations

import uuid
from collections import OrderedDict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel

from .corpus import pairs_from_jsonl
from .pipeline import Corpus, build_pairs, build_template, link_pairs, load_corpus
from .selection import (
    ConflictingSelection,
    EmptyHistory,
    SelectionState,
    active_counterparts,
    option_frequencies,
    render,
    select_option,
    undo,
)
from .template import LiftedTemplate, template_stats, template_to_document

MAX_SESSIONS = 256


@dataclass
class TemplateStore:
    templates: dict[str, LiftedTemplate] = field(default_factory=dict)

    def get(self, example_id: str) -> LiftedTemplate:
        return self.templates[example_id]


def build_store(
    data_dir: Path | str,
    threshold: float = 0.7,
    min_tokens: int = 50,
) -> TemplateStore:
    """Load corpus output: uses pairs.jsonl when present, otherwise runs
    clone detection and linking in process."""
    data_dir = Path(data_dir)
    corpus = load_corpus(data_dir)
    pairs_path = data_dir / "pairs.jsonl"
    if pairs_path.exists():
        pairs = pairs_from_jsonl(pairs_path.read_text())
    else:
        pairs, _ = link_pairs(
            corpus, build_pairs(corpus, threshold=threshold, min_tokens=min_tokens)
        )
    store = TemplateStore()
    for eid in sorted({p.example_id for p in pairs}):
        template, _ = build_template(corpus, eid, pairs)
        store.templates[eid] = template
    return store


class CreateSession(BaseModel):
    example_id: str


class Selection(BaseModel):
    hotspot: int
    option: int


@dataclass
class _Session:
    id: str
    example_id: str
    state: SelectionState


def create_app(store: TemplateStore) -> FastAPI:
    app = FastAPI(title="adaptlift", version="1")
    sessions: OrderedDict[str, _Session] = OrderedDict()

    def template_of(example_id: str) -> LiftedTemplate:
        if example_id not in store.templates:
            raise HTTPException(status_code=404, detail=f"unknown example {example_id}")
        return store.templates[example_id]

    def session_of(session_id: str) -> _Session:
        if session_id not in sessions:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id}")
        return sessions[session_id]

    def view_of(session: _Session) -> dict:
        template = store.templates[session.example_id]
        state = session.state
        return {
            "session_id": session.id,
            "example_id": session.example_id,
            "chosen": {str(h): o for h, o in sorted(state.chosen.items())},
            "explicit": {str(h): o for h, o in sorted(state.explicit)},
            "auto_chosen": [[h, o] for h, o in sorted(state.auto)],
            "active_counterparts": sorted(active_counterparts(template, state)),
            "frequencies": option_frequencies(template, state),
            "history_depth": len(state.history),
        }

    @app.get("/examples")
    def list_examples() -> list[dict]:
        out = []
        for eid in sorted(store.templates):
            template = store.templates[eid]
            stats = template_stats(template)
            out.append(
                {
                    "id": eid,
                    "hotspot_count": stats["hotspot_count"],
                    "lines": stats["lines"],
                    "counterparts": len(template.counterparts),
                }
            )
        return out

    @app.get("/examples/{example_id}/template")
    def get_template(example_id: str) -> dict:
        return template_to_document(template_of(example_id))

    @app.post("/sessions")
    def create_session(body: CreateSession) -> dict:
        template_of(body.example_id)
        sid = uuid.uuid4().hex
        sessions[sid] = _Session(id=sid, example_id=body.example_id, state=SelectionState())
        while len(sessions) > MAX_SESSIONS:
            sessions.popitem(last=False)
        return {"session_id": sid, "example_id": body.example_id}

    @app.post("/sessions/{session_id}/select")
    def post_selection(session_id: str, body: Selection) -> dict:
        session = session_of(session_id)
        template = store.templates[session.example_id]
        try:
            session.state = select_option(template, session.state, body.hotspot, body.option)
        except KeyError as err:
            raise HTTPException(status_code=404, detail=str(err))
        except ConflictingSelection as err:
            raise HTTPException(status_code=409, detail=str(err))
        return view_of(session)

    @app.post("/sessions/{session_id}/undo")
    def post_undo(session_id: str) -> dict:
        session = session_of(session_id)
        try:
            session.state = undo(session.state)
        except EmptyHistory as err:
            raise HTTPException(status_code=410, detail=str(err))
        return view_of(session)

    @app.get("/sessions/{session_id}/render")
    def get_render(session_id: str) -> PlainTextResponse:
        session = session_of(session_id)
        template = store.templates[session.example_id]
        return PlainTextResponse(render(template, session.state))

    @app.get("/sessions/{session_id}")
    def get_view(session_id: str) -> dict:
        return view_of(session_of(session_id))

    return app


def serve(data_dir: str, port: int, threshold: float = 0.7, min_tokens: int = 50):
    import uvicorn

    app = create_app(build_store(data_dir, threshold=threshold, min_tokens=min_tokens))
    static_dir = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if static_dir.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(static_dir), html=True), name="ui")
    uvicorn.run(app, host="127.0.0.1", port=port)
