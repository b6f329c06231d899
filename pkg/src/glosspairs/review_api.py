"""HTTP API for the linguist review workflow.

Serves the review queue, per-context detail, confirm/correct mutations with
optimistic concurrency (per-annotation revision counters), and progress
counts.  Optionally serves the static review frontend at the root path.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .annotate import AnnotationStore
from .errors import InvalidReviewError, ReviewConflictError, UnknownContextError


class ReviewRequest(BaseModel):
    action: str
    reviewer: str
    token_index: int | None = None
    revision: int | None = None


def _view(ann) -> dict:
    d = ann.to_json()
    d["tokens"] = ann.tokens
    return d


def make_app(store: AnnotationStore, static_dir=None) -> FastAPI:
    app = FastAPI(title="glosspairs review")
    lock = threading.Lock()

    @app.get("/api/queue")
    def queue(status: str | None = None, limit: int | None = None):
        return [_view(a) for a in store.queue(status=status, limit=limit)]

    @app.get("/api/progress")
    def progress():
        return store.progress()

    @app.get("/api/contexts/{context_id}")
    def get_context(context_id: str):
        try:
            return _view(store.get(context_id))
        except UnknownContextError as e:
            return JSONResponse({"error": str(e)}, status_code=404)

    @app.post("/api/contexts/{context_id}/annotation")
    def review(context_id: str, body: ReviewRequest):
        try:
            with lock:
                ann = store.apply_review(
                    context_id,
                    action=body.action,
                    reviewer=body.reviewer,
                    token_index=body.token_index,
                    expected_revision=body.revision,
                )
            return _view(ann)
        except UnknownContextError as e:
            return JSONResponse({"error": str(e)}, status_code=404)
        except ReviewConflictError as e:
            return JSONResponse({"error": str(e)}, status_code=409)
        except InvalidReviewError as e:
            return JSONResponse({"error": str(e)}, status_code=400)

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True),
                  name="frontend")
    return app
