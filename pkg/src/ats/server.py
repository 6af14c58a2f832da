"""HTTP+JSON service for interactive model inspection.

Read-only by design: the profiler and optional dataset are fixed at
startup, every request is stateless, and what-if edits live entirely in
the client. That makes concurrent requests trivially safe and keeps the
API usable from scripts (curl) as well as the bundled web UI, which is
served from ``ui_dir`` at the site root when one is configured.

Endpoints (all JSON, CORS enabled):

    GET  /api/metadata
    GET  /api/instances?offset=&limit=
    POST /api/predict              {"text": ...}
    POST /api/attribute/tokens     {"text": ...}
    POST /api/attribute/features   {"text": ...}
"""

from __future__ import annotations

import json
import logging
import mimetypes
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .attribution import attribute_features, attribute_tokens
from .core import Dataset
from .errors import AtsError
from .profiler import Profiler

log = logging.getLogger(__name__)

DEFAULT_PORT = 8321
MAX_PAGE_SIZE = 500

_FALLBACK_PAGE = """<!doctype html>
<html><head><meta charset="utf-8"><title>ats interpret</title></head>
<body><h1>ats interpret server</h1>
<p>No web UI build found. The JSON API is live under <code>/api</code>:</p>
<ul>
<li>GET /api/metadata</li>
<li>GET /api/instances?offset=0&amp;limit=20</li>
<li>POST /api/predict {"text": "..."}</li>
<li>POST /api/attribute/tokens {"text": "..."}</li>
<li>POST /api/attribute/features {"text": "..."}</li>
</ul></body></html>
"""


class InterpretApp:
    """Request-independent state: profiler, browsable rows, UI directory."""

    def __init__(self, profiler: Profiler, dataset: Dataset | None = None, ui_dir: Path | None = None):
        self.profiler = profiler
        self.ui_dir = Path(ui_dir).resolve() if ui_dir else None
        self.rows: list[dict] = []
        if dataset is not None:
            for inst in dataset:
                pred = profiler.predict(inst.text)
                self.rows.append(
                    {
                        "id": inst.id,
                        "text": inst.text,
                        "gold_label": inst.label,
                        "pred_label": pred.label,
                        "pred_score": pred.score,
                    }
                )

    # -- JSON endpoint bodies ------------------------------------------------

    def metadata(self) -> dict:
        return {
            "task": self.profiler.task.value,
            "label_spec": {"lo": self.profiler.label_spec.lo, "hi": self.profiler.label_spec.hi},
            "feature_names": self.profiler.pipeline.feature_names(),
            "dataset_size": len(self.rows),
        }

    def instances(self, offset: int, limit: int) -> dict:
        offset = max(0, offset)
        limit = min(max(1, limit), MAX_PAGE_SIZE)
        return {"total": len(self.rows), "items": self.rows[offset : offset + limit]}

    def predict(self, text: str) -> dict:
        pred = self.profiler.predict(text)
        body = {"score": pred.score, "label": pred.label}
        if pred.probs is not None:
            body["probs"] = list(pred.probs)
        return body

    def tokens(self, text: str) -> dict:
        attr = attribute_tokens(self.profiler, text)
        return {
            "tokens": list(attr.tokens),
            "deltas": list(attr.deltas),
            "base_score": attr.base_score,
        }

    def features(self, text: str) -> dict:
        attr = attribute_features(self.profiler, text)
        return {
            "names": list(attr.names),
            "contributions": list(attr.contributions),
            "base_score": attr.base_score,
            "bias": attr.bias,
        }


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    @property
    def app(self) -> InterpretApp:
        return self.server.app  # type: ignore[attr-defined]

    def log_message(self, fmt, *args):  # route access logs through logging
        log.debug("%s %s", self.address_string(), fmt % args)

    def _send_json(self, status: int, body: dict) -> None:
        data = json.dumps(body).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(data)))
        self._send_cors()
        self.end_headers()
        self.wfile.write(data)

    def _send_cors(self) -> None:
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")

    def _send_error_json(self, status: int, code: str, message: str) -> None:
        self._send_json(status, {"error": code, "message": message})

    def _read_text_body(self) -> str:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        try:
            body = json.loads(raw.decode("utf-8"))
        except (json.JSONDecodeError, UnicodeDecodeError):
            raise AtsError("BadRequest", "request body must be JSON")
        if not isinstance(body, dict) or not isinstance(body.get("text"), str):
            raise AtsError("BadRequest", 'request body must be {"text": "..."}')
        return body["text"]

    def _handle(self, fn) -> None:
        try:
            fn()
        except AtsError as e:
            status = 413 if e.code == "TooManyTokens" else 400
            self._send_error_json(status, e.code, e.message)
        except Exception:  # keep the worker thread alive
            log.exception("request failed")
            self._send_error_json(500, "InternalError", "unexpected server error")

    def do_OPTIONS(self):  # CORS preflight
        self.send_response(204)
        self._send_cors()
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        self._handle(self._get)

    def do_POST(self):
        self._handle(self._post)

    def _get(self) -> None:
        url = urlparse(self.path)
        if url.path == "/api/metadata":
            self._send_json(200, self.app.metadata())
        elif url.path == "/api/instances":
            q = parse_qs(url.query)
            try:
                offset = int(q.get("offset", ["0"])[0])
                limit = int(q.get("limit", ["50"])[0])
            except ValueError:
                raise AtsError("BadRequest", "offset and limit must be integers")
            self._send_json(200, self.app.instances(offset, limit))
        elif url.path.startswith("/api/"):
            self._send_error_json(404, "NotFound", f"no endpoint {url.path}")
        else:
            self._send_static(url.path)

    def _post(self) -> None:
        url = urlparse(self.path)
        routes = {
            "/api/predict": self.app.predict,
            "/api/attribute/tokens": self.app.tokens,
            "/api/attribute/features": self.app.features,
        }
        fn = routes.get(url.path)
        if fn is None:
            self._send_error_json(404, "NotFound", f"no endpoint {url.path}")
            return
        text = self._read_text_body()
        self._send_json(200, fn(text))

    def _send_static(self, path: str) -> None:
        if self.app.ui_dir is None:
            if path == "/":
                data = _FALLBACK_PAGE.encode("utf-8")
                self.send_response(200)
                self.send_header("Content-Type", "text/html; charset=utf-8")
                self.send_header("Content-Length", str(len(data)))
                self.end_headers()
                self.wfile.write(data)
            else:
                self._send_error_json(404, "NotFound", f"no file {path}")
            return
        rel = path.lstrip("/") or "index.html"
        target = (self.app.ui_dir / rel).resolve()
        if not target.is_relative_to(self.app.ui_dir) or not target.is_file():
            self._send_error_json(404, "NotFound", f"no file {path}")
            return
        ctype = mimetypes.guess_type(target.name)[0] or "application/octet-stream"
        data = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)


class InterpretServer(ThreadingHTTPServer):
    """Threaded HTTP server bound to one InterpretApp."""

    daemon_threads = True

    def __init__(self, app: InterpretApp, host: str = "127.0.0.1", port: int = DEFAULT_PORT):
        self.app = app
        super().__init__((host, port), _Handler)

    @property
    def url(self) -> str:
        host, port = self.server_address[:2]
        return f"http://{host}:{port}"

    def start_background(self) -> threading.Thread:
        """Serve in a daemon thread (used by tests)."""
        thread = threading.Thread(target=self.serve_forever, daemon=True)
        thread.start()
        return thread
