"""HTTP JSON interface over an in-memory rule set.

Endpoints (all GET, UTF-8 JSON):

    /api/meta     -> {ruleCount, measures, items}
    /api/rules    -> {total, rules: [{lhs, rhs, support, confidence,
                      coverage, lift, count}]}
    /api/scatter  -> [{x, y, shade, ruleIndex}]
    /api/graph    -> {nodes, edges}

Filters (minSupport, minConfidence, minLift, lhsContains, rhsContains)
compose conjunctively and apply to /api/rules, /api/scatter and
/api/graph; sorting defaults to confidence descending.  Pagination is
server-side via offset/limit.  When a UI directory is configured its
static files are served at /.
"""
from __future__ import annotations

import json
import mimetypes
from http import HTTPStatus
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .assoc import Rules
from .viz import graph_data, scatter_data

__all__ = ["RuleStore", "make_server", "run_server"]

_RULE_COLUMNS = ("support", "confidence", "coverage", "lift", "count")


class BadQuery(ValueError):
    pass


class RuleStore:
    """Immutable rule set with conjunctive filtering, sorting, pagination."""

    def __init__(self, rules: Rules):
        self.rules = rules
        self.lhs_sets = [list(s) for s in _sets(rules.lhs)]
        self.rhs_sets = [list(s) for s in _sets(rules.rhs)]
        self.lhs_labels = rules.lhs_labels()
        self.rhs_labels = rules.rhs_labels()
        self.quality = rules.quality
        self.measures = list(rules.quality.keys())

    def meta(self) -> dict:
        return {
            "ruleCount": len(self.rules),
            "measures": self.measures,
            "items": list(self.rules.item_info.labels),
        }

    def _filtered(self, params: dict) -> list[int]:
        idx = range(len(self.rules))
        out = []
        min_support = _float_param(params, "minSupport")
        min_confidence = _float_param(params, "minConfidence")
        min_lift = _float_param(params, "minLift")
        lhs_contains = _str_param(params, "lhsContains")
        rhs_contains = _str_param(params, "rhsContains")
        support = self.quality.get("support")
        confidence = self.quality.get("confidence")
        lift = self.quality.get("lift")
        for i in idx:
            if min_support is not None and (support is None or support[i] < min_support):
                continue
            if min_confidence is not None and (confidence is None or confidence[i] < min_confidence):
                continue
            if min_lift is not None and (lift is None or lift[i] < min_lift):
                continue
            if lhs_contains and lhs_contains not in self.lhs_labels[i]:
                continue
            if rhs_contains and rhs_contains not in self.rhs_labels[i]:
                continue
            out.append(i)
        return out

    def _sorted(self, indices: list[int], params: dict) -> list[int]:
        sort = _str_param(params, "sort") or "confidence"
        if sort not in self.quality:
            raise BadQuery(f"unknown sort column {sort!r}")
        desc = _bool_param(params, "desc", default=True)
        col = self.quality[sort]
        return sorted(indices, key=lambda i: col[i], reverse=desc)

    def query(self, params: dict) -> list[int]:
        return self._sorted(self._filtered(params), params)

    def rules_page(self, params: dict) -> dict:
        order = self.query(params)
        offset = _int_param(params, "offset", 0)
        limit = _int_param(params, "limit", 50)
        if offset < 0 or limit < 0:
            raise BadQuery("offset and limit must be non-negative")
        page = order[offset:offset + limit]
        rules = []
        for i in page:
            obj = {"lhs": self.lhs_sets[i], "rhs": self.rhs_sets[i]}
            for c in _RULE_COLUMNS:
                if c in self.quality:
                    obj[c] = self.quality[c][i]
            rules.append(obj)
        return {"total": len(order), "rules": rules}

    def scatter(self, params: dict) -> list[dict]:
        order = self.query(params)
        selected = self.rules[order] if order else self.rules[[]]
        return [{"x": p.x, "y": p.y, "shade": p.shade, "ruleIndex": p.rule_index}
                for p in scatter_data(selected)]

    def graph(self, params: dict) -> dict:
        order = self.query(params)
        top = _int_param(params, "top", 100)
        by = _str_param(params, "by")
        if by:
            if by not in self.quality:
                raise BadQuery(f"unknown measure {by!r}")
            col = self.quality[by]
            order = sorted(order, key=lambda i: col[i], reverse=True)
        data = graph_data(self.rules[order[:top]], format="json")
        return json.loads(data)


def _sets(matrix):
    labels = matrix.item_info.labels
    return [[labels[j] for j in row] for row in matrix.rows()]


def _float_param(params, name):
    if name not in params:
        return None
    try:
        return float(params[name][0])
    except ValueError:
        raise BadQuery(f"{name} must be a number") from None


def _int_param(params, name, default):
    if name not in params:
        return default
    try:
        return int(params[name][0])
    except ValueError:
        raise BadQuery(f"{name} must be an integer") from None


def _str_param(params, name):
    return params[name][0] if name in params else None


def _bool_param(params, name, default):
    if name not in params:
        return default
    v = params[name][0].lower()
    if v in ("1", "true", "yes"):
        return True
    if v in ("0", "false", "no"):
        return False
    raise BadQuery(f"{name} must be a boolean")


_CONTENT_TYPES = {".html": "text/html", ".js": "text/javascript",
                  ".css": "text/css", ".svg": "image/svg+xml",
                  ".json": "application/json", ".map": "application/json"}


def _make_handler(store: RuleStore, ui_dir: str | None):
    ui_root = Path(ui_dir).resolve() if ui_dir else None

    class Handler(BaseHTTPRequestHandler):
        server_version = "rulemine"

        def log_message(self, *args):  # quiet by default
            pass

        def _send_json(self, obj, status=HTTPStatus.OK):
            body = json.dumps(obj, ensure_ascii=False).encode()
            self.send_response(status)
            self.send_header("Content-Type", "application/json; charset=utf-8")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def do_GET(self):
            url = urlparse(self.path)
            params = parse_qs(url.query)
            try:
                if url.path == "/api/meta":
                    return self._send_json(store.meta())
                if url.path == "/api/rules":
                    return self._send_json(store.rules_page(params))
                if url.path == "/api/scatter":
                    return self._send_json(store.scatter(params))
                if url.path == "/api/graph":
                    return self._send_json(store.graph(params))
            except BadQuery as e:
                return self._send_json({"error": str(e)}, HTTPStatus.BAD_REQUEST)
            except ValueError as e:
                return self._send_json({"error": str(e)}, HTTPStatus.BAD_REQUEST)
            if ui_root is not None:
                return self._send_static(url.path)
            return self._send_json({"error": "not found"}, HTTPStatus.NOT_FOUND)

        def _send_static(self, path: str):
            rel = path.lstrip("/") or "index.html"
            target = (ui_root / rel).resolve()
            if ui_root not in target.parents and target != ui_root:
                return self._send_json({"error": "not found"}, HTTPStatus.NOT_FOUND)
            if target.is_dir():
                target = target / "index.html"
            if not target.is_file():
                return self._send_json({"error": "not found"}, HTTPStatus.NOT_FOUND)
            ctype = _CONTENT_TYPES.get(target.suffix) or \
                mimetypes.guess_type(str(target))[0] or "application/octet-stream"
            body = target.read_bytes()
            self.send_response(HTTPStatus.OK)
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

    return Handler


def make_server(rules: Rules, host: str = "127.0.0.1", port: int = 0,
                ui_dir: str | None = None) -> ThreadingHTTPServer:
    """Bind a server (port 0 picks a free port); caller runs serve_forever."""
    store = RuleStore(rules)
    return ThreadingHTTPServer((host, port), _make_handler(store, ui_dir))


def run_server(rules: Rules, host: str = "127.0.0.1", port: int = 8432,
               ui_dir: str | None = None) -> None:
    server = make_server(rules, host, port, ui_dir)
    addr = f"http://{server.server_address[0]}:{server.server_address[1]}"
    print(f"serving {len(rules)} rules at {addr} (Ctrl-C to stop)")
    try:
        server.serve_forever()
    finally:
        server.server_close()
