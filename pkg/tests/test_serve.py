import json
import socket
import subprocess
import sys
import threading
import urllib.error
import urllib.request

import pytest

from rulemine import select, sort_by
from rulemine.artifacts import write_artifact
from rulemine.serve import make_server


@pytest.fixture(scope="module")
def server(zoo_rules_small):
    srv = make_server(zoo_rules_small, port=0)
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield srv
    srv.shutdown()
    srv.server_close()


def get(server, path):
    port = server.server_address[1]
    with urllib.request.urlopen(f"http://127.0.0.1:{port}{path}") as r:
        return json.loads(r.read())


def get_status(server, path):
    port = server.server_address[1]
    try:
        with urllib.request.urlopen(f"http://127.0.0.1:{port}{path}") as r:
            return r.status
    except urllib.error.HTTPError as e:
        return e.code


def test_meta(server, zoo_rules_small):
    meta = get(server, "/api/meta")
    assert meta["ruleCount"] == len(zoo_rules_small)
    assert meta["measures"] == ["support", "confidence", "coverage", "lift", "count"]
    assert len(meta["items"]) == 25


def test_rules_default_sort_is_confidence_desc(server):
    page = get(server, "/api/rules?limit=2000")
    confs = [r["confidence"] for r in page["rules"]]
    assert confs == sorted(confs, reverse=True)


def test_rules_pagination(server, zoo_rules_small):
    first = get(server, "/api/rules?offset=0&limit=5")
    second = get(server, "/api/rules?offset=5&limit=5")
    assert first["total"] == second["total"] == len(zoo_rules_small)
    assert len(first["rules"]) == 5 and len(second["rules"]) == 5
    assert first["rules"] != second["rules"]
    whole = get(server, "/api/rules?offset=0&limit=10")
    assert whole["rules"] == first["rules"] + second["rules"]


def test_offset_beyond_total(server, zoo_rules_small):
    page = get(server, f"/api/rules?offset={len(zoo_rules_small) + 50}&limit=10")
    assert page["total"] == len(zoo_rules_small)
    assert page["rules"] == []


def test_filters_compose_conjunctively(server, zoo_rules_small):
    page = get(server, "/api/rules?minSupport=0.3&minLift=1.5&limit=5000")
    q = zoo_rules_small.quality
    expect = sum(1 for s, l in zip(q["support"], q["lift"])
                 if s >= 0.3 and l >= 1.5)
    assert page["total"] == expect
    for r in page["rules"]:
        assert r["support"] >= 0.3 and r["lift"] >= 1.5


def test_label_filters(server, zoo_rules_small):
    page = get(server, "/api/rules?rhsContains=type%3D&limit=5000")
    expect = sum(1 for lab in zoo_rules_small.rhs_labels() if "type=" in lab)
    assert page["total"] == expect
    page = get(server, "/api/rules?lhsContains=hair&rhsContains=milk&limit=5000")
    for r in page["rules"]:
        assert any("hair" in x for x in r["lhs"])


def test_sort_param_and_asc(server, zoo_rules_small):
    page = get(server, "/api/rules?sort=lift&desc=false&limit=5000")
    lifts = [r["lift"] for r in page["rules"]]
    assert lifts == sorted(lifts)


def test_rules_match_inprocess_computation(server, zoo_rules_small):
    page = get(server, "/api/rules?minConfidence=0.9&sort=support&limit=4")
    mask = [c >= 0.9 for c in zoo_rules_small.quality["confidence"]]
    expected = sort_by(select(zoo_rules_small, mask), "support")[0:4]
    got_labels = [(tuple(r["lhs"]), tuple(r["rhs"])) for r in page["rules"]]
    want_labels = [(tuple(l), tuple(r)) for l, r in
                   zip(_sets(expected.lhs), _sets(expected.rhs))]
    assert got_labels == want_labels


def _sets(matrix):
    labels = matrix.item_info.labels
    return [[labels[j] for j in row] for row in matrix.rows()]


def test_scatter_mirrors_filters(server, zoo_rules_small):
    pts = get(server, "/api/scatter?minLift=2")
    expect = sum(1 for l in zoo_rules_small.quality["lift"] if l >= 2)
    assert len(pts) == expect
    assert [p["ruleIndex"] for p in pts] == list(range(expect))
    assert all(p["shade"] >= 2 for p in pts)


def test_graph_endpoint(server):
    g = get(server, "/api/graph?top=10&by=lift")
    rule_nodes = [n for n in g["nodes"] if n["kind"] == "rule"]
    assert len(rule_nodes) == 10
    assert all("from" in e and "to" in e for e in g["edges"])


def test_bad_query_and_unknown_path(server):
    assert get_status(server, "/api/rules?sort=nonsense") == 400
    assert get_status(server, "/api/rules?offset=x") == 400
    assert get_status(server, "/nope") == 404


def test_static_ui_serving(zoo_rules_small, tmp_path):
    (tmp_path / "index.html").write_text("<!doctype html><title>x</title>")
    srv = make_server(zoo_rules_small, port=0, ui_dir=str(tmp_path))
    t = threading.Thread(target=srv.serve_forever, daemon=True)
    t.start()
    try:
        port = srv.server_address[1]
        with urllib.request.urlopen(f"http://127.0.0.1:{port}/") as r:
            assert b"doctype" in r.read()
        status = get_status(srv, "/../secret")
        assert status == 404
    finally:
        srv.shutdown()
        srv.server_close()


def test_port_busy_exits_3(tmp_path, zoo_rules_small):
    d = write_artifact(zoo_rules_small, tmp_path / "rules")
    blocker = socket.socket()
    blocker.bind(("127.0.0.1", 0))
    port = blocker.getsockname()[1]
    try:
        r = subprocess.run(
            [sys.executable, "-m", "rulemine", "serve", str(d),
             "--port", str(port)],
            capture_output=True, text=True, timeout=30)
        assert r.returncode == 3
        assert "cannot bind" in r.stderr
    finally:
        blocker.close()
