"""HTTP session service, exercised over a real socket."""

import json
import threading
import urllib.error
import urllib.request

import pytest

from qcluster.jsonio import element_to_obj, seed_to_obj
from qcluster.scenarios import standard_cycle_seed
from qcluster.service import make_server
from qcluster.torus import monomial

CYCLE = standard_cycle_seed()


@pytest.fixture(scope="module")
def base_url():
    server = make_server(port=0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_address[1]}"
    server.shutdown()
    thread.join()


def _call(base, method, path, body=None):
    data = None if body is None else json.dumps(body).encode()
    req = urllib.request.Request(
        base + path,
        data=data,
        method=method,
        headers={"Content-Type": "application/json"},
    )
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, json.loads(resp.read() or b"{}"), dict(resp.headers)
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read() or b"{}"), dict(err.headers)


def _create(base):
    status, obj, _ = _call(base, "POST", "/api/session", {"seed": seed_to_obj(CYCLE)})
    assert status == 200 and obj["version"] == 0
    return obj["id"]


def test_create_and_state(base_url):
    sid = _create(base_url)
    status, state, _ = _call(base_url, "GET", f"/api/session/{sid}/state")
    assert status == 200
    assert state["id"] == sid and state["version"] == 0 and state["path"] == []
    assert state["seed"]["rank"] == 4
    assert [e[:2] for e in state["edges"]] == [[0, 1], [1, 2], [2, 3], [3, 0]]
    assert state["c"] == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    assert state["tracked"] == []


def test_mutate_delta_equals_refetch(base_url):
    sid = _create(base_url)
    status, obj, _ = _call(
        base_url, "POST", f"/api/session/{sid}/mutate", {"k": 1, "version": 0}
    )
    assert status == 200
    delta = obj["delta"]
    assert delta["version"] == 1 and delta["path"] == [1]
    status, state, _ = _call(base_url, "GET", f"/api/session/{sid}/state")
    assert status == 200
    assert state == delta


def test_undo_restores_the_previous_version(base_url):
    sid = _create(base_url)
    _call(base_url, "POST", f"/api/session/{sid}/mutate", {"k": 1, "version": 0})
    status, obj, _ = _call(base_url, "POST", f"/api/session/{sid}/undo", {"version": 1})
    assert status == 200
    assert obj["delta"]["version"] == 0 and obj["delta"]["path"] == []
    status, obj, _ = _call(base_url, "POST", f"/api/session/{sid}/undo", {"version": 0})
    assert status == 400  # nothing left to undo


def test_tracking_and_not_laurent_transition(base_url):
    sid = _create(base_url)
    lone = element_to_obj(monomial(CYCLE, (0, 0, 1, 0)))
    status, obj, _ = _call(
        base_url,
        "POST",
        f"/api/session/{sid}/track",
        {"version": 0, "name": "lone", "element": lone},
    )
    assert status == 200
    (row,) = obj["delta"]["tracked"]
    assert row["name"] == "lone" and row["status"] == "polynomial"
    assert row["term_count"] == 1 and row["failed_at"] is None
    # one step is survivable, the second one is not
    _call(base_url, "POST", f"/api/session/{sid}/mutate", {"k": 1, "version": 1})
    status, obj, _ = _call(
        base_url, "POST", f"/api/session/{sid}/mutate", {"k": 3, "version": 2}
    )
    assert status == 200
    (row,) = obj["delta"]["tracked"]
    assert row["status"] == "not_laurent"
    assert row["failed_at"] == [1, 3]
    # undo twice and the expression is alive again
    _call(base_url, "POST", f"/api/session/{sid}/undo", {"version": 3})
    status, obj, _ = _call(base_url, "POST", f"/api/session/{sid}/undo", {"version": 2})
    (row,) = obj["delta"]["tracked"]
    assert row["status"] == "polynomial" and row["failed_at"] is None


def test_track_rejects_duplicate_names(base_url):
    sid = _create(base_url)
    body = {
        "version": 0,
        "name": "x",
        "element": element_to_obj(monomial(CYCLE, (1, 0, 1, 0))),
    }
    status, _, _ = _call(base_url, "POST", f"/api/session/{sid}/track", body)
    assert status == 200
    status, obj, _ = _call(
        base_url, "POST", f"/api/session/{sid}/track", dict(body, version=1)
    )
    assert status == 400
    assert "already tracked" in obj["error"]


def test_stale_version_conflicts(base_url):
    sid = _create(base_url)
    _call(base_url, "POST", f"/api/session/{sid}/mutate", {"k": 1, "version": 0})
    status, obj, _ = _call(
        base_url, "POST", f"/api/session/{sid}/mutate", {"k": 3, "version": 0}
    )
    assert status == 409
    assert "stale" in obj["error"]


def test_unknown_session_is_404(base_url):
    status, _, _ = _call(base_url, "GET", "/api/session/deadbeef00/state")
    assert status == 404
    status, _, _ = _call(base_url, "GET", "/api/nothing/here")
    assert status == 404


def test_bad_requests_are_400(base_url):
    sid = _create(base_url)
    status, obj, _ = _call(base_url, "POST", f"/api/session/{sid}/mutate", {"version": 0})
    assert status == 400 and "mutate needs" in obj["error"]
    status, obj, _ = _call(
        base_url, "POST", f"/api/session/{sid}/mutate", {"k": "one", "version": 0}
    )
    assert status == 400
    status, obj, _ = _call(
        base_url, "POST", f"/api/session/{sid}/mutate", {"k": 9, "version": 0}
    )
    assert status == 400
    status, obj, _ = _call(
        base_url, "POST", f"/api/session/{sid}/mutate", {"k": 0, "version": 0}
    )
    assert status == 400  # frozen index
    status, obj, _ = _call(base_url, "GET", f"/api/session/{sid}/enumerate?depth=x")
    assert status == 400 and "depth" in obj["error"]


def test_wrong_verbs_are_405(base_url):
    sid = _create(base_url)
    status, obj, _ = _call(base_url, "GET", f"/api/session/{sid}/mutate")
    assert status == 405
    status, obj, _ = _call(base_url, "POST", f"/api/session/{sid}/state", {"version": 0})
    assert status == 405
    status, obj, _ = _call(
        base_url, "POST", f"/api/session/{sid}/enumerate", {"depth": 8}
    )
    assert status == 405


def test_options_carries_cors_headers(base_url):
    status, _, headers = _call(base_url, "OPTIONS", "/api/session")
    assert status == 200
    assert headers.get("Access-Control-Allow-Origin") == "*"
    assert "POST" in headers.get("Access-Control-Allow-Methods", "")


def test_enumerate_endpoint(base_url):
    sid = _create(base_url)
    status, obj, _ = _call(base_url, "GET", f"/api/session/{sid}/enumerate?depth=8")
    assert status == 200
    assert obj["closed"] is True and obj["count"] == 4
