#!/usr/bin/env python3
"""Record HTTP fixtures for the explorer test suite.

Starts the real qcluster service, drives the three recorded sessions the
tests replay (4-cycle walk, tracked-badge walk, chain render), and saves the
raw response bytes under tests/fixtures/.  Run from frontend/:

    python3 scripts/record_fixtures.py

Requires the qcluster package on PYTHONPATH (pip install -e ../).
"""

import json
import pathlib
import subprocess
import sys
import time
import urllib.error
import urllib.request

PORT = 8931
BASE = f"http://127.0.0.1:{PORT}"
OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def scenario(*args: str) -> bytes:
    proc = subprocess.run(
        [sys.executable, "-m", "qcluster.cli", "scenario", *args],
        capture_output=True,
        check=True,
    )
    return proc.stdout


def http(method: str, path: str, body: dict | None = None) -> tuple[int, bytes]:
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(
        BASE + path,
        data=data,
        method=method,
        headers={"Content-Type": "application/json"} if data else {},
    )
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, resp.read()
    except urllib.error.HTTPError as exc:
        return exc.code, exc.read()


def save(rel: str, raw: bytes) -> dict:
    path = OUT / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(raw)
    print(f"  {rel}  ({len(raw)} bytes)")
    return json.loads(raw)


def expect(status: int, wanted: int, what: str) -> None:
    if status != wanted:
        raise SystemExit(f"{what}: expected HTTP {wanted}, got {status}")


def record_cycle() -> None:
    print("cycle/")
    seed_raw = scenario("sl2", "--emit", "seed")
    seed = save("cycle/seed.json", seed_raw)

    status, raw = http("POST", "/api/session", {"seed": seed})
    expect(status, 200, "create")
    sid = save("cycle/create.json", raw)["id"]

    status, raw = http("GET", f"/api/session/{sid}/state")
    expect(status, 200, "state0")
    state0 = save("cycle/state0.json", raw)

    status, raw = http("POST", f"/api/session/{sid}/mutate", {"k": 1, "version": 0})
    expect(status, 200, "mutate1")
    delta1 = save("cycle/mutate1.json", raw)["delta"]

    status, raw = http("GET", f"/api/session/{sid}/state")
    expect(status, 200, "state1")
    state1 = save("cycle/state1.json", raw)
    assert delta1 == state1, "recorded delta != refetch; service broke its contract"

    status, raw = http("POST", f"/api/session/{sid}/mutate", {"k": 3, "version": 1})
    expect(status, 200, "mutate3")
    delta2 = save("cycle/mutate3.json", raw)["delta"]

    status, raw = http("GET", f"/api/session/{sid}/state")
    expect(status, 200, "state2")
    assert delta2 == save("cycle/state2.json", raw)

    status, raw = http("POST", f"/api/session/{sid}/undo", {"version": 2})
    expect(status, 200, "undo")
    undone = save("cycle/undo.json", raw)["delta"]

    status, raw = http("GET", f"/api/session/{sid}/state")
    expect(status, 200, "state after undo")
    after = save("cycle/state_after_undo.json", raw)
    assert undone == after == state1, "undo did not restore the previous snapshot"

    # a deliberately stale write, for the conflict-handling test
    status, raw = http("POST", f"/api/session/{sid}/mutate", {"k": 3, "version": 0})
    expect(status, 409, "stale mutate")
    save("conflict409.json", json.dumps({"status": status, "body": json.loads(raw)}).encode())

    assert state0["version"] == 0 and len(state0["tracked"]) == 0


def record_badges() -> None:
    print("badges/")
    bundle_raw = scenario("sl2", "--emit", "elements")
    bundle = save("badges/elements.json", bundle_raw)
    seed = json.loads(scenario("sl2", "--emit", "seed"))

    status, raw = http("POST", "/api/session", {"seed": seed})
    expect(status, 200, "create")
    sid = json.loads(raw)["id"]

    status, raw = http("GET", f"/api/session/{sid}/state")
    expect(status, 200, "state0")
    save("badges/state0.json", raw)

    casimir = bundle["elements"]["casimir"]
    status, raw = http(
        "POST",
        f"/api/session/{sid}/track",
        {"version": 0, "name": "casimir", "element": casimir},
    )
    expect(status, 200, "track casimir")
    save("badges/track_casimir.json", raw)

    xlone = {
        "seed": seed,
        "D": casimir["D"],
        "terms": [{"exp": [0, 0, 1, 0], "coeff": [[0, "1"]]}],
    }
    status, raw = http(
        "POST",
        f"/api/session/{sid}/track",
        {"version": 1, "name": "x-lone", "element": xlone},
    )
    expect(status, 200, "track x-lone")
    delta = save("badges/track_xlone.json", raw)["delta"]

    version = delta["version"]
    for step, k in enumerate((1, 3, 1, 3), start=1):
        status, raw = http(
            "POST", f"/api/session/{sid}/mutate", {"k": k, "version": version}
        )
        expect(status, 200, f"step {step}")
        delta = save(f"badges/step{step}.json", raw)["delta"]
        version = delta["version"]

    status, raw = http("GET", f"/api/session/{sid}/state")
    expect(status, 200, "final state")
    final = save("badges/state_final.json", raw)
    assert delta == final

    names = {row["name"]: row["status"] for row in final["tracked"]}
    assert names["casimir"] == "polynomial", names
    assert names["x-lone"] == "not_laurent", names


def record_chain() -> None:
    print("chain/")
    seed = save("chain/seed.json", scenario("an-chain", "-n", "5", "--emit", "seed"))

    status, raw = http("POST", "/api/session", {"seed": seed})
    expect(status, 200, "create")
    sid = json.loads(raw)["id"]

    status, raw = http("GET", f"/api/session/{sid}/state")
    expect(status, 200, "state0")
    save("chain/state0.json", raw)

    status, raw = http("POST", f"/api/session/{sid}/mutate", {"k": 1, "version": 0})
    expect(status, 200, "mutate mid")
    delta = save("chain/mutate_mid.json", raw)["delta"]

    status, raw = http("GET", f"/api/session/{sid}/state")
    expect(status, 200, "state1")
    assert delta == save("chain/state1.json", raw)


def main() -> None:
    server = subprocess.Popen(
        [sys.executable, "-m", "qcluster.cli", "serve", "--port", str(PORT)],
        stdout=subprocess.DEVNULL,
        stderr=subprocess.DEVNULL,
    )
    try:
        for _ in range(100):
            try:
                http("GET", "/api/session/0/state")
                break
            except urllib.error.URLError:
                time.sleep(0.1)
        else:
            raise SystemExit("service never came up")
        record_cycle()
        record_badges()
        record_chain()
        print("done")
    finally:
        server.terminate()
        server.wait(timeout=10)


if __name__ == "__main__":
    main()
