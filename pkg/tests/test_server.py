# -*- coding: utf-8 -*-
"""HTTP 接口"""

import numpy as np
import pytest

from conftest import bearing_track
from simple_server import app
from sim import SequenceConfig, simulate_sequence


@pytest.fixture
def client():
    app.config["TESTING"] = True
    with app.test_client() as c:
        yield c


def test_health(client):
    resp = client.get("/api/health")
    assert resp.status_code == 200
    body = resp.get_json()
    assert body["status"] == "healthy"
    assert body["defaultOrder"] in body["orders"]


def test_solve_track(client):
    samples = [[s.tau_i, s.x] for s in bearing_track(0.3)]
    resp = client.post("/api/omega/track", json={"samples": samples, "order": "s7c6", "tau": 0.25, "track_id": "a"})
    assert resp.status_code == 200
    body = resp.get_json()
    assert body["success"] is True
    assert abs(body["data"]["omega"] - 0.3) < 1e-4
    assert body["data"]["track_id"] == "a"


def test_bad_requests(client):
    resp = client.post("/api/omega/track", json={"samples": [[0.0, 0.1], [0.1, 0.2]], "tau": 0.25})
    assert resp.status_code == 400
    assert resp.get_json()["success"] is False

    resp = client.post("/api/omega/track", data="not json", content_type="text/plain")
    assert resp.status_code == 400

    resp = client.post("/api/omega/track", json={"samples": [[0.0, 0.1]] * 5})
    assert resp.status_code == 400

    resp = client.post("/api/omega/track", json={"samples": [[0.0, 0.1], [0.1, 0.1], [0.2, 0.1]], "tau": 0.2,
                                                  "order": "s9c8"})
    assert resp.status_code == 400


def test_unknown_route(client):
    resp = client.get("/api/nothing")
    assert resp.status_code == 404
    assert resp.get_json()["success"] is False


def test_windows_endpoint(client):
    sequence = simulate_sequence(SequenceConfig(duration=0.9, omega=0.2), np.random.default_rng(8))
    records = [
        {"track_id": t.track_id, "events": [[e.t, e.u, e.v, e.s] for e in t.events]}
        for t in sequence.tracks
    ]
    payload = {
        "intrinsics": sequence.intrinsics.to_dict(),
        "tracks": records,
        "order": "s5c4",
        "window": {"length": 0.2, "stride": 0.1},
        "vote": {"min_inliers": 1},
    }
    resp = client.post("/api/omega/windows", json=payload)
    assert resp.status_code == 200
    data = resp.get_json()["data"]
    assert data["dropped"] == {}
    solved = [w for w in data["windows"] if w["omega"] is not None]
    assert solved
    assert all(abs(w["omega"] - 0.2) < 5e-3 for w in solved)


def test_windows_endpoint_requires_intrinsics(client):
    resp = client.post("/api/omega/windows", json={"intrinsics": {"focal": 700}, "tracks": []})
    assert resp.status_code == 400


def test_trajectory_endpoint(client):
    windows = [{"t_start": 0.1 * k, "t_end": 0.1 * (k + 1), "omega": 0.0} for k in range(4)]
    resp = client.post("/api/trajectory", json={"windows": windows, "scale": 0.5})
    assert resp.status_code == 200
    poses = resp.get_json()["data"]
    assert len(poses) == 5
    assert poses[-1]["y"] == pytest.approx(2.0)

    keyed = {str(w["t_start"]): 1.0 for w in windows}
    resp = client.post("/api/trajectory", json={"windows": windows, "scale": keyed})
    assert resp.get_json()["data"][-1]["y"] == pytest.approx(4.0)

    resp = client.post("/api/trajectory", json={"windows": windows, "scale": [1.0]})
    assert resp.status_code == 400


def test_trajectory_endpoint_marks_segments(client):
    windows = [{"t_start": 0.1 * k, "t_end": 0.1 * (k + 1), "omega": 0.0} for k in range(3)]
    windows[1]["omega"] = None
    resp = client.post("/api/trajectory", json={"windows": windows, "scale": 1.0})
    assert resp.status_code == 200
    poses = resp.get_json()["data"]
    assert [p["segment"] for p in poses] == [0, 0, 1, 1]

    resp = client.post("/api/trajectory", json={"windows": windows[1:2], "scale": 1.0})
    assert resp.status_code == 400
