import pytest

from app import app


@pytest.fixture
def client():
    app.config["TESTING"] = True
    with app.test_client() as client:
        yield client


def test_roots(client):
    response = client.get("/roots?n=2&max_deg=1")
    assert response.status_code == 200
    document = response.get_json()
    assert document["n"] == 2
    assert [entry["alpha"] for entry in document["roots"]] == [[0, 0], [0, 1], [0, 0], [1, 0]]
    assert response.headers["Access-Control-Allow-Origin"] == "*"


def test_root_check(client):
    response = client.post("/root-check", json={"n": 2, "derivation": "5*x2^3 d/dx1"})
    assert response.status_code == 200
    assert response.get_json() == {
        "root": True,
        "i": 1,
        "alpha": [0, 3],
        "lambda": "5",
        "mvec": [-4],
        "character": [-4, 0],
        "derivation": "5*x2^3 d/dx1",
    }


def test_root_check_negative_verdict(client):
    response = client.post("/root-check", json={"n": 2, "derivation": "x1 d/dx1", "cap": 5})
    assert response.status_code == 200
    body = response.get_json()
    assert body["root"] is False
    assert body["reason"] == "not-LND-within-cap"
    assert "cap 5" in body["detail"]


def test_char(client):
    response = client.get("/char?n=3&beta=-1,2,0")
    assert response.status_code == 200
    body = response.get_json()
    assert body["is_root"] is True
    assert body["root_vector"]["alpha"] == [0, 2, 0]

    assert client.get("/char?n=3&beta=0,0,0").get_json()["is_root"] is False


def test_verify(client):
    response = client.post("/verify", json={"n": 2, "max_deg": 2, "ebox": 3, "budget": 100, "seed": 1})
    assert response.status_code == 200
    body = response.get_json()
    assert body["pass"] is True
    assert body["violations"] == []
    assert body["oracle"]["tested"] == 100


@pytest.mark.parametrize(
    "method,url,payload,fragment",
    [
        ("get", "/roots?n=two&max_deg=1", None, "must be an integer"),
        ("get", "/roots?n=2", None, "missing parameter"),
        ("get", "/roots?n=2&max_deg=99", None, "max degree"),
        ("post", "/root-check", {"n": 3, "derivation": "x4 d/dx1"}, "out of range"),
        ("post", "/root-check", {"n": 2, "derivation": "x1 d/dx1", "cap": 0}, "cap must be"),
        ("get", "/char?n=3&beta=1,2", None, "needs 3"),
    ],
)
def test_bad_requests(client, method, url, payload, fragment):
    response = getattr(client, method)(url, json=payload) if payload is not None else getattr(client, method)(url)
    assert response.status_code == 400
    assert fragment in response.get_json()["error"]


@pytest.mark.parametrize(
    "payload,fragment",
    [
        ({"n": 8, "max_deg": 12, "ebox": 6}, "n must be in 2..4"),
        ({"n": 3, "max_deg": 12}, "max degree must be in 0..6"),
        ({"n": 3, "max_deg": 2, "ebox": 6}, "ebox must be in 0..5"),
        ({"n": 2, "max_deg": 2, "budget": 10 ** 6}, "budget must be in 0..10000"),
        ({"n": 2, "max_deg": 2, "budget": -1}, "budget must be in 0..10000"),
    ],
)
def test_verify_rejects_oversized_requests(client, payload, fragment):
    response = client.post("/verify", json=payload)
    assert response.status_code == 400
    assert fragment in response.get_json()["error"]


def test_root_check_rejects_oversized_cap(client):
    response = client.post("/root-check", json={"n": 2, "derivation": "x1 d/dx1", "cap": 10 ** 9})
    assert response.status_code == 400
    assert "at most 256" in response.get_json()["error"]


def test_non_json_body(client):
    response = client.post("/verify", data="n=2", content_type="text/plain")
    assert response.status_code == 400
    assert "JSON object" in response.get_json()["error"]
