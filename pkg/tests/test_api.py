import pytest
from fastapi.testclient import TestClient

import config
from main import app


@pytest.fixture
def client(monkeypatch):
    monkeypatch.setattr(config, "HTTP_ENABLED", True)
    return TestClient(app)


def test_disabled_surface_answers_404(monkeypatch):
    monkeypatch.setattr(config, "HTTP_ENABLED", False)
    assert TestClient(app).get("/catalog").status_code == 404


def test_catalog(client):
    response = client.get("/catalog", params={"quiver": "A2", "prime": 3})
    assert response.status_code == 200
    data = response.json()
    assert data["p"] == 3
    assert len(data["catalog"]) == 3


def test_bad_prime_is_a_client_error(client):
    assert client.get("/catalog", params={"prime": 4}).status_code == 400


def test_table(client):
    params = {"quiver": "A2", "algebra": "dhall-dr", "shifts": "0", "max_summands": 1, "max_dim": 2}
    data = client.get("/table", params=params).json()
    assert data["algebra"] == "dhall-dr"
    assert data["basis"][0] == "0"


def test_check(client):
    params = {"suite": "oracle", "quiver": "A2", "shifts": "0", "max_summands": 1, "max_dim": 2}
    data = client.get("/check", params=params).json()
    assert data["passed"] is True
    assert data["checks"]
