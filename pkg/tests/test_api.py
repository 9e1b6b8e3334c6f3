import pytest
from fastapi.testclient import TestClient

from main import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_root_lists_the_catalog(client):
    body = client.get("/").json()
    assert "z2" in body["catalog"]


def test_catalog_endpoints(client):
    assert "band2x2" in client.get("/catalog").json()["entries"]
    assert client.get("/catalog/z3").json()["order"] == 3
    response = client.get("/catalog/z7")
    assert response.status_code == 404
    assert response.json()["detail"]["code"] == "unknown_catalog_entry"


def test_unknown_path(client):
    response = client.get("/nowhere")
    assert response.status_code == 404
    assert response.json() == {"message": "Endpoint not found. Please check the URL."}


# --- Semigroups ---
def test_analyze_catalog_entry(client):
    body = client.post("/semigroups/analyze", json={"catalog": "band2x2"}).json()
    assert body["is_completely_simple"]
    assert body["r_class_count"] == 2
    assert body["schema"] == 1


def test_analyze_inline_table(client):
    body = client.post("/semigroups/analyze", json={"spec": {"order": 2, "table": [[1, 2], [2, 1]]}}).json()
    assert body["is_group"]
    assert body["identity"] == "x1"


def test_analyze_opposite(client):
    body = client.post("/semigroups/analyze", json={"catalog": "lz2", "opposite": True}).json()
    assert body["l_class_count"] == 2 and body["r_class_count"] == 1


def test_non_associative_table_is_rejected(client):
    response = client.post("/semigroups/analyze", json={"spec": {"order": 2, "table": [[2, 1], [2, 2]]}})
    assert response.status_code == 422
    assert response.json()["detail"]["code"] == "non_associative"


def test_request_needs_exactly_one_source(client):
    response = client.post("/semigroups/analyze", json={"catalog": "z2", "spec": {"order": 1, "table": [[1]]}})
    assert response.status_code == 422
    assert client.post("/semigroups/analyze", json={}).status_code == 422


def test_eggbox(client):
    response = client.post("/semigroups/eggbox", json={"catalog": "chain2"})
    assert response.status_code == 200
    assert response.text.startswith("digraph chain2")
    assert client.post("/semigroups/eggbox", json={"catalog": "z7"}).status_code == 404


# --- Resolutions and transfers ---
def test_resolution(client):
    body = client.post("/resolutions", json={"catalog": "z2", "length": 2}).json()
    assert body["ranks"] == [1, 1, 1]
    assert body["exactness"]["exact"]


def test_resolution_of_unknown_entry(client):
    assert client.post("/resolutions", json={"catalog": "z7"}).status_code == 404


def test_ideal_transfer(client):
    body = client.post("/transfers/ideal", json={"catalog": "chain2", "length": 2}).json()
    assert body["construction"] == "ideal"
    assert body["passed"]


def test_unknown_construction(client):
    response = client.post("/transfers/twist", json={"catalog": "z2"})
    assert response.status_code == 404
    assert "twist" in response.json()["detail"]


def test_left_group_transfer_rejects_a_band(client):
    response = client.post("/transfers/left-group", json={"catalog": "band2x2", "length": 1})
    assert response.status_code == 422
    assert response.json()["detail"]["code"] == "not_a_left_group"


def test_pipeline(client):
    body = client.post("/pipeline", json={"catalog": "band2x2", "length": 1}).json()
    assert body["passed"]
    assert body["idempotent_count"] == 4


def test_bi(client):
    body = client.post("/bi", json={"catalog": "z3", "length": 2}).json()
    assert body["bi_fp"]
    assert body["commutative"]


# --- FP1 and semilattices ---
def test_fp1(client):
    assert client.post("/fp1", json={"catalog": "z2"}).json()["passed"]
    body = client.post("/fp1", json={"catalog": "z2", "cap": 0}).json()
    assert not body["passed"]


def test_fp1_equivalence(client):
    body = client.post("/fp1/equivalence", json={"catalog": "band2x2"}).json()
    assert body["left"]["size"] == body["right"]["size"] == 2


def test_semilattice(client):
    body = client.post("/semilattices", json={"catalog": "chain2", "length": 2}).json()
    assert body["passed"]
    assert body["minimum"] == "bottom"


def test_semilattice_needs_a_semilattice_entry(client):
    response = client.post("/semilattices", json={"catalog": "z2", "length": 1})
    assert response.status_code == 422
    assert response.json()["detail"]["code"] == "hypothesis_violation"
