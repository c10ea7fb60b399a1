"""Tests for the HTTP surface."""

import pytest
from fastapi.testclient import TestClient

from immersion_kit.api import analysis
from immersion_kit.core.exceptions import CapacityError
from immersion_kit.main import app
from immersion_kit.services.generators import complete_graph, cube_graph, path_graph, petersen_graph, two_k4_joined
from immersion_kit.services.graph_io import dump_graph


@pytest.fixture
def client():
    """Create test client instance."""
    return TestClient(app)


class TestHealth:
    """Test cases for health endpoints."""

    def test_basic(self, client):
        """Test the basic health check."""
        response = client.get("/api/v1/health/")
        assert response.status_code == 200
        assert response.json()["status"] == "healthy"

    def test_detailed(self, client):
        """Test the self-tests pass."""
        body = client.get("/api/v1/health/detailed").json()
        assert body["status"] == "healthy"
        assert body["checks"]["planarity"]["status"] == "healthy"
        assert body["checks"]["containment"]["status"] == "healthy"


class TestAnalysis:
    """Test cases for analysis endpoints."""

    def test_check_contained(self, client):
        """Test a K3,3 immersion in the Petersen graph."""
        response = client.post("/api/v1/analysis/check", json={
            "graph": dump_graph(petersen_graph()),
            "pattern": "k33",
        })
        assert response.status_code == 200
        body = response.json()
        assert body["contained"] is True
        assert body["witness"].startswith("witness weak")

    def test_check_minor(self, client):
        """Test the minor relation on the cube."""
        response = client.post("/api/v1/analysis/check", json={
            "graph": dump_graph(cube_graph()),
            "pattern": dump_graph(complete_graph(4)),
            "relation": "minor",
        })
        assert response.status_code == 200
        assert response.json()["contained"] is True

    def test_check_absent(self, client):
        """Test the cube has no K3,3 immersion."""
        response = client.post("/api/v1/analysis/check", json={"graph": dump_graph(cube_graph()), "pattern": "k33"})
        assert response.json()["contained"] is False
        assert response.json()["witness"] is None

    def test_check_malformed_graph(self, client):
        """Test unparsable graph text is rejected with 422."""
        response = client.post("/api/v1/analysis/check", json={"graph": "vertices x\n"})
        assert response.status_code == 422

    def test_check_guard(self, client):
        """Test scale guards answer 400."""
        response = client.post("/api/v1/analysis/check", json={"graph": dump_graph(path_graph(62))})
        assert response.status_code == 400
        assert "exceeded" in response.json()["detail"]

    def test_decompose(self, client):
        """Test a verified certificate is returned."""
        response = client.post("/api/v1/analysis/decompose", json={"graph": dump_graph(two_k4_joined())})
        assert response.status_code == 200
        body = response.json()
        assert body["summary"]["splits"] == 1
        assert body["summary"]["leaves"] == 2
        assert body["verification"]["passed"] is True
        assert body["certificate"].startswith("immersion-kit-cert v1")

    def test_decompose_with_witnesses(self, client):
        """Test requested witnesses are embedded and verified."""
        response = client.post("/api/v1/analysis/decompose", json={
            "graph": dump_graph(complete_graph(5)),
            "witnesses": True,
        })
        body = response.json()
        assert "immersion k5" in body["certificate"]
        assert body["verification"]["passed"] is True

    def test_decompose_guard(self, client, monkeypatch):
        """Test a scale guard tripped while decomposing answers 400."""
        def exceed(graph, witnesses=False):
            raise CapacityError("leaf_exact_max_edges", 12, graph.size)

        monkeypatch.setattr(analysis.decomposer_service, "decompose", exceed)
        response = client.post("/api/v1/analysis/decompose", json={"graph": dump_graph(complete_graph(5))})
        assert response.status_code == 400
        assert "leaf_exact_max_edges exceeded" in response.json()["detail"]

    def test_branchwidth_exact(self, client):
        """Test K4 has branch-width three."""
        response = client.post("/api/v1/analysis/branchwidth", json={
            "graph": dump_graph(complete_graph(4)),
            "exact": True,
        })
        body = response.json()
        assert (body["lower"], body["upper"], body["exact"]) == (3, 3, True)
        assert len(body["leaf_map"]) == 6


class TestMetrics:
    """Test cases for metrics endpoints."""

    def test_recent_runs_after_request(self, client):
        """Test API requests are recorded."""
        client.post("/api/v1/analysis/branchwidth", json={"graph": dump_graph(cube_graph())})
        recent = client.get("/api/v1/metrics/recent", params={"limit": 1}).json()
        assert recent[0]["operation"] == "branchwidth"
        assert client.get("/api/v1/metrics/operation/branchwidth").json()["total_runs"] >= 1

    def test_limit_bounds(self, client):
        """Test the limit must lie between 1 and 100."""
        assert client.get("/api/v1/metrics/recent", params={"limit": 0}).status_code == 400

    def test_overall_and_histogram(self, client):
        """Test aggregate endpoints answer."""
        assert client.get("/api/v1/metrics/overall").status_code == 200
        assert client.get("/api/v1/metrics/leaf-histogram").status_code == 200
