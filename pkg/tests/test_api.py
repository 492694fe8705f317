"""
Tests for API endpoints
"""
import math

import pytest
from fastapi.testclient import TestClient

from elastic_match.main import app

client = TestClient(app)

LINE = {"dim": 2, "breakpoints": [0, 1], "values": [[0, 0], [1, 1]]}
CORNER = {"dim": 2, "breakpoints": [0, 0.5, 1], "values": [[0, 0], [1, 0], [1, 1]]}


class TestRootEndpoints:
    """Test root and health endpoints"""

    def test_root(self):
        """Test root endpoint"""
        response = client.get("/")
        assert response.status_code == 200
        data = response.json()
        assert "message" in data
        assert "version" in data
        assert data["endpoints"]["distance"] == "/api/v1/distance"

    def test_health(self):
        """Test health check endpoint"""
        response = client.get("/health")
        assert response.status_code == 200
        assert response.json()["status"] == "healthy"


class TestMatchingEndpoints:
    """Distance, match and geodesic"""

    def test_distance_identical(self):
        response = client.post("/api/v1/distance", json={"curve1": CORNER, "curve2": CORNER})
        assert response.status_code == 200
        data = response.json()
        assert data["after"] == pytest.approx(0.0, abs=1e-6)
        assert data["engine"] == "exact"

    def test_distance_line_against_corner(self):
        """Same endpoints, different shapes: alignment helps but cannot close the gap"""
        response = client.post("/api/v1/distance", json={"curve1": LINE, "curve2": CORNER})
        assert response.status_code == 200
        data = response.json()
        assert 0.0 < data["after"] <= data["before"] + 1e-9

    def test_match(self):
        response = client.post("/api/v1/match", json={"curve1": LINE, "curve2": CORNER, "pareto": True})
        assert response.status_code == 200
        data = response.json()
        assert data["path"][0]["points"][0] == [0.0, 0.0]
        assert data["gamma1"]["knots"][-1] == [1.0, 1.0]
        assert data["grid"]["t_breaks"] == [0.0, 0.5, 1.0]

    def test_geodesic(self):
        body = {"curve1": LINE, "curve2": CORNER, "steps": 4, "mode": "linear"}
        response = client.post("/api/v1/geodesic", json=body)
        assert response.status_code == 200
        assert len(response.json()["curves"]) == 4

    def test_dimension_mismatch_is_unprocessable(self):
        line_1d = {"dim": 1, "breakpoints": [0, 1], "values": [[0], [1]]}
        response = client.post("/api/v1/distance", json={"curve1": LINE, "curve2": line_1d})
        assert response.status_code == 422
        data = response.json()
        assert data["error"] == "DimensionMismatchError"
        assert "timestamp" in data

    def test_invalid_curve_body(self):
        bad = {"dim": 2, "breakpoints": [0, 0.7, 0.3], "values": [[0, 0], [1, 0], [1, 1]]}
        response = client.post("/api/v1/distance", json={"curve1": bad, "curve2": LINE})
        assert response.status_code == 422

    def test_steps_out_of_range(self):
        body = {"curve1": LINE, "curve2": CORNER, "steps": 1}
        assert client.post("/api/v1/geodesic", json=body).status_code == 422


class TestExampleEndpoints:
    """Closed-form examples"""

    def test_list(self):
        response = client.get("/api/v1/examples")
        assert response.status_code == 200
        ids = [item["id"] for item in response.json()]
        assert ids == ["ex4", "ex5", "ex6", "ex7", "ex8", "ex9"]

    def test_example6(self):
        response = client.get("/api/v1/examples/ex6")
        assert response.status_code == 200
        data = response.json()
        assert data["before"] == pytest.approx(math.sqrt(6 * math.sqrt(3)), rel=1e-9)
        assert data["after"] == pytest.approx(math.sqrt(6 * math.sqrt(3) - 2 * math.sqrt(6)), rel=1e-9)
        assert data["caption_after"] == 2.0

    def test_unknown_example(self):
        response = client.get("/api/v1/examples/ex99")
        assert response.status_code == 404


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
