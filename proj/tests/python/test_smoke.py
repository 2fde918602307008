import math

import pytest

import monge

CIRCLES = {
    "geometry": "euclidean",
    "dimension": 2,
    "kind": "shapes",
    "shapes": [
        {"type": "ball", "center": [0, 0], "radius": 3},
        {"type": "ball", "center": [6, 0], "radius": 2},
        {"type": "ball", "center": [0, 6], "radius": 1},
    ],
}


def test_circles_exact():
    r = monge.verify(CIRCLES, exact=True)
    assert r["verdict"] is True
    assert r["hyperplane"] == {"normal": ["1", "2"], "offset": "18"}
    assert r["residual"] == 0


def test_circles_float():
    r = monge.verify(CIRCLES)
    n, d = r["hyperplane"]["normal"], r["hyperplane"]["offset"]
    # x + 2y = 18 up to scale
    assert math.isclose(n[1] / n[0], 2.0, rel_tol=1e-12)
    assert math.isclose(d / n[0], 18.0, rel_tol=1e-12)


def test_equal_radii_raise_geometry_error():
    doc = dict(CIRCLES)
    doc["shapes"] = [dict(s) for s in CIRCLES["shapes"]]
    doc["shapes"][2]["radius"] = 3
    with pytest.raises(monge.GeometryError) as info:
        monge.verify(doc)
    assert info.value.kind == "RatioNotGreaterThanOne"
    assert info.value.indices == [1, 3]


def test_schema_error():
    with pytest.raises(monge.ScenarioError):
        monge.verify({"geometry": "euclidean"})


def test_generate_is_deterministic_and_verifies():
    for geometry in ("euclidean", "spherical", "hyperbolic"):
        a = monge.generate(geometry, 3, "edge_points", count=3, seed=9)
        assert a == monge.generate(geometry, 3, "edge_points", count=3, seed=9)
        assert all(monge.verify(doc)["verdict"] for doc in a)
        neg = monge.generate(geometry, 3, "edge_points", count=3, seed=9, perturb=0.01)
        assert not any(monge.verify(doc)["verdict"] for doc in neg)


def test_splitmix_golden():
    assert monge.splitmix64(0, 2) == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4]
    assert monge.scenario_seed(1234567, 0) == 0x599ED017FB08FC85


def test_sweep_rows():
    rows = monge.sweep("spherical", "2..3", per_cell=10)
    assert [r["dimension"] for r in rows] == [2, 3]
    assert all(r["pos_fail"] == 0 and r["neg_fail"] == 0 for r in rows)


def test_figure():
    svg = monge.figure(CIRCLES)
    assert svg == monge.figure(CIRCLES)
    assert svg.count('class="center-marker"') == 3
