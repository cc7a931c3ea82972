import json
import math
from fractions import Fraction

import pytest

import wres


def test_part_names():
    names = wres.part_names()
    assert len(names) == 21
    assert names[0] == "I-1-A" and names[-1] == "II-5"


def test_sphere_average():
    assert wres.sphere_average(4, [2, 2, 0, 0]) == Fraction(1, 24)
    assert wres.sphere_average(4, [4, 0, 0, 0]) == Fraction(1, 8)
    assert wres.sphere_average(6, [1, 1, 0, 0, 0, 0]) == 0


def test_einstein_constant_curvature():
    out = wres.einstein(4, "e1", "e1", curvature="constant")
    assert out["match"]
    total = out["total"]
    assert total["ab_power"] == 0
    assert wres.evaluate(total, 1, 1) == 8
    assert 8 * wres.sphere_volume(4) == pytest.approx(157.91367, rel=1e-6)


def test_einstein_matches_tensor():
    r = wres.random_riemann(4, 7)
    u, v = [1, 0, Fraction(1, 2), 0], "0,2,0,-1"
    out = wres.einstein(4, u, v, curvature=r)
    g = wres.einstein_tensor(r, u, v)
    assert out["match"]
    assert wres.evaluate(out["total"], 1, 1) == Fraction(-16, 6) * g
    assert wres.evaluate(out["total"], 2, 3) == Fraction(-16, 6) * g


def test_einstein_symmetric():
    a = wres.einstein(6, "1,2,0,0,0,1", "e3", seed=4)
    b = wres.einstein(6, "e3", "1,2,0,0,0,1", seed=4)
    assert a["total"] == b["total"]


def test_metric():
    d = wres.metric(4, "e1", "e1", curvature="flat")
    assert d["ab_power"] == -1
    assert wres.evaluate(d, 1, 1) == -16
    assert wres.evaluate(wres.metric(4, "e1", "e2"), 1, 1) == 0


def test_part():
    p = wres.part("I-4", 4, "e1", "e1", curvature="constant")
    assert p["match"] and p["real"]
    assert p["computed"]["terms"] == [(0, 0, Fraction(-64), Fraction(0))]
    assert p["computed"]["ab_power"] == 2
    z = wres.part("I-2", 4, "e1", "1,1,0,0", seed=3)
    assert z["computed"]["terms"] == []


def test_verify_report():
    rep = wres.verify(dim=4, seeds=[1, 2])
    assert rep["match"] is True
    assert [i["seed"] for i in rep["instances"]] == [1, 2]
    for inst in rep["instances"]:
        assert len(inst["parts"]) == 21
        assert inst["einstein_match"] and inst["metric_match"]


def test_invalid_input():
    with pytest.raises(ValueError):
        wres.einstein(5, "e1", "e1")
    with pytest.raises(ValueError):
        wres.einstein(4, "1,2", "e1")
    with pytest.raises(ValueError):
        wres.part("I-9", 4, "e1", "e1")
    bad = json.dumps({"n": 4, "entries": [[1, 2, 1, 2, 1, 1]]})
    with pytest.raises(ValueError, match="R_ijkl = -R_jikl"):
        wres.verify(dim=4, curvature=bad)
