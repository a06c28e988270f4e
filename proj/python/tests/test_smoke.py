import pytest

import birat3

V4 = ["x", "y", "z", "u"]


def ca(eq, r=1, action=(0, 0, 0, 0)):
    return {"ambient": {"vars": V4, "index": r, "action": list(action)}, "equations": [eq], "declared_class": "cA/r"}


def test_parse_weight():
    assert birat3.parse_weight("1/3:4,2,1,3") == (3, [4, 2, 1, 3])
    assert birat3.parse_weight("1,1,1,1") == (1, [1, 1, 1, 1])
    with pytest.raises(ValueError):
        birat3.parse_weight("1/0:1")


def test_depth_of_xy_z2_u7():
    assert birat3.depth(ca("x*y + z^2 + u^7")) == {"dep": 0, "dep_gor": 3, "gdep": 3}


def test_quotient_point():
    q = {"ambient": {"vars": ["x", "y", "z"], "index": 2, "action": [1, 1, 1]}, "declared_class": "quotient"}
    assert birat3.depth(q) == {"dep": 1, "dep_gor": 0, "gdep": 1}
    code, dot = birat3.run({"command": "resolve", "model": q, "options": {"format": "dot"}})
    assert code == 0
    assert dot.count("[label=") == 3


def test_wmorphisms():
    code, out = birat3.run({"command": "wmorphisms", "model": ca("x*y + z^6 + u^2", 3, (1, 2, 1, 0))})
    assert code == 0
    assert sorted(w["weight"] for w in out["w_morphisms"]) == ["1/3(1,5,1,3)", "1/3(4,2,1,3)"]


def test_discrepancy():
    assert birat3.discrepancy(ca("x*y + z^6 + u^2", 3, (1, 2, 1, 0)), "1/3:4,2,1,3") == "1/3"


def test_exit_codes():
    code, out = birat3.run({"command": "depth", "model": ca("x*y + z^2 + u^3"), "options": {"colour": 1}})
    assert code == 2
    assert out["error"]["pointer"] == "/options/colour"
    code, out = birat3.run({"command": "depth", "model": ca("x*y + z^2 + u^9")}, budget=1)
    assert code == 3


def test_threads_do_not_change_output():
    job = {"command": "resolve", "model": {"ambient": {"vars": ["x", "y", "z"], "index": 5, "action": [1, 4, 2]},
                                           "declared_class": "quotient"}}
    assert birat3.run(job, threads=1) == birat3.run(job, threads=4)
