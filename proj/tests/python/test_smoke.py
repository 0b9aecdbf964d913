import pytest

import superquant

FLAT = {
    "chart": {"even": ["x1", "x2"], "odd": []},
    "symbol": {"degree": 1, "delta": "0", "terms": [{"indices": [1], "coeff": "x1"}]},
    "density": {"weight": "1", "value": "x1^2 + x2"},
    "lambda": "1",
    "mu": "1",
}


def test_quantize_flat_example():
    op = superquant.quantize(FLAT)
    terms = {tuple(t["alpha"]): t["coeff"] for t in op["terms"]}
    assert terms == {(1, 0): "x1", (0, 0): "1"}
    assert op["order"] == 1


def test_apply_and_lift():
    assert superquant.apply(FLAT) == {"weight": "1", "value": "x2 + 3*x1^2"}
    lifted = superquant.lift(FLAT)
    assert {tuple(t["indices"]) for t in lifted["terms"]} == {(0,), (1,)}


def test_invariance_on_super_chart():
    spec = {
        "chart": {"even": ["x1", "x2"], "odd": ["x3", "x4"]},
        "connection": {"gamma": [{"i": 1, "j": 3, "k": 4, "value": "x1"}, {"i": 1, "j": 1, "k": 2, "value": "x2"}]},
        "symbol": {"degree": 2, "delta": "1/2", "terms": [{"indices": [1, 2], "coeff": "x1"}, {"indices": [3, 4], "coeff": "x2"}]},
        "alpha": {"x1": "x2", "x3": "x4"},
        "lambda": "0",
        "mu": "1/2",
    }
    assert superquant.check_invariance(spec)


def test_special_family():
    spec = {
        "chart": {"even": ["x"], "odd": ["s", "t"]},
        "connection": {"gamma": [{"i": 1, "j": 2, "k": 3, "value": "x"}]},
        "symbol": {"degree": 1, "delta": "0", "terms": [{"indices": [1], "coeff": "x"}]},
        "alpha": {"x": "x^2"},
        "lambda": "1/2",
        "mu": "1/2",
    }
    for t in ("0", "1", "-2/3"):
        assert superquant.check_invariance(spec, t)
    with pytest.raises(superquant.PreconditionError):
        superquant.quantize(spec)


def test_criticality_and_errors():
    report = superquant.criticality(2, 0, "1", 1)
    assert report["critical"] and report["zeros"] == [(1, 1)]
    critical = dict(FLAT, symbol=dict(FLAT["symbol"], delta="1"), mu="2")
    with pytest.raises(superquant.PreconditionError):
        superquant.quantize(critical)
    with pytest.raises(superquant.InputError):
        superquant.quantize({"chart": {"even": ["x"], "odd": []}, "bogus": 1})


def test_ansatz_verdicts():
    assert not superquant.ansatz_degree2(1, 0, "1/2", "1/2")["solvable"]
    plane = superquant.ansatz_degree2(2, 0, "0", "0")
    assert plane["solvable"] and plane["solution"] == ("1/5", "0", "0")
