"""Smoke test for the qhforge_py extension: python python/smoke_test.py"""

import json

import qhforge_py as qh


def main():
    g = qh.Ring("g24")
    assert g.name == "g24@lambda", g.name
    assert g.rank == 6
    assert g.basis == ["x2^2", "x1*x2", "x1^2", "x2", "x1", "1"]
    assert g.mul("x2^2", "x2^2") == "1 * t^8"
    assert g.pow("x1^2 - x2", 2) == "x2^2"
    assert g.pow("x2", -1) == "x1^2 * t^-4 - x2 * t^-4"
    assert g.zero_divisor_witness("x1") == "x1^2 - 2*x2"
    try:
        g.invert("x1")
    except ArithmeticError as e:
        assert "x1^2 - 2*x2" in str(e)
    else:
        raise AssertionError("x1 is not a unit")
    try:
        g.mul("x1", "x7")
    except ValueError:
        pass
    else:
        raise AssertionError("x7 is not a generator")

    units = json.loads(g.classify_units())
    assert units["schema_version"] == qh.SCHEMA_VERSION
    texts = sorted(c["element"]["text"] for c in units["classes"])
    assert texts == ["1", "x1^2 - x2", "x2", "x2^2"], texts

    orders = json.loads(g.unit_orders())
    assert all(4 % o["order"] == 0 for o in orders["orders"])

    pd = json.loads(g.property_d())
    assert pd["status"] == "holds-certificate"
    assert pd["min_required_codeg_d"] == 10

    for rid in ["g24", "prod:cpn:1,cpn:1", "prod:cpn:1,cpn:2", "prod:cpn:2,cpn:2"]:
        v = json.loads(qh.Ring(rid).verdict())
        assert v["verdict"] == "I = 0 criteria satisfied", (rid, v)

    results = json.loads(qh.verify([1, 3, 6]))
    assert [r["id"] for r in results] == [1, 3, 6]
    assert all(r["passed"] for r in results), results

    info = json.loads(qh.Ring("cpn:2").info(table=True))
    assert len(info["table"]) == 6

    print("smoke test passed")


if __name__ == "__main__":
    main()
