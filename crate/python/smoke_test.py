"""Smoke test for the partact_py extension module.

Build and install first:
    pip install --no-build-isolation -e crates/partact-py
Then run with pytest or directly with python.
"""

import json

import partact_py as pa


def test_enumeration():
    assert len(pa.enumerate("NC2", 0, 4)) == 2
    assert len(pa.enumerate("ALL", 0, 4)) == 15


def test_dimensions_and_gram():
    assert pa.k_dim("NC", 4, 2) == 5
    labels, rows = pa.gram("NC", 4, 1)
    assert len(labels) == 2
    assert rows == [["1", "1"], ["1", "4"]]


def test_yd_check_and_obstruction():
    report = json.loads(pa.check_yd("NC2", "cg", 3, k=1, depth=1))
    assert all(c["status"] == "pass" for c in report["conditions"])
    decision = pa.decide_obstruction("NC2", 4)
    assert json.loads(decision)["outcome"]["result"] == "infeasible"
    assert pa.replay(decision)


def test_cli_passthrough():
    code, out, err = pa.run_cli(["rank", "--cat", "NC", "--n", "2", "--out", "json"])
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["schema"] == pa.SCHEMA
    assert doc["result"]["rank"] == 5


def test_errors_raise():
    try:
        pa.enumerate("NOPE", 0, 2)
    except ValueError:
        pass
    else:
        raise AssertionError("unknown category should raise")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"ok {name}")
