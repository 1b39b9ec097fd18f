"""Smoke test for the monoval_py extension.

Run after `pip install -e crates/py --no-build-isolation`, or after
`cargo build --release -p monoval-py`, in which case the shared library is
loaded from target/release.
"""

import importlib.machinery
import importlib.util
import json
import pathlib
import sys


def load():
    try:
        import monoval_py

        return monoval_py
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    for name in ("libmonoval_py.so", "libmonoval_py.dylib", "monoval_py.dll"):
        path = root / "target" / "release" / name
        if path.exists():
            loader = importlib.machinery.ExtensionFileLoader("monoval_py", str(path))
            spec = importlib.util.spec_from_file_location("monoval_py", path, loader=loader)
            mod = importlib.util.module_from_spec(spec)
            loader.exec_module(mod)
            return mod
    sys.exit("monoval_py not found; build it first")


def main():
    m = load()
    assert m.eval_valuation(["1/2", "1/2"], "x^2 + x*y^3") == "1"
    assert m.eval_valuation(["1", "1"], "0") == "inf"
    assert sorted(m.chi_forms("x^2 + y^3", [1, 1])) == [["0", "3"], ["2", "0"]]
    assert m.hilbert_samuel("x^2, y^3") == "6"
    assert m.hilbert_samuel("x^2, x*y, y^3") == "5"
    assert m.mixed_multiplicities("x, y", "x, y^2") == ["1", "1", "2"]
    assert m.alpha(["1", "2"]) == ["1", "1/2", "1/2"]
    assert m.volume(["1", "1", "1"]) == "1"
    assert m.linking_number(["1", "2"], ["1", "1"]) == "2"

    tree = {
        "nodes": [
            {"parent": None},
            {"parent": 0, "at": "free", "coord": "inf"},
            {"parent": 1, "at": "satellite", "with": 0},
        ]
    }
    text = json.dumps(tree)
    assert m.tree_multiplicities(text) == [1, 1, 2]
    assert m.intersection_matrix(text)[0][0] == -3

    csv, passed = m.report("teissier", 3, 10)
    assert passed and csv.startswith("t,alpha,")

    try:
        m.volume(["1", "x"])
    except ValueError:
        pass
    else:
        raise AssertionError("malformed weight accepted")
    print("monoval_py smoke test passed")


if __name__ == "__main__":
    main()
