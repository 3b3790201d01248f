"""Loads the built extension and checks a few answers.

Build first:  cargo build -p revspy-py --release --features extension-module
Override the library path with REVSPY_PY_LIB.
"""

import importlib.util
import json
import os
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parents[3]


def load():
    lib = pathlib.Path(os.environ.get("REVSPY_PY_LIB", ROOT / "target" / "release" / "librevspy_py.so"))
    if not lib.exists():
        sys.exit(f"missing {lib}; build the extension first")
    tmp = pathlib.Path(tempfile.mkdtemp())
    target = tmp / "revspy_py.so"
    shutil.copy(lib, target)
    spec = importlib.util.spec_from_file_location("revspy_py", target)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def main():
    rs = load()
    assert rs.sigma("cycle:4", 2, 3) == 2
    assert rs.sigma("star:4", 2, 3) == 1
    assert rs.winner("hypercube:2", 2, 3, 1) == "revolutionaries"
    n, edges = rs.generate("cycle:5")
    assert n == 5 and len(edges) == 5
    assert len(rs.strategies()) == 28

    t = json.loads(rs.duel("bipartite:20,20", 2, 10, 7, "rev.bipartite-m2", "spy.bipartite-m2", seed=1, horizon=50))
    assert len(t["rounds"]) == 50, t["outcome"]
    assert rs.duel("cycle:6", 2, 3, 1, "rev.random", "spy.random", seed=4) == rs.duel("cycle:6", 2, 3, 1, "rev.random", "spy.random", seed=4)

    try:
        rs.sigma("cube:3", 2, 3)
    except ValueError as e:
        assert str(e).startswith("parse_error")
    else:
        raise AssertionError("bad family accepted")
    print("smoke test passed")


if __name__ == "__main__":
    main()
