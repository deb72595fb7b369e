"""Smoke test for the `iim` extension module.

Uses an installed `iim` if present, otherwise loads the library built by
`cargo build --release -p iim-py`.
"""

import importlib.machinery
import importlib.util
import json
import math
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    try:
        import iim

        return iim
    except ImportError:
        pass
    for profile in ("release", "debug"):
        for name in ("libiim.so", "libiim.dylib", "iim.dll"):
            path = ROOT / "target" / profile / name
            if path.exists():
                loader = importlib.machinery.ExtensionFileLoader("iim", str(path))
                spec = importlib.util.spec_from_loader("iim", loader)
                module = importlib.util.module_from_spec(spec)
                loader.exec_module(module)
                sys.modules["iim"] = module
                return module
    sys.exit("iim module not found; run `cargo build --release -p iim-py` first")


def main():
    iim = load()

    k2 = iim.IimGraph.generate(iim.Graph.complete(1), "L1=0x0")
    assert k2.graph == iim.Graph.complete(2)
    assert iim.IimGraph.generate(iim.Graph.complete(1), "L1=0x1").graph.edge_count == 0

    h = iim.IimGraph.generate(iim.Graph.complete(1), "L1=0x1;L2=0x2;L3=0xD")
    assert (h.n, h.n0, h.top_level) == (8, 1, 3)
    assert h.kind(0) == "original" and h.kind(1) == "anticlone"
    assert h.lineage(7) == [7, 3, 1, 0]
    back = iim.IimGraph.from_json(h.to_json())
    assert back.graph == h.graph and back.choices == h.choices

    a = iim.IimGraph.sample(iim.Graph.named("P4"), 2, 0.5, 42)
    b = iim.IimGraph.sample(iim.Graph.named("P4"), 2, 0.5, 42)
    assert a.graph.edges() == b.graph.edges()

    p4 = iim.Graph.path(4)
    assert iim.diameter(p4) == 3
    assert iim.domination_number(p4)[0] == 2
    assert iim.clique_number(iim.Graph.complete(4))[0] == 4
    assert iim.chromatic_number(iim.Graph.cycle(5))[0] == 3
    assert math.isclose(iim.spectral_gap(iim.Graph.complete(4)), 1 / 3, abs_tol=1e-9)
    ev = iim.spectrum(iim.Graph.cycle(4))
    assert all(math.isclose(x, y, abs_tol=1e-9) for x, y in zip(ev, [0, 1, 1, 2]))
    assert iim.diameter(iim.Graph.empty(2)) is None

    cycle = iim.hamiltonian_cycle(iim.Graph.cycle(6))
    assert sorted(cycle) == list(range(6))
    m = iim.contains_induced(iim.Graph.cycle(5), iim.Graph.path(3))
    assert m is not None and len(set(m)) == 3

    host = iim.IimGraph.sample(iim.Graph.complete(2), 3, 0.5, 1)
    out = iim.find_induced(host, iim.Graph.empty(2))
    assert out["status"] in ("embedded", "progress")

    report = iim.verify("diameter", iim.Graph.named("P4"), 1)
    assert report["passed"] and report["max_observed"] == 5.0
    report = iim.verify("clique-bound", iim.Graph.complete(1), 6, samples=50, rng=3)
    assert report["passed"] and report["parameters"]["mode"] == "sampled"

    try:
        iim.Graph(3, [(0, 0)])
    except iim.GraphError:
        pass
    else:
        raise AssertionError("self-loop accepted")

    print(json.dumps({"module": iim.__name__, "version": iim.__version__, "status": "ok"}))


if __name__ == "__main__":
    main()
