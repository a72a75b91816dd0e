"""Regenerate the bundled fixture corpus in ``src/vpoly/fixtures``."""

from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path

from vpoly import io
from vpoly.multigraph import EdgeWeight, WeightedMultigraph
from vpoly.potts import HamiltonianSpec
from vpoly.verify import reference_bundle
from vpoly.weights import SemigroupWeight

OUT = Path(__file__).resolve().parents[1] / "src" / "vpoly" / "fixtures"


def unit(n: int) -> list:
    return [(f"v{i}", SemigroupWeight.integer(1)) for i in range(1, n + 1)]


def graph(vertices, pairs) -> WeightedMultigraph:
    return WeightedMultigraph.from_lists(vertices, [(f"e{i}", u, v) for i, (u, v) in enumerate(pairs, 1)])


def corpus() -> dict[str, WeightedMultigraph]:
    Z = SemigroupWeight.integer
    return {
        "empty-3": graph(unit(3), []),
        "single-edge": graph([("v1", Z(1)), ("v2", Z(2))], [("v1", "v2")]),
        "path-3": graph(unit(3), [("v1", "v2"), ("v2", "v3")]),
        "cycle-4": graph(unit(4), [("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v1")]),
        "star-4": graph(unit(4), [("v1", "v2"), ("v1", "v3"), ("v1", "v4")]),
        "k3": graph(unit(3), [("v1", "v2"), ("v2", "v3"), ("v1", "v3")]),
        "k4": graph(unit(4), [(f"v{i}", f"v{j}") for i in range(1, 5) for j in range(i + 1, 5)]),
        "loop": graph([("v1", Z(2))], [("v1", "v1")]),
        "parallel": graph(unit(2), [("v1", "v2"), ("v1", "v2"), ("v2", "v2")]),
    }


def write(name: str, data) -> None:
    (OUT / name).write_text(json.dumps(data, indent=2) + "\n")


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for name, g in corpus().items():
        write(f"{name}.json", io.graph_to_json(g))

    # zero-field K3 at q = 2 with beta*J = ln 2, so v = e^{beta J} - 1 = 1
    write("k3-zero-field-spec.json", {"family": "zero", "q": 2, "beta": 1.0, "J": math.log(2)})

    # reference bundle: a general-field instance with couplings on the edges
    k3 = corpus()["k3"]
    J = {"e1": Fraction(1, 2), "e2": Fraction(-1, 3), "e3": Fraction(1)}
    g = k3.with_edge_weights({e: EdgeWeight.coupling(j) for e, j in J.items()})
    fields = {
        "v1": (Fraction(1), Fraction(0), Fraction(-1, 2)),
        "v2": (Fraction(0), Fraction(3, 4), Fraction(0)),
        "v3": (Fraction(-1), Fraction(1, 2), Fraction(2)),
    }
    spec = HamiltonianSpec.general(3, Fraction(1, 2), fields)
    write("reference-bundle.json", reference_bundle(spec, g))


if __name__ == "__main__":
    main()
