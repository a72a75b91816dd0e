"""Brute-force arbitration of two formula conventions.

1. Ising: does the per-vertex variable read ``e^{2βz} + e^{4βz}`` or
   ``e^{2z} + e^{4z}``?
2. Constant field through U: is the second argument ``e^{βJ}`` or
   ``e^{βJ} − 1``?

Each candidate is compared with the state-sum partition function on seeded
random instances; the script prints the worst relative error per candidate.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from vpoly import engine, potts
from vpoly.instances import GraphConfig, random_fraction, random_ising_instance, random_multigraph
from vpoly.potts import HamiltonianSpec
from vpoly.verify import rel_diff


def ising_candidates(rng, n=40):
    worst = {"with beta": 0.0, "without beta": 0.0}
    for _ in range(n):
        spec, g = random_ising_instance(rng, max_vertices=8, max_edges=9)
        spec = HamiltonianSpec.ising(Fraction(1, 2), spec.z, spec.J)
        ref = potts.partition_bruteforce(spec, g)
        model = potts.reduced_model(spec, g)
        b = float(spec.beta)
        for name, scale in (("with beta", b), ("without beta", 1.0)):
            def x(w, s=scale):
                z = complex(w.components()[0])
                return math.e ** (2 * s * z) + math.e ** (4 * s * z)

            value = model.prefactor * engine.v_numeric(model.graph, x, model.gamma)
            worst[name] = max(worst[name], rel_diff(value, ref))
    return worst


def u_candidates(rng, n=40):
    worst = {"y = e^(bJ)": 0.0, "y = e^(bJ) - 1": 0.0}
    for _ in range(n):
        g = random_multigraph(rng, GraphConfig(max_vertices=4, max_edges=5, weight_kind="unit"))
        q = rng.choice((2, 3))
        J = random_fraction(rng, 1) or Fraction(1, 2)
        spec = HamiltonianSpec.constant(q, Fraction(1), tuple(random_fraction(rng, 2) for _ in range(q)), J=J)
        ref = potts.partition_bruteforce(spec, g)
        red = potts.reduce_to_w(spec, g)
        U = engine.u_polynomial(red.graph)
        env = red.assignment(U)
        for name, y in (("y = e^(bJ)", red.y), ("y = e^(bJ) - 1", red.y - 1)):
            value = red.prefactor * U.evaluate({**env, "y": y}) if "y" in env else red.prefactor * U.evaluate(env)
            worst[name] = max(worst[name], rel_diff(value, ref))
    return worst


def main() -> None:
    rng = random.Random(7)
    print("Ising x_z at beta = 1/2")
    for name, err in ising_candidates(rng).items():
        print(f"  {name:14s} worst relative error {err:.3e}")
    print("constant field through U")
    for name, err in u_candidates(rng).items():
        print(f"  {name:14s} worst relative error {err:.3e}")


if __name__ == "__main__":
    main()
