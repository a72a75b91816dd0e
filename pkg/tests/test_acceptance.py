"""Acceptance criteria, one test per criterion.

The pytest summary prints a PASS/FAIL line for each ``test_criterion_N``.
"""

from __future__ import annotations

import json
import math
import random
import subprocess
import sys
import time
from fractions import Fraction


from conftest import FIXTURES, triangle
from vpoly import engine, potts
from vpoly.instances import GraphConfig, PottsConfig, random_fraction, random_general_instance, random_ising_instance, random_multigraph
from vpoly.multigraph import EdgeWeight
from vpoly.polynomial import SparsePolynomial as P, gvar
from vpoly.potts import HamiltonianSpec as H
from vpoly.verify import oracle_triangle, rel_close, rel_diff

ROUTE_TOL = 1e-9
SEED = 20240611


def graph_suite(n=200, cfg=GraphConfig(max_vertices=6, max_edges=7, weight_kind="ZV")):
    rng = random.Random(SEED)
    return [random_multigraph(rng, cfg) for _ in range(n)]


def general_suite(n=100):
    rng = random.Random(SEED + 3)
    return [random_general_instance(rng, PottsConfig()) for _ in range(n)]


def test_criterion_1():
    """criterion 1: state sum == deletion-contraction on 200 random multigraphs (exact, < 10 s)"""
    suite = graph_suite()
    assert any(g.loops() for g in suite) and any(g.num_edges() >= 2 for g in suite)
    start = time.perf_counter()
    mismatches = [i for i, g in enumerate(suite) if engine.v_state_sum(g) != engine.v_deletion_contraction(g)]
    elapsed = time.perf_counter() - start
    assert mismatches == []
    assert elapsed < 10, f"took {elapsed:.1f} s"


def test_criterion_2():
    """criterion 2: two edge orderings give identical polynomials (exact)"""
    for g in graph_suite():
        ids = g.edge_ids()
        shuffled = ids[:]
        random.Random(len(ids)).shuffle(shuffled)
        a = engine.v_deletion_contraction(g, order=ids)
        assert a == engine.v_deletion_contraction(g, order=ids[::-1])
        assert a == engine.v_deletion_contraction(g, order=shuffled)


def test_criterion_3():
    """criterion 3: brute force, deletion-contraction, V and FK agree on 100 general instances (rel 1e-9, < 60 s)"""
    start = time.perf_counter()
    worst = 0.0
    for spec, g in general_suite():
        result = oracle_triangle(spec, g, ROUTE_TOL)
        assert set(result.values) == {"bruteforce", "deletion-contraction", "v", "fk"}
        assert result.ok, result
        worst = max(worst, result.max_rel)
    elapsed = time.perf_counter() - start
    assert elapsed < 60, f"took {elapsed:.1f} s"
    print(f"criterion 3: worst pairwise relative difference {worst:.2e}, {elapsed:.2f} s")


def test_criterion_4():
    """criterion 4: W from V, the W state sum, Z_T and theta^k T(1+theta, y) agree exactly on 100 graphs"""
    theta, y = P.var("theta"), P.var("y")
    rng = random.Random(SEED + 4)
    cfg = GraphConfig(max_vertices=6, max_edges=6, weight_kind="Z+")
    for _ in range(100):
        g = random_multigraph(rng, cfg)
        W_direct = engine.w_state_sum(g)
        W_from_v = engine.w_from_v(g)
        assert W_direct == W_from_v
        W_theta = W_direct.substitute({k: theta for k in W_direct.variables() if k.startswith("x[")})
        T = engine.tutte_rank_nullity(g)
        k = g.components().k
        assert W_theta == theta ** k * T.substitute({"x": 1 + theta})
        assert engine.tutte_polynomial(g, method="w") == T
        # x -> theta in V is Z_T; at gamma = y - 1 and x = theta (y - 1) it is (y-1)^|V| W(theta, y)
        V = engine.v_deletion_contraction(g)
        assert V.substitute({k: theta for k in V.variables() if k.startswith("x[")}) == engine.multivariate_tutte(g, method="state-sum")
        at = {k: theta * (y - 1) for k in V.variables() if k.startswith("x[")}
        at.update({gvar(e): y - 1 for e in g.edges})
        assert V.substitute(at) == (y - 1) ** g.num_vertices() * W_theta


def connected_suite(n=20):
    rng = random.Random(SEED + 5)
    cfg = GraphConfig(min_vertices=2, max_vertices=5, max_edges=6, weight_kind="unit", connected=True)
    out = []
    while len(out) < n:
        g = random_multigraph(rng, cfg)
        if g.num_edges() <= 6:
            out.append(g)
    return out


def test_criterion_5():
    """criterion 5: Z_T(G;q,v) = q^k v^(|V|-k) T((q+v)/v, v+1) exactly at rational v and = brute force at v = e^(bJ)-1"""
    graphs = [triangle()] + connected_suite()
    assert all(g.components().k == 1 for g in graphs)
    for q in (2, 3, 5):
        for v in (Fraction(1, 2), Fraction(2), Fraction(-1, 3), Fraction(7, 5)):
            for g in graphs:
                valued = g.with_edge_weights({e: EdgeWeight.of_value(v) for e in g.edges})
                zt = engine.multivariate_tutte(valued, q, method="both")
                assert isinstance(zt, P) and not zt.variables()
                zt = zt.terms.get((), Fraction(0))
                assert zt == potts.tutte_form(g, q, v)
            k3 = engine.multivariate_tutte(triangle().with_edge_weights({e: EdgeWeight.of_value(v) for e in ("e1", "e2", "e3")}), q)
            assert k3.terms[()] == q**3 + 3 * q**2 * v + 3 * q * v**2 + q * v**3
        for beta, J in ((Fraction(1, 2), Fraction(1)), (Fraction(1), Fraction(-1, 2))):
            for g in graphs:
                ref = potts.partition_bruteforce(H.zero(q, beta, J=J), g)
                assert rel_close(potts.classical_zero_field(g, q, beta, J), ref, ROUTE_TOL)
                assert rel_close(potts.classical_zero_field(g, q, beta, J, method="tutte"), ref, ROUTE_TOL)


def hierarchy_instance(rng):
    g = random_multigraph(rng, GraphConfig(max_vertices=4, max_edges=5, weight_kind="unit"))
    q = rng.choice((2, 3))
    beta = rng.choice((Fraction(1, 2), Fraction(1)))
    J = random_fraction(rng, 1)
    if J == 0:
        J = Fraction(1, 2)
    return g, q, beta, J


def test_criterion_6():
    """criterion 6: constant = integer-scaled at k=1, preferred = r-field at r=1, r=0 and B=0 give zero field"""
    rng = random.Random(SEED + 6)
    for _ in range(50):
        g, q, beta, J = hierarchy_instance(rng)
        V = list(g.vertices)
        B = tuple(random_fraction(rng, 2) for _ in range(q))
        ones = {v: 1 for v in V}
        const = H.constant(q, beta, B, J=J)
        scaled = H.integer_scaled(q, beta, B, ones, J=J)
        ref = potts.partition_bruteforce(const, g)
        for value in (
            potts.constant_field_reduction(const, g),
            potts.reduce_to_w(scaled, g).evaluate(),
            potts.partition_via_v(H.general(q, beta, {v: B for v in V}, J=J), g),
        ):
            assert rel_close(value, ref, ROUTE_TOL)
        z = {v: random_fraction(rng, 2) for v in V}
        pref = potts.preferred_spin_reduction(H.preferred(q, beta, z, J=J), g)
        rf = potts.r_field_reduction(H.r_field(q, beta, 1, {v: (z[v],) + (0,) * (q - 1) for v in V}, J=J), g)
        assert rel_close(pref, rf, ROUTE_TOL)
        assert rel_close(pref, potts.partition_bruteforce(H.preferred(q, beta, z, J=J), g), ROUTE_TOL)
        zero = potts.classical_zero_field(g, q, beta, J)
        r0 = potts.r_field_reduction(H.r_field(q, beta, 0, {v: (0,) * q for v in V}, J=J), g)
        b0 = potts.reduce_to_w(H.integer_scaled(q, beta, (0,) * q, {v: rng.randint(1, 3) for v in V}, J=J), g).evaluate()
        c0 = potts.constant_field_reduction(H.constant(q, beta, (0,) * q, J=J), g)
        for value in (r0, b0, c0):
            assert rel_close(value, zero, ROUTE_TOL)


def ising_statement_variant(spec, g):
    """The prefactor-times-V formula with x_z = e^{2z} + e^{4z}, i.e. without beta."""
    model = potts.reduced_model(spec, g)

    def x_no_beta(w):
        z = complex(w.components()[0])
        return math.e ** (2 * z) + math.e ** (4 * z)

    return model.prefactor * engine.v_numeric(model.graph, x_no_beta, model.gamma)


def test_criterion_7():
    """criterion 7: Ising brute force = prefactor * V on 50 instances (<= 10 vertices); beta placement and RFIM checks"""
    rng = random.Random(SEED + 7)
    without_beta_failures = 0
    for _ in range(50):
        spec, g = random_ising_instance(rng, max_vertices=10, max_edges=10)
        ref = potts.ising_partition(spec, g, method="bruteforce")
        assert rel_close(potts.ising_partition(spec, g, method="v"), ref, ROUTE_TOL)
        assert rel_close(potts.fk_expansion(spec, g).total(), ref, ROUTE_TOL)
        if spec.beta != 1 and any(spec.z.values()):
            without_beta_failures += not rel_close(ising_statement_variant(spec, g), ref, 1e-6)
        zero = H.ising(spec.beta, {v: 0 for v in g.vertices}, spec.J)
        assert rel_close(potts.ising_spin_glass(g, spec.beta, spec.J), potts.partition_bruteforce(zero, g), ROUTE_TOL)
    # x_z must carry beta: the variant without it is wrong whenever beta != 1
    assert without_beta_failures > 0
    print(f"criterion 7: the x_z variant without beta disagrees on {without_beta_failures} instances")

    # constant J on graphs with |V| != |E|: the prefactor uses J|E|
    checked = 0
    while checked < 10:
        spec, g = random_ising_instance(rng, max_vertices=6, max_edges=8, constant_J=True)
        if g.num_vertices() == g.num_edges() or spec.J == 0:
            continue
        ref = potts.partition_bruteforce(spec, g)
        assert rel_close(potts.rfim_partition(g, spec.beta, spec.J, spec.z), ref, ROUTE_TOL)
        b, J = float(spec.beta), float(spec.J)
        with_vertices = potts.rfim_partition(g, spec.beta, spec.J, spec.z) * math.exp(
            -b * J * (g.num_vertices() - g.num_edges())
        )
        assert not rel_close(with_vertices, ref, 1e-6)
        checked += 1


def test_criterion_8():
    """criterion 8: every x key of the symbolic V lies in the subset-sum set of the field vectors"""
    for spec, g in general_suite():
        model, V = potts.potts_v_polynomial(spec, g)
        keys = {k for k in V.variables() if k.startswith("x[")}
        allowed = potts.subset_sum_keys(list(model.graph.vertices.values()))
        assert keys and keys <= allowed
    # a planted key outside the set is detected
    spec, g = general_suite(1)[0]
    model, V = potts.potts_v_polynomial(spec, g)
    allowed = potts.subset_sum_keys(list(model.graph.vertices.values()))
    assert "x[QV:99/1+0/1i]" not in allowed


def cli(*args):
    return subprocess.run([sys.executable, "-m", "vpoly.cli", *map(str, args)], capture_output=True, text=True)


def test_criterion_9(tmp_path):
    """criterion 9: `verify --seed 42 --cases 50` exits 0; a corrupted fixture exits 3 and prints a replayable bundle"""
    ok = cli("verify", "--seed", 42, "--cases", 50)
    assert ok.returncode == 0, ok.stdout + ok.stderr
    assert cli("verify", "--seed", 42, "--cases", 50).stdout == ok.stdout

    bundle = json.loads((FIXTURES / "reference-bundle.json").read_text())
    assert cli("verify", "--bundle", FIXTURES / "reference-bundle.json").returncode == 0
    bundle["graph"]["edges"][1]["gamma"] = {"J": "1/3"}
    corrupt = tmp_path / "corrupt.json"
    corrupt.write_text(json.dumps(bundle))
    bad = cli("verify", "--bundle", corrupt)
    assert bad.returncode == 3
    header, body = bad.stdout.split("\n", 1)
    assert "counterexample" in header
    printed = json.loads(body)
    assert printed["graph"] == bundle["graph"] and printed["reference"] == bundle["reference"]
    assert rel_diff(complex(*printed["values"]["bruteforce"]), complex(*bundle["reference"]["Z"])) > 1e-9
    replay = tmp_path / "replay.json"
    replay.write_text(json.dumps(printed))
    again = cli("verify", "--bundle", replay)
    assert again.returncode == 3 and again.stdout == bad.stdout
