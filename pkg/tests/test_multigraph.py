from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import Z, build, triangle
from vpoly.errors import DanglingEndpoint, DuplicateId, LoopContraction, MixedWeightKinds, UnknownEdge
from vpoly.instances import GraphConfig, random_multigraph
from vpoly.multigraph import EdgeWeight, WeightedMultigraph, components, contract_edge, delete_edge
from vpoly.weights import SemigroupWeight, total


def test_delete_single_edge():
    g = build([1, 2], [("v1", "v2")])
    h = delete_edge(g, "e1")
    assert h.num_edges() == 0
    assert dict(h.vertices) == {"v1": Z(1), "v2": Z(2)}


def test_delete_parallel_and_loop():
    g = build([1, 1], [("v1", "v2"), ("v1", "v2"), ("v1", "v1")])
    h = delete_edge(g, "e1")
    assert set(h.edges) == {"e2", "e3"} and {h.edges["e2"].u, h.edges["e2"].v} == {"v1", "v2"}
    h = delete_edge(g, "e3")
    assert h.vertices["v1"] == Z(1)


def test_delete_unknown():
    with pytest.raises(UnknownEdge):
        delete_edge(build([1], []), "e9")


def test_contract_path():
    g = build([1, 2], [("v1", "v2")])
    h = contract_edge(g, "e1")
    assert dict(h.vertices) == {"v1": Z(3)} and h.num_edges() == 0


def test_contract_parallel_becomes_loop():
    g = build([1, 1], [("v1", "v2"), ("v1", "v2")])
    h = contract_edge(g, "e1")
    assert list(h.edges) == ["e2"] and h.edges["e2"].is_loop


def test_contract_loop_rejected():
    with pytest.raises(LoopContraction):
        contract_edge(build([1], [("v1", "v1")]), "e1")


def test_merged_id_is_minimum():
    g = WeightedMultigraph.from_lists([("b", Z(1)), ("a", Z(2)), ("c", Z(5))], [("e1", "b", "a"), ("e2", "b", "c")])
    h = contract_edge(g, "e1")
    assert dict(h.vertices) == {"a": Z(3), "c": Z(5)}
    assert {h.edges["e2"].u, h.edges["e2"].v} == {"a", "c"}


def test_components_examples():
    g = triangle()
    r = components(g, [])
    assert (r.k, r.r, r.n) == (3, 0, 0) and sorted(w.entries for w in r.weights) == [1, 1, 1]
    r = components(g, ["e1", "e2", "e3"])
    assert (r.k, r.r, r.n) == (1, 2, 1) and list(r.weights) == [Z(3)]
    r = components(build([4], [("v1", "v1")]), ["e1"])
    assert (r.k, r.r, r.n) == (1, 0, 1)
    with pytest.raises(UnknownEdge):
        components(g, ["nope"])


def test_validation():
    with pytest.raises(DanglingEndpoint):
        WeightedMultigraph.from_lists([("v1", Z(1))], [("e1", "v1", "v2")])
    with pytest.raises(MixedWeightKinds):
        WeightedMultigraph.from_lists([("v1", Z(1)), ("v2", SemigroupWeight.integer_vector([1]))])
    with pytest.raises(DuplicateId):
        WeightedMultigraph.from_lists([("v1", Z(1)), ("v1", Z(2))])
    with pytest.raises(DuplicateId):
        WeightedMultigraph.from_lists([("v1", Z(1))], [("e1", "v1", "v1"), ("e1", "v1", "v1")])


def test_auto_edge_ids():
    g = WeightedMultigraph.from_lists([("v1", Z(1)), ("v2", Z(1))], [("e1", "v1", "v2"), (None, "v1", "v2")])
    assert g.edge_ids() == ["e1", "e2"]


def test_natural_edge_order():
    g = build([1, 1], [("v1", "v2")] * 11)
    assert g.edge_ids()[:3] == ["e1", "e2", "e3"] and g.edge_ids()[-1] == "e11"


def test_equality_ignores_orientation():
    a = WeightedMultigraph.from_lists([("v1", Z(1)), ("v2", Z(1))], [("e1", "v1", "v2")])
    b = WeightedMultigraph.from_lists([("v1", Z(1)), ("v2", Z(1))], [("e1", "v2", "v1")])
    assert a == b and hash(a) == hash(b)
    c = a.with_edge_weights({"e1": EdgeWeight.of_value(2)})
    assert a != c


seeds = st.integers(0, 10**9)
CFG = GraphConfig(max_vertices=6, max_edges=7)


def subsets(g, rng):
    return [e for e in g.edge_ids() if rng.random() < 0.5]


@given(seeds)
def test_component_invariants(seed):
    rng = random.Random(seed)
    g = random_multigraph(rng, CFG)
    A = subsets(g, rng)
    r = components(g, A)
    assert r.k + r.r == g.num_vertices()
    assert r.n >= 0 and r.n == len(A) - r.r
    assert total(r.weights) == g.weight_sum()
    assert sorted(v for block in r.blocks for v in block) == sorted(g.vertices)


@given(seeds)
def test_contract_counts(seed):
    g = random_multigraph(random.Random(seed), CFG)
    for e in g.edge_ids():
        if not g.edges[e].is_loop:
            h = contract_edge(g, e)
            assert h.num_vertices() == g.num_vertices() - 1
            assert h.num_edges() == g.num_edges() - 1
            assert h.weight_sum() == g.weight_sum()


@given(seeds)
def test_delete_contract_commute(seed):
    g = random_multigraph(random.Random(seed), CFG)
    ids = g.edge_ids()
    for e in ids:
        for f in ids:
            if e == f:
                continue
            # [G - e] - f = [G - f] - e
            assert g.delete_edge(e).delete_edge(f) == g.delete_edge(f).delete_edge(e)
            ef_loop = g.edges[f].is_loop
            if not ef_loop:
                # [G - e] / f = [G / f] - e
                assert g.delete_edge(e).contract_edge(f) == g.contract_edge(f).delete_edge(e)
            if not g.edges[e].is_loop and not ef_loop:
                ge = g.contract_edge(e)
                gf = g.contract_edge(f)
                if not ge.edges[f].is_loop and not gf.edges[e].is_loop:
                    # [G / e] / f = [G / f] / e
                    assert ge.contract_edge(f) == gf.contract_edge(e)
