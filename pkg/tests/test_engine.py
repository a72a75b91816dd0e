from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import build, triangle
from vpoly import engine
from vpoly.errors import NonPositiveWeight, TooLarge, ZeroAlpha
from vpoly.instances import GraphConfig, random_multigraph
from vpoly.multigraph import EdgeWeight, WeightedMultigraph
from vpoly.polynomial import SparsePolynomial as P, gvar, poly_from_text, xvar

X = lambda k: P.var(xvar(f"Z:{k}"))  # noqa: E731
G = lambda e: P.var(gvar(e))  # noqa: E731
y, theta = P.var("y"), P.var("theta")
BOTH = (engine.v_state_sum, engine.v_deletion_contraction)


@pytest.mark.parametrize("algo", BOTH)
def test_v_edgeless(algo):
    assert algo(build([2, 5, 2], [])) == X(2) ** 2 * X(5)


@pytest.mark.parametrize("algo", BOTH)
def test_v_single_edge(algo):
    assert algo(build([1, 2], [("v1", "v2")])) == X(1) * X(2) + G("e1") * X(3)


@pytest.mark.parametrize("algo", BOTH)
def test_v_single_loop(algo):
    assert algo(build([4], [("v1", "v1")])) == (1 + G("e1")) * X(4)


def test_v_empty_vertex_set_is_one():
    g = WeightedMultigraph({}, {})
    assert engine.v_state_sum(g) == P.one() == engine.v_deletion_contraction(g)


def test_v_triangle_by_hand():
    # subsets of K3 with unit weights: ∅ → x1³, one edge → x1 x2 each,
    # two or three edges → one component of weight 3
    g = triangle()
    e1, e2, e3 = G("e1"), G("e2"), G("e3")
    expected = (
        X(1) ** 3
        + (e1 + e2 + e3) * X(1) * X(2)
        + (e1 * e2 + e1 * e3 + e2 * e3 + e1 * e2 * e3) * X(3)
    )
    assert len(expected.terms) == 8
    assert engine.v_state_sum(g) == expected == engine.v_deletion_contraction(g)


def test_order_independence_four_edges():
    g = build([1, 2, 3], [("v1", "v2"), ("v2", "v3"), ("v1", "v3"), ("v1", "v2")])
    a = engine.v_deletion_contraction(g, order=["e1", "e2", "e3", "e4"])
    b = engine.v_deletion_contraction(g, order=["e4", "e3", "e1", "e2"])
    assert a == b


def test_memo_does_not_change_result():
    g = build([1, 1, 1, 1], [("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v1"), ("v1", "v3")])
    assert engine.v_deletion_contraction(g, memo=True) == engine.v_deletion_contraction(g)


def test_size_cap(monkeypatch):
    g = triangle()
    with pytest.raises(TooLarge):
        engine.v_state_sum(g, max_edges=2)
    monkeypatch.setenv("VPOLY_MAX_EDGES", "2")
    with pytest.raises(TooLarge):
        engine.v_deletion_contraction(g)


def test_valued_edges():
    g = build([1, 2], [("v1", "v2")]).with_edge_weights({"e1": EdgeWeight.of_value(Fraction(1, 3))})
    assert engine.v_state_sum(g) == X(1) * X(2) + X(3).scale(Fraction(1, 3))


def test_recipe_identity():
    g = triangle()
    coeffs = engine.EdgeCoefficients({e: 1 for e in g.edges}, {e: G(e) for e in g.edges})
    assert engine.recipe_transform(g, coeffs) == engine.v_state_sum(g)


def test_recipe_doubling():
    g = build([1, 2], [("v1", "v2")])
    coeffs = engine.EdgeCoefficients({"e1": 2}, {"e1": 2 * G("e1")})
    assert engine.recipe_transform(g, coeffs) == (X(1) * X(2) + G("e1") * X(3)).scale(2)


def test_recipe_w_relationship_on_path():
    g = build([1, 1, 1], [("v1", "v2"), ("v2", "v3")])
    f = engine.recipe_transform(g, engine.EdgeCoefficients.uniform(g, 1, y - 1))
    W = engine.w_state_sum(g)
    # (y−1)^{|V|} · W(x / (y−1), y): every W term has total x-degree k(A),
    # so multiply each term by (y−1)^{|V| − deg_x}
    rescaled = P.zero()
    for mono, c in W.terms.items():
        deg_x = sum(e for k, e in mono if k.startswith("x["))
        rescaled = rescaled + P({mono: c}) * (y - 1) ** (3 - deg_x)
    assert f == rescaled


def test_recipe_numeric_and_zero_alpha():
    g = build([1, 2], [("v1", "v2")])
    coeffs = engine.EdgeCoefficients({"e1": 0.5}, {"e1": 1.5})
    xs = {xvar("Z:1"): 2.0, xvar("Z:2"): 3.0, xvar("Z:3"): 5.0}
    assert engine.recipe_transform(g, coeffs, xs) == pytest.approx(0.5 * (6 + 3 * 5))
    with pytest.raises(ZeroAlpha):
        engine.EdgeCoefficients({"e1": 0}, {"e1": 1})


@pytest.mark.parametrize("method", ["state-sum", "v", "both"])
def test_w_examples(method):
    assert engine.w_polynomial(build([5], []), method=method) == X(5)
    assert engine.w_polynomial(build([5], [("v1", "v1")]), method=method) == y * X(5)
    assert engine.w_polynomial(build([1, 1], [("v1", "v2")]), method=method) == X(1) ** 2 + X(2)


def test_w_rejects_nonpositive():
    with pytest.raises(NonPositiveWeight):
        engine.w_polynomial(build([0, 1], []))
    g = WeightedMultigraph.from_lists([("v1", engine.SemigroupWeight.integer_vector([1]))])
    with pytest.raises(NonPositiveWeight):
        engine.w_polynomial(g)


def test_w_at_value():
    g = build([1, 1], [("v1", "v2"), ("v1", "v2")])
    assert engine.w_polynomial(g, 3) == engine.w_polynomial(g).substitute({"y": 3})


def test_u_examples():
    assert engine.u_polynomial(build([7, 3], [])) == X(1) ** 2
    assert engine.u_polynomial(build([2, 2], [("v1", "v2")])) == X(1) ** 2 + X(2)
    assert engine.u_polynomial(triangle((4, 5, 6))) == X(1) ** 3 + 3 * X(1) * X(2) + (y + 2) * X(3)


def test_multivariate_tutte_examples():
    assert engine.multivariate_tutte(build([1, 2], [("v1", "v2")])) == theta ** 2 + G("e1") * theta
    assert engine.multivariate_tutte(build([1, 1, 1, 1], [])) == theta ** 4
    v = P.var("v")
    g = triangle().with_edge_weights({e: EdgeWeight.symbol() for e in ("e1", "e2", "e3")})
    zt = engine.multivariate_tutte(g).substitute({gvar(e): v for e in g.edges})
    assert zt == theta ** 3 + 3 * theta ** 2 * v + 3 * theta * v ** 2 + theta * v ** 3


def test_multivariate_tutte_numeric():
    g = triangle().with_edge_weights({e: EdgeWeight.of_value(0.5) for e in ("e1", "e2", "e3")})
    q, v = 3.0, 0.5
    assert engine.multivariate_tutte(g, q) == pytest.approx(q**3 + 3 * q**2 * v + 3 * q * v**2 + q * v**3)


def test_tutte_examples():
    assert engine.tutte_polynomial(build([1, 1], [("v1", "v2")])) == P.var("x")
    assert engine.tutte_polynomial(build([1], [("v1", "v1")])) == P.var("y")
    assert engine.tutte_polynomial(triangle()) == poly_from_text("x^2 + x + y")


def test_tutte_k4_known():
    g = build([1] * 4, [(f"v{i}", f"v{j}") for i in range(1, 5) for j in range(i + 1, 5)])
    assert engine.tutte_polynomial(g) == poly_from_text(
        "x^3 + 3*x^2 + 2*x + 4*x*y + 2*y + 3*y^2 + y^3"
    )


seeds = st.integers(0, 10**9)


@given(seeds, seeds)
def test_multiplicativity(s1, s2):
    cfg = GraphConfig(max_vertices=3, max_edges=3)
    g1 = random_multigraph(random.Random(s1), cfg)
    g2 = random_multigraph(random.Random(s2), cfg)
    g2 = WeightedMultigraph.from_lists(
        [(f"w{v}", w) for v, w in g2.vertices.items()],
        [(f"f{e}", f"w{d.u}", f"w{d.v}") for e, d in g2.edges.items()],
    )
    union = g1.disjoint_union(g2)
    assert engine.v_deletion_contraction(union) == engine.v_deletion_contraction(g1) * engine.v_deletion_contraction(g2)


@given(seeds)
def test_state_sum_matches_recursion(seed):
    g = random_multigraph(random.Random(seed), GraphConfig(max_vertices=5, max_edges=6))
    assert engine.v_state_sum(g) == engine.v_deletion_contraction(g)


@given(seeds)
def test_w_tower(seed):
    g = random_multigraph(random.Random(seed), GraphConfig(max_edges=6, weight_kind="Z+"))
    W = engine.w_polynomial(g)
    W_theta = W.substitute({k: theta for k in W.variables() if k.startswith("x[")})
    T = engine.tutte_rank_nullity(g)
    k = g.components().k
    assert W_theta == theta ** k * T.substitute({"x": 1 + theta})
