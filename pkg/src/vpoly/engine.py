"""The V-polynomial and its specializations.

``V`` is computed two independent ways: the spanning-subgraph state sum and
the deletion-contraction recursion. The W-, U-, multivariate Tutte and Tutte
polynomials are derived from it and each is checked against its own direct
subset formula.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    InexactValue,
    NonPositiveWeight,
    TooLarge,
    VerificationError,
    ZeroAlpha,
)
from .multigraph import EdgeWeight, WeightedMultigraph, natural_key
from .polynomial import SparsePolynomial, gvar, xvar
from .weights import SemigroupWeight, WeightKind, canonical_key, is_exact

__all__ = [
    "DEFAULT_MAX_EDGES",
    "Y",
    "THETA",
    "TUTTE_X",
    "TUTTE_Y",
    "EdgeCoefficients",
    "max_edges_default",
    "v_state_sum",
    "v_deletion_contraction",
    "v_numeric",
    "recipe_transform",
    "w_polynomial",
    "u_polynomial",
    "multivariate_tutte",
    "tutte_polynomial",
    "tutte_rank_nullity",
]

DEFAULT_MAX_EDGES = 24

# reserved scalar variables; never collide with x[...] / g[...] keys
Y = "y"
THETA = "theta"
TUTTE_X = "x"
TUTTE_Y = "y"
_U = "u"


def max_edges_default() -> int:
    env = os.environ.get("VPOLY_MAX_EDGES")
    return int(env) if env else DEFAULT_MAX_EDGES


def _check_cap(g: WeightedMultigraph, max_edges: int | None):
    cap = max_edges_default() if max_edges is None else max_edges
    if g.num_edges() > cap:
        raise TooLarge(f"{g.num_edges()} edges exceeds the cap of {cap}")


def _edge_factor(g: WeightedMultigraph, eid: str) -> SparsePolynomial:
    w = g.edges[eid].weight
    if w.is_symbolic:
        return SparsePolynomial.var(gvar(eid))
    if not is_exact(w.value):
        raise InexactValue(f"edge {eid!r} has inexact weight {w.value!r}; use a numeric path")
    return SparsePolynomial.constant(w.value)


def _x(weight: SemigroupWeight) -> SparsePolynomial:
    return SparsePolynomial.var(xvar(canonical_key(weight)))


def _edgeless(g: WeightedMultigraph) -> SparsePolynomial:
    mono: dict[str, int] = {}
    for w in g.vertices.values():
        k = xvar(canonical_key(w))
        mono[k] = mono.get(k, 0) + 1
    return SparsePolynomial({tuple(sorted(mono.items())): 1})


def _subsets(edge_ids: Sequence[str]):
    for r in range(len(edge_ids) + 1):
        yield from itertools.combinations(edge_ids, r)


def v_state_sum(g: WeightedMultigraph, *, max_edges: int | None = None) -> SparsePolynomial:
    """Sum over all ``A ⊆ E`` of ``x_{c_1}···x_{c_k(A)} · Π_{e∈A} γ_e``."""
    _check_cap(g, max_edges)
    eids = g.edge_ids()
    factors = {e: _edge_factor(g, e) for e in eids}
    acc: dict = {}
    for A in _subsets(eids):
        report = g.components(A)
        term = SparsePolynomial.one()
        for w in report.weights:
            term = term * _x(w)
        for e in A:
            term = term * factors[e]
        for mono, c in term.terms.items():
            acc[mono] = acc.get(mono, 0) + c
    return SparsePolynomial(acc)


def v_deletion_contraction(
    g: WeightedMultigraph,
    *,
    order: Sequence[str] | None = None,
    max_edges: int | None = None,
    memo: bool = False,
) -> SparsePolynomial:
    """Deletion-contraction with loops factored eagerly.

    Non-loop edges are branched in ``order`` (default: ascending natural
    edge-id order). Edges missing from ``order`` go last in that default
    order. ``memo`` caches sub-results by labelled-graph encoding.
    """
    _check_cap(g, max_edges)
    rank = _priority(g, order)
    cache: dict[str, SparsePolynomial] | None = {} if memo else None

    def rec(h: WeightedMultigraph) -> SparsePolynomial:
        if cache is not None:
            key = h.encode()
            if key in cache:
                return cache[key]
        factor = SparsePolynomial.one()
        for loop in h.loops():
            factor = factor * (_edge_factor(h, loop) + 1)
            h = h.delete_edge(loop)
        if not h.edges:
            result = factor * _edgeless(h)
        else:
            e = min(h.edges, key=rank)
            result = factor * (rec(h.delete_edge(e)) + _edge_factor(h, e) * rec(h.contract_edge(e)))
        if cache is not None:
            cache[key] = result
        return result

    return rec(g)


def _priority(g: WeightedMultigraph, order: Sequence[str] | None) -> Callable[[str], tuple]:
    if order is None:
        return lambda e: (0, natural_key(e))
    pos = {e: i for i, e in enumerate(order)}
    return lambda e: (0, pos[e]) if e in pos else (1, natural_key(e))


def v_numeric(
    g: WeightedMultigraph,
    x_value: Callable[[SemigroupWeight], complex],
    gamma: Mapping[str, complex],
    *,
    max_edges: int | None = None,
    memo: bool = False,
) -> complex:
    """Numeric V by deletion-contraction, substituting values as it recurses.

    Works for any weight kind, including numeric ``NV`` vectors. ``memo``
    pays off when many edges share a value (sub-graphs then coincide).
    """
    _check_cap(g, max_edges)
    cache: dict[str, complex] | None = {} if memo else None

    def rec(h: WeightedMultigraph) -> complex:
        if cache is not None:
            key = h.encode()
            if key in cache:
                return cache[key]
        factor = 1 + 0j
        for loop in h.loops():
            factor *= 1 + gamma[loop]
            h = h.delete_edge(loop)
        if not h.edges:
            result = factor
            for w in h.vertices.values():
                result *= x_value(w)
        else:
            e = min(h.edges, key=natural_key)
            result = factor * (rec(h.delete_edge(e)) + gamma[e] * rec(h.contract_edge(e)))
        if cache is not None:
            cache[key] = result
        return result

    return rec(g)


@dataclass(frozen=True)
class EdgeCoefficients:
    """Per-edge ``(alpha, beta)`` of a deletion-contraction recipe.

    ``f(G) = alpha_e f(G-e) + beta_e f(G/e)`` for non-loops and
    ``f(G) = (alpha_e + beta_e) f(G-e)`` for loops. Values are exact numbers,
    polynomials (beta only) or complex doubles.
    """

    alpha: Mapping[str, object]
    beta: Mapping[str, object]

    def __post_init__(self):
        for e, a in self.alpha.items():
            if isinstance(a, SparsePolynomial):
                raise TypeError(f"alpha for edge {e!r} must be a scalar")
            if a == 0:
                raise ZeroAlpha(f"alpha is zero on edge {e!r}")

    @classmethod
    def uniform(cls, g: WeightedMultigraph, alpha, beta) -> "EdgeCoefficients":
        return cls({e: alpha for e in g.edges}, {e: beta for e in g.edges})


def recipe_transform(
    g: WeightedMultigraph,
    coeffs: EdgeCoefficients,
    x_assignment: Mapping[str, object] | None = None,
    *,
    max_edges: int | None = None,
):
    """Evaluate ``(Π alpha_e) · V(G; x, {beta_e/alpha_e})``.

    Returns a :class:`SparsePolynomial` when everything is exact (x left
    symbolic if ``x_assignment`` is ``None``), otherwise a complex number, in
    which case ``x_assignment`` must cover every ``x[...]`` variable.
    """
    for e in g.edges:
        if e not in coeffs.alpha or e not in coeffs.beta:
            raise ZeroAlpha(f"no recipe coefficients for edge {e!r}")
    sym = g.with_edge_weights({e: EdgeWeight.symbol() for e in g.edges})
    V = v_deletion_contraction(sym, max_edges=max_edges)
    values = list(coeffs.alpha.values()) + list(coeffs.beta.values())
    values += list((x_assignment or {}).values())
    exact = all(is_exact(v) or isinstance(v, SparsePolynomial) for v in values)
    if exact:
        prefactor: object = Fraction(1)
        gamma = {}
        for e in g.edges:
            a = coeffs.alpha[e]
            prefactor = prefactor * a
            b = coeffs.beta[e]
            gamma[gvar(e)] = _lift(b).scale(Fraction(1) / a)
        out = V.substitute(gamma)
        if x_assignment:
            out = out.substitute(x_assignment)
        return out.scale(prefactor)
    if any(isinstance(v, SparsePolynomial) for v in values):
        raise InexactValue("cannot mix polynomial coefficients with inexact values")
    prefactor_c = 1 + 0j
    assignment: dict[str, complex] = dict(x_assignment or {})
    for e in g.edges:
        a, b = complex(coeffs.alpha[e]), complex(coeffs.beta[e])
        prefactor_c *= a
        assignment[gvar(e)] = b / a
    return prefactor_c * V.evaluate(assignment)


def _require_positive_integers(g: WeightedMultigraph):
    for v, w in g.vertices.items():
        if w.kind is not WeightKind.INTEGER or w.entries <= 0:
            raise NonPositiveWeight(f"vertex {v!r} has weight {w.encode()}; W needs positive integers")


def w_state_sum(g: WeightedMultigraph, y=None, *, max_edges: int | None = None) -> SparsePolynomial:
    """Direct ``Σ_A x_{c_1}···x_{c_k(A)} (y-1)^{n(A)}``."""
    _require_positive_integers(g)
    _check_cap(g, max_edges)
    ym1 = (SparsePolynomial.var(Y) if y is None else _lift(y)) - 1
    acc = SparsePolynomial.zero()
    for A in _subsets(g.edge_ids()):
        report = g.components(A)
        term = ym1 ** report.n
        for w in report.weights:
            term = term * _x(w)
        acc = acc + term
    return acc


def w_from_v(g: WeightedMultigraph, y=None, *, max_edges: int | None = None) -> SparsePolynomial:
    """W through V at ``γ_e = y − 1``, rescaling ``x`` by ``y − 1``.

    Uses ``V(G; (y−1)x, y−1) = (y−1)^{|V|} W(G; x, y)`` with ``u = y − 1``
    kept as a separate variable so the division is a monomial shift.
    """
    _require_positive_integers(g)
    sym = g.with_edge_weights({e: EdgeWeight.symbol() for e in g.edges})
    V = v_deletion_contraction(sym, max_edges=max_edges)
    u = SparsePolynomial.var(_U)
    mapping = {gvar(e): u for e in g.edges}
    mapping.update({k: u * SparsePolynomial.var(k) for k in V.variables() if k.startswith("x[")})
    scaled = V.substitute(mapping)
    n = g.num_vertices()
    W_u = scaled.divide_by_monomial({_U: n}) if n else scaled
    ym1 = (SparsePolynomial.var(Y) if y is None else _lift(y)) - 1
    return W_u.substitute({_U: ym1})


def _lift(value) -> SparsePolynomial:
    if isinstance(value, SparsePolynomial):
        return value
    return SparsePolynomial.constant(value)


def w_polynomial(
    g: WeightedMultigraph, y=None, *, method: str = "both", max_edges: int | None = None
) -> SparsePolynomial:
    """W-polynomial of a positive-integer weighted graph; symbolic ``y`` by default.

    ``method`` is ``"state-sum"``, ``"v"`` or ``"both"`` (compute both, raise
    :class:`VerificationError` on disagreement).
    """
    if method == "state-sum":
        return w_state_sum(g, y, max_edges=max_edges)
    if method == "v":
        return w_from_v(g, y, max_edges=max_edges)
    a = w_state_sum(g, y, max_edges=max_edges)
    b = w_from_v(g, y, max_edges=max_edges)
    if a != b:
        raise VerificationError(f"W state sum {a} != W from V {b}")
    return a


def u_polynomial(g: WeightedMultigraph, y=None, **kwargs) -> SparsePolynomial:
    unit = SemigroupWeight.integer(1)
    return w_polynomial(g.with_weights({v: unit for v in g.vertices}), y, **kwargs)


def _zt_direct(g: WeightedMultigraph, theta: SparsePolynomial) -> SparsePolynomial:
    eids = g.edge_ids()
    factors = {e: _edge_factor(g, e) for e in eids}
    acc = SparsePolynomial.zero()
    for A in _subsets(eids):
        term = theta ** g.components(A).k
        for e in A:
            term = term * factors[e]
        acc = acc + term
    return acc


def multivariate_tutte(
    g: WeightedMultigraph, theta=None, *, method: str = "both", max_edges: int | None = None
):
    """``Z_T(G; θ, γ) = Σ_A θ^{k(A)} Π_{e∈A} γ_e``; symbolic ``θ`` by default.

    ``theta`` may be an exact number, a polynomial, or a complex double (then
    the edge weights must all be values and a complex number is returned).
    """
    _check_cap(g, max_edges)
    if theta is not None and not (is_exact(theta) or isinstance(theta, SparsePolynomial)):
        gamma = {}
        for e, edge in g.edges.items():
            if edge.weight.is_symbolic:
                raise InexactValue("numeric theta needs numeric edge weights")
            gamma[e] = complex(edge.weight.value)
        t = complex(theta)
        direct = sum(
            (t ** g.components(A).k) * _prod(gamma[e] for e in A) for A in _subsets(g.edge_ids())
        )
        if method == "state-sum":
            return direct
        via_v = v_numeric(g, lambda w: t, gamma, max_edges=max_edges)
        if method == "v":
            return via_v
        if abs(direct - via_v) > 1e-9 * max(abs(direct), abs(via_v), 1e-300):
            raise VerificationError(f"Z_T direct {direct} != via V {via_v}")
        return direct
    th = SparsePolynomial.var(THETA) if theta is None else _lift(theta)
    if method in ("state-sum", "both"):
        direct = _zt_direct(g, th)
        if method == "state-sum":
            return direct
    V = v_deletion_contraction(g, max_edges=max_edges)
    via_v = V.substitute({k: th for k in V.variables() if k.startswith("x[")})
    if method == "v":
        return via_v
    if direct != via_v:
        raise VerificationError(f"Z_T direct {direct} != via V {via_v}")
    return direct


def _prod(values: Iterable[complex]) -> complex:
    out = 1 + 0j
    for v in values:
        out *= v
    return out


def tutte_rank_nullity(g: WeightedMultigraph, *, max_edges: int | None = None) -> SparsePolynomial:
    """Oracle: ``T(G; x, y) = Σ_A (x−1)^{r(E)−r(A)} (y−1)^{n(A)}``."""
    _check_cap(g, max_edges)
    xm1 = SparsePolynomial.var(TUTTE_X) - 1
    ym1 = SparsePolynomial.var(TUTTE_Y) - 1
    rE = g.components().r
    acc = SparsePolynomial.zero()
    for A in _subsets(g.edge_ids()):
        rep = g.components(A)
        acc = acc + (xm1 ** (rE - rep.r)) * (ym1 ** rep.n)
    return acc


def tutte_polynomial(
    g: WeightedMultigraph, *, method: str = "both", max_edges: int | None = None
) -> SparsePolynomial:
    """Tutte polynomial in ``x``, ``y`` from the W tower.

    ``W(x_i = θ, y) = θ^{k(G)} T(G; 1 + θ, y)``: divide out ``θ^{k(G)}`` as a
    monomial shift, then substitute ``θ = x − 1``. ``method="both"`` also runs
    the rank-nullity subset sum and requires agreement.
    """
    unit = SemigroupWeight.integer(1)
    gu = g.with_weights({v: unit for v in g.vertices})
    if method == "rank-nullity":
        return tutte_rank_nullity(gu, max_edges=max_edges)
    theta = SparsePolynomial.var(THETA)
    Wp = w_from_v(gu, None, max_edges=max_edges)
    W_theta = Wp.substitute({k: theta for k in Wp.variables() if k.startswith("x[")})
    k = gu.components().k
    shifted = W_theta.divide_by_monomial({THETA: k}) if k else W_theta
    # θ → x − 1 while y is already the Tutte y
    T = shifted.substitute({THETA: SparsePolynomial.var(TUTTE_X) - 1})
    if method == "w":
        return T
    oracle = tutte_rank_nullity(gu, max_edges=max_edges)
    if T != oracle:
        raise VerificationError(f"Tutte from W {T} != rank-nullity {oracle}")
    return T
