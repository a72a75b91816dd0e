"""Potts partition functions in an external field, exactly and by reduction to V.

Every Hamiltonian family is described by a :class:`HamiltonianSpec`. The
ground truth is :func:`partition_bruteforce` (a sum over all spin states);
the other routes are the deletion-contraction recursion for ``Z``, the
V-polynomial evaluation, the Fortuin-Kasteleyn subset expansion and the
W/U/Tutte specializations for the restricted families.

``β`` is an explicit dimensionless parameter: no Boltzmann constant or
temperature is modelled.
"""

from __future__ import annotations

import cmath
import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from . import engine
from .errors import (
    InexactField,
    NonConstantJ,
    NonIntegerMultiplier,
    RangeWarning,
    SpecMismatch,
    TooLarge,
    TruncationViolation,
    ZeroPartition,
)
from .multigraph import EdgeWeight, WeightedMultigraph, natural_key
from .polynomial import SparsePolynomial, xvar
from .weights import SemigroupWeight, canonical_key, is_exact, parse_weight

__all__ = [
    "Family",
    "HamiltonianSpec",
    "ReducedModel",
    "FKTerm",
    "FKExpansion",
    "WReduction",
    "DEFAULT_MAX_STATES",
    "hamiltonian_value",
    "boltzmann_probability",
    "partition_bruteforce",
    "partition_deletion_contraction",
    "partition_via_v",
    "potts_v_polynomial",
    "fk_expansion",
    "reduce_to_w",
    "constant_field_reduction",
    "classical_zero_field",
    "preferred_spin_reduction",
    "r_field_reduction",
    "ising_partition",
    "ising_spin_glass",
    "rfim_partition",
    "subset_sum_keys",
    "polynomiality_violations",
    "reduced_model",
]

DEFAULT_MAX_STATES = 2**22
EXP_LIMIT = 700.0


class Family(str, enum.Enum):
    GENERAL = "general"
    ZERO = "zero"
    INTEGER_SCALED = "integer-scaled"
    CONSTANT = "constant"
    PREFERRED = "preferred"
    R_FIELD = "r-field"
    ISING = "ising"


def _exp(x: complex) -> complex:
    x = complex(x)
    if abs(x.real) > EXP_LIMIT:
        raise RangeWarning(f"exponent {x} outside the double-precision safe range")
    return cmath.exp(x)


def _total(values):
    """Exact sum when every term is exact, complex double otherwise."""
    values = list(values)
    if all(is_exact(v) for v in values):
        acc = Fraction(0)
        for v in values:
            acc = acc + v
        return acc
    return sum((complex(v) for v in values), 0j)


def _mul(a, b):
    if is_exact(a) and is_exact(b):
        return a * b
    return complex(a) * complex(b)


@dataclass(frozen=True)
class HamiltonianSpec:
    """Parameters of one Hamiltonian family.

    ``J`` is a constant, a per-edge mapping, or ``None`` to read couplings
    from ``{"J": ...}`` edge weights of the graph. Per-family field data:

    ========================  ==========================================
    ``general``               ``fields``: vertex → length-``q`` vector
    ``zero``                  nothing
    ``integer-scaled``        ``B`` (length ``q``) and ``k``: vertex → int ≥ 1
    ``constant``              ``B``
    ``preferred``, ``ising``  ``z``: vertex → scalar
    ``r-field``               ``fields`` (zero beyond ``r``) and ``r``
    ========================  ==========================================
    """

    family: Family
    q: int
    beta: object
    J: object = None
    fields: Mapping[str, Sequence] | None = None
    B: Sequence | None = None
    k: Mapping[str, int] | None = None
    z: Mapping[str, object] | None = None
    r: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if isinstance(self.q, bool) or not isinstance(self.q, int) or self.q < 1:
            raise SpecMismatch(f"q must be a positive integer, got {self.q!r}")
        b = self.beta
        if isinstance(b, complex) or (hasattr(b, "im") and b.im != 0) or not float(complex(b).real) > 0:
            raise SpecMismatch(f"beta must be a positive real, got {b!r}")
        fam = self.family
        if fam is Family.ISING and self.q != 2:
            raise SpecMismatch("the Ising family has q = 2")
        if fam in (Family.GENERAL, Family.R_FIELD):
            if self.fields is None:
                raise SpecMismatch(f"{fam.value} needs per-vertex field vectors")
            for v, vec in self.fields.items():
                if len(vec) != self.q:
                    raise SpecMismatch(f"field vector at {v!r} has length {len(vec)}, expected {self.q}")
        if fam is Family.R_FIELD:
            if self.r is None or not 0 <= self.r <= self.q:
                raise SpecMismatch(f"r must satisfy 0 <= r <= q, got {self.r!r}")
            for v, vec in self.fields.items():
                if any(x != 0 for x in vec[self.r:]):
                    raise TruncationViolation(f"field at {v!r} is nonzero beyond coordinate {self.r}")
        if fam in (Family.INTEGER_SCALED, Family.CONSTANT):
            if self.B is None or len(self.B) != self.q:
                raise SpecMismatch(f"{fam.value} needs a base vector B of length q")
        if fam is Family.INTEGER_SCALED:
            if self.k is None:
                raise SpecMismatch("integer-scaled needs multipliers k")
            for v, kv in self.k.items():
                if isinstance(kv, bool) or not isinstance(kv, int) or kv < 1:
                    raise NonIntegerMultiplier(f"multiplier at {v!r} must be a positive integer, got {kv!r}")
        if fam in (Family.PREFERRED, Family.ISING) and self.z is None:
            raise SpecMismatch(f"{fam.value} needs per-vertex scalars z")

    # constructors
    @classmethod
    def general(cls, q, beta, fields, J=None):
        return cls(Family.GENERAL, q, beta, J, fields=dict(fields))

    @classmethod
    def zero(cls, q, beta, J=None):
        return cls(Family.ZERO, q, beta, J)

    @classmethod
    def integer_scaled(cls, q, beta, B, k, J=None):
        return cls(Family.INTEGER_SCALED, q, beta, J, B=tuple(B), k=dict(k))

    @classmethod
    def constant(cls, q, beta, B, J=None):
        return cls(Family.CONSTANT, q, beta, J, B=tuple(B))

    @classmethod
    def preferred(cls, q, beta, z, J=None):
        return cls(Family.PREFERRED, q, beta, J, z=dict(z))

    @classmethod
    def r_field(cls, q, beta, r, fields, J=None):
        return cls(Family.R_FIELD, q, beta, J, fields=dict(fields), r=r)

    @classmethod
    def ising(cls, beta, z, J=None):
        return cls(Family.ISING, 2, beta, J, z=dict(z))

    # derived data
    def couplings(self, g: WeightedMultigraph) -> dict[str, object]:
        """Interaction energy on every edge of ``g``."""
        if self.J is None:
            out = {}
            for eid, e in g.edges.items():
                if e.weight.kind != "coupling":
                    raise SpecMismatch(f"edge {eid!r} has no J and the spec supplies none")
                out[eid] = e.weight.value
            return out
        if isinstance(self.J, Mapping):
            missing = set(g.edges) - set(self.J)
            if missing:
                raise SpecMismatch(f"no J for edges {sorted(missing)}")
            return {eid: self.J[eid] for eid in g.edges}
        return {eid: self.J for eid in g.edges}

    def constant_coupling(self, g: WeightedMultigraph):
        Js = set(self.couplings(g).values())
        if len(Js) > 1:
            raise NonConstantJ(f"{self.family.value} needs a constant J, got {sorted(map(str, Js))}")
        if not Js:
            return self.J if (self.J is not None and not isinstance(self.J, Mapping)) else 0
        return Js.pop()

    def field_vectors(self, g: WeightedMultigraph) -> dict[str, tuple]:
        """The length-``q`` magnetic field vector of every vertex."""
        fam = self.family
        verts = list(g.vertices)
        if fam is Family.ISING:
            raise SpecMismatch("the Ising family has no Potts field vectors; see ising_partition")
        if fam is Family.ZERO:
            return {v: (0,) * self.q for v in verts}
        if fam is Family.CONSTANT:
            return {v: tuple(self.B) for v in verts}
        if fam is Family.INTEGER_SCALED:
            self._cover(self.k, g, "k")
            return {v: tuple(self.k[v] * b for b in self.B) for v in verts}
        if fam is Family.PREFERRED:
            self._cover(self.z, g, "z")
            return {v: (self.z[v],) + (0,) * (self.q - 1) for v in verts}
        self._cover(self.fields, g, "fields")
        return {v: tuple(self.fields[v]) for v in verts}

    @staticmethod
    def _cover(data, g, name):
        missing = set(g.vertices) - set(data)
        if missing:
            raise SpecMismatch(f"{name} missing for vertices {sorted(missing)}")

    def to_general(self, g: WeightedMultigraph) -> "HamiltonianSpec":
        return HamiltonianSpec.general(self.q, self.beta, self.field_vectors(g), J=self.couplings(g))

    def spins(self) -> tuple:
        return (-1, 1) if self.family is Family.ISING else tuple(range(1, self.q + 1))


# ---------------------------------------------------------------------------
# Hamiltonians and brute force


def hamiltonian_value(spec: HamiltonianSpec, g: WeightedMultigraph, s: Mapping[str, int]):
    """Energy of state ``s``; exact when all inputs are exact."""
    if set(s) != set(g.vertices):
        raise SpecMismatch("state must assign a spin to every vertex")
    allowed = set(spec.spins())
    if any(spin not in allowed for spin in s.values()):
        raise SpecMismatch(f"spins must lie in {sorted(allowed)}")
    J = spec.couplings(g)
    terms = []
    if spec.family is Family.ISING:
        spec._cover(spec.z, g, "z")
        for eid, e in g.edges.items():
            terms.append(_mul(-J[eid], s[e.u] * s[e.v]))
        for v in g.vertices:
            terms.append(_mul(-spec.z[v], s[v]))
        return _total(terms)
    for eid, e in g.edges.items():
        if s[e.u] == s[e.v]:
            terms.append(_mul(-1, J[eid]))
    if spec.family is Family.PREFERRED:
        spec._cover(spec.z, g, "z")
        for v in g.vertices:
            if s[v] == 1:
                terms.append(_mul(-1, spec.z[v]))
    elif spec.family is not Family.ZERO:
        M = spec.field_vectors(g)
        for v in g.vertices:
            terms.append(_mul(-1, M[v][s[v] - 1]))
    return _total(terms)


def _states(spec: HamiltonianSpec, g: WeightedMultigraph, max_states: int | None):
    cap = DEFAULT_MAX_STATES if max_states is None else max_states
    spins = spec.spins()
    count = len(spins) ** g.num_vertices()
    if count > cap:
        raise TooLarge(f"{count} states exceeds the cap of {cap}")
    verts = sorted(g.vertices, key=natural_key)
    for combo in itertools.product(spins, repeat=len(verts)):
        yield dict(zip(verts, combo))


def partition_bruteforce(
    spec: HamiltonianSpec, g: WeightedMultigraph, *, max_states: int | None = None
) -> complex:
    """``Z = Σ_σ exp(−β h(σ))`` over every spin state."""
    beta = complex(spec.beta)
    total = 0j
    for s in _states(spec, g, max_states):
        total += _exp(-beta * complex(hamiltonian_value(spec, g, s)))
    return total


def boltzmann_probability(
    spec: HamiltonianSpec, g: WeightedMultigraph, s: Mapping[str, int], *, max_states: int | None = None
) -> complex:
    Z = partition_bruteforce(spec, g, max_states=max_states)
    if Z == 0:
        raise ZeroPartition("partition function vanishes")
    return _exp(-complex(spec.beta) * complex(hamiltonian_value(spec, g, s))) / Z


# ---------------------------------------------------------------------------
# reductions to V


def _x_general(beta: complex) -> Callable[[SemigroupWeight], complex]:
    def X(w: SemigroupWeight) -> complex:
        return sum((_exp(beta * complex(m)) for m in w.components()), 0j)

    return X


@dataclass(frozen=True)
class ReducedModel:
    """``Z = prefactor · V(graph; {x_value(w)}, {gamma_e})``."""

    graph: WeightedMultigraph
    x_value: Callable[[SemigroupWeight], complex]
    gamma: Mapping[str, complex]
    prefactor: complex = 1 + 0j

    def x_from_key(self, key: str) -> complex:
        return self.x_value(parse_weight(key[2:-1]))

    def assignment(self, V: SparsePolynomial) -> dict[str, complex]:
        out: dict[str, complex] = {}
        for k in V.variables():
            if k.startswith("x["):
                out[k] = self.x_from_key(k)
            elif k.startswith("g["):
                out[k] = self.gamma[k[2:-1]]
        return out


def _field_weight(values, exact_required: bool) -> SemigroupWeight:
    if all(is_exact(v) for v in values):
        return SemigroupWeight.gaussian_vector(values)
    if exact_required:
        raise InexactField(f"field entries {values!r} are not exact; use numeric mode")
    return SemigroupWeight.numeric_vector(values)


def reduced_model(spec: HamiltonianSpec, g: WeightedMultigraph, *, exact: bool = False) -> ReducedModel:
    """Vertex weights, ``x`` substitution and edge values for ``spec``'s family.

    * general, zero, constant, integer-scaled: weights ``M_i``,
      ``X_M = Σ_α e^{βM_α}``;
    * preferred: weights ``z_i``, ``X_z = e^{βz} + q − 1``;
    * r-field: weights are the first ``r`` coordinates,
      ``X_M = q − r + Σ_{α≤r} e^{βM_α}``;
    * ising: weights ``z_i``, ``x_z = e^{2βz} + e^{4βz}``,
      ``γ_e = e^{2βJ_e} − 1``, prefactor ``e^{−β(ΣJ_e + 3Σz_i)}``.
    """
    beta = complex(spec.beta)
    J = spec.couplings(g)
    fam = spec.family
    q = spec.q
    if fam is Family.ISING:
        spec._cover(spec.z, g, "z")
        weights = {v: _field_weight((spec.z[v],), exact) for v in g.vertices}
        gamma = {e: _exp(2 * beta * complex(J[e])) - 1 for e in g.edges}
        shift = sum((complex(x) for x in J.values()), 0j) + 3 * sum(
            (complex(spec.z[v]) for v in g.vertices), 0j
        )

        def x_ising(w):
            z = complex(w.components()[0])
            return _exp(2 * beta * z) + _exp(4 * beta * z)

        return ReducedModel(g.with_weights(weights), x_ising, gamma, _exp(-beta * shift))
    gamma = {e: _exp(beta * complex(J[e])) - 1 for e in g.edges}
    if fam is Family.PREFERRED:
        spec._cover(spec.z, g, "z")
        weights = {v: _field_weight((spec.z[v],), exact) for v in g.vertices}

        def x_pref(w):
            return _exp(beta * complex(w.components()[0])) + (q - 1)

        return ReducedModel(g.with_weights(weights), x_pref, gamma)
    if fam is Family.R_FIELD:
        spec._cover(spec.fields, g, "fields")
        r = spec.r
        weights = {v: _field_weight(tuple(spec.fields[v][:r]), exact) for v in g.vertices}

        def x_r(w):
            return (q - r) + sum((_exp(beta * complex(m)) for m in w.components()), 0j)

        return ReducedModel(g.with_weights(weights), x_r, gamma)
    M = spec.field_vectors(g)
    weights = {v: _field_weight(M[v], exact) for v in g.vertices}
    return ReducedModel(g.with_weights(weights), _x_general(beta), gamma)


def _evaluate_reduced(model: ReducedModel, mode: str, algorithm: str, max_edges, memo) -> complex:
    g = model.graph
    exact = all(w.is_exact for w in g.vertices.values())
    if mode == "auto":
        mode = "symbolic" if exact else "numeric"
    if mode == "symbolic":
        if not exact:
            raise InexactField("symbolic mode needs exact field entries")
        V = _symbolic_v(g, algorithm, max_edges)
        return model.prefactor * V.evaluate(model.assignment(V))
    if mode != "numeric":
        raise ValueError(f"unknown mode {mode!r}")
    return model.prefactor * engine.v_numeric(g, model.x_value, model.gamma, max_edges=max_edges, memo=memo)


def _symbolic_v(g: WeightedMultigraph, algorithm: str, max_edges) -> SparsePolynomial:
    if algorithm == "state-sum":
        return engine.v_state_sum(g, max_edges=max_edges)
    if algorithm == "deletion-contraction":
        return engine.v_deletion_contraction(g, max_edges=max_edges)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def potts_v_polynomial(
    spec: HamiltonianSpec, g: WeightedMultigraph, *, algorithm: str = "deletion-contraction",
    max_edges: int | None = None,
) -> tuple[ReducedModel, SparsePolynomial]:
    """Symbolic V of the field-weighted graph used by :func:`partition_via_v`."""
    model = reduced_model(spec.to_general(g), g, exact=True)
    return model, _symbolic_v(model.graph, algorithm, max_edges)


def partition_via_v(
    spec: HamiltonianSpec,
    g: WeightedMultigraph,
    *,
    mode: str = "auto",
    algorithm: str = "deletion-contraction",
    max_edges: int | None = None,
    memo: bool = False,
) -> complex:
    """``Z = V(G, M; {X_M}, {e^{βJ_e} − 1})`` with the field vectors as weights.

    ``mode="symbolic"`` builds V exactly (requires exact fields) and then
    substitutes; ``"numeric"`` substitutes during the recursion; ``"auto"``
    picks symbolic whenever fields are exact.
    """
    if spec.family is Family.ISING:
        raise SpecMismatch("use ising_partition for the Ising family")
    model = reduced_model(spec.to_general(g), g, exact=(mode == "symbolic"))
    return _evaluate_reduced(model, mode, algorithm, max_edges, memo)


def partition_deletion_contraction(
    spec: HamiltonianSpec,
    g: WeightedMultigraph,
    *,
    max_edges: int | None = None,
    memo: bool = False,
) -> complex:
    """Recursion on ``Z`` itself: field vectors add when an edge is contracted.

    Non-loop: ``Z(G) = Z(G−e) + (e^{βJ_e} − 1) Z(G/e)``; loop:
    ``Z(G) = e^{βJ_e} Z(G−e)``; edgeless: ``Π X_{M_i}``.
    """
    if spec.family is Family.ISING:
        raise SpecMismatch("use ising_partition for the Ising family")
    gen = spec.to_general(g)
    beta = complex(spec.beta)
    M = gen.field_vectors(g)
    h = g.with_weights({v: SemigroupWeight.field_vector(M[v]) for v in g.vertices})
    boltz = {e: _exp(beta * complex(j)) for e, j in gen.couplings(g).items()}
    X = _x_general(beta)
    cap = engine.max_edges_default() if max_edges is None else max_edges
    if h.num_edges() > cap:
        raise TooLarge(f"{h.num_edges()} edges exceeds the cap of {cap}")
    cache: dict[str, complex] | None = {} if memo else None

    def Z(cur: WeightedMultigraph) -> complex:
        if cache is not None:
            key = cur.encode()
            if key in cache:
                return cache[key]
        if not cur.edges:
            out = 1 + 0j
            for w in cur.vertices.values():
                out *= X(w)
        else:
            e = min(cur.edges, key=natural_key)
            if cur.edges[e].is_loop:
                out = boltz[e] * Z(cur.delete_edge(e))
            else:
                out = Z(cur.delete_edge(e)) + (boltz[e] - 1) * Z(cur.contract_edge(e))
        if cache is not None:
            cache[key] = out
        return out

    return Z(h)


# ---------------------------------------------------------------------------
# Fortuin-Kasteleyn expansion


@dataclass(frozen=True)
class FKTerm:
    edges: tuple[str, ...]
    component_weights: tuple[SemigroupWeight, ...]
    edge_factor: complex
    x_product: complex

    @property
    def value(self) -> complex:
        return self.edge_factor * self.x_product


@dataclass(frozen=True)
class FKExpansion:
    terms: tuple[FKTerm, ...]
    prefactor: complex = 1 + 0j

    def total(self) -> complex:
        return self.prefactor * sum((t.value for t in self.terms), 0j)

    def __len__(self):
        return len(self.terms)


def fk_expansion(
    spec: HamiltonianSpec, g: WeightedMultigraph, *, max_edges: int | None = None
) -> FKExpansion:
    """All ``2^{|E|}`` spanning-subgraph terms for ``spec``'s family.

    The preferred-spin and r-field families produce their own ``X``
    substitutions through :func:`reduced_model`; no separate code path.
    """
    cap = engine.max_edges_default() if max_edges is None else max_edges
    if g.num_edges() > cap:
        raise TooLarge(f"{g.num_edges()} edges exceeds the cap of {cap}")
    model = reduced_model(spec, g)
    h = model.graph
    eids = h.edge_ids()
    terms = []
    for r in range(len(eids) + 1):
        for A in itertools.combinations(eids, r):
            rep = h.components(A)
            factor = 1 + 0j
            for e in A:
                factor *= model.gamma[e]
            xs = 1 + 0j
            for w in rep.weights:
                xs *= model.x_value(w)
            terms.append(FKTerm(A, rep.weights, factor, xs))
    return FKExpansion(tuple(terms), model.prefactor)


# ---------------------------------------------------------------------------
# W / U / Tutte specializations


@dataclass(frozen=True)
class WReduction:
    """``Z = prefactor · W(graph; {x_k}, y)`` for integer-scaled fields."""

    graph: WeightedMultigraph
    x: Mapping[int, complex]
    y: complex
    prefactor: complex

    def assignment(self, W: SparsePolynomial) -> dict[str, complex]:
        out = {}
        for key in W.variables():
            if key == engine.Y:
                out[key] = self.y
            else:
                out[key] = self.x[parse_weight(key[2:-1]).entries]
        return out

    def evaluate(self, *, via: str = "w", max_edges: int | None = None) -> complex:
        """Evaluate with the W-polynomial (``via="w"``) or the U-polynomial (``"u"``)."""
        if via == "u":
            if any(w.entries != 1 for w in self.graph.vertices.values()):
                raise SpecMismatch("the U form needs every multiplier equal to 1")
            poly = engine.u_polynomial(self.graph, method="v", max_edges=max_edges)
        else:
            poly = engine.w_polynomial(self.graph, method="v", max_edges=max_edges)
        return self.prefactor * poly.evaluate(self.assignment(poly))


def reduce_to_w(spec: HamiltonianSpec, g: WeightedMultigraph) -> WReduction:
    """Integer weights ``k_i``, ``x_k = Σ_α e^{βkB_α}/(e^{βJ} − 1)``, ``y = e^{βJ}``.

    Also accepts the constant-field family (all ``k_i = 1``). Needs
    ``e^{βJ} ≠ 1``.
    """
    if spec.family is Family.CONSTANT:
        k = {v: 1 for v in g.vertices}
    elif spec.family is Family.INTEGER_SCALED:
        spec._cover(spec.k, g, "k")
        k = dict(spec.k)
    else:
        raise SpecMismatch(f"reduce_to_w needs an integer-scaled or constant field, got {spec.family.value}")
    beta = complex(spec.beta)
    J = spec.constant_coupling(g)
    y = _exp(beta * complex(J))
    v = y - 1
    if v == 0:
        raise SpecMismatch("e^{βJ} = 1 makes the W form singular; use partition_via_v")
    graph = g.with_weights({vid: SemigroupWeight.integer(k[vid]) for vid in g.vertices})
    total_k = sum(k[vid] for vid in g.vertices)
    x = {
        m: sum((_exp(beta * m * complex(b)) for b in spec.B), 0j) / v
        for m in range(1, total_k + 1)
    }
    return WReduction(graph, x, y, v ** g.num_vertices())


def constant_field_reduction(spec: HamiltonianSpec, g: WeightedMultigraph) -> complex:
    """Constant field through the U-polynomial, evaluated at ``y = e^{βJ}``."""
    if spec.family is not Family.CONSTANT:
        raise SpecMismatch("constant_field_reduction needs the constant-field family")
    return reduce_to_w(spec, g).evaluate(via="u")


def classical_zero_field(
    g: WeightedMultigraph,
    q: int,
    beta,
    J=None,
    *,
    method: str = "multivariate-tutte",
) -> complex:
    """Zero-field ``Z`` as ``Z_T(G; q, {e^{βJ_e} − 1})`` or, for constant ``J``,
    ``q^{k(G)} v^{|V|−k(G)} T(G; (q + v)/v, v + 1)``."""
    spec = HamiltonianSpec.zero(q, beta, J)
    Js = spec.couplings(g)
    b = complex(beta)
    gamma = {e: _exp(b * complex(j)) - 1 for e, j in Js.items()}
    if method == "multivariate-tutte":
        valued = g.with_edge_weights({e: EdgeWeight.of_value(gamma[e]) for e in g.edges})
        return complex(engine.multivariate_tutte(valued, complex(q), method="state-sum"))
    if method == "tutte":
        v = gamma[next(iter(gamma))] if gamma else 0j
        spec.constant_coupling(g)
        return tutte_form(g, q, v)
    raise ValueError(f"unknown method {method!r}")


def tutte_form(g: WeightedMultigraph, q, v):
    """``q^{k(G)} v^{|V|−k(G)} T(G; (q + v)/v, v + 1)``; exact when ``q``, ``v`` are exact."""
    T = engine.tutte_polynomial(g, method="w")
    k = g.components().k
    n = g.num_vertices()
    if not g.edges:
        return q ** n if is_exact(q) else complex(q) ** n
    if v == 0:
        raise SpecMismatch("the Tutte form is singular at v = 0")
    if is_exact(q) and is_exact(v):
        point = {engine.TUTTE_X: Fraction(q + v) / v, engine.TUTTE_Y: v + 1}
        return q ** k * v ** (n - k) * T.evaluate_exact(point)
    q, v = complex(q), complex(v)
    point = {engine.TUTTE_X: (q + v) / v, engine.TUTTE_Y: v + 1}
    return q ** k * v ** (n - k) * T.evaluate(point)


def preferred_spin_reduction(
    spec: HamiltonianSpec, g: WeightedMultigraph, *, mode: str = "auto", max_edges: int | None = None
) -> complex:
    """``Z = V(G, z; {e^{βz} + q − 1}, {e^{βJ_e} − 1})`` with scalar weights ``z_i``."""
    if spec.family is not Family.PREFERRED:
        raise SpecMismatch("preferred_spin_reduction needs the preferred-spin family")
    return _evaluate_reduced(reduced_model(spec, g), mode, "deletion-contraction", max_edges, False)


def r_field_reduction(
    spec: HamiltonianSpec, g: WeightedMultigraph, *, mode: str = "auto", max_edges: int | None = None
) -> complex:
    """``Z = V(G, M|r; {q − r + Σ_{α≤r} e^{βM_α}}, {e^{βJ_e} − 1})``."""
    if spec.family is not Family.R_FIELD:
        raise SpecMismatch("r_field_reduction needs the r-field family")
    return _evaluate_reduced(reduced_model(spec, g), mode, "deletion-contraction", max_edges, False)


def ising_partition(
    spec: HamiltonianSpec,
    g: WeightedMultigraph,
    *,
    method: str = "v",
    mode: str = "auto",
    max_states: int | None = None,
    max_edges: int | None = None,
) -> complex:
    """Ising ``Z`` with spins ±1 and ``h(τ) = −Σ J_e τ_iτ_j − Σ z_i τ_i``.

    ``method="bruteforce"`` sums over all ``2^{|V|}`` states; ``"v"`` uses
    ``e^{−β(ΣJ_e + 3Σz_i)} V(G, z; {e^{2βz} + e^{4βz}}, {e^{2βJ_e} − 1})``,
    from the state map ``τ_i = 2σ_i − 3``.
    """
    if spec.family is not Family.ISING or spec.q != 2:
        raise SpecMismatch("ising_partition needs the Ising family (q = 2)")
    if method == "bruteforce":
        return partition_bruteforce(spec, g, max_states=max_states)
    if method != "v":
        raise ValueError(f"unknown method {method!r}")
    return _evaluate_reduced(reduced_model(spec, g), mode, "deletion-contraction", max_edges, False)


def ising_spin_glass(g: WeightedMultigraph, beta, J=None) -> complex:
    """Zero-field Ising: ``e^{−βΣJ_e} Z_T(G; 2, {e^{2βJ_e} − 1})``."""
    spec = HamiltonianSpec.ising(beta, {v: 0 for v in g.vertices}, J)
    b = complex(beta)
    Js = spec.couplings(g)
    valued = g.with_edge_weights({e: EdgeWeight.of_value(_exp(2 * b * complex(j)) - 1) for e, j in Js.items()})
    zt = complex(engine.multivariate_tutte(valued, 2.0, method="state-sum"))
    return _exp(-b * sum((complex(j) for j in Js.values()), 0j)) * zt


def rfim_partition(g: WeightedMultigraph, beta, J, z: Mapping[str, object]) -> complex:
    """Random-field Ising with constant ``J``.

    Prefactor ``e^{−β(J|E| + 3Σz_i)}``: the sum of couplings over edges.
    """
    spec = HamiltonianSpec.ising(beta, z, J)
    spec.constant_coupling(g)
    return ising_partition(spec, g, method="v")


# ---------------------------------------------------------------------------
# polynomiality


def subset_sum_keys(weights: Sequence[SemigroupWeight]) -> set[str]:
    """Keys ``x[Σ ε_i w_i]`` over all ``ε ∈ {0,1}^n`` (the empty sum included when n > 0)."""
    weights = list(weights)
    if not weights:
        return set()
    first = weights[0]
    if first.dimension is None:
        zero = SemigroupWeight.integer(0)
    else:
        zero = SemigroupWeight(first.kind, tuple(0 * e for e in first.entries))
    sums = {zero}
    for w in weights:
        sums |= {s + w for s in sums}
    return {xvar(canonical_key(s)) for s in sums}


def polynomiality_violations(spec: HamiltonianSpec, g: WeightedMultigraph) -> set[str]:
    """``x`` keys of the symbolic V outside the subset-sum set of the fields (should be empty)."""
    model, V = potts_v_polynomial(spec, g)
    allowed = subset_sum_keys(list(model.graph.vertices.values()))
    return {k for k in V.variables() if k.startswith("x[")} - allowed
