"""Vertex- and edge-weighted multigraphs with weight-summing contraction.

Graphs are immutable: :func:`delete_edge` and :func:`contract_edge` return new
graphs. Loops and parallel edges are allowed, and isolated vertices are kept
since each one contributes an ``x`` factor to the polynomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from networkx.utils import UnionFind

from .errors import DanglingEndpoint, DuplicateId, LoopContraction, MixedWeightKinds, UnknownEdge
from .weights import SemigroupWeight, add, total

__all__ = [
    "EdgeWeight",
    "Edge",
    "WeightedMultigraph",
    "ComponentReport",
    "delete_edge",
    "contract_edge",
    "components",
    "natural_key",
]


def natural_key(label: str):
    """Sort key ordering ``e2`` before ``e10``."""
    return tuple(int(part) if part.isdigit() else part for part in re.split(r"(\d+)", label))


@dataclass(frozen=True)
class EdgeWeight:
    """Edge weight: a formal symbol ``g[<edge-id>]``, a number, or a coupling ``J``.

    A coupling is symbolic as far as the polynomial is concerned; Potts
    evaluations read ``J`` from it when the Hamiltonian does not supply one.
    """

    kind: str = "symbol"
    value: object = None

    def __post_init__(self):
        if self.kind not in ("symbol", "value", "coupling"):
            raise ValueError(f"unknown edge weight kind {self.kind!r}")

    @classmethod
    def symbol(cls) -> "EdgeWeight":
        return cls("symbol")

    @classmethod
    def of_value(cls, value) -> "EdgeWeight":
        return cls("value", value)

    @classmethod
    def coupling(cls, J) -> "EdgeWeight":
        return cls("coupling", J)

    @property
    def is_symbolic(self) -> bool:
        return self.kind != "value"


@dataclass(frozen=True)
class Edge:
    u: str
    v: str
    weight: EdgeWeight = field(default_factory=EdgeWeight.symbol)

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass(frozen=True)
class ComponentReport:
    blocks: tuple[tuple[str, ...], ...]
    weights: tuple[SemigroupWeight, ...]
    k: int
    r: int
    n: int


class WeightedMultigraph:
    """Multigraph with a :class:`SemigroupWeight` on every vertex.

    Vertex and edge ids are strings; edge ids name the ``g[...]`` variables.
    """

    __slots__ = ("_vertices", "_edges", "_hash")

    def __init__(
        self,
        vertices: Mapping[str, SemigroupWeight],
        edges: Mapping[str, Edge] | None = None,
        *,
        _trusted: bool = False,
    ):
        self._vertices = dict(vertices)
        self._edges = dict(edges or {})
        self._hash = None
        if not _trusted:
            self._validate()

    def _validate(self):
        kinds = {(w.kind, w.dimension) for w in self._vertices.values()}
        if len(kinds) > 1:
            raise MixedWeightKinds(f"vertex weights of several kinds: {sorted(str(k) for k in kinds)}")
        for eid, e in self._edges.items():
            for end in (e.u, e.v):
                if end not in self._vertices:
                    raise DanglingEndpoint(f"edge {eid!r} references missing vertex {end!r}")

    @classmethod
    def from_lists(
        cls,
        vertices: Iterable[tuple[str, SemigroupWeight]],
        edges: Iterable[tuple] = (),
    ) -> "WeightedMultigraph":
        """Build from ``(id, weight)`` pairs and ``(id, u, v[, EdgeWeight])`` tuples.

        An edge id of ``None`` is replaced by the next free ``e<k>``.
        """
        vmap: dict[str, SemigroupWeight] = {}
        for vid, w in vertices:
            if vid in vmap:
                raise DuplicateId(f"duplicate vertex id {vid!r}")
            vmap[vid] = w
        emap: dict[str, Edge] = {}
        pending = []
        for item in edges:
            eid, u, v, *rest = item
            weight = rest[0] if rest else EdgeWeight.symbol()
            if eid is None:
                pending.append((u, v, weight))
                continue
            if eid in emap:
                raise DuplicateId(f"duplicate edge id {eid!r}")
            emap[eid] = Edge(u, v, weight)
        counter = 1
        for u, v, weight in pending:
            while f"e{counter}" in emap:
                counter += 1
            emap[f"e{counter}"] = Edge(u, v, weight)
        return cls(vmap, emap)

    # read-only views
    @property
    def vertices(self) -> Mapping[str, SemigroupWeight]:
        return self._vertices

    @property
    def edges(self) -> Mapping[str, Edge]:
        return self._edges

    def num_vertices(self) -> int:
        return len(self._vertices)

    def num_edges(self) -> int:
        return len(self._edges)

    def edge_ids(self) -> list[str]:
        return sorted(self._edges, key=natural_key)

    def loops(self) -> list[str]:
        return [eid for eid in self.edge_ids() if self._edges[eid].is_loop]

    def weight_sum(self) -> SemigroupWeight:
        return total(self._vertices.values())

    def delete_edge(self, e: str) -> "WeightedMultigraph":
        if e not in self._edges:
            raise UnknownEdge(e)
        edges = dict(self._edges)
        del edges[e]
        return WeightedMultigraph(self._vertices, edges, _trusted=True)

    def contract_edge(self, e: str) -> "WeightedMultigraph":
        if e not in self._edges:
            raise UnknownEdge(e)
        edge = self._edges[e]
        if edge.is_loop:
            raise LoopContraction(f"edge {e!r} is a loop; loops are not contracted")
        a, b = edge.u, edge.v
        keep, gone = (a, b) if a <= b else (b, a)
        vertices = dict(self._vertices)
        vertices[keep] = add(vertices[keep], vertices.pop(gone))
        edges = {}
        for eid, other in self._edges.items():
            if eid == e:
                continue
            u = keep if other.u == gone else other.u
            v = keep if other.v == gone else other.v
            edges[eid] = other if (u, v) == (other.u, other.v) else Edge(u, v, other.weight)
        return WeightedMultigraph(vertices, edges, _trusted=True)

    def with_weights(self, weights: Mapping[str, SemigroupWeight]) -> "WeightedMultigraph":
        """Same structure, vertex weights replaced (every vertex must be covered)."""
        missing = set(self._vertices) - set(weights)
        if missing:
            raise DanglingEndpoint(f"no weight for vertices {sorted(missing)}")
        return WeightedMultigraph({v: weights[v] for v in self._vertices}, self._edges)

    def with_edge_weights(self, weights: Mapping[str, EdgeWeight]) -> "WeightedMultigraph":
        edges = {eid: Edge(e.u, e.v, weights.get(eid, e.weight)) for eid, e in self._edges.items()}
        return WeightedMultigraph(self._vertices, edges, _trusted=True)

    def restrict_edges(self, keep: Iterable[str]) -> "WeightedMultigraph":
        keep = set(keep)
        return WeightedMultigraph(
            self._vertices, {eid: e for eid, e in self._edges.items() if eid in keep}, _trusted=True
        )

    def disjoint_union(self, other: "WeightedMultigraph") -> "WeightedMultigraph":
        clash = (set(self._vertices) & set(other._vertices)) | (set(self._edges) & set(other._edges))
        if clash:
            raise DuplicateId(f"ids shared by both graphs: {sorted(clash)}")
        return WeightedMultigraph(
            {**self._vertices, **other._vertices}, {**self._edges, **other._edges}
        )

    def components(self, A: Iterable[str] | None = None) -> ComponentReport:
        return components(self, self._edges if A is None else A)

    def encode(self) -> str:
        """Canonical text encoding of the labelled graph (used for memo keys)."""
        vs = ";".join(f"{v}={self._vertices[v].encode()}" for v in sorted(self._vertices))
        es = ";".join(
            f"{eid}={min(e.u, e.v)}~{max(e.u, e.v)}:{e.weight.kind}:{e.weight.value!r}"
            for eid, e in sorted(self._edges.items())
        )
        return f"V[{vs}]E[{es}]"

    def __eq__(self, other):
        if not isinstance(other, WeightedMultigraph):
            return NotImplemented
        if self._vertices != other._vertices or self._edges.keys() != other._edges.keys():
            return False
        for eid, e in self._edges.items():
            f = other._edges[eid]
            if e.weight != f.weight or {e.u, e.v} != {f.u, f.v}:
                return False
        return True

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.encode())
        return self._hash

    def __repr__(self):
        return f"WeightedMultigraph(|V|={len(self._vertices)}, |E|={len(self._edges)})"


def delete_edge(g: WeightedMultigraph, e: str) -> WeightedMultigraph:
    return g.delete_edge(e)


def contract_edge(g: WeightedMultigraph, e: str) -> WeightedMultigraph:
    return g.contract_edge(e)


def components(g: WeightedMultigraph, A: Iterable[str]) -> ComponentReport:
    """Components of the spanning subgraph ``(V(g), A)`` with their weight sums."""
    A = list(A)
    uf = UnionFind(g.vertices)
    for eid in A:
        try:
            edge = g.edges[eid]
        except KeyError:
            raise UnknownEdge(eid) from None
        uf.union(edge.u, edge.v)
    blocks = sorted((tuple(sorted(s)) for s in uf.to_sets()), key=lambda b: b[0])
    weights = tuple(total(g.vertices[v] for v in block) for block in blocks)
    k = len(blocks)
    r = g.num_vertices() - k
    return ComponentReport(tuple(blocks), weights, k, r, len(A) - r)
