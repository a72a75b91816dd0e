"""Seeded random instances for property checks and the ``verify`` suite."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .multigraph import EdgeWeight, WeightedMultigraph
from .potts import HamiltonianSpec
from .weights import SemigroupWeight


@dataclass(frozen=True)
class GraphConfig:
    min_vertices: int = 1
    max_vertices: int = 6
    max_edges: int = 7
    loop_prob: float = 0.15
    parallel_prob: float = 0.15
    weight_kind: str = "ZV"  # "Z", "Z+" (positive), "ZV", "unit"
    dim: int = 2
    weight_range: tuple[int, int] = (-3, 3)
    connected: bool = False


@dataclass(frozen=True)
class PottsConfig:
    qs: tuple[int, ...] = (2, 3)
    betas: tuple[Fraction, ...] = (Fraction(1, 2), Fraction(1))
    max_vertices: int = 5
    max_edges: int = 7
    field_bound: int = 2
    denominators: tuple[int, ...] = (1, 2, 3, 4)
    coupling_bound: int = 1


def _weight(rng: random.Random, cfg: GraphConfig) -> SemigroupWeight:
    lo, hi = cfg.weight_range
    if cfg.weight_kind == "unit":
        return SemigroupWeight.integer(1)
    if cfg.weight_kind == "Z":
        return SemigroupWeight.integer(rng.randint(lo, hi))
    if cfg.weight_kind == "Z+":
        return SemigroupWeight.integer(rng.randint(1, max(hi, 1)))
    return SemigroupWeight.integer_vector(rng.randint(lo, hi) for _ in range(cfg.dim))


def random_edges(rng: random.Random, vertices: list[str], cfg: GraphConfig) -> list[tuple[str, str]]:
    n = len(vertices)
    m = rng.randint(0, cfg.max_edges)
    pairs: list[tuple[str, str]] = []
    if cfg.connected:
        for i in range(1, n):
            pairs.append((vertices[rng.randrange(i)], vertices[i]))
        m = max(m, len(pairs))
    while len(pairs) < m:
        roll = rng.random()
        if roll < cfg.loop_prob:
            v = rng.choice(vertices)
            pairs.append((v, v))
        elif roll < cfg.loop_prob + cfg.parallel_prob and pairs:
            pairs.append(rng.choice(pairs))
        elif n > 1:
            u, v = rng.sample(vertices, 2)
            pairs.append((u, v))
        else:
            pairs.append((vertices[0], vertices[0]))
    return pairs


def random_multigraph(rng: random.Random, cfg: GraphConfig = GraphConfig()) -> WeightedMultigraph:
    """Multigraph with loops and parallel edges and symbolic edge weights."""
    n = rng.randint(cfg.min_vertices, cfg.max_vertices)
    vertices = [f"v{i}" for i in range(1, n + 1)]
    pairs = random_edges(rng, vertices, cfg)
    return WeightedMultigraph.from_lists(
        [(v, _weight(rng, cfg)) for v in vertices],
        [(f"e{i}", u, v) for i, (u, v) in enumerate(pairs, start=1)],
    )


def random_fraction(rng: random.Random, bound: int, denominators=(1, 2, 3, 4)) -> Fraction:
    den = rng.choice(denominators)
    return Fraction(rng.randint(-bound * den, bound * den), den)


def random_general_instance(
    rng: random.Random, cfg: PottsConfig = PottsConfig()
) -> tuple[HamiltonianSpec, WeightedMultigraph]:
    """General-field Potts instance with rational fields in ``[-bound, bound]``."""
    gcfg = GraphConfig(max_vertices=cfg.max_vertices, max_edges=cfg.max_edges, weight_kind="unit")
    g = random_multigraph(rng, gcfg)
    q = rng.choice(cfg.qs)
    beta = rng.choice(cfg.betas)
    fields = {
        v: tuple(random_fraction(rng, cfg.field_bound, cfg.denominators) for _ in range(q))
        for v in g.vertices
    }
    J = {e: random_fraction(rng, cfg.coupling_bound, cfg.denominators) for e in g.edges}
    g = g.with_edge_weights({e: EdgeWeight.coupling(j) for e, j in J.items()})
    return HamiltonianSpec.general(q, beta, fields), g


def random_ising_instance(
    rng: random.Random, max_vertices: int = 10, max_edges: int = 10, constant_J: bool = False
) -> tuple[HamiltonianSpec, WeightedMultigraph]:
    gcfg = GraphConfig(max_vertices=max_vertices, max_edges=max_edges, weight_kind="unit")
    g = random_multigraph(rng, gcfg)
    beta = rng.choice((Fraction(1, 2), Fraction(1)))
    z = {v: random_fraction(rng, 1) for v in g.vertices}
    if constant_J:
        J = random_fraction(rng, 1)
    else:
        J = {e: random_fraction(rng, 1) for e in g.edges}
    return HamiltonianSpec.ising(beta, z, J), g
