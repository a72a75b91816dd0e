"""Cross-validation of the partition-function routes.

The harness computes ``Z`` by every independent route available for the
instance's family and requires pairwise agreement within a relative
tolerance. A failing instance is reported as a self-contained JSON bundle
that :func:`verify_bundle` (and ``vpoly verify --bundle``) can replay.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from . import io, potts
from .instances import random_general_instance, random_ising_instance
from .multigraph import WeightedMultigraph
from .potts import Family, HamiltonianSpec

DEFAULT_TOLERANCE = 1e-9


def rel_close(a: complex, b: complex, tol: float) -> bool:
    scale = max(abs(a), abs(b))
    return abs(a - b) <= tol * scale if scale else True


def rel_diff(a: complex, b: complex) -> float:
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale else 0.0


@dataclass
class TriangleResult:
    values: dict[str, complex]
    tolerance: float
    max_rel: float = 0.0
    reference: complex | None = None

    @property
    def ok(self) -> bool:
        if self.max_rel > self.tolerance:
            return False
        if self.reference is not None:
            return rel_close(self.values["bruteforce"], self.reference, self.tolerance)
        return True


def partition_routes(
    spec: HamiltonianSpec,
    g: WeightedMultigraph,
    *,
    max_edges: int | None = None,
    max_states: int | None = None,
) -> dict[str, complex]:
    """``Z`` by each route, keyed by route name."""
    values = {"bruteforce": potts.partition_bruteforce(spec, g, max_states=max_states)}
    if spec.family is Family.ISING:
        values["v"] = potts.ising_partition(spec, g, method="v", max_edges=max_edges)
    else:
        values["deletion-contraction"] = potts.partition_deletion_contraction(spec, g, max_edges=max_edges)
        values["v"] = potts.partition_via_v(spec, g, max_edges=max_edges)
    values["fk"] = potts.fk_expansion(spec, g, max_edges=max_edges).total()
    return values


def oracle_triangle(
    spec: HamiltonianSpec,
    g: WeightedMultigraph,
    tolerance: float = DEFAULT_TOLERANCE,
    *,
    reference: complex | None = None,
    **caps,
) -> TriangleResult:
    values = partition_routes(spec, g, **caps)
    worst = max((rel_diff(a, b) for a, b in itertools.combinations(values.values(), 2)), default=0.0)
    return TriangleResult(values, tolerance, worst, reference)


def make_bundle(spec: HamiltonianSpec, g: WeightedMultigraph, result: TriangleResult | None = None,
                **extra) -> dict[str, Any]:
    bundle: dict[str, Any] = {"spec": io.spec_to_json(spec), "graph": io.graph_to_json(g, q=spec.q)}
    if result is not None:
        bundle["values"] = {k: io.complex_to_json(v) for k, v in result.values.items()}
        bundle["max_rel"] = result.max_rel
        bundle["tolerance"] = result.tolerance
    bundle.update(extra)
    return bundle


def reference_bundle(spec: HamiltonianSpec, g: WeightedMultigraph) -> dict[str, Any]:
    """Bundle with the brute-force ``Z`` frozen as a regression reference."""
    bundle = make_bundle(spec, g)
    bundle["reference"] = {"Z": io.complex_to_json(potts.partition_bruteforce(spec, g))}
    return bundle


def verify_bundle(bundle: dict[str, Any], tolerance: float = DEFAULT_TOLERANCE, **caps) -> TriangleResult:
    spec = io.parse_spec(bundle["spec"])
    g = io.parse_graph(bundle["graph"])
    ref = bundle.get("reference", {}).get("Z")
    return oracle_triangle(
        spec, g, tolerance, reference=None if ref is None else io.complex_from_json(ref), **caps
    )


def suite_instance(seed: int, case: int) -> tuple[HamiltonianSpec, WeightedMultigraph]:
    """Case ``case`` of the seeded suite: every fourth case is Ising, the rest general."""
    rng = random.Random(f"{seed}:{case}")
    if case % 4 == 3:
        return random_ising_instance(rng, max_vertices=6, max_edges=7)
    return random_general_instance(rng)


@dataclass
class SuiteReport:
    seed: int
    cases: int
    failures: list[dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _run_case(args) -> dict[str, Any] | None:
    seed, case, tolerance = args
    spec, g = suite_instance(seed, case)
    result = oracle_triangle(spec, g, tolerance)
    if result.ok:
        return None
    return make_bundle(spec, g, result, seed=seed, case=case)


def run_random_suite(
    seed: int, cases: int, tolerance: float = DEFAULT_TOLERANCE, *, threads: int = 1
) -> SuiteReport:
    """Deterministic given ``seed``; failures are reported in case order."""
    jobs = [(seed, c, tolerance) for c in range(cases)]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(_run_case, jobs))
    else:
        outcomes = [_run_case(j) for j in jobs]
    return SuiteReport(seed, cases, [o for o in outcomes if o is not None])
