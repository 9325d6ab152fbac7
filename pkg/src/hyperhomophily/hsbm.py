"""Block-model generator of k-uniform hypergraphs with tunable homophily.

Nodes are split into equal-size attribute partitions. Each edge is drawn
independently: with probability p (when p > 0) it is pure, i.e. sampled
inside a single random partition; with probability |p| (when p < 0) it is
balanced, spreading its k slots across the attributes as evenly as possible;
otherwise it is a uniform random k-subset of all nodes. The mixing parameter
p therefore sweeps the generated hypergraph from strongly heterophilic (-1)
through random (0) to fully homophilic (+1).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .homophily import HomophilyReport, analyze
from .hypergraph import Hypergraph
from .nullmodel import SamplerConfig, derive_seed

_GEN_STREAM = 0  # seed-derivation tags, so generation and analysis
_ANALYZE_STREAM = 1  # streams of one sweep never collide


@dataclass(frozen=True)
class HsbmConfig:
    num_nodes: int
    num_attributes: int
    k: int
    num_edges: int
    p: float
    seed: int = 42

    def __post_init__(self):
        if self.num_attributes < 1 or self.num_nodes < 1:
            raise ValueError("num_nodes and num_attributes must be >= 1")
        if self.num_nodes % self.num_attributes != 0:
            raise ValueError(
                f"num_nodes ({self.num_nodes}) must be divisible by "
                f"num_attributes ({self.num_attributes})"
            )
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.num_edges < 1:
            raise ValueError("num_edges must be >= 1")
        if not -1.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [-1, 1]")
        if self.k > self.num_nodes:
            raise ValueError("k cannot exceed the number of nodes")
        if self.p > 0 and self.k > self.num_nodes // self.num_attributes:
            raise ValueError(
                "a pure edge must fit in one partition: "
                f"k ({self.k}) > nodes per partition "
                f"({self.num_nodes // self.num_attributes})"
            )


def generate_hsbm(cfg: HsbmConfig) -> Hypergraph:
    """Generate a hypergraph from the block model (deterministic per seed)."""
    rng = np.random.default_rng(derive_seed(cfg.seed))
    per_part = cfg.num_nodes // cfg.num_attributes
    attributes = np.repeat(np.arange(cfg.num_attributes), per_part)

    base, extra = divmod(cfg.k, cfg.num_attributes)
    edges = np.empty((cfg.num_edges, cfg.k), dtype=np.int64)
    for i in range(cfg.num_edges):
        u = rng.random()
        if cfg.p > 0 and u < cfg.p:
            part = int(rng.integers(cfg.num_attributes))
            edge = part * per_part + rng.choice(per_part, size=cfg.k, replace=False)
        elif cfg.p < 0 and u < -cfg.p:
            # as even as possible: each attribute gets base or base+1 slots
            take = np.full(cfg.num_attributes, base, dtype=np.int64)
            if extra:
                take[rng.choice(cfg.num_attributes, size=extra, replace=False)] += 1
            parts = []
            for attr in range(cfg.num_attributes):
                if take[attr]:
                    parts.append(
                        attr * per_part
                        + rng.choice(per_part, size=int(take[attr]), replace=False)
                    )
            edge = np.concatenate(parts)
        else:
            edge = rng.choice(cfg.num_nodes, size=cfg.k, replace=False)
        edges[i] = np.sort(edge)

    offsets = np.arange(cfg.num_edges + 1, dtype=np.int64) * cfg.k
    names = tuple(f"group-{i}" for i in range(cfg.num_attributes))
    return Hypergraph._from_csr(attributes, edges.ravel(), offsets, names)


@dataclass(frozen=True)
class SweepPoint:
    p: float
    phi: float
    phi_std_error: float
    edges_scored: int


@dataclass(frozen=True)
class GridPoint:
    k: int
    p: float
    phi: float
    phi_std_error: float
    edges_scored: int


def _analyze_point(
    cfg: HsbmConfig, sampler: SamplerConfig, index: int
) -> HomophilyReport:
    h = generate_hsbm(replace(cfg, seed=derive_seed(cfg.seed, _GEN_STREAM, index)))
    point_sampler = replace(sampler, seed=derive_seed(sampler.seed, _ANALYZE_STREAM, index))
    return analyze(h, point_sampler)


def sweep_phi_vs_p(
    base_cfg: HsbmConfig,
    p_grid: Sequence[float],
    sampler: SamplerConfig | None = None,
) -> tuple[SweepPoint, ...]:
    """Generate and analyze one hypergraph per mixing level."""
    sampler = sampler or SamplerConfig()
    points = []
    for i, p in enumerate(p_grid):
        report = _analyze_point(replace(base_cfg, p=float(p)), sampler, i)
        points.append(
            SweepPoint(
                p=float(p),
                phi=report.global_phi,
                phi_std_error=report.global_phi_std_error,
                edges_scored=report.edges_scored,
            )
        )
    return tuple(points)


def sweep_phi_vs_k(
    base_cfg: HsbmConfig,
    k_grid: Sequence[int],
    p_grid: Sequence[float],
    sampler: SamplerConfig | None = None,
) -> tuple[GridPoint, ...]:
    """Full (size, mixing level) grid of generated-and-analyzed hypergraphs."""
    sampler = sampler or SamplerConfig()
    points = []
    index = 0
    for k in k_grid:
        for p in p_grid:
            report = _analyze_point(
                replace(base_cfg, k=int(k), p=float(p)), sampler, index
            )
            points.append(
                GridPoint(
                    k=int(k),
                    p=float(p),
                    phi=report.global_phi,
                    phi_std_error=report.global_phi_std_error,
                    edges_scored=report.edges_scored,
                )
            )
            index += 1
    return tuple(points)
