"""Per-hyperedge homophily scores and their hypergraph-level aggregate.

Each hyperedge's observed diversity is compared with the null-model baseline
for its size. The shortfall, normalized by the largest shortfall a fully pure
edge could achieve, gives a score of 1 for pure edges, 0 for edges consistent
with random mixing, and negative values for edges more diverse than chance.
The hypergraph-level index is the mean score over all scorable edges.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .diversity import bulk_diversity
from .exceptions import (
    DegenerateMixingError,
    EmptyAnalysisError,
    InsufficientPopulationError,
)
from .hypergraph import UNLABELED, Hypergraph
from .nullmodel import BaselineEstimate, SamplerConfig, estimate_baseline

DEFAULT_EPSILON = 1e-9

EXCLUDED_SIZE_ONE = "size_1"
EXCLUDED_INSUFFICIENT = "insufficient_population"
EXCLUDED_DEGENERATE = "degenerate_baseline"


@dataclass(frozen=True)
class HomophilyRecord:
    """Score bundle for one hyperedge."""

    k: int
    observed: float
    baseline: float
    gap: float
    gap_max: float
    gap_min: float
    phi: float
    phi_min: float
    degenerate: bool
    edge_index: int = -1


@dataclass(frozen=True)
class PerKRow:
    """Aggregates for the scored edges of one size."""

    k: int
    edge_count: int
    baseline_mean: float
    baseline_std_error: float
    phi_k: float
    mean_observed: float


@dataclass(frozen=True)
class CurveRow:
    """Observed vs. baseline diversity for one size (plot-ready)."""

    k: int
    mean_observed: float
    baseline_mean: float
    baseline_std_error: float
    edge_count: int


@dataclass(frozen=True)
class Exclusion:
    reason: str
    k: int
    count: int


@dataclass(frozen=True)
class HomophilyReport:
    global_phi: float
    global_phi_std_error: float
    edge_total: int
    edges_scored: int
    edges_excluded: int
    per_k: tuple[PerKRow, ...]
    exclusions: tuple[Exclusion, ...]
    per_edge: tuple[HomophilyRecord, ...] | None = None


def score_edge(
    observed: float,
    baseline: BaselineEstimate,
    m_e: int,
    epsilon: float = DEFAULT_EPSILON,
) -> HomophilyRecord:
    """Score one hyperedge against its size's baseline.

    When the baseline itself is within ``epsilon`` of 1 the null model is
    pure and offers no contrast; the edge is flagged degenerate and scored 0.
    """
    if m_e < 1:
        raise ValueError("m_e must be >= 1")
    if observed < 1.0 - 1e-12 or observed > m_e + 1e-12:
        raise ValueError(
            f"observed diversity {observed} outside valid range [1, {m_e}]"
        )
    gap = baseline.mean - observed
    gap_max = baseline.mean - 1.0
    gap_min = baseline.mean - m_e
    if gap_max < epsilon:
        phi = 0.0
        phi_min = 0.0
        degenerate = True
    else:
        phi = gap / gap_max
        phi_min = gap_min / gap_max
        degenerate = False
    return HomophilyRecord(
        k=baseline.k,
        observed=float(observed),
        baseline=baseline.mean,
        gap=gap,
        gap_max=gap_max,
        gap_min=gap_min,
        phi=phi,
        phi_min=phi_min,
        degenerate=degenerate,
    )


@dataclass(frozen=True)
class _Bucket:
    """Everything computed for the edges of one size."""

    k: int
    edge_indices: np.ndarray
    observed: np.ndarray  # empty when the population was insufficient
    m_e: np.ndarray
    baseline: BaselineEstimate | None
    degenerate: bool


def _check_labeled(h: Hypergraph, sizes: np.ndarray, min_size: int = 2) -> None:
    incident = h.edge_nodes[np.repeat(sizes >= min_size, sizes)]
    if incident.size and h.attributes[incident].min() == UNLABELED:
        raise ValueError(
            "hyperedges of size >= 2 touch unlabeled nodes; "
            "re-ingest with drop_unlabeled=True or label every node"
        )


def _edge_labels(h: Hypergraph, sizes: np.ndarray, k: int) -> np.ndarray:
    keep = sizes == k
    flat = h.edge_nodes[np.repeat(keep, sizes)]
    return h.attributes[flat].reshape(-1, k)


def _compute_bucket(
    h: Hypergraph, sizes: np.ndarray, k: int, cfg: SamplerConfig, epsilon: float
) -> _Bucket:
    edge_indices = np.flatnonzero(sizes == k)
    try:
        baseline = estimate_baseline(h, k, cfg)
    except InsufficientPopulationError:
        return _Bucket(
            k=k,
            edge_indices=edge_indices,
            observed=np.empty(0),
            m_e=np.empty(0, dtype=np.int64),
            baseline=None,
            degenerate=False,
        )
    observed, m_e = bulk_diversity(_edge_labels(h, sizes, k), cfg.diversity_order)
    return _Bucket(
        k=k,
        edge_indices=edge_indices,
        observed=observed,
        m_e=m_e,
        baseline=baseline,
        degenerate=baseline.mean - 1.0 < epsilon,
    )


def _buckets(
    h: Hypergraph, cfg: SamplerConfig, epsilon: float, workers: int
) -> tuple[list[_Bucket], int]:
    """Per-size computations for all sizes >= 2, plus the size-1 edge count.

    Buckets are returned in ascending size order regardless of ``workers``;
    each bucket draws from its own seed-derived stream, so the worker count
    never affects any numeric result.
    """
    if h.num_edges == 0:
        raise EmptyAnalysisError("hypergraph has no hyperedges")
    sizes = h.sizes
    _check_labeled(h, sizes)
    size_one = int(np.count_nonzero(sizes == 1))
    ks = sorted(int(k) for k in np.unique(sizes) if k >= 2)
    if not ks:
        raise EmptyAnalysisError("no hyperedges of size >= 2")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            buckets = list(
                pool.map(lambda k: _compute_bucket(h, sizes, k, cfg, epsilon), ks)
            )
    else:
        buckets = [_compute_bucket(h, sizes, k, cfg, epsilon) for k in ks]
    return buckets, size_one


def _report_from_buckets(
    h: Hypergraph,
    buckets: list[_Bucket],
    size_one: int,
    epsilon: float,
    emit_per_edge: bool,
) -> HomophilyReport:
    exclusions: list[Exclusion] = []
    if size_one:
        exclusions.append(Exclusion(EXCLUDED_SIZE_ONE, 1, size_one))
    per_k: list[PerKRow] = []
    phi_blocks: list[np.ndarray] = []
    records: list[HomophilyRecord] = []

    for b in buckets:
        count = int(b.edge_indices.size)
        if b.baseline is None:
            exclusions.append(Exclusion(EXCLUDED_INSUFFICIENT, b.k, count))
            continue
        if b.degenerate:
            exclusions.append(Exclusion(EXCLUDED_DEGENERATE, b.k, count))
            if emit_per_edge:
                for idx, obs, m in zip(b.edge_indices, b.observed, b.m_e):
                    records.append(
                        replace(
                            score_edge(float(obs), b.baseline, int(m), epsilon),
                            edge_index=int(idx),
                        )
                    )
            continue
        mean = b.baseline.mean
        phis = (mean - b.observed) / (mean - 1.0)
        phi_blocks.append(phis)
        per_k.append(
            PerKRow(
                k=b.k,
                edge_count=count,
                baseline_mean=mean,
                baseline_std_error=b.baseline.std_error,
                phi_k=float(np.mean(phis)),
                mean_observed=float(np.mean(b.observed)),
            )
        )
        if emit_per_edge:
            gap_max = mean - 1.0
            for idx, obs, m, phi in zip(b.edge_indices, b.observed, b.m_e, phis):
                records.append(
                    HomophilyRecord(
                        k=b.k,
                        observed=float(obs),
                        baseline=mean,
                        gap=mean - float(obs),
                        gap_max=gap_max,
                        gap_min=mean - int(m),
                        phi=float(phi),
                        phi_min=(mean - int(m)) / gap_max,
                        degenerate=False,
                        edge_index=int(idx),
                    )
                )

    if not phi_blocks:
        raise EmptyAnalysisError("no scorable hyperedges after exclusions")
    all_phis = np.concatenate(phi_blocks)
    scored = int(all_phis.size)
    global_phi = float(np.mean(all_phis))
    if scored > 1:
        phi_se = float(np.std(all_phis, ddof=1) / np.sqrt(scored))
    else:
        phi_se = 0.0

    per_edge = None
    if emit_per_edge:
        records.sort(key=lambda r: r.edge_index)
        per_edge = tuple(records)

    return HomophilyReport(
        global_phi=global_phi,
        global_phi_std_error=phi_se,
        edge_total=h.num_edges,
        edges_scored=scored,
        edges_excluded=h.num_edges - scored,
        per_k=tuple(per_k),
        exclusions=tuple(exclusions),
        per_edge=per_edge,
    )


def analyze(
    h: Hypergraph,
    cfg: SamplerConfig | None = None,
    epsilon: float = DEFAULT_EPSILON,
    emit_per_edge: bool = False,
    workers: int = 1,
) -> HomophilyReport:
    """Score every hyperedge of size >= 2 and aggregate.

    One baseline is estimated per size present. Size-1 edges, edges of sizes
    whose eligible population is smaller than the size, and edges whose
    baseline is itself pure (degenerate) are excluded from the averages and
    reported with reasons. The global index averages the per-edge scores over
    the scored edges.
    """
    cfg = cfg or SamplerConfig()
    buckets, size_one = _buckets(h, cfg, epsilon, workers)
    return _report_from_buckets(h, buckets, size_one, epsilon, emit_per_edge)


def _curve_from_buckets(
    h: Hypergraph, order: float, buckets: list[_Bucket]
) -> tuple[CurveRow, ...]:
    sizes = h.sizes
    rows = []
    for b in buckets:
        if b.observed.size:
            mean_obs = float(np.mean(b.observed))
        else:  # population was insufficient; observed still well-defined
            mean_obs = float(
                np.mean(bulk_diversity(_edge_labels(h, sizes, b.k), order)[0])
            )
        rows.append(
            CurveRow(
                k=b.k,
                mean_observed=mean_obs,
                baseline_mean=b.baseline.mean if b.baseline else float("nan"),
                baseline_std_error=b.baseline.std_error if b.baseline else float("nan"),
                edge_count=int(b.edge_indices.size),
            )
        )
    return tuple(rows)


def perplexity_curve(
    h: Hypergraph,
    cfg: SamplerConfig | None = None,
    epsilon: float = DEFAULT_EPSILON,
    workers: int = 1,
) -> tuple[CurveRow, ...]:
    """Mean observed diversity next to the baseline, per hyperedge size.

    Rows cover every size >= 2 present. Sizes whose population cannot support
    a baseline keep their observed mean and get NaN baseline columns.
    """
    cfg = cfg or SamplerConfig()
    buckets, _ = _buckets(h, cfg, epsilon, workers)
    return _curve_from_buckets(h, cfg.diversity_order, buckets)


def newman_assortativity(h: Hypergraph) -> float:
    """Categorical assortativity of the size-2 edges.

    Builds the attribute mixing matrix with each pair counted once per
    orientation and returns (trace - sum a_i b_i) / (1 - sum a_i b_i).
    """
    sizes = h.sizes
    keep = sizes == 2
    if not keep.any():
        raise EmptyAnalysisError("no size-2 hyperedges")
    flat = h.edge_nodes[np.repeat(keep, sizes)].reshape(-1, 2)
    labels = h.attributes[flat]
    if labels.min() == UNLABELED:
        raise ValueError("size-2 hyperedges touch unlabeled nodes")
    m = h.num_attributes
    mixing = np.zeros((m, m), dtype=np.float64)
    np.add.at(mixing, (labels[:, 0], labels[:, 1]), 1.0)
    np.add.at(mixing, (labels[:, 1], labels[:, 0]), 1.0)
    mixing /= mixing.sum()
    a = mixing.sum(axis=1)
    b = mixing.sum(axis=0)
    ab = float(a @ b)
    denominator = 1.0 - ab
    if abs(denominator) < 1e-15:
        raise DegenerateMixingError(
            "mixing matrix is concentrated on a single attribute"
        )
    return float((np.trace(mixing) - ab) / denominator)
