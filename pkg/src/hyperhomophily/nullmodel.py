"""Baseline diversity under degree-preserving random mixing.

The null model draws k nodes sequentially without replacement, each draw
proportional to the node's remaining weight (its k-degree). Sampling uses the
exponential-race equivalence: with independent keys Exp(1)/w_i, the k nodes
with the smallest keys follow exactly that sequential distribution, which lets
whole batches of samples be drawn with array operations.

Two routes to the expected diversity are provided: a Monte Carlo estimator for
real data and an exact ordered-tuple enumeration for small instances, used as
the estimator's oracle in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .diversity import _hill_from_counts, bulk_diversity
from .exceptions import InsufficientPopulationError, StateSpaceError
from .hypergraph import Hypergraph, k_degrees, total_degrees

ENUMERATION_GUARD = 10_000_000  # max n**k for exact_baseline
_BATCH_CELLS = 1 << 22  # key-matrix cells per sampling batch (~32 MB)
_SEED_MASK = (1 << 64) - 1


def derive_seed(*parts: int) -> int:
    """Mix integer parts into one 64-bit stream seed (stable across runs)."""
    entropy = [p & _SEED_MASK for p in parts]
    return int(np.random.SeedSequence(entropy).generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class SamplerConfig:
    """Monte Carlo settings for baseline estimation.

    ``use_total_degree`` switches the sampling weights from per-size degrees
    to whole-hypergraph degrees (diagnostic variant).
    """

    samples: int = 10_000
    seed: int = 42
    diversity_order: float = 1.0
    use_total_degree: bool = False

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.diversity_order < 0:
            raise ValueError("diversity order must be >= 0")


@dataclass(frozen=True)
class BaselineEstimate:
    """Estimated expected diversity of a random k-set, with its uncertainty."""

    k: int
    mean: float
    std_error: float
    samples: int
    seed: int
    diversity_order: float


def _positive_subset(weights: np.ndarray) -> np.ndarray:
    weights = np.asarray(weights, dtype=np.float64)
    if weights.ndim != 1:
        raise ValueError("weights must be a 1-d array")
    if np.any(weights < 0):
        raise ValueError("weights must be non-negative")
    return np.flatnonzero(weights > 0)


def sample_weighted_k_sets(
    weights: np.ndarray, k: int, count: int, rng: np.random.Generator
) -> np.ndarray:
    """Draw ``count`` sets of ``k`` distinct indices, sequentially weighted.

    Each set is distributed as k successive draws without replacement with
    probability proportional to weight among the not-yet-drawn indices.
    Returns an int array of shape (count, k); entries within a row are the
    selected node indices in ascending order.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    pos = _positive_subset(weights)
    if pos.size < k:
        raise InsufficientPopulationError(
            f"need {k} positive-weight nodes, found {pos.size}"
        )
    w = np.asarray(weights, dtype=np.float64)[pos]
    n = pos.size
    out = np.empty((count, k), dtype=np.int64)
    batch = max(1, min(count, _BATCH_CELLS // n))
    done = 0
    while done < count:
        b = min(batch, count - done)
        keys = rng.exponential(size=(b, n)) / w
        out[done : done + b] = np.argpartition(keys, k - 1, axis=1)[:, :k]
        done += b
    return np.sort(pos[out], axis=1)


def sample_weighted_k_set(
    weights: np.ndarray, k: int, rng: np.random.Generator
) -> np.ndarray:
    """Single draw variant of :func:`sample_weighted_k_sets`."""
    return sample_weighted_k_sets(weights, k, 1, rng)[0]


def _sample_diversities(
    attributes: np.ndarray,
    weights: np.ndarray,
    k: int,
    samples: int,
    order: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Diversity of each of ``samples`` weighted k-sets (batched internally)."""
    pos = _positive_subset(weights)
    if pos.size < k:
        raise InsufficientPopulationError(
            f"need {k} positive-weight nodes, found {pos.size}"
        )
    w = np.asarray(weights, dtype=np.float64)[pos]
    attrs = attributes[pos]
    if attrs.size and attrs.min() < 0:
        raise ValueError("positive-weight nodes must all carry an attribute")
    n = pos.size
    values = np.empty(samples, dtype=np.float64)
    batch = max(1, min(samples, _BATCH_CELLS // n))
    done = 0
    while done < samples:
        b = min(batch, samples - done)
        keys = rng.exponential(size=(b, n)) / w
        picked = np.argpartition(keys, k - 1, axis=1)[:, :k]
        values[done : done + b] = bulk_diversity(attrs[picked], order)[0]
        done += b
    return values


def estimate_baseline(h: Hypergraph, k: int, cfg: SamplerConfig) -> BaselineEstimate:
    """Monte Carlo estimate of the expected diversity of a random size-k group.

    Weights are the k-degrees of ``h`` (or total degrees when configured).
    The RNG stream is derived from (cfg.seed, k), so estimates for different
    sizes are independent and a fixed seed reproduces the estimate bitwise no
    matter how calls are scheduled.
    """
    if k < 2:
        raise ValueError("k must be >= 2 (a size-1 baseline is identically 1)")
    weights = total_degrees(h) if cfg.use_total_degree else k_degrees(h, k).degrees
    rng = np.random.default_rng(derive_seed(cfg.seed, k))
    values = _sample_diversities(
        h.attributes, weights.astype(np.float64), k, cfg.samples, cfg.diversity_order, rng
    )
    mean = float(np.mean(values))
    if cfg.samples > 1:
        std_error = float(np.std(values, ddof=1) / math.sqrt(cfg.samples))
    else:
        std_error = 0.0
    return BaselineEstimate(
        k=k,
        mean=mean,
        std_error=std_error,
        samples=cfg.samples,
        seed=cfg.seed,
        diversity_order=cfg.diversity_order,
    )


def _exact_expected_diversity(
    attributes: np.ndarray, weights: np.ndarray, k: int, order: float
) -> float:
    """Exact expectation by enumerating every ordered k-tuple of distinct nodes.

    Each tuple (v_1..v_k) carries probability prod_j w_{v_j} / (W - sum of
    weights drawn before j). Intentionally simple; the n**k guard keeps it
    tractable.
    """
    pos = _positive_subset(weights)
    n = pos.size
    if n < k:
        raise InsufficientPopulationError(
            f"need {k} positive-weight nodes, found {pos.size}"
        )
    if n**k > ENUMERATION_GUARD:
        raise StateSpaceError(
            f"{n} nodes at k={k} exceeds the enumeration guard ({ENUMERATION_GUARD})"
        )
    w = np.asarray(weights, dtype=np.float64)[pos]
    attrs = attributes[pos]
    if attrs.min() < 0:
        raise ValueError("positive-weight nodes must all carry an attribute")
    num_attrs = int(attrs.max()) + 1
    counts = np.zeros(num_attrs, dtype=np.int64)
    used = np.zeros(n, dtype=bool)
    total_weight = float(w.sum())
    expectation = 0.0

    def descend(depth: int, prob: float, remaining: float) -> None:
        nonlocal expectation
        if depth == k:
            expectation += prob * _hill_from_counts(counts[counts > 0], order)
            return
        for j in range(n):
            if used[j]:
                continue
            used[j] = True
            counts[attrs[j]] += 1
            descend(depth + 1, prob * w[j] / remaining, remaining - w[j])
            counts[attrs[j]] -= 1
            used[j] = False

    descend(0, 1.0, total_weight)
    return expectation


def exact_baseline(h: Hypergraph, k: int, diversity_order: float = 1.0) -> float:
    """Exact counterpart of :func:`estimate_baseline` for small instances."""
    if k < 2:
        raise ValueError("k must be >= 2 (a size-1 baseline is identically 1)")
    weights = k_degrees(h, k).degrees.astype(np.float64)
    return _exact_expected_diversity(h.attributes, weights, k, diversity_order)
