"""Effective attribute diversity of a hyperedge.

The central quantity is the perplexity of the edge's attribute proportions:
2 raised to the Shannon entropy in bits, i.e. the effective number of equally
represented attribute classes. It generalizes to the one-parameter family of
Hill numbers, where order 1 recovers perplexity, order 0 the number of
distinct attributes, and order 2 the inverse Simpson index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .hypergraph import UNLABELED, Hypergraph

Q_ONE_TOLERANCE = 1e-9  # orders within this of 1 use the entropy limit form


@dataclass(frozen=True)
class HyperedgeComposition:
    """Attribute counts of a single hyperedge.

    ``counts`` maps attribute id to a positive occurrence count; size and
    proportions are derived.
    """

    counts: Mapping[int, int]

    def __post_init__(self):
        if not self.counts:
            raise ValueError("composition must contain at least one attribute")
        for attr, count in self.counts.items():
            if count < 1:
                raise ValueError(f"count for attribute {attr} must be >= 1")

    @classmethod
    def from_counts(cls, counts) -> "HyperedgeComposition":
        """Build from a bare count sequence, assigning attribute ids 0, 1, ..."""
        return cls(dict(enumerate(int(c) for c in counts)))

    @property
    def size(self) -> int:
        return sum(self.counts.values())

    @property
    def num_attributes(self) -> int:
        """m_e: number of distinct attributes present."""
        return len(self.counts)

    @property
    def proportions(self) -> dict[int, float]:
        total = self.size
        return {attr: count / total for attr, count in self.counts.items()}


def composition(h: Hypergraph, edge_index: int) -> HyperedgeComposition:
    """Tally the attributes of one hyperedge's nodes."""
    attrs = h.attributes[h.edge(edge_index)]
    if np.any(attrs == UNLABELED):
        raise ValueError(f"hyperedge {edge_index} contains unlabeled nodes")
    values, counts = np.unique(attrs, return_counts=True)
    return HyperedgeComposition({int(a): int(c) for a, c in zip(values, counts)})


def _hill_from_counts(counts: np.ndarray, order: float) -> float:
    """Hill number of a positive integer count vector.

    Balanced inputs return the attribute count exactly (the mathematical
    value) rather than going through exp/log, and the result is clamped to
    the true range [1, m] to keep the bounds exact under rounding.
    """
    m = counts.size
    if m == 1:
        return 1.0
    if np.all(counts == counts[0]):
        return float(m)
    if order == 0.0:
        return float(m)
    p = counts / counts.sum()
    if abs(order - 1.0) < Q_ONE_TOLERANCE:
        value = float(np.exp2(-np.sum(p * np.log2(p))))
    else:
        # log-space with the largest proportion factored out, so both
        # orders near 1 and very large orders stay finite
        pmax = p.max()
        log_sum = order * np.log(pmax) + np.log(np.sum((p / pmax) ** order))
        value = float(np.exp(log_sum / (1.0 - order)))
    return float(min(max(value, 1.0), float(m)))


def perplexity(c: HyperedgeComposition) -> float:
    """Effective number of equally represented attributes in the edge.

    Equals 1 for a pure edge and the number of distinct attributes for a
    balanced one; absent attributes contribute nothing (0 log 0 = 0).
    """
    counts = np.fromiter(c.counts.values(), dtype=np.float64, count=len(c.counts))
    m = counts.size
    if m == 1:
        return 1.0
    if np.all(counts == counts[0]):
        return float(m)
    p = counts / counts.sum()
    value = float(np.exp2(-np.sum(p * np.log2(p))))
    return float(min(max(value, 1.0), float(m)))


def hill_number(c: HyperedgeComposition, q: float) -> float:
    """Diversity of order ``q``: (sum_i p_i^q)^(1/(1-q)).

    Order 0 is the number of distinct attributes, order 1 (taken as the
    limit) is :func:`perplexity`, and the value is non-increasing in ``q``.
    """
    if q < 0:
        raise ValueError("diversity order must be >= 0")
    counts = np.fromiter(c.counts.values(), dtype=np.float64, count=len(c.counts))
    return _hill_from_counts(counts, float(q))


def bulk_diversity(labels: np.ndarray, order: float) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise diversity of an integer label matrix.

    ``labels`` has shape (rows, k): each row is the attribute ids of one
    k-node group. Returns (diversity per row, distinct-attribute count per
    row). Matches :func:`_hill_from_counts` on every row, vectorized.
    """
    if order < 0:
        raise ValueError("diversity order must be >= 0")
    rows, k = labels.shape
    if rows == 0:
        return np.empty(0), np.empty(0, dtype=np.int64)
    s = np.sort(labels, axis=1)
    boundary = np.ones((rows, k), dtype=bool)
    boundary[:, 1:] = s[:, 1:] != s[:, :-1]
    flat = boundary.ravel()
    starts = np.flatnonzero(flat)
    lengths = np.diff(starts, append=flat.size)  # runs never cross row edges
    run_row = starts // k
    m = np.bincount(run_row, minlength=rows)
    # first run of each row, for per-row reductions over the run list
    row_start = np.flatnonzero(np.r_[True, run_row[1:] != run_row[:-1]])

    if order == 0.0:
        values = m.astype(np.float64)
    else:
        p = lengths / k
        if abs(order - 1.0) < Q_ONE_TOLERANCE:
            entropy = np.bincount(run_row, weights=-p * np.log2(p), minlength=rows)
            values = np.exp2(entropy)
        else:
            pmax = np.maximum.reduceat(p, row_start)
            scaled = (p / pmax[run_row]) ** order
            s_q = np.add.reduceat(scaled, row_start)
            values = np.exp((order * np.log(pmax) + np.log(s_q)) / (1.0 - order))
        balanced = np.maximum.reduceat(lengths, row_start) == np.minimum.reduceat(
            lengths, row_start
        )
        values = np.where(balanced, m, values)
        np.clip(values, 1.0, m, out=values)
    return values, m
