"""Attributed hypergraph container, benchmark text-format ingestion, and
structural queries (size filters, per-size degrees).

The on-disk format is the common benchmark layout: a hyperedges file with one
comma-separated list of node ids per line, a labels file with one label id per
line (line i labels node i), and an optional label-names file with one name
per line. Ids are 1-based by default.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Iterator, Sequence

import numpy as np

from .exceptions import DuplicateNodeError, NodeRangeError, ParseError

log = logging.getLogger(__name__)

UNLABELED = -1


@dataclass(frozen=True)
class IngestStats:
    """Counters recorded while parsing; attached to the resulting hypergraph."""

    dedup_events: int = 0
    excluded_by_size: int = 0
    excluded_unlabeled: int = 0
    duplicate_edges_collapsed: int = 0
    size_one_edges: int = 0

    def to_dict(self) -> dict:
        return {
            "dedup_events": self.dedup_events,
            "excluded_by_size": self.excluded_by_size,
            "excluded_unlabeled": self.excluded_unlabeled,
            "duplicate_edges_collapsed": self.duplicate_edges_collapsed,
            "size_one_edges": self.size_one_edges,
        }


@dataclass(frozen=True)
class IngestOptions:
    """Knobs for :func:`parse_hypergraph`.

    one_indexed: node and label ids in the files start at 1.
    dedupe_edges: drop repeated node ids within a line (counted); when False a
        repeated id is an error.
    drop_unlabeled: exclude hyperedges touching nodes without a label.
    min_size / max_size: keep only hyperedges whose size (after dedup) is in
        the closed interval.
    collapse_duplicate_edges: keep only the first occurrence of an identical
        hyperedge (the default keeps repeats, treating the edge list as a
        multiset).
    """

    one_indexed: bool = True
    dedupe_edges: bool = True
    drop_unlabeled: bool = True
    min_size: int | None = None
    max_size: int | None = None
    collapse_duplicate_edges: bool = False

    def __post_init__(self):
        if (
            self.min_size is not None
            and self.max_size is not None
            and self.min_size > self.max_size
        ):
            raise ValueError(
                f"min_size ({self.min_size}) must not exceed max_size ({self.max_size})"
            )


class Hypergraph:
    """Immutable node-attributed hypergraph.

    Nodes are integers 0..node_count-1, each carrying an attribute id
    (``UNLABELED`` for nodes without one). Hyperedges are stored in CSR-like
    form (a flat index array plus offsets); each edge is a sorted set of
    distinct node indices. The edge list is a multiset: identical edges may
    repeat.
    """

    __slots__ = ("_attributes", "_edge_nodes", "_offsets", "_names", "_ingest")

    def __init__(
        self,
        attributes: Sequence[int] | np.ndarray,
        edges: Iterable[Iterable[int]],
        attribute_names: Sequence[str] | None = None,
        ingest: IngestStats | None = None,
    ):
        attrs = np.array(attributes, dtype=np.int64)  # copy: caller keeps theirs
        if attrs.ndim != 1:
            raise ValueError("attributes must be one id per node")
        edge_arrays = []
        for pos, edge in enumerate(edges):
            arr = np.asarray(sorted(edge), dtype=np.int64)
            if arr.size == 0:
                raise ValueError(f"hyperedge {pos} is empty")
            if np.any(arr[1:] == arr[:-1]):
                raise ValueError(f"hyperedge {pos} contains duplicate node ids")
            edge_arrays.append(arr)
        flat = (
            np.concatenate(edge_arrays) if edge_arrays else np.empty(0, dtype=np.int64)
        )
        offsets = np.zeros(len(edge_arrays) + 1, dtype=np.int64)
        np.cumsum([a.size for a in edge_arrays], out=offsets[1:])
        self._init_arrays(attrs, flat, offsets, attribute_names, ingest)

    @classmethod
    def _from_csr(
        cls,
        attributes: np.ndarray,
        edge_nodes: np.ndarray,
        offsets: np.ndarray,
        attribute_names: tuple[str, ...] | None,
        ingest: IngestStats | None = None,
    ) -> "Hypergraph":
        # Fast path for internal callers that guarantee sortedness/validity.
        h = cls.__new__(cls)
        h._init_arrays(attributes, edge_nodes, offsets, attribute_names, ingest)
        return h

    def _init_arrays(self, attrs, flat, offsets, names, ingest):
        if flat.size and (flat.min() < 0 or flat.max() >= attrs.size):
            raise ValueError("hyperedge node index out of range")
        if names is not None:
            names = tuple(str(n) for n in names)
            labeled = attrs[attrs != UNLABELED]
            if labeled.size and labeled.max() >= len(names):
                raise ValueError("attribute id exceeds the number of attribute names")
        if attrs.size and attrs.min() < UNLABELED:
            raise ValueError("attribute ids must be >= 0 (or UNLABELED)")
        for a in (attrs, flat, offsets):
            a.setflags(write=False)
        self._attributes = attrs
        self._edge_nodes = flat
        self._offsets = offsets
        self._names = names
        self._ingest = ingest

    # -- basic accessors -----------------------------------------------------

    @property
    def node_count(self) -> int:
        return int(self._attributes.size)

    @property
    def num_edges(self) -> int:
        return int(self._offsets.size - 1)

    @property
    def attributes(self) -> np.ndarray:
        return self._attributes

    @property
    def attribute_names(self) -> tuple[str, ...] | None:
        return self._names

    @property
    def ingest(self) -> IngestStats | None:
        return self._ingest

    @property
    def sizes(self) -> np.ndarray:
        """Array of hyperedge sizes, aligned with edge indices."""
        return np.diff(self._offsets)

    @property
    def edge_nodes(self) -> np.ndarray:
        """Concatenated node indices of all edges (offsets delimit edges)."""
        return self._edge_nodes

    @property
    def offsets(self) -> np.ndarray:
        return self._offsets

    @property
    def num_attributes(self) -> int:
        """|M|: number of attribute classes."""
        if self._names is not None:
            return len(self._names)
        labeled = self._attributes[self._attributes != UNLABELED]
        return int(labeled.max()) + 1 if labeled.size else 0

    def edge(self, index: int) -> np.ndarray:
        if not 0 <= index < self.num_edges:
            raise IndexError(f"edge index {index} out of range (0..{self.num_edges - 1})")
        return self._edge_nodes[self._offsets[index] : self._offsets[index + 1]]

    def edges(self) -> Iterator[np.ndarray]:
        for i in range(self.num_edges):
            yield self._edge_nodes[self._offsets[i] : self._offsets[i + 1]]

    def edge_list(self) -> list[tuple[int, ...]]:
        return [tuple(int(v) for v in e) for e in self.edges()]

    def __repr__(self) -> str:
        return (
            f"Hypergraph(nodes={self.node_count}, edges={self.num_edges}, "
            f"attributes={self.num_attributes})"
        )


@dataclass(frozen=True)
class KDegreeIndex:
    """Per-node count of size-k hyperedges containing the node."""

    k: int
    degrees: np.ndarray

    def __post_init__(self):
        self.degrees.setflags(write=False)


def k_degrees(h: Hypergraph, k: int) -> KDegreeIndex:
    """Count, for each node, the hyperedges of size exactly ``k`` it belongs to."""
    if k < 1:
        raise ValueError("k must be >= 1")
    mask = np.repeat(h.sizes == k, h.sizes)
    degrees = np.bincount(h.edge_nodes[mask], minlength=h.node_count)
    return KDegreeIndex(k=k, degrees=degrees.astype(np.int64))


def total_degrees(h: Hypergraph) -> np.ndarray:
    """Per-node count of hyperedges of any size containing the node."""
    return np.bincount(h.edge_nodes, minlength=h.node_count).astype(np.int64)


def k_uniform_sub(h: Hypergraph, k: int) -> Hypergraph:
    """Sub-hypergraph over the same node set keeping only size-k edges."""
    if k < 1:
        raise ValueError("k must be >= 1")
    sizes = h.sizes
    keep = sizes == k
    flat = h.edge_nodes[np.repeat(keep, sizes)]
    offsets = np.zeros(int(keep.sum()) + 1, dtype=np.int64)
    np.cumsum(sizes[keep], out=offsets[1:])
    return Hypergraph._from_csr(h.attributes, flat, offsets, h.attribute_names)


def edge_sizes(h: Hypergraph) -> dict[int, int]:
    """Histogram of hyperedge sizes: {size: count}."""
    sizes, counts = np.unique(h.sizes, return_counts=True)
    return {int(s): int(c) for s, c in zip(sizes, counts)}


# -- ingestion ----------------------------------------------------------------


def _content_lines(stream: IO[str]) -> list[str]:
    """All lines with CR/LF stripped, trailing blank lines removed."""
    lines = [line.rstrip("\r\n") for line in stream]
    while lines and lines[-1].strip() == "":
        lines.pop()
    return lines


def _parse_labels(stream: IO[str], one_indexed: bool) -> np.ndarray:
    # blank lines are unlabeled nodes, so every line counts (no trailing strip)
    base = 1 if one_indexed else 0
    out = []
    for lineno, raw in enumerate((line.rstrip("\r\n") for line in stream), start=1):
        token = raw.strip()
        if token == "":
            out.append(UNLABELED)  # node exists but carries no label
            continue
        try:
            value = int(token)
        except ValueError:
            raise ParseError(f"labels file: invalid label {token!r}", lineno) from None
        value -= base
        if value < 0:
            raise NodeRangeError(f"labels file: label id {token} out of range", lineno)
        out.append(value)
    return np.asarray(out, dtype=np.int64)


def parse_hypergraph(
    hyperedges_text: IO[str],
    labels_text: IO[str],
    label_names_text: IO[str] | None = None,
    opts: IngestOptions = IngestOptions(),
) -> Hypergraph:
    """Parse the benchmark text format into a :class:`Hypergraph`.

    ``hyperedges_text`` holds one hyperedge per line as comma-separated node
    ids; ``labels_text`` holds one label id per line, line i labeling node i.
    Trailing blank lines are ignored; a blank line elsewhere in the hyperedges
    file is an error, and in the labels file denotes an unlabeled node.
    Exclusion and dedup counts are retrievable via ``Hypergraph.ingest``.
    """
    attributes = _parse_labels(labels_text, opts.one_indexed)
    node_count = attributes.size
    base = 1 if opts.one_indexed else 0

    dedup_events = 0
    excluded_by_size = 0
    excluded_unlabeled = 0
    collapsed = 0
    size_one = 0
    seen: set[tuple[int, ...]] = set()
    edge_arrays: list[np.ndarray] = []
    lengths: list[int] = []

    for lineno, raw in enumerate(_content_lines(hyperedges_text), start=1):
        line = raw.strip()
        if line == "":
            raise ParseError("empty hyperedge line", lineno)
        nodes = []
        for token in line.split(","):
            token = token.strip()
            try:
                value = int(token)
            except ValueError:
                raise ParseError(f"invalid node id {token!r}", lineno) from None
            value -= base
            if not 0 <= value < node_count:
                raise NodeRangeError(
                    f"node id {token} out of range of labels file ({node_count} nodes)",
                    lineno,
                )
            nodes.append(value)
        unique = sorted(set(nodes))
        if len(unique) != len(nodes):
            if not opts.dedupe_edges:
                raise DuplicateNodeError("duplicate node id in hyperedge", lineno)
            dedup_events += 1
        size = len(unique)
        if (opts.min_size is not None and size < opts.min_size) or (
            opts.max_size is not None and size > opts.max_size
        ):
            excluded_by_size += 1
            continue
        if opts.drop_unlabeled and np.any(attributes[unique] == UNLABELED):
            excluded_unlabeled += 1
            continue
        if opts.collapse_duplicate_edges:
            key = tuple(unique)
            if key in seen:
                collapsed += 1
                continue
            seen.add(key)
        if size == 1:
            size_one += 1
        edge_arrays.append(np.asarray(unique, dtype=np.int64))
        lengths.append(size)

    names = None
    if label_names_text is not None:
        names = tuple(_content_lines(label_names_text))

    stats = IngestStats(
        dedup_events=dedup_events,
        excluded_by_size=excluded_by_size,
        excluded_unlabeled=excluded_unlabeled,
        duplicate_edges_collapsed=collapsed,
        size_one_edges=size_one,
    )
    if excluded_by_size or excluded_unlabeled or collapsed or dedup_events:
        log.info(
            "ingest: %d deduped lines, %d size-filtered, %d unlabeled-dropped, "
            "%d duplicate edges collapsed",
            dedup_events,
            excluded_by_size,
            excluded_unlabeled,
            collapsed,
        )

    flat = np.concatenate(edge_arrays) if edge_arrays else np.empty(0, dtype=np.int64)
    offsets = np.zeros(len(edge_arrays) + 1, dtype=np.int64)
    np.cumsum(lengths, out=offsets[1:])
    return Hypergraph._from_csr(attributes, flat, offsets, names, ingest=stats)


def load_hypergraph(
    hyperedges_path: str | Path,
    labels_path: str | Path,
    label_names_path: str | Path | None = None,
    opts: IngestOptions = IngestOptions(),
) -> Hypergraph:
    """File-path convenience wrapper around :func:`parse_hypergraph`."""
    with open(hyperedges_path, encoding="utf-8") as edges_f, open(
        labels_path, encoding="utf-8"
    ) as labels_f:
        if label_names_path is None:
            return parse_hypergraph(edges_f, labels_f, None, opts)
        with open(label_names_path, encoding="utf-8") as names_f:
            return parse_hypergraph(edges_f, labels_f, names_f, opts)


def write_hypergraph(
    h: Hypergraph,
    hyperedges_out: IO[str],
    labels_out: IO[str],
    label_names_out: IO[str] | None = None,
    one_indexed: bool = True,
) -> None:
    """Serialize back to the ingestion text format (LF line endings).

    Round-trips: parsing the written files with matching options reproduces
    the node count, attributes, and edge multiset.
    """
    base = 1 if one_indexed else 0
    for e in h.edges():
        hyperedges_out.write(",".join(str(int(v) + base) for v in e))
        hyperedges_out.write("\n")
    for a in h.attributes:
        labels_out.write("" if a == UNLABELED else str(int(a) + base))
        labels_out.write("\n")
    if label_names_out is not None and h.attribute_names is not None:
        for name in h.attribute_names:
            label_names_out.write(name)
            label_names_out.write("\n")
