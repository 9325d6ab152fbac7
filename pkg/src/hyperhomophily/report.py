"""Machine-readable report and table serialization for the CLI.

JSON reports embed the manifest that produced them and are byte-stable for
identical inputs and flags. CSV tables round-trip every numeric field at full
precision (17 significant digits) so downstream plotting reproduces values
exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Sequence

from . import __version__
from .homophily import CurveRow, HomophilyRecord, HomophilyReport
from .hsbm import GridPoint, SweepPoint
from .hypergraph import IngestStats

TOOL_NAME = "hyperhomophily"


def format_number(value) -> str:
    """Full-precision decimal rendering for CSV cells."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".17g")


@dataclass
class RunManifest:
    """What produced a report: command, inputs, and resolved options.

    ``duration_seconds`` is filled in after the run but never serialized into
    the payload, so identical flags always produce identical report bytes;
    the CLI logs it instead.
    """

    command: str
    inputs: dict
    options: dict
    tool: str = TOOL_NAME
    version: str = __version__
    duration_seconds: float | None = field(default=None, compare=False)

    def to_payload(self) -> dict:
        return {
            "tool": self.tool,
            "version": self.version,
            "command": self.command,
            "inputs": self.inputs,
            "options": self.options,
        }


def report_to_dict(
    report: HomophilyReport, manifest: RunManifest, ingest: IngestStats | None = None
) -> dict:
    return {
        "manifest": manifest.to_payload(),
        "global_phi": report.global_phi,
        "global_phi_std_error": report.global_phi_std_error,
        "edge_total": report.edge_total,
        "edges_scored": report.edges_scored,
        "edges_excluded": report.edges_excluded,
        "per_k": [
            {
                "k": row.k,
                "edge_count": row.edge_count,
                "baseline_mean": row.baseline_mean,
                "baseline_std_error": row.baseline_std_error,
                "phi_k": row.phi_k,
                "mean_observed": row.mean_observed,
            }
            for row in report.per_k
        ],
        "exclusions": [
            {"reason": e.reason, "k": e.k, "count": e.count}
            for e in report.exclusions
        ],
        "ingest": ingest.to_dict() if ingest is not None else None,
    }


def dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_per_edge_csv(records: Sequence[HomophilyRecord], out: IO[str]) -> None:
    out.write("# one row per scored or degenerate hyperedge\n")
    out.write(
        "edge_index,k,observed,baseline,gap,gap_max,gap_min,phi,phi_min,degenerate\n"
    )
    for r in records:
        cells = [
            r.edge_index,
            r.k,
            r.observed,
            r.baseline,
            r.gap,
            r.gap_max,
            r.gap_min,
            r.phi,
            r.phi_min,
            r.degenerate,
        ]
        out.write(",".join(format_number(c) for c in cells))
        out.write("\n")


def write_curve_csv(rows: Sequence[CurveRow], out: IO[str]) -> None:
    out.write("# per hyperedge size: mean observed diversity vs. null baseline\n")
    out.write("# baseline columns are nan when the eligible population is < k\n")
    out.write("k,mean_observed,baseline_mean,baseline_std_error,edge_count\n")
    for row in rows:
        cells = [
            row.k,
            row.mean_observed,
            row.baseline_mean,
            row.baseline_std_error,
            row.edge_count,
        ]
        out.write(",".join(format_number(c) for c in cells))
        out.write("\n")


def write_sweep_csv(points: Sequence[SweepPoint], out: IO[str]) -> None:
    out.write("# homophily index of one generated hypergraph per mixing level p\n")
    out.write("# phi_std_error is the standard error of the per-edge score mean\n")
    out.write("p,phi,phi_std_error,edges_scored\n")
    for pt in points:
        cells = [pt.p, pt.phi, pt.phi_std_error, pt.edges_scored]
        out.write(",".join(format_number(c) for c in cells))
        out.write("\n")


def write_grid_csv(points: Sequence[GridPoint], out: IO[str]) -> None:
    out.write("# homophily index over the (edge size k, mixing level p) grid\n")
    out.write("# phi_std_error is the standard error of the per-edge score mean\n")
    out.write("k,p,phi,phi_std_error,edges_scored\n")
    for pt in points:
        cells = [pt.k, pt.p, pt.phi, pt.phi_std_error, pt.edges_scored]
        out.write(",".join(format_number(c) for c in cells))
        out.write("\n")
