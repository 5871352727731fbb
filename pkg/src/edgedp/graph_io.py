"""Edge-list ingestion, relabeling, and result serialization.

Reads whitespace-separated edge lists (one edge per line, '#' comments, as
in the SNAP ego-network dumps), relabels external node ids to internal
1..n indices in first-appearance order, and writes graphs, experiment
records, and summary tables back out as plain text/CSV.
"""

from __future__ import annotations

import csv
import io as _stdio
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph

MECHANISM_TAGS = ("modified-er", "bounded-laplace")

RESULTS_HEADER = ["mechanism", "epsilon", "adjacency_a", "trial", "seed", "mean_rel_err"]
SUMMARY_HEADER = ["mechanism", "epsilon", "mean_of_mean_rel_err", "mean_variance"]


class ParseError(ValueError):
    """Malformed edge-list input; message carries the 1-based line number."""


class IngestValidationError(ValueError):
    """Parsed graph does not match the expected node/edge counts."""


@dataclass(frozen=True)
class LabeledGraph:
    """A graph plus the bijection from internal indices to the external
    node ids they were read from: labels[i-1] is node i's external id."""

    graph: Graph
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) != self.graph.n:
            raise ValueError(
                f"need {self.graph.n} labels, got {len(self.labels)}"
            )
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be distinct")

    def label_of(self, node: int) -> str:
        return self.labels[node - 1]

    def external_edges(self) -> frozenset[frozenset[str]]:
        """Edges as unordered external-label pairs (relabeling-invariant)."""
        return frozenset(
            frozenset((self.labels[i - 1], self.labels[j - 1]))
            for i, j in self.graph.edges()
        )


def _read_text(source) -> str:
    if isinstance(source, (str, bytes)):
        return source.decode() if isinstance(source, bytes) else source
    return source.read()


def parse_edge_list(
    source,
    *,
    expect_nodes: int | None = None,
    expect_edges: int | None = None,
) -> LabeledGraph:
    """Parse an edge list into a relabeled graph.

    Each non-comment line holds two nonnegative integer node ids. Self-loop
    lines are dropped entirely; duplicate edges (including reversed ones)
    collapse to one. External ids map to 1..n in order of first appearance.

    Raises ParseError on malformed lines or on input with no edges, and
    IngestValidationError when expect_nodes/expect_edges do not match.
    """
    text = _read_text(source)
    index_of: dict[str, int] = {}
    edges: set[tuple[int, int]] = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise ParseError(
                f"line {lineno}: expected two node ids, got {len(tokens)} tokens"
            )
        for tok in tokens:
            try:
                value = int(tok)
            except ValueError:
                raise ParseError(
                    f"line {lineno}: non-integer node id {tok!r}"
                ) from None
            if value < 0:
                raise ParseError(f"line {lineno}: negative node id {tok!r}")
        a, b = tokens
        if a == b:
            continue
        for tok in (a, b):
            if tok not in index_of:
                index_of[tok] = len(index_of) + 1
        i, j = index_of[a], index_of[b]
        edges.add((min(i, j), max(i, j)))
    if not index_of:
        raise ParseError("empty input: no edges found")
    labeled = LabeledGraph(Graph(len(index_of), edges), tuple(index_of))
    if expect_nodes is not None and labeled.graph.n != expect_nodes:
        raise IngestValidationError(
            f"expected {expect_nodes} nodes, parsed {labeled.graph.n}"
        )
    if expect_edges is not None and labeled.graph.edge_count != expect_edges:
        raise IngestValidationError(
            f"expected {expect_edges} edges, parsed {labeled.graph.edge_count}"
        )
    return labeled


def load_edge_list(
    path, *, expect_nodes: int | None = None, expect_edges: int | None = None
) -> LabeledGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(
            fh, expect_nodes=expect_nodes, expect_edges=expect_edges
        )


def write_graph(labeled: LabeledGraph, destination) -> None:
    """Write an edge list using external labels, one edge per line in
    internal pair order, preceded by a comment header. An empty graph
    produces the header only."""
    g = labeled.graph
    lines = [f"# undirected edge list: nodes={g.n} edges={g.edge_count}"]
    lines.extend(
        f"{labeled.labels[i - 1]} {labeled.labels[j - 1]}" for i, j in g.edges()
    )
    _write_text(destination, "\n".join(lines) + "\n")


def save_graph(labeled: LabeledGraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        write_graph(labeled, fh)


def _write_text(destination, text: str) -> None:
    if isinstance(destination, (str, os.PathLike)):
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        destination.write(text)


def _fmt(value: float) -> str:
    return format(value, ".17g")


@dataclass(frozen=True)
class ExperimentRecord:
    """One (mechanism, epsilon, trial) harness result."""

    mechanism: str
    epsilon: float
    adjacency_a: int
    trial: int
    seed: int
    mean_rel_err: float
    spectrum_digest: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.mechanism not in MECHANISM_TAGS:
            raise ValueError(
                f"mechanism must be one of {MECHANISM_TAGS}, got {self.mechanism!r}"
            )
        if not (self.epsilon > 0):
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")


def write_results(records: Sequence[ExperimentRecord], destination) -> None:
    """Write detail rows as CSV, sorted by (mechanism, epsilon, trial).
    Floats carry 17 significant digits so they round-trip exactly."""
    buf = _stdio.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RESULTS_HEADER)
    for rec in sorted(records, key=lambda r: (r.mechanism, r.epsilon, r.trial)):
        writer.writerow([
            rec.mechanism,
            _fmt(rec.epsilon),
            rec.adjacency_a,
            rec.trial,
            rec.seed,
            _fmt(rec.mean_rel_err),
        ])
    _write_text(destination, buf.getvalue())


def read_results(source) -> list[ExperimentRecord]:
    text = _read_text(source)
    reader = csv.reader(_stdio.StringIO(text))
    header = next(reader, None)
    if header != RESULTS_HEADER:
        raise ParseError(f"unexpected results header: {header}")
    return [
        ExperimentRecord(
            mechanism=row[0],
            epsilon=float(row[1]),
            adjacency_a=int(row[2]),
            trial=int(row[3]),
            seed=int(row[4]),
            mean_rel_err=float(row[5]),
        )
        for row in reader
        if row
    ]


def write_summary(rows: Iterable[dict], destination) -> None:
    """Write one summary row per (mechanism, epsilon). `mean_variance` may
    be None (fewer than two trials), serialized as an empty field."""
    buf = _stdio.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SUMMARY_HEADER)
    for row in sorted(rows, key=lambda r: (r["mechanism"], r["epsilon"])):
        mv = row["mean_variance"]
        writer.writerow([
            row["mechanism"],
            _fmt(row["epsilon"]),
            _fmt(row["mean_of_mean_rel_err"]),
            "" if mv is None else _fmt(mv),
        ])
    _write_text(destination, buf.getvalue())


def read_summary(source) -> list[dict]:
    text = _read_text(source)
    reader = csv.reader(_stdio.StringIO(text))
    header = next(reader, None)
    if header != SUMMARY_HEADER:
        raise ParseError(f"unexpected summary header: {header}")
    return [
        {
            "mechanism": row[0],
            "epsilon": float(row[1]),
            "mean_of_mean_rel_err": float(row[2]),
            "mean_variance": None if row[3] == "" else float(row[3]),
        }
        for row in reader
        if row
    ]
