"""Render the experiment harness summary CSV as two charts: mean relative
spectral error vs privacy budget (linear axes) and mean eigenvalue
variance vs privacy budget (log vertical axis, since the mechanisms sit
more than an order of magnitude apart)."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

REQUIRED_COLUMNS = ("mechanism", "epsilon", "mean_of_mean_rel_err", "mean_variance")

ERROR_FIGURE = "mean_error.png"
VARIANCE_FIGURE = "mean_variance.png"


class SchemaError(ValueError):
    """Summary CSV is missing a required column."""


class NoDataError(ValueError):
    """Summary CSV has no plottable rows."""


@dataclass(frozen=True)
class SummaryRow:
    mechanism: str
    epsilon: float
    mean_error: float
    mean_variance: float | None


@dataclass(frozen=True)
class SummaryTable:
    rows: tuple[SummaryRow, ...]

    def __post_init__(self):
        keys = [(r.mechanism, r.epsilon) for r in self.rows]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate (mechanism, epsilon) rows in summary")
        if any(r.epsilon <= 0 for r in self.rows):
            raise ValueError("epsilon values must be positive")

    def mechanisms(self) -> tuple[str, ...]:
        seen: list[str] = []
        for r in self.rows:
            if r.mechanism not in seen:
                seen.append(r.mechanism)
        return tuple(sorted(seen))

    def series(self, mechanism: str, value: str) -> tuple[list[float], list[float]]:
        """(epsilons, values) for one mechanism, sorted by epsilon; rows
        without a variance value are skipped for the variance series."""
        picked = sorted(
            (r for r in self.rows if r.mechanism == mechanism),
            key=lambda r: r.epsilon,
        )
        xs, ys = [], []
        for r in picked:
            y = r.mean_error if value == "error" else r.mean_variance
            if y is None:
                continue
            xs.append(r.epsilon)
            ys.append(y)
        return xs, ys


def load_summary(path) -> SummaryTable:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for column in REQUIRED_COLUMNS:
            if column not in header:
                raise SchemaError(f"summary CSV missing column {column!r}")
        rows = []
        for raw in reader:
            variance_field = raw["mean_variance"]
            rows.append(SummaryRow(
                mechanism=raw["mechanism"],
                epsilon=float(raw["epsilon"]),
                mean_error=float(raw["mean_of_mean_rel_err"]),
                mean_variance=None if variance_field == "" else float(variance_field),
            ))
    if not rows:
        raise NoDataError(f"summary CSV {path} has no data rows")
    return SummaryTable(tuple(rows))


def build_figures(table: SummaryTable):
    """Two figures from a summary table; returned unsaved so callers (and
    tests) can inspect the plotted series."""
    fig_error, ax_error = plt.subplots(figsize=(6.4, 4.0))
    for mechanism in table.mechanisms():
        xs, ys = table.series(mechanism, "error")
        ax_error.plot(xs, ys, marker="o", label=mechanism)
    ax_error.set_xlabel("privacy budget")
    ax_error.set_ylabel("mean relative spectral error")
    ax_error.grid(True, alpha=0.3)
    ax_error.legend()

    fig_variance, ax_variance = plt.subplots(figsize=(6.4, 4.0))
    plotted_any = False
    for mechanism in table.mechanisms():
        xs, ys = table.series(mechanism, "variance")
        if not xs:
            continue
        ax_variance.plot(xs, ys, marker="o", label=mechanism)
        plotted_any = True
    if not plotted_any:
        plt.close(fig_error)
        plt.close(fig_variance)
        raise NoDataError("no rows carry a variance value")
    ax_variance.set_yscale("log")
    ax_variance.set_xlabel("privacy budget")
    ax_variance.set_ylabel("mean eigenvalue variance")
    ax_variance.grid(True, alpha=0.3)
    ax_variance.legend()
    return fig_error, fig_variance


def render_figures(summary_csv, out_dir) -> tuple[Path, Path]:
    """Load the summary CSV and write the two charts into out_dir;
    returns their paths."""
    table = load_summary(summary_csv)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    fig_error, fig_variance = build_figures(table)
    error_path = out / ERROR_FIGURE
    variance_path = out / VARIANCE_FIGURE
    try:
        fig_error.savefig(error_path, dpi=150)
        fig_variance.savefig(variance_path, dpi=150)
    finally:
        plt.close(fig_error)
        plt.close(fig_variance)
    return error_path, variance_path
