"""Laplacian eigenvalues and the spectral accuracy metrics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import Graph, laplacian

# True eigenvalues at or below this are treated as zero; a zero among
# lambda_2..lambda_n means the graph is disconnected and the relative
# metric is undefined.
ZERO_EIGENVALUE_TOL = 1e-9


class DisconnectedSpectrumError(ValueError):
    """Relative spectral error requested against a spectrum with a
    (near-)zero eigenvalue above index 1."""


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of a graph Laplacian.

    `graph_derived` spectra are validated: ascending order, nonnegative,
    smallest eigenvalue zero. Privatized spectra produced by noise on raw
    eigenvalues keep index-wise correspondence but may violate ordering;
    they carry graph_derived=False and skip that validation.
    """

    values: tuple[float, ...]
    graph_derived: bool = True

    def __post_init__(self):
        if len(self.values) == 0:
            raise ValueError("spectrum must contain at least one eigenvalue")
        if self.graph_derived:
            vals = self.values
            if any(b < a for a, b in zip(vals, vals[1:])):
                raise ValueError("graph-derived spectrum must be ascending")
            if vals[0] > ZERO_EIGENVALUE_TOL or vals[0] < -ZERO_EIGENVALUE_TOL:
                raise ValueError(
                    f"graph-derived spectrum must start at 0, got {vals[0]}"
                )
            if any(v < -ZERO_EIGENVALUE_TOL for v in vals):
                raise ValueError("graph-derived spectrum must be nonnegative")

    def __len__(self) -> int:
        return len(self.values)


def laplacian_spectrum(g: Graph) -> Spectrum:
    """Ascending Laplacian eigenvalues of g.

    Round-off can push eigenvalues of the PSD Laplacian a hair below zero;
    anything above -1e-9 is clamped back to 0.
    """
    vals = np.linalg.eigvalsh(laplacian(g).astype(np.float64))
    vals[(vals < 0) & (vals > -ZERO_EIGENVALUE_TOL)] = 0.0
    return Spectrum(tuple(float(v) for v in vals))


def _check_lengths(true_spec: Spectrum, private_spec: Spectrum) -> None:
    if len(true_spec) != len(private_spec):
        raise ValueError(
            f"spectra lengths differ: {len(true_spec)} != {len(private_spec)}"
        )


def mean_relative_error(true_spec: Spectrum, private_spec: Spectrum) -> float:
    """Index-wise mean of |private - true| / true over eigenvalues 2..n.

    The first eigenvalue is excluded: it is 0 for every graph and carries
    no information. Requires all remaining true eigenvalues to be positive
    (connected graph); refuses disconnected spectra rather than silently
    skipping near-zero terms.
    """
    _check_lengths(true_spec, private_spec)
    true = np.asarray(true_spec.values[1:])
    priv = np.asarray(private_spec.values[1:])
    if true.size == 0:
        raise ValueError("need at least two eigenvalues")
    if np.any(true <= ZERO_EIGENVALUE_TOL):
        raise DisconnectedSpectrumError(
            "true spectrum has a zero eigenvalue above index 1 (disconnected "
            "graph); the relative error metric is undefined, use the "
            "absolute metric instead"
        )
    return float(np.mean(np.abs((priv - true) / true)))


def mean_absolute_error(true_spec: Spectrum, private_spec: Spectrum) -> float:
    """Index-wise mean of |private - true| over eigenvalues 2..n; the
    explicit alternative for disconnected inputs."""
    _check_lengths(true_spec, private_spec)
    true = np.asarray(true_spec.values[1:])
    priv = np.asarray(private_spec.values[1:])
    if true.size == 0:
        raise ValueError("need at least two eigenvalues")
    return float(np.mean(np.abs(priv - true)))


def mean_variance(spectra_samples: Sequence[Spectrum]) -> float:
    """Unbiased sample variance of each eigenvalue 2..n across samples,
    averaged over those indices."""
    if len(spectra_samples) < 2:
        raise ValueError("need at least two spectra to estimate variance")
    lengths = {len(s) for s in spectra_samples}
    if len(lengths) != 1:
        raise ValueError(f"spectra lengths differ: {sorted(lengths)}")
    arr = np.asarray([s.values for s in spectra_samples])
    if arr.shape[1] < 2:
        raise ValueError("need at least two eigenvalues")
    return float(np.mean(np.var(arr[:, 1:], axis=0, ddof=1)))
