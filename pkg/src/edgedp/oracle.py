"""Brute-force verification oracle for the private graph generators.

Everything here enumerates the full space of 2^(n(n-1)/2) labeled graphs,
so it only runs at small n (cap 6 by default, override with care: cost and
memory grow as 4^(n(n-1)/2) for the pairwise scans). The oracle makes three
claims executable: the closed-form normalization constant matches an
enumerated sum, the exact mechanism's worst-case output probability ratio
over adjacent inputs is bounded by exp(epsilon), and the edge-independent
sampler induces exactly the same distribution as the exact mechanism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import chisquare

from .graph import Graph, NodeCountMismatchError, PrivacyParams, edge_distance, pair_count
from .mechanisms import (
    _edge_probabilities,
    _sample_edge_masks,
    log_normalization_constant,
    normalization_constant,
    sample_private_graphs,
)

DEFAULT_ENUMERATION_CAP = 6


class EnumerationCapError(ValueError):
    """Node count exceeds the exhaustive-enumeration cap."""


def _check_cap(n: int, max_nodes: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"node count must be a positive integer, got {n!r}")
    if n > max_nodes:
        raise EnumerationCapError(
            f"n={n} exceeds the enumeration cap {max_nodes}; "
            f"pass max_nodes={n} explicitly to override"
        )


def _graph_bit_counters(n: int) -> np.ndarray:
    """All 2^(n(n-1)/2) edge bitsets as a uint64 vector (pair k = bit k)."""
    m = pair_count(n)
    if m > 62:
        raise ValueError(f"pair count {m} too large for vectorized enumeration")
    return np.arange(1 << m, dtype=np.uint64)


def iter_graphs(n: int, *, max_nodes: int = DEFAULT_ENUMERATION_CAP):
    """Lazily yield every graph on n nodes, in bit-counter order."""
    _check_cap(n, max_nodes)
    for bits in range(1 << pair_count(n)):
        yield Graph.from_bits(n, bits)


def enumerate_graphs(n: int, *, max_nodes: int = DEFAULT_ENUMERATION_CAP) -> list[Graph]:
    """All 2^(n(n-1)/2) graphs on n nodes, each unordered pair treated as
    one bit of a counter in lexicographic pair order."""
    return list(iter_graphs(n, max_nodes=max_nodes))


@dataclass(frozen=True)
class ExactDistribution:
    """Output law of the exact mechanism over every graph on n nodes."""

    n: int
    probabilities: dict[Graph, float]

    def __post_init__(self):
        expected = 1 << pair_count(self.n)
        if len(self.probabilities) != expected:
            raise ValueError(
                f"distribution must cover all {expected} graphs, "
                f"got {len(self.probabilities)}"
            )
        total = math.fsum(self.probabilities.values())
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"probabilities sum to {total}, expected 1")


def exact_distribution(
    g: Graph, params: PrivacyParams, *, max_nodes: int = DEFAULT_ENUMERATION_CAP
) -> ExactDistribution:
    """Probability of every possible output graph when the exact mechanism
    runs on g."""
    _check_cap(g.n, max_nodes)
    x = params.epsilon / params.adjacency_a
    log_c = log_normalization_constant(g.n, params)
    counters = _graph_bit_counters(g.n)
    dist = np.bitwise_count(counters ^ np.uint64(g.bits))
    probs = np.exp(-x * dist.astype(np.float64) - log_c)
    return ExactDistribution(
        g.n,
        {
            Graph.from_bits(g.n, int(bits)): float(p)
            for bits, p in zip(counters, probs)
        },
    )


def dp_ratio_max(
    n: int,
    params: PrivacyParams,
    *,
    exact_distance: int | None = None,
    max_nodes: int = DEFAULT_ENUMERATION_CAP,
) -> float:
    """Worst-case ratio of exact-mechanism output probabilities over pairs
    of adjacent inputs.

    Scans every ordered input pair (g, g') at edge distance <= A (or at
    exactly `exact_distance` if given) and every output h, and returns the
    maximum of P[output h | input g] / P[output h | input g'].
    """
    _check_cap(n, max_nodes)
    if exact_distance is not None and exact_distance > pair_count(n):
        raise ValueError(
            f"no graph pairs at distance {exact_distance} exist for n={n}"
        )
    x = params.epsilon / params.adjacency_a
    log_c = log_normalization_constant(n, params)
    counters = _graph_bit_counters(n)
    best_log_ratio = -math.inf
    for g_bits in counters:
        d_from_g = np.bitwise_count(counters ^ g_bits)
        if exact_distance is None:
            neighbors = counters[d_from_g <= params.adjacency_a]
        else:
            neighbors = counters[d_from_g == exact_distance]
        if neighbors.size == 0:
            continue
        # log P[h | g] and log P[h | g'] for every neighbor g' and output h
        log_p_g = -x * d_from_g.astype(np.float64) - log_c
        log_p_neighbors = (
            -x * np.bitwise_count(neighbors[:, None] ^ counters[None, :]).astype(np.float64)
            - log_c
        )
        log_ratio = np.max(log_p_g[None, :] - log_p_neighbors)
        best_log_ratio = max(best_log_ratio, float(log_ratio))
    if best_log_ratio == -math.inf:
        raise ValueError(f"no graph pairs matched for n={n}")
    return math.exp(best_log_ratio)


def empirical_tv_distance(exact: ExactDistribution, samples: list[Graph]) -> float:
    """Total variation distance between the empirical law of the samples
    and the exact distribution: half the L1 distance over all graphs."""
    if not samples:
        raise ValueError("need at least one sample")
    counts: dict[Graph, int] = {}
    for s in samples:
        if s.n != exact.n:
            raise NodeCountMismatchError(
                f"sample on {s.n} nodes against distribution on {exact.n}"
            )
        counts[s] = counts.get(s, 0) + 1
    total = len(samples)
    return 0.5 * math.fsum(
        abs(counts.get(g, 0) / total - p) for g, p in exact.probabilities.items()
    )


@dataclass(frozen=True)
class UtilityClassHistogram:
    """Sample counts binned by edge distance from a reference graph."""

    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def mean_distance(self) -> float:
        k = np.arange(self.counts.shape[0])
        return float((k * self.counts).sum() / self.counts.sum())


def utility_class_histogram(
    reference: Graph, samples: list[Graph]
) -> UtilityClassHistogram:
    """Bin each sample by its edge distance from the reference; bin k
    counts samples whose edge sets differ from the reference in exactly k
    pairs."""
    counts = np.zeros(pair_count(reference.n) + 1, dtype=np.int64)
    for s in samples:
        counts[edge_distance(reference, s)] += 1
    return UtilityClassHistogram(counts)


def _path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def product_form_max_relative_error(n: int, params: PrivacyParams) -> tuple[float, dict | None]:
    """Max relative difference, over all (input, output) pairs, between the
    per-pair Bernoulli product probability of the sampler and the exact
    mechanism's closed form. Returns (max error, witness or None)."""
    p, q = _edge_probabilities(params)
    x = params.epsilon / params.adjacency_a
    log_c = log_normalization_constant(n, params)
    m = pair_count(n)
    counters = _graph_bit_counters(n)
    bit_positions = np.arange(m, dtype=np.uint64)
    worst = 0.0
    witness = None
    for g_bits in counters:
        xor = counters ^ g_bits
        flipped = ((xor[:, None] >> bit_positions[None, :]) & np.uint64(1)).astype(bool)
        product_probs = np.where(flipped, q, p).prod(axis=1)
        exact_probs = np.exp(-x * np.bitwise_count(xor).astype(np.float64) - log_c)
        rel = np.abs(product_probs - exact_probs) / exact_probs
        idx = int(np.argmax(rel))
        if rel[idx] > worst:
            worst = float(rel[idx])
            witness = {
                "input_bits": int(g_bits),
                "output_bits": int(counters[idx]),
                "product_probability": float(product_probs[idx]),
                "exact_probability": float(exact_probs[idx]),
            }
    return worst, witness


def chi_square_gof(
    counts: np.ndarray, probabilities: np.ndarray
) -> tuple[float, float]:
    """Pearson goodness-of-fit statistic and p-value of observed counts
    against expected cell probabilities."""
    counts = np.asarray(counts, dtype=np.float64)
    expected = np.asarray(probabilities, dtype=np.float64) * counts.sum()
    stat, pvalue = chisquare(counts, expected)
    return float(stat), float(pvalue)


@dataclass
class VerificationReport:
    """Pass/fail report of the oracle suite, JSON-serializable via to_dict."""

    n: int
    epsilons: tuple[float, ...]
    adjacencies: tuple[int, ...]
    checks: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "epsilons": list(self.epsilons),
            "adjacencies": list(self.adjacencies),
            "passed": self.passed,
            "checks": self.checks,
        }


def run_verification(
    n: int,
    epsilons: tuple[float, ...] = (0.0, 0.5, 1.0, 2.5),
    adjacencies: tuple[int, ...] = (1, 2),
    *,
    samples: int = 1_000_000,
    sample_epsilon: float = 1.0,
    sample_adjacency: int = 1,
    seed: int = 0,
    perturb_p: float = 0.0,
    max_nodes: int = DEFAULT_ENUMERATION_CAP,
) -> VerificationReport:
    """Run the full oracle suite on graphs of n nodes.

    Checks, per (epsilon, A) grid point:
      * normalization identity: enumerated total output weight equals the
        closed form, for every input graph (1e-12 relative);
      * privacy ratio bound: worst-case adjacent-input probability ratio
        is at most exp(epsilon), and is attained at distance exactly A;
      * product-form equivalence: per-pair Bernoulli products equal the
        exact mechanism probabilities (1e-12 relative).
    Plus one sampled check at (sample_epsilon, sample_adjacency): TV
    distance of `samples` sampler draws against the exact distribution
    below 0.01 and a chi-square goodness of fit at significance 0.001.

    `perturb_p` is a self-test hook: shifting the sampler's edge-keep
    probability must make the sampled check fail.
    """
    _check_cap(n, max_nodes)
    report = VerificationReport(n, tuple(epsilons), tuple(adjacencies))
    counters = _graph_bit_counters(n)

    for a in adjacencies:
        for eps in epsilons:
            params = PrivacyParams(eps, a)
            x = eps / a
            c_linear = normalization_constant(n, params)

            worst_rel = 0.0
            witness = None
            for g_bits in counters:
                dist = np.bitwise_count(counters ^ g_bits).astype(np.float64)
                enumerated = float(np.exp(-x * dist).sum())
                rel = abs(enumerated - c_linear) / c_linear
                if rel > worst_rel:
                    worst_rel = rel
                    witness = {"input_bits": int(g_bits), "enumerated": enumerated,
                               "closed_form": c_linear}
            report.checks.append({
                "name": "normalization_identity",
                "params": {"epsilon": eps, "adjacency_a": a},
                "tolerance": 1e-12,
                "achieved": worst_rel,
                "pass": worst_rel <= 1e-12,
                "witness": None if worst_rel <= 1e-12 else witness,
            })

            ratio = dp_ratio_max(n, params, max_nodes=max_nodes)
            bound = math.exp(eps) * (1 + 1e-12)
            entry = {
                "name": "dp_ratio_bound",
                "params": {"epsilon": eps, "adjacency_a": a},
                "tolerance": 1e-12,
                "achieved": ratio,
                "bound": math.exp(eps),
                "pass": ratio <= bound,
                "witness": None,
            }
            if pair_count(n) >= a:
                at_a = dp_ratio_max(n, params, exact_distance=a, max_nodes=max_nodes)
                entry["attained_at_distance_a"] = at_a
                entry["pass"] = entry["pass"] and abs(at_a - math.exp(eps)) <= 1e-9
            report.checks.append(entry)

            prod_rel, prod_witness = product_form_max_relative_error(n, params)
            report.checks.append({
                "name": "product_form_equivalence",
                "params": {"epsilon": eps, "adjacency_a": a},
                "tolerance": 1e-12,
                "achieved": prod_rel,
                "pass": prod_rel <= 1e-12,
                "witness": None if prod_rel <= 1e-12 else prod_witness,
            })

    sample_params = PrivacyParams(sample_epsilon, sample_adjacency)
    reference = _path_graph(n)
    exact = exact_distribution(reference, sample_params, max_nodes=max_nodes)
    if perturb_p == 0.0:
        drawn = sample_private_graphs(reference, sample_params, seed, samples)
    else:
        p, _ = _edge_probabilities(sample_params)
        p_shifted = min(1.0, max(0.0, p + perturb_p))
        rng = np.random.default_rng(seed)
        masks = _sample_edge_masks(
            reference.edge_mask(), p_shifted, 1.0 - p_shifted, rng, samples
        )
        drawn = [Graph.from_edge_mask(n, masks[t]) for t in range(samples)]
    tv = empirical_tv_distance(exact, drawn)

    ordered = [Graph.from_bits(n, int(b)) for b in counters]
    probs = np.array([exact.probabilities[g] for g in ordered])
    sample_counts = np.zeros(len(ordered), dtype=np.int64)
    for s in drawn:
        sample_counts[s.bits] += 1
    stat, pvalue = chi_square_gof(sample_counts, probs)

    report.checks.append({
        "name": "sampled_equivalence",
        "params": {
            "epsilon": sample_epsilon,
            "adjacency_a": sample_adjacency,
            "samples": samples,
            "seed": seed,
            "perturb_p": perturb_p,
        },
        "tv_distance": tv,
        "tv_threshold": 0.01,
        "chi_square_statistic": stat,
        "chi_square_pvalue": pvalue,
        "significance": 0.001,
        "achieved": tv,
        "tolerance": 0.01,
        "pass": tv < 0.01 and pvalue >= 0.001,
        "witness": None,
    })
    return report
