"""Undirected graph core: canonical representation and edge-set primitives.

Nodes are labeled 1..n. The edge set lives in a dense bitset with one bit
per unordered pair, indexed in lexicographic pair order
(1,2), (1,3), ..., (1,n), (2,3), ..., (n-1,n). This makes the set distance
between two edge sets a popcount of an XOR, and gives every sampler and
enumerator a single canonical pair order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np


class NodeCountMismatchError(ValueError):
    """Raised when an operation combines graphs with different node counts."""


def pair_count(n: int) -> int:
    """Number of unordered node pairs on n nodes."""
    return n * (n - 1) // 2


def pair_index(n: int, i: int, j: int) -> int:
    """Bit position of the unordered pair (i, j), 1 <= i < j <= n."""
    if not (1 <= i < j <= n):
        raise ValueError(f"pair ({i}, {j}) out of range for n={n}")
    return (i - 1) * n - i * (i - 1) // 2 + (j - i - 1)


def iter_pairs(n: int) -> Iterator[tuple[int, int]]:
    """All unordered pairs in lexicographic order; pair k of the iteration
    occupies bit k."""
    return itertools.combinations(range(1, n + 1), 2)


class Graph:
    """Immutable simple undirected unweighted graph on nodes 1..n.

    Construction canonicalizes each edge to (min, max), rejects self-loops
    and out-of-range endpoints, and collapses duplicates. Equality and
    hashing use (n, edge set) only.
    """

    __slots__ = ("_n", "_bits")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"node count must be a positive integer, got {n!r}")
        bits = 0
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop ({i}, {j}) not allowed")
            a, b = (i, j) if i < j else (j, i)
            if a < 1 or b > n:
                raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
            bits |= 1 << pair_index(n, a, b)
        self._n = n
        self._bits = bits

    @classmethod
    def from_bits(cls, n: int, bits: int) -> "Graph":
        """Construct from a raw pair bitset (bit k = pair k present)."""
        if bits < 0 or bits >> pair_count(n):
            raise ValueError(f"bitset out of range for n={n}")
        g = cls.__new__(cls)
        g._n = n
        g._bits = bits
        return g

    @classmethod
    def from_edge_mask(cls, n: int, mask: np.ndarray) -> "Graph":
        """Construct from a boolean array over pairs in lexicographic order."""
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (pair_count(n),):
            raise ValueError(f"mask must have length {pair_count(n)} for n={n}")
        packed = np.packbits(mask, bitorder="little").tobytes()
        return cls.from_bits(n, int.from_bytes(packed, "little"))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls.from_bits(n, 0)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_bits(n, (1 << pair_count(n)) - 1)

    @property
    def n(self) -> int:
        return self._n

    @property
    def bits(self) -> int:
        return self._bits

    @property
    def edge_count(self) -> int:
        return self._bits.bit_count()

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as canonical (i, j) pairs in lexicographic order."""
        return tuple(
            pair for k, pair in enumerate(iter_pairs(self._n)) if (self._bits >> k) & 1
        )

    def has_edge(self, i: int, j: int) -> bool:
        if i == j:
            return False
        a, b = (i, j) if i < j else (j, i)
        return bool((self._bits >> pair_index(self._n, a, b)) & 1)

    def edge_mask(self) -> np.ndarray:
        """Boolean presence array over pairs in lexicographic order."""
        m = pair_count(self._n)
        raw = np.frombuffer(
            self._bits.to_bytes((m + 7) // 8, "little"), dtype=np.uint8
        )
        return np.unpackbits(raw, count=m, bitorder="little").astype(bool)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._bits == other._bits

    def __hash__(self) -> int:
        return hash((self._n, self._bits))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={list(self.edges())})"


@dataclass(frozen=True)
class PrivacyParams:
    """Privacy budget epsilon and adjacency parameter (max edge difference
    between graphs that must stay indistinguishable)."""

    epsilon: float
    adjacency_a: int = 1

    def __post_init__(self):
        if not (self.epsilon >= 0):
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if not isinstance(self.adjacency_a, int) or self.adjacency_a < 1:
            raise ValueError(
                f"adjacency parameter must be a positive integer, got {self.adjacency_a}"
            )


def _check_same_n(g: Graph, h: Graph) -> None:
    if g.n != h.n:
        raise NodeCountMismatchError(f"node counts differ: {g.n} != {h.n}")


def edge_distance(g: Graph, h: Graph) -> int:
    """Size of the symmetric difference of the two edge sets (a metric)."""
    _check_same_n(g, h)
    return (g.bits ^ h.bits).bit_count()


def is_adjacent(g: Graph, h: Graph, a: int) -> bool:
    """True iff the edge sets differ in at most `a` edges."""
    if not isinstance(a, int) or a < 1:
        raise ValueError(f"adjacency parameter must be a positive integer, got {a}")
    return edge_distance(g, h) <= a


def utility(g: Graph, h: Graph) -> int:
    """Negative edge distance; 0 when h equals g, -n(n-1)/2 at the complement."""
    return -edge_distance(g, h)


def complement(g: Graph) -> Graph:
    """Graph containing exactly the pairs absent from g."""
    full = (1 << pair_count(g.n)) - 1
    return Graph.from_bits(g.n, g.bits ^ full)


def laplacian(g: Graph) -> np.ndarray:
    """Laplacian matrix (degree matrix minus adjacency matrix) as an
    integer array. Symmetric, rows sum to zero, positive semidefinite."""
    n = g.n
    mask = g.edge_mask()
    # np.triu_indices walks the upper triangle row-major, which is exactly
    # the lexicographic pair order of the bitset.
    rows, cols = np.triu_indices(n, k=1)
    adj = np.zeros((n, n), dtype=np.int64)
    adj[rows[mask], cols[mask]] = 1
    adj[cols[mask], rows[mask]] = 1
    return np.diag(adj.sum(axis=1)) - adj
