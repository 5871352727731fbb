import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edgedp.graph import (
    Graph,
    NodeCountMismatchError,
    PrivacyParams,
    complement,
    edge_distance,
    is_adjacent,
    laplacian,
    pair_count,
    pair_index,
    utility,
)


@st.composite
def graphs(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.integers(0, (1 << pair_count(n)) - 1))
    return Graph.from_bits(n, bits)


@st.composite
def graph_pairs(draw, min_n=2, max_n=6):
    n = draw(st.integers(min_n, max_n))
    top = (1 << pair_count(n)) - 1
    return (
        Graph.from_bits(n, draw(st.integers(0, top))),
        Graph.from_bits(n, draw(st.integers(0, top))),
    )


class TestConstruction:
    def test_canonicalizes_and_dedups(self):
        g = Graph(3, [(2, 1), (1, 2), (2, 3)])
        assert g.edges() == ((1, 2), (2, 3))
        assert g.edge_count == 2

    def test_rejects_self_loop(self):
        with pytest.raises(ValueError, match="self-loop"):
            Graph(3, [(2, 2)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            Graph(3, [(1, 4)])
        with pytest.raises(ValueError, match="out of range"):
            Graph(3, [(0, 2)])

    def test_rejects_bad_node_count(self):
        with pytest.raises(ValueError):
            Graph(0)
        with pytest.raises(ValueError):
            Graph(-2)

    def test_equality_and_hash(self):
        a = Graph(3, [(1, 2)])
        b = Graph(3, [(2, 1)])
        assert a == b and hash(a) == hash(b)
        assert a != Graph(4, [(1, 2)])

    def test_single_node_graph(self):
        g = Graph(1)
        assert g.edge_count == 0
        assert g.edges() == ()

    @given(graphs())
    def test_mask_round_trip(self, g):
        assert Graph.from_edge_mask(g.n, g.edge_mask()) == g

    def test_pair_index_matches_iteration_order(self):
        for n in (2, 3, 5, 7):
            for k, (i, j) in enumerate(itertools.combinations(range(1, n + 1), 2)):
                assert pair_index(n, i, j) == k


class TestEdgeDistance:
    def test_complete_vs_cycle_differs_by_two(self, k4, c4):
        assert edge_distance(k4, c4) == 2

    def test_complete_vs_three_edge_graph_differs_by_three(self, k4, p4_three_edges):
        assert edge_distance(k4, p4_three_edges) == 3

    def test_identity(self, c4):
        assert edge_distance(c4, c4) == 0

    def test_mismatched_node_counts(self):
        with pytest.raises(NodeCountMismatchError):
            edge_distance(Graph(3), Graph(4))

    def test_metric_axioms_exhaustive_n3(self):
        gs = [Graph.from_bits(3, b) for b in range(8)]
        for a, b in itertools.product(gs, repeat=2):
            d = edge_distance(a, b)
            assert d >= 0
            assert d == edge_distance(b, a)
            assert (d == 0) == (a == b)
        for a, b, c in itertools.product(gs, repeat=3):
            assert edge_distance(a, c) <= edge_distance(a, b) + edge_distance(b, c)

    @given(graph_pairs(max_n=5), st.integers(0, 2**10 - 1))
    @settings(max_examples=200)
    def test_triangle_inequality_sampled(self, pair, raw_bits):
        a, b = pair
        c = Graph.from_bits(a.n, raw_bits & ((1 << pair_count(a.n)) - 1))
        assert edge_distance(a, c) <= edge_distance(a, b) + edge_distance(b, c)


class TestAdjacencyAndUtility:
    def test_adjacency_examples(self, k4, c4, p4_three_edges):
        assert is_adjacent(k4, c4, 2)
        assert not is_adjacent(k4, p4_three_edges, 2)
        assert is_adjacent(c4, c4, 1)

    def test_adjacency_validates_parameter(self, k4, c4):
        with pytest.raises(ValueError):
            is_adjacent(k4, c4, 0)

    def test_utility_examples(self, k4, c4):
        assert utility(k4, k4) == 0
        assert utility(k4, complement(k4)) == -pair_count(4)
        assert utility(k4, c4) == -2

    def test_utility_sensitivity_bound_exhaustive_n4(self):
        # |u(g1,h) - u(g2,h)| <= d(g1,g2) for every triple on 4 nodes
        counters = np.arange(64, dtype=np.uint64)
        dist = np.bitwise_count(counters[:, None] ^ counters[None, :]).astype(int)
        for g1 in range(64):
            gap = np.abs(dist[g1][None, :] - dist)  # (g2, h)
            assert np.all(gap <= dist[g1][:, None])


class TestComplement:
    def test_complement_of_empty_is_complete(self):
        assert complement(Graph(3)) == Graph.complete(3)

    def test_complement_of_complete_is_empty(self, k4):
        assert complement(k4) == Graph.empty(4)

    @given(graphs())
    def test_involution_and_edge_count_sum(self, g):
        cg = complement(g)
        assert complement(cg) == g
        assert g.edge_count + cg.edge_count == pair_count(g.n)


class TestLaplacian:
    def test_triangle(self):
        k3 = Graph.complete(3)
        expected = [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
        assert laplacian(k3).tolist() == expected

    def test_empty_graph_is_zero_matrix(self):
        assert not laplacian(Graph(4)).any()

    def test_path(self):
        p3 = Graph(3, [(1, 2), (2, 3)])
        assert laplacian(p3).tolist() == [[1, -1, 0], [-1, 2, -1], [0, -1, 1]]

    @given(graphs())
    @settings(max_examples=100)
    def test_row_sums_zero_and_psd(self, g):
        lap = laplacian(g)
        assert (lap == lap.T).all()
        assert (lap.sum(axis=1) == 0).all()
        eigs = np.linalg.eigvalsh(lap.astype(float))
        assert eigs.min() >= -1e-9
        assert abs(eigs.min()) <= 1e-9  # smallest eigenvalue is 0


class TestPrivacyParams:
    def test_valid(self):
        p = PrivacyParams(0.0, 1)
        assert p.epsilon == 0.0 and p.adjacency_a == 1

    def test_rejects_negative_epsilon(self):
        with pytest.raises(ValueError):
            PrivacyParams(-0.1, 1)

    def test_rejects_nan_epsilon(self):
        with pytest.raises(ValueError):
            PrivacyParams(float("nan"), 1)

    def test_rejects_bad_adjacency(self):
        with pytest.raises(ValueError):
            PrivacyParams(1.0, 0)
        with pytest.raises(ValueError):
            PrivacyParams(1.0, 2.0)  # must be an integer
