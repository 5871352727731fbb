import json
import math

import numpy as np
import pytest

from edgedp.graph import Graph, NodeCountMismatchError, PrivacyParams, complement, pair_count
from edgedp.mechanisms import utility_class_pmf
from edgedp.oracle import (
    EnumerationCapError,
    chi_square_gof,
    dp_ratio_max,
    empirical_tv_distance,
    enumerate_graphs,
    exact_distribution,
    product_form_max_relative_error,
    run_verification,
    utility_class_histogram,
)


class TestEnumerateGraphs:
    @pytest.mark.parametrize("n,count", [(2, 2), (3, 8), (4, 64)])
    def test_counts(self, n, count):
        graphs = enumerate_graphs(n)
        assert len(graphs) == count
        assert len(set(graphs)) == count

    def test_cap_enforced_and_overridable(self):
        with pytest.raises(EnumerationCapError):
            enumerate_graphs(5, max_nodes=4)
        assert len(enumerate_graphs(5, max_nodes=5)) == 1024

    def test_default_cap(self):
        with pytest.raises(EnumerationCapError):
            enumerate_graphs(7)

    def test_utility_class_sizes_for_every_reference(self):
        # |{H : d(G,H)=k}| = C(6,k) on 4 nodes, whatever G is
        graphs = enumerate_graphs(4)
        expected = [math.comb(6, k) for k in range(7)]
        for ref in graphs:
            hist = utility_class_histogram(ref, graphs)
            assert hist.counts.tolist() == expected


class TestExactDistribution:
    def test_uniform_at_zero_budget(self):
        dist = exact_distribution(Graph(3, [(1, 2)]), PrivacyParams(0.0, 1))
        assert all(p == pytest.approx(1 / 8) for p in dist.probabilities.values())

    def test_mode_is_the_input(self):
        g = Graph(4, [(1, 2), (2, 3), (1, 3)])
        dist = exact_distribution(g, PrivacyParams(1.5, 1))
        mode = max(dist.probabilities, key=dist.probabilities.get)
        assert mode == g

    def test_distance_class_mass_matches_pmf(self):
        g = Graph(3, [(1, 2)])
        params = PrivacyParams(1.0, 1)
        dist = exact_distribution(g, params)
        mass = np.zeros(pair_count(3) + 1)
        for h, p in dist.probabilities.items():
            mass[(g.bits ^ h.bits).bit_count()] += p
        assert np.allclose(mass, utility_class_pmf(3, params), rtol=1e-12)

    def test_masses_sum_to_one(self):
        dist = exact_distribution(Graph(4, [(1, 4)]), PrivacyParams(2.5, 2))
        assert math.fsum(dist.probabilities.values()) == pytest.approx(1.0, abs=1e-10)


class TestDpRatioMax:
    def test_zero_budget_gives_exactly_one(self):
        assert dp_ratio_max(3, PrivacyParams(0.0, 1)) == 1.0

    def test_tight_at_unit_adjacency(self):
        ratio = dp_ratio_max(3, PrivacyParams(1.0, 1))
        assert ratio == pytest.approx(math.e, rel=1e-12)

    def test_bound_attained_at_exact_distance(self):
        params = PrivacyParams(2.0, 2)
        assert dp_ratio_max(4, params) <= math.e**2 * (1 + 1e-12)
        at_two = dp_ratio_max(4, params, exact_distance=2)
        assert at_two == pytest.approx(math.e**2, abs=1e-9)

    def test_rejects_unreachable_distance(self):
        with pytest.raises(ValueError, match="no graph pairs"):
            dp_ratio_max(2, PrivacyParams(1.0, 2), exact_distance=2)


class TestEmpiricalTvDistance:
    def test_exactly_proportional_samples(self):
        dist = exact_distribution(Graph(2, []), PrivacyParams(0.0, 1))
        samples = [Graph(2), Graph(2, [(1, 2)])]
        assert empirical_tv_distance(dist, samples) == 0.0

    def test_two_point_hand_value(self):
        dist = exact_distribution(Graph(2, []), PrivacyParams(0.0, 1))
        samples = [Graph(2, [(1, 2)])] * 50
        assert empirical_tv_distance(dist, samples) == pytest.approx(0.5)

    def test_rejects_wrong_node_count(self):
        dist = exact_distribution(Graph(2, []), PrivacyParams(0.0, 1))
        with pytest.raises(NodeCountMismatchError):
            empirical_tv_distance(dist, [Graph(3)])


class TestUtilityClassHistogram:
    def test_all_mass_at_zero_for_reference_samples(self):
        ref = Graph(4, [(1, 2), (3, 4)])
        hist = utility_class_histogram(ref, [ref] * 25)
        assert hist.counts[0] == 25 and hist.counts[1:].sum() == 0

    def test_all_mass_at_max_for_complement_samples(self):
        ref = Graph(4, [(1, 2), (3, 4)])
        hist = utility_class_histogram(ref, [complement(ref)] * 10)
        assert hist.counts[pair_count(4)] == 10

    def test_counts_sum_to_sample_count(self):
        ref = Graph(3, [(1, 2)])
        samples = enumerate_graphs(3) * 3
        hist = utility_class_histogram(ref, samples)
        assert hist.total == len(samples)
        assert hist.mean_distance() > 0


class TestProductForm:
    @pytest.mark.parametrize("eps,a", [(0.0, 1), (1.0, 1), (2.5, 2)])
    def test_product_of_bernoullis_equals_exact(self, eps, a):
        relerr, witness = product_form_max_relative_error(4, PrivacyParams(eps, a))
        assert relerr <= 1e-12, witness


class TestChiSquare:
    def test_perfect_fit_has_high_pvalue(self):
        probs = np.array([0.25, 0.25, 0.5])
        stat, p = chi_square_gof(np.array([250, 250, 500]), probs)
        assert stat == pytest.approx(0.0, abs=1e-9)
        assert p == pytest.approx(1.0)

    def test_gross_mismatch_rejected(self):
        probs = np.array([0.5, 0.5])
        _, p = chi_square_gof(np.array([900, 100]), probs)
        assert p < 1e-6


class TestRunVerification:
    def test_default_grid_passes_n3(self):
        report = run_verification(3, samples=200_000, seed=0)
        assert report.passed
        names = {c["name"] for c in report.checks}
        assert names == {
            "normalization_identity",
            "dp_ratio_bound",
            "product_form_equivalence",
            "sampled_equivalence",
        }
        json.dumps(report.to_dict())  # report must serialize

    def test_perturbed_sampler_fails_sampled_check(self):
        report = run_verification(
            3, epsilons=(1.0,), adjacencies=(1,), samples=200_000, seed=0,
            perturb_p=0.01,
        )
        sampled = [c for c in report.checks if c["name"] == "sampled_equivalence"]
        assert len(sampled) == 1 and not sampled[0]["pass"]
        assert not report.passed

    def test_zero_budget_ratio_reported_as_one(self):
        report = run_verification(
            3, epsilons=(0.0,), adjacencies=(1,), samples=1_000, seed=0
        )
        ratio_checks = [c for c in report.checks if c["name"] == "dp_ratio_bound"]
        assert ratio_checks[0]["achieved"] == 1.0

    def test_cap_enforced(self):
        with pytest.raises(EnumerationCapError):
            run_verification(7, samples=10)
