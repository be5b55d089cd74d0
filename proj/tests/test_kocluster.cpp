#include <cmath>

#include "doctest.h"
#include "fragkit/kocluster.hpp"
#include "test_support.hpp"

using namespace fragkit;
using Clusters = std::vector<std::vector<std::size_t>>;

namespace {

SimilarityMatrix table_v_similarity() { return similarity_matrix(fragkit::testing::table_v()); }

SimilarityMatrix paper_similarity() {
  return similarity_matrix(feature_vectors(fragkit::testing::paper_vertical_workload()));
}

}  // namespace

TEST_CASE("initial thresholds are mean dissimilarities") {
  const ThresholdVector t = initial_thresholds(table_v_similarity());
  CHECK(t[0] == doctest::Approx(0.5));
  CHECK(t[1] == doctest::Approx(4.5 / 7));
  CHECK(t[3] == doctest::Approx(0.5));

  const ThresholdVector paper = initial_thresholds(paper_similarity());
  CHECK(std::fabs(paper[0] - 0.6694) <= 1e-3);

  SimilarityMatrix two{{"a", "b"}, SquareMatrix<double>(2, 1.0), {}};
  two.s(0, 1) = two.s(1, 0) = 0.3;
  CHECK(initial_thresholds(two)[0] == doctest::Approx(0.7));

  SimilarityMatrix one{{"a"}, SquareMatrix<double>(1, 1.0), {}};
  CHECK_THROWS_AS(initial_thresholds(one), std::invalid_argument);
}

TEST_CASE("initial relations") {
  const SimilarityMatrix s = table_v_similarity();
  const RelationSet rels = initial_relations(s, initial_thresholds(s));
  CHECK(rels.members(0) == std::vector<std::size_t>{0, 2, 3, 5, 6});
  CHECK(rels.members(3) == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7});

  const SimilarityMatrix p = paper_similarity();
  CHECK(initial_relations(p, initial_thresholds(p)).members(0) == std::vector<std::size_t>{0, 2});

  SimilarityMatrix same{{"a", "b", "c"}, SquareMatrix<double>(3, 1.0), {}};
  const RelationSet all = initial_relations(same, initial_thresholds(same));
  for (std::size_t k = 0; k < 3; ++k) CHECK(all.members(k).size() == 3);

  CHECK_THROWS_AS(initial_relations(s, ThresholdVector{{0.1}}), std::invalid_argument);
}

TEST_CASE("indiscernibility degrees on the EMP relations") {
  const SimilarityMatrix s = table_v_similarity();
  const RelationSet rels = initial_relations(s, initial_thresholds(s));
  CHECK(indiscernibility_degree(rels, 0, 2) == 1.0);
  CHECK(indiscernibility_degree(rels, 0, 1) == 0.125);
  CHECK(indiscernibility_degree(rels, 0, 3) == 0.625);
  CHECK(indiscernibility_degree(rels, 1, 3) == 0.5);
  for (std::size_t i = 0; i < 8; ++i) CHECK(indiscernibility_degree(rels, i, i) == 1.0);

  const IndiscernibilityMatrix g = indiscernibility_matrix(rels);
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) CHECK(g(i, j) == indiscernibility_degree(rels, i, j));
  }
  CHECK_THROWS_AS(indiscernibility_degree(rels, 0, 8), std::out_of_range);
}

TEST_CASE("refine thresholds the gamma graph") {
  const SimilarityMatrix s = table_v_similarity();
  const RelationSet rels = initial_relations(s, initial_thresholds(s));
  CHECK(refine(rels, 0.7).clusters == Clusters{{0, 2, 5, 6}, {1, 4, 7}, {3}});
  CHECK(refine(rels, 0.0).clusters == Clusters{{0, 1, 2, 3, 4, 5, 6, 7}});
  CHECK(refine(rels, 1.0).clusters.size() == 3);  // identical rows always have gamma 1

  const SimilarityMatrix p = paper_similarity();
  const IndiscernibilityMatrix g = indiscernibility_matrix(initial_relations(p, initial_thresholds(p)));
  double max_off = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i != j) max_off = std::max(max_off, g(i, j));
    }
  }
  // Above every off-diagonal degree nothing links.
  IndiscernibilityMatrix lowered = g;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i != j) lowered(i, j) = g(i, j) * 0.5;
    }
  }
  CHECK(refine(lowered, max_off * 0.5 + 1e-9).clusters.size() == 4);
  CHECK_THROWS_AS(refine(g, 1.5), std::invalid_argument);
}

TEST_CASE("auto clustering reproduces the worked examples") {
  const Clustering v = cluster(paper_similarity());
  CHECK(v.clusters == Clusters{{0, 2}, {1, 3}});
  CHECK(v.converged);

  const Clustering h = cluster(table_v_similarity());
  CHECK(h.clusters == Clusters{{0, 2, 5, 6}, {1, 4, 7}, {3}});
  CHECK(h.converged);
  CHECK(h.iterations == 2);

  SimilarityMatrix one{{"x"}, SquareMatrix<double>(1, 1.0), {}};
  const Clustering single = cluster(one);
  CHECK(single.clusters == Clusters{{0}});
  CHECK(single.iterations == 0);
  CHECK(single.converged);
}

TEST_CASE("iteration limit reports non-convergence") {
  ClusterOptions opts;
  opts.max_iters = 1;
  const Clustering c = cluster(table_v_similarity(), opts);
  CHECK_FALSE(c.converged);
  CHECK(is_partition(c.clusters, 8));
  opts.max_iters = 0;
  CHECK_THROWS_AS(cluster(table_v_similarity(), opts), std::invalid_argument);
}

TEST_CASE("target k reproduces the k=2 and k=4 tables") {
  const SimilarityMatrix s = table_v_similarity();
  CHECK(cluster_target_k(s, 2).clusters == Clusters{{0, 2, 5, 6}, {1, 3, 4, 7}});
  CHECK(cluster_target_k(s, 3).clusters == Clusters{{0, 2, 5, 6}, {1, 4, 7}, {3}});
  CHECK(cluster_target_k(s, 4).clusters == Clusters{{0, 2}, {1, 4, 7}, {3}, {5, 6}});
  CHECK(cluster_target_k(s, 8).clusters.size() == 8);
  CHECK(cluster_target_k(s, 1).clusters.size() == 1);
  CHECK_THROWS_AS(cluster_target_k(s, 0), std::out_of_range);
  CHECK_THROWS_AS(cluster_target_k(s, 9), std::out_of_range);
}

TEST_CASE("split uses the weakest internal link when one exists") {
  // 0,1 close; 2,3 close; cross pairs weak. Forced into one cluster first.
  SimilarityMatrix s{{"a", "b", "c", "d"}, SquareMatrix<double>(4, 1.0), {}};
  auto set = [&](std::size_t i, std::size_t j, double v) { s.s(i, j) = s.s(j, i) = v; };
  set(0, 1, 0.9);
  set(2, 3, 0.8);
  set(0, 2, 0.2);
  set(0, 3, 0.1);
  set(1, 2, 0.3);
  set(1, 3, 0.25);
  Clustering whole;
  whole.clusters = {{0, 1, 2, 3}};
  CHECK(adjust_to_k(s, whole, 2).clusters == Clusters{{0, 1}, {2, 3}});
}

TEST_CASE("clustering properties on random similarity matrices") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<std::size_t> size(1, 12);
  std::uniform_real_distribution<double> th(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = size(rng);
    const SimilarityMatrix s = fragkit::testing::random_similarity(rng, n);
    ClusterOptions opts;
    opts.gamma_threshold = th(rng);

    const Clustering c = cluster(s, opts);
    CHECK(is_partition(c.clusters, n));
    CHECK(c.converged);
    CHECK(cluster(s, opts).clusters == c.clusters);

    // A converged partition is a fixed point of its own induced relations.
    CHECK(iterate(RelationSet::from_partition(n, c.clusters), opts).clusters == c.clusters);

    for (std::size_t k = 1; k <= n; ++k) {
      const Clustering ck = cluster_target_k(s, k, opts);
      CHECK(ck.clusters.size() == k);
      CHECK(is_partition(ck.clusters, n));
    }

    if (n >= 2) {
      const RelationSet rels = initial_relations(s, initial_thresholds(s));
      for (std::size_t i = 0; i < n; ++i) CHECK(rels.contains(i, i));
      const IndiscernibilityMatrix g = indiscernibility_matrix(rels);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(g(i, i) == 1.0);
        for (std::size_t j = 0; j < n; ++j) CHECK(g(i, j) == g(j, i));
      }
      const double lo = th(rng);
      const double hi = std::min(1.0, lo + th(rng) * (1.0 - lo));
      CHECK(is_refinement(refine(g, hi).clusters, refine(g, lo).clusters));
    }
  }
}

TEST_CASE("refine monotonicity on random gamma matrices") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 11;
    IndiscernibilityMatrix g(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) g(i, j) = g(j, i) = std::round(u(rng) * 8) / 8;
    }
    const double a = u(rng);
    const double b = u(rng);
    const auto fine = refine(g, std::max(a, b)).clusters;
    const auto coarse = refine(g, std::min(a, b)).clusters;
    CHECK(is_partition(fine, n));
    CHECK(is_refinement(fine, coarse));
  }
}

TEST_CASE("partition helpers") {
  CHECK(is_partition({{0, 2}, {1}}, 3));
  CHECK_FALSE(is_partition({{0, 2}, {2, 1}}, 3));
  CHECK_FALSE(is_partition({{0, 2}}, 3));
  CHECK_FALSE(is_partition({{0, 1, 2}, {}}, 3));
  CHECK(is_refinement({{0}, {1}, {2}}, {{0, 1}, {2}}));
  CHECK_FALSE(is_refinement({{0, 2}, {1}}, {{0, 1}, {2}}));
}
