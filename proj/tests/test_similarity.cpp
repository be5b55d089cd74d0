#include <cmath>

#include "doctest.h"
#include "fragkit/similarity.hpp"
#include "test_support.hpp"

using namespace fragkit;
using Bits = std::vector<unsigned char>;
using Vec = std::vector<double>;

TEST_CASE("cosine examples") {
  CHECK(std::fabs(cosine_similarity(Vec{45, 0, 0, 0}, Vec{45, 5, 0, 3}) - 0.9918) <= 5e-4);
  CHECK(cosine_similarity(Vec{45, 0, 0, 0}, Vec{0, 5, 75, 0}) == 0.0);
  CHECK(cosine_similarity(Vec{3, 4}, Vec{3, 4}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(cosine_similarity(Vec{1}, Vec{1, 2}), std::invalid_argument);
}

TEST_CASE("zero-vector cosine policy") {
  CHECK(cosine_similarity(Vec{0, 0}, Vec{1, 2}) == 0.0);
  CHECK(cosine_similarity(Vec{1, 2}, Vec{0, 0}) == 0.0);
  CHECK(cosine_similarity(Vec{0, 0}, Vec{0, 0}) == 1.0);

  const SimilarityMatrix s = similarity_matrix({"A", "B", "C"}, {{0, 0}, {1, 0}, {0, 0}}, Measure::kCosine);
  CHECK(s(0, 2) == 1.0);
  CHECK(s(0, 1) == 0.0);
  CHECK(s.warnings.size() == 2);
}

TEST_CASE("contingency counts") {
  CHECK(contingency(Bits{1, 0}, Bits{0, 1}) == ContingencyCounts{0, 1, 1, 0});
  CHECK(contingency(Bits{1, 0}, Bits{1, 0}) == ContingencyCounts{1, 0, 0, 1});
  const Bits x{1, 1, 0, 1, 0};
  CHECK(contingency(x, x) == ContingencyCounts{3, 0, 0, 2});
  CHECK_THROWS_AS(contingency(Bits{1}, Bits{1, 0}), std::invalid_argument);
}

TEST_CASE("binary dissimilarity and simple-matching similarity") {
  CHECK(binary_dissimilarity(Bits{1, 0}, Bits{0, 1}) == 1.0);
  CHECK(binary_dissimilarity(Bits{1, 0}, Bits{1, 0}) == 0.0);
  CHECK(binary_dissimilarity(Bits{1, 0}, Bits{0, 0}) == 0.5);
  CHECK(jaccard_similarity(Bits{1, 0}, Bits{0, 1}) == 0.0);
  CHECK(jaccard_similarity(Bits{1, 0}, Bits{1, 0}) == 1.0);
  CHECK(jaccard_similarity(Bits{1, 0}, Bits{0, 0}) == 0.5);
  CHECK_THROWS_AS(binary_dissimilarity(Bits{}, Bits{}), std::invalid_argument);
}

TEST_CASE("paper attribute similarity matrix") {
  const SimilarityMatrix s = similarity_matrix(feature_vectors(fragkit::testing::paper_vertical_workload()));
  REQUIRE(s.size() == 4);
  auto near = [](double a, double b) { return std::fabs(a - b) <= 5e-4; };
  CHECK(s(0, 1) == 0.0);
  CHECK(near(s(0, 2), 0.9918));
  CHECK(s(0, 3) == 0.0);
  CHECK(near(s(1, 2), 0.0073));
  CHECK(near(s(1, 3), 0.9970));
  CHECK(near(s(2, 3), 0.0026));
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(s(i, i) == 1.0);
    for (std::size_t j = 0; j < 4; ++j) CHECK(s(i, j) == s(j, i));
  }
  CHECK(s.warnings.empty());
}

TEST_CASE("Table V similarity matrix") {
  const SimilarityMatrix s = similarity_matrix(fragkit::testing::table_v());
  CHECK(s(0, 2) == 1.0);  // T1, T3
  CHECK(s(0, 1) == 0.0);  // T1, T2
  CHECK(s(0, 3) == 0.5);  // T1, T4
  CHECK(s(3, 4) == 0.5);  // T4, T5
}

TEST_CASE("similarity matrix edge cases") {
  const SimilarityMatrix one = similarity_matrix({"x"}, {{2.0, 1.0}}, Measure::kCosine);
  REQUIRE(one.size() == 1);
  CHECK(one(0, 0) == 1.0);
  CHECK_THROWS_AS(similarity_matrix({}, {}, Measure::kCosine), std::invalid_argument);
  CHECK_THROWS_AS(similarity_matrix({"a", "b"}, {{1, 0}, {1}}, Measure::kCosine), std::invalid_argument);
  CHECK_THROWS_AS(similarity_matrix({"a"}, {{0.5}}, Measure::kBinary), std::invalid_argument);
  CHECK_THROWS_AS(similarity_matrix({"a"}, {{-1.0}}, Measure::kCosine), std::invalid_argument);
  const SimilarityMatrix b = similarity_matrix({"a", "b"}, {{1, 0}, {0, 0}}, Measure::kBinary);
  CHECK(b(0, 1) == 0.5);
}

TEST_CASE("attribute affinity") {
  const Workload w = fragkit::testing::paper_vertical_workload();
  CHECK(attribute_affinity(w, "A1", "A3") == 45);
  CHECK(attribute_affinity(w, "A2", "A4") == 75);
  CHECK(attribute_affinity(w, "A1", "A2") == 0);
  CHECK(attribute_affinity(w, "A3", "A3") == 53);
  CHECK_THROWS_AS(attribute_affinity(w, "A1", "Z"), WorkloadError);

  const Workload sited({"a", "b"}, {Query{"q", {"a", "b"}, 9, {{"s1", 4, 2}, {"s2", 1, 3}}}});
  CHECK(attribute_affinity(sited, "a", "b") == 11);
}

TEST_CASE("measure properties over random inputs") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<std::size_t> len(1, 12);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = len(rng);
    const Vec u = fragkit::testing::random_nonneg_vector(rng, n);
    const Vec v = fragkit::testing::random_nonneg_vector(rng, n);
    const double c = cosine_similarity(u, v);
    CHECK(c == cosine_similarity(v, u));
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
    if (!is_zero_vector(u)) {
      CHECK(std::fabs(cosine_similarity(u, u) - 1.0) <= 1e-12);
      const double alpha = scale(rng);
      Vec scaled = u;
      for (auto& x : scaled) x *= alpha;
      CHECK(std::fabs(cosine_similarity(scaled, v) - c) <= 1e-12);
    }

    const Bits x = fragkit::testing::random_bits(rng, n);
    const Bits y = fragkit::testing::random_bits(rng, n);
    const ContingencyCounts k = contingency(x, y);
    CHECK(k.total() == n);
    CHECK(binary_dissimilarity(x, y) == binary_dissimilarity(y, x));
    CHECK(jaccard_similarity(x, y) == jaccard_similarity(y, x));
    CHECK(binary_dissimilarity(x, y) >= 0.0);
    CHECK(binary_dissimilarity(x, y) <= 1.0);
    CHECK(binary_dissimilarity(x, x) == 0.0);
    CHECK(jaccard_similarity(x, x) == 1.0);
  }
}

TEST_CASE("self affinity is the total access of queries using the attribute") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Workload w = fragkit::testing::random_workload(rng, 5, 6, 0.5, true);
    for (const auto& a : w.attributes()) {
      double total = 0.0;
      for (const auto& q : w.queries()) {
        if (q.uses.count(a)) total += q.weighted_access();
      }
      CHECK(attribute_affinity(w, a, a) == doctest::Approx(total));
    }
  }
}
