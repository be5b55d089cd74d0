#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fragkit/matrix.hpp"
#include "fragkit/workload.hpp"

namespace fragkit {

enum class Measure { kCosine, kBinary };

struct SimilarityMatrix {
  std::vector<std::string> ids;
  SquareMatrix<double> s;
  /// Zero-vector policy notices raised while filling the matrix.
  std::vector<std::string> warnings;

  std::size_t size() const { return ids.size(); }
  double operator()(std::size_t i, std::size_t j) const { return s(i, j); }
};

struct ContingencyCounts {
  std::size_t q = 0;  // (1,1)
  std::size_t r = 0;  // (1,0)
  std::size_t s = 0;  // (0,1)
  std::size_t t = 0;  // (0,0)

  std::size_t total() const { return q + r + s + t; }
  bool operator==(const ContingencyCounts&) const = default;
};

struct AffinityMatrix {
  std::vector<std::string> ids;
  SquareMatrix<double> aff;

  std::size_t size() const { return ids.size(); }
};

bool is_zero_vector(std::span<const double> v);

/// Cosine of the angle between two nonnegative vectors. Zero vectors follow a
/// fixed policy: cos(0, v) = 0 for nonzero v and cos(0, 0) = 1.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

ContingencyCounts contingency(std::span<const unsigned char> x, std::span<const unsigned char> y);

/// (r + s) / (q + r + s + t).
double binary_dissimilarity(std::span<const unsigned char> x, std::span<const unsigned char> y);

/// Simple-matching similarity 1 - binary_dissimilarity. The name follows the
/// usual fragmentation literature even though the (0,0) matches count.
double jaccard_similarity(std::span<const unsigned char> x, std::span<const unsigned char> y);

/// Pairwise similarity over numeric rows. Rows must be 0/1 for Measure::kBinary.
SimilarityMatrix similarity_matrix(std::vector<std::string> ids,
                                   const std::vector<std::vector<double>>& rows, Measure measure);
SimilarityMatrix similarity_matrix(const std::vector<AttributeFeatureVector>& vectors);
SimilarityMatrix similarity_matrix(const BinaryMatrix& m);

double attribute_affinity(const Workload& w, std::string_view a_i, std::string_view a_j);

}  // namespace fragkit
