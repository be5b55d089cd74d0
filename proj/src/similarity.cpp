#include "fragkit/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fragkit/kernels.hpp"

namespace fragkit {

bool is_zero_vector(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw std::invalid_argument("cosine_similarity: length mismatch");
  double dot = 0.0;
  double uu = 0.0;
  double vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) return (uu == 0.0 && vv == 0.0) ? 1.0 : 0.0;
  return std::clamp(dot / (std::sqrt(uu) * std::sqrt(vv)), 0.0, 1.0);
}

ContingencyCounts contingency(std::span<const unsigned char> x, std::span<const unsigned char> y) {
  if (x.size() != y.size()) throw std::invalid_argument("contingency: length mismatch");
  ContingencyCounts c;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const bool a = x[i] != 0;
    const bool b = y[i] != 0;
    if (a && b) {
      ++c.q;
    } else if (a) {
      ++c.r;
    } else if (b) {
      ++c.s;
    } else {
      ++c.t;
    }
  }
  return c;
}

double binary_dissimilarity(std::span<const unsigned char> x, std::span<const unsigned char> y) {
  if (x.empty() && y.empty()) throw std::invalid_argument("binary_dissimilarity: empty vectors");
  const ContingencyCounts c = contingency(x, y);
  return static_cast<double>(c.r + c.s) / static_cast<double>(c.total());
}

double jaccard_similarity(std::span<const unsigned char> x, std::span<const unsigned char> y) {
  return 1.0 - binary_dissimilarity(x, y);
}

namespace {

std::vector<std::vector<unsigned char>> to_binary_rows(const std::vector<std::string>& ids,
                                                       const std::vector<std::vector<double>>& rows) {
  std::vector<std::vector<unsigned char>> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<unsigned char> row;
    for (double x : rows[i]) {
      if (x != 0.0 && x != 1.0) {
        throw std::invalid_argument("object '" + ids[i] + "' has a non-binary component");
      }
      row.push_back(x != 0.0 ? 1 : 0);
    }
    out.push_back(std::move(row));
  }
  return out;
}

SimilarityMatrix binary_matrix_similarity(std::vector<std::string> ids,
                                          const std::vector<std::vector<unsigned char>>& rows) {
  SimilarityMatrix m{std::move(ids), SquareMatrix<double>(rows.size()), {}};
  kernels::fill_symmetric_parallel(m.s, [&](std::size_t i, std::size_t j) {
    return jaccard_similarity(rows[i], rows[j]);
  });
  return m;
}

void check_rows(const std::vector<std::string>& ids, const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("similarity_matrix: no objects");
  if (ids.size() != rows.size()) throw std::invalid_argument("similarity_matrix: one id per row");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) {
      throw std::invalid_argument("object '" + ids[i] + "' has length " +
                                  std::to_string(rows[i].size()) + ", expected " +
                                  std::to_string(rows[0].size()));
    }
  }
}

}  // namespace

SimilarityMatrix similarity_matrix(std::vector<std::string> ids,
                                   const std::vector<std::vector<double>>& rows, Measure measure) {
  check_rows(ids, rows);
  if (measure == Measure::kBinary) {
    if (rows[0].empty()) throw std::invalid_argument("similarity_matrix: empty binary vectors");
    auto bits = to_binary_rows(ids, rows);
    return binary_matrix_similarity(std::move(ids), bits);
  }

  SimilarityMatrix m{std::move(ids), SquareMatrix<double>(rows.size()), {}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (double x : rows[i]) {
      if (x < 0.0) throw std::invalid_argument("object '" + m.ids[i] + "' has a negative component");
    }
    if (is_zero_vector(rows[i])) {
      m.warnings.push_back("object '" + m.ids[i] +
                           "' has a zero vector; cosine with it is 0 (1 with other zero vectors)");
    }
  }
  kernels::fill_symmetric_parallel(m.s, [&](std::size_t i, std::size_t j) {
    return i == j ? 1.0 : cosine_similarity(rows[i], rows[j]);
  });
  return m;
}

SimilarityMatrix similarity_matrix(const std::vector<AttributeFeatureVector>& vectors) {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> rows;
  for (const auto& v : vectors) {
    ids.push_back(v.attribute);
    rows.push_back(v.measures);
  }
  return similarity_matrix(std::move(ids), rows, Measure::kCosine);
}

SimilarityMatrix similarity_matrix(const BinaryMatrix& m) {
  if (m.rows() == 0) throw std::invalid_argument("similarity_matrix: no objects");
  if (m.cols() == 0) throw std::invalid_argument("similarity_matrix: empty binary vectors");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.cells[i].size() != m.cols()) {
      throw std::invalid_argument("row '" + m.row_ids[i] + "' does not match the column count");
    }
  }
  return binary_matrix_similarity(m.row_ids, m.cells);
}

double attribute_affinity(const Workload& w, std::string_view a_i, std::string_view a_j) {
  w.attribute_index(a_i);
  w.attribute_index(a_j);
  const std::string first(a_i);
  const std::string second(a_j);
  double total = 0.0;
  for (const auto& q : w.queries()) {
    if (q.uses.count(first) && q.uses.count(second)) total += q.weighted_access();
  }
  return total;
}

}  // namespace fragkit
