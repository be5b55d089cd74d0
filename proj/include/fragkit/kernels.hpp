#pragma once

// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP version; each output entry is computed by the same pure expression in
// both, so results are bitwise identical regardless of thread count.

#include <cstddef>
#include <span>
#include <vector>

#include "fragkit/matrix.hpp"

namespace fragkit::kernels {

/// Fills out(i, j) = out(j, i) = fn(i, j) for all i <= j.
template <typename PairFn>
void fill_symmetric_serial(SquareMatrix<double>& out, PairFn&& fn) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = fn(i, j);
      out(i, j) = v;
      out(j, i) = v;
    }
  }
}

template <typename PairFn>
void fill_symmetric_parallel(SquareMatrix<double>& out, PairFn&& fn) {
  const long n = static_cast<long>(out.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    for (long j = i; j < n; ++j) {
      const double v = fn(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      out(i, j) = v;
      out(j, i) = v;
    }
  }
}

/// Indiscernibility degrees from a membership matrix where member(k, j) != 0
/// iff object j belongs to relation R_k:
///   gamma(i, j) = |{k : member(k, i) == member(k, j)}| / n.
SquareMatrix<double> gamma_matrix_serial(const SquareMatrix<unsigned char>& member);
SquareMatrix<double> gamma_matrix_parallel(const SquareMatrix<unsigned char>& member);

/// Z = CTQ * CBQ - COQ^2 for every (shift, split) candidate over a circular
/// ordering of n positions. Candidate c has shift c / (n - 1) and top block
/// length c % (n - 1) + 1; the top block is positions shift, shift+1, ... (mod n).
/// query_positions[q] holds the ordering positions query q uses; queries with
/// no positions are ignored.
std::vector<double> split_objective_serial(std::size_t n,
                                           const std::vector<std::vector<std::size_t>>& query_positions,
                                           std::span<const double> weights);
std::vector<double> split_objective_parallel(
    std::size_t n, const std::vector<std::vector<std::size_t>>& query_positions,
    std::span<const double> weights);

struct SplitSums {
  double ctq = 0.0;
  double cbq = 0.0;
  double coq = 0.0;
};

SplitSums split_sums(std::size_t n, std::size_t shift, std::size_t top_len,
                     const std::vector<std::vector<std::size_t>>& query_positions,
                     std::span<const double> weights);

/// Index of the first maximum; values must be nonempty.
std::size_t first_argmax(std::span<const double> values);

}  // namespace fragkit::kernels
