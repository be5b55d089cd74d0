#include "fragkit/kernels.hpp"

#include <stdexcept>

namespace fragkit::kernels {

namespace {

double gamma_entry(const SquareMatrix<unsigned char>& member, std::size_t i, std::size_t j) {
  const std::size_t n = member.size();
  std::size_t agree = 0;
  for (std::size_t k = 0; k < n; ++k) {
    agree += (member(k, i) != 0) == (member(k, j) != 0) ? 1 : 0;
  }
  return static_cast<double>(agree) / static_cast<double>(n);
}

double split_z(std::size_t n, std::size_t c,
               const std::vector<std::vector<std::size_t>>& query_positions,
               std::span<const double> weights) {
  const std::size_t shift = c / (n - 1);
  const std::size_t top_len = c % (n - 1) + 1;
  const SplitSums sums = split_sums(n, shift, top_len, query_positions, weights);
  return sums.ctq * sums.cbq - sums.coq * sums.coq;
}

void check_split_args(std::size_t n, const std::vector<std::vector<std::size_t>>& query_positions,
                      std::span<const double> weights) {
  if (n < 2) throw std::invalid_argument("split scan needs at least two positions");
  if (query_positions.size() != weights.size()) {
    throw std::invalid_argument("one weight per query required");
  }
}

}  // namespace

SquareMatrix<double> gamma_matrix_serial(const SquareMatrix<unsigned char>& member) {
  SquareMatrix<double> out(member.size());
  fill_symmetric_serial(out, [&](std::size_t i, std::size_t j) { return gamma_entry(member, i, j); });
  return out;
}

SquareMatrix<double> gamma_matrix_parallel(const SquareMatrix<unsigned char>& member) {
  SquareMatrix<double> out(member.size());
  fill_symmetric_parallel(out,
                          [&](std::size_t i, std::size_t j) { return gamma_entry(member, i, j); });
  return out;
}

SplitSums split_sums(std::size_t n, std::size_t shift, std::size_t top_len,
                     const std::vector<std::vector<std::size_t>>& query_positions,
                     std::span<const double> weights) {
  SplitSums sums;
  for (std::size_t q = 0; q < query_positions.size(); ++q) {
    const auto& positions = query_positions[q];
    if (positions.empty()) continue;
    std::size_t in_top = 0;
    for (std::size_t p : positions) {
      if ((p + n - shift) % n < top_len) ++in_top;
    }
    if (in_top == positions.size()) {
      sums.ctq += weights[q];
    } else if (in_top == 0) {
      sums.cbq += weights[q];
    } else {
      sums.coq += weights[q];
    }
  }
  return sums;
}

std::vector<double> split_objective_serial(std::size_t n,
                                           const std::vector<std::vector<std::size_t>>& query_positions,
                                           std::span<const double> weights) {
  check_split_args(n, query_positions, weights);
  const std::size_t candidates = n * (n - 1);
  std::vector<double> z(candidates);
  for (std::size_t c = 0; c < candidates; ++c) z[c] = split_z(n, c, query_positions, weights);
  return z;
}

std::vector<double> split_objective_parallel(
    std::size_t n, const std::vector<std::vector<std::size_t>>& query_positions,
    std::span<const double> weights) {
  check_split_args(n, query_positions, weights);
  const long candidates = static_cast<long>(n * (n - 1));
  std::vector<double> z(static_cast<std::size_t>(candidates));
#pragma omp parallel for schedule(static)
  for (long c = 0; c < candidates; ++c) {
    z[static_cast<std::size_t>(c)] = split_z(n, static_cast<std::size_t>(c), query_positions, weights);
  }
  return z;
}

std::size_t first_argmax(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmax of empty range");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

}  // namespace fragkit::kernels
