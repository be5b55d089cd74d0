// Serial vs OpenMP timings for the data-parallel kernels.
//
//   bench_kernels [objects] [vector_length] [repeats]

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fragkit/kernels.hpp"
#include "fragkit/similarity.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename Fn>
double time_ms(int repeats, Fn&& fn) {
  const auto start = Clock::now();
  for (int r = 0; r < repeats; ++r) fn();
  const auto stop = Clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() / repeats;
}

void report(const std::string& name, double serial, double parallel, bool identical) {
  std::cout << name << ": serial " << serial << " ms, parallel " << parallel << " ms, speedup "
            << serial / parallel << "x, identical " << (identical ? "yes" : "NO") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 1500;
  const std::size_t len = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 64;
  const int repeats = argc > 3 ? std::atoi(argv[3]) : 3;
#ifdef _OPENMP
  std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "threads: 1 (built without OpenMP)\n";
#endif

  std::mt19937 rng(1);
  std::uniform_real_distribution<double> value(0.0, 10.0);
  std::bernoulli_distribution bit(0.3);

  std::vector<std::vector<double>> rows(n, std::vector<double>(len));
  for (auto& row : rows) {
    for (auto& x : row) x = bit(rng) ? value(rng) : 0.0;
  }
  auto cosine = [&](std::size_t i, std::size_t j) { return fragkit::cosine_similarity(rows[i], rows[j]); };
  fragkit::SquareMatrix<double> a(n);
  fragkit::SquareMatrix<double> b(n);
  const double s1 = time_ms(repeats, [&] { fragkit::kernels::fill_symmetric_serial(a, cosine); });
  const double p1 = time_ms(repeats, [&] { fragkit::kernels::fill_symmetric_parallel(b, cosine); });
  report("cosine similarity matrix", s1, p1, a == b);

  fragkit::SquareMatrix<unsigned char> member(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) member(k, j) = (k == j || bit(rng)) ? 1 : 0;
  }
  fragkit::SquareMatrix<double> g1;
  fragkit::SquareMatrix<double> g2;
  const double s2 = time_ms(repeats, [&] { g1 = fragkit::kernels::gamma_matrix_serial(member); });
  const double p2 = time_ms(repeats, [&] { g2 = fragkit::kernels::gamma_matrix_parallel(member); });
  report("indiscernibility matrix", s2, p2, g1 == g2);

  const std::size_t attrs = 200;
  std::uniform_int_distribution<std::size_t> pos(0, attrs - 1);
  std::vector<std::vector<std::size_t>> queries(400);
  std::vector<double> weights(queries.size());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    for (int u = 0; u < 6; ++u) queries[q].push_back(pos(rng));
    weights[q] = value(rng);
  }
  std::vector<double> z1;
  std::vector<double> z2;
  const double s3 = time_ms(repeats, [&] { z1 = fragkit::kernels::split_objective_serial(attrs, queries, weights); });
  const double p3 = time_ms(repeats, [&] { z2 = fragkit::kernels::split_objective_parallel(attrs, queries, weights); });
  report("BEA split scan", s3, p3, z1 == z2);
  return 0;
}
