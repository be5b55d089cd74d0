#include "fragkit/kocluster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

#include "fragkit/kernels.hpp"

namespace fragkit {

namespace {

constexpr double kTieEps = 1e-12;

void normalize(std::vector<std::vector<std::size_t>>& clusters) {
  for (auto& c : clusters) std::sort(c.begin(), c.end());
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

RelationSet RelationSet::from_partition(std::size_t n,
                                        const std::vector<std::vector<std::size_t>>& clusters) {
  RelationSet rels(n);
  for (const auto& c : clusters) {
    for (std::size_t k : c) {
      for (std::size_t j : c) rels.set(k, j, true);
    }
  }
  return rels;
}

std::vector<std::size_t> RelationSet::members(std::size_t k) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < size(); ++j) {
    if (contains(k, j)) out.push_back(j);
  }
  return out;
}

ThresholdVector initial_thresholds(const SimilarityMatrix& s) {
  const std::size_t n = s.size();
  if (n < 2) throw std::invalid_argument("initial_thresholds needs at least two objects");
  ThresholdVector t;
  t.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) sum += 1.0 - s(i, j);
    }
    t.values[i] = sum / static_cast<double>(n - 1);
  }
  return t;
}

RelationSet initial_relations(const SimilarityMatrix& s, const ThresholdVector& t) {
  const std::size_t n = s.size();
  if (t.size() != n) throw std::invalid_argument("initial_relations: threshold length mismatch");
  RelationSet rels(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // A peer with zero similarity never joins, even when the threshold is 1.
      rels.set(i, j, i == j || (s(i, j) > 0.0 && 1.0 - s(i, j) <= t[i]));
    }
  }
  return rels;
}

double indiscernibility_degree(const RelationSet& rels, std::size_t i, std::size_t j) {
  const std::size_t n = rels.size();
  if (i >= n || j >= n) throw std::out_of_range("indiscernibility_degree: index out of range");
  std::size_t agree = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (rels.contains(k, i) == rels.contains(k, j)) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(n);
}

IndiscernibilityMatrix indiscernibility_matrix(const RelationSet& rels) {
  return kernels::gamma_matrix_parallel(rels.membership());
}

Clustering refine(const IndiscernibilityMatrix& gamma, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("gamma threshold must lie in [0, 1]");
  }
  const std::size_t n = gamma.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (gamma(i, j) >= threshold) {
        const std::size_t a = find_root(parent, i);
        const std::size_t b = find_root(parent, j);
        parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  Clustering out;
  out.gamma_threshold = threshold;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find_root(parent, i);
    if (slot[root] == n) {
      slot[root] = out.clusters.size();
      out.clusters.emplace_back();
    }
    out.clusters[slot[root]].push_back(i);
  }
  return out;
}

Clustering refine(const RelationSet& rels, double threshold) {
  return refine(indiscernibility_matrix(rels), threshold);
}

Clustering iterate(RelationSet rels, const ClusterOptions& opts) {
  if (opts.max_iters == 0) throw std::invalid_argument("max_iters must be positive");
  const std::size_t n = rels.size();
  Clustering current;
  current.gamma_threshold = opts.gamma_threshold;
  current.converged = false;
  std::vector<std::vector<std::size_t>> previous;
  for (std::size_t it = 1; it <= opts.max_iters; ++it) {
    Clustering next = refine(rels, opts.gamma_threshold);
    next.iterations = it;
    next.converged = it > 1 && next.clusters == previous;
    if (next.converged) return next;
    previous = next.clusters;
    rels = RelationSet::from_partition(n, next.clusters);
    current = std::move(next);
  }
  return current;
}

Clustering cluster(const SimilarityMatrix& s, const ClusterOptions& opts) {
  const std::size_t n = s.size();
  if (n == 0) throw std::invalid_argument("cluster: empty universe");
  if (n == 1) {
    Clustering single;
    single.clusters = {{0}};
    single.gamma_threshold = opts.gamma_threshold;
    return single;
  }
  return iterate(initial_relations(s, initial_thresholds(s)), opts);
}

namespace {

double mean_cross_similarity(const SimilarityMatrix& s, const std::vector<std::size_t>& a,
                             const std::vector<std::size_t>& b) {
  double sum = 0.0;
  for (std::size_t i : a) {
    for (std::size_t j : b) sum += s(i, j);
  }
  return sum / static_cast<double>(a.size() * b.size());
}

void merge_once(const SimilarityMatrix& s, std::vector<std::vector<std::size_t>>& clusters) {
  std::size_t best_a = 0;
  std::size_t best_b = 1;
  double best_sim = -1.0;
  std::size_t best_size = 0;
  for (std::size_t a = 0; a < clusters.size(); ++a) {
    for (std::size_t b = a + 1; b < clusters.size(); ++b) {
      const double sim = mean_cross_similarity(s, clusters[a], clusters[b]);
      const std::size_t size = clusters[a].size() + clusters[b].size();
      // Pairs are scanned in (a, b) order, so equal keys keep the earlier pair.
      const bool better = sim > best_sim + kTieEps ||
                          (std::fabs(sim - best_sim) <= kTieEps && size < best_size);
      if (better) {
        best_sim = sim;
        best_size = size;
        best_a = a;
        best_b = b;
      }
    }
  }
  auto& into = clusters[best_a];
  into.insert(into.end(), clusters[best_b].begin(), clusters[best_b].end());
  clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(best_b));
  normalize(clusters);
}

void split_once(const SimilarityMatrix& s, std::vector<std::vector<std::size_t>>& clusters) {
  std::size_t target = 0;
  for (std::size_t c = 1; c < clusters.size(); ++c) {
    if (clusters[c].size() > clusters[target].size()) target = c;
  }
  const std::vector<std::size_t> members = clusters[target];

  double lo = 2.0;
  double hi = -1.0;
  std::size_t seed_a = 0;
  std::size_t seed_b = 1;
  for (std::size_t x = 0; x < members.size(); ++x) {
    for (std::size_t y = x + 1; y < members.size(); ++y) {
      const double v = s(members[x], members[y]);
      if (v < lo) {
        lo = v;
        seed_a = x;
        seed_b = y;
      }
      hi = std::max(hi, v);
    }
  }

  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
  if (hi - lo <= kTieEps) {
    // No weakest link: leading pair against the remainder.
    const std::size_t lead = std::min<std::size_t>(2, members.size() - 1);
    first.assign(members.begin(), members.begin() + static_cast<std::ptrdiff_t>(lead));
    second.assign(members.begin() + static_cast<std::ptrdiff_t>(lead), members.end());
  } else {
    const std::size_t a = members[seed_a];
    const std::size_t b = members[seed_b];
    for (std::size_t m : members) {
      if (m == a) {
        first.push_back(m);
      } else if (m == b) {
        second.push_back(m);
      } else if (s(m, a) >= s(m, b)) {
        first.push_back(m);
      } else {
        second.push_back(m);
      }
    }
  }
  clusters[target] = std::move(first);
  clusters.push_back(std::move(second));
  normalize(clusters);
}

}  // namespace

Clustering adjust_to_k(const SimilarityMatrix& s, Clustering c, std::size_t k) {
  const std::size_t n = s.size();
  if (k < 1 || k > n) {
    throw std::out_of_range("target k = " + std::to_string(k) + " outside [1, " +
                            std::to_string(n) + "]");
  }
  if (!is_partition(c.clusters, n)) throw std::invalid_argument("adjust_to_k: not a partition");
  while (c.clusters.size() > k) merge_once(s, c.clusters);
  while (c.clusters.size() < k) split_once(s, c.clusters);
  return c;
}

Clustering cluster_target_k(const SimilarityMatrix& s, std::size_t k, const ClusterOptions& opts) {
  const std::size_t n = s.size();
  if (k < 1 || k > n) {
    throw std::out_of_range("target k = " + std::to_string(k) + " outside [1, " +
                            std::to_string(n) + "]");
  }
  return adjust_to_k(s, cluster(s, opts), k);
}

Clustering run_clustering(const SimilarityMatrix& s, const ClusterOptions& opts) {
  if (opts.mode == ClusterMode::kTargetK) return cluster_target_k(s, opts.k, opts);
  return cluster(s, opts);
}

bool is_partition(const std::vector<std::vector<std::size_t>>& clusters, std::size_t n) {
  std::vector<bool> seen(n, false);
  std::size_t count = 0;
  for (const auto& c : clusters) {
    if (c.empty()) return false;
    for (std::size_t m : c) {
      if (m >= n || seen[m]) return false;
      seen[m] = true;
      ++count;
    }
  }
  return count == n;
}

bool is_refinement(const std::vector<std::vector<std::size_t>>& fine,
                   const std::vector<std::vector<std::size_t>>& coarse) {
  std::size_t n = 0;
  for (const auto& c : coarse) {
    for (std::size_t m : c) n = std::max(n, m + 1);
  }
  std::vector<std::size_t> owner(n, coarse.size());
  for (std::size_t c = 0; c < coarse.size(); ++c) {
    for (std::size_t m : coarse[c]) owner[m] = c;
  }
  for (const auto& c : fine) {
    if (c.empty()) continue;
    if (c.front() >= n) return false;
    const std::size_t o = owner[c.front()];
    for (std::size_t m : c) {
      if (m >= n || owner[m] != o) return false;
    }
  }
  return true;
}

}  // namespace fragkit
