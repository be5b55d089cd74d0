#pragma once

#include <cstddef>
#include <vector>

#include "fragkit/matrix.hpp"
#include "fragkit/similarity.hpp"

namespace fragkit {

/// Per-object distance bound: the object's mean dissimilarity to its peers.
struct ThresholdVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

/// One binary relation R_k per object over the universe {0, ..., n-1}.
/// contains(k, j) is true iff object j is related to object k.
class RelationSet {
 public:
  RelationSet() = default;
  explicit RelationSet(std::size_t n) : member_(n, 0) {}

  /// R_k := the cluster containing k.
  static RelationSet from_partition(std::size_t n, const std::vector<std::vector<std::size_t>>& clusters);

  std::size_t size() const { return member_.size(); }
  bool contains(std::size_t k, std::size_t j) const { return member_(k, j) != 0; }
  void set(std::size_t k, std::size_t j, bool value) { member_(k, j) = value ? 1 : 0; }
  std::vector<std::size_t> members(std::size_t k) const;

  const SquareMatrix<unsigned char>& membership() const { return member_; }

 private:
  SquareMatrix<unsigned char> member_;
};

using IndiscernibilityMatrix = SquareMatrix<double>;

enum class ClusterMode { kAuto, kTargetK };

struct ClusterOptions {
  ClusterMode mode = ClusterMode::kAuto;
  std::size_t k = 0;
  double gamma_threshold = 0.7;
  std::size_t max_iters = 100;
};

struct Clustering {
  /// Sorted member indices per cluster; clusters ordered by smallest member.
  std::vector<std::vector<std::size_t>> clusters;
  std::size_t iterations = 0;
  double gamma_threshold = 0.0;
  bool converged = true;

  std::size_t size() const { return clusters.size(); }
};

ThresholdVector initial_thresholds(const SimilarityMatrix& s);

/// R_i = { j : 1 - s(i, j) <= T[i] } plus i itself.
RelationSet initial_relations(const SimilarityMatrix& s, const ThresholdVector& t);

/// Fraction of relations R_k that classify i and j alike.
double indiscernibility_degree(const RelationSet& rels, std::size_t i, std::size_t j);
IndiscernibilityMatrix indiscernibility_matrix(const RelationSet& rels);

/// Connected components of the graph with an edge (i, j) iff gamma(i, j) >= threshold.
Clustering refine(const IndiscernibilityMatrix& gamma, double threshold);
Clustering refine(const RelationSet& rels, double threshold);

/// Alternates gamma construction and refinement from the given relations until
/// the partition repeats or opts.max_iters refinements have run.
Clustering iterate(RelationSet rels, const ClusterOptions& opts);

/// Full automatic pipeline: thresholds, initial relations, then iterate.
Clustering cluster(const SimilarityMatrix& s, const ClusterOptions& opts = {});

/// Runs cluster() and merges or splits until exactly k clusters remain.
Clustering cluster_target_k(const SimilarityMatrix& s, std::size_t k, const ClusterOptions& opts = {});

/// Merge/split stage of cluster_target_k applied to an existing partition.
Clustering adjust_to_k(const SimilarityMatrix& s, Clustering c, std::size_t k);

/// Dispatches on opts.mode.
Clustering run_clustering(const SimilarityMatrix& s, const ClusterOptions& opts);

/// True iff clusters are nonempty, disjoint and cover {0, ..., n-1}.
bool is_partition(const std::vector<std::vector<std::size_t>>& clusters, std::size_t n);

/// True iff every cluster of fine lies inside some cluster of coarse.
bool is_refinement(const std::vector<std::vector<std::size_t>>& fine,
                   const std::vector<std::vector<std::size_t>>& coarse);

}  // namespace fragkit
