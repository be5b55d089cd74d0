#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "fragkit/matrix.hpp"
#include "fragkit/plan.hpp"
#include "fragkit/similarity.hpp"
#include "fragkit/workload.hpp"

namespace fragkit {

/// Raised when minterm enumeration would exceed the configured predicate cap.
class ResourceLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kDefaultMintermCap = 20;

// --- bond energy --------------------------------------------------------------

struct ClusteredAffinityMatrix {
  std::vector<std::string> ordering;
  std::vector<std::size_t> order_index;  // positions into the source AffinityMatrix ids
  SquareMatrix<double> matrix;           // aff(order[i], order[j])
  double am = 0.0;
};

struct SplitResult {
  std::vector<std::string> top;
  std::vector<std::string> bottom;
  double z = 0.0;
  double ctq = 0.0;
  double cbq = 0.0;
  double coq = 0.0;
  std::size_t shift = 0;
  std::size_t top_size = 0;
};

/// Full symmetric matrix of attribute_affinity, diagonal included.
AffinityMatrix affinity_matrix(const Workload& w);

/// bond(x, y) = sum_z aff(z, x) * aff(z, y).
double bond(const AffinityMatrix& aff, std::size_t x, std::size_t y);

/// AM of an ordering: twice the sum of bonds between neighbouring columns.
double global_affinity_measure(const AffinityMatrix& aff, const std::vector<std::size_t>& order);

/// Classical BEA column placement: seed with the first two columns, then
/// insert each next column where 2bond(l,new) + 2bond(new,r) - 2bond(l,r) is largest.
std::vector<std::size_t> greedy_bond_energy_order(const AffinityMatrix& aff);

/// Greedy placement followed by an exact max-AM polish (Held-Karp over bonds)
/// for up to kExactOrderLimit attributes, local search beyond that.
ClusteredAffinityMatrix bond_energy_order(const AffinityMatrix& aff);

inline constexpr std::size_t kExactOrderLimit = 16;

/// Best Z = CTQ * CBQ - COQ^2 over every circular shift and split point of the
/// CA ordering. Ties keep the first candidate in shift-then-split order.
SplitResult split_partition(const ClusteredAffinityMatrix& ca, const Workload& w);

FragmentationPlan bea_vertical(const Workload& w);

// --- minterms -----------------------------------------------------------------

struct MintermPredicate {
  std::vector<bool> negated;  // one literal per simple predicate

  bool holds(const std::vector<unsigned char>& truth) const;
  std::string describe(const std::vector<std::string>& predicate_ids) const;
};

/// All 2^m sign assignments in binary-counting order, all-positive first; the
/// first predicate is the most significant literal.
std::vector<MintermPredicate> generate_minterms(const std::vector<SimplePredicate>& preds,
                                                std::size_t cap = kDefaultMintermCap);

FragmentationPlan phorizontal(const Workload& w, std::size_t cap = kDefaultMintermCap);

}  // namespace fragkit
