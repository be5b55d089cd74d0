#pragma once

#include "fragkit/kocluster.hpp"
#include "fragkit/plan.hpp"
#include "fragkit/workload.hpp"

namespace fragkit {

/// Vectorizes records against the workload predicates and clusters them by
/// simple-matching similarity. Fragments are named H1..Hk.
FragmentationPlan horizontal_fragment(const Workload& w, const ClusterOptions& opts = {});

FragmentationPlan horizontal_fragment_from_matrix(const BinaryMatrix& m, const ClusterOptions& opts = {});

ValidationReport validate_horizontal(const FragmentationPlan& plan, const Workload& w);

/// Same checks against the record ids of a binary matrix.
ValidationReport validate_horizontal(const FragmentationPlan& plan, const BinaryMatrix& m);

}  // namespace fragkit
