#pragma once

#include "fragkit/kocluster.hpp"
#include "fragkit/plan.hpp"
#include "fragkit/workload.hpp"

namespace fragkit {

/// Clusters attributes by cosine similarity of their reference feature vectors.
/// Fragments are named V1..Vk in order of their first attribute.
FragmentationPlan vertical_fragment(const Workload& w, const ClusterOptions& opts = {});

/// Non-key attributes must sit in exactly one fragment; key attributes in at least one.
ValidationReport validate_vertical(const FragmentationPlan& plan, const Workload& w);

}  // namespace fragkit
