#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "fragkit/kocluster.hpp"
#include "fragkit/similarity.hpp"
#include "fragkit/workload.hpp"

namespace fragkit {

enum class PlanMethod { kKoVertical, kKoHorizontal, kBea, kPhorizontal };

std::string_view to_string(PlanMethod m);
PlanMethod parse_plan_method(std::string_view text);
bool is_vertical(PlanMethod m);

struct Fragment {
  std::string name;
  std::vector<std::string> members;
};

struct FragmentationPlan {
  PlanMethod method = PlanMethod::kKoVertical;
  std::vector<Fragment> fragments;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::map<std::string, double> metrics;
  bool converged = true;

  // Not part of the canonical document unless requested.
  std::optional<SimilarityMatrix> similarity;
  std::vector<std::string> warnings;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

/// Rounds to 6 significant digits; used for every number written to a plan.
double round_sig6(double x);

nlohmann::ordered_json plan_to_json(const FragmentationPlan& plan, bool include_matrix = false);
std::string serialize_plan(const FragmentationPlan& plan, bool include_matrix = false);
FragmentationPlan plan_from_json(const nlohmann::json& doc);
FragmentationPlan parse_plan(std::string_view text);

/// Fragments as sets of member ids, sorted, for partition comparison.
std::vector<std::vector<std::string>> partition_of(const FragmentationPlan& plan);
bool same_partition(const FragmentationPlan& a, const FragmentationPlan& b);

/// Builds named fragments ("<prefix>1", ...) from index clusters.
std::vector<Fragment> fragments_from_clusters(const std::vector<std::string>& ids,
                                              const Clustering& c, std::string_view prefix);

/// Intra-fragment mean similarity per fragment, their mean, and the minimum
/// gap between a fragment's mean intra similarity and its strongest outside link.
void add_similarity_metrics(FragmentationPlan& plan, const SimilarityMatrix& s, const Clustering& c);

nlohmann::ordered_json cluster_params(const ClusterOptions& opts, std::string_view measure);

/// Each universe id must appear in exactly one fragment, except ids listed in
/// replicable, which must appear at least once.
ValidationReport validate_coverage(const FragmentationPlan& plan,
                                   const std::vector<std::string>& universe,
                                   const std::vector<std::string>& replicable, std::string_view kind);

}  // namespace fragkit
