#include "fragkit/vertical.hpp"

#include <stdexcept>

#include "fragkit/similarity.hpp"

namespace fragkit {

FragmentationPlan vertical_fragment(const Workload& w, const ClusterOptions& opts) {
  if (w.attributes().empty()) {
    throw WorkloadError(WorkloadErrorKind::kEmptyInput, "empty input: workload has no attributes");
  }
  if (w.queries().empty()) {
    throw WorkloadError(WorkloadErrorKind::kEmptyInput,
                        "empty input: vertical fragmentation needs at least one query");
  }
  SimilarityMatrix s = similarity_matrix(feature_vectors(w));
  const Clustering c = run_clustering(s, opts);

  FragmentationPlan plan;
  plan.method = PlanMethod::kKoVertical;
  plan.fragments = fragments_from_clusters(s.ids, c, "V");
  plan.params = cluster_params(opts, "cosine");
  plan.params["replicated_keys"] = w.key_attributes();
  plan.converged = c.converged;
  add_similarity_metrics(plan, s, c);
  plan.warnings = s.warnings;
  plan.similarity = std::move(s);

  const ValidationReport report = validate_vertical(plan, w);
  if (!report.valid()) {
    throw std::logic_error("vertical plan failed validation: " + report.violations.front());
  }
  return plan;
}

ValidationReport validate_vertical(const FragmentationPlan& plan, const Workload& w) {
  if (!is_vertical(plan.method)) {
    return {{"method '" + std::string(to_string(plan.method)) + "' is not a vertical method"}};
  }
  return validate_coverage(plan, w.attributes(), w.key_attributes(), "attribute");
}

}  // namespace fragkit
