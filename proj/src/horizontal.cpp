#include "fragkit/horizontal.hpp"

#include <stdexcept>

#include "fragkit/similarity.hpp"

namespace fragkit {

FragmentationPlan horizontal_fragment(const Workload& w, const ClusterOptions& opts) {
  if (w.records().empty()) {
    throw WorkloadError(WorkloadErrorKind::kEmptyInput,
                        "empty input: horizontal fragmentation needs at least one record");
  }
  if (w.predicates().empty()) {
    throw WorkloadError(WorkloadErrorKind::kEmptyInput,
                        "empty input: horizontal fragmentation needs at least one predicate");
  }
  FragmentationPlan plan = horizontal_fragment_from_matrix(vectorize_records(w.records(), w.predicates()), opts);
  const ValidationReport report = validate_horizontal(plan, w);
  if (!report.valid()) {
    throw std::logic_error("horizontal plan failed validation: " + report.violations.front());
  }
  return plan;
}

FragmentationPlan horizontal_fragment_from_matrix(const BinaryMatrix& m, const ClusterOptions& opts) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw WorkloadError(WorkloadErrorKind::kEmptyInput, "empty input: binary matrix is empty");
  }
  SimilarityMatrix s = similarity_matrix(m);
  const Clustering c = run_clustering(s, opts);

  FragmentationPlan plan;
  plan.method = PlanMethod::kKoHorizontal;
  plan.fragments = fragments_from_clusters(s.ids, c, "H");
  plan.params = cluster_params(opts, "simple-matching");
  plan.params["predicates"] = m.col_ids;
  plan.converged = c.converged;
  add_similarity_metrics(plan, s, c);
  plan.similarity = std::move(s);

  const ValidationReport report = validate_horizontal(plan, m);
  if (!report.valid()) {
    throw std::logic_error("horizontal plan failed validation: " + report.violations.front());
  }
  return plan;
}

namespace {

ValidationReport check_method(const FragmentationPlan& plan) {
  if (is_vertical(plan.method)) {
    return {{"method '" + std::string(to_string(plan.method)) + "' is not a horizontal method"}};
  }
  return {};
}

}  // namespace

ValidationReport validate_horizontal(const FragmentationPlan& plan, const Workload& w) {
  if (auto r = check_method(plan); !r.valid()) return r;
  std::vector<std::string> ids;
  for (const auto& r : w.records()) ids.push_back(r.id);
  return validate_coverage(plan, ids, {}, "record");
}

ValidationReport validate_horizontal(const FragmentationPlan& plan, const BinaryMatrix& m) {
  if (auto r = check_method(plan); !r.valid()) return r;
  return validate_coverage(plan, m.row_ids, {}, "record");
}

}  // namespace fragkit
