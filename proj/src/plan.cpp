#include "fragkit/plan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <set>
#include <stdexcept>

namespace fragkit {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string_view to_string(PlanMethod m) {
  switch (m) {
    case PlanMethod::kKoVertical: return "ko-vertical";
    case PlanMethod::kKoHorizontal: return "ko-horizontal";
    case PlanMethod::kBea: return "bea";
    case PlanMethod::kPhorizontal: return "phorizontal";
  }
  return "?";
}

PlanMethod parse_plan_method(std::string_view text) {
  if (text == "ko-vertical") return PlanMethod::kKoVertical;
  if (text == "ko-horizontal") return PlanMethod::kKoHorizontal;
  if (text == "bea") return PlanMethod::kBea;
  if (text == "phorizontal") return PlanMethod::kPhorizontal;
  throw WorkloadError(WorkloadErrorKind::kSchema, "unknown plan method '" + std::string(text) + "'");
}

bool is_vertical(PlanMethod m) { return m == PlanMethod::kKoVertical || m == PlanMethod::kBea; }

double round_sig6(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return std::strtod(buf, nullptr);
}

namespace {

ordered_json number_json(double v) {
  const double r = round_sig6(v);
  if (std::floor(r) == r && std::fabs(r) < 9.0e15) return static_cast<long long>(r);
  return r;
}

ordered_json rounded(const ordered_json& j) {
  if (j.is_number_float()) return number_json(j.get<double>());
  if (j.is_array()) {
    ordered_json out = ordered_json::array();
    for (const auto& e : j) out.push_back(rounded(e));
    return out;
  }
  if (j.is_object()) {
    ordered_json out = ordered_json::object();
    for (const auto& item : j.items()) out[item.key()] = rounded(item.value());
    return out;
  }
  return j;
}

[[noreturn]] void schema_error(const std::string& msg) {
  throw WorkloadError(WorkloadErrorKind::kSchema, "schema error: plan " + msg);
}

}  // namespace

ordered_json plan_to_json(const FragmentationPlan& plan, bool include_matrix) {
  ordered_json doc;
  doc["method"] = std::string(to_string(plan.method));
  doc["params"] = rounded(plan.params);
  ordered_json fragments = ordered_json::array();
  for (const auto& f : plan.fragments) {
    fragments.push_back({{"name", f.name}, {"members", f.members}});
  }
  doc["fragments"] = std::move(fragments);
  ordered_json metrics = ordered_json::object();
  for (const auto& [k, v] : plan.metrics) metrics[k] = number_json(v);
  doc["metrics"] = std::move(metrics);
  doc["converged"] = plan.converged;
  if (include_matrix && plan.similarity) {
    const auto& s = *plan.similarity;
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
      ordered_json row = ordered_json::array();
      for (std::size_t j = 0; j < s.size(); ++j) row.push_back(number_json(s(i, j)));
      rows.push_back(std::move(row));
    }
    doc["similarity_matrix"] = {{"ids", s.ids}, {"values", std::move(rows)}};
  }
  return doc;
}

std::string serialize_plan(const FragmentationPlan& plan, bool include_matrix) {
  return plan_to_json(plan, include_matrix).dump(2) + "\n";
}

FragmentationPlan plan_from_json(const json& doc) {
  if (!doc.is_object()) schema_error("document must be an object");
  for (const auto& item : doc.items()) {
    static const std::set<std::string> allowed{"method",  "params",    "fragments",
                                               "metrics", "converged", "similarity_matrix"};
    if (!allowed.count(item.key())) {
      throw WorkloadError(WorkloadErrorKind::kUnknownKey, "unknown key: '" + item.key() + "' in plan");
    }
  }
  FragmentationPlan plan;
  if (!doc.contains("method") || !doc["method"].is_string()) schema_error("needs a string 'method'");
  plan.method = parse_plan_method(doc["method"].get<std::string>());
  if (!doc.contains("fragments") || !doc["fragments"].is_array()) {
    schema_error("needs a 'fragments' array");
  }
  for (const auto& jf : doc["fragments"]) {
    if (!jf.is_object() || !jf.contains("name") || !jf["name"].is_string() ||
        !jf.contains("members") || !jf["members"].is_array()) {
      schema_error("fragments need a string 'name' and a 'members' array");
    }
    Fragment f;
    f.name = jf["name"].get<std::string>();
    for (const auto& m : jf["members"]) {
      if (!m.is_string()) schema_error("fragment members must be strings");
      f.members.push_back(m.get<std::string>());
    }
    plan.fragments.push_back(std::move(f));
  }
  if (doc.contains("params")) plan.params = ordered_json(doc["params"]);
  if (doc.contains("metrics")) {
    if (!doc["metrics"].is_object()) schema_error("'metrics' must be an object");
    for (const auto& item : doc["metrics"].items()) {
      if (!item.value().is_number()) schema_error("metrics must be numbers");
      plan.metrics[item.key()] = item.value().get<double>();
    }
  }
  if (doc.contains("converged")) {
    if (!doc["converged"].is_boolean()) schema_error("'converged' must be a boolean");
    plan.converged = doc["converged"].get<bool>();
  }
  return plan;
}

FragmentationPlan parse_plan(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw WorkloadError(WorkloadErrorKind::kSyntax,
                        "syntax error: at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return plan_from_json(doc);
}

std::vector<std::vector<std::string>> partition_of(const FragmentationPlan& plan) {
  std::vector<std::vector<std::string>> out;
  for (const auto& f : plan.fragments) {
    auto members = f.members;
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool same_partition(const FragmentationPlan& a, const FragmentationPlan& b) {
  return partition_of(a) == partition_of(b);
}

std::vector<Fragment> fragments_from_clusters(const std::vector<std::string>& ids,
                                              const Clustering& c, std::string_view prefix) {
  std::vector<Fragment> out;
  for (std::size_t i = 0; i < c.clusters.size(); ++i) {
    Fragment f{std::string(prefix) + std::to_string(i + 1), {}};
    for (std::size_t m : c.clusters[i]) f.members.push_back(ids[m]);
    out.push_back(std::move(f));
  }
  return out;
}

void add_similarity_metrics(FragmentationPlan& plan, const SimilarityMatrix& s, const Clustering& c) {
  const std::size_t n = s.size();
  std::vector<std::size_t> owner(n);
  for (std::size_t k = 0; k < c.clusters.size(); ++k) {
    for (std::size_t m : c.clusters[k]) owner[m] = k;
  }
  double intra_total = 0.0;
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < c.clusters.size(); ++k) {
    const auto& members = c.clusters[k];
    double intra = 1.0;
    if (members.size() > 1) {
      double sum = 0.0;
      std::size_t pairs = 0;
      for (std::size_t x = 0; x < members.size(); ++x) {
        for (std::size_t y = x + 1; y < members.size(); ++y) {
          sum += s(members[x], members[y]);
          ++pairs;
        }
      }
      intra = sum / static_cast<double>(pairs);
    }
    double strongest_outside = -1.0;
    for (std::size_t m : members) {
      for (std::size_t j = 0; j < n; ++j) {
        if (owner[j] != k) strongest_outside = std::max(strongest_outside, s(m, j));
      }
    }
    if (strongest_outside >= 0.0) min_gap = std::min(min_gap, intra - strongest_outside);
    plan.metrics["intra_similarity." + plan.fragments[k].name] = intra;
    intra_total += intra;
  }
  plan.metrics["mean_intra_similarity"] = intra_total / static_cast<double>(c.clusters.size());
  if (std::isfinite(min_gap)) plan.metrics["min_similarity_gap"] = min_gap;
  plan.metrics["iterations"] = static_cast<double>(c.iterations);
  plan.metrics["clusters"] = static_cast<double>(c.clusters.size());
}

ordered_json cluster_params(const ClusterOptions& opts, std::string_view measure) {
  ordered_json p;
  p["measure"] = std::string(measure);
  p["mode"] = opts.mode == ClusterMode::kAuto ? "auto" : "k";
  if (opts.mode == ClusterMode::kTargetK) p["k"] = opts.k;
  p["gamma_threshold"] = opts.gamma_threshold;
  p["max_iters"] = opts.max_iters;
  return p;
}

ValidationReport validate_coverage(const FragmentationPlan& plan,
                                   const std::vector<std::string>& universe,
                                   const std::vector<std::string>& replicable, std::string_view kind) {
  ValidationReport report;
  std::map<std::string, std::size_t> seen;
  for (const auto& id : universe) seen[id] = 0;
  const std::set<std::string> replicated(replicable.begin(), replicable.end());
  for (const auto& f : plan.fragments) {
    if (f.members.empty()) report.violations.push_back("fragment '" + f.name + "' is empty");
    for (const auto& m : f.members) {
      auto it = seen.find(m);
      if (it == seen.end()) {
        report.violations.push_back("fragment '" + f.name + "' names unknown " +
                                    std::string(kind) + " '" + m + "'");
      } else {
        ++it->second;
      }
    }
  }
  for (const auto& id : universe) {
    const std::size_t count = seen[id];
    if (count == 0) {
      report.violations.push_back("completeness: " + std::string(kind) + " '" + id +
                                  "' is in no fragment");
    } else if (count > 1 && !replicated.count(id)) {
      report.violations.push_back("disjointness: " + std::string(kind) + " '" + id + "' is in " +
                                  std::to_string(count) + " fragments");
    }
  }
  return report;
}

}  // namespace fragkit
