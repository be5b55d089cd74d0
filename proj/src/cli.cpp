#include "fragkit/cli.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fragkit/baselines.hpp"
#include "fragkit/horizontal.hpp"
#include "fragkit/plan.hpp"
#include "fragkit/vertical.hpp"

namespace fragkit {

namespace {

using ordered_json = nlohmann::ordered_json;

struct RunConfig {
  std::string input;
  std::string matrix;
  std::string plan;
  std::string output;
  std::string format = "json";
  std::string mode = "auto";
  std::size_t k = 0;
  double gamma = ClusterOptions{}.gamma_threshold;
  std::size_t max_iters = ClusterOptions{}.max_iters;
  bool dump_matrix = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ClusterOptions cluster_options(const RunConfig& cfg, bool k_given) {
  ClusterOptions opts;
  if (cfg.mode == "k") {
    if (!k_given) throw UsageError("--mode k requires --k");
    opts.mode = ClusterMode::kTargetK;
    opts.k = cfg.k;
  } else if (k_given) {
    throw UsageError("--k is only valid with --mode k");
  }
  opts.gamma_threshold = cfg.gamma;
  opts.max_iters = cfg.max_iters;
  return opts;
}

std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

void write_plan_table(std::ostream& os, const FragmentationPlan& plan, bool include_matrix) {
  os << "method: " << to_string(plan.method) << "\n";
  os << "converged: " << (plan.converged ? "true" : "false") << "\n";
  std::size_t width = 8;
  for (const auto& f : plan.fragments) width = std::max(width, f.name.size());
  os << std::left << std::setw(static_cast<int>(width + 2)) << "fragment" << "members\n";
  for (const auto& f : plan.fragments) {
    os << std::left << std::setw(static_cast<int>(width + 2)) << f.name;
    for (std::size_t i = 0; i < f.members.size(); ++i) os << (i ? ", " : "") << f.members[i];
    os << "\n";
  }
  if (!plan.metrics.empty()) {
    os << "metrics:\n";
    for (const auto& [k, v] : plan.metrics) os << "  " << k << " = " << format_number(v) << "\n";
  }
  if (include_matrix && plan.similarity) {
    const auto& s = *plan.similarity;
    os << "similarity matrix:\n" << std::setw(10) << "";
    for (const auto& id : s.ids) os << std::setw(10) << id;
    os << "\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
      os << std::setw(10) << s.ids[i];
      for (std::size_t j = 0; j < s.size(); ++j) {
        os << std::setw(10) << std::fixed << std::setprecision(4) << s(i, j);
      }
      os << std::defaultfloat << "\n";
    }
  }
}

std::string render_plan(const FragmentationPlan& plan, const RunConfig& cfg) {
  if (cfg.format == "table") {
    std::ostringstream os;
    write_plan_table(os, plan, cfg.dump_matrix);
    return os.str();
  }
  return serialize_plan(plan, cfg.dump_matrix);
}

struct Pipeline {
  std::string name;
  FragmentationPlan ko;
  FragmentationPlan classical;
  bool agreement = false;
};

std::string render_compare(const std::vector<Pipeline>& pipelines, const RunConfig& cfg) {
  bool all = true;
  for (const auto& p : pipelines) all = all && p.agreement;
  if (cfg.format == "table") {
    std::ostringstream os;
    os << "agreement: " << (all ? "true" : "false") << "\n";
    for (const auto& p : pipelines) {
      os << "\n[" << p.name << "] " << to_string(p.ko.method) << " vs " << to_string(p.classical.method)
         << ": " << (p.agreement ? "identical partition" : "different partitions") << "\n\n";
      write_plan_table(os, p.ko, cfg.dump_matrix);
      os << "\n";
      write_plan_table(os, p.classical, false);
    }
    return os.str();
  }
  ordered_json doc;
  doc["agreement"] = all;
  ordered_json summary = ordered_json::array();
  ordered_json plans = ordered_json::array();
  for (const auto& p : pipelines) {
    summary.push_back({{"pipeline", p.name},
                       {"methods", {to_string(p.ko.method), to_string(p.classical.method)}},
                       {"agreement", p.agreement}});
    plans.push_back(plan_to_json(p.ko, cfg.dump_matrix));
    plans.push_back(plan_to_json(p.classical, false));
  }
  doc["pipelines"] = std::move(summary);
  doc["plans"] = std::move(plans);
  return doc.dump(2) + "\n";
}

void emit(const std::string& text, const RunConfig& cfg, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + cfg.output + "'");
  file << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void report_warnings(const FragmentationPlan& plan, std::ostream& err) {
  for (const auto& w : plan.warnings) err << "warning: " << w << "\n";
}

int plan_exit(const FragmentationPlan& plan, std::ostream& err) {
  if (plan.converged) return kExitOk;
  err << "warning: clustering did not converge within max_iters; emitting last partition\n";
  return kExitNotConverged;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workload-driven vertical and horizontal fragmentation", "fragkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool input_required) {
    auto* in = sub->add_option("-i,--input", cfg.input, "Workload JSON file");
    if (input_required) in->required();
    sub->add_option("-o,--output", cfg.output, "Write the document here instead of stdout");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  };
  auto add_cluster = [&](CLI::App* sub) {
    sub->add_option("--mode", cfg.mode, "Cluster count: auto or fixed k")
        ->check(CLI::IsMember({"auto", "k"}));
    sub->add_option("--k", cfg.k, "Target number of fragments (with --mode k)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--gamma", cfg.gamma, "Indiscernibility threshold for merging")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--max-iters", cfg.max_iters, "Refinement iteration limit")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--dump-matrix", cfg.dump_matrix, "Include the similarity matrix");
  };

  auto* vertical = app.add_subcommand("vertical", "Knowledge-oriented vertical fragmentation");
  add_common(vertical, true);
  add_cluster(vertical);
  auto* horizontal = app.add_subcommand("horizontal", "Knowledge-oriented horizontal fragmentation");
  add_common(horizontal, false);
  add_cluster(horizontal);
  horizontal->add_option("--matrix", cfg.matrix, "Binary record/predicate matrix JSON instead of a workload");
  auto* bea = app.add_subcommand("bea", "Bond energy algorithm vertical fragmentation");
  add_common(bea, true);
  auto* phoriz = app.add_subcommand("phorizontal", "Minterm-based horizontal fragmentation");
  add_common(phoriz, true);
  auto* compare = app.add_subcommand("compare", "Run knowledge-oriented and classical methods side by side");
  add_common(compare, true);
  add_cluster(compare);
  auto* validate = app.add_subcommand("validate", "Check a plan document against a workload");
  add_common(validate, false);
  validate->add_option("--plan", cfg.plan, "Plan JSON file")->required();
  validate->add_option("--matrix", cfg.matrix, "Binary matrix the plan was computed from");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    return kExitInputError;
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    const bool k_given = sub->get_option_no_throw("--k") != nullptr && sub->count("--k") > 0;

    if (vertical->parsed()) {
      const FragmentationPlan plan = vertical_fragment(load_workload(cfg.input), cluster_options(cfg, k_given));
      report_warnings(plan, err);
      emit(render_plan(plan, cfg), cfg, out);
      return plan_exit(plan, err);
    }
    if (horizontal->parsed()) {
      const ClusterOptions opts = cluster_options(cfg, k_given);
      if (cfg.input.empty() == cfg.matrix.empty()) {
        throw UsageError("horizontal needs exactly one of --input or --matrix");
      }
      const FragmentationPlan plan = cfg.matrix.empty()
                                         ? horizontal_fragment(load_workload(cfg.input), opts)
                                         : horizontal_fragment_from_matrix(load_binary_matrix(cfg.matrix), opts);
      emit(render_plan(plan, cfg), cfg, out);
      return plan_exit(plan, err);
    }
    if (bea->parsed()) {
      emit(render_plan(bea_vertical(load_workload(cfg.input)), cfg), cfg, out);
      return kExitOk;
    }
    if (phoriz->parsed()) {
      emit(render_plan(phorizontal(load_workload(cfg.input)), cfg), cfg, out);
      return kExitOk;
    }
    if (compare->parsed()) {
      const ClusterOptions opts = cluster_options(cfg, k_given);
      const Workload w = load_workload(cfg.input);
      std::vector<Pipeline> pipelines;
      if (!w.queries().empty() && w.attributes().size() >= 2) {
        Pipeline p{"vertical", vertical_fragment(w, opts), bea_vertical(w), false};
        p.agreement = same_partition(p.ko, p.classical);
        pipelines.push_back(std::move(p));
      }
      if (!w.records().empty() && !w.predicates().empty()) {
        Pipeline p{"horizontal", horizontal_fragment(w, opts), phorizontal(w), false};
        p.agreement = same_partition(p.ko, p.classical);
        pipelines.push_back(std::move(p));
      }
      if (pipelines.empty()) {
        throw UsageError("compare needs queries (with >= 2 attributes) or records with predicates");
      }
      emit(render_compare(pipelines, cfg), cfg, out);
      for (const auto& p : pipelines) {
        if (!p.ko.converged) return plan_exit(p.ko, err);
      }
      return kExitOk;
    }
    if (validate->parsed()) {
      const FragmentationPlan plan = parse_plan(read_text(cfg.plan));
      ValidationReport report;
      if (!cfg.matrix.empty()) {
        report = validate_horizontal(plan, load_binary_matrix(cfg.matrix));
      } else {
        if (cfg.input.empty()) throw UsageError("validate needs --input or --matrix");
        const Workload w = load_workload(cfg.input);
        report = is_vertical(plan.method) ? validate_vertical(plan, w) : validate_horizontal(plan, w);
      }
      if (cfg.format == "table") {
        std::ostringstream os;
        os << (report.valid() ? "valid" : "invalid") << "\n";
        for (const auto& v : report.violations) os << "  " << v << "\n";
        emit(os.str(), cfg, out);
      } else {
        ordered_json doc;
        doc["valid"] = report.valid();
        doc["violations"] = report.violations;
        emit(doc.dump(2) + "\n", cfg, out);
      }
      return report.valid() ? kExitOk : kExitInputError;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace fragkit
