#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "fragkit/cli.hpp"
#include "fragkit/plan.hpp"
#include "test_support.hpp"

using namespace fragkit;
using fragkit::testing::fixture;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "fragkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("fragkit_test_" + name)).string();
}

}  // namespace

TEST_CASE("vertical subcommand on the paper workload") {
  const Result r = run({"vertical", "--input", fixture("paper_v.json")});
  REQUIRE(r.code == 0);
  const FragmentationPlan plan = parse_plan(r.out);
  CHECK(plan.method == PlanMethod::kKoVertical);
  REQUIRE(plan.fragments.size() == 2);
  CHECK(plan.fragments[0].members == std::vector<std::string>{"A1", "A3"});
  CHECK(plan.fragments[1].members == std::vector<std::string>{"A2", "A4"});
  // Key order is fixed.
  CHECK(r.out.find("\"method\"") < r.out.find("\"params\""));
  CHECK(r.out.find("\"params\"") < r.out.find("\"fragments\""));
  CHECK(r.out.find("\"metrics\"") < r.out.find("\"converged\""));
}

TEST_CASE("dump-matrix adds the similarity matrix") {
  const Result r = run({"vertical", "--input", fixture("paper_v.json"), "--dump-matrix"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.contains("similarity_matrix"));
  CHECK(std::fabs(doc["similarity_matrix"]["values"][0][2].get<double>() - 0.9918) <= 5e-4);
  CHECK(parse_plan(r.out).fragments.size() == 2);

  const Result table = run({"vertical", "--input", fixture("paper_v.json"), "--format", "table", "--dump-matrix"});
  CHECK(table.out.find("similarity matrix") != std::string::npos);
  CHECK(table.out.find("A1, A3") != std::string::npos);
}

TEST_CASE("compare reports agreement") {
  const Result v = run({"compare", "--input", fixture("paper_v.json")});
  REQUIRE(v.code == 0);
  auto doc = nlohmann::json::parse(v.out);
  CHECK(doc["agreement"] == true);
  CHECK(doc["pipelines"].size() == 1);
  CHECK(doc["plans"].size() == 2);

  const Result h = run({"compare", "--input", fixture("emp.json")});
  REQUIRE(h.code == 0);
  doc = nlohmann::json::parse(h.out);
  CHECK(doc["agreement"] == true);
  CHECK(doc["pipelines"][0]["pipeline"] == "horizontal");

  const Result both = run({"compare", "--input", fixture("payroll.json")});
  REQUIRE(both.code == 0);
  CHECK(nlohmann::json::parse(both.out)["pipelines"].size() == 2);

  const Result table = run({"compare", "--input", fixture("paper_v.json"), "--format", "table"});
  CHECK(table.out.rfind("agreement: true", 0) == 0);
}

TEST_CASE("horizontal target k and range errors") {
  Result r = run({"horizontal", "--input", fixture("emp.json"), "--mode", "k", "--k", "5"});
  REQUIRE(r.code == 0);
  CHECK(parse_plan(r.out).fragments.size() == 5);

  r = run({"horizontal", "--input", fixture("emp.json"), "--mode", "k", "--k", "9"});
  CHECK(r.code == 2);
  r = run({"horizontal", "--input", fixture("emp.json"), "--mode", "k"});
  CHECK(r.code == 2);
  r = run({"horizontal", "--input", fixture("emp.json"), "--k", "2"});
  CHECK(r.code == 2);

  r = run({"horizontal", "--matrix", fixture("table_v.json"), "--mode", "k", "--k", "4"});
  REQUIRE(r.code == 0);
  CHECK(parse_plan(r.out).fragments.size() == 4);
  r = run({"horizontal"});
  CHECK(r.code == 2);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"explode"}).code == 2);
  CHECK(run({"vertical", "--input", fixture("paper_v.json"), "--bogus"}).code == 2);
  CHECK(run({"vertical"}).code == 2);
  CHECK(run({"vertical", "--input", fixture("missing.json")}).code == 2);
  CHECK(run({"vertical", "--input", fixture("emp.json")}).code == 2);  // no queries
  CHECK(run({"bea", "--input", fixture("emp.json")}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("non-convergence exits 1 and still emits a plan") {
  const Result r = run({"horizontal", "--input", fixture("emp.json"), "--max-iters", "1"});
  CHECK(r.code == 1);
  CHECK_FALSE(parse_plan(r.out).converged);
}

TEST_CASE("validate accepts emitted plans and rejects broken ones") {
  const std::string plan_path = temp_path("plan.json");
  for (const std::string& cmd : {"vertical", "bea"}) {
    REQUIRE(run({cmd, "--input", fixture("paper_v.json"), "--output", plan_path}).code == 0);
    const Result ok = run({"validate", "--input", fixture("paper_v.json"), "--plan", plan_path});
    CHECK(ok.code == 0);
    CHECK(nlohmann::json::parse(ok.out)["valid"] == true);
  }
  for (const std::string& cmd : {"horizontal", "phorizontal"}) {
    REQUIRE(run({cmd, "--input", fixture("emp.json"), "--output", plan_path}).code == 0);
    CHECK(run({"validate", "--input", fixture("emp.json"), "--plan", plan_path}).code == 0);
  }
  REQUIRE(run({"horizontal", "--matrix", fixture("table_v.json"), "--output", plan_path}).code == 0);
  CHECK(run({"validate", "--matrix", fixture("table_v.json"), "--plan", plan_path}).code == 0);

  {
    std::ofstream broken(plan_path);
    broken << R"({"method": "ko-vertical", "fragments": [{"name": "V1", "members": ["A1", "A2", "A3"]}]})";
  }
  const Result bad = run({"validate", "--input", fixture("paper_v.json"), "--plan", plan_path});
  CHECK(bad.code == 2);
  const auto doc = nlohmann::json::parse(bad.out);
  CHECK(doc["valid"] == false);
  CHECK(doc["violations"][0].get<std::string>().find("A4") != std::string::npos);
  std::remove(plan_path.c_str());
}

TEST_CASE("outputs are byte-identical across runs") {
  const std::vector<std::vector<std::string>> commands{
      {"vertical", "--input", fixture("paper_v.json")},
      {"vertical", "--input", fixture("payroll.json"), "--dump-matrix"},
      {"horizontal", "--input", fixture("emp.json"), "--mode", "k", "--k", "2"},
      {"bea", "--input", fixture("payroll.json")},
      {"phorizontal", "--input", fixture("payroll.json")},
      {"compare", "--input", fixture("payroll.json"), "--format", "table"},
  };
  for (const auto& cmd : commands) {
    const Result a = run(cmd);
    const Result b = run(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}
