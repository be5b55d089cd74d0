#include "fragkit/workload.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace fragkit {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string_view to_string(WorkloadErrorKind kind) {
  switch (kind) {
    case WorkloadErrorKind::kSyntax: return "syntax error";
    case WorkloadErrorKind::kSchema: return "schema error";
    case WorkloadErrorKind::kUnknownKey: return "unknown key";
    case WorkloadErrorKind::kUndeclaredAttribute: return "undeclared attribute";
    case WorkloadErrorKind::kDuplicateId: return "duplicate id";
    case WorkloadErrorKind::kNegativeValue: return "negative value";
    case WorkloadErrorKind::kUnknownId: return "unknown id";
    case WorkloadErrorKind::kMissingValue: return "missing value";
    case WorkloadErrorKind::kTypeMismatch: return "type mismatch";
    case WorkloadErrorKind::kEmptyInput: return "empty input";
  }
  return "error";
}

namespace {

[[noreturn]] void fail(WorkloadErrorKind kind, const std::string& msg) {
  throw WorkloadError(kind, std::string(to_string(kind)) + ": " + msg);
}

void check_nonnegative(double v, const std::string& what) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    fail(WorkloadErrorKind::kNegativeValue, what + " must be a finite number >= 0");
  }
}

}  // namespace

double Query::weighted_access() const {
  if (site_access.empty()) return freq;
  double total = 0.0;
  for (const auto& s : site_access) total += s.ref * s.acc;
  return total;
}

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return "=";
    case CompareOp::kNe: return "!=";
    case CompareOp::kLt: return "<";
    case CompareOp::kLe: return "<=";
    case CompareOp::kGt: return ">";
    case CompareOp::kGe: return ">=";
  }
  return "?";
}

CompareOp parse_compare_op(std::string_view text) {
  if (text == "=") return CompareOp::kEq;
  if (text == "!=") return CompareOp::kNe;
  if (text == "<") return CompareOp::kLt;
  if (text == "<=") return CompareOp::kLe;
  if (text == ">") return CompareOp::kGt;
  if (text == ">=") return CompareOp::kGe;
  fail(WorkloadErrorKind::kSchema, "unknown comparison operator '" + std::string(text) + "'");
}

Workload::Workload(std::vector<std::string> attributes, std::vector<Query> queries,
                   std::vector<Record> records, std::vector<SimplePredicate> predicates,
                   std::vector<std::string> key_attributes)
    : attributes_(std::move(attributes)),
      queries_(std::move(queries)),
      records_(std::move(records)),
      predicates_(std::move(predicates)),
      key_attributes_(std::move(key_attributes)) {
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    const auto& a = attributes_[i];
    if (a.empty()) fail(WorkloadErrorKind::kSchema, "attribute names must be non-empty");
    if (!attribute_index_.emplace(a, i).second) {
      fail(WorkloadErrorKind::kDuplicateId, "attribute '" + a + "' declared twice");
    }
  }
  auto require_attr = [&](const std::string& a, const std::string& where) {
    if (!has_attribute(a)) {
      fail(WorkloadErrorKind::kUndeclaredAttribute,
           where + " references undeclared attribute '" + a + "'");
    }
  };

  std::set<std::string> keys;
  for (const auto& k : key_attributes_) {
    require_attr(k, "key_attributes");
    if (!keys.insert(k).second) {
      fail(WorkloadErrorKind::kDuplicateId, "key attribute '" + k + "' listed twice");
    }
  }

  for (std::size_t i = 0; i < queries_.size(); ++i) {
    const auto& q = queries_[i];
    if (q.id.empty()) fail(WorkloadErrorKind::kSchema, "query ids must be non-empty");
    if (!query_index_.emplace(q.id, i).second) {
      fail(WorkloadErrorKind::kDuplicateId, "query '" + q.id + "' declared twice");
    }
    for (const auto& a : q.uses) require_attr(a, "query '" + q.id + "'");
    check_nonnegative(q.freq, "freq of query '" + q.id + "'");
    for (const auto& s : q.site_access) {
      check_nonnegative(s.acc, "acc of query '" + q.id + "' at site '" + s.site + "'");
      check_nonnegative(s.ref, "ref of query '" + q.id + "' at site '" + s.site + "'");
    }
  }

  std::set<std::string> record_ids;
  for (const auto& r : records_) {
    if (!record_ids.insert(r.id).second) {
      fail(WorkloadErrorKind::kDuplicateId, "record '" + r.id + "' declared twice");
    }
    for (const auto& [a, v] : r.values) require_attr(a, "record '" + r.id + "'");
  }

  std::set<std::string> predicate_ids;
  for (const auto& p : predicates_) {
    if (!predicate_ids.insert(p.id).second) {
      fail(WorkloadErrorKind::kDuplicateId, "predicate '" + p.id + "' declared twice");
    }
    require_attr(p.attr, "predicate '" + p.id + "'");
  }
}

bool Workload::has_attribute(std::string_view name) const {
  return attribute_index_.find(name) != attribute_index_.end();
}

std::size_t Workload::attribute_index(std::string_view name) const {
  auto it = attribute_index_.find(name);
  if (it == attribute_index_.end()) {
    fail(WorkloadErrorKind::kUnknownId, "no attribute '" + std::string(name) + "'");
  }
  return it->second;
}

const Query& Workload::query(std::string_view id) const {
  auto it = query_index_.find(id);
  if (it == query_index_.end()) {
    fail(WorkloadErrorKind::kUnknownId, "no query '" + std::string(id) + "'");
  }
  return queries_[it->second];
}

// ---------------------------------------------------------------------------
// JSON ingestion

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (auto k : allowed) ok = ok || item.key() == k;
    if (!ok) fail(WorkloadErrorKind::kUnknownKey, "'" + item.key() + "' in " + where);
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    fail(WorkloadErrorKind::kSchema, where + " is missing '" + key + "'");
  }
  return *it;
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(WorkloadErrorKind::kSchema, where + " must be a string");
  return j.get<std::string>();
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(WorkloadErrorKind::kSchema, where + " must be a number");
  return j.get<double>();
}

const json& as_array(const json& j, const std::string& where) {
  if (!j.is_array()) fail(WorkloadErrorKind::kSchema, where + " must be an array");
  return j;
}

const json& as_object(const json& j, const std::string& where) {
  if (!j.is_object()) fail(WorkloadErrorKind::kSchema, where + " must be an object");
  return j;
}

Scalar as_scalar(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return j.get<double>();
  fail(WorkloadErrorKind::kSchema, where + " must be a string or number");
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
  std::vector<std::string> out;
  for (const auto& e : as_array(j, where)) out.push_back(as_string(e, where + " entry"));
  return out;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(WorkloadErrorKind::kSyntax,
         "at byte " + std::to_string(e.byte) + ": " + std::string(e.what()));
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(WorkloadErrorKind::kEmptyInput, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ordered_json number_json(double v) {
  if (std::floor(v) == v && std::fabs(v) < 9.0e15) {
    return static_cast<long long>(v);
  }
  return v;
}

ordered_json scalar_json(const Scalar& s) {
  if (const auto* text = std::get_if<std::string>(&s)) return *text;
  return number_json(std::get<double>(s));
}

}  // namespace

Workload parse_workload(std::string_view text) {
  const json doc = parse_json(text);
  as_object(doc, "workload document");
  reject_unknown_keys(doc, {"attributes", "key_attributes", "queries", "records", "predicates"},
                      "workload document");

  auto attributes = string_list(require(doc, "attributes", "workload document"), "attributes");
  std::vector<std::string> keys;
  if (doc.contains("key_attributes")) keys = string_list(doc["key_attributes"], "key_attributes");

  std::vector<Query> queries;
  if (doc.contains("queries")) {
    for (const auto& jq : as_array(doc["queries"], "queries")) {
      as_object(jq, "query");
      reject_unknown_keys(jq, {"id", "uses", "freq", "sites"}, "query");
      Query q;
      q.id = as_string(require(jq, "id", "query"), "query id");
      const std::string where = "query '" + q.id + "'";
      for (auto& a : string_list(require(jq, "uses", where), where + " uses")) {
        q.uses.insert(std::move(a));
      }
      q.freq = as_number(require(jq, "freq", where), where + " freq");
      if (jq.contains("sites")) {
        for (const auto& js : as_array(jq["sites"], where + " sites")) {
          as_object(js, where + " site");
          reject_unknown_keys(js, {"site", "acc", "ref"}, where + " site");
          SiteAccess s;
          s.site = as_string(require(js, "site", where), where + " site name");
          s.acc = as_number(require(js, "acc", where), where + " acc");
          s.ref = as_number(require(js, "ref", where), where + " ref");
          q.site_access.push_back(std::move(s));
        }
      }
      queries.push_back(std::move(q));
    }
  }

  std::vector<Record> records;
  if (doc.contains("records")) {
    for (const auto& jr : as_array(doc["records"], "records")) {
      as_object(jr, "record");
      reject_unknown_keys(jr, {"id", "values"}, "record");
      Record r;
      r.id = as_string(require(jr, "id", "record"), "record id");
      const std::string where = "record '" + r.id + "'";
      for (const auto& item : as_object(require(jr, "values", where), where + " values").items()) {
        r.values.emplace(item.key(), as_scalar(item.value(), where + " value '" + item.key() + "'"));
      }
      records.push_back(std::move(r));
    }
  }

  std::vector<SimplePredicate> predicates;
  if (doc.contains("predicates")) {
    for (const auto& jp : as_array(doc["predicates"], "predicates")) {
      as_object(jp, "predicate");
      reject_unknown_keys(jp, {"id", "attr", "op", "value"}, "predicate");
      SimplePredicate p;
      p.id = as_string(require(jp, "id", "predicate"), "predicate id");
      const std::string where = "predicate '" + p.id + "'";
      p.attr = as_string(require(jp, "attr", where), where + " attr");
      p.op = parse_compare_op(as_string(require(jp, "op", where), where + " op"));
      p.value = as_scalar(require(jp, "value", where), where + " value");
      predicates.push_back(std::move(p));
    }
  }

  return Workload(std::move(attributes), std::move(queries), std::move(records),
                  std::move(predicates), std::move(keys));
}

Workload load_workload(const std::string& path) { return parse_workload(read_file(path)); }

std::string serialize_workload(const Workload& w) {
  ordered_json doc;
  doc["attributes"] = w.attributes();
  if (!w.key_attributes().empty()) doc["key_attributes"] = w.key_attributes();
  ordered_json queries = ordered_json::array();
  for (const auto& q : w.queries()) {
    ordered_json jq;
    jq["id"] = q.id;
    jq["uses"] = std::vector<std::string>(q.uses.begin(), q.uses.end());
    jq["freq"] = number_json(q.freq);
    if (!q.site_access.empty()) {
      ordered_json sites = ordered_json::array();
      for (const auto& s : q.site_access) {
        sites.push_back({{"site", s.site}, {"acc", number_json(s.acc)}, {"ref", number_json(s.ref)}});
      }
      jq["sites"] = std::move(sites);
    }
    queries.push_back(std::move(jq));
  }
  doc["queries"] = std::move(queries);
  if (!w.records().empty()) {
    ordered_json records = ordered_json::array();
    for (const auto& r : w.records()) {
      ordered_json values = ordered_json::object();
      for (const auto& [a, v] : r.values) values[a] = scalar_json(v);
      records.push_back({{"id", r.id}, {"values", std::move(values)}});
    }
    doc["records"] = std::move(records);
  }
  if (!w.predicates().empty()) {
    ordered_json preds = ordered_json::array();
    for (const auto& p : w.predicates()) {
      preds.push_back({{"id", p.id},
                       {"attr", p.attr},
                       {"op", std::string(to_string(p.op))},
                       {"value", scalar_json(p.value)}});
    }
    doc["predicates"] = std::move(preds);
  }
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Derived structures

int usage(const Workload& w, std::string_view query_id, std::string_view attribute) {
  const Query& q = w.query(query_id);
  w.attribute_index(attribute);
  return q.uses.count(std::string(attribute)) ? 1 : 0;
}

double reference_measure(const Workload& w, std::string_view query_id,
                         std::string_view attribute) {
  return usage(w, query_id, attribute) * w.query(query_id).freq;
}

std::vector<AttributeFeatureVector> feature_vectors(const Workload& w) {
  if (w.queries().empty()) {
    fail(WorkloadErrorKind::kEmptyInput, "feature vectors need at least one query");
  }
  std::vector<AttributeFeatureVector> out;
  out.reserve(w.attributes().size());
  for (const auto& a : w.attributes()) {
    AttributeFeatureVector v{a, {}};
    v.measures.reserve(w.queries().size());
    for (const auto& q : w.queries()) v.measures.push_back(q.uses.count(a) ? q.freq : 0.0);
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

template <typename T>
bool compare(const T& lhs, CompareOp op, const T& rhs) {
  switch (op) {
    case CompareOp::kEq: return lhs == rhs;
    case CompareOp::kNe: return lhs != rhs;
    case CompareOp::kLt: return lhs < rhs;
    case CompareOp::kLe: return lhs <= rhs;
    case CompareOp::kGt: return lhs > rhs;
    case CompareOp::kGe: return lhs >= rhs;
  }
  return false;
}

}  // namespace

bool evaluate_predicate(const Record& r, const SimplePredicate& p) {
  auto it = r.values.find(p.attr);
  if (it == r.values.end()) {
    fail(WorkloadErrorKind::kMissingValue,
         "record '" + r.id + "' has no value for '" + p.attr + "' (predicate '" + p.id + "')");
  }
  const Scalar& v = it->second;
  if (v.index() != p.value.index()) {
    fail(WorkloadErrorKind::kTypeMismatch,
         "record '" + r.id + "' value of '" + p.attr + "' is not comparable with predicate '" +
             p.id + "'");
  }
  if (const auto* text = std::get_if<std::string>(&v)) {
    // std::string comparison is byte-wise, i.e. code-point order for UTF-8.
    return compare(*text, p.op, std::get<std::string>(p.value));
  }
  return compare(std::get<double>(v), p.op, std::get<double>(p.value));
}

BinaryMatrix vectorize_records(const std::vector<Record>& records,
                               const std::vector<SimplePredicate>& predicates) {
  if (records.empty()) fail(WorkloadErrorKind::kEmptyInput, "no records to vectorize");
  if (predicates.empty()) fail(WorkloadErrorKind::kEmptyInput, "no predicates to vectorize with");
  BinaryMatrix m;
  for (const auto& r : records) m.row_ids.push_back(r.id);
  for (const auto& p : predicates) m.col_ids.push_back(p.id);
  m.cells.reserve(records.size());
  for (const auto& r : records) {
    std::vector<unsigned char> row;
    row.reserve(predicates.size());
    for (const auto& p : predicates) row.push_back(evaluate_predicate(r, p) ? 1 : 0);
    m.cells.push_back(std::move(row));
  }
  return m;
}

BinaryMatrix parse_binary_matrix(std::string_view text) {
  const json doc = parse_json(text);
  as_object(doc, "matrix document");
  reject_unknown_keys(doc, {"row_ids", "col_ids", "cells"}, "matrix document");
  BinaryMatrix m;
  m.row_ids = string_list(require(doc, "row_ids", "matrix document"), "row_ids");
  m.col_ids = string_list(require(doc, "col_ids", "matrix document"), "col_ids");
  if (m.row_ids.empty() || m.col_ids.empty()) {
    fail(WorkloadErrorKind::kEmptyInput, "binary matrix must have at least one row and column");
  }
  std::set<std::string> seen(m.row_ids.begin(), m.row_ids.end());
  if (seen.size() != m.row_ids.size()) fail(WorkloadErrorKind::kDuplicateId, "row ids repeat");
  const json& cells = as_array(require(doc, "cells", "matrix document"), "cells");
  if (cells.size() != m.row_ids.size()) {
    fail(WorkloadErrorKind::kSchema, "cells must have one row per row id");
  }
  for (const auto& jr : cells) {
    if (!jr.is_array() || jr.size() != m.col_ids.size()) {
      fail(WorkloadErrorKind::kSchema, "every cells row must have one entry per column id");
    }
    std::vector<unsigned char> row;
    for (const auto& c : jr) {
      if (!c.is_number_integer() || (c.get<int>() != 0 && c.get<int>() != 1)) {
        fail(WorkloadErrorKind::kSchema, "cells entries must be 0 or 1");
      }
      row.push_back(static_cast<unsigned char>(c.get<int>()));
    }
    m.cells.push_back(std::move(row));
  }
  return m;
}

BinaryMatrix load_binary_matrix(const std::string& path) {
  return parse_binary_matrix(read_file(path));
}

}  // namespace fragkit
