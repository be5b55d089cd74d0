#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fragkit {

/// A record cell or predicate operand: text or number.
using Scalar = std::variant<std::string, double>;

enum class WorkloadErrorKind {
  kSyntax,
  kSchema,
  kUnknownKey,
  kUndeclaredAttribute,
  kDuplicateId,
  kNegativeValue,
  kUnknownId,
  kMissingValue,
  kTypeMismatch,
  kEmptyInput,
};

std::string_view to_string(WorkloadErrorKind kind);

class WorkloadError : public std::runtime_error {
 public:
  WorkloadError(WorkloadErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  WorkloadErrorKind kind() const noexcept { return kind_; }

 private:
  WorkloadErrorKind kind_;
};

struct SiteAccess {
  std::string site;
  double acc = 0.0;
  double ref = 0.0;
};

struct Query {
  std::string id;
  std::set<std::string> uses;
  double freq = 0.0;
  std::vector<SiteAccess> site_access;  // empty: one implicit site, ref=1, acc=freq

  /// Sum over sites of ref * acc.
  double weighted_access() const;
};

struct Record {
  std::string id;
  std::map<std::string, Scalar> values;
};

enum class CompareOp { kEq, kNe, kLt, kLe, kGt, kGe };

std::string_view to_string(CompareOp op);
CompareOp parse_compare_op(std::string_view text);

struct SimplePredicate {
  std::string id;
  std::string attr;
  CompareOp op = CompareOp::kEq;
  Scalar value;
};

struct AttributeFeatureVector {
  std::string attribute;
  std::vector<double> measures;  // one entry per query, in query order
};

/// 0/1 matrix of records (rows) against predicates (columns).
struct BinaryMatrix {
  std::vector<std::string> row_ids;
  std::vector<std::string> col_ids;
  std::vector<std::vector<unsigned char>> cells;

  std::size_t rows() const { return row_ids.size(); }
  std::size_t cols() const { return col_ids.size(); }
};

class Workload {
 public:
  Workload() = default;

  /// Validates every invariant and throws WorkloadError on the first violation.
  Workload(std::vector<std::string> attributes, std::vector<Query> queries,
           std::vector<Record> records = {},
           std::vector<SimplePredicate> predicates = {},
           std::vector<std::string> key_attributes = {});

  const std::vector<std::string>& attributes() const { return attributes_; }
  const std::vector<Query>& queries() const { return queries_; }
  const std::vector<Record>& records() const { return records_; }
  const std::vector<SimplePredicate>& predicates() const { return predicates_; }
  const std::vector<std::string>& key_attributes() const { return key_attributes_; }

  bool has_attribute(std::string_view name) const;
  std::size_t attribute_index(std::string_view name) const;
  const Query& query(std::string_view id) const;

 private:
  std::vector<std::string> attributes_;
  std::vector<Query> queries_;
  std::vector<Record> records_;
  std::vector<SimplePredicate> predicates_;
  std::vector<std::string> key_attributes_;
  std::map<std::string, std::size_t, std::less<>> attribute_index_;
  std::map<std::string, std::size_t, std::less<>> query_index_;
};

Workload parse_workload(std::string_view text);
Workload load_workload(const std::string& path);
std::string serialize_workload(const Workload& w);

int usage(const Workload& w, std::string_view query_id, std::string_view attribute);
double reference_measure(const Workload& w, std::string_view query_id,
                         std::string_view attribute);
std::vector<AttributeFeatureVector> feature_vectors(const Workload& w);

bool evaluate_predicate(const Record& r, const SimplePredicate& p);
BinaryMatrix vectorize_records(const std::vector<Record>& records,
                               const std::vector<SimplePredicate>& predicates);

BinaryMatrix parse_binary_matrix(std::string_view text);
BinaryMatrix load_binary_matrix(const std::string& path);

}  // namespace fragkit
