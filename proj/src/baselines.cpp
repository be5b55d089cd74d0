#include "fragkit/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "fragkit/horizontal.hpp"
#include "fragkit/kernels.hpp"
#include "fragkit/vertical.hpp"

namespace fragkit {

AffinityMatrix affinity_matrix(const Workload& w) {
  if (w.queries().empty()) {
    throw WorkloadError(WorkloadErrorKind::kEmptyInput, "empty input: affinity needs at least one query");
  }
  const auto& attrs = w.attributes();
  AffinityMatrix out{attrs, SquareMatrix<double>(attrs.size())};
  kernels::fill_symmetric_serial(out.aff, [&](std::size_t i, std::size_t j) {
    return attribute_affinity(w, attrs[i], attrs[j]);
  });
  return out;
}

double bond(const AffinityMatrix& aff, std::size_t x, std::size_t y) {
  double sum = 0.0;
  for (std::size_t z = 0; z < aff.size(); ++z) sum += aff.aff(z, x) * aff.aff(z, y);
  return sum;
}

double global_affinity_measure(const AffinityMatrix& aff, const std::vector<std::size_t>& order) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) sum += bond(aff, order[i], order[i + 1]);
  return 2.0 * sum;
}

namespace {

SquareMatrix<double> bond_matrix(const AffinityMatrix& aff) {
  SquareMatrix<double> b(aff.size());
  kernels::fill_symmetric_parallel(b, [&](std::size_t x, std::size_t y) { return bond(aff, x, y); });
  return b;
}

double path_weight(const SquareMatrix<double>& b, const std::vector<std::size_t>& order) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) sum += b(order[i], order[i + 1]);
  return sum;
}

/// Maximum-weight Hamiltonian path over the bond graph (Held-Karp).
std::vector<std::size_t> exact_order(const SquareMatrix<double>& b) {
  const std::size_t n = b.size();
  const std::size_t full = std::size_t{1} << n;
  constexpr double kUnset = -std::numeric_limits<double>::infinity();
  std::vector<double> best(full * n, kUnset);
  std::vector<std::size_t> from(full * n, n);
  for (std::size_t i = 0; i < n; ++i) best[(std::size_t{1} << i) * n + i] = 0.0;

  for (std::size_t mask = 1; mask < full; ++mask) {
    for (std::size_t last = 0; last < n; ++last) {
      const double cur = best[mask * n + last];
      if (cur == kUnset) continue;
      for (std::size_t next = 0; next < n; ++next) {
        if (mask & (std::size_t{1} << next)) continue;
        const std::size_t to = (mask | (std::size_t{1} << next)) * n + next;
        const double cand = cur + b(last, next);
        if (cand > best[to]) {
          best[to] = cand;
          from[to] = last;
        }
      }
    }
  }

  std::size_t mask = full - 1;
  std::size_t last = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (best[mask * n + i] > best[mask * n + last]) last = i;
  }
  std::vector<std::size_t> order;
  while (last != n) {
    order.push_back(last);
    const std::size_t prev = from[mask * n + last];
    mask &= ~(std::size_t{1} << last);
    last = prev;
  }
  std::reverse(order.begin(), order.end());
  return order;
}

/// First-improvement search over single-column moves.
std::vector<std::size_t> local_search_order(const SquareMatrix<double>& b,
                                            std::vector<std::size_t> order) {
  const std::size_t n = order.size();
  double current = path_weight(b, order);
  bool improved = true;
  for (std::size_t round = 0; improved && round < 10 * n * n; ++round) {
    improved = false;
    for (std::size_t i = 0; i < n && !improved; ++i) {
      for (std::size_t j = 0; j < n && !improved; ++j) {
        if (i == j) continue;
        auto cand = order;
        const std::size_t col = cand[i];
        cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(i));
        cand.insert(cand.begin() + static_cast<std::ptrdiff_t>(j), col);
        const double w = path_weight(b, cand);
        if (w > current + 1e-9 * std::max(1.0, std::fabs(current))) {
          order = std::move(cand);
          current = w;
          improved = true;
        }
      }
    }
  }
  return order;
}

}  // namespace

std::vector<std::size_t> greedy_bond_energy_order(const AffinityMatrix& aff) {
  const std::size_t n = aff.size();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < std::min<std::size_t>(n, 2); ++i) order.push_back(i);
  const SquareMatrix<double> b = bond_matrix(aff);
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  auto bond_or_zero = [&](std::size_t x, std::size_t y) {
    return x == kNone || y == kNone ? 0.0 : b(x, y);
  };
  for (std::size_t col = 2; col < n; ++col) {
    std::size_t best_pos = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t pos = 0; pos <= order.size(); ++pos) {
      const std::size_t left = pos > 0 ? order[pos - 1] : kNone;
      const std::size_t right = pos < order.size() ? order[pos] : kNone;
      const double cont =
          2 * bond_or_zero(left, col) + 2 * bond_or_zero(col, right) - 2 * bond_or_zero(left, right);
      if (cont > best) {
        best = cont;
        best_pos = pos;
      }
    }
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(best_pos), col);
  }
  return order;
}

ClusteredAffinityMatrix bond_energy_order(const AffinityMatrix& aff) {
  const std::size_t n = aff.size();
  if (n == 0) throw std::invalid_argument("bond_energy_order: no attributes");
  std::vector<std::size_t> order = greedy_bond_energy_order(aff);
  if (n > 2) {
    const SquareMatrix<double> b = bond_matrix(aff);
    const double greedy_weight = path_weight(b, order);
    std::vector<std::size_t> polished =
        n <= kExactOrderLimit ? exact_order(b) : local_search_order(b, order);
    const double polished_weight = path_weight(b, polished);
    if (polished_weight > greedy_weight + 1e-9 * std::max(1.0, std::fabs(greedy_weight))) {
      order = std::move(polished);
    }
  }

  ClusteredAffinityMatrix ca;
  ca.order_index = order;
  for (std::size_t i : order) ca.ordering.push_back(aff.ids[i]);
  ca.matrix = SquareMatrix<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) ca.matrix(i, j) = aff.aff(order[i], order[j]);
  }
  ca.am = global_affinity_measure(aff, order);
  return ca;
}

SplitResult split_partition(const ClusteredAffinityMatrix& ca, const Workload& w) {
  const std::size_t n = ca.ordering.size();
  if (n < 2) throw std::invalid_argument("split_partition needs at least two attributes");
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < n; ++i) position[ca.ordering[i]] = i;

  std::vector<std::vector<std::size_t>> query_positions;
  std::vector<double> weights;
  for (const auto& q : w.queries()) {
    std::vector<std::size_t> pos;
    for (const auto& a : q.uses) {
      auto it = position.find(a);
      if (it == position.end()) {
        throw std::invalid_argument("query '" + q.id + "' uses '" + a + "' which is not in the ordering");
      }
      pos.push_back(it->second);
    }
    query_positions.push_back(std::move(pos));
    weights.push_back(q.weighted_access());
  }

  const std::vector<double> z = kernels::split_objective_parallel(n, query_positions, weights);
  const std::size_t best = kernels::first_argmax(z);

  SplitResult r;
  r.shift = best / (n - 1);
  r.top_size = best % (n - 1) + 1;
  for (std::size_t k = 0; k < n; ++k) {
    const std::string& name = ca.ordering[(r.shift + k) % n];
    (k < r.top_size ? r.top : r.bottom).push_back(name);
  }
  const kernels::SplitSums sums = kernels::split_sums(n, r.shift, r.top_size, query_positions, weights);
  r.ctq = sums.ctq;
  r.cbq = sums.cbq;
  r.coq = sums.coq;
  r.z = z[best];
  return r;
}

FragmentationPlan bea_vertical(const Workload& w) {
  if (w.attributes().size() < 2) {
    throw std::invalid_argument("bea needs at least two attributes to split");
  }
  const AffinityMatrix aff = affinity_matrix(w);
  const ClusteredAffinityMatrix ca = bond_energy_order(aff);
  const SplitResult split = split_partition(ca, w);

  auto by_schema_order = [&](std::vector<std::string> members) {
    std::sort(members.begin(), members.end(), [&](const auto& a, const auto& b) {
      return w.attribute_index(a) < w.attribute_index(b);
    });
    return members;
  };
  std::vector<std::string> first = by_schema_order(split.top);
  std::vector<std::string> second = by_schema_order(split.bottom);
  if (w.attribute_index(second.front()) < w.attribute_index(first.front())) std::swap(first, second);

  FragmentationPlan plan;
  plan.method = PlanMethod::kBea;
  plan.fragments = {{"V1", std::move(first)}, {"V2", std::move(second)}};
  plan.params["ordering"] = ca.ordering;
  plan.params["scan"] = "circular shifts x split points";
  plan.params["candidates"] = ca.ordering.size() * (ca.ordering.size() - 1);
  plan.params["shift"] = split.shift;
  plan.params["top_size"] = split.top_size;
  plan.params["replicated_keys"] = w.key_attributes();
  plan.metrics["am"] = ca.am;
  plan.metrics["z"] = split.z;
  plan.metrics["ctq"] = split.ctq;
  plan.metrics["cbq"] = split.cbq;
  plan.metrics["coq"] = split.coq;

  const ValidationReport report = validate_vertical(plan, w);
  if (!report.valid()) throw std::logic_error("bea plan failed validation: " + report.violations.front());
  return plan;
}

bool MintermPredicate::holds(const std::vector<unsigned char>& truth) const {
  if (truth.size() != negated.size()) throw std::invalid_argument("minterm arity mismatch");
  for (std::size_t j = 0; j < truth.size(); ++j) {
    if ((truth[j] != 0) == negated[j]) return false;
  }
  return true;
}

std::string MintermPredicate::describe(const std::vector<std::string>& predicate_ids) const {
  if (negated.empty()) return "TRUE";
  std::string out;
  for (std::size_t j = 0; j < negated.size(); ++j) {
    if (j > 0) out += " AND ";
    if (negated[j]) out += "NOT ";
    out += predicate_ids[j];
  }
  return out;
}

std::vector<MintermPredicate> generate_minterms(const std::vector<SimplePredicate>& preds,
                                                std::size_t cap) {
  const std::size_t m = preds.size();
  if (m > cap || m >= 8 * sizeof(std::size_t) - 1) {
    throw ResourceLimitError("minterm enumeration over " + std::to_string(m) +
                             " predicates needs 2^" + std::to_string(m) +
                             " conjunctions; the cap is " + std::to_string(cap) + " predicates");
  }
  const std::size_t count = std::size_t{1} << m;
  std::vector<MintermPredicate> out(count);
  for (std::size_t code = 0; code < count; ++code) {
    out[code].negated.resize(m);
    for (std::size_t j = 0; j < m; ++j) out[code].negated[j] = (code >> (m - 1 - j)) & 1;
  }
  return out;
}

FragmentationPlan phorizontal(const Workload& w, std::size_t cap) {
  if (w.records().empty()) {
    throw WorkloadError(WorkloadErrorKind::kEmptyInput, "empty input: phorizontal needs at least one record");
  }
  if (w.predicates().empty()) {
    throw WorkloadError(WorkloadErrorKind::kEmptyInput, "empty input: phorizontal needs at least one predicate");
  }
  const std::vector<MintermPredicate> minterms = generate_minterms(w.predicates(), cap);
  const BinaryMatrix truth = vectorize_records(w.records(), w.predicates());
  const std::size_t m = truth.cols();

  std::vector<std::vector<std::string>> buckets(minterms.size());
  for (std::size_t i = 0; i < truth.rows(); ++i) {
    std::size_t code = 0;
    for (std::size_t j = 0; j < m; ++j) code = (code << 1) | (truth.cells[i][j] ? 0 : 1);
    if (!minterms[code].holds(truth.cells[i])) {
      throw std::logic_error("record '" + truth.row_ids[i] + "' does not satisfy its own minterm");
    }
    buckets[code].push_back(truth.row_ids[i]);
  }

  FragmentationPlan plan;
  plan.method = PlanMethod::kPhorizontal;
  for (std::size_t code = 0; code < minterms.size(); ++code) {
    if (buckets[code].empty()) continue;
    plan.fragments.push_back({minterms[code].describe(truth.col_ids), std::move(buckets[code])});
  }
  plan.params["predicates"] = truth.col_ids;
  plan.params["minterm_cap"] = cap;
  plan.metrics["minterms"] = static_cast<double>(minterms.size());
  plan.metrics["nonempty_minterms"] = static_cast<double>(plan.fragments.size());

  const ValidationReport report = validate_horizontal(plan, w);
  if (!report.valid()) {
    throw std::logic_error("phorizontal plan failed validation: " + report.violations.front());
  }
  return plan;
}

}  // namespace fragkit
