#include "sysalg/order.hpp"

#include <algorithm>

#include "sysalg/error.hpp"

namespace sysalg {

Value Domain::omega_limit(std::span<const Value>) const {
  fail(ErrorCode::kNoSupremum,
       "domain " + id_.name() + " has no suprema for unbounded omega-chains");
}

void check_member(const Domain& order, const Value& v) {
  if (v.domain() != order.id()) {
    fail(ErrorCode::kDomainMismatch, "value " + to_string(v) + " of domain " +
                                         v.domain().name() +
                                         " used with domain " +
                                         order.id().name());
  }
}

Relation compare(const Domain& order, const Value& a, const Value& b) {
  check_member(order, a);
  check_member(order, b);
  return order.compare_members(a, b);
}

bool leq(const Domain& order, const Value& a, const Value& b) {
  const Relation r = compare(order, a, b);
  return r == Relation::kBelow || r == Relation::kEqual;
}

bool is_chain(const Domain& order, std::span<const Value> elements) {
  return is_well_ordered(order, elements);
}

bool is_well_ordered(const Domain& order, std::span<const Value> atoms) {
  return is_well_ordered<Value>(atoms, [&](const Value& a, const Value& b) {
    return compare(order, a, b);
  });
}

namespace {

void require_chain(const Domain& order, std::span<const Value> chain,
                   ErrorCode code) {
  for (const auto& v : chain) {
    check_member(order, v);
    if (!order.contains(v)) {
      fail(code, "element " + to_string(v) + " lies outside domain " +
                     order.id().name());
    }
  }
  if (!is_chain(order, chain)) {
    fail(ErrorCode::kInvalidArgument, "elements do not form a chain");
  }
}

}  // namespace

Value sup_chain(const Domain& order, std::span<const Value> chain) {
  if (chain.empty()) {
    if (auto bottom = order.least()) return *bottom;
    fail(ErrorCode::kNoSupremum,
         "empty chain in domain " + order.id().name() + " without least element");
  }
  require_chain(order, chain, ErrorCode::kNoSupremum);
  const Value* best = &chain.front();
  for (const auto& v : chain) {
    if (order.compare_members(*best, v) == Relation::kBelow) best = &v;
  }
  return *best;
}

Value inf_chain(const Domain& order, std::span<const Value> chain) {
  if (chain.empty()) {
    fail(ErrorCode::kNoInfimum, "infimum of the empty chain is not defined");
  }
  require_chain(order, chain, ErrorCode::kNoInfimum);
  const Value* best = &chain.front();
  for (const auto& v : chain) {
    if (order.compare_members(v, *best) == Relation::kBelow) best = &v;
  }
  return *best;
}

std::vector<Value> enumerate(const Domain& order, std::size_t bound) {
  const auto n = order.size();
  if (!n) {
    fail(ErrorCode::kEnumerationTooLarge,
         "domain " + order.id().name() + " is not finitely enumerable");
  }
  if (*n > bound) {
    fail(ErrorCode::kEnumerationTooLarge,
         "domain " + order.id().name() + " has " + std::to_string(*n) +
             " elements, above the bound of " + std::to_string(bound));
  }
  return order.members();
}

MonotonicityReport check_monotone(
    const Domain& order, const Endo& f,
    std::span<const std::pair<Value, Value>> samples) {
  MonotonicityReport report;
  for (const auto& [x, y] : samples) {
    if (!leq(order, x, y)) {
      fail(ErrorCode::kInvalidArgument,
           "monotonicity sample " + to_string(x) + " is not below " + to_string(y));
    }
    Value fx = f(x);
    Value fy = f(y);
    ++report.samples_checked;
    if (!leq(order, fx, fy)) {
      report.violations.push_back({x, y, std::move(fx), std::move(fy)});
    }
  }
  return report;
}

Relation compare_tuples(const Domain& order, const Tuple& a, const Tuple& b) {
  if (keys(a) != keys(b)) {
    fail(ErrorCode::kSignatureMismatch,
         "tuples " + to_string(a) + " and " + to_string(b) +
             " have different labels");
  }
  bool all_below = true;
  bool all_above = true;
  for (const auto& [label, va] : a) {
    switch (compare(order, va, b.at(label))) {
      case Relation::kEqual: break;
      case Relation::kBelow: all_above = false; break;
      case Relation::kAbove: all_below = false; break;
      case Relation::kIncomparable: return Relation::kIncomparable;
    }
  }
  if (all_below && all_above) return Relation::kEqual;
  if (all_below) return Relation::kBelow;
  if (all_above) return Relation::kAbove;
  return Relation::kIncomparable;
}

bool tuple_leq(const Domain& order, const Tuple& a, const Tuple& b) {
  const Relation r = compare_tuples(order, a, b);
  return r == Relation::kBelow || r == Relation::kEqual;
}

namespace {

template <class Pick>
Tuple componentwise(const Domain& order, std::span<const Tuple> chain,
                    Pick pick) {
  if (chain.empty()) {
    fail(ErrorCode::kInvalidArgument, "empty tuple chain has no label set");
  }
  Tuple out;
  for (const auto& [label, unused] : chain.front()) {
    std::vector<Value> column;
    for (const auto& t : chain) {
      auto it = t.find(label);
      if (it == t.end() || t.size() != chain.front().size()) {
        fail(ErrorCode::kSignatureMismatch, "tuple chain with mixed labels");
      }
      column.push_back(it->second);
    }
    out.emplace(label, pick(order, column));
  }
  return out;
}

}  // namespace

Tuple sup_tuple_chain(const Domain& order, std::span<const Tuple> chain) {
  return componentwise(order, chain, [](const Domain& o, const auto& col) {
    return sup_chain(o, col);
  });
}

Tuple inf_tuple_chain(const Domain& order, std::span<const Tuple> chain) {
  return componentwise(order, chain, [](const Domain& o, const auto& col) {
    return inf_chain(o, col);
  });
}

TransferMonotonicityReport check_monotone_transfer(
    const Domain& order, const std::function<Tuple(const Tuple&)>& transfer,
    std::span<const std::pair<Tuple, Tuple>> samples) {
  TransferMonotonicityReport report;
  for (const auto& [x, y] : samples) {
    if (!tuple_leq(order, x, y)) {
      fail(ErrorCode::kInvalidArgument,
           "monotonicity sample " + to_string(x) + " is not below " + to_string(y));
    }
    Tuple fx = transfer(x);
    Tuple fy = transfer(y);
    ++report.samples_checked;
    if (!tuple_leq(order, fx, fy)) {
      report.violations.push_back({x, y, std::move(fx), std::move(fy)});
    }
  }
  return report;
}

std::vector<Tuple> all_tuples(const LabelSet& labels,
                              std::span<const Value> values, std::size_t bound) {
  std::size_t count = 1;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (values.empty()) return {};
    if (count > bound / values.size()) {
      fail(ErrorCode::kEnumerationTooLarge,
           "input enumeration exceeds the bound of " + std::to_string(bound));
    }
    count *= values.size();
  }
  std::vector<Tuple> out{Tuple{}};
  for (const auto& label : labels) {
    std::vector<Tuple> next;
    next.reserve(out.size() * values.size());
    for (const auto& partial : out) {
      for (const auto& v : values) {
        Tuple t = partial;
        t.emplace(label, v);
        next.push_back(std::move(t));
      }
    }
    out = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------

FiniteOrder::FiniteOrder(DomainId id, std::vector<std::vector<bool>> below)
    : Domain(std::move(id)), below_(std::move(below)) {
  const std::size_t n = below_.size();
  for (std::size_t c = 0; c < n; ++c) {
    bool is_least = true;
    for (std::size_t x = 0; x < n && is_least; ++x) is_least = below_[c][x];
    if (is_least) {
      least_ = static_cast<std::int64_t>(c);
      break;
    }
  }
}

Relation FiniteOrder::compare_members(const Value& a, const Value& b) const {
  const auto x = static_cast<std::size_t>(a.as_int());
  const auto y = static_cast<std::size_t>(b.as_int());
  if (x == y) return Relation::kEqual;
  if (below_[x][y]) return Relation::kBelow;
  if (below_[y][x]) return Relation::kAbove;
  return Relation::kIncomparable;
}

bool FiniteOrder::contains(const Value& v) const {
  const auto* k = std::get_if<std::int64_t>(&v.data());
  return v.domain() == id() && k && *k >= 0 &&
         static_cast<std::size_t>(*k) < below_.size();
}

std::optional<Value> FiniteOrder::least() const {
  if (!least_) return std::nullopt;
  return element(*least_);
}

std::vector<Value> FiniteOrder::members() const {
  std::vector<Value> out;
  out.reserve(below_.size());
  for (std::size_t k = 0; k < below_.size(); ++k) {
    out.push_back(element(static_cast<std::int64_t>(k)));
  }
  return out;
}

Value FiniteOrder::element(std::int64_t k) const {
  if (k < 0 || static_cast<std::size_t>(k) >= below_.size()) {
    fail(ErrorCode::kDomainMismatch, "element " + std::to_string(k) +
                                         " is outside domain " + id().name());
  }
  return Value(id(), k);
}

std::shared_ptr<const FiniteOrder> make_finite_order(
    const std::string& name, std::size_t n,
    std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  for (std::size_t k = 0; k < n; ++k) below[k][k] = true;
  for (const auto& [a, b] : pairs) {
    if (a >= n || b >= n) {
      fail(ErrorCode::kInvalidArgument, "order pair outside 0.." + std::to_string(n));
    }
    below[a][b] = true;
  }
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!below[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (below[k][j]) below[i][j] = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (below[i][j] && below[j][i]) {
        fail(ErrorCode::kInvalidArgument,
             "order " + name + " is not antisymmetric at " + std::to_string(i) +
                 "," + std::to_string(j));
      }
    }
  }
  return std::make_shared<FiniteOrder>(DomainId(name), std::move(below));
}

std::shared_ptr<const FiniteOrder> make_chain_order(const std::string& name,
                                                    std::size_t n) {
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) below[i][j] = true;
  }
  return std::make_shared<FiniteOrder>(DomainId(name), std::move(below));
}

std::shared_ptr<const FiniteOrder> make_discrete_order(const std::string& name,
                                                       std::size_t n) {
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) below[i][i] = true;
  return std::make_shared<FiniteOrder>(DomainId(name), std::move(below));
}

std::shared_ptr<const FiniteOrder> make_subset_order(const std::string& name,
                                                     std::size_t width) {
  const std::size_t n = std::size_t{1} << width;
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) below[a][b] = (a & ~b) == 0;
  }
  return std::make_shared<FiniteOrder>(DomainId(name), std::move(below));
}

}  // namespace sysalg
