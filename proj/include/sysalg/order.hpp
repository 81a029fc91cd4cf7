#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sysalg/value.hpp"

namespace sysalg {

// Result of comparing two elements of a partial order.
enum class Relation { kBelow, kAbove, kEqual, kIncomparable };

// Brute-force oracles refuse domains larger than this.
inline constexpr std::size_t kDefaultEnumerationBound = 10'000;

// A partially ordered set of tagged values. Implementations must be
// reflexive, antisymmetric and transitive; the order-core tests check this
// exhaustively on every shipped domain.
class Domain {
 public:
  explicit Domain(DomainId id) : id_(std::move(id)) {}
  virtual ~Domain() = default;

  const DomainId& id() const { return id_; }

  // Compares two members. Callers go through sysalg::compare(), which checks
  // domain tags first.
  virtual Relation compare_members(const Value& a, const Value& b) const = 0;

  virtual bool contains(const Value& v) const = 0;

  virtual std::optional<Value> least() const { return std::nullopt; }

  // Number of elements when finite and known.
  virtual std::optional<std::size_t> size() const { return std::nullopt; }

  // All elements in a deterministic order. Only called when size() is at
  // most the caller's bound.
  virtual std::vector<Value> members() const { return {}; }

  // Supremum of the omega-chain whose strictly increasing finite prefix is
  // given. Domains without such limits throw NoSupremum.
  virtual Value omega_limit(std::span<const Value> prefix) const;

  virtual std::string describe() const { return id_.name(); }

 private:
  DomainId id_;
};

using DomainPtr = std::shared_ptr<const Domain>;

// Throws DomainMismatch when either element is not tagged with order's id.
void check_member(const Domain& order, const Value& v);

Relation compare(const Domain& order, const Value& a, const Value& b);
bool leq(const Domain& order, const Value& a, const Value& b);

// True iff the elements are pairwise comparable.
bool is_chain(const Domain& order, std::span<const Value> elements);

// Least upper bound of a finite chain; the least element for the empty chain.
Value sup_chain(const Domain& order, std::span<const Value> chain);
// Greatest lower bound of a nonempty finite chain.
Value inf_chain(const Domain& order, std::span<const Value> chain);

// For a finite set every nonempty subset has a least element iff the set is
// totally ordered.
template <class T, class Rel>
bool is_well_ordered(std::span<const T> atoms, Rel&& relation) {
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    for (std::size_t b = a + 1; b < atoms.size(); ++b) {
      if (relation(atoms[a], atoms[b]) == Relation::kIncomparable) {
        return false;
      }
    }
  }
  return true;
}

bool is_well_ordered(const Domain& order, std::span<const Value> atoms);

// Enumerates the domain; throws EnumerationTooLarge when it is infinite or
// bigger than bound.
std::vector<Value> enumerate(const Domain& order,
                             std::size_t bound = kDefaultEnumerationBound);

// Sampled monotonicity evidence. An empty violation list means "no
// counterexample among the samples", never a proof.
struct MonotonicityViolation {
  Value x, y, fx, fy;
};

struct MonotonicityReport {
  std::size_t samples_checked = 0;
  std::vector<MonotonicityViolation> violations;
  bool clean() const { return violations.empty(); }
};

using Endo = std::function<Value(const Value&)>;

// Every sample must satisfy x <= y; a sample that does not throws
// InvalidArgument.
MonotonicityReport check_monotone(const Domain& order, const Endo& f,
                                  std::span<const std::pair<Value, Value>> samples);

// Componentwise order on tuples with identical label sets.
Relation compare_tuples(const Domain& order, const Tuple& a, const Tuple& b);
bool tuple_leq(const Domain& order, const Tuple& a, const Tuple& b);
Tuple sup_tuple_chain(const Domain& order, std::span<const Tuple> chain);
Tuple inf_tuple_chain(const Domain& order, std::span<const Tuple> chain);

struct TupleMonotonicityViolation {
  Tuple x, y, fx, fy;
};

struct TransferMonotonicityReport {
  std::size_t samples_checked = 0;
  std::vector<TupleMonotonicityViolation> violations;
  bool clean() const { return violations.empty(); }
};

TransferMonotonicityReport check_monotone_transfer(
    const Domain& order, const std::function<Tuple(const Tuple&)>& transfer,
    std::span<const std::pair<Tuple, Tuple>> samples);

// All tuples over the given labels with components drawn from values.
std::vector<Tuple> all_tuples(const LabelSet& labels,
                              std::span<const Value> values,
                              std::size_t bound = kDefaultEnumerationBound);

// ---------------------------------------------------------------------------
// Finite orders over integer elements 0..n-1.

class FiniteOrder final : public Domain {
 public:
  // below[a][b] must already be a partial order (reflexive, antisymmetric,
  // transitive); use make_finite_order() to build one from generating pairs.
  FiniteOrder(DomainId id, std::vector<std::vector<bool>> below);

  Relation compare_members(const Value& a, const Value& b) const override;
  bool contains(const Value& v) const override;
  std::optional<Value> least() const override;
  std::optional<std::size_t> size() const override { return below_.size(); }
  std::vector<Value> members() const override;

  Value element(std::int64_t k) const;
  std::size_t cardinality() const { return below_.size(); }
  bool below(std::size_t a, std::size_t b) const { return below_[a][b]; }

 private:
  std::vector<std::vector<bool>> below_;
  std::optional<std::int64_t> least_;
};

// Reflexive-transitive closure of the given covering pairs (a <= b). Throws
// InvalidArgument if the closure is not antisymmetric.
std::shared_ptr<const FiniteOrder> make_finite_order(
    const std::string& name, std::size_t n,
    std::span<const std::pair<std::size_t, std::size_t>> pairs);

// 0 < 1 < ... < n-1.
std::shared_ptr<const FiniteOrder> make_chain_order(const std::string& name,
                                                    std::size_t n);

// Only equal elements are comparable (e.g. single bits as plain values).
std::shared_ptr<const FiniteOrder> make_discrete_order(const std::string& name,
                                                       std::size_t n);

// Subsets of {0..width-1} as bitmasks under inclusion.
std::shared_ptr<const FiniteOrder> make_subset_order(const std::string& name,
                                                     std::size_t width);

}  // namespace sysalg
