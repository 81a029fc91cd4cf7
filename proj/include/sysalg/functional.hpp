#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sysalg/algebra.hpp"
#include "sysalg/fixpoint.hpp"
#include "sysalg/order.hpp"
#include "sysalg/value.hpp"

namespace sysalg {

struct Signature {
  LabelSet inputs;
  LabelSet outputs;

  LabelSet labels() const;
  friend bool operator==(const Signature&, const Signature&) = default;
};

std::string to_string(const Signature& sig);

using Transfer = std::function<Tuple(const Tuple&)>;
using TruthTable = std::map<Tuple, Tuple>;

// A function from input tuples to output tuples over one domain. Copies
// share the immutable implementation.
class FunctionalSystem {
 public:
  FunctionalSystem() = default;
  // Throws InvalidArgument if inputs and outputs overlap.
  FunctionalSystem(std::string name, Signature sig, DomainPtr domain,
                   Transfer transfer);

  // Table-backed system; inputs missing from the table throw InvalidArgument.
  static FunctionalSystem from_table(std::string name, Signature sig,
                                     DomainPtr domain, TruthTable table);

  // Evaluates on x, which must assign exactly the input labels. Inputs and
  // outputs are checked against the domain.
  Tuple operator()(const Tuple& x) const;

  const std::string& name() const;
  const Signature& signature() const;
  const DomainPtr& domain() const;
  const TruthTable* table() const;
  LabelSet labels() const { return signature().labels(); }
  bool valid() const { return impl_ != nullptr; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

// Parallel composition: each side sees only its own inputs. Throws
// LabelClash if any two of the four label sets meet, DomainMismatch if the
// domains differ.
FunctionalSystem fpar(const FunctionalSystem& a, const FunctionalSystem& b);

// The feedback function v -> s(x + {(i, v)})(o).
Endo feedback(const FunctionalSystem& s, const Label& i, const Label& o,
              const Tuple& x);

// All fixed points of the feedback function, by enumerating the domain.
std::vector<Value> fixed_point_set(const FunctionalSystem& s, const Label& i,
                                   const Label& o, const Tuple& x,
                                   std::size_t bound = kDefaultEnumerationBound);

// Fixed-point selection policy for interface connection.
struct Chooser {
  enum class Policy {
    kLeastViaKleene,
    kLeastViaMonotone,
    kUniqueViaCausal,
    kPreferListed,
    kBruteForceLeast,
  };

  Policy policy = Policy::kLeastViaKleene;
  Fuel fuel;
  std::vector<Value> preferred;  // kPreferListed only

  static Chooser least_kleene(Fuel fuel = {});
  static Chooser least_monotone(Fuel fuel);
  static Chooser unique_causal(Fuel fuel = {});
  static Chooser prefer_listed(std::vector<Value> order);
  static Chooser brute_force_least();

  // The selected fixed point. Throws NoFixedPoint or FuelExhausted.
  Value choose(const FunctionalSystem& s, const Label& i, const Label& o,
               const Tuple& x) const;

  std::string describe() const;
};

// Which (input, output) pairs may be connected.
struct GammaPolicy {
  std::function<bool(const FunctionalSystem&, const Label& i, const Label& o)>
      custom;

  static GammaPolicy all_input_output_pairs() { return {}; }

  bool admits(const FunctionalSystem& s, const Label& i, const Label& o) const;
};

// gamma_{i,o}: feeds the chosen fixed point back into i and hides o. Every
// chosen value is re-checked to be a fixed point; choices are memoized per
// context. Throws NotConnectable for a pair the policy does not admit.
FunctionalSystem fconnect(const Label& i, const Label& o,
                          const FunctionalSystem& s, const Chooser& chooser,
                          const GammaPolicy& gamma = {});

// Extensional equality on the given inputs (all input tuples over the
// enumerated domain when none are given). Bounded evidence only. Throws
// SignatureMismatch for different signatures or domains.
bool observational_eq(const FunctionalSystem& a, const FunctionalSystem& b);
bool observational_eq(const FunctionalSystem& a, const FunctionalSystem& b,
                      const std::vector<Tuple>& inputs);

// Every input tuple of s over the enumerated domain.
std::vector<Tuple> all_inputs(const FunctionalSystem& s,
                              std::size_t bound = kDefaultEnumerationBound);

// "x -> s(x)" lines for the given inputs.
std::string describe_behaviour(const FunctionalSystem& s,
                               const std::vector<Tuple>& inputs);

// Undirected interfaces built from paired directed ones: label l stands for
// the input "l:in" and the output "l:out".
Label in_label(const Label& l);
Label out_label(const Label& l);

class MergedSystem {
 public:
  MergedSystem() = default;
  // Throws MalformedPairing unless inputs are exactly L:in and outputs L:out.
  MergedSystem(FunctionalSystem inner, Chooser chooser);

  const FunctionalSystem& inner() const { return inner_; }
  const Chooser& chooser() const { return chooser_; }
  LabelSet labels() const { return labels_; }

 private:
  FunctionalSystem inner_;
  Chooser chooser_;
  LabelSet labels_;
};

MergedSystem merged_parallel(const MergedSystem& a, const MergedSystem& b);
// Connects a and b in both directions. Throws MalformedPairing for a == b.
MergedSystem merged_connect(const Label& a, const Label& b,
                            const MergedSystem& s);

using InputSampler = std::function<std::vector<Tuple>(const FunctionalSystem&)>;

// Input tuples drawn from a pool of values: every tuple when there are at
// most max_tuples, otherwise the all-`empty` tuple plus a sample seeded by
// the signature, so both sides of an equality check see the same inputs.
InputSampler pool_sampler(std::vector<Value> pool, Value empty,
                          std::size_t max_tuples);

// Functional algebra over one chooser and Gamma policy. Equality is
// observational_eq on the inputs produced by equality_inputs (default: all
// enumerated input tuples).
SystemAlgebra<FunctionalSystem> functional_algebra(
    std::string name, Chooser chooser, GammaPolicy gamma = {},
    InputSampler equality_inputs = {});

}  // namespace sysalg
