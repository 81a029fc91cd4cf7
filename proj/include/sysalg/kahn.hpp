#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "sysalg/algebra.hpp"
#include "sysalg/fixpoint.hpp"
#include "sysalg/functional.hpp"
#include "sysalg/network.hpp"
#include "sysalg/order.hpp"
#include "sysalg/value.hpp"

namespace sysalg {

inline constexpr std::size_t kDefaultMaxLen = 64;

// Finite token sequences over an alphabet under the prefix order, optionally
// capped at max_len tokens. Without a cap the domain still only holds finite
// sequences, so increasing omega-chains have no supremum.
class SeqDomain final : public Domain {
 public:
  SeqDomain(std::vector<Token> alphabet, std::optional<std::size_t> max_len);

  Relation compare_members(const Value& a, const Value& b) const override;
  bool contains(const Value& v) const override;
  std::optional<Value> least() const override { return seq({}); }
  std::optional<std::size_t> size() const override;
  std::vector<Value> members() const override;
  std::string describe() const override;

  Value seq(std::vector<Token> tokens) const;
  // Every member of length at most n, shortest first.
  std::vector<Value> members_up_to(std::size_t n) const;

  const std::vector<Token>& alphabet() const { return alphabet_; }
  const std::optional<std::size_t>& max_len() const { return max_len_; }

 private:
  std::vector<Token> alphabet_;
  std::optional<std::size_t> max_len_;
};

using SeqDomainPtr = std::shared_ptr<const SeqDomain>;

// Throws InvalidArgument for an empty alphabet. Domains built from equal
// parameters share one id, so their values compose.
SeqDomainPtr make_seq_domain(std::vector<Token> alphabet,
                             std::optional<std::size_t> max_len = kDefaultMaxLen);

struct BlockRun {
  std::map<std::string, TokenSeq> outputs;
  // Outputs that wanted to emit past the length cap.
  std::set<std::string> truncated;
  std::size_t actions = 0;
};

inline constexpr std::size_t kDefaultActionBudget = 1'000'000;

// Runs the block until it blocks on an exhausted input, halts, or every
// output is cut off at max_len. Throws StepDivergence past the budget.
BlockRun run_block(const ProcessBlock& block,
                   const std::map<std::string, TokenSeq>& inputs,
                   std::optional<std::size_t> max_len,
                   std::size_t action_budget = kDefaultActionBudget);

// The history transfer function of the block; port p appears as label
// binding.at(p). Monotone and continuous by construction.
FunctionalSystem lift_process(const ProcessBlock& block,
                              const std::map<std::string, Label>& binding,
                              const SeqDomainPtr& domain);
// Binds every port p to the label "<prefix>.<p>".
FunctionalSystem lift_process(const ProcessBlock& block,
                              const std::string& prefix,
                              const SeqDomainPtr& domain);

namespace blocks {
// in -> out, copying.
ProcessBlock copy();
// in -> out1, out2.
ProcessBlock dup();
// Emits the seed tokens on out, then copies in.
ProcessBlock delay(std::vector<Token> seed);
// out = in + k, reduced mod m when m > 0.
ProcessBlock add(Token k, Token m = 0);
// Reads a then b and emits a + b (mod m when m > 0).
ProcessBlock adder(Token m = 0);
// Emits the tokens on out and halts.
ProcessBlock source(std::vector<Token> tokens);
// Copies in to out, dropping tokens equal to k.
ProcessBlock filter(Token k);
// Reads a, b, a, b, ... copying each token to out.
ProcessBlock alternate();
// Consumes in forever.
ProcessBlock sink();

// Stdlib by name with integer arguments; throws InvalidArgument.
ProcessBlock by_name(const std::string& kind, const std::vector<Token>& args);
std::vector<std::string> names();
}  // namespace blocks

struct NetworkRun {
  FixpointStatus status = FixpointStatus::kFuelExhausted;
  std::size_t steps = 0;
  // Every output port (channels and external outputs) plus the external inputs.
  std::map<Label, TokenSeq> histories;
  std::set<Label> truncated;
  // Channel histories after each Kleene round, when recorded.
  std::vector<std::map<Label, TokenSeq>> rounds;
};

// Kleene iteration of all output histories from the empty sequences; in each
// round the nodes run in name order on the previous round's histories. Missing
// external inputs are empty. Throws FuelExhausted when fuel runs out and
// ValidationError unless the network is over a sequence domain.
NetworkRun run_network(const Network& net,
                       const std::map<Label, TokenSeq>& external_inputs,
                       Fuel fuel = {}, Record record = Record::kNo);

// The network as one system: all nodes lifted and composed in parallel, then
// each wire connected in the given order (default: wire order).
FunctionalSystem network_system(const Network& net, const Chooser& chooser,
                                const std::vector<std::size_t>& wire_order = {});

enum class Flavor { kMonotone, kContinuous };

// Deterministic equality inputs for sequence systems: every input tuple
// built from short sequences when there are few, otherwise a seeded sample.
InputSampler seq_input_sampler(const SeqDomainPtr& domain, std::size_t max_tuples = 48);

SystemAlgebra<FunctionalSystem> kahn_algebra(const SeqDomainPtr& domain,
                                             Flavor flavor);

}  // namespace sysalg
