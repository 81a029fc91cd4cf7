#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sysalg/algebra.hpp"
#include "sysalg/fixpoint.hpp"
#include "sysalg/functional.hpp"
#include "sysalg/network.hpp"
#include "sysalg/order.hpp"
#include "sysalg/value.hpp"

namespace sysalg {

// Well-ordered event sets under the initial-segment order. An optional
// horizon bounds all times from above; an optional finite universe of events
// makes the domain enumerable (all well-ordered subsets of the universe).
class EventDomain final : public Domain {
 public:
  EventDomain(std::optional<Rational> horizon,
              std::optional<std::vector<TimedValue>> universe);

  Relation compare_members(const Value& a, const Value& b) const override;
  bool contains(const Value& v) const override;
  std::optional<Value> least() const override { return events({}); }
  std::optional<std::size_t> size() const override;
  std::vector<Value> members() const override;

  Value events(std::vector<TimedValue> evs) const;
  Value history(EventHistory h) const { return Value(id(), std::move(h)); }

  const std::optional<Rational>& horizon() const { return horizon_; }
  const std::optional<std::vector<TimedValue>>& universe() const { return universe_; }

 private:
  std::optional<Rational> horizon_;
  std::optional<std::vector<TimedValue>> universe_;
};

using EventDomainPtr = std::shared_ptr<const EventDomain>;

EventDomainPtr event_order(std::optional<Rational> horizon = std::nullopt,
                           std::optional<std::vector<TimedValue>> universe = std::nullopt);

// values x times, e.g. {0,1} x {0,1,2}.
std::vector<TimedValue> event_grid(const std::vector<Token>& values,
                                   const std::vector<Rational>& times);

// ---------------------------------------------------------------------------
// Causality evidence.

using TuplePair = std::pair<Tuple, Tuple>;

struct CausalityViolation {
  std::size_t pair_index = 0;
  Label output;
  TimedValue event;  // output difference without an earlier input difference
};

struct CausalityReport {
  std::size_t pairs_checked = 0;
  std::vector<CausalityViolation> violations;
  bool clean() const { return violations.empty(); }
};

// For each pair and output label, every event in the output symmetric
// difference must come strictly after some event in an input symmetric
// difference.
CausalityReport check_causal(const FunctionalSystem& s,
                             const std::vector<TuplePair>& pairs);

// Every pair (inputs[a], inputs[b]) with a < b.
std::vector<TuplePair> all_pairs(const std::vector<Tuple>& inputs);

// ---------------------------------------------------------------------------
// Causal blocks. Outputs at or past the domain horizon are dropped. Labels
// are "<name>.<port>".

namespace causal_blocks {
// in -> out, every event shifted by delta > 0.
FunctionalSystem delay(const std::string& name, Rational delta, const EventDomainPtr& d);
// No inputs; out = (1, phase + k * period) for k = 0, 1, ...
FunctionalSystem clock(const std::string& name, Rational period, Rational phase,
                       const EventDomainPtr& d);
// a, b -> out: for every time t with an input event, emits at t + delta the
// sum of the latest values of a and b at or before t (0 when none yet).
FunctionalSystem adder(const std::string& name, Rational delta, const EventDomainPtr& d);
// in -> out: (1, 0) plus every input event echoed delta later.
FunctionalSystem tick(const std::string& name, Rational delta, const EventDomainPtr& d);
// in -> out: value 0 at every integer time, plus for every input event at t
// one at (t + floor(t + 1)) / 2.
FunctionalSystem zeno(const std::string& name, const EventDomainPtr& d);
// in -> out, same events. Not causal.
FunctionalSystem identity(const std::string& name, const EventDomainPtr& d);
// No dependence on in: always the given events.
FunctionalSystem constant(const std::string& name, std::vector<TimedValue> out,
                          const EventDomainPtr& d);

// By name with rational arguments; throws InvalidArgument.
FunctionalSystem by_name(const std::string& kind, const std::string& name,
                         const std::vector<Rational>& args, const EventDomainPtr& d);
std::vector<std::string> names();
}  // namespace causal_blocks

// The Zeno feedback function on bare event sets: the integers below horizon
// plus (t + floor(t + 1)) / 2 for every event time t, all with value 0.
EventEndo zeno_function(Rational horizon);

// Outputs at 1/n for n = 1, 2, ... would be needed when no input arrives.
// That set has no least element, so it is not an event history; building
// it throws NotWellOrdered after checking the first `probe` events form a
// strictly descending chain.
EventHistory reciprocal_outputs(std::size_t probe = 16);

// Random causal table system over an enumerable domain. Each output event
// at time t is drawn from a random function of the inputs strictly before
// t. With peek set, the inputs at time t are visible too, which usually
// breaks causality.
FunctionalSystem random_causal_system(const std::string& name,
                                      const std::vector<Label>& inputs,
                                      const std::vector<Label>& outputs,
                                      const EventDomainPtr& d, std::mt19937_64& rng,
                                      bool peek = false);

// gamma_{i,o} with the unique fixed point found by min-extension.
FunctionalSystem cconnect(const Label& i, const Label& o, const FunctionalSystem& s,
                          Fuel fuel = {});

// Deterministic equality inputs over a horizon: short histories on a time grid.
InputSampler event_input_sampler(const EventDomainPtr& d, std::size_t max_tuples = 48);

SystemAlgebra<FunctionalSystem> causal_algebra(const EventDomainPtr& d, Fuel fuel = {});

// ---------------------------------------------------------------------------
// Signals: partial maps (interface, time) -> value.

using SignalPoint = std::pair<Label, Rational>;
using Signal = std::map<SignalPoint, Token>;

Signal to_signal(const Tuple& x);
// Raw event lists; throws NotAFunction when an interface has two events at
// one time.
Signal to_signal(const std::map<Label, std::vector<TimedValue>>& raw);
Tuple from_signal(const Signal& sigma, const LabelSet& labels, const EventDomain& d);

using SignalMap = std::function<Signal(const Signal&)>;

// F(sigma) = to_signal(s(from_signal(sigma))).
SignalMap translate(const FunctionalSystem& s);

struct StrictCausalityViolation {
  std::size_t pair_index = 0;
  SignalPoint point;
};

struct StrictCausalityReport {
  std::size_t pairs_checked = 0;
  std::vector<StrictCausalityViolation> violations;
  bool clean() const { return violations.empty(); }
};

// For each pair and each point tau defined in either image: when the two
// signals agree at every time strictly before tau, the images must agree at
// tau.
StrictCausalityReport strictly_causal_check(const SignalMap& f,
                                            const std::vector<std::pair<Signal, Signal>>& pairs);

// ---------------------------------------------------------------------------

struct CausalRun {
  FixpointStatus status = FixpointStatus::kFuelExhausted;
  std::size_t steps = 0;
  std::map<Label, EventHistory> histories;
};

// Joint min-extension over all output ports: each step settles the earliest
// time at which some port still changes. Nodes must be systems over an
// event domain. Throws FuelExhausted.
CausalRun run_causal_network(const Network& net,
                             const std::map<Label, EventHistory>& external_inputs,
                             Fuel fuel = {});

}  // namespace sysalg
