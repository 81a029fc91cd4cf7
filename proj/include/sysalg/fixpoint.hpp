#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sysalg/error.hpp"
#include "sysalg/order.hpp"
#include "sysalg/value.hpp"

namespace sysalg {

// Finite stand-in for the ordinal bound of a transfinite iteration.
struct Fuel {
  std::size_t max_steps = 10'000;
  std::size_t max_limit_jumps = 0;
};

enum class FixpointStatus { kConverged, kFuelExhausted };

template <class T>
struct FixpointOutcome {
  FixpointStatus status = FixpointStatus::kFuelExhausted;
  // The fixed point when converged, otherwise the last iterate.
  T value{};
  // Applications of the iterated function.
  std::size_t steps = 0;
  std::size_t limit_jumps = 0;
  // x_0, x_1, ... as computed; filled only when requested.
  std::vector<T> iterates;

  bool converged() const { return status == FixpointStatus::kConverged; }
};

enum class Record { kNo, kYes };

// x_0 = start, x_{n+1} = f(x_n) until two consecutive iterates are equal or
// max_steps applications have been made.
template <class T, class F>
FixpointOutcome<T> iterate_from(F&& f, T start, std::size_t max_steps,
                                Record record = Record::kNo) {
  if (max_steps == 0) {
    fail(ErrorCode::kInvalidArgument, "fuel must allow at least one step");
  }
  FixpointOutcome<T> out;
  if (record == Record::kYes) out.iterates.push_back(start);
  T current = std::move(start);
  while (out.steps < max_steps) {
    T next = f(current);
    ++out.steps;
    const bool stable = next == current;
    if (record == Record::kYes && !stable) out.iterates.push_back(next);
    current = std::move(next);
    if (stable) {
      out.status = FixpointStatus::kConverged;
      break;
    }
  }
  out.value = std::move(current);
  return out;
}

// Kleene iteration from the least element. For an omega-continuous f on an
// omega-CPO a converged result is the least fixed point.
FixpointOutcome<Value> kleene_lfp(const Endo& f, const Domain& order,
                                  Fuel fuel = {}, Record record = Record::kNo);

// Same iteration; when a round runs out of fuel and limit jumps remain, the
// iterate jumps to the supremum of the omega-chain computed so far
// (Domain::omega_limit) and iteration resumes. The step budget is split
// evenly over the 1 + max_limit_jumps rounds.
FixpointOutcome<Value> monotone_lfp(const Endo& f, const Domain& order,
                                    Fuel fuel = {}, Record record = Record::kNo);

using EventEndo = std::function<EventHistory(const EventHistory&)>;

// Min-extension iteration for causal endofunctions on well-ordered event
// sets: X_0 = {}, X_{n+1} = X_n + min(f(X_n) \ X_n), stopping when nothing
// new appears. Each step is one extension check. Throws NotWellOrdered when
// the new events have no unique least element.
FixpointOutcome<EventHistory> causal_unique_fp(const EventEndo& f,
                                               Fuel fuel = {},
                                               Record record = Record::kNo);

// Exactly the x in the enumeration with f(x) == x.
std::vector<Value> brute_force_fixed_points(
    const Endo& f, std::span<const Value> enumeration,
    std::size_t bound = kDefaultEnumerationBound);

std::string to_string(FixpointStatus status);

}  // namespace sysalg
