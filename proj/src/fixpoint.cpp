#include "sysalg/fixpoint.hpp"

#include <algorithm>

namespace sysalg {

namespace {

Endo checked(const Endo& f, const Domain& order) {
  return [&f, &order](const Value& x) {
    Value y = f(x);
    check_member(order, y);
    return y;
  };
}

Value least_of(const Domain& order) {
  auto bottom = order.least();
  if (!bottom) {
    fail(ErrorCode::kInvalidArgument,
         "domain " + order.id().name() + " has no least element");
  }
  return *bottom;
}

}  // namespace

FixpointOutcome<Value> kleene_lfp(const Endo& f, const Domain& order, Fuel fuel,
                                  Record record) {
  return iterate_from(checked(f, order), least_of(order), fuel.max_steps, record);
}

FixpointOutcome<Value> monotone_lfp(const Endo& f, const Domain& order,
                                    Fuel fuel, Record record) {
  if (fuel.max_steps == 0) {
    fail(ErrorCode::kInvalidArgument, "fuel must allow at least one step");
  }
  const Endo g = checked(f, order);
  const std::size_t rounds = fuel.max_limit_jumps + 1;
  const std::size_t per_round = std::max<std::size_t>(1, fuel.max_steps / rounds);

  FixpointOutcome<Value> total;
  Value start = least_of(order);
  for (std::size_t round = 0; round < rounds; ++round) {
    const std::size_t budget =
        std::min(per_round, fuel.max_steps - total.steps);
    if (budget == 0) break;
    auto part = iterate_from(g, start, budget, Record::kYes);
    total.steps += part.steps;
    if (record == Record::kYes) {
      const std::size_t skip = total.iterates.empty() ? 0 : 1;
      total.iterates.insert(total.iterates.end(), part.iterates.begin() + skip,
                            part.iterates.end());
    }
    if (part.converged()) {
      total.status = FixpointStatus::kConverged;
      total.value = std::move(part.value);
      return total;
    }
    total.value = part.value;
    if (round + 1 == rounds) break;
    // The computed iterates form a strictly increasing chain for monotone f.
    start = order.omega_limit(part.iterates);
    check_member(order, start);
    ++total.limit_jumps;
    if (record == Record::kYes) total.iterates.push_back(start);
  }
  total.status = FixpointStatus::kFuelExhausted;
  return total;
}

FixpointOutcome<EventHistory> causal_unique_fp(const EventEndo& f, Fuel fuel,
                                               Record record) {
  if (fuel.max_steps == 0) {
    fail(ErrorCode::kInvalidArgument, "fuel must allow at least one step");
  }
  FixpointOutcome<EventHistory> out;
  EventHistory current;
  if (record == Record::kYes) out.iterates.push_back(current);
  while (out.steps < fuel.max_steps) {
    const EventHistory image = f(current);
    ++out.steps;
    const std::vector<TimedValue> fresh = image.minus(current);
    if (fresh.empty()) {
      out.status = FixpointStatus::kConverged;
      break;
    }
    // fresh is sorted by time; a tie at the front means no unique minimum.
    if (fresh.size() > 1 && fresh[0].time == fresh[1].time) {
      fail(ErrorCode::kNotWellOrdered,
           "new events at time " + to_string(fresh[0].time) +
               " have no least element");
    }
    current = current.with(fresh.front());
    if (record == Record::kYes) out.iterates.push_back(current);
  }
  out.value = std::move(current);
  return out;
}

std::vector<Value> brute_force_fixed_points(const Endo& f,
                                            std::span<const Value> enumeration,
                                            std::size_t bound) {
  if (enumeration.size() > bound) {
    fail(ErrorCode::kEnumerationTooLarge,
         "enumeration of " + std::to_string(enumeration.size()) +
             " elements exceeds the bound of " + std::to_string(bound));
  }
  std::vector<Value> out;
  for (const auto& x : enumeration) {
    if (f(x) == x) out.push_back(x);
  }
  return out;
}

std::string to_string(FixpointStatus status) {
  return status == FixpointStatus::kConverged ? "Converged" : "FuelExhausted";
}

}  // namespace sysalg
