#include "sysalg/causal.hpp"

#include <algorithm>
#include <limits>

#include "sysalg/error.hpp"

namespace sysalg {

namespace {

Rational floor_of(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() < 0 && q * r.denominator() != r.numerator()) --q;
  return Rational(q);
}

std::string universe_name(const std::vector<TimedValue>& u) {
  std::string out = "[";
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (k) out += ",";
    out += "(" + std::to_string(u[k].value) + "," + to_string(u[k].time) + ")";
  }
  return out + "]";
}

std::string event_domain_name(const std::optional<Rational>& horizon,
                              const std::optional<std::vector<TimedValue>>& universe) {
  std::string out = "events";
  if (horizon) out += "<" + to_string(*horizon);
  if (universe) out += universe_name(*universe);
  return out;
}

std::optional<std::vector<TimedValue>> sorted_universe(
    std::optional<std::vector<TimedValue>> u) {
  if (u) {
    std::sort(u->begin(), u->end());
    u->erase(std::unique(u->begin(), u->end()), u->end());
  }
  return u;
}

// Universe events grouped by time, in time order.
std::vector<std::vector<TimedValue>> by_time(const std::vector<TimedValue>& u) {
  std::vector<std::vector<TimedValue>> out;
  for (const auto& e : u) {
    if (out.empty() || out.back().front().time != e.time) out.emplace_back();
    out.back().push_back(e);
  }
  return out;
}

}  // namespace

EventDomain::EventDomain(std::optional<Rational> horizon,
                         std::optional<std::vector<TimedValue>> universe)
    : Domain(DomainId(event_domain_name(horizon, sorted_universe(universe)))),
      horizon_(std::move(horizon)),
      universe_(sorted_universe(std::move(universe))) {
  if (horizon_ && universe_) {
    for (const auto& e : *universe_) {
      if (!(e.time < *horizon_)) {
        fail(ErrorCode::kInvalidArgument, "universe event at " + to_string(e.time) +
                                              " is not below the horizon");
      }
    }
  }
}

Relation EventDomain::compare_members(const Value& a, const Value& b) const {
  const auto& x = a.as_events();
  const auto& y = b.as_events();
  if (x == y) return Relation::kEqual;
  if (x.is_initial_segment_of(y)) return Relation::kBelow;
  if (y.is_initial_segment_of(x)) return Relation::kAbove;
  return Relation::kIncomparable;
}

bool EventDomain::contains(const Value& v) const {
  const auto* h = std::get_if<EventHistory>(&v.data());
  if (v.domain() != id() || !h) return false;
  for (const auto& e : h->events()) {
    if (horizon_ && !(e.time < *horizon_)) return false;
    if (universe_ && !std::binary_search(universe_->begin(), universe_->end(), e)) {
      return false;
    }
  }
  return true;
}

std::optional<std::size_t> EventDomain::size() const {
  if (!universe_) return std::nullopt;
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t total = 1;
  for (const auto& group : by_time(*universe_)) {
    if (total > kMax / (group.size() + 1)) return kMax;
    total *= group.size() + 1;
  }
  return total;
}

std::vector<Value> EventDomain::members() const {
  if (!universe_) return {};
  std::vector<std::vector<TimedValue>> sets{{}};
  for (const auto& group : by_time(*universe_)) {
    std::vector<std::vector<TimedValue>> next;
    for (const auto& s : sets) {
      next.push_back(s);
      for (const auto& e : group) {
        auto t = s;
        t.push_back(e);
        next.push_back(std::move(t));
      }
    }
    sets = std::move(next);
  }
  std::vector<Value> out;
  out.reserve(sets.size());
  for (auto& s : sets) out.push_back(events(std::move(s)));
  return out;
}

Value EventDomain::events(std::vector<TimedValue> evs) const {
  return Value(id(), EventHistory(std::move(evs)));
}

EventDomainPtr event_order(std::optional<Rational> horizon,
                           std::optional<std::vector<TimedValue>> universe) {
  return std::make_shared<const EventDomain>(std::move(horizon), std::move(universe));
}

std::vector<TimedValue> event_grid(const std::vector<Token>& values,
                                   const std::vector<Rational>& times) {
  std::vector<TimedValue> out;
  for (const auto& t : times) {
    for (Token v : values) out.push_back({v, t});
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<TuplePair> all_pairs(const std::vector<Tuple>& inputs) {
  std::vector<TuplePair> out;
  for (std::size_t a = 0; a < inputs.size(); ++a) {
    for (std::size_t b = a + 1; b < inputs.size(); ++b) {
      out.emplace_back(inputs[a], inputs[b]);
    }
  }
  return out;
}

CausalityReport check_causal(const FunctionalSystem& s,
                             const std::vector<TuplePair>& pairs) {
  CausalityReport report;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [x, x2] = pairs[k];
    std::optional<Rational> earliest;
    for (const auto& i : s.signature().inputs) {
      for (const auto& e : symmetric_difference(x.at(i).as_events(), x2.at(i).as_events())) {
        if (!earliest || e.time < *earliest) earliest = e.time;
      }
    }
    const Tuple y = s(x);
    const Tuple y2 = s(x2);
    ++report.pairs_checked;
    for (const auto& o : s.signature().outputs) {
      for (const auto& e : symmetric_difference(y.at(o).as_events(), y2.at(o).as_events())) {
        if (!earliest || !(*earliest < e.time)) {
          report.violations.push_back({k, o, e});
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace causal_blocks {

namespace {

using PortHistories = std::map<std::string, EventHistory>;
using PortEvents = std::map<std::string, std::vector<TimedValue>>;

FunctionalSystem make_block(const std::string& kind, const std::string& name,
                            const std::vector<std::string>& ins,
                            const std::vector<std::string>& outs,
                            const EventDomainPtr& d,
                            std::function<PortEvents(const PortHistories&)> body) {
  Signature sig;
  for (const auto& p : ins) sig.inputs.insert(Label(name + "." + p));
  for (const auto& p : outs) sig.outputs.insert(Label(name + "." + p));
  return FunctionalSystem(
      kind, std::move(sig), d, [name, ins, outs, d, body](const Tuple& x) {
        PortHistories in;
        for (const auto& p : ins) in[p] = x.at(Label(name + "." + p)).as_events();
        PortEvents produced = body(in);
        Tuple y;
        for (const auto& p : outs) {
          std::vector<TimedValue> kept;
          for (const auto& e : produced[p]) {
            if (!d->horizon() || e.time < *d->horizon()) kept.push_back(e);
          }
          y.emplace(Label(name + "." + p), d->events(std::move(kept)));
        }
        return y;
      });
}

void require_positive(const Rational& r, const std::string& what) {
  if (!(r > 0)) fail(ErrorCode::kInvalidArgument, what + " must be positive");
}

const Rational& require_horizon(const EventDomainPtr& d, const std::string& kind) {
  if (!d->horizon()) {
    fail(ErrorCode::kInvalidArgument, kind + " needs a domain with a horizon");
  }
  return *d->horizon();
}

}  // namespace

FunctionalSystem delay(const std::string& name, Rational delta, const EventDomainPtr& d) {
  require_positive(delta, "delay");
  return make_block("delay", name, {"in"}, {"out"}, d, [delta](const PortHistories& in) {
    PortEvents out;
    for (const auto& e : in.at("in").events()) out["out"].push_back({e.value, e.time + delta});
    return out;
  });
}

FunctionalSystem clock(const std::string& name, Rational period, Rational phase,
                       const EventDomainPtr& d) {
  require_positive(period, "clock period");
  const Rational horizon = require_horizon(d, "clock");
  return make_block("clock", name, {}, {"out"}, d,
                    [period, phase, horizon](const PortHistories&) {
                      PortEvents out;
                      for (Rational t = phase; t < horizon; t += period) {
                        out["out"].push_back({1, t});
                      }
                      return out;
                    });
}

FunctionalSystem adder(const std::string& name, Rational delta, const EventDomainPtr& d) {
  require_positive(delta, "adder delay");
  return make_block("adder", name, {"a", "b"}, {"out"}, d,
                    [delta](const PortHistories& in) {
                      const auto a = in.at("a").events();
                      const auto b = in.at("b").events();
                      PortEvents out;
                      Token la = 0, lb = 0;
                      std::size_t ia = 0, ib = 0;
                      while (ia < a.size() || ib < b.size()) {
                        Rational t = ia < a.size() ? a[ia].time : b[ib].time;
                        if (ib < b.size() && b[ib].time < t) t = b[ib].time;
                        if (ia < a.size() && a[ia].time == t) la = a[ia++].value;
                        if (ib < b.size() && b[ib].time == t) lb = b[ib++].value;
                        out["out"].push_back({la + lb, t + delta});
                      }
                      return out;
                    });
}

FunctionalSystem tick(const std::string& name, Rational delta, const EventDomainPtr& d) {
  require_positive(delta, "tick delay");
  return make_block("tick", name, {"in"}, {"out"}, d, [delta](const PortHistories& in) {
    PortEvents out;
    out["out"].push_back({1, Rational(0)});
    for (const auto& e : in.at("in").events()) {
      if (e.time + delta > 0) out["out"].push_back({e.value, e.time + delta});
    }
    return out;
  });
}

FunctionalSystem zeno(const std::string& name, const EventDomainPtr& d) {
  const Rational horizon = require_horizon(d, "zeno");
  const EventEndo f = zeno_function(horizon);
  return make_block("zeno", name, {"in"}, {"out"}, d, [f](const PortHistories& in) {
    PortEvents out;
    const EventHistory h = f(in.at("in"));
    out["out"].assign(h.events().begin(), h.events().end());
    return out;
  });
}

FunctionalSystem identity(const std::string& name, const EventDomainPtr& d) {
  return make_block("identity", name, {"in"}, {"out"}, d, [](const PortHistories& in) {
    PortEvents out;
    out["out"].assign(in.at("in").events().begin(), in.at("in").events().end());
    return out;
  });
}

FunctionalSystem constant(const std::string& name, std::vector<TimedValue> events,
                          const EventDomainPtr& d) {
  EventHistory fixed(std::move(events));
  return make_block("constant", name, {"in"}, {"out"}, d, [fixed](const PortHistories&) {
    PortEvents out;
    out["out"].assign(fixed.events().begin(), fixed.events().end());
    return out;
  });
}

FunctionalSystem by_name(const std::string& kind, const std::string& name,
                         const std::vector<Rational>& args, const EventDomainPtr& d) {
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      fail(ErrorCode::kInvalidArgument,
           kind + " takes " + std::to_string(lo) +
               (lo == hi ? "" : ".." + std::to_string(hi)) + " arguments, got " +
               std::to_string(args.size()));
    }
  };
  auto arg = [&](std::size_t k, Rational fallback) {
    return k < args.size() ? args[k] : fallback;
  };
  if (kind == "delay") return arity(0, 1), delay(name, arg(0, 1), d);
  if (kind == "clock") return arity(0, 2), clock(name, arg(0, 1), arg(1, 0), d);
  if (kind == "adder") return arity(0, 1), adder(name, arg(0, 1), d);
  if (kind == "tick") return arity(0, 1), tick(name, arg(0, 1), d);
  if (kind == "zeno") return arity(0, 0), zeno(name, d);
  if (kind == "identity") return arity(0, 0), identity(name, d);
  fail(ErrorCode::kInvalidArgument, "unknown causal block kind " + kind);
}

std::vector<std::string> names() {
  return {"adder", "clock", "delay", "identity", "tick", "zeno"};
}

}  // namespace causal_blocks

EventEndo zeno_function(Rational horizon) {
  return [horizon](const EventHistory& x) {
    std::vector<TimedValue> out;
    for (Rational n = 0; n < horizon; n += 1) out.push_back({0, n});
    for (const auto& e : x.events()) {
      const Rational t = (e.time + floor_of(e.time + 1)) / 2;
      if (t < horizon) out.push_back({0, t});
    }
    return EventHistory(std::move(out));
  };
}

EventHistory reciprocal_outputs(std::size_t probe) {
  std::vector<TimedValue> chain;
  for (std::size_t n = 1; n <= probe; ++n) {
    TimedValue e{1, Rational(1, static_cast<std::int64_t>(n))};
    if (!chain.empty() && !precedes(e, chain.back())) {
      fail(ErrorCode::kInvalidArgument, "reciprocal chain is not descending");
    }
    chain.push_back(e);
  }
  fail(ErrorCode::kNotWellOrdered,
       "outputs at 1, 1/2, ..., 1/" + std::to_string(probe) +
           " keep descending; the full set has no least event");
}

FunctionalSystem random_causal_system(const std::string& name,
                                      const std::vector<Label>& inputs,
                                      const std::vector<Label>& outputs,
                                      const EventDomainPtr& d, std::mt19937_64& rng,
                                      bool peek) {
  if (!d->universe()) {
    fail(ErrorCode::kInvalidArgument, "random systems need an enumerable event domain");
  }
  std::vector<Rational> times;
  std::vector<Token> values;
  for (const auto& e : *d->universe()) {
    if (times.empty() || times.back() != e.time) times.push_back(e.time);
    if (std::find(values.begin(), values.end(), e.value) == values.end()) {
      values.push_back(e.value);
    }
  }
  Signature sig;
  sig.inputs.insert(inputs.begin(), inputs.end());
  sig.outputs.insert(outputs.begin(), outputs.end());
  const auto members = d->members();
  const auto rows = all_tuples(sig.inputs, members);

  // Visible part of x when deciding the output at time t.
  auto visible = [peek](const Tuple& x, const Rational& t) {
    std::string key;
    for (const auto& [l, v] : x) {
      std::vector<TimedValue> kept;
      for (const auto& e : v.as_events().events()) {
        if (e.time < t || (peek && e.time == t)) kept.push_back(e);
      }
      key += l.name() + "=" + to_string(EventHistory(std::move(kept))) + ";";
    }
    return key;
  };

  // choice[(output, time, visible input)] = index into values, or -1 for none.
  std::map<std::tuple<Label, Rational, std::string>, int> choice;
  std::uniform_int_distribution<int> pick(-1, static_cast<int>(values.size()) - 1);
  TruthTable table;
  for (const auto& x : rows) {
    Tuple y;
    for (const auto& o : sig.outputs) {
      std::vector<TimedValue> evs;
      for (const auto& t : times) {
        auto key = std::make_tuple(o, t, visible(x, t));
        auto it = choice.find(key);
        if (it == choice.end()) it = choice.emplace(key, pick(rng)).first;
        if (it->second >= 0) evs.push_back({values[static_cast<std::size_t>(it->second)], t});
      }
      y.emplace(o, d->events(std::move(evs)));
    }
    table.emplace(x, std::move(y));
  }
  return FunctionalSystem::from_table(name, std::move(sig), d, std::move(table));
}

FunctionalSystem cconnect(const Label& i, const Label& o, const FunctionalSystem& s,
                          Fuel fuel) {
  return fconnect(i, o, s, Chooser::unique_causal(fuel));
}

InputSampler event_input_sampler(const EventDomainPtr& d, std::size_t max_tuples) {
  std::vector<Value> pool;
  if (d->universe()) {
    pool = d->members();
  } else {
    const Rational h = d->horizon().value_or(Rational(4));
    auto add = [&](std::vector<TimedValue> evs) {
      std::vector<TimedValue> kept;
      for (const auto& e : evs) {
        if (e.time < h) kept.push_back(e);
      }
      Value v = d->events(std::move(kept));
      if (std::find(pool.begin(), pool.end(), v) == pool.end()) pool.push_back(std::move(v));
    };
    add({});
    for (Token v : {0, 1}) {
      for (const Rational& t : {Rational(0), Rational(1, 2), Rational(1), Rational(2)}) {
        add({{v, t}});
      }
    }
    add({{0, Rational(0)}, {1, Rational(1)}});
    add({{1, Rational(1, 2)}, {0, Rational(2)}});
    add({{1, Rational(0)}, {1, Rational(1)}, {1, Rational(3)}});
  }
  return pool_sampler(std::move(pool), d->events({}), max_tuples);
}

SystemAlgebra<FunctionalSystem> causal_algebra(const EventDomainPtr& d, Fuel fuel) {
  return functional_algebra("causal", Chooser::unique_causal(fuel),
                            GammaPolicy::all_input_output_pairs(),
                            event_input_sampler(d));
}

// ---------------------------------------------------------------------------

Signal to_signal(const Tuple& x) {
  Signal out;
  for (const auto& [l, v] : x) {
    for (const auto& e : v.as_events().events()) out.emplace(SignalPoint{l, e.time}, e.value);
  }
  return out;
}

Signal to_signal(const std::map<Label, std::vector<TimedValue>>& raw) {
  Signal out;
  for (const auto& [l, evs] : raw) {
    for (const auto& e : evs) {
      auto [it, fresh] = out.emplace(SignalPoint{l, e.time}, e.value);
      if (!fresh && it->second != e.value) {
        fail(ErrorCode::kNotAFunction, "interface " + l.name() + " has two values at time " +
                                           to_string(e.time));
      }
    }
  }
  return out;
}

Tuple from_signal(const Signal& sigma, const LabelSet& labels, const EventDomain& d) {
  std::map<Label, std::vector<TimedValue>> evs;
  for (const auto& l : labels) evs[l];
  for (const auto& [point, v] : sigma) {
    auto it = evs.find(point.first);
    if (it != evs.end()) it->second.push_back({v, point.second});
  }
  Tuple out;
  for (auto& [l, e] : evs) out.emplace(l, d.events(std::move(e)));
  return out;
}

SignalMap translate(const FunctionalSystem& s) {
  auto d = std::dynamic_pointer_cast<const EventDomain>(s.domain());
  if (!d) fail(ErrorCode::kDomainMismatch, s.name() + " is not over an event domain");
  return [s, d](const Signal& sigma) {
    return to_signal(s(from_signal(sigma, s.signature().inputs, *d)));
  };
}

namespace {

bool agree_before(const Signal& a, const Signal& b, const Rational& t) {
  auto below = [&t](const Signal& s) {
    Signal out;
    for (const auto& [p, v] : s) {
      if (p.second < t) out.emplace(p, v);
    }
    return out;
  };
  return below(a) == below(b);
}

}  // namespace

StrictCausalityReport strictly_causal_check(
    const SignalMap& f, const std::vector<std::pair<Signal, Signal>>& pairs) {
  StrictCausalityReport report;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [a, b] = pairs[k];
    const Signal fa = f(a);
    const Signal fb = f(b);
    ++report.pairs_checked;
    std::set<SignalPoint> points;
    for (const auto& kv : fa) points.insert(kv.first);
    for (const auto& kv : fb) points.insert(kv.first);
    for (const auto& p : points) {
      auto ia = fa.find(p);
      auto ib = fb.find(p);
      const bool same = (ia == fa.end()) == (ib == fb.end()) &&
                        (ia == fa.end() || ia->second == ib->second);
      if (!same && agree_before(a, b, p.second)) report.violations.push_back({k, p});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

CausalRun run_causal_network(const Network& net,
                             const std::map<Label, EventHistory>& external_inputs,
                             Fuel fuel) {
  net.validate();
  auto d = std::dynamic_pointer_cast<const EventDomain>(net.domain);
  if (!d) fail(ErrorCode::kValidationError, "network is not over an event domain");
  for (const auto& [name, node] : net.nodes) {
    if (!std::holds_alternative<FunctionalSystem>(node)) {
      fail(ErrorCode::kValidationError, "block " + name + " is not a causal block");
    }
  }
  const LabelSet free_in = net.free_inputs();
  std::map<Label, EventHistory> ext;
  for (const auto& l : free_in) ext[l];
  for (const auto& [l, h] : external_inputs) {
    if (!free_in.count(l)) {
      fail(ErrorCode::kValidationError, "input " + l.name() + " is not a free input port");
    }
    ext[l] = h;
  }
  std::map<Label, Label> driver;
  for (const auto& w : net.wires) driver.emplace(w.to.label(), w.from.label());

  std::map<Label, EventHistory> state;
  for (const auto& [name, node] : net.nodes) {
    for (const auto& p : net.output_ports(name)) state[p.label()];
  }

  CausalRun run;
  while (run.steps < fuel.max_steps) {
    std::map<Label, EventHistory> image;
    for (const auto& [name, node] : net.nodes) {
      const auto& s = std::get<FunctionalSystem>(node);
      Tuple x;
      for (const auto& p : net.input_ports(name)) {
        const Label l = p.label();
        auto it = driver.find(l);
        x.emplace(l, d->history(it == driver.end() ? ext.at(l) : state.at(it->second)));
      }
      for (const auto& [l, v] : s(x)) image[l] = v.as_events();
    }
    ++run.steps;
    std::optional<Rational> earliest;
    for (const auto& [l, h] : state) {
      for (const auto& e : symmetric_difference(h, image.at(l))) {
        if (!earliest || e.time < *earliest) earliest = e.time;
      }
    }
    if (!earliest) {
      run.status = FixpointStatus::kConverged;
      break;
    }
    // Everything strictly before the earliest change already agrees.
    for (auto& [l, h] : state) {
      std::vector<TimedValue> settled;
      for (const auto& e : image.at(l).events()) {
        if (!(*earliest < e.time)) settled.push_back(e);
      }
      h = EventHistory(std::move(settled));
    }
  }
  if (run.status != FixpointStatus::kConverged) {
    fail(ErrorCode::kFuelExhausted, "causal network did not settle within " +
                                        std::to_string(fuel.max_steps) + " steps");
  }
  run.histories = std::move(state);
  run.histories.insert(ext.begin(), ext.end());
  return run;
}

}  // namespace sysalg
