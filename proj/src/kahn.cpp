#include "sysalg/kahn.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <random>

#include "sysalg/error.hpp"

namespace sysalg {

namespace {

std::string domain_name(const std::vector<Token>& alphabet,
                        const std::optional<std::size_t>& max_len) {
  std::string out = "seq{";
  for (std::size_t k = 0; k < alphabet.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(alphabet[k]);
  }
  out += "}/";
  out += max_len ? std::to_string(*max_len) : "*";
  return out;
}

std::vector<Token> normalized(std::vector<Token> alphabet) {
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  return alphabet;
}

}  // namespace

SeqDomain::SeqDomain(std::vector<Token> alphabet,
                     std::optional<std::size_t> max_len)
    : Domain(DomainId(domain_name(normalized(alphabet), max_len))),
      alphabet_(normalized(std::move(alphabet))),
      max_len_(max_len) {
  if (alphabet_.empty()) {
    fail(ErrorCode::kInvalidArgument, "sequence domain needs a nonempty alphabet");
  }
}

Relation SeqDomain::compare_members(const Value& a, const Value& b) const {
  const auto& x = a.as_seq();
  const auto& y = b.as_seq();
  if (x == y) return Relation::kEqual;
  if (x.is_prefix_of(y)) return Relation::kBelow;
  if (y.is_prefix_of(x)) return Relation::kAbove;
  return Relation::kIncomparable;
}

bool SeqDomain::contains(const Value& v) const {
  const auto* s = std::get_if<TokenSeq>(&v.data());
  if (v.domain() != id() || !s) return false;
  if (max_len_ && s->size() > *max_len_) return false;
  return std::all_of(s->tokens.begin(), s->tokens.end(), [&](Token t) {
    return std::binary_search(alphabet_.begin(), alphabet_.end(), t);
  });
}

std::optional<std::size_t> SeqDomain::size() const {
  if (!max_len_) return std::nullopt;
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t total = 0;
  std::size_t layer = 1;
  for (std::size_t k = 0; k <= *max_len_; ++k) {
    if (total > kMax - layer) return kMax;
    total += layer;
    if (k < *max_len_) {
      if (layer > kMax / alphabet_.size()) return kMax;
      layer *= alphabet_.size();
    }
  }
  return total;
}

std::vector<Value> SeqDomain::members() const {
  if (!max_len_) return {};
  return members_up_to(*max_len_);
}

std::vector<Value> SeqDomain::members_up_to(std::size_t n) const {
  if (max_len_) n = std::min(n, *max_len_);
  std::vector<Value> out{seq({})};
  std::vector<std::vector<Token>> layer{{}};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::vector<Token>> next;
    for (const auto& prefix : layer) {
      for (Token t : alphabet_) {
        auto s = prefix;
        s.push_back(t);
        out.push_back(seq(s));
        next.push_back(std::move(s));
      }
    }
    layer = std::move(next);
  }
  return out;
}

std::string SeqDomain::describe() const { return id().name(); }

Value SeqDomain::seq(std::vector<Token> tokens) const {
  return Value(id(), TokenSeq{std::move(tokens)});
}

SeqDomainPtr make_seq_domain(std::vector<Token> alphabet,
                             std::optional<std::size_t> max_len) {
  return std::make_shared<const SeqDomain>(std::move(alphabet), max_len);
}

// ---------------------------------------------------------------------------

BlockRun run_block(const ProcessBlock& block,
                   const std::map<std::string, TokenSeq>& inputs,
                   std::optional<std::size_t> max_len,
                   std::size_t action_budget) {
  auto has = [](const std::vector<std::string>& ports, const std::string& p) {
    return std::find(ports.begin(), ports.end(), p) != ports.end();
  };
  BlockRun run;
  for (const auto& p : block.outputs) run.outputs[p];
  std::map<std::string, std::size_t> cursor;
  Process proc = block.start();
  while (true) {
    if (++run.actions > action_budget) {
      fail(ErrorCode::kStepDivergence,
           block.kind + " block exceeded " + std::to_string(action_budget) +
               " actions");
    }
    const Action a = proc.next();
    switch (a.kind) {
      case Action::Kind::kHalt:
        return run;
      case Action::Kind::kRead: {
        if (!has(block.inputs, a.port)) {
          fail(ErrorCode::kInvalidArgument,
               block.kind + " block read unknown port " + a.port);
        }
        auto it = inputs.find(a.port);
        std::size_t& c = cursor[a.port];
        if (it == inputs.end() || c >= it->second.size()) return run;
        proc.deliver(it->second.tokens[c++]);
        break;
      }
      case Action::Kind::kEmit: {
        if (!has(block.outputs, a.port)) {
          fail(ErrorCode::kInvalidArgument,
               block.kind + " block wrote unknown port " + a.port);
        }
        auto& out = run.outputs[a.port];
        if (max_len && out.size() >= *max_len) {
          run.truncated.insert(a.port);
          if (run.truncated.size() == block.outputs.size()) return run;
        } else {
          out.tokens.push_back(a.token);
        }
        break;
      }
    }
  }
}

FunctionalSystem lift_process(const ProcessBlock& block,
                              const std::map<std::string, Label>& binding,
                              const SeqDomainPtr& domain) {
  Signature sig;
  for (const auto& p : block.inputs) {
    auto it = binding.find(p);
    if (it == binding.end()) {
      fail(ErrorCode::kInvalidArgument, "port " + p + " of " + block.kind + " is unbound");
    }
    sig.inputs.insert(it->second);
  }
  for (const auto& p : block.outputs) {
    auto it = binding.find(p);
    if (it == binding.end()) {
      fail(ErrorCode::kInvalidArgument, "port " + p + " of " + block.kind + " is unbound");
    }
    sig.outputs.insert(it->second);
  }
  if (sig.inputs.size() + sig.outputs.size() !=
      block.inputs.size() + block.outputs.size()) {
    fail(ErrorCode::kInvalidArgument, "binding of " + block.kind + " reuses a label");
  }
  return FunctionalSystem(
      block.kind, std::move(sig), domain,
      [block, binding, domain](const Tuple& x) {
        std::map<std::string, TokenSeq> in;
        for (const auto& p : block.inputs) in[p] = x.at(binding.at(p)).as_seq();
        const BlockRun run = run_block(block, in, domain->max_len());
        Tuple y;
        for (const auto& [p, s] : run.outputs) {
          y.emplace(binding.at(p), Value(domain->id(), s));
        }
        return y;
      });
}

FunctionalSystem lift_process(const ProcessBlock& block,
                              const std::string& prefix,
                              const SeqDomainPtr& domain) {
  std::map<std::string, Label> binding;
  for (const auto& p : block.inputs) binding.emplace(p, Label(prefix + "." + p));
  for (const auto& p : block.outputs) binding.emplace(p, Label(prefix + "." + p));
  FunctionalSystem s = lift_process(block, binding, domain);
  return s;
}

// ---------------------------------------------------------------------------

namespace blocks {

namespace {

using Emission = std::pair<std::string, Token>;

// Emits seed, then repeatedly reads one token from each input in order and
// emits step(tokens). Halts after the seed when there are no inputs.
ProcessBlock cyclic(std::string kind, std::vector<std::string> inputs,
                    std::vector<std::string> outputs, std::vector<Emission> seed,
                    std::function<std::vector<Emission>(const std::vector<Token>&)> step) {
  struct State {
    std::deque<Emission> pending;
    std::vector<Token> read;
  };
  ProcessBlock b{std::move(kind), inputs, std::move(outputs), {}};
  b.start = [inputs, seed, step] {
    auto st = std::make_shared<State>();
    st->pending.assign(seed.begin(), seed.end());
    Process p;
    p.next = [st, inputs, step]() -> Action {
      while (true) {
        if (!st->pending.empty()) {
          auto [port, tok] = st->pending.front();
          st->pending.pop_front();
          return Action::emit(port, tok);
        }
        if (inputs.empty()) return Action::halt();
        if (st->read.size() < inputs.size()) return Action::read(inputs[st->read.size()]);
        for (auto& e : step(st->read)) st->pending.push_back(std::move(e));
        st->read.clear();
      }
    };
    p.deliver = [st](Token t) { st->read.push_back(t); };
    return p;
  };
  return b;
}

Token reduce(Token v, Token m) {
  if (m <= 0) return v;
  return ((v % m) + m) % m;
}

}  // namespace

ProcessBlock copy() {
  return cyclic("copy", {"in"}, {"out"}, {},
                [](const auto& t) { return std::vector<Emission>{{"out", t[0]}}; });
}

ProcessBlock dup() {
  return cyclic("dup", {"in"}, {"out1", "out2"}, {}, [](const auto& t) {
    return std::vector<Emission>{{"out1", t[0]}, {"out2", t[0]}};
  });
}

ProcessBlock delay(std::vector<Token> seed) {
  std::vector<Emission> first;
  for (Token t : seed) first.emplace_back("out", t);
  return cyclic("delay", {"in"}, {"out"}, std::move(first),
                [](const auto& t) { return std::vector<Emission>{{"out", t[0]}}; });
}

ProcessBlock add(Token k, Token m) {
  return cyclic("add", {"in"}, {"out"}, {}, [k, m](const auto& t) {
    return std::vector<Emission>{{"out", reduce(t[0] + k, m)}};
  });
}

ProcessBlock adder(Token m) {
  return cyclic("adder", {"a", "b"}, {"out"}, {}, [m](const auto& t) {
    return std::vector<Emission>{{"out", reduce(t[0] + t[1], m)}};
  });
}

ProcessBlock source(std::vector<Token> tokens) {
  std::vector<Emission> seed;
  for (Token t : tokens) seed.emplace_back("out", t);
  return cyclic("source", {}, {"out"}, std::move(seed),
                [](const auto&) { return std::vector<Emission>{}; });
}

ProcessBlock filter(Token k) {
  return cyclic("filter", {"in"}, {"out"}, {}, [k](const auto& t) {
    if (t[0] == k) return std::vector<Emission>{};
    return std::vector<Emission>{{"out", t[0]}};
  });
}

ProcessBlock alternate() {
  ProcessBlock b{"alternate", {"a", "b"}, {"out"}, {}};
  b.start = [] {
    struct State {
      bool from_b = false;
      std::optional<Token> held;
    };
    auto st = std::make_shared<State>();
    Process p;
    p.next = [st]() -> Action {
      if (st->held) {
        const Token t = *st->held;
        st->held.reset();
        st->from_b = !st->from_b;
        return Action::emit("out", t);
      }
      return Action::read(st->from_b ? "b" : "a");
    };
    p.deliver = [st](Token t) { st->held = t; };
    return p;
  };
  return b;
}

ProcessBlock sink() {
  return cyclic("sink", {"in"}, {}, {},
                [](const auto&) { return std::vector<Emission>{}; });
}

ProcessBlock by_name(const std::string& kind, const std::vector<Token>& args) {
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      fail(ErrorCode::kInvalidArgument,
           kind + " takes " + std::to_string(lo) +
               (lo == hi ? "" : ".." + std::to_string(hi)) + " arguments, got " +
               std::to_string(args.size()));
    }
  };
  if (kind == "copy") return arity(0, 0), copy();
  if (kind == "dup") return arity(0, 0), dup();
  if (kind == "delay") return delay(args);
  if (kind == "add") return arity(1, 2), add(args[0], args.size() > 1 ? args[1] : 0);
  if (kind == "adder") return arity(0, 1), adder(args.empty() ? 0 : args[0]);
  if (kind == "source") return source(args);
  if (kind == "filter") return arity(1, 1), filter(args[0]);
  if (kind == "alternate") return arity(0, 0), alternate();
  if (kind == "sink") return arity(0, 0), sink();
  fail(ErrorCode::kInvalidArgument, "unknown block kind " + kind);
}

std::vector<std::string> names() {
  return {"adder", "add", "alternate", "copy", "delay", "dup", "filter", "sink", "source"};
}

}  // namespace blocks

// ---------------------------------------------------------------------------

namespace {

SeqDomainPtr seq_domain_of(const Network& net) {
  auto d = std::dynamic_pointer_cast<const SeqDomain>(net.domain);
  if (!d) fail(ErrorCode::kValidationError, "network is not over a sequence domain");
  return d;
}

}  // namespace

NetworkRun run_network(const Network& net,
                       const std::map<Label, TokenSeq>& external_inputs,
                       Fuel fuel, Record record) {
  net.validate();
  const SeqDomainPtr domain = seq_domain_of(net);
  const LabelSet free_in = net.free_inputs();
  std::map<Label, TokenSeq> ext;
  for (const auto& l : free_in) ext[l];
  for (const auto& [l, s] : external_inputs) {
    if (!free_in.count(l)) {
      fail(ErrorCode::kValidationError, "input " + l.name() + " is not a free input port");
    }
    const Value v(domain->id(), s);
    if (!domain->contains(v)) {
      fail(ErrorCode::kDomainMismatch,
           "input " + l.name() + " = " + to_string(s) + " lies outside " +
               domain->describe());
    }
    ext[l] = s;
  }
  std::map<Label, Label> driver;  // input port -> output port
  for (const auto& w : net.wires) driver.emplace(w.to.label(), w.from.label());

  std::map<Label, TokenSeq> state;
  for (const auto& [name, node] : net.nodes) {
    for (const auto& p : net.output_ports(name)) state[p.label()];
  }
  const auto& max_len = domain->max_len();

  NetworkRun out;
  if (record == Record::kYes) out.rounds.push_back(state);
  auto feed = [&](const PortRef& p) -> const TokenSeq& {
    const Label l = p.label();
    auto it = driver.find(l);
    return it == driver.end() ? ext.at(l) : state.at(it->second);
  };

  while (out.steps < fuel.max_steps) {
    std::map<Label, TokenSeq> next = state;
    std::set<Label> truncated;
    for (const auto& [name, node] : net.nodes) {
      if (auto* b = std::get_if<ProcessBlock>(&node)) {
        std::map<std::string, TokenSeq> in;
        for (const auto& p : net.input_ports(name)) in[p.port] = feed(p);
        const BlockRun run = run_block(*b, in, max_len);
        for (const auto& [port, s] : run.outputs) {
          next[PortRef{name, port}.label()] = s;
        }
        for (const auto& port : run.truncated) {
          truncated.insert(PortRef{name, port}.label());
        }
      } else {
        const auto& s = std::get<FunctionalSystem>(node);
        Tuple x;
        for (const auto& p : net.input_ports(name)) {
          x.emplace(p.label(), Value(domain->id(), feed(p)));
        }
        for (const auto& [l, v] : s(x)) {
          next[l] = v.as_seq();
          if (max_len && v.as_seq().size() >= *max_len) truncated.insert(l);
        }
      }
    }
    ++out.steps;
    const bool stable = next == state;
    state = std::move(next);
    if (record == Record::kYes && !stable) out.rounds.push_back(state);
    out.truncated = std::move(truncated);
    if (stable) {
      out.status = FixpointStatus::kConverged;
      break;
    }
  }
  if (out.status != FixpointStatus::kConverged) {
    fail(ErrorCode::kFuelExhausted, "network did not settle within " +
                                        std::to_string(fuel.max_steps) + " rounds");
  }
  out.histories = std::move(state);
  out.histories.insert(ext.begin(), ext.end());
  return out;
}

FunctionalSystem network_system(const Network& net, const Chooser& chooser,
                                const std::vector<std::size_t>& wire_order) {
  net.validate();
  std::optional<FunctionalSystem> sys;
  for (const auto& [name, node] : net.nodes) {
    FunctionalSystem s =
        std::holds_alternative<ProcessBlock>(node)
            ? lift_process(std::get<ProcessBlock>(node), name, seq_domain_of(net))
            : std::get<FunctionalSystem>(node);
    sys = sys ? fpar(*sys, s) : s;
  }
  if (!sys) fail(ErrorCode::kValidationError, "network without blocks");
  std::vector<std::size_t> order = wire_order;
  if (order.empty()) {
    for (std::size_t k = 0; k < net.wires.size(); ++k) order.push_back(k);
  }
  for (std::size_t k : order) {
    const Wire& w = net.wires.at(k);
    sys = fconnect(w.to.label(), w.from.label(), *sys, chooser);
  }
  return *sys;
}

InputSampler seq_input_sampler(const SeqDomainPtr& domain, std::size_t max_tuples) {
  std::vector<Value> pool = domain->members_up_to(2);
  const std::size_t len = domain->max_len().value_or(4);
  const auto& alpha = domain->alphabet();
  for (std::size_t offset = 0; offset < alpha.size(); ++offset) {
    std::vector<Token> s;
    for (std::size_t k = 0; k < len; ++k) s.push_back(alpha[(offset + k) % alpha.size()]);
    Value v = domain->seq(std::move(s));
    if (std::find(pool.begin(), pool.end(), v) == pool.end()) pool.push_back(std::move(v));
  }
  return pool_sampler(std::move(pool), domain->seq({}), max_tuples);
}

SystemAlgebra<FunctionalSystem> kahn_algebra(const SeqDomainPtr& domain,
                                             Flavor flavor) {
  const Chooser chooser = flavor == Flavor::kContinuous
                              ? Chooser::least_kleene()
                              : Chooser::least_monotone(Fuel{});
  return functional_algebra(
      flavor == Flavor::kContinuous ? "kahn-continuous" : "kahn-monotone",
      chooser, GammaPolicy::all_input_output_pairs(), seq_input_sampler(domain));
}

}  // namespace sysalg
