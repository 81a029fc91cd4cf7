#include "sysalg/functional.hpp"

#include <cstdint>
#include <mutex>
#include <random>

#include "sysalg/error.hpp"

namespace sysalg {

LabelSet Signature::labels() const {
  LabelSet out = inputs;
  out.insert(outputs.begin(), outputs.end());
  return out;
}

namespace {

std::string join(const LabelSet& ls) {
  std::string out;
  for (const auto& l : ls) {
    if (!out.empty()) out += ",";
    out += l.name();
  }
  return out;
}

}  // namespace

std::string to_string(const Signature& sig) {
  return "(" + join(sig.inputs) + ") -> (" + join(sig.outputs) + ")";
}

struct FunctionalSystem::Impl {
  std::string name;
  Signature sig;
  DomainPtr domain;
  Transfer transfer;
  std::optional<TruthTable> table;
};

FunctionalSystem::FunctionalSystem(std::string name, Signature sig,
                                   DomainPtr domain, Transfer transfer) {
  for (const auto& l : sig.inputs) {
    if (sig.outputs.count(l)) {
      fail(ErrorCode::kInvalidArgument,
           "label " + l.name() + " is both input and output of " + name);
    }
  }
  if (!domain) fail(ErrorCode::kInvalidArgument, "system " + name + " has no domain");
  impl_ = std::make_shared<Impl>(
      Impl{std::move(name), std::move(sig), std::move(domain), std::move(transfer), {}});
}

FunctionalSystem FunctionalSystem::from_table(std::string name, Signature sig,
                                              DomainPtr domain,
                                              TruthTable table) {
  auto shared = std::make_shared<const TruthTable>(std::move(table));
  const std::string label = name;
  FunctionalSystem s(std::move(name), std::move(sig), std::move(domain),
                     [shared, label](const Tuple& x) {
                       auto it = shared->find(x);
                       if (it == shared->end()) {
                         fail(ErrorCode::kInvalidArgument,
                              "table " + label + " has no row for " + to_string(x));
                       }
                       return it->second;
                     });
  auto impl = std::make_shared<Impl>(*s.impl_);
  impl->table = *shared;
  s.impl_ = std::move(impl);
  return s;
}

namespace {

void check_tuple(const Tuple& t, const LabelSet& labels, const Domain& d,
                 const std::string& what, const std::string& who) {
  if (keys(t) != labels) {
    fail(ErrorCode::kSignatureMismatch, what + " " + to_string(t) + " of " + who +
                                            " does not match labels {" +
                                            join(labels) + "}");
  }
  for (const auto& [label, v] : t) {
    check_member(d, v);
    if (!d.contains(v)) {
      fail(ErrorCode::kDomainMismatch, what + " value " + to_string(v) + " at " +
                                           label.name() + " lies outside " +
                                           d.describe());
    }
  }
}

}  // namespace

Tuple FunctionalSystem::operator()(const Tuple& x) const {
  if (!impl_) fail(ErrorCode::kInvalidArgument, "empty system");
  check_tuple(x, impl_->sig.inputs, *impl_->domain, "input", impl_->name);
  Tuple y = impl_->transfer(x);
  check_tuple(y, impl_->sig.outputs, *impl_->domain, "output", impl_->name);
  return y;
}

namespace {
const std::string kEmptyName;
const Signature kEmptySignature;
const DomainPtr kNoDomain;
}  // namespace

const std::string& FunctionalSystem::name() const {
  return impl_ ? impl_->name : kEmptyName;
}
const Signature& FunctionalSystem::signature() const {
  return impl_ ? impl_->sig : kEmptySignature;
}
const DomainPtr& FunctionalSystem::domain() const {
  return impl_ ? impl_->domain : kNoDomain;
}
const TruthTable* FunctionalSystem::table() const {
  return impl_ && impl_->table ? &*impl_->table : nullptr;
}

FunctionalSystem fpar(const FunctionalSystem& a, const FunctionalSystem& b) {
  for (const auto& l : b.labels()) {
    if (a.labels().count(l)) {
      fail(ErrorCode::kLabelClash, "label " + l.name() + " in both " + a.name() +
                                       " and " + b.name());
    }
  }
  if (a.domain()->id() != b.domain()->id()) {
    fail(ErrorCode::kDomainMismatch, "systems over " + a.domain()->id().name() +
                                         " and " + b.domain()->id().name());
  }
  Signature sig;
  sig.inputs = a.signature().inputs;
  sig.inputs.insert(b.signature().inputs.begin(), b.signature().inputs.end());
  sig.outputs = a.signature().outputs;
  sig.outputs.insert(b.signature().outputs.begin(), b.signature().outputs.end());
  return FunctionalSystem("(" + a.name() + " | " + b.name() + ")", std::move(sig),
                          a.domain(), [a, b](const Tuple& x) {
                            Tuple y = a(restrict(x, a.signature().inputs));
                            Tuple yb = b(restrict(x, b.signature().inputs));
                            y.insert(yb.begin(), yb.end());
                            return y;
                          });
}

Endo feedback(const FunctionalSystem& s, const Label& i, const Label& o,
              const Tuple& x) {
  return [s, i, o, x](const Value& v) {
    Tuple full = x;
    full.insert_or_assign(i, v);
    return s(full).at(o);
  };
}

std::vector<Value> fixed_point_set(const FunctionalSystem& s, const Label& i,
                                   const Label& o, const Tuple& x,
                                   std::size_t bound) {
  if (!s.signature().inputs.count(i) || !s.signature().outputs.count(o)) {
    fail(ErrorCode::kNotConnectable,
         "need an input and an output, got " + i.name() + " and " + o.name());
  }
  const auto values = enumerate(*s.domain(), bound);
  return brute_force_fixed_points(feedback(s, i, o, x), values, bound);
}

Chooser Chooser::least_kleene(Fuel fuel) {
  return {Policy::kLeastViaKleene, fuel, {}};
}
Chooser Chooser::least_monotone(Fuel fuel) {
  return {Policy::kLeastViaMonotone, fuel, {}};
}
Chooser Chooser::unique_causal(Fuel fuel) {
  return {Policy::kUniqueViaCausal, fuel, {}};
}
Chooser Chooser::prefer_listed(std::vector<Value> order) {
  return {Policy::kPreferListed, {}, std::move(order)};
}
Chooser Chooser::brute_force_least() {
  return {Policy::kBruteForceLeast, {}, {}};
}

std::string Chooser::describe() const {
  switch (policy) {
    case Policy::kLeastViaKleene: return "least (Kleene)";
    case Policy::kLeastViaMonotone: return "least (monotone)";
    case Policy::kUniqueViaCausal: return "unique (causal)";
    case Policy::kPreferListed: {
      std::string out = "prefer [";
      for (std::size_t k = 0; k < preferred.size(); ++k) {
        if (k) out += ",";
        out += to_string(preferred[k]);
      }
      return out + "]";
    }
    case Policy::kBruteForceLeast: return "least (brute force)";
  }
  return "?";
}

namespace {

Value require_converged(const FixpointOutcome<Value>& r, const Label& i,
                        const Label& o, const Tuple& x) {
  if (!r.converged()) {
    fail(ErrorCode::kFuelExhausted,
         "no fixed point for " + i.name() + "," + o.name() + " at " + to_string(x) +
             " within " + std::to_string(r.steps) + " steps; last iterate " +
             to_string(r.value));
  }
  return r.value;
}

}  // namespace

Value Chooser::choose(const FunctionalSystem& s, const Label& i, const Label& o,
                      const Tuple& x) const {
  const Endo f = feedback(s, i, o, x);
  const Domain& d = *s.domain();
  switch (policy) {
    case Policy::kLeastViaKleene:
      return require_converged(kleene_lfp(f, d, fuel), i, o, x);
    case Policy::kLeastViaMonotone:
      return require_converged(monotone_lfp(f, d, fuel), i, o, x);
    case Policy::kUniqueViaCausal: {
      const DomainId id = d.id();
      auto r = causal_unique_fp(
          [&f, &id](const EventHistory& h) { return f(Value(id, h)).as_events(); },
          fuel);
      if (!r.converged()) {
        fail(ErrorCode::kFuelExhausted,
             "no fixed point for " + i.name() + "," + o.name() + " at " +
                 to_string(x) + " within " + std::to_string(r.steps) +
                 " steps; last iterate " + to_string(r.value));
      }
      return Value(id, r.value);
    }
    case Policy::kPreferListed:
      for (const auto& v : preferred) {
        if (f(v) == v) return v;
      }
      fail(ErrorCode::kNoFixedPoint, "no listed value is a fixed point for " +
                                         i.name() + "," + o.name() + " at " +
                                         to_string(x));
    case Policy::kBruteForceLeast: {
      const auto phi = fixed_point_set(s, i, o, x);
      for (const auto& candidate : phi) {
        bool least = true;
        for (const auto& other : phi) least = least && leq(d, candidate, other);
        if (least) return candidate;
      }
      fail(ErrorCode::kNoFixedPoint,
           (phi.empty() ? "no fixed point for " : "no least fixed point for ") +
               i.name() + "," + o.name() + " at " + to_string(x));
    }
  }
  fail(ErrorCode::kInvalidArgument, "unknown chooser policy");
}

bool GammaPolicy::admits(const FunctionalSystem& s, const Label& i,
                         const Label& o) const {
  if (!s.signature().inputs.count(i) || !s.signature().outputs.count(o)) {
    return false;
  }
  return !custom || custom(s, i, o);
}

FunctionalSystem fconnect(const Label& i, const Label& o,
                          const FunctionalSystem& s, const Chooser& chooser,
                          const GammaPolicy& gamma) {
  if (!gamma.admits(s, i, o)) {
    fail(ErrorCode::kNotConnectable, "pair " + i.name() + "," + o.name() +
                                         " not admitted for " + s.name());
  }
  struct Memo {
    std::mutex mutex;
    std::map<std::string, Value> chosen;
  };
  auto memo = std::make_shared<Memo>();

  Signature sig = s.signature();
  sig.inputs.erase(i);
  sig.outputs.erase(o);
  return FunctionalSystem(
      "g[" + i.name() + "," + o.name() + "](" + s.name() + ")", std::move(sig),
      s.domain(), [s, i, o, chooser, memo](const Tuple& x) {
        const std::string key = to_string(x);
        std::optional<Value> v;
        {
          std::lock_guard lock(memo->mutex);
          if (auto it = memo->chosen.find(key); it != memo->chosen.end()) {
            v = it->second;
          }
        }
        if (!v) {
          v = chooser.choose(s, i, o, x);
          std::lock_guard lock(memo->mutex);
          memo->chosen.emplace(key, *v);
        }
        Tuple full = x;
        full.insert_or_assign(i, *v);
        Tuple y = s(full);
        if (y.at(o) != *v) {
          fail(ErrorCode::kNoFixedPoint,
               "chooser " + chooser.describe() + " returned " + to_string(*v) +
                   " which is not a fixed point at " + to_string(x));
        }
        y.erase(o);
        return y;
      });
}

std::vector<Tuple> all_inputs(const FunctionalSystem& s, std::size_t bound) {
  const auto values = enumerate(*s.domain(), bound);
  return all_tuples(s.signature().inputs, values, bound);
}

bool observational_eq(const FunctionalSystem& a, const FunctionalSystem& b) {
  if (a.signature() != b.signature() || a.domain()->id() != b.domain()->id()) {
    fail(ErrorCode::kSignatureMismatch, to_string(a.signature()) + " vs " +
                                            to_string(b.signature()));
  }
  return observational_eq(a, b, all_inputs(a));
}

bool observational_eq(const FunctionalSystem& a, const FunctionalSystem& b,
                      const std::vector<Tuple>& inputs) {
  if (a.signature() != b.signature() || a.domain()->id() != b.domain()->id()) {
    fail(ErrorCode::kSignatureMismatch, to_string(a.signature()) + " vs " +
                                            to_string(b.signature()));
  }
  for (const auto& x : inputs) {
    if (a(x) != b(x)) return false;
  }
  return true;
}

std::string describe_behaviour(const FunctionalSystem& s,
                               const std::vector<Tuple>& inputs) {
  std::string out;
  for (const auto& x : inputs) {
    if (!out.empty()) out += "; ";
    out += to_string(x) + " -> " + to_string(s(x));
  }
  return out;
}

// ---------------------------------------------------------------------------

Label in_label(const Label& l) { return Label(l.name() + ":in"); }
Label out_label(const Label& l) { return Label(l.name() + ":out"); }

namespace {

LabelSet strip_suffix(const LabelSet& ls, const std::string& suffix) {
  LabelSet out;
  for (const auto& l : ls) {
    const auto& n = l.name();
    if (n.size() <= suffix.size() ||
        n.compare(n.size() - suffix.size(), suffix.size(), suffix) != 0) {
      fail(ErrorCode::kMalformedPairing, "label " + n + " lacks suffix " + suffix);
    }
    out.insert(Label(n.substr(0, n.size() - suffix.size())));
  }
  return out;
}

}  // namespace

MergedSystem::MergedSystem(FunctionalSystem inner, Chooser chooser)
    : inner_(std::move(inner)), chooser_(std::move(chooser)) {
  const LabelSet ins = strip_suffix(inner_.signature().inputs, ":in");
  const LabelSet outs = strip_suffix(inner_.signature().outputs, ":out");
  if (ins != outs) {
    fail(ErrorCode::kMalformedPairing,
         "inputs {" + join(ins) + "} and outputs {" + join(outs) + "} are not paired");
  }
  labels_ = ins;
}

MergedSystem merged_parallel(const MergedSystem& a, const MergedSystem& b) {
  return MergedSystem(fpar(a.inner(), b.inner()), a.chooser());
}

MergedSystem merged_connect(const Label& a, const Label& b,
                            const MergedSystem& s) {
  if (a == b) {
    fail(ErrorCode::kMalformedPairing, "self-connection of " + a.name());
  }
  if (!s.labels().count(a) || !s.labels().count(b)) {
    fail(ErrorCode::kNotConnectable, "labels " + a.name() + "," + b.name() +
                                         " are not both interfaces");
  }
  const FunctionalSystem first =
      fconnect(in_label(a), out_label(b), s.inner(), s.chooser());
  return MergedSystem(fconnect(in_label(b), out_label(a), first, s.chooser()),
                      s.chooser());
}

InputSampler pool_sampler(std::vector<Value> pool, Value empty,
                          std::size_t max_tuples) {
  if (pool.empty()) fail(ErrorCode::kInvalidArgument, "empty input pool");
  return [pool, empty, max_tuples](const FunctionalSystem& s) {
    const LabelSet& labels = s.signature().inputs;
    std::size_t total = 1;
    for (std::size_t k = 0; k < labels.size() && total <= max_tuples; ++k) {
      total *= pool.size();
    }
    if (total <= max_tuples) return all_tuples(labels, pool);
    // FNV-1a of the signature.
    std::uint64_t h = 1469598103934665603ull;
    for (char c : to_string(s.signature())) {
      h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    }
    std::mt19937_64 rng(h);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::vector<Tuple> out;
    Tuple blank;
    for (const auto& l : labels) blank.emplace(l, empty);
    out.push_back(std::move(blank));
    while (out.size() < max_tuples) {
      Tuple t;
      for (const auto& l : labels) t.emplace(l, pool[pick(rng)]);
      out.push_back(std::move(t));
    }
    return out;
  };
}

// ---------------------------------------------------------------------------

SystemAlgebra<FunctionalSystem> functional_algebra(std::string name,
                                                   Chooser chooser,
                                                   GammaPolicy gamma,
                                                   InputSampler equality_inputs) {
  if (!equality_inputs) {
    equality_inputs = [](const FunctionalSystem& s) { return all_inputs(s); };
  }
  SystemAlgebra<FunctionalSystem> alg;
  alg.name = std::move(name);
  alg.labels_of = [](const FunctionalSystem& s) { return s.labels(); };

  // Orients an unordered pair as (input, output).
  auto orient = [](const FunctionalSystem& s, const LabelPair& p)
      -> std::optional<std::pair<Label, Label>> {
    const auto& sig = s.signature();
    if (sig.inputs.count(p.first) && sig.outputs.count(p.second)) {
      return std::pair{p.first, p.second};
    }
    if (sig.inputs.count(p.second) && sig.outputs.count(p.first)) {
      return std::pair{p.second, p.first};
    }
    return std::nullopt;
  };

  alg.connectable = [orient, gamma](const FunctionalSystem& s, const LabelPair& p) {
    auto io = orient(s, p);
    return io && gamma.admits(s, io->first, io->second);
  };
  alg.par = fpar;
  alg.connect = [orient, chooser, gamma](const LabelPair& p,
                                         const FunctionalSystem& s) {
    auto io = orient(s, p);
    if (!io) {
      fail(ErrorCode::kNotConnectable,
           "pair " + to_string(p) + " is not an input/output pair of " + s.name());
    }
    return fconnect(io->first, io->second, s, chooser, gamma);
  };
  alg.equal = [equality_inputs](const FunctionalSystem& a,
                                const FunctionalSystem& b) {
    return observational_eq(a, b, equality_inputs(a));
  };
  alg.describe = [equality_inputs](const FunctionalSystem& s) {
    return describe_behaviour(s, equality_inputs(s));
  };
  return alg;
}

}  // namespace sysalg
