#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sysalg/error.hpp"
#include "sysalg/value.hpp"

namespace sysalg {

// Unordered pair of labels, stored with first <= second.
struct LabelPair {
  Label first, second;

  LabelPair() = default;
  LabelPair(Label a, Label b) {
    if (b < a) std::swap(a, b);
    first = std::move(a);
    second = std::move(b);
  }

  bool contains(const Label& l) const { return first == l || second == l; }
  friend auto operator<=>(const LabelPair&, const LabelPair&) = default;
};

std::string to_string(const LabelPair& p);

// A system algebra over system values S. par and connect may assume their
// preconditions; evaluate() checks them first and reports the subterm.
template <class S>
struct SystemAlgebra {
  std::string name;
  std::function<LabelSet(const S&)> labels_of;
  std::function<bool(const S&, const LabelPair&)> connectable;
  std::function<S(const S&, const S&)> par;
  std::function<S(const LabelPair&, const S&)> connect;
  std::function<bool(const S&, const S&)> equal;
  std::function<std::string(const S&)> describe;
};

// Composition term over named atomic systems.
template <class S>
class Expr {
 public:
  enum class Kind { kLeaf, kPar, kConnect };
  using Ptr = std::shared_ptr<const Expr>;

  static Ptr leaf(std::string name, S system) {
    auto e = std::make_shared<Expr>(Kind::kLeaf);
    e->name_ = std::move(name);
    e->system_ = std::move(system);
    return e;
  }
  static Ptr par(Ptr a, Ptr b) {
    auto e = std::make_shared<Expr>(Kind::kPar);
    e->left_ = std::move(a);
    e->right_ = std::move(b);
    return e;
  }
  static Ptr connect(LabelPair pair, Ptr a) {
    auto e = std::make_shared<Expr>(Kind::kConnect);
    e->pair_ = std::move(pair);
    e->left_ = std::move(a);
    return e;
  }

  explicit Expr(Kind kind) : kind_(kind) {}

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const S& system() const { return system_; }
  const Ptr& left() const { return left_; }
  const Ptr& right() const { return right_; }
  const LabelPair& pair() const { return pair_; }

  std::string to_string() const {
    switch (kind_) {
      case Kind::kLeaf: return name_;
      case Kind::kPar: return "(" + left_->to_string() + " | " + right_->to_string() + ")";
      case Kind::kConnect:
        return "g[" + sysalg::to_string(pair_) + "](" + left_->to_string() + ")";
    }
    return {};
  }

 private:
  Kind kind_;
  std::string name_;
  S system_{};
  Ptr left_, right_;
  LabelPair pair_;
};

namespace detail {

template <class S>
S evaluate_at(const SystemAlgebra<S>& alg, const Expr<S>& e,
              const std::string& path) {
  using Kind = typename Expr<S>::Kind;
  switch (e.kind()) {
    case Kind::kLeaf:
      return e.system();
    case Kind::kPar: {
      S a = evaluate_at(alg, *e.left(), path + ".0");
      S b = evaluate_at(alg, *e.right(), path + ".1");
      const LabelSet la = alg.labels_of(a);
      const LabelSet lb = alg.labels_of(b);
      LabelSet both = la;
      for (const auto& l : lb) {
        if (!both.insert(l).second) {
          fail(ErrorCode::kLabelClash,
               "at " + path + ": label " + l.name() + " on both sides of " +
                   e.to_string());
        }
      }
      S out = alg.par(a, b);
      if (alg.labels_of(out) != both) {
        fail(ErrorCode::kInvalidArgument,
             "at " + path + ": par broke label bookkeeping in " + alg.name);
      }
      return out;
    }
    case Kind::kConnect: {
      S a = evaluate_at(alg, *e.left(), path + ".0");
      LabelSet la = alg.labels_of(a);
      const auto& p = e.pair();
      if (p.first == p.second || !la.count(p.first) || !la.count(p.second) ||
          !alg.connectable(a, p)) {
        fail(ErrorCode::kNotConnectable,
             "at " + path + ": pair " + to_string(p) + " not connectable in " +
                 e.left()->to_string());
      }
      S out = alg.connect(p, a);
      la.erase(p.first);
      la.erase(p.second);
      if (alg.labels_of(out) != la) {
        fail(ErrorCode::kInvalidArgument,
             "at " + path + ": connect broke label bookkeeping in " + alg.name);
      }
      return out;
    }
  }
  fail(ErrorCode::kInvalidArgument, "corrupt expression");
}

}  // namespace detail

// Bottom-up evaluation. Errors carry the path of the failing node, e.g.
// "root.0.1" for the right child of the left child.
template <class S>
S evaluate_expr(const SystemAlgebra<S>& alg, const Expr<S>& e) {
  return detail::evaluate_at(alg, e, "root");
}

// The operation multiset of a diagram: atoms plus the connections drawn
// between their labels. Every valid build order should give the same system
// in a composition-order invariant algebra.
template <class S>
struct Diagram {
  std::vector<std::pair<std::string, S>> atoms;
  std::vector<LabelPair> connections;
};

namespace detail {

template <class S>
struct Fragment {
  typename Expr<S>::Ptr expr;
  LabelSet labels;
};

template <class S>
struct BuildState {
  std::vector<Fragment<S>> fragments;
  std::vector<LabelPair> pending;
};

template <class S>
BuildState<S> initial_state(const SystemAlgebra<S>& alg, const Diagram<S>& d) {
  BuildState<S> st;
  for (const auto& [name, sys] : d.atoms) {
    st.fragments.push_back({Expr<S>::leaf(name, sys), alg.labels_of(sys)});
  }
  st.pending = d.connections;
  return st;
}

// Indices of pending connections whose labels both lie in one fragment.
template <class S>
std::vector<std::pair<std::size_t, std::size_t>> ready_connections(
    const BuildState<S>& st) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t c = 0; c < st.pending.size(); ++c) {
    for (std::size_t f = 0; f < st.fragments.size(); ++f) {
      const auto& ls = st.fragments[f].labels;
      if (ls.count(st.pending[c].first) && ls.count(st.pending[c].second)) {
        out.emplace_back(c, f);
      }
    }
  }
  return out;
}

template <class S>
void apply_connect(BuildState<S>& st, std::size_t c, std::size_t f) {
  auto& frag = st.fragments[f];
  const LabelPair p = st.pending[c];
  frag.expr = Expr<S>::connect(p, frag.expr);
  frag.labels.erase(p.first);
  frag.labels.erase(p.second);
  st.pending.erase(st.pending.begin() + static_cast<std::ptrdiff_t>(c));
}

template <class S>
void apply_par(BuildState<S>& st, std::size_t a, std::size_t b) {
  Fragment<S> merged{Expr<S>::par(st.fragments[a].expr, st.fragments[b].expr),
                     st.fragments[a].labels};
  merged.labels.insert(st.fragments[b].labels.begin(),
                       st.fragments[b].labels.end());
  const auto hi = std::max(a, b);
  const auto lo = std::min(a, b);
  st.fragments.erase(st.fragments.begin() + static_cast<std::ptrdiff_t>(hi));
  st.fragments.erase(st.fragments.begin() + static_cast<std::ptrdiff_t>(lo));
  st.fragments.push_back(std::move(merged));
}

template <class S>
bool finished(const BuildState<S>& st) {
  return st.fragments.size() <= 1 && st.pending.empty();
}

template <class S>
bool enumerate_builds(BuildState<S> st, std::size_t cap,
                      std::vector<typename Expr<S>::Ptr>& out) {
  if (finished(st)) {
    if (st.fragments.empty()) return true;
    if (out.size() >= cap) return false;
    out.push_back(st.fragments.front().expr);
    return true;
  }
  const auto ready = ready_connections(st);
  for (const auto& [c, f] : ready) {
    BuildState<S> next = st;
    apply_connect(next, c, f);
    if (!enumerate_builds(std::move(next), cap, out)) return false;
  }
  for (std::size_t a = 0; a < st.fragments.size(); ++a) {
    for (std::size_t b = 0; b < st.fragments.size(); ++b) {
      if (a == b) continue;
      BuildState<S> next = st;
      apply_par(next, a, b);
      if (!enumerate_builds(std::move(next), cap, out)) return false;
    }
  }
  return true;
}

}  // namespace detail

// One uniformly random valid step at a time: either a connection whose
// labels already sit in one fragment, or par of two fragments in random
// order. Throws NotConnectable if some connection can never become ready.
template <class S, class Rng>
typename Expr<S>::Ptr random_build(const SystemAlgebra<S>& alg,
                                   const Diagram<S>& d, Rng& rng) {
  auto st = detail::initial_state(alg, d);
  if (st.fragments.empty()) {
    fail(ErrorCode::kInvalidArgument, "diagram without atoms");
  }
  while (!detail::finished(st)) {
    const auto ready = detail::ready_connections(st);
    const std::size_t pars =
        st.fragments.size() * (st.fragments.size() - 1);
    const std::size_t options = ready.size() + pars;
    if (options == 0) {
      fail(ErrorCode::kNotConnectable,
           "connection " + to_string(st.pending.front()) +
               " names labels of no single fragment");
    }
    std::size_t pick = std::uniform_int_distribution<std::size_t>(0, options - 1)(rng);
    if (pick < ready.size()) {
      detail::apply_connect(st, ready[pick].first, ready[pick].second);
    } else {
      pick -= ready.size();
      const std::size_t n = st.fragments.size();
      std::size_t a = pick / (n - 1);
      std::size_t b = pick % (n - 1);
      if (b >= a) ++b;
      detail::apply_par(st, a, b);
    }
  }
  return st.fragments.front().expr;
}

// Every valid build order when there are at most cap of them, else nothing.
template <class S>
std::vector<typename Expr<S>::Ptr> all_builds(const SystemAlgebra<S>& alg,
                                              const Diagram<S>& d,
                                              std::size_t cap) {
  std::vector<typename Expr<S>::Ptr> found;
  if (!detail::enumerate_builds(detail::initial_state(alg, d), cap, found)) {
    return {};
  }
  // Different step sequences often produce the same term.
  std::vector<typename Expr<S>::Ptr> out;
  std::set<std::string> seen;
  for (auto& e : found) {
    if (seen.insert(e->to_string()).second) out.push_back(std::move(e));
  }
  return out;
}

struct CoiViolation {
  std::size_t trial = 0;
  std::string expr_a, expr_b;
  std::string value_a, value_b;

  friend auto operator<=>(const CoiViolation&, const CoiViolation&) = default;
};

struct CoiReport {
  std::size_t trials = 0;
  std::size_t skipped = 0;
  std::size_t comparisons = 0;
  std::vector<CoiViolation> violations;
  // First error message of a skipped trial, for diagnosis.
  std::string first_skip_reason;

  bool clean() const { return violations.empty(); }
};

struct CoiOptions {
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  // Diagrams with at most this many build orders are checked exhaustively;
  // larger ones get `samples` random build orders.
  std::size_t exhaustive_cap = 48;
  std::size_t samples = 6;
};

// For each trial, builds the generated diagram in many orders and compares
// every result with the first via alg.equal. Trials whose diagram or
// evaluation fails are skipped and counted.
template <class S>
CoiReport check_composition_order_invariance(
    const SystemAlgebra<S>& alg,
    const std::function<Diagram<S>(std::mt19937_64&)>& generator,
    const CoiOptions& opt = {}) {
  CoiReport report;
  std::mt19937_64 rng(opt.seed);
  for (std::size_t t = 0; t < opt.trials; ++t) {
    ++report.trials;
    try {
      const Diagram<S> d = generator(rng);
      auto orders = all_builds(alg, d, opt.exhaustive_cap);
      if (orders.empty()) {
        for (std::size_t k = 0; k < opt.samples; ++k) {
          orders.push_back(random_build(alg, d, rng));
        }
      }
      const S reference = evaluate_expr(alg, *orders.front());
      for (std::size_t k = 1; k < orders.size(); ++k) {
        const S other = evaluate_expr(alg, *orders[k]);
        ++report.comparisons;
        if (!alg.equal(reference, other)) {
          report.violations.push_back(
              {t, orders.front()->to_string(), orders[k]->to_string(),
               alg.describe(reference), alg.describe(other)});
        }
      }
    } catch (const Error& e) {
      if (report.skipped++ == 0) report.first_skip_reason = e.what();
    }
  }
  std::sort(report.violations.begin(), report.violations.end());
  return report;
}

// ---------------------------------------------------------------------------
// Broadcast construction: senders s0, s1 and receivers r1, r2, each with two
// labels (x1 = "x^1", x2 = "x^2").

template <class S>
struct BroadcastParties {
  S s0, s1, r1, r2;
  Label s0_1, s0_2, s1_1, s1_2, r1_1, r1_2, r2_1, r2_2;
};

struct WitnessCheck {
  std::string name;
  std::string expected;  // t
  std::string actual;    // the decomposition
  bool holds = false;
};

struct WitnessReport {
  std::string t;
  std::vector<WitnessCheck> checks;
  bool all_hold() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const auto& c) { return c.holds; });
  }
};

// Builds t and its three decompositions; never throws on a failed equality.
template <class S>
WitnessReport broadcast_witness_report(const SystemAlgebra<S>& alg,
                                       const BroadcastParties<S>& p) {
  auto g = [&](const Label& a, const Label& b, const S& s) {
    LabelPair pair(a, b);
    LabelSet ls = alg.labels_of(s);
    if (!ls.count(a) || !ls.count(b) || !alg.connectable(s, pair)) {
      fail(ErrorCode::kWitnessFailed,
           "pair " + to_string(pair) + " not connectable during the witness");
    }
    return alg.connect(pair, s);
  };
  auto par = [&](const S& a, const S& b) { return alg.par(a, b); };

  const S t = g(p.r1_2, p.r2_2,
                g(p.s1_2, p.r2_1,
                  g(p.s0_1, p.r1_1,
                    g(p.s0_2, p.s1_1, par(par(par(p.s0, p.s1), p.r1), p.r2)))));

  // S_=: e joins the two senders; its labels are s0^1 and s1^2.
  const S e = g(p.s0_2, p.s1_1, par(p.s0, p.s1));
  const S t_eq =
      g(p.r1_2, p.r2_2,
        g(p.s1_2, p.r2_1, g(p.s0_1, p.r1_1, par(par(e, p.r1), p.r2))));

  // S_0: e-hat joins s1 and r2; its labels are s1^1 and r2^2.
  const S e0 = g(p.s1_2, p.r2_1, par(p.s1, p.r2));
  const S t_0 =
      g(p.r1_2, p.r2_2,
        g(p.s0_2, p.s1_1, g(p.s0_1, p.r1_1, par(par(e0, p.s0), p.r1))));

  // S_1: e-tilde joins s0 and r1; its labels are s0^2 and r1^2.
  const S e1 = g(p.s0_1, p.r1_1, par(p.s0, p.r1));
  const S t_1 =
      g(p.r1_2, p.r2_2,
        g(p.s1_2, p.r2_1, g(p.s0_2, p.s1_1, par(par(e1, p.s1), p.r2))));

  WitnessReport report;
  report.t = alg.describe(t);
  auto check = [&](std::string name, const S& other) {
    report.checks.push_back(
        {std::move(name), report.t, alg.describe(other), alg.equal(t, other)});
  };
  check("t in S_= (senders joined first)", t_eq);
  check("t in S_0 (s1 joined with r2 first)", t_0);
  check("t in S_1 (s0 joined with r1 first)", t_1);
  return report;
}

// Throws WitnessFailed naming the first failed equality.
template <class S>
WitnessReport broadcast_witness(const SystemAlgebra<S>& alg,
                                const BroadcastParties<S>& p) {
  WitnessReport report = broadcast_witness_report(alg, p);
  for (const auto& c : report.checks) {
    if (!c.holds) {
      fail(ErrorCode::kWitnessFailed,
           c.name + " fails in " + alg.name + ": " + c.actual + " != " + c.expected);
    }
  }
  return report;
}

}  // namespace sysalg
