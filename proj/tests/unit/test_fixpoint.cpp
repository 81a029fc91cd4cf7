#include <gtest/gtest.h>

#include "../support/expect_error.hpp"
#include "../support/models.hpp"
#include "sysalg/causal.hpp"
#include "sysalg/fixpoint.hpp"
#include "sysalg/kahn.hpp"

using namespace sysalg;

namespace {

// 0 < 1 < 2 < ... < omega, with omega stored as kOmega.
constexpr std::int64_t kOmega = 1'000'000;

class OmegaPlusOne final : public Domain {
 public:
  OmegaPlusOne() : Domain(DomainId("omega+1")) {}
  Relation compare_members(const Value& a, const Value& b) const override {
    if (a.as_int() == b.as_int()) return Relation::kEqual;
    return a.as_int() < b.as_int() ? Relation::kBelow : Relation::kAbove;
  }
  bool contains(const Value& v) const override {
    return v.as_int() >= 0 && (v.as_int() < kOmega / 2 || v.as_int() == kOmega);
  }
  std::optional<Value> least() const override { return at(0); }
  Value omega_limit(std::span<const Value>) const override { return at(kOmega); }
  Value at(std::int64_t k) const { return Value(id(), k); }
};

}  // namespace

TEST(Fixpoint, IdentityConvergesAtBottomInOneStep) {
  const auto d = make_seq_domain({0, 1}, 4);
  const auto r = kleene_lfp([](const Value& v) { return v; }, *d);
  EXPECT_TRUE(r.converged());
  EXPECT_EQ(r.value, d->seq({}));
  EXPECT_EQ(r.steps, 1u);
}

TEST(Fixpoint, AddMissingMinimumOnSubsets) {
  const auto d = make_subset_order("p4", 4);
  const Endo f = [d](const Value& v) {
    const auto mask = v.as_int();
    for (int k = 0; k < 4; ++k)
      if (!((mask >> k) & 1)) return d->element(mask | (1 << k));
    return v;
  };
  const auto r = kleene_lfp(f, *d, {}, Record::kYes);
  EXPECT_TRUE(r.converged());
  EXPECT_EQ(r.value.as_int(), 0b1111);
  EXPECT_EQ(r.steps, 5u);
  EXPECT_EQ(r.iterates.size(), 5u);

  // Oracle: plain loop over the 16 bitmasks.
  std::vector<std::int64_t> fixed;
  for (std::int64_t m = 0; m < 16; ++m)
    if (f(d->element(m)).as_int() == m) fixed.push_back(m);
  EXPECT_EQ(fixed, std::vector<std::int64_t>{15});
  const auto bf = brute_force_fixed_points(f, enumerate(*d));
  ASSERT_EQ(bf.size(), 1u);
  EXPECT_EQ(bf[0].as_int(), 15);
}

TEST(Fixpoint, InflationaryOnUnboundedDomainRunsOutOfFuel) {
  const auto d = make_seq_domain({0}, std::nullopt);
  const Endo grow = [d](const Value& v) {
    auto t = v.as_seq().tokens;
    t.push_back(0);
    return d->seq(t);
  };
  const auto r = kleene_lfp(grow, *d, Fuel{100, 0});
  EXPECT_EQ(r.status, FixpointStatus::kFuelExhausted);
  EXPECT_EQ(r.value.as_seq().size(), 100u);
}

TEST(Fixpoint, ConstantConvergesWithinTwoSteps) {
  const auto d = make_chain_order("c6", 6);
  const auto r = kleene_lfp([d](const Value&) { return d->element(4); }, *d);
  EXPECT_TRUE(r.converged());
  EXPECT_EQ(r.value, d->element(4));
  EXPECT_LE(r.steps, 2u);
}

TEST(Fixpoint, SaturatingSuccessorOnChain) {
  const auto d = make_chain_order("c10", 10);
  const Endo f = [d](const Value& v) { return d->element(std::min<std::int64_t>(v.as_int() + 1, 9)); };
  const auto r = kleene_lfp(f, *d);
  EXPECT_EQ(r.value, d->element(9));
  EXPECT_EQ(r.steps, 10u);
}

TEST(Fixpoint, ZeroFuelIsRejected) {
  const auto d = make_chain_order("c2", 2);
  EXPECT_ERROR_CODE(kleene_lfp([](const Value& v) { return v; }, *d, Fuel{0, 0}),
                    ErrorCode::kInvalidArgument);
}

TEST(Fixpoint, OneLimitJumpReachesOmega) {
  OmegaPlusOne d;
  const Endo f = [&d](const Value& v) {
    return v.as_int() == kOmega ? v : d.at(v.as_int() + 1);
  };
  const auto plain = kleene_lfp(f, d, Fuel{50, 0});
  EXPECT_EQ(plain.status, FixpointStatus::kFuelExhausted);

  const auto r = monotone_lfp(f, d, Fuel{50, 1});
  EXPECT_TRUE(r.converged());
  EXPECT_EQ(r.value.as_int(), kOmega);
  EXPECT_EQ(r.limit_jumps, 1u);
}

TEST(Fixpoint, LimitJumpOnFiniteSequencesHasNoSupremum) {
  const auto d = make_seq_domain({0}, std::nullopt);
  const Endo grow = [d](const Value& v) {
    auto t = v.as_seq().tokens;
    t.push_back(0);
    return d->seq(t);
  };
  EXPECT_ERROR_CODE(monotone_lfp(grow, *d, Fuel{20, 1}), ErrorCode::kNoSupremum);
}

TEST(Fixpoint, LeastFixedPointIsBelowEveryFixedPoint) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 20;
    const auto below = models::random_order_relation(n, 0.25, rng);
    const auto f = models::random_monotone_map(below, rng);
    ASSERT_TRUE(models::is_monotone(below, f));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (a != b && below[a][b]) pairs.emplace_back(a, b);
    const auto d = make_finite_order("m" + std::to_string(trial), n, pairs);
    const Endo fe = [&](const Value& v) { return d->element(f[v.as_int()]); };
    const auto r = kleene_lfp(fe, *d);
    ASSERT_TRUE(r.converged());
    const auto lfp = static_cast<std::size_t>(r.value.as_int());
    const auto fixed = models::fixed_points_of(f);
    ASSERT_FALSE(fixed.empty());
    for (auto p : fixed) EXPECT_TRUE(below[lfp][p]);
    // Descent: every pre-fixed point sits above the least fixed point.
    for (std::size_t x = 0; x < n; ++x)
      if (below[f[x]][x]) EXPECT_TRUE(below[lfp][x]);
  }
}

TEST(CausalFixpoint, MinExtensionTakesLeastNewEvent) {
  const TimedValue x0 = models::ev(1, 0), x1 = models::ev(1, 1);
  const EventEndo f = [&](const EventHistory& h) {
    return h.empty() ? EventHistory({x0, x1}) : EventHistory({x0});
  };
  const auto r = causal_unique_fp(f);
  EXPECT_TRUE(r.converged());
  EXPECT_EQ(r.value, EventHistory({x0}));
  EXPECT_EQ(r.steps, 2u);
}

TEST(CausalFixpoint, ConstantEmptyConvergesImmediately) {
  const auto r = causal_unique_fp([](const EventHistory&) { return EventHistory(); });
  EXPECT_TRUE(r.converged());
  EXPECT_TRUE(r.value.empty());
  EXPECT_EQ(r.steps, 1u);
}

TEST(CausalFixpoint, ZenoIteratesHalveTheGap) {
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto r = causal_unique_fp(zeno_function(Rational(1)), Fuel{n, 0});
    EXPECT_EQ(r.status, FixpointStatus::kFuelExhausted);
    std::vector<TimedValue> expected;
    const std::int64_t den = std::int64_t{1} << (n - 1);
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t num = den - (den >> k);
      expected.push_back(models::ev(0, Rational(num, den)));
    }
    EXPECT_EQ(r.value, EventHistory(expected)) << "n = " << n;
  }
}
