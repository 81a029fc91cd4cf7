#include <gtest/gtest.h>

#include "../support/expect_error.hpp"
#include "../support/models.hpp"
#include "sysalg/functional.hpp"
#include "sysalg/presets.hpp"

using namespace sysalg;

namespace {

const auto kBit = presets::bit_domain();

Tuple bits(std::initializer_list<std::pair<const char*, int>> kv) {
  Tuple t;
  for (const auto& [l, v] : kv) t.emplace(Label(l), kBit->element(v));
  return t;
}

}  // namespace

TEST(Functional, InverterPairSingleConnections) {
  const FunctionalSystem s = presets::inverter_pair();
  const Chooser c = presets::prefer_zero();
  const FunctionalSystem g21 = fconnect("i2"_lbl, "o1"_lbl, s, c);
  const FunctionalSystem g12 = fconnect("i1"_lbl, "o2"_lbl, s, c);
  for (int x : {0, 1}) {
    EXPECT_EQ(g21(bits({{"i1", x}})), bits({{"o2", x}, {"o3", x}}));
    EXPECT_EQ(g12(bits({{"i2", x}})), bits({{"o1", x}, {"o3", 1 - x}}));
  }
  EXPECT_EQ(g21.name(), "g[i2,o1](s)");
}

TEST(Functional, PreferZeroDependsOnConnectionOrder) {
  const FunctionalSystem s = presets::inverter_pair();
  const Chooser c = presets::prefer_zero();
  const auto a = fconnect("i1"_lbl, "o2"_lbl, fconnect("i2"_lbl, "o1"_lbl, s, c), c);
  const auto b = fconnect("i2"_lbl, "o1"_lbl, fconnect("i1"_lbl, "o2"_lbl, s, c), c);
  EXPECT_EQ(a(Tuple{}), bits({{"o3", 0}}));
  EXPECT_EQ(b(Tuple{}), bits({{"o3", 1}}));
  EXPECT_FALSE(observational_eq(a, b));

  const auto phi = fixed_point_set(fconnect("i2"_lbl, "o1"_lbl, s, c), "i1"_lbl, "o2"_lbl, Tuple{});
  EXPECT_EQ(phi.size(), 2u);
}

TEST(Functional, ChoosersOnAChain) {
  const auto d = make_chain_order("c5", 5);
  // out = max(in, 2): fixed points 2, 3, 4.
  const FunctionalSystem s("m", {{"in"_lbl}, {"out"_lbl}}, d, [d](const Tuple& x) {
    return Tuple{{"out"_lbl, d->element(std::max<std::int64_t>(x.at("in"_lbl).as_int(), 2))}};
  });
  const auto phi = fixed_point_set(s, "in"_lbl, "out"_lbl, Tuple{});
  ASSERT_EQ(phi.size(), 3u);
  EXPECT_EQ(Chooser::least_kleene().choose(s, "in"_lbl, "out"_lbl, Tuple{}), d->element(2));
  EXPECT_EQ(Chooser::least_monotone(Fuel{}).choose(s, "in"_lbl, "out"_lbl, Tuple{}), d->element(2));
  EXPECT_EQ(Chooser::brute_force_least().choose(s, "in"_lbl, "out"_lbl, Tuple{}), d->element(2));
  EXPECT_EQ(Chooser::prefer_listed({d->element(4), d->element(2)}).choose(s, "in"_lbl, "out"_lbl, Tuple{}),
            d->element(4));
  EXPECT_ERROR_CODE(Chooser::prefer_listed({d->element(0)}).choose(s, "in"_lbl, "out"_lbl, Tuple{}),
                    ErrorCode::kNoFixedPoint);
  EXPECT_ERROR_CODE(Chooser::least_kleene(Fuel{1, 0}).choose(s, "in"_lbl, "out"_lbl, Tuple{}),
                    ErrorCode::kFuelExhausted);
}

TEST(Functional, InputChecks) {
  const FunctionalSystem s = presets::inverter_pair();
  EXPECT_ERROR_CODE(s(bits({{"i1", 0}})), ErrorCode::kSignatureMismatch);
  const auto other = make_chain_order("c2", 2);
  EXPECT_ERROR_CODE(s(Tuple{{"i1"_lbl, other->element(0)}, {"i2"_lbl, other->element(0)}}),
                    ErrorCode::kDomainMismatch);
  EXPECT_ERROR_CODE(FunctionalSystem("bad", {{"a"_lbl}, {"a"_lbl}}, kBit, [](const Tuple& x) { return x; }),
                    ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(fconnect("o1"_lbl, "i1"_lbl, s, Chooser::brute_force_least()),
                    ErrorCode::kNotConnectable);
}

TEST(Functional, ParallelLaws) {
  std::mt19937_64 rng(5);
  auto code = [&](std::size_t bits_needed) {
    return std::uniform_int_distribution<std::uint64_t>(0, (std::uint64_t{1} << bits_needed) - 1)(rng);
  };
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = models::bit_table("a", {"a1"_lbl}, {"a2"_lbl}, kBit, code(2));
    const auto b = models::bit_table("b", {"b1"_lbl}, {"b2"_lbl}, kBit, code(2));
    const auto c = models::bit_table("c", {}, {"c1"_lbl, "c2"_lbl}, kBit, code(2));
    EXPECT_TRUE(observational_eq(fpar(a, b), fpar(b, a)));
    EXPECT_TRUE(observational_eq(fpar(fpar(a, b), c), fpar(a, fpar(b, c))));
    const auto ab = fpar(a, b);
    for (const auto& x : all_inputs(ab)) {
      EXPECT_EQ(restrict(ab(x), a.signature().outputs), a(restrict(x, a.signature().inputs)));
    }
  }
  EXPECT_ERROR_CODE(fpar(presets::inverter_pair(), presets::inverter_pair()), ErrorCode::kLabelClash);
}

TEST(Functional, MergedInterfacesExchangeBothWays) {
  const auto d = make_chain_order("c3", 3);
  // Relay: whatever arrives on one side leaves on the other.
  auto relay = [&](const std::string& l, const std::string& e) {
    const Label li = in_label(Label(l)), lo = out_label(Label(l));
    const Label ei = in_label(Label(e)), eo = out_label(Label(e));
    return FunctionalSystem(l, {{li, ei}, {lo, eo}}, d, [=](const Tuple& x) {
      return Tuple{{lo, x.at(ei)}, {eo, x.at(li)}};
    });
  };
  const MergedSystem a(relay("a", "ea"), Chooser::least_kleene());
  const MergedSystem b(relay("b", "eb"), Chooser::least_kleene());
  const MergedSystem ab = merged_parallel(a, b);
  const MergedSystem joined = merged_connect("a"_lbl, "b"_lbl, ab);
  EXPECT_EQ(joined.labels(), (LabelSet{"ea"_lbl, "eb"_lbl}));

  // Oracle: least joint solution of a:in = b:out, b:in = a:out.
  const auto members = enumerate(*d);
  for (const auto& x : all_inputs(joined.inner())) {
    std::optional<std::pair<std::int64_t, std::int64_t>> least;
    for (const auto& va : members) {
      for (const auto& vb : members) {
        Tuple full = x;
        full.emplace(in_label("a"_lbl), va);
        full.emplace(in_label("b"_lbl), vb);
        const Tuple y = ab.inner()(full);
        if (y.at(out_label("b"_lbl)) == va && y.at(out_label("a"_lbl)) == vb) {
          if (!least || (va.as_int() <= least->first && vb.as_int() <= least->second)) {
            least = std::make_pair(va.as_int(), vb.as_int());
          }
        }
      }
    }
    ASSERT_TRUE(least);
    const Tuple y = joined.inner()(x);
    EXPECT_EQ(y.at(out_label("ea"_lbl)).as_int(), least->first);
    EXPECT_EQ(y.at(out_label("eb"_lbl)).as_int(), least->second);
    EXPECT_EQ(y.at(out_label("ea"_lbl)), x.at(in_label("eb"_lbl)));
    EXPECT_EQ(y.at(out_label("eb"_lbl)), x.at(in_label("ea"_lbl)));
  }

  EXPECT_ERROR_CODE(merged_connect("a"_lbl, "a"_lbl, ab), ErrorCode::kMalformedPairing);
  EXPECT_ERROR_CODE(MergedSystem(presets::inverter_pair(), Chooser::least_kleene()),
                    ErrorCode::kMalformedPairing);
}

TEST(Functional, MergedConnectOfIgnoringSystemKeepsOutputs) {
  const auto d = make_chain_order("c3", 3);
  const Signature sig{{in_label("p"_lbl), in_label("q"_lbl), in_label("r"_lbl)},
                      {out_label("p"_lbl), out_label("q"_lbl), out_label("r"_lbl)}};
  const FunctionalSystem s("k", sig, d, [d](const Tuple&) {
    return Tuple{{out_label("p"_lbl), d->element(2)},
                 {out_label("q"_lbl), d->element(1)},
                 {out_label("r"_lbl), d->element(0)}};
  });
  const MergedSystem joined = merged_connect("p"_lbl, "q"_lbl, MergedSystem(s, Chooser::least_kleene()));
  for (const auto& x : all_inputs(joined.inner())) {
    EXPECT_EQ(joined.inner()(x), (Tuple{{out_label("r"_lbl), d->element(0)}}));
  }
}

TEST(Functional, PoolSamplerIsDeterministic) {
  const auto d = make_chain_order("c4", 4);
  const auto sampler = pool_sampler(enumerate(*d), d->element(0), 10);
  const auto s = models::bit_table("t", {}, {}, kBit, 0);
  const FunctionalSystem wide("w", {{"a"_lbl, "b"_lbl, "c"_lbl}, {}}, d, [](const Tuple&) { return Tuple{}; });
  const auto first = sampler(wide);
  EXPECT_EQ(first.size(), 10u);
  EXPECT_EQ(first, sampler(wide));
  EXPECT_EQ(sampler(s).size(), 1u);
}
