#include <gtest/gtest.h>

#include "../support/expect_error.hpp"
#include "sysalg/kahn.hpp"
#include "sysalg/presets.hpp"

using namespace sysalg;

namespace {

TokenSeq seq(std::vector<Token> t) { return TokenSeq{std::move(t)}; }

Network loop_net(const SeqDomainPtr& d) {
  Network net;
  net.domain = d;
  net.nodes.emplace("d", blocks::delay({0}));
  net.nodes.emplace("inc", blocks::add(1, 4));
  net.wires = {{{"d", "out"}, {"inc", "in"}}, {{"inc", "out"}, {"d", "in"}}};
  return net;
}

}  // namespace

TEST(Kahn, DupCopiesToBothOutputs) {
  const BlockRun r = run_block(blocks::dup(), {{"in", seq({1, 2})}}, 8);
  EXPECT_EQ(r.outputs.at("out1"), seq({1, 2}));
  EXPECT_EQ(r.outputs.at("out2"), seq({1, 2}));
  EXPECT_TRUE(r.truncated.empty());
}

TEST(Kahn, DelayPrependsItsSeed) {
  const auto d = make_seq_domain({0, 5, 7}, 8);
  const auto s = lift_process(blocks::delay({0}), "d", d);
  EXPECT_EQ(s(Tuple{{"d.in"_lbl, d->seq({5, 7})}}).at("d.out"_lbl), d->seq({0, 5, 7}));
}

TEST(Kahn, BlockSemantics) {
  EXPECT_EQ(run_block(blocks::adder(3), {{"a", seq({1, 2, 2})}, {"b", seq({1, 1})}}, 8).outputs.at("out"),
            seq({2, 0}));
  EXPECT_EQ(run_block(blocks::filter(1), {{"in", seq({1, 0, 1, 2})}}, 8).outputs.at("out"), seq({0, 2}));
  EXPECT_EQ(run_block(blocks::alternate(), {{"a", seq({1, 1})}, {"b", seq({2})}}, 8).outputs.at("out"),
            seq({1, 2, 1}));
  EXPECT_EQ(run_block(blocks::source({2, 1}), {}, 8).outputs.at("out"), seq({2, 1}));
  const BlockRun cut = run_block(blocks::source({2, 1, 0}), {}, 2);
  EXPECT_EQ(cut.outputs.at("out"), seq({2, 1}));
  EXPECT_EQ(cut.truncated, std::set<std::string>{"out"});
  EXPECT_ERROR_CODE(run_block(blocks::source({1, 1, 1, 1}), {}, 8, 3), ErrorCode::kStepDivergence);
  EXPECT_ERROR_CODE(blocks::by_name("nope", {}), ErrorCode::kInvalidArgument);
}

TEST(Kahn, DelayIncrementLoopIsTruncatedAtL) {
  const auto d = make_seq_domain({0, 1, 2, 3}, 4);
  const NetworkRun r = run_network(loop_net(d), {});
  EXPECT_EQ(r.status, FixpointStatus::kConverged);
  EXPECT_EQ(r.histories.at("d.out"_lbl), seq({0, 1, 2, 3}));
  EXPECT_TRUE(r.truncated.count("d.out"_lbl));
}

TEST(Kahn, StrictSelfLoopStaysEmpty) {
  const auto d = make_seq_domain({0, 1}, 4);
  Network net;
  net.domain = d;
  net.nodes.emplace("c", blocks::copy());
  net.wires = {{{"c", "out"}, {"c", "in"}}};
  const NetworkRun r = run_network(net, {});
  EXPECT_TRUE(r.histories.at("c.out"_lbl).empty());

  const auto s = fconnect("c.in"_lbl, "c.out"_lbl, lift_process(blocks::copy(), "c", d),
                          Chooser::least_kleene());
  EXPECT_TRUE(s.signature().outputs.empty());
}

TEST(Kahn, RunMatchesComposedSystem) {
  const auto d = make_seq_domain({0, 1, 2}, 6);
  Network net;
  net.domain = d;
  net.nodes.emplace("src", blocks::dup());
  net.nodes.emplace("d", blocks::delay({0}));
  net.nodes.emplace("sum", blocks::adder(3));
  net.wires = {{{"src", "out1"}, {"d", "in"}}, {{"d", "out"}, {"sum", "a"}}, {{"src", "out2"}, {"sum", "b"}}};
  const FunctionalSystem s = network_system(net, Chooser::least_kleene());
  for (const auto& in : d->members_up_to(3)) {
    const NetworkRun r = run_network(net, {{"src.in"_lbl, in.as_seq()}});
    EXPECT_EQ(s(Tuple{{"src.in"_lbl, in}}).at("sum.out"_lbl).as_seq(), r.histories.at("sum.out"_lbl));
  }
}

TEST(Kahn, LiftedBlocksAreMonotone) {
  const auto d = make_seq_domain({0, 1, 2}, 4);
  const auto members = d->members_up_to(3);
  for (const auto& name : blocks::names()) {
    std::vector<Token> args;
    if (name == "add" || name == "filter") args = {1};
    if (name == "delay" || name == "source") args = {2};
    if (name == "add") args = {1, 3};
    if (name == "adder") args = {3};
    const auto s = lift_process(blocks::by_name(name, args), "b", d);
    const auto inputs = s.signature().inputs;
    if (inputs.size() != 1) continue;
    std::vector<std::pair<Tuple, Tuple>> samples;
    for (const auto& x : members)
      for (const auto& y : members)
        if (leq(*d, x, y)) samples.push_back({{{*inputs.begin(), x}}, {{*inputs.begin(), y}}});
    EXPECT_TRUE(check_monotone_transfer(*d, s, samples).clean()) << name;
  }
}

TEST(Kahn, SmallInvarianceCampaign) {
  const auto d = presets::campaign_seq_domain();
  CoiOptions opt;
  opt.trials = 60;
  opt.seed = 1;
  const auto r = check_composition_order_invariance<FunctionalSystem>(
      kahn_algebra(d, Flavor::kContinuous),
      [d](std::mt19937_64& rng) { return presets::random_kahn_diagram(d, rng); }, opt);
  EXPECT_TRUE(r.clean()) << r.violations.front().expr_a << " vs " << r.violations.front().expr_b;
  EXPECT_EQ(r.skipped, 0u) << r.first_skip_reason;
}
