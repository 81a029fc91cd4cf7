#include <gtest/gtest.h>

#include "../support/expect_error.hpp"
#include "sysalg/port_graph.hpp"
#include "sysalg/presets.hpp"

using namespace sysalg;

namespace {

using Ports = std::vector<std::string>;

LabelSet labels_of(std::initializer_list<const char*> names) {
  LabelSet out;
  for (const char* n : names) out.emplace(n);
  return out;
}

}  // namespace

TEST(PortGraph, ParallelUnionsBoxesAndPorts) {
  const PortGraph s1 = atomic("s1", Ports{"1", "2", "3", "4", "5"});
  const PortGraph s2 = atomic("s2", Ports{"A", "B", "C", "D", "E"});
  const PortGraph both = pg_parallel(s1, s2);
  EXPECT_EQ(both.boxes.size(), 2u);
  EXPECT_EQ(both.free_ports.size(), 10u);
  EXPECT_TRUE(both.wires.empty());
  EXPECT_EQ(pg_parallel(s1, s2), pg_parallel(s2, s1));
}

TEST(PortGraph, ConnectHidesBothPorts) {
  const PortGraph s = atomic("s1", Ports{"1", "2", "3", "4", "5"});
  const PortGraph g = pg_connect(LabelPair("3"_lbl, "4"_lbl), s);
  EXPECT_EQ(g.labels(), labels_of({"1", "2", "5"}));
  ASSERT_EQ(g.wires.size(), 1u);
  const auto& w = *g.wires.begin();
  EXPECT_EQ(w.first.port, "3");
  EXPECT_EQ(w.second.port, "4");
}

TEST(PortGraph, FourBoxDiagramExposesFourPorts) {
  const auto alg = port_graph_algebra();
  const auto d = presets::four_box_diagram();
  const auto orders = all_builds(alg, d, 10'000);
  ASSERT_GT(orders.size(), 1u);
  const PortGraph first = evaluate_expr(alg, *orders.front());
  EXPECT_EQ(first.labels(), labels_of({"j2", "j3", "k3", "l1"}));
  EXPECT_EQ(first.wires.size(), 3u);
  for (const auto& e : orders) EXPECT_EQ(evaluate_expr(alg, *e), first) << e->to_string();
}

TEST(PortGraph, Preconditions) {
  const PortGraph a = atomic("a", Ports{"x", "y"});
  EXPECT_ERROR_CODE(pg_parallel(a, atomic("b", Ports{"x"})), ErrorCode::kLabelClash);
  EXPECT_ERROR_CODE(pg_parallel(a, atomic("a", Ports{"z"})), ErrorCode::kBoxNameClash);
  EXPECT_ERROR_CODE(pg_connect(LabelPair("x"_lbl, "x"_lbl), a), ErrorCode::kNotConnectable);
  EXPECT_ERROR_CODE(pg_connect(LabelPair("x"_lbl, "q"_lbl), a), ErrorCode::kNotConnectable);
}

TEST(PortGraph, EvaluationErrorsNameTheSubterm) {
  using E = Expr<PortGraph>;
  const auto alg = port_graph_algebra();
  const auto bad = E::par(E::connect(LabelPair("x"_lbl, "q"_lbl), E::leaf("a", atomic("a", Ports{"x"}))),
                          E::leaf("b", atomic("b", Ports{"y"})));
  try {
    evaluate_expr(alg, *bad);
    FAIL() << "expected NotConnectable";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotConnectable);
    EXPECT_NE(std::string(e.what()).find("root.0"), std::string::npos) << e.what();
  }
}

TEST(PortGraph, BroadcastWitnessHolds) {
  const WitnessReport r = broadcast_impossibility_witness();
  ASSERT_EQ(r.checks.size(), 3u);
  EXPECT_TRUE(r.all_hold());
  for (const auto& c : r.checks) EXPECT_EQ(c.actual, r.t);
}

TEST(PortGraph, BroadcastWitnessCatchesMutations) {
  for (auto m : {PortGraphMutation::kDropWire, PortGraphMutation::kSwapLabels}) {
    EXPECT_ERROR_CODE(broadcast_witness(port_graph_algebra(m), broadcast_parties()),
                      ErrorCode::kWitnessFailed);
  }
}

TEST(PortGraph, ConnectionsCommute) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    auto d = presets::random_port_graph_diagram(rng);
    if (d.connections.size() < 2) continue;
    PortGraph g = d.atoms.front().second;
    for (std::size_t k = 1; k < d.atoms.size(); ++k) g = pg_parallel(g, d.atoms[k].second);
    const auto& p = d.connections[0];
    const auto& q = d.connections[1];
    EXPECT_EQ(pg_connect(q, pg_connect(p, g)), pg_connect(p, pg_connect(q, g)));
  }
}

TEST(PortGraph, SmallInvarianceCampaign) {
  CoiOptions opt;
  opt.trials = 200;
  const auto r = check_composition_order_invariance<PortGraph>(
      port_graph_algebra(), presets::random_port_graph_diagram, opt);
  EXPECT_TRUE(r.clean());
  EXPECT_EQ(r.skipped, 0u);
  EXPECT_GT(r.comparisons, 200u);
}
