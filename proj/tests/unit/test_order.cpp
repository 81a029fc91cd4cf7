#include <gtest/gtest.h>

#include "../support/expect_error.hpp"
#include "../support/models.hpp"
#include "sysalg/causal.hpp"
#include "sysalg/kahn.hpp"
#include "sysalg/order.hpp"

using namespace sysalg;

namespace {

// Reflexive, antisymmetric, transitive, checked over every member.
void expect_partial_order(const Domain& d) {
  const auto all = enumerate(d);
  for (const auto& a : all) {
    EXPECT_TRUE(leq(d, a, a)) << to_string(a);
    for (const auto& b : all) {
      if (leq(d, a, b) && leq(d, b, a)) EXPECT_EQ(a, b);
      const Relation r = compare(d, a, b);
      const Relation s = compare(d, b, a);
      if (r == Relation::kBelow) EXPECT_EQ(s, Relation::kAbove);
      if (r == Relation::kIncomparable) EXPECT_EQ(s, Relation::kIncomparable);
      for (const auto& c : all) {
        if (leq(d, a, b) && leq(d, b, c)) EXPECT_TRUE(leq(d, a, c));
      }
    }
  }
}

}  // namespace

TEST(Order, ShippedDomainsArePartialOrders) {
  expect_partial_order(*make_chain_order("c5", 5));
  expect_partial_order(*make_discrete_order("d3", 3));
  expect_partial_order(*make_subset_order("p3", 3));
  expect_partial_order(*make_seq_domain({0, 1}, 3));
  expect_partial_order(*event_order(Rational(2), event_grid({0, 1}, {Rational(0), Rational(1)})));
}

TEST(Order, RandomFiniteOrdersArePartialOrders) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto below = models::random_order_relation(8, 0.3, rng);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < 8; ++a)
      for (std::size_t b = 0; b < 8; ++b)
        if (a != b && below[a][b]) pairs.emplace_back(a, b);
    const auto d = make_finite_order("r" + std::to_string(trial), 8, pairs);
    expect_partial_order(*d);
    for (std::size_t a = 0; a < 8; ++a)
      for (std::size_t b = 0; b < 8; ++b) EXPECT_EQ(d->below(a, b), below[a][b]);
  }
}

TEST(Order, CyclicGeneratorsAreRejected) {
  const std::vector<std::pair<std::size_t, std::size_t>> cycle = {{0, 1}, {1, 2}, {2, 0}};
  EXPECT_ERROR_CODE(make_finite_order("cyc", 3, cycle), ErrorCode::kInvalidArgument);
}

TEST(Order, ChainSupremumAndInfimum) {
  const auto d = make_chain_order("c4", 4);
  const std::vector<Value> chain = {d->element(1), d->element(3), d->element(2)};
  EXPECT_EQ(sup_chain(*d, chain), d->element(3));
  EXPECT_EQ(inf_chain(*d, chain), d->element(1));
  EXPECT_EQ(sup_chain(*d, std::span<const Value>{}), d->element(0));
  EXPECT_TRUE(is_chain(*d, chain));

  const auto p = make_subset_order("p2", 2);
  const std::vector<Value> anti = {p->element(1), p->element(2)};
  EXPECT_FALSE(is_chain(*p, anti));
  EXPECT_ERROR_CODE(sup_chain(*p, anti), ErrorCode::kInvalidArgument);
}

TEST(Order, ForeignValuesAreDomainMismatch) {
  const auto a = make_chain_order("a", 2);
  const auto b = make_chain_order("b", 2);
  EXPECT_ERROR_CODE(compare(*a, a->element(0), b->element(1)), ErrorCode::kDomainMismatch);
}

TEST(Order, UnboundedSequencesCannotBeEnumerated) {
  const auto d = make_seq_domain({0}, std::nullopt);
  EXPECT_ERROR_CODE(enumerate(*d), ErrorCode::kEnumerationTooLarge);
  EXPECT_EQ(enumerate(*make_seq_domain({0, 1}, 2)).size(), 7u);
}

TEST(Order, SequencePrefixOrder) {
  const auto d = make_seq_domain({0, 1, 2}, 4);
  EXPECT_TRUE(leq(*d, d->seq({}), d->seq({1, 2})));
  EXPECT_TRUE(leq(*d, d->seq({1}), d->seq({1, 2})));
  EXPECT_EQ(compare(*d, d->seq({2}), d->seq({1, 2})), Relation::kIncomparable);
  EXPECT_FALSE(d->contains(d->seq({0, 0, 0, 0, 0})));
  EXPECT_FALSE(d->contains(d->seq({7})));
}

TEST(Order, ReverseIsNotMonotone) {
  const auto d = make_seq_domain({0, 1}, 4);
  const Endo reverse = [d](const Value& v) {
    auto t = v.as_seq().tokens;
    std::reverse(t.begin(), t.end());
    return d->seq(t);
  };
  const std::vector<std::pair<Value, Value>> samples = {{d->seq({0}), d->seq({0, 1})}};
  const auto report = check_monotone(*d, reverse, samples);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(to_string(report.violations[0].fy), "<1,0>");

  const std::vector<std::pair<Value, Value>> bad = {{d->seq({1}), d->seq({0})}};
  EXPECT_ERROR_CODE(check_monotone(*d, reverse, bad), ErrorCode::kInvalidArgument);
}

TEST(Order, TupleOrderIsComponentwise) {
  const auto d = make_chain_order("c3", 3);
  const Tuple a{{"x"_lbl, d->element(0)}, {"y"_lbl, d->element(1)}};
  const Tuple b{{"x"_lbl, d->element(2)}, {"y"_lbl, d->element(1)}};
  const Tuple c{{"x"_lbl, d->element(1)}, {"y"_lbl, d->element(0)}};
  EXPECT_TRUE(tuple_leq(*d, a, b));
  EXPECT_EQ(compare_tuples(*d, a, c), Relation::kIncomparable);
  const Tuple other{{"z"_lbl, d->element(0)}};
  EXPECT_ERROR_CODE(compare_tuples(*d, a, other), ErrorCode::kSignatureMismatch);
  EXPECT_EQ(all_tuples({"x"_lbl, "y"_lbl}, enumerate(*d)).size(), 9u);
}

TEST(Order, EventHistoriesAreWellOrdered) {
  EXPECT_ERROR_CODE(EventHistory({models::ev(0, 1), models::ev(1, 1)}),
                    ErrorCode::kNotWellOrdered);
  const EventHistory h({models::ev(2, Rational(1, 2)), models::ev(1, 0)});
  EXPECT_EQ(to_string(h), "{(1,0),(2,1/2)}");
  EXPECT_TRUE(EventHistory({models::ev(1, 0)}).is_initial_segment_of(h));
  EXPECT_FALSE(EventHistory({models::ev(2, Rational(1, 2))}).is_initial_segment_of(h));
}

TEST(Order, RationalsRenderInLowestTerms) {
  EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
  EXPECT_EQ(to_string(Rational(-4, 2)), "-2");
  EXPECT_EQ(to_string(Rational(0, 5)), "0");
}

TEST(Order, EventUniverseEnumeratesWellOrderedSubsets) {
  const auto u = event_grid({0, 1}, {Rational(0), Rational(1), Rational(2)});
  const auto d = event_order(std::nullopt, u);
  // Per time: absent or one of two values, so 3^3.
  EXPECT_EQ(enumerate(*d).size(), 27u);
  EXPECT_EQ(models::well_ordered_subsets(u).size(), 27u);
}
