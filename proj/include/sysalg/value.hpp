#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

namespace sysalg {

// Interface label. Labels of one system are pairwise distinct.
class Label {
 public:
  Label() = default;
  explicit Label(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }

  friend auto operator<=>(const Label&, const Label&) = default;

 private:
  std::string name_;
};

using LabelSet = std::set<Label>;

inline Label operator""_lbl(const char* s, std::size_t n) {
  return Label(std::string(s, n));
}

// Identifies the domain a value belongs to; values of different domains are
// never compared.
class DomainId {
 public:
  DomainId() = default;
  explicit DomainId(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }

  friend auto operator<=>(const DomainId&, const DomainId&) = default;

 private:
  std::string name_;
};

using Token = std::int64_t;
using Rational = boost::rational<std::int64_t>;

// "n" for integers, "n/d" otherwise; always in lowest terms.
std::string to_string(const Rational& r);

// Finite token sequence, ordered by the prefix relation in its domain.
struct TokenSeq {
  std::vector<Token> tokens;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  bool is_prefix_of(const TokenSeq& other) const;

  friend bool operator==(const TokenSeq&, const TokenSeq&) = default;
  friend auto operator<=>(const TokenSeq&, const TokenSeq&) = default;
};

// A value v occurring at exact time t.
struct TimedValue {
  Token value = 0;
  Rational time;

  friend bool operator==(const TimedValue& a, const TimedValue& b) {
    return a.value == b.value && a.time == b.time;
  }
  // Canonical total order: by time, then by value.
  friend bool operator<(const TimedValue& a, const TimedValue& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.value < b.value;
  }
};

// Strict event precedence: x comes strictly before y.
inline bool precedes(const TimedValue& x, const TimedValue& y) {
  return x.time < y.time;
}

// Finite, well-ordered set of timed events: at most one event per time.
// Events are kept sorted by strictly increasing time.
class EventHistory {
 public:
  EventHistory() = default;
  // Throws NotWellOrdered if two distinct events share a time.
  explicit EventHistory(std::vector<TimedValue> events);

  std::span<const TimedValue> events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  bool contains(const TimedValue& e) const;

  // Copy extended by one event; throws NotWellOrdered on a time clash.
  EventHistory with(const TimedValue& e) const;
  // Elements of *this that are not in other, in time order.
  std::vector<TimedValue> minus(const EventHistory& other) const;
  EventHistory before(const Rational& t) const;
  bool is_initial_segment_of(const EventHistory& other) const;

  friend bool operator==(const EventHistory&, const EventHistory&) = default;
  friend bool operator<(const EventHistory& a, const EventHistory& b) {
    return a.events_ < b.events_;
  }

 private:
  std::vector<TimedValue> events_;
};

std::vector<TimedValue> symmetric_difference(const EventHistory& a,
                                             const EventHistory& b);

// Immutable domain element tagged with the domain it belongs to.
class Value {
 public:
  using Data = std::variant<std::int64_t, TokenSeq, EventHistory>;

  Value() = default;
  Value(DomainId domain, Data data)
      : domain_(std::move(domain)), data_(std::move(data)) {}

  const DomainId& domain() const { return domain_; }
  const Data& data() const { return data_; }

  std::int64_t as_int() const;
  const TokenSeq& as_seq() const;
  const EventHistory& as_events() const;

  friend bool operator==(const Value& a, const Value& b) {
    return a.domain_ == b.domain_ && a.data_ == b.data_;
  }
  friend bool operator<(const Value& a, const Value& b);

 private:
  DomainId domain_;
  Data data_;
};

// Canonical, domain-free rendering: 5, <1,2>, {(1,0),(2,1/2)}.
std::string to_string(const Value& v);
std::string to_string(const TokenSeq& s);
std::string to_string(const EventHistory& h);

// Assignment of values to interface labels (a tuple x in X^I).
using Tuple = std::map<Label, Value>;

// Canonical rendering {(a,<1>),(b,<>)}; used as memo key and in reports.
std::string to_string(const Tuple& t);

Tuple restrict(const Tuple& t, const LabelSet& labels);
LabelSet keys(const Tuple& t);

}  // namespace sysalg
