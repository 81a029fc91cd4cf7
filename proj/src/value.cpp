#include "sysalg/value.hpp"

#include <algorithm>
#include <sstream>

#include "sysalg/error.hpp"

namespace sysalg {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

bool TokenSeq::is_prefix_of(const TokenSeq& other) const {
  return tokens.size() <= other.tokens.size() &&
         std::equal(tokens.begin(), tokens.end(), other.tokens.begin());
}

EventHistory::EventHistory(std::vector<TimedValue> events)
    : events_(std::move(events)) {
  std::sort(events_.begin(), events_.end());
  events_.erase(std::unique(events_.begin(), events_.end()), events_.end());
  for (std::size_t k = 1; k < events_.size(); ++k) {
    if (events_[k].time == events_[k - 1].time) {
      fail(ErrorCode::kNotWellOrdered,
           "two distinct events at time " + to_string(events_[k].time));
    }
  }
}

bool EventHistory::contains(const TimedValue& e) const {
  return std::binary_search(events_.begin(), events_.end(), e);
}

EventHistory EventHistory::with(const TimedValue& e) const {
  std::vector<TimedValue> next = events_;
  next.push_back(e);
  return EventHistory(std::move(next));
}

std::vector<TimedValue> EventHistory::minus(const EventHistory& other) const {
  std::vector<TimedValue> out;
  std::set_difference(events_.begin(), events_.end(), other.events_.begin(),
                      other.events_.end(), std::back_inserter(out));
  return out;
}

EventHistory EventHistory::before(const Rational& t) const {
  EventHistory h;
  for (const auto& e : events_) {
    if (e.time < t) h.events_.push_back(e);
  }
  return h;
}

bool EventHistory::is_initial_segment_of(const EventHistory& other) const {
  if (!std::includes(other.events_.begin(), other.events_.end(),
                     events_.begin(), events_.end())) {
    return false;
  }
  if (events_.empty()) return true;
  const Rational& last = events_.back().time;
  for (const auto& e : other.minus(*this)) {
    if (!(last < e.time)) return false;
  }
  return true;
}

std::vector<TimedValue> symmetric_difference(const EventHistory& a,
                                             const EventHistory& b) {
  std::vector<TimedValue> out;
  std::set_symmetric_difference(a.events().begin(), a.events().end(),
                                b.events().begin(), b.events().end(),
                                std::back_inserter(out));
  return out;
}

std::int64_t Value::as_int() const {
  if (auto* p = std::get_if<std::int64_t>(&data_)) return *p;
  fail(ErrorCode::kDomainMismatch,
       "value " + to_string(*this) + " is not a scalar");
}

const TokenSeq& Value::as_seq() const {
  if (auto* p = std::get_if<TokenSeq>(&data_)) return *p;
  fail(ErrorCode::kDomainMismatch,
       "value " + to_string(*this) + " is not a token sequence");
}

const EventHistory& Value::as_events() const {
  if (auto* p = std::get_if<EventHistory>(&data_)) return *p;
  fail(ErrorCode::kDomainMismatch,
       "value " + to_string(*this) + " is not an event history");
}

bool operator<(const Value& a, const Value& b) {
  if (a.domain_ != b.domain_) return a.domain_ < b.domain_;
  return a.data_ < b.data_;
}

std::string to_string(const TokenSeq& s) {
  std::string out = "<";
  for (std::size_t k = 0; k < s.tokens.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(s.tokens[k]);
  }
  return out + ">";
}

std::string to_string(const EventHistory& h) {
  std::string out = "{";
  bool first = true;
  for (const auto& e : h.events()) {
    if (!first) out += ",";
    first = false;
    out += "(" + std::to_string(e.value) + "," + to_string(e.time) + ")";
  }
  return out + "}";
}

std::string to_string(const Value& v) {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(d);
        } else {
          return to_string(d);
        }
      },
      v.data());
}

std::string to_string(const Tuple& t) {
  std::string out = "{";
  bool first = true;
  for (const auto& [label, value] : t) {
    if (!first) out += ",";
    first = false;
    out += "(" + label.name() + "," + to_string(value) + ")";
  }
  return out + "}";
}

Tuple restrict(const Tuple& t, const LabelSet& labels) {
  Tuple out;
  for (const auto& [label, value] : t) {
    if (labels.count(label)) out.emplace(label, value);
  }
  return out;
}

LabelSet keys(const Tuple& t) {
  LabelSet out;
  for (const auto& kv : t) out.insert(kv.first);
  return out;
}

}  // namespace sysalg
