#include "sysalg/trace.hpp"

#include <algorithm>
#include <sstream>

namespace sysalg {

std::string trace_history(const Value& v) {
  if (std::holds_alternative<EventHistory>(v.data())) {
    std::string out = "[";
    bool first = true;
    for (const auto& e : v.as_events().events()) {
      if (!first) out += ",";
      first = false;
      out += "(" + std::to_string(e.value) + "," + std::to_string(e.time.numerator()) + "," +
             std::to_string(e.time.denominator()) + ")";
    }
    return out + "]";
  }
  return to_string(v);
}

std::string format_trace(std::vector<TraceRecord> records,
                         const std::vector<std::pair<std::string, std::string>>& header) {
  std::sort(records.begin(), records.end(),
            [](const TraceRecord& a, const TraceRecord& b) { return a.label < b.label; });
  std::ostringstream os;
  os << "# sysalg trace v1\n";
  for (const auto& [k, v] : header) os << "# " << k << " " << v << "\n";
  for (const auto& r : records) {
    os << r.label.name() << " " << r.history.domain().name() << " " << trace_history(r.history)
       << " " << (r.truncated ? "truncated" : "complete") << "\n";
  }
  return os.str();
}

}  // namespace sysalg
