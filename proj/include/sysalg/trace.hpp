#pragma once

#include <string>
#include <vector>

#include "sysalg/value.hpp"

namespace sysalg {

// One channel of a run. The history's domain id is the record's domain tag.
struct TraceRecord {
  Label label;
  Value history;
  bool truncated = false;
};

// "# sysalg trace v1", then "# <key> <value>" header lines in the given
// order, then one line per record sorted by label:
//
//   <label> <domain-tag> <history> complete|truncated
//
// Histories: integers as is, sequences as <1,2>, event sets as
// [(v,num,den),...] in time order.
std::string format_trace(std::vector<TraceRecord> records,
                         const std::vector<std::pair<std::string, std::string>>& header = {});

std::string trace_history(const Value& v);

}  // namespace sysalg
