#include "sysalg/network.hpp"

#include <algorithm>
#include <set>

#include "sysalg/error.hpp"

namespace sysalg {

namespace {

// Ports of a table node: its labels with the "<name>." prefix removed.
std::vector<std::string> table_ports(const std::string& name, const LabelSet& labels) {
  std::vector<std::string> out;
  const std::string prefix = name + ".";
  for (const auto& l : labels) {
    if (l.name().rfind(prefix, 0) != 0) {
      fail(ErrorCode::kValidationError,
           "label " + l.name() + " of node " + name + " lacks prefix " + prefix);
    }
    out.push_back(l.name().substr(prefix.size()));
  }
  return out;
}

std::vector<PortRef> refs(const std::string& node, const std::vector<std::string>& ports) {
  std::vector<PortRef> out;
  for (const auto& p : ports) out.push_back({node, p});
  return out;
}

}  // namespace

std::vector<PortRef> Network::input_ports(const std::string& node) const {
  auto it = nodes.find(node);
  if (it == nodes.end()) fail(ErrorCode::kValidationError, "unknown block " + node);
  if (auto* b = std::get_if<ProcessBlock>(&it->second)) return refs(node, b->inputs);
  const auto& s = std::get<FunctionalSystem>(it->second);
  return refs(node, table_ports(node, s.signature().inputs));
}

std::vector<PortRef> Network::output_ports(const std::string& node) const {
  auto it = nodes.find(node);
  if (it == nodes.end()) fail(ErrorCode::kValidationError, "unknown block " + node);
  if (auto* b = std::get_if<ProcessBlock>(&it->second)) return refs(node, b->outputs);
  const auto& s = std::get<FunctionalSystem>(it->second);
  return refs(node, table_ports(node, s.signature().outputs));
}

void Network::validate() const {
  if (!domain) fail(ErrorCode::kValidationError, "network has no domain");
  for (const auto& [name, node] : nodes) {
    if (auto* s = std::get_if<FunctionalSystem>(&node)) {
      if (s->domain()->id() != domain->id()) {
        fail(ErrorCode::kValidationError, "table block " + name + " is over " +
                                              s->domain()->id().name());
      }
    }
  }
  std::set<PortRef> driven, used;
  for (const auto& w : wires) {
    const auto outs = output_ports(w.from.block);
    if (std::find(outs.begin(), outs.end(), w.from) == outs.end()) {
      fail(ErrorCode::kValidationError,
           "unknown output port " + w.from.label().name());
    }
    const auto ins = input_ports(w.to.block);
    if (std::find(ins.begin(), ins.end(), w.to) == ins.end()) {
      fail(ErrorCode::kValidationError, "unknown input port " + w.to.label().name());
    }
    if (!driven.insert(w.to).second) {
      fail(ErrorCode::kValidationError,
           "input port " + w.to.label().name() + " is driven twice");
    }
    if (!used.insert(w.from).second) {
      fail(ErrorCode::kValidationError,
           "output port " + w.from.label().name() + " feeds two wires");
    }
  }
}

LabelSet Network::free_inputs() const {
  std::set<PortRef> driven;
  for (const auto& w : wires) driven.insert(w.to);
  LabelSet out;
  for (const auto& [name, node] : nodes) {
    for (const auto& p : input_ports(name)) {
      if (!driven.count(p)) out.insert(p.label());
    }
  }
  return out;
}

LabelSet Network::free_outputs() const {
  std::set<PortRef> used;
  for (const auto& w : wires) used.insert(w.from);
  LabelSet out;
  for (const auto& [name, node] : nodes) {
    for (const auto& p : output_ports(name)) {
      if (!used.count(p)) out.insert(p.label());
    }
  }
  return out;
}

}  // namespace sysalg
