#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sysalg/algebra.hpp"
#include "sysalg/value.hpp"

namespace sysalg {

struct Endpoint {
  std::string box;
  std::string port;

  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

// Flat diagram: named boxes with ports, wires between endpoints, and the
// free ports exposed under labels. All containers are ordered, so equality
// is structural equality of the canonical form.
struct PortGraph {
  std::map<std::string, std::set<std::string>> boxes;
  std::set<std::pair<Endpoint, Endpoint>> wires;  // first < second
  std::map<Label, Endpoint> free_ports;

  LabelSet labels() const;

  friend bool operator==(const PortGraph&, const PortGraph&) = default;
};

// One box whose ports are exposed under labels named like the ports.
PortGraph atomic(const std::string& box, const std::vector<std::string>& ports);
// One box with explicit label -> port naming.
PortGraph atomic(const std::string& box,
                 const std::vector<std::pair<Label, std::string>>& ports);

// Throws LabelClash or BoxNameClash.
PortGraph pg_parallel(const PortGraph& a, const PortGraph& b);
// Throws NotConnectable unless both labels are free and distinct.
PortGraph pg_connect(const LabelPair& pair, const PortGraph& g);

std::string to_string(const PortGraph& g);

SystemAlgebra<PortGraph> port_graph_algebra();

// Injected bugs for checking that the witness notices them.
enum class PortGraphMutation {
  kNone,
  kDropWire,  // connect inside a two-box graph records no wire
  kSwapLabels,     // par swaps the endpoints of the right operand's first two labels
};
SystemAlgebra<PortGraph> port_graph_algebra(PortGraphMutation mutation);

// s0, s1, r1, r2 with labels "<box>^1" and "<box>^2" (ports "1" and "2").
// rename maps each default label name to the one actually used.
BroadcastParties<PortGraph> broadcast_parties(
    const std::map<std::string, std::string>& rename = {});

// The witness on the port-graph algebra; throws WitnessFailed.
WitnessReport broadcast_impossibility_witness();

}  // namespace sysalg
