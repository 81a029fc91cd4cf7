#pragma once

#include <random>
#include <string>
#include <vector>

#include "sysalg/algebra.hpp"
#include "sysalg/causal.hpp"
#include "sysalg/functional.hpp"
#include "sysalg/kahn.hpp"
#include "sysalg/order.hpp"
#include "sysalg/port_graph.hpp"

// Named systems and random diagram generators shared by the CLI and tests.
namespace sysalg::presets {

// {0, 1} with no order between the two bits.
std::shared_ptr<const FiniteOrder> bit_domain();

// i1, i2 -> o1 = 1 - x1, o2 = 1 - x2, o3 = x1.
FunctionalSystem inverter_pair();

// Prefers 0 over 1 whenever both are fixed points.
Chooser prefer_zero();

SystemAlgebra<FunctionalSystem> prefer_zero_algebra();

// inverter_pair with the two feedback wires {i2,o1} and {i1,o2}.
Diagram<FunctionalSystem> prefer_zero_diagram();

// Four boxes s1..s4 and wires i1-j1, i2-k1, j4-k2.
Diagram<PortGraph> four_box_diagram();

// 1-4 boxes of 1-3 ports and up to 3 random wires.
Diagram<PortGraph> random_port_graph_diagram(std::mt19937_64& rng);

// Campaign domains: alphabet {0,1,2} with L = 6, and horizon 3.
SeqDomainPtr campaign_seq_domain();
EventDomainPtr campaign_event_domain();

// 1-3 stdlib blocks (arithmetic mod 3) and up to 3 random channels,
// feedback included.
Diagram<FunctionalSystem> random_kahn_diagram(const SeqDomainPtr& d, std::mt19937_64& rng);

// 1-3 delay, clock and adder blocks and up to 3 random channels.
Diagram<FunctionalSystem> random_causal_diagram(const EventDomainPtr& d, std::mt19937_64& rng);

std::vector<std::string> names();

}  // namespace sysalg::presets
