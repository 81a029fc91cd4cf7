#include "sysalg/port_graph.hpp"

#include "sysalg/error.hpp"

namespace sysalg {

LabelSet PortGraph::labels() const {
  LabelSet out;
  for (const auto& kv : free_ports) out.insert(kv.first);
  return out;
}

namespace {

std::string endpoint_string(const Endpoint& e) { return e.box + "." + e.port; }

}  // namespace

PortGraph atomic(const std::string& box, const std::vector<std::string>& ports) {
  std::vector<std::pair<Label, std::string>> named;
  for (const auto& p : ports) named.emplace_back(Label(p), p);
  return atomic(box, named);
}

PortGraph atomic(const std::string& box,
                 const std::vector<std::pair<Label, std::string>>& ports) {
  PortGraph g;
  auto& port_set = g.boxes[box];
  for (const auto& [label, port] : ports) {
    if (!port_set.insert(port).second) {
      fail(ErrorCode::kInvalidArgument, "box " + box + " repeats port " + port);
    }
    if (!g.free_ports.emplace(label, Endpoint{box, port}).second) {
      fail(ErrorCode::kLabelClash, "box " + box + " repeats label " + label.name());
    }
  }
  return g;
}

PortGraph pg_parallel(const PortGraph& a, const PortGraph& b) {
  PortGraph out = a;
  for (const auto& [name, ports] : b.boxes) {
    if (!out.boxes.emplace(name, ports).second) {
      fail(ErrorCode::kBoxNameClash, "box " + name + " on both sides");
    }
  }
  for (const auto& [label, ep] : b.free_ports) {
    if (!out.free_ports.emplace(label, ep).second) {
      fail(ErrorCode::kLabelClash, "label " + label.name() + " on both sides");
    }
  }
  out.wires.insert(b.wires.begin(), b.wires.end());
  return out;
}

PortGraph pg_connect(const LabelPair& pair, const PortGraph& g) {
  auto a = g.free_ports.find(pair.first);
  auto b = g.free_ports.find(pair.second);
  if (pair.first == pair.second || a == g.free_ports.end() ||
      b == g.free_ports.end()) {
    fail(ErrorCode::kNotConnectable,
         "labels " + to_string(pair) + " are not two distinct free ports");
  }
  PortGraph out = g;
  Endpoint x = a->second;
  Endpoint y = b->second;
  if (y < x) std::swap(x, y);
  out.wires.emplace(x, y);
  out.free_ports.erase(pair.first);
  out.free_ports.erase(pair.second);
  return out;
}

std::string to_string(const PortGraph& g) {
  std::string out = "boxes{";
  bool first = true;
  for (const auto& [name, ports] : g.boxes) {
    if (!first) out += ",";
    first = false;
    out += name + "(";
    bool fp = true;
    for (const auto& p : ports) {
      if (!fp) out += ",";
      fp = false;
      out += p;
    }
    out += ")";
  }
  out += "} wires{";
  first = true;
  for (const auto& [x, y] : g.wires) {
    if (!first) out += ",";
    first = false;
    out += endpoint_string(x) + "-" + endpoint_string(y);
  }
  out += "} free{";
  first = true;
  for (const auto& [label, ep] : g.free_ports) {
    if (!first) out += ",";
    first = false;
    out += label.name() + "=" + endpoint_string(ep);
  }
  return out + "}";
}

SystemAlgebra<PortGraph> port_graph_algebra() {
  return port_graph_algebra(PortGraphMutation::kNone);
}

SystemAlgebra<PortGraph> port_graph_algebra(PortGraphMutation mutation) {
  SystemAlgebra<PortGraph> alg;
  alg.name = "port-graph";
  alg.labels_of = [](const PortGraph& g) { return g.labels(); };
  alg.connectable = [](const PortGraph& g, const LabelPair& p) {
    return p.first != p.second && g.free_ports.count(p.first) &&
           g.free_ports.count(p.second);
  };
  alg.par = pg_parallel;
  alg.connect = pg_connect;
  alg.equal = [](const PortGraph& a, const PortGraph& b) { return a == b; };
  alg.describe = [](const PortGraph& g) { return to_string(g); };

  switch (mutation) {
    case PortGraphMutation::kNone:
      break;
    case PortGraphMutation::kDropWire:
      alg.name = "port-graph[drop-wire]";
      alg.connect = [](const LabelPair& p, const PortGraph& g) {
        PortGraph out = pg_connect(p, g);
        if (g.boxes.size() == 2) out.wires = g.wires;
        return out;
      };
      break;
    case PortGraphMutation::kSwapLabels:
      alg.name = "port-graph[swap-label]";
      alg.par = [](const PortGraph& a, const PortGraph& b) {
        PortGraph right = b;
        if (right.free_ports.size() >= 2) {
          auto it = right.free_ports.begin();
          auto jt = std::next(it);
          std::swap(it->second, jt->second);
        }
        return pg_parallel(a, right);
      };
      break;
  }
  return alg;
}

BroadcastParties<PortGraph> broadcast_parties(
    const std::map<std::string, std::string>& rename) {
  auto label = [&](const std::string& box, const std::string& port) {
    const std::string name = box + "^" + port;
    auto it = rename.find(name);
    return Label(it == rename.end() ? name : it->second);
  };
  auto party = [&](const std::string& box) {
    return atomic(box, {{label(box, "1"), "1"}, {label(box, "2"), "2"}});
  };
  BroadcastParties<PortGraph> p;
  p.s0 = party("s0");
  p.s1 = party("s1");
  p.r1 = party("r1");
  p.r2 = party("r2");
  p.s0_1 = label("s0", "1");
  p.s0_2 = label("s0", "2");
  p.s1_1 = label("s1", "1");
  p.s1_2 = label("s1", "2");
  p.r1_1 = label("r1", "1");
  p.r1_2 = label("r1", "2");
  p.r2_1 = label("r2", "1");
  p.r2_2 = label("r2", "2");
  return p;
}

WitnessReport broadcast_impossibility_witness() {
  return broadcast_witness(port_graph_algebra(), broadcast_parties());
}

}  // namespace sysalg
