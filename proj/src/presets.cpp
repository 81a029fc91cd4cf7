#include "sysalg/presets.hpp"

#include <algorithm>

namespace sysalg::presets {

namespace {

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

std::size_t uniform(std::size_t lo, std::size_t hi, std::mt19937_64& rng) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Up to max_channels (input, output) pairs with no label reused.
std::vector<LabelPair> random_channels(const Diagram<FunctionalSystem>& d,
                                       std::size_t max_channels,
                                       std::mt19937_64& rng) {
  std::vector<Label> ins, outs;
  for (const auto& [name, s] : d.atoms) {
    ins.insert(ins.end(), s.signature().inputs.begin(), s.signature().inputs.end());
    outs.insert(outs.end(), s.signature().outputs.begin(), s.signature().outputs.end());
  }
  std::shuffle(ins.begin(), ins.end(), rng);
  std::shuffle(outs.begin(), outs.end(), rng);
  const std::size_t n =
      uniform(0, std::min({max_channels, ins.size(), outs.size()}), rng);
  std::vector<LabelPair> out;
  for (std::size_t k = 0; k < n; ++k) out.emplace_back(ins[k], outs[k]);
  return out;
}

}  // namespace

std::shared_ptr<const FiniteOrder> bit_domain() {
  static const auto d = make_discrete_order("bit", 2);
  return d;
}

FunctionalSystem inverter_pair() {
  const auto d = bit_domain();
  Signature sig{{"i1"_lbl, "i2"_lbl}, {"o1"_lbl, "o2"_lbl, "o3"_lbl}};
  return FunctionalSystem("s", sig, d, [d](const Tuple& x) {
    const auto x1 = x.at("i1"_lbl).as_int();
    const auto x2 = x.at("i2"_lbl).as_int();
    return Tuple{{"o1"_lbl, d->element(1 - x1)},
                 {"o2"_lbl, d->element(1 - x2)},
                 {"o3"_lbl, d->element(x1)}};
  });
}

Chooser prefer_zero() {
  return Chooser::prefer_listed({bit_domain()->element(0), bit_domain()->element(1)});
}

SystemAlgebra<FunctionalSystem> prefer_zero_algebra() {
  return functional_algebra("prefer-zero", prefer_zero());
}

Diagram<FunctionalSystem> prefer_zero_diagram() {
  return {{{"s", inverter_pair()}},
          {LabelPair("i2"_lbl, "o1"_lbl), LabelPair("i1"_lbl, "o2"_lbl)}};
}

Diagram<PortGraph> four_box_diagram() {
  using Ports = std::vector<std::string>;
  return {{{"s1", atomic("s1", Ports{"i1", "i2"})},
           {"s2", atomic("s2", Ports{"j1", "j2", "j3", "j4"})},
           {"s3", atomic("s3", Ports{"k1", "k2", "k3"})},
           {"s4", atomic("s4", Ports{"l1"})}},
          {LabelPair("i1"_lbl, "j1"_lbl), LabelPair("i2"_lbl, "k1"_lbl),
           LabelPair("j4"_lbl, "k2"_lbl)}};
}

Diagram<PortGraph> random_port_graph_diagram(std::mt19937_64& rng) {
  Diagram<PortGraph> d;
  std::vector<Label> labels;
  const std::size_t boxes = uniform(1, 4, rng);
  for (std::size_t b = 0; b < boxes; ++b) {
    const std::string box = "b" + std::to_string(b);
    std::vector<std::string> ports;
    const std::size_t n = uniform(1, 3, rng);
    for (std::size_t p = 0; p < n; ++p) {
      ports.push_back(box + "p" + std::to_string(p));
      labels.emplace_back(ports.back());
    }
    d.atoms.emplace_back(box, atomic(box, ports));
  }
  std::shuffle(labels.begin(), labels.end(), rng);
  const std::size_t wires = uniform(0, std::min<std::size_t>(3, labels.size() / 2), rng);
  for (std::size_t w = 0; w < wires; ++w) {
    d.connections.emplace_back(labels[2 * w], labels[2 * w + 1]);
  }
  return d;
}

SeqDomainPtr campaign_seq_domain() { return make_seq_domain({0, 1, 2}, 6); }

EventDomainPtr campaign_event_domain() { return event_order(Rational(3)); }

Diagram<FunctionalSystem> random_kahn_diagram(const SeqDomainPtr& d, std::mt19937_64& rng) {
  const std::vector<std::string> kinds = {"copy",   "dup",       "delay", "add",
                                          "adder",  "filter",    "source", "alternate"};
  Diagram<FunctionalSystem> diagram;
  const std::size_t n = uniform(1, 3, rng);
  for (std::size_t k = 0; k < n; ++k) {
    const std::string& kind = pick(kinds, rng);
    const Token t = static_cast<Token>(uniform(0, 2, rng));
    ProcessBlock b;
    if (kind == "copy") b = blocks::copy();
    else if (kind == "dup") b = blocks::dup();
    else if (kind == "delay") b = blocks::delay({t});
    else if (kind == "add") b = blocks::add(1, 3);
    else if (kind == "adder") b = blocks::adder(3);
    else if (kind == "filter") b = blocks::filter(t);
    else if (kind == "source") b = blocks::source({t, (t + 1) % 3});
    else b = blocks::alternate();
    const std::string name = "n" + std::to_string(k);
    diagram.atoms.emplace_back(name, lift_process(b, name, d));
  }
  diagram.connections = random_channels(diagram, 3, rng);
  return diagram;
}

Diagram<FunctionalSystem> random_causal_diagram(const EventDomainPtr& d,
                                                std::mt19937_64& rng) {
  const std::vector<Rational> deltas = {Rational(1, 2), Rational(1)};
  Diagram<FunctionalSystem> diagram;
  const std::size_t n = uniform(1, 3, rng);
  for (std::size_t k = 0; k < n; ++k) {
    const std::string name = "n" + std::to_string(k);
    switch (uniform(0, 2, rng)) {
      case 0:
        diagram.atoms.emplace_back(name, causal_blocks::delay(name, pick(deltas, rng), d));
        break;
      case 1:
        diagram.atoms.emplace_back(
            name, causal_blocks::clock(name, Rational(1), pick(deltas, rng) - Rational(1, 2), d));
        break;
      default:
        diagram.atoms.emplace_back(name, causal_blocks::adder(name, pick(deltas, rng), d));
        break;
    }
  }
  diagram.connections = random_channels(diagram, 3, rng);
  return diagram;
}

std::vector<std::string> names() {
  return {"port-graph", "kahn", "causal", "prefer-zero-counterexample"};
}

}  // namespace sysalg::presets
