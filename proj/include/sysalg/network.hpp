#pragma once

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "sysalg/functional.hpp"
#include "sysalg/order.hpp"
#include "sysalg/value.hpp"

namespace sysalg {

// ---------------------------------------------------------------------------
// Kahn processes: sequential programs that block on reads.

struct Action {
  enum class Kind { kRead, kEmit, kHalt };
  Kind kind = Kind::kHalt;
  std::string port;
  Token token = 0;

  static Action read(std::string port) { return {Kind::kRead, std::move(port), 0}; }
  static Action emit(std::string port, Token t) {
    return {Kind::kEmit, std::move(port), t};
  }
  static Action halt() { return {}; }
};

// One run of a process. next() yields the next action; after a read the
// runner calls deliver() with the token before asking again.
struct Process {
  std::function<Action()> next;
  std::function<void(Token)> deliver;
};

struct ProcessBlock {
  std::string kind;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::function<Process()> start;
};

// ---------------------------------------------------------------------------
// Networks of blocks.

struct PortRef {
  std::string block;
  std::string port;

  Label label() const { return Label(block + "." + port); }
  friend auto operator<=>(const PortRef&, const PortRef&) = default;
};

struct Wire {
  PortRef from;  // output port
  PortRef to;    // input port

  friend auto operator<=>(const Wire&, const Wire&) = default;
};

// A node is a process block or a table-backed system over the same domain
// whose labels are "<name>.<port>".
using NetNode = std::variant<ProcessBlock, FunctionalSystem>;

struct Network {
  DomainPtr domain;
  std::map<std::string, NetNode> nodes;
  std::vector<Wire> wires;

  // Throws ValidationError for unknown ports, an input driven twice, or an
  // output used twice.
  void validate() const;

  std::vector<PortRef> input_ports(const std::string& node) const;
  std::vector<PortRef> output_ports(const std::string& node) const;
  // Unwired input ports (the network's external inputs) and unwired outputs.
  LabelSet free_inputs() const;
  LabelSet free_outputs() const;
};

}  // namespace sysalg
