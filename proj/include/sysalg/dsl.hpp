#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sysalg/algebra.hpp"
#include "sysalg/error.hpp"
#include "sysalg/functional.hpp"
#include "sysalg/network.hpp"
#include "sysalg/port_graph.hpp"
#include "sysalg/value.hpp"

// Network description language.
//
//   net    := domain block* wire* input*
//   domain := "domain" ( "kahn" "(" "alphabet" "=" "{" ints "}" ["," "L" "=" int] ")"
//                      | "causal" ["(" ["horizon" "=" rat] ")"]
//                      | "finite" "(" "size" "=" int ["," "order" "=" ("discrete"|"chain")] ")"
//                      | "graph" )
//   block  := "block" NAME ":" KIND "(" [arg ("," arg)*] ")"
//   arg    := rat | STRING | NAME
//   wire   := NAME "." PORT "->" NAME "." PORT
//   input  := "input" NAME "." PORT "=" literal
//   literal := int | "<" [ints] ">" | "{" [ "(" int "," rat ")" ("," ...)* ] "}"
//
// "#" starts a comment running to the end of the line. Graph-domain blocks
// are box(p, q, ...) whose ports are labeled by their bare names; the other
// domains label port p of block b as "b.p". table("file") loads a truth table.
namespace sysalg::dsl {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

class ParseError : public Error {
 public:
  ParseError(SourcePos pos, std::string expected, std::string lexeme);

  const SourcePos& pos() const { return pos_; }
  const std::string& expected() const { return expected_; }
  const std::string& lexeme() const { return lexeme_; }

 private:
  SourcePos pos_;
  std::string expected_;
  std::string lexeme_;
};

struct DomainDecl {
  enum class Kind { kKahn, kCausal, kFinite, kGraph };
  Kind kind = Kind::kKahn;
  std::vector<Token> alphabet;           // kahn
  std::optional<std::size_t> max_len;    // kahn
  std::optional<Rational> horizon;       // causal
  std::size_t size = 0;                  // finite
  bool chain = false;                    // finite

  friend bool operator==(const DomainDecl&, const DomainDecl&) = default;
};

struct BlockArg {
  enum class Kind { kNumber, kString, kName };
  Kind kind = Kind::kNumber;
  Rational number;
  std::string text;

  friend bool operator==(const BlockArg&, const BlockArg&) = default;
};

// Integer, token sequence, or raw event list (checked when built).
using Literal = std::variant<Token, TokenSeq, std::vector<TimedValue>>;

struct BlockDecl {
  std::string name;
  std::string kind;
  std::vector<BlockArg> args;
  SourcePos pos;
};

struct WireDecl {
  PortRef from;
  PortRef to;
  SourcePos pos;
};

struct InputDecl {
  PortRef port;
  Literal value;
  SourcePos pos;
};

struct NetworkDescription {
  DomainDecl domain;
  std::vector<BlockDecl> blocks;
  std::vector<WireDecl> wires;
  std::vector<InputDecl> inputs;
};

// Same declarations, positions ignored.
bool same_declarations(const NetworkDescription& a, const NetworkDescription& b);

// Syntax only. Throws ParseError.
NetworkDescription parse_syntax(std::string_view text);

// Input file: input declarations only.
std::vector<InputDecl> parse_inputs(std::string_view text);

std::string pretty(const NetworkDescription& d);
std::string to_string(const Literal& lit);

// Truth-table file:
//   inputs PORT*
//   outputs PORT*
//   (PORT "=" literal)* "->" (PORT "=" literal)*     one row per input tuple
struct TableFile {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::pair<std::vector<Literal>, std::vector<Literal>>> rows;  // in port order
};
TableFile parse_table(std::string_view text);

// Semantic form of a description.
struct BuiltNet {
  DomainDecl::Kind kind = DomainDecl::Kind::kKahn;
  DomainPtr domain;          // not set for graph nets
  Network network;           // kahn, causal, finite
  PortGraph graph;           // graph
  Diagram<PortGraph> graph_diagram;
  std::map<Label, Value> inputs;
};

// Resolves blocks (tables relative to base_dir), checks wires and inputs.
// Throws ValidationError naming the offending declaration, IoError for an
// unreadable table.
BuiltNet build(const NetworkDescription& d, const std::filesystem::path& base_dir = {});

// Converts one literal to a value of the net's domain; throws ValidationError.
Value literal_value(const BuiltNet& net, const Literal& lit);

// The atoms and channels of a non-graph net, for composition-order checks.
Diagram<FunctionalSystem> functional_diagram(const BuiltNet& net);

// parse_syntax followed by build.
BuiltNet parse(std::string_view text, const std::filesystem::path& base_dir = {});

// Reads a whole file; throws IoError.
std::string read_file(const std::filesystem::path& p);

}  // namespace sysalg::dsl
