#include "sysalg/dsl.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "sysalg/causal.hpp"
#include "sysalg/kahn.hpp"

namespace sysalg::dsl {

using sysalg::to_string;

ParseError::ParseError(SourcePos pos, std::string expected, std::string lexeme)
    : Error(ErrorCode::kParseError,
            std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": expected " +
                expected + ", got " + lexeme),
      pos_(pos),
      expected_(std::move(expected)),
      lexeme_(std::move(lexeme)) {}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class TokKind { kWord, kInt, kString, kSymbol, kEnd };

struct Tok {
  TokKind kind = TokKind::kEnd;
  std::string text;
  SourcePos pos;

  std::string shown() const {
    if (kind == TokKind::kEnd) return "end of input";
    if (kind == TokKind::kString) return "string \"" + text + "\"";
    return "'" + text + "'";
  }
};

bool word_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

std::vector<Tok> lex(std::string_view src) {
  std::vector<Tok> out;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Tok t;
    t.pos = pos;
    std::size_t n = 1;
    if (word_start(c)) {
      t.kind = TokKind::kWord;
      while (i + n < src.size() && word_char(src[i + n])) ++n;
      t.text = std::string(src.substr(i, n));
    } else if (digit(c) || (c == '-' && i + 1 < src.size() && digit(src[i + 1]))) {
      t.kind = TokKind::kInt;
      while (i + n < src.size() && digit(src[i + n])) ++n;
      t.text = std::string(src.substr(i, n));
      if (i + n < src.size() && word_start(src[i + n])) {
        throw ParseError(pos, "number", "'" + std::string(src.substr(i, n + 1)) + "'");
      }
    } else if (c == '"') {
      t.kind = TokKind::kString;
      while (true) {
        if (i + n >= src.size() || src[i + n] == '\n') {
          throw ParseError(pos, "closing '\"'", "unterminated string");
        }
        if (src[i + n] == '"') break;
        if (src[i + n] == '\\' && i + n + 1 < src.size()) ++n;
        t.text += src[i + n];
        ++n;
      }
      ++n;
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = TokKind::kSymbol;
      t.text = "->";
      n = 2;
    } else if (std::string_view("(){}<>,=:./").find(c) != std::string_view::npos) {
      t.kind = TokKind::kSymbol;
      t.text = std::string(1, c);
    } else {
      throw ParseError(pos, "a token", "'" + std::string(1, c) + "'");
    }
    advance(n);
    out.push_back(std::move(t));
  }
  Tok end;
  end.pos = pos;
  out.push_back(end);
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  const Tok& peek(std::size_t ahead = 0) const {
    return toks_[std::min(at_ + ahead, toks_.size() - 1)];
  }
  Tok next() {
    Tok t = peek();
    if (at_ < toks_.size() - 1) ++at_;
    return t;
  }
  bool at_end() const { return peek().kind == TokKind::kEnd; }

  bool is_symbol(const char* s, std::size_t ahead = 0) const {
    return peek(ahead).kind == TokKind::kSymbol && peek(ahead).text == s;
  }
  bool is_word(const char* w) const {
    return peek().kind == TokKind::kWord && peek().text == w;
  }

  [[noreturn]] void expected(const std::string& what) const {
    throw ParseError(peek().pos, what, peek().shown());
  }

  void symbol(const char* s) {
    if (!is_symbol(s)) expected(std::string("'") + s + "'");
    next();
  }
  void keyword(const char* w) {
    if (!is_word(w)) expected(std::string("'") + w + "'");
    next();
  }
  std::string name(const std::string& what) {
    if (peek().kind != TokKind::kWord) expected(what);
    return next().text;
  }
  // Ports may be numbered.
  std::string port() {
    if (peek().kind != TokKind::kWord && peek().kind != TokKind::kInt) expected("port name");
    return next().text;
  }

  Token integer() {
    if (peek().kind != TokKind::kInt) expected("integer");
    const Tok t = next();
    try {
      return std::stoll(t.text);
    } catch (const std::exception&) {
      throw ParseError(t.pos, "integer in range", t.shown());
    }
  }

  Rational rational() {
    const Token num = integer();
    if (!is_symbol("/")) return Rational(num);
    next();
    const Tok at = peek();
    const Token den = integer();
    if (den <= 0) throw ParseError(at.pos, "positive denominator", at.shown());
    return Rational(num, den);
  }

  std::vector<Token> int_set() {
    symbol("{");
    std::vector<Token> out;
    if (!is_symbol("}")) {
      out.push_back(integer());
      while (is_symbol(",")) {
        next();
        out.push_back(integer());
      }
    }
    symbol("}");
    return out;
  }

  Literal literal() {
    if (peek().kind == TokKind::kInt) return integer();
    if (is_symbol("<")) {
      next();
      TokenSeq s;
      if (!is_symbol(">")) {
        s.tokens.push_back(integer());
        while (is_symbol(",")) {
          next();
          s.tokens.push_back(integer());
        }
      }
      symbol(">");
      return s;
    }
    if (is_symbol("{")) {
      next();
      std::vector<TimedValue> evs;
      auto event = [&] {
        symbol("(");
        TimedValue e;
        e.value = integer();
        symbol(",");
        e.time = rational();
        symbol(")");
        evs.push_back(e);
      };
      if (!is_symbol("}")) {
        event();
        while (is_symbol(",")) {
          next();
          event();
        }
      }
      symbol("}");
      return evs;
    }
    expected("literal (integer, <...> or {...})");
  }

  PortRef port_ref() {
    PortRef p;
    p.block = name("block name");
    symbol(".");
    p.port = port();
    return p;
  }

  DomainDecl domain() {
    keyword("domain");
    DomainDecl d;
    const Tok kind = peek();
    if (is_word("kahn")) {
      next();
      d.kind = DomainDecl::Kind::kKahn;
      symbol("(");
      bool have_alphabet = false;
      params([&](const std::string& key) {
        if (key == "alphabet") {
          d.alphabet = int_set();
          have_alphabet = true;
        } else if (key == "L") {
          const Tok at = peek();
          const Token l = integer();
          if (l < 0) throw ParseError(at.pos, "nonnegative L", at.shown());
          d.max_len = static_cast<std::size_t>(l);
        } else {
          return false;
        }
        return true;
      }, "parameter alphabet or L");
      if (!have_alphabet || d.alphabet.empty()) {
        throw ParseError(kind.pos, "nonempty alphabet parameter", kind.shown());
      }
    } else if (is_word("causal")) {
      next();
      d.kind = DomainDecl::Kind::kCausal;
      if (is_symbol("(")) {
        next();
        params([&](const std::string& key) {
          if (key != "horizon") return false;
          d.horizon = rational();
          return true;
        }, "parameter horizon");
      }
    } else if (is_word("finite")) {
      next();
      d.kind = DomainDecl::Kind::kFinite;
      symbol("(");
      params([&](const std::string& key) {
        if (key == "size") {
          const Tok at = peek();
          const Token n = integer();
          if (n < 1) throw ParseError(at.pos, "positive size", at.shown());
          d.size = static_cast<std::size_t>(n);
        } else if (key == "order") {
          if (is_word("chain")) {
            d.chain = true;
          } else if (!is_word("discrete")) {
            expected("'discrete' or 'chain'");
          }
          next();
        } else {
          return false;
        }
        return true;
      }, "parameter size or order");
      if (d.size == 0) throw ParseError(kind.pos, "size parameter", kind.shown());
    } else if (is_word("graph")) {
      next();
      d.kind = DomainDecl::Kind::kGraph;
      if (is_symbol("(")) {
        next();
        symbol(")");
      }
    } else {
      expected("domain kind (kahn, causal, finite or graph)");
    }
    return d;
  }

  // key "=" value ("," key "=" value)* ")"; the opening "(" is consumed.
  template <class F>
  void params(F&& one, const std::string& what) {
    std::set<std::string> seen;
    if (is_symbol(")")) {
      next();
      return;
    }
    while (true) {
      if (peek().kind != TokKind::kWord) expected(what);
      const Tok key = next();
      if (!seen.insert(key.text).second) {
        throw ParseError(key.pos, what + " not given before", key.shown());
      }
      symbol("=");
      if (!one(key.text)) throw ParseError(key.pos, what, key.shown());
      if (is_symbol(",")) {
        next();
        continue;
      }
      symbol(")");
      return;
    }
  }

  BlockDecl block() {
    BlockDecl b;
    b.pos = peek().pos;
    keyword("block");
    b.name = name("block name");
    symbol(":");
    b.kind = name("block kind");
    symbol("(");
    auto arg = [&] {
      BlockArg a;
      if (peek().kind == TokKind::kInt) {
        a.kind = BlockArg::Kind::kNumber;
        a.number = rational();
      } else if (peek().kind == TokKind::kString) {
        a.kind = BlockArg::Kind::kString;
        a.text = next().text;
      } else if (peek().kind == TokKind::kWord) {
        a.kind = BlockArg::Kind::kName;
        a.text = next().text;
      } else {
        expected("argument");
      }
      b.args.push_back(std::move(a));
    };
    if (!is_symbol(")")) {
      arg();
      while (is_symbol(",")) {
        next();
        arg();
      }
    }
    symbol(")");
    return b;
  }

  WireDecl wire() {
    WireDecl w;
    w.pos = peek().pos;
    w.from = port_ref();
    symbol("->");
    w.to = port_ref();
    return w;
  }

  InputDecl input() {
    InputDecl in;
    in.pos = peek().pos;
    keyword("input");
    in.port = port_ref();
    symbol("=");
    in.value = literal();
    return in;
  }

  NetworkDescription net() {
    NetworkDescription d;
    d.domain = domain();
    enum { kBlocks, kWires, kInputs } section = kBlocks;
    while (!at_end()) {
      if (is_word("block")) {
        if (section == kWires) expected("wire or input");
        if (section == kInputs) expected("input");
        d.blocks.push_back(block());
      } else if (is_word("input")) {
        section = kInputs;
        d.inputs.push_back(input());
      } else if (peek().kind == TokKind::kWord) {
        if (section == kInputs) expected("input");
        section = kWires;
        d.wires.push_back(wire());
      } else {
        expected(section == kBlocks ? "block, wire or input"
                 : section == kWires ? "wire or input"
                                     : "input");
      }
    }
    return d;
  }

  std::vector<InputDecl> inputs() {
    std::vector<InputDecl> out;
    while (!at_end()) out.push_back(input());
    return out;
  }

  TableFile table() {
    TableFile t;
    keyword("inputs");
    while (!is_word("outputs")) {
      if (at_end()) expected("'outputs'");
      t.inputs.push_back(port());
    }
    next();
    // The output list ends where the first row starts.
    while (!at_end() && !is_symbol("->") && !is_symbol("=", 1)) t.outputs.push_back(port());
    auto side = [&](const std::vector<std::string>& ports) {
      std::vector<std::optional<Literal>> vals(ports.size());
      for (std::size_t k = 0; k < ports.size(); ++k) {
        const Tok at = peek();
        const std::string p = port();
        auto it = std::find(ports.begin(), ports.end(), p);
        if (it == ports.end() || vals[static_cast<std::size_t>(it - ports.begin())]) {
          throw ParseError(at.pos, "an unassigned port of this row", at.shown());
        }
        symbol("=");
        vals[static_cast<std::size_t>(it - ports.begin())] = literal();
      }
      std::vector<Literal> out;
      for (auto& v : vals) out.push_back(std::move(*v));
      return out;
    };
    while (!at_end()) {
      auto ins = side(t.inputs);
      symbol("->");
      auto outs = side(t.outputs);
      t.rows.emplace_back(std::move(ins), std::move(outs));
    }
    return t;
  }

 private:
  std::vector<Tok> toks_;
  std::size_t at_ = 0;
};

// ---------------------------------------------------------------------------

std::string where(const SourcePos& p) {
  return "line " + std::to_string(p.line) + ", column " + std::to_string(p.column) + ": ";
}

[[noreturn]] void invalid(const SourcePos& p, const std::string& msg) {
  fail(ErrorCode::kValidationError, where(p) + msg);
}

std::string arg_text(const BlockArg& a) {
  switch (a.kind) {
    case BlockArg::Kind::kNumber: return to_string(a.number);
    case BlockArg::Kind::kName: return a.text;
    case BlockArg::Kind::kString: {
      std::string out = "\"";
      for (char c : a.text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      return out + "\"";
    }
  }
  return {};
}

DomainPtr make_domain(const DomainDecl& d) {
  switch (d.kind) {
    case DomainDecl::Kind::kKahn:
      return make_seq_domain(d.alphabet, d.max_len.value_or(kDefaultMaxLen));
    case DomainDecl::Kind::kCausal:
      return event_order(d.horizon);
    case DomainDecl::Kind::kFinite:
      return d.chain ? DomainPtr(make_chain_order("chain" + std::to_string(d.size), d.size))
                     : DomainPtr(make_discrete_order("discrete" + std::to_string(d.size), d.size));
    case DomainDecl::Kind::kGraph:
      return nullptr;
  }
  return nullptr;
}

FunctionalSystem load_table(const BuiltNet& net, const BlockDecl& b,
                            const std::filesystem::path& base_dir) {
  if (b.args.size() != 1 || b.args[0].kind != BlockArg::Kind::kString) {
    invalid(b.pos, "table takes one file name string");
  }
  const std::filesystem::path file = base_dir / b.args[0].text;
  TableFile tf;
  try {
    tf = parse_table(read_file(file));
  } catch (const ParseError& e) {
    fail(ErrorCode::kParseError, file.string() + ":" + e.what());
  }
  Signature sig;
  auto label = [&](const std::string& p) { return Label(b.name + "." + p); };
  for (const auto& p : tf.inputs) sig.inputs.insert(label(p));
  for (const auto& p : tf.outputs) sig.outputs.insert(label(p));
  if (sig.inputs.size() != tf.inputs.size() || sig.outputs.size() != tf.outputs.size()) {
    invalid(b.pos, "table " + file.string() + " repeats a port");
  }
  TruthTable table;
  try {
    for (const auto& [ins, outs] : tf.rows) {
      Tuple x, y;
      for (std::size_t k = 0; k < ins.size(); ++k) x.emplace(label(tf.inputs[k]), literal_value(net, ins[k]));
      for (std::size_t k = 0; k < outs.size(); ++k) y.emplace(label(tf.outputs[k]), literal_value(net, outs[k]));
      if (!table.emplace(std::move(x), std::move(y)).second) {
        fail(ErrorCode::kValidationError, "two rows for one input");
      }
    }
    return FunctionalSystem::from_table(b.name, sig, net.domain, std::move(table));
  } catch (const Error& e) {
    invalid(b.pos, "table " + file.string() + ": " + e.what());
  }
}

void build_graph(const NetworkDescription& d, BuiltNet& net) {
  std::map<std::string, std::set<std::string>> ports;
  for (const auto& b : d.blocks) {
    if (b.kind != "box") invalid(b.pos, "graph blocks are box(...), not " + b.kind);
    if (!ports.emplace(b.name, std::set<std::string>{}).second) {
      invalid(b.pos, "block " + b.name + " is declared twice");
    }
    std::vector<std::string> names;
    for (const auto& a : b.args) {
      if (a.kind == BlockArg::Kind::kString) invalid(b.pos, "box ports are names");
      if (a.kind == BlockArg::Kind::kNumber && a.number.denominator() != 1) {
        invalid(b.pos, "box port " + to_string(a.number) + " is not a name");
      }
      names.push_back(arg_text(a));
      if (!ports[b.name].insert(names.back()).second) {
        invalid(b.pos, "box " + b.name + " repeats port " + names.back());
      }
    }
    PortGraph g = atomic(b.name, names);
    for (const auto& l : g.labels()) {
      if (net.graph.free_ports.count(l)) invalid(b.pos, "port label " + l.name() + " is used by two boxes");
    }
    net.graph = net.graph_diagram.atoms.empty() ? g : pg_parallel(net.graph, g);
    net.graph_diagram.atoms.emplace_back(b.name, std::move(g));
  }
  std::set<std::string> used;
  for (const auto& w : d.wires) {
    for (const PortRef& p : {w.from, w.to}) {
      auto it = ports.find(p.block);
      if (it == ports.end()) invalid(w.pos, "unknown block " + p.block);
      if (!it->second.count(p.port)) invalid(w.pos, "unknown port " + p.label().name());
      if (!used.insert(p.port).second) invalid(w.pos, "port " + p.label().name() + " is wired twice");
    }
    if (w.from.port == w.to.port) invalid(w.pos, "wire joins port " + w.from.port + " to itself");
    LabelPair pair{Label(w.from.port), Label(w.to.port)};
    net.graph = pg_connect(pair, net.graph);
    net.graph_diagram.connections.push_back(pair);
  }
  if (!d.inputs.empty()) invalid(d.inputs.front().pos, "graph nets take no inputs");
}

}  // namespace

// ---------------------------------------------------------------------------

bool same_declarations(const NetworkDescription& a, const NetworkDescription& b) {
  auto blocks_eq = [](const BlockDecl& x, const BlockDecl& y) {
    return x.name == y.name && x.kind == y.kind && x.args == y.args;
  };
  auto wires_eq = [](const WireDecl& x, const WireDecl& y) {
    return x.from == y.from && x.to == y.to;
  };
  auto inputs_eq = [](const InputDecl& x, const InputDecl& y) {
    return x.port == y.port && x.value == y.value;
  };
  return a.domain == b.domain &&
         std::equal(a.blocks.begin(), a.blocks.end(), b.blocks.begin(), b.blocks.end(), blocks_eq) &&
         std::equal(a.wires.begin(), a.wires.end(), b.wires.begin(), b.wires.end(), wires_eq) &&
         std::equal(a.inputs.begin(), a.inputs.end(), b.inputs.begin(), b.inputs.end(), inputs_eq);
}

NetworkDescription parse_syntax(std::string_view text) { return Parser(text).net(); }

std::vector<InputDecl> parse_inputs(std::string_view text) { return Parser(text).inputs(); }

TableFile parse_table(std::string_view text) { return Parser(text).table(); }

std::string to_string(const Literal& lit) {
  if (auto* n = std::get_if<Token>(&lit)) return std::to_string(*n);
  if (auto* s = std::get_if<TokenSeq>(&lit)) return sysalg::to_string(*s);
  std::string out = "{";
  const auto& evs = std::get<std::vector<TimedValue>>(lit);
  for (std::size_t k = 0; k < evs.size(); ++k) {
    if (k) out += ",";
    out += "(" + std::to_string(evs[k].value) + "," + sysalg::to_string(evs[k].time) + ")";
  }
  return out + "}";
}

std::string pretty(const NetworkDescription& d) {
  std::ostringstream os;
  os << "domain ";
  switch (d.domain.kind) {
    case DomainDecl::Kind::kKahn: {
      os << "kahn(alphabet={";
      for (std::size_t k = 0; k < d.domain.alphabet.size(); ++k) {
        os << (k ? "," : "") << d.domain.alphabet[k];
      }
      os << "}";
      if (d.domain.max_len) os << ", L=" << *d.domain.max_len;
      os << ")";
      break;
    }
    case DomainDecl::Kind::kCausal:
      os << "causal";
      if (d.domain.horizon) os << "(horizon=" << to_string(*d.domain.horizon) << ")";
      break;
    case DomainDecl::Kind::kFinite:
      os << "finite(size=" << d.domain.size << (d.domain.chain ? ", order=chain" : "") << ")";
      break;
    case DomainDecl::Kind::kGraph:
      os << "graph";
      break;
  }
  os << "\n";
  for (const auto& b : d.blocks) {
    os << "block " << b.name << " : " << b.kind << "(";
    for (std::size_t k = 0; k < b.args.size(); ++k) os << (k ? ", " : "") << arg_text(b.args[k]);
    os << ")\n";
  }
  for (const auto& w : d.wires) {
    os << w.from.label().name() << " -> " << w.to.label().name() << "\n";
  }
  for (const auto& in : d.inputs) {
    os << "input " << in.port.label().name() << " = " << to_string(in.value) << "\n";
  }
  return os.str();
}

Value literal_value(const BuiltNet& net, const Literal& lit) {
  switch (net.kind) {
    case DomainDecl::Kind::kKahn: {
      auto* s = std::get_if<TokenSeq>(&lit);
      if (!s) fail(ErrorCode::kValidationError, "kahn values are sequences <...>, not " + to_string(lit));
      Value v(net.domain->id(), *s);
      if (!net.domain->contains(v)) {
        fail(ErrorCode::kValidationError, to_string(lit) + " is not in " + net.domain->describe());
      }
      return v;
    }
    case DomainDecl::Kind::kCausal: {
      auto* evs = std::get_if<std::vector<TimedValue>>(&lit);
      if (!evs) fail(ErrorCode::kValidationError, "causal values are event sets {...}, not " + to_string(lit));
      EventHistory h;
      try {
        h = EventHistory(*evs);
      } catch (const Error& e) {
        fail(ErrorCode::kValidationError, to_string(lit) + ": " + e.what());
      }
      Value v(net.domain->id(), std::move(h));
      if (!net.domain->contains(v)) {
        fail(ErrorCode::kValidationError, to_string(lit) + " is not in " + net.domain->describe());
      }
      return v;
    }
    case DomainDecl::Kind::kFinite: {
      auto* n = std::get_if<Token>(&lit);
      if (!n) fail(ErrorCode::kValidationError, "finite values are integers, not " + to_string(lit));
      Value v(net.domain->id(), *n);
      if (!net.domain->contains(v)) {
        fail(ErrorCode::kValidationError, to_string(lit) + " is not in " + net.domain->describe());
      }
      return v;
    }
    case DomainDecl::Kind::kGraph:
      break;
  }
  fail(ErrorCode::kValidationError, "graph nets have no values");
}

BuiltNet build(const NetworkDescription& d, const std::filesystem::path& base_dir) {
  BuiltNet net;
  net.kind = d.domain.kind;
  net.domain = make_domain(d.domain);
  if (net.kind == DomainDecl::Kind::kGraph) {
    build_graph(d, net);
    return net;
  }
  net.network.domain = net.domain;

  for (const auto& b : d.blocks) {
    if (net.network.nodes.count(b.name)) invalid(b.pos, "block " + b.name + " is declared twice");
    if (b.kind == "table") {
      net.network.nodes.emplace(b.name, load_table(net, b, base_dir));
      continue;
    }
    try {
      if (net.kind == DomainDecl::Kind::kKahn) {
        std::vector<Token> args;
        for (const auto& a : b.args) {
          if (a.kind != BlockArg::Kind::kNumber || a.number.denominator() != 1) {
            invalid(b.pos, b.kind + " takes integer arguments, got " + arg_text(a));
          }
          args.push_back(a.number.numerator());
        }
        net.network.nodes.emplace(b.name, blocks::by_name(b.kind, args));
      } else if (net.kind == DomainDecl::Kind::kCausal) {
        std::vector<Rational> args;
        for (const auto& a : b.args) {
          if (a.kind != BlockArg::Kind::kNumber) {
            invalid(b.pos, b.kind + " takes numeric arguments, got " + arg_text(a));
          }
          args.push_back(a.number);
        }
        auto ed = std::dynamic_pointer_cast<const EventDomain>(net.domain);
        net.network.nodes.emplace(b.name, causal_blocks::by_name(b.kind, b.name, args, ed));
      } else {
        invalid(b.pos, "finite nets only take table blocks, not " + b.kind);
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kValidationError) throw;
      invalid(b.pos, "block " + b.name + ": " + e.what());
    }
  }

  std::set<PortRef> driven, used;
  for (const auto& w : d.wires) {
    if (!net.network.nodes.count(w.from.block)) invalid(w.pos, "unknown block " + w.from.block);
    if (!net.network.nodes.count(w.to.block)) invalid(w.pos, "unknown block " + w.to.block);
    const auto outs = net.network.output_ports(w.from.block);
    if (std::find(outs.begin(), outs.end(), w.from) == outs.end()) {
      invalid(w.pos, "unknown output port " + w.from.label().name());
    }
    const auto ins = net.network.input_ports(w.to.block);
    if (std::find(ins.begin(), ins.end(), w.to) == ins.end()) {
      invalid(w.pos, "unknown input port " + w.to.label().name());
    }
    if (!driven.insert(w.to).second) invalid(w.pos, "input port " + w.to.label().name() + " is driven twice");
    if (!used.insert(w.from).second) invalid(w.pos, "output port " + w.from.label().name() + " feeds two wires");
    net.network.wires.push_back({w.from, w.to});
  }
  net.network.validate();

  const LabelSet free = net.network.free_inputs();
  for (const auto& in : d.inputs) {
    const Label l = in.port.label();
    if (!free.count(l)) {
      invalid(in.pos, (driven.count(in.port) ? "input port " + l.name() + " is already wired"
                                             : "unknown input port " + l.name()));
    }
    if (net.inputs.count(l)) invalid(in.pos, "input " + l.name() + " is bound twice");
    try {
      net.inputs.emplace(l, literal_value(net, in.value));
    } catch (const Error& e) {
      invalid(in.pos, e.what());
    }
  }
  return net;
}

Diagram<FunctionalSystem> functional_diagram(const BuiltNet& net) {
  if (net.kind == DomainDecl::Kind::kGraph) {
    fail(ErrorCode::kValidationError, "graph nets have no functional diagram");
  }
  Diagram<FunctionalSystem> d;
  for (const auto& [name, node] : net.network.nodes) {
    if (auto* b = std::get_if<ProcessBlock>(&node)) {
      auto sd = std::dynamic_pointer_cast<const SeqDomain>(net.domain);
      d.atoms.emplace_back(name, lift_process(*b, name, sd));
    } else {
      d.atoms.emplace_back(name, std::get<FunctionalSystem>(node));
    }
  }
  for (const auto& w : net.network.wires) d.connections.emplace_back(w.to.label(), w.from.label());
  return d;
}

BuiltNet parse(std::string_view text, const std::filesystem::path& base_dir) {
  return build(parse_syntax(text), base_dir);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace sysalg::dsl
