#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "../support/expect_error.hpp"
#include "sysalg/dsl.hpp"
#include "sysalg/kahn.hpp"
#include "sysalg/trace.hpp"

using namespace sysalg;
using namespace sysalg::dsl;

namespace {

const std::filesystem::path kNets = NETS_DIR;

ParseError parse_error_of(std::string_view text) {
  try {
    parse_syntax(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return ParseError({0, 0}, "", "");
}

std::string validation_message(std::string_view text) {
  try {
    parse(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidationError) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "no validation error for:\n" << text;
  return "";
}

NetworkDescription random_description(std::mt19937_64& rng, bool with_strings) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  NetworkDescription d;
  d.domain.kind = static_cast<DomainDecl::Kind>(pick(0, 3));
  switch (d.domain.kind) {
    case DomainDecl::Kind::kKahn:
      for (int k = 0, n = pick(1, 4); k < n; ++k) d.domain.alphabet.push_back(pick(-2, 9));
      if (pick(0, 1)) d.domain.max_len = static_cast<std::size_t>(pick(0, 12));
      break;
    case DomainDecl::Kind::kCausal:
      if (pick(0, 1)) d.domain.horizon = Rational(pick(1, 9), pick(1, 4));
      break;
    case DomainDecl::Kind::kFinite:
      d.domain.size = static_cast<std::size_t>(pick(1, 8));
      d.domain.chain = pick(0, 1);
      break;
    case DomainDecl::Kind::kGraph:
      break;
  }
  const int blocks = pick(0, 4);
  for (int b = 0; b < blocks; ++b) {
    BlockDecl blk;
    blk.name = "n" + std::to_string(b);
    blk.kind = pick(0, 1) ? "delay" : "box";
    for (int a = 0, n = pick(0, 3); a < n; ++a) {
      BlockArg arg;
      switch (pick(0, with_strings ? 2 : 1)) {
        case 0:
          arg.number = Rational(pick(-5, 5), pick(1, 3));
          break;
        case 1:
          arg.kind = BlockArg::Kind::kName;
          arg.text = "p" + std::to_string(pick(0, 9));
          break;
        default:
          arg.kind = BlockArg::Kind::kString;
          arg.text = pick(0, 1) ? "t.tbl" : "a b\"c";
      }
      blk.args.push_back(arg);
    }
    d.blocks.push_back(blk);
  }
  for (int w = 0, n = pick(0, 3); w < n; ++w) {
    d.wires.push_back({{"n" + std::to_string(pick(0, 3)), "out"}, {"n" + std::to_string(pick(0, 3)), std::to_string(pick(0, 2))}, {}});
  }
  for (int i = 0, n = pick(0, 3); i < n; ++i) {
    InputDecl in;
    in.port = {"n" + std::to_string(pick(0, 3)), "in"};
    switch (pick(0, 2)) {
      case 0:
        in.value = Token(pick(-3, 3));
        break;
      case 1:
        in.value = TokenSeq{{pick(0, 3), pick(0, 3)}};
        break;
      default:
        in.value = std::vector<TimedValue>{{pick(0, 2), Rational(pick(0, 3), 2)}};
    }
    d.inputs.push_back(in);
  }
  return d;
}

}  // namespace

TEST(Dsl, MinimalKahnNet) {
  const BuiltNet net = parse("domain kahn(alphabet={0,1})\nblock c : copy()\n");
  EXPECT_EQ(net.kind, DomainDecl::Kind::kKahn);
  EXPECT_EQ(net.network.nodes.size(), 1u);
  EXPECT_EQ(net.network.free_inputs(), LabelSet{"c.in"_lbl});
  EXPECT_EQ(net.network.free_outputs(), LabelSet{"c.out"_lbl});
}

TEST(Dsl, SampleNetsParse) {
  for (const auto& entry : std::filesystem::directory_iterator(kNets)) {
    if (entry.path().extension() != ".net") continue;
    const std::string text = read_file(entry.path());
    EXPECT_NO_THROW(parse(text, kNets)) << entry.path();
    const auto desc = parse_syntax(text);
    EXPECT_TRUE(same_declarations(parse_syntax(pretty(desc)), desc)) << entry.path();
  }
}

TEST(Dsl, FourBoxFileLeavesFourFreePorts) {
  const BuiltNet net = parse(read_file(kNets / "four_boxes.net"));
  EXPECT_EQ(net.graph.labels(), (LabelSet{"j2"_lbl, "j3"_lbl, "k3"_lbl, "l1"_lbl}));
  EXPECT_EQ(net.graph.wires.size(), 3u);
}

TEST(Dsl, ParseErrorPositions) {
  const auto e1 = parse_error_of("domain kahn(alphabet={0,1})\nblock c copy()\n");
  EXPECT_EQ(e1.pos().line, 2u);
  EXPECT_EQ(e1.pos().column, 9u);
  EXPECT_EQ(e1.expected(), "':'");
  EXPECT_EQ(e1.lexeme(), "'copy'");
  EXPECT_STREQ(e1.what(), "2:9: expected ':', got 'copy'");

  const auto e2 = parse_error_of("domain soup\n");
  EXPECT_EQ(e2.pos().column, 8u);

  const auto e3 = parse_error_of("domain graph\nblock a : box(x)\na.x -> \n");
  EXPECT_EQ(e3.pos().line, 4u);
  EXPECT_EQ(e3.lexeme(), "end of input");

  const auto e4 = parse_error_of("domain kahn(alphabet={0}) # ok\n  block b : copy() $\n");
  EXPECT_EQ(e4.pos().line, 2u);
  EXPECT_EQ(e4.pos().column, 20u);

  const auto e5 = parse_error_of("domain graph\ninput a.b = 1\nblock a : box(b)\n");
  EXPECT_EQ(e5.pos().line, 3u);
  EXPECT_EQ(e5.pos().column, 1u);
}

TEST(Dsl, ValidationNamesTheDeclaration) {
  const std::string head = "domain kahn(alphabet={0,1})\nblock a : copy()\nblock b : copy()\n";
  EXPECT_NE(validation_message(head + "a.out -> b.nope\n").find("b.nope"), std::string::npos);
  EXPECT_NE(validation_message(head + "a.out -> b.in\na.out -> a.in\n").find("a.out"), std::string::npos);
  EXPECT_NE(validation_message(head + "a.out -> b.in\nb.out -> b.in\n").find("b.in"), std::string::npos);
  EXPECT_NE(validation_message(head + "block a : dup()\n").find("line 4"), std::string::npos);
  EXPECT_NE(validation_message(head + "block z : warp()\n").find("warp"), std::string::npos);
  EXPECT_NE(validation_message(head + "input a.in = <0,5>\n").find("<0,5>"), std::string::npos);
  EXPECT_NE(validation_message(head + "input a.out = <0>\n").find("a.out"), std::string::npos);
  EXPECT_NE(validation_message("domain graph\nblock a : box(x)\nblock b : box(x)\n").find("x"),
            std::string::npos);
}

TEST(Dsl, RoundTripThroughPretty) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const auto d = random_description(rng, true);
    const std::string text = pretty(d);
    NetworkDescription back;
    ASSERT_NO_THROW(back = parse_syntax(text)) << text;
    EXPECT_TRUE(same_declarations(back, d)) << text;
    EXPECT_EQ(pretty(back), text);
  }
}

TEST(Dsl, StrayCharacterIsReportedWhereItIs) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 300; ++trial) {
    std::string text = pretty(random_description(rng, false));
    const auto at = std::uniform_int_distribution<std::size_t>(0, text.size())(rng);
    text.insert(at, "@");
    // A '-' cut off from its digits or '>' is itself the bad character.
    const bool dash = at > 0 && text[at - 1] == '-';
    const std::size_t bad = dash ? at - 1 : at;
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k < bad; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    const auto e = parse_error_of(text);
    EXPECT_EQ(e.pos().line, line) << text;
    EXPECT_EQ(e.pos().column, column) << text;
    EXPECT_EQ(e.lexeme(), dash ? "'-'" : "'@'");
  }
}

TEST(Dsl, TruncatedTextFailsInsideTheText) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const std::string full = pretty(random_description(rng, true));
    const auto cut = std::uniform_int_distribution<std::size_t>(0, full.size())(rng);
    const std::string text = full.substr(0, cut);
    try {
      parse_syntax(text);
    } catch (const ParseError& e) {
      std::size_t lines = 1 + static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
      EXPECT_LE(e.pos().line, lines) << text;
      EXPECT_GE(e.pos().column, 1u);
    }
  }
}

TEST(Dsl, TablesLoadRelativeToTheNet) {
  const BuiltNet net = parse(read_file(kNets / "inverters.net"), kNets);
  const auto& s = std::get<FunctionalSystem>(net.network.nodes.at("s"));
  EXPECT_EQ(s.signature().inputs, (LabelSet{"s.i1"_lbl, "s.i2"_lbl}));
  const auto bit = [&](Token v) { return Value(net.domain->id(), v); };
  const Tuple y = s(Tuple{{"s.i1"_lbl, bit(1)}, {"s.i2"_lbl, bit(0)}});
  EXPECT_EQ(y.at("s.o3"_lbl), bit(1));
  EXPECT_EQ(y.at("s.o2"_lbl), bit(1));

  const TableFile t = parse_table("inputs a\noutputs b\na=0 -> b=1\na=1 -> b=0\n");
  EXPECT_EQ(t.rows.size(), 2u);
  EXPECT_ERROR_CODE(parse("domain finite(size=2)\nblock s : table(\"missing.tbl\")\n", kNets),
                    ErrorCode::kIoError);
}

TEST(Dsl, InputsAreBound) {
  const BuiltNet net = parse(read_file(kNets / "pipeline.net"));
  ASSERT_EQ(net.inputs.size(), 1u);
  EXPECT_EQ(net.inputs.at("src.in"_lbl).as_seq(), (TokenSeq{{1, 2, 1}}));
  const auto extra = parse_inputs("input src.in = <2>\n");
  ASSERT_EQ(extra.size(), 1u);
  EXPECT_EQ(literal_value(net, extra[0].value).as_seq(), (TokenSeq{{2}}));
}

TEST(Trace, FormatIsSortedAndTagged) {
  const auto d = make_seq_domain({0, 1}, 3);
  const std::string t = format_trace({{"z.out"_lbl, d->seq({1, 0}), false}, {"a.out"_lbl, d->seq({}), true}},
                                     {{"status", "Converged"}});
  EXPECT_EQ(t,
            "# sysalg trace v1\n"
            "# status Converged\n"
            "a.out seq{0,1}/3 <> truncated\n"
            "z.out seq{0,1}/3 <1,0> complete\n");
}
