#include <doctest.h>

#include <stdexcept>

#include "bongard/error.hpp"
#include "bongard/pcfg.hpp"
#include "bongard/rule.hpp"

using namespace bongard;

TEST_CASE("production counts per non-terminal") {
  const auto& g = GrammarTable::instance();
  CHECK(g.production_count(NonTerminal::R) == 2);
  CHECK(g.production_count(NonTerminal::S) == 8);
  CHECK(g.production_count(NonTerminal::L) == 17);
  CHECK(g.production_count(NonTerminal::A) == 10);
  CHECK(g.production_count(NonTerminal::T) == 2);
  CHECK(g.production_count(NonTerminal::N) == 4);
  CHECK(g.all().size() == kProductionCount);
  for (std::size_t i = 0; i < kProductionCount; ++i) CHECK(static_cast<std::size_t>(g.all()[i].id) == i);
}

TEST_CASE("production signatures") {
  auto sig = [](Production p) {
    const auto& info = production_info(p);
    std::string s(info.name);
    for (std::size_t i = 0; i < info.arity; ++i) s += std::string(" ") + std::string(nonterminal_name(info.args[i]));
    return s;
  };
  CHECK(sig(Production::Exactly) == "EXACTLY N L");
  CHECK(sig(Production::GreaterLLA) == "GREATERLLA L L A");
  CHECK(sig(Production::MoreSimLA) == "MORESIMLA L A");
  CHECK(sig(Production::Get) == "GET L T");
  CHECK(sig(Production::High) == "HIGH L A");
  CHECK(sig(Production::Big) == "BIG L");
  CHECK(sig(Production::Figures) == "FIGURES");
  CHECK(sig(Production::Left) == "LEFT S");
  CHECK(attribute_of(Production::Color) == Attribute::Color);
  CHECK(numeral_of(Production::Three) == 3);
  CHECK(child_count(Production::Cap, NonTerminal::L) == 2);
  CHECK(child_count(Production::GreaterLLA, NonTerminal::A) == 1);
}

TEST_CASE("lookup is case-insensitive with aliases") {
  const auto& g = GrammarTable::instance();
  CHECK(g.lookup("figures") == Production::Figures);
  CHECK(g.lookup("Objects") == Production::Figures);
  CHECK(g.lookup("GREATER") == Production::GreaterLLA);
  CHECK(g.lookup("equal") == Production::EqualNum);
  CHECK_FALSE(g.lookup("SQUARES"));
}

TEST_CASE("parse examples") {
  auto r = parse_rule("RIGHT:MORE(OUTLINE(FIGURES),SOLID(FIGURES))");
  CHECK(r.side() == Side::Right);
  CHECK(r.size() == 6);
  auto m = parse_rule("LEFT:EXISTS(FIGURES)");
  CHECK(m.size() == 3);
  CHECK(m[1] == Production::Exists);
  CHECK(to_string(parse_rule("left : exists ( triangles )")) == "LEFT:EXISTS(TRIANGLES)");
  CHECK(to_string(parse_rule("LEFT:EXISTS(GET(FIGURES,HOLES))")) == "LEFT:EXISTS(GET(FIGURES,HOLES))");
  CHECK(to_string(parse_rule("LEFT:EXACTLY(2,OBJECTS)")) == "LEFT:EXACTLY(2,FIGURES)");
  CHECK(to_string(parse_rule("RIGHT:GREATER(TRIANGLES,CIRCLES,XPOS)")) == "RIGHT:GREATERLLA(TRIANGLES,CIRCLES,XPOS)");
}

TEST_CASE("parse errors name the position") {
  auto position = [](std::string_view text) -> long {
    try {
      parse_rule(text);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  CHECK(position("LEFT:EXISTS(XPOS)") == 12);
  CHECK(position("LEFT:EXISTS(SQUARES)") == 12);
  CHECK(position("LEFT:EXACTLY(5,FIGURES)") == 13);
  CHECK(position("LEFT:EXACTLY(0,FIGURES)") == 13);
  CHECK(position("LEFT:EXISTS(FIGURES,FIGURES)") >= 19);
  CHECK(position("LEFT:MORE(FIGURES)") >= 17);
  CHECK(position("LEFT:EXISTS(FIGURES") >= 0);
  CHECK(position("LEFT:EXISTS(FIGURES))") == 20);
  CHECK(position("EXISTS(FIGURES)") == 0);
  CHECK(position("LEFT EXISTS(FIGURES)") >= 4);
  CHECK(position("LEFT:FIGURES") == 5);
  CHECK(position("") == 0);
  CHECK(position("LEFT:EXISTS(FIGURES)") == -1);
}

TEST_CASE("rule construction validates derivations") {
  CHECK_THROWS_AS(Rule({Production::Exists, Production::Figures}), std::invalid_argument);
  CHECK_THROWS_AS(Rule({Production::Left, Production::Exists}), std::invalid_argument);
  CHECK_THROWS_AS(Rule({Production::Left, Production::Exists, Production::XPos}), std::invalid_argument);
  CHECK_THROWS_AS(Rule({Production::Left, Production::Exists, Production::Figures, Production::Figures}),
                  std::invalid_argument);
  Rule ok({Production::Left, Production::Exists, Production::Figures});
  CHECK(ok.subtree_end(1) == 3);
  CHECK(ok.subtree_end(2) == 3);
  CHECK(ok.key().size() == 3);
}

TEST_CASE("subtree boundaries") {
  auto r = parse_rule("LEFT:GREATERLLA(GET(FIGURES,HULLS),FIGURES,CONVEXITY)");
  CHECK(r.size() == 7);
  CHECK(r.subtree_end(2) == 5);
  CHECK(to_string(r.nodes().subspan(2, 3)) == "GET(FIGURES,HULLS)");
  CHECK(is_derivation(r.nodes().subspan(1), NonTerminal::S));
  CHECK_FALSE(is_derivation(r.nodes().subspan(1, 3), NonTerminal::S));
}

TEST_CASE("round trip over random derivations") {
  Rng rng(42);
  const auto weights = PcfgWeights::standard();
  for (int k = 0; k < 1000; ++k) {
    std::vector<Production> nodes;
    generate(weights, NonTerminal::R, rng, nodes);
    Rule rule(nodes);
    const auto text = to_string(rule);
    const auto back = parse_rule(text);
    CHECK(back == rule);
    CHECK(to_string(back) == text);
  }
}

TEST_CASE("canonicalization is idempotent on strings") {
  for (const char* text : {"right: more( outline(objects) , solid(Figures) )", "LEFT:Exactly(4,cup(circles,triangles))",
                           "left:greater(get(figures,hulls),figures,convexity)"}) {
    const auto once = to_string(parse_rule(text));
    CHECK(to_string(parse_rule(once)) == once);
  }
}
