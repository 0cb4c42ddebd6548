#include "bongard/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace bongard {

namespace {

using NT = NonTerminal;
constexpr NT kNone = NT::R;  // filler for unused argument slots

constexpr ProductionInfo P(Production id, NT lhs, std::string_view name) { return {id, lhs, name, 0, {kNone, kNone, kNone}}; }
constexpr ProductionInfo P(Production id, NT lhs, std::string_view name, NT a) { return {id, lhs, name, 1, {a, kNone, kNone}}; }
constexpr ProductionInfo P(Production id, NT lhs, std::string_view name, NT a, NT b) { return {id, lhs, name, 2, {a, b, kNone}}; }
constexpr ProductionInfo P(Production id, NT lhs, std::string_view name, NT a, NT b, NT c) { return {id, lhs, name, 3, {a, b, c}}; }

using enum Production;

constexpr std::array<ProductionInfo, kProductionCount> kTable = {
    P(Left, NT::R, "LEFT", NT::S),
    P(Right, NT::R, "RIGHT", NT::S),

    P(Exists, NT::S, "EXISTS", NT::L),
    P(Exactly, NT::S, "EXACTLY", NT::N, NT::L),
    P(EqualNum, NT::S, "EQUALNUM", NT::L, NT::L),
    P(More, NT::S, "MORE", NT::L, NT::L),
    P(GreaterLA, NT::S, "GREATERLA", NT::L, NT::A),
    P(GreaterLLA, NT::S, "GREATERLLA", NT::L, NT::L, NT::A),
    P(MoreSimLA, NT::S, "MORESIMLA", NT::L, NT::A),
    P(MoreSimLLA, NT::S, "MORESIMLLA", NT::L, NT::L, NT::A),

    P(Cap, NT::L, "CAP", NT::L, NT::L),
    P(Cup, NT::L, "CUP", NT::L, NT::L),
    P(SetMinus, NT::L, "SETMINUS", NT::L, NT::L),
    P(Inside, NT::L, "INSIDE", NT::L),
    P(Contains, NT::L, "CONTAINS", NT::L),
    P(Aligned, NT::L, "ALIGNED", NT::L),
    P(Get, NT::L, "GET", NT::L, NT::T),
    P(Solid, NT::L, "SOLID", NT::L),
    P(Outline, NT::L, "OUTLINE", NT::L),
    P(Big, NT::L, "BIG", NT::L),
    P(Small, NT::L, "SMALL", NT::L),
    P(High, NT::L, "HIGH", NT::L, NT::A),
    P(Low, NT::L, "LOW", NT::L, NT::A),
    P(Figures, NT::L, "FIGURES"),
    P(Circles, NT::L, "CIRCLES"),
    P(Triangles, NT::L, "TRIANGLES"),
    P(Rectangles, NT::L, "RECTANGLES"),

    P(XPos, NT::A, "XPOS"),
    P(YPos, NT::A, "YPOS"),
    P(Distance, NT::A, "DISTANCE"),
    P(Orientation, NT::A, "ORIENTATION"),
    P(NCorners, NT::A, "NCORNERS"),
    P(Color, NT::A, "COLOR"),
    P(Size, NT::A, "SIZE"),
    P(Compactness, NT::A, "COMPACTNESS"),
    P(Convexity, NT::A, "CONVEXITY"),
    P(Elongation, NT::A, "ELONGATION"),

    P(Hulls, NT::T, "HULLS"),
    P(Holes, NT::T, "HOLES"),

    P(One, NT::N, "1"),
    P(Two, NT::N, "2"),
    P(Three, NT::N, "3"),
    P(Four, NT::N, "4"),
};

static_assert([] {
  for (std::size_t i = 0; i < kTable.size(); ++i)
    if (static_cast<std::size_t>(kTable[i].id) != i) return false;
  return true;
}());

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) == std::toupper(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::string_view nonterminal_name(NonTerminal nt) noexcept {
  constexpr std::array<std::string_view, kNonTerminalCount> names = {"R", "S", "L", "A", "T", "N"};
  return names[static_cast<std::size_t>(nt)];
}

GrammarTable::GrammarTable() : table_(kTable) {
  std::size_t i = 0;
  for (std::size_t nt = 0; nt < kNonTerminalCount; ++nt) {
    offsets_[nt] = i;
    while (i < table_.size() && static_cast<std::size_t>(table_[i].lhs) == nt) ++i;
  }
  offsets_[kNonTerminalCount] = table_.size();
}

const GrammarTable& GrammarTable::instance() {
  static const GrammarTable table;
  return table;
}

std::span<const ProductionInfo> GrammarTable::productions(NonTerminal nt) const noexcept {
  const auto k = static_cast<std::size_t>(nt);
  return std::span<const ProductionInfo>(table_).subspan(offsets_[k], offsets_[k + 1] - offsets_[k]);
}

std::size_t GrammarTable::local_index(Production p) const noexcept {
  return static_cast<std::size_t>(p) - offsets_[static_cast<std::size_t>(info(p).lhs)];
}

std::optional<Production> GrammarTable::lookup(std::string_view name) const noexcept {
  for (const auto& info : table_)
    if (iequals(info.name, name)) return info.id;
  if (iequals(name, "OBJECTS")) return Production::Figures;
  if (iequals(name, "GREATER")) return Production::GreaterLLA;
  if (iequals(name, "EQUAL")) return Production::EqualNum;
  return std::nullopt;
}

std::size_t child_count(Production p, NonTerminal nt) noexcept {
  const auto& info = production_info(p);
  return static_cast<std::size_t>(std::count(info.args.begin(), info.args.begin() + info.arity, nt));
}

Attribute attribute_of(Production p) noexcept {
  return static_cast<Attribute>(static_cast<std::size_t>(p) - static_cast<std::size_t>(Production::XPos));
}

int numeral_of(Production p) noexcept {
  return static_cast<int>(static_cast<std::size_t>(p) - static_cast<std::size_t>(Production::One)) + 1;
}

}  // namespace bongard
