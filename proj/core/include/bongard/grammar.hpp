#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "bongard/figure.hpp"

namespace bongard {

/// The six non-terminal kinds of the visual concept grammar.
enum class NonTerminal : std::uint8_t { R, S, L, A, T, N };
inline constexpr std::size_t kNonTerminalCount = 6;

std::string_view nonterminal_name(NonTerminal nt) noexcept;

/// Every production of the grammar, grouped by left-hand side in table order.
enum class Production : std::uint8_t {
  // R
  Left, Right,
  // S
  Exists, Exactly, EqualNum, More, GreaterLA, GreaterLLA, MoreSimLA, MoreSimLLA,
  // L
  Cap, Cup, SetMinus, Inside, Contains, Aligned, Get, Solid, Outline, Big, Small, High, Low,
  Figures, Circles, Triangles, Rectangles,
  // A
  XPos, YPos, Distance, Orientation, NCorners, Color, Size, Compactness, Convexity, Elongation,
  // T
  Hulls, Holes,
  // N
  One, Two, Three, Four,
};
inline constexpr std::size_t kProductionCount = 43;

struct ProductionInfo {
  Production id;
  NonTerminal lhs;
  std::string_view name;  // functor spelling in rule text
  std::uint8_t arity;
  std::array<NonTerminal, 3> args;
};

/// Grammar as data: productions per non-terminal, in fixed order.
class GrammarTable {
 public:
  static const GrammarTable& instance();

  const ProductionInfo& info(Production p) const noexcept { return table_[static_cast<std::size_t>(p)]; }
  std::span<const ProductionInfo> all() const noexcept { return table_; }
  /// Productions whose left-hand side is `nt`, in table order.
  std::span<const ProductionInfo> productions(NonTerminal nt) const noexcept;
  std::size_t production_count(NonTerminal nt) const noexcept { return productions(nt).size(); }
  /// Position of `p` within its non-terminal's production list.
  std::size_t local_index(Production p) const noexcept;

  /// Case-insensitive functor lookup; also accepts the aliases OBJECTS
  /// (FIGURES), GREATER (GREATERLLA) and EQUAL (EQUALNUM).
  std::optional<Production> lookup(std::string_view name) const noexcept;

 private:
  GrammarTable();
  std::array<ProductionInfo, kProductionCount> table_;
  std::array<std::size_t, kNonTerminalCount + 1> offsets_{};
};

inline const ProductionInfo& production_info(Production p) noexcept { return GrammarTable::instance().info(p); }

/// Number of L-children of a production (recursion depth driver).
std::size_t child_count(Production p, NonTerminal nt) noexcept;

Attribute attribute_of(Production p) noexcept;   // A-productions
int numeral_of(Production p) noexcept;            // N-productions, 1..4

}  // namespace bongard
