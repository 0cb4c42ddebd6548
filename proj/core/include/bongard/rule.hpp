#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bongard/grammar.hpp"
#include "bongard/problem.hpp"

namespace bongard {

/// A derivation of the concept grammar from R, stored as its productions in
/// preorder. Arities come from the grammar, so the sequence alone fixes the
/// tree; every node is one production application.
class Rule {
 public:
  Rule() = default;
  /// Throws std::invalid_argument unless `nodes` is a complete derivation from R.
  explicit Rule(std::vector<Production> nodes);

  std::span<const Production> nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  Production operator[](std::size_t i) const { return nodes_[i]; }
  Side side() const noexcept { return nodes_.front() == Production::Left ? Side::Left : Side::Right; }

  /// One past the last node of the subtree rooted at i.
  std::size_t subtree_end(std::size_t i) const noexcept;

  /// Compact identity usable as a hash key: one byte per node.
  std::string key() const;

  friend bool operator==(const Rule&, const Rule&) = default;

 private:
  std::vector<Production> nodes_;
};

/// End of the subtree starting at `begin` within a preorder sequence, or
/// nodes.size() + 1 if the sequence ends early.
std::size_t subtree_end(std::span<const Production> nodes, std::size_t begin) noexcept;

/// True if `nodes` is exactly one derivation rooted at `start`.
bool is_derivation(std::span<const Production> nodes, NonTerminal start) noexcept;

/// Parses `SIDE:FUNCTOR(ARG,...)`. Functors are case-insensitive and
/// whitespace is ignored. Throws ParseError with the offending offset.
Rule parse_rule(std::string_view text);

/// Canonical text, e.g. "LEFT:EXISTS(OUTLINE(FIGURES))".
std::string to_string(const Rule& rule);
/// Canonical text of one subtree.
std::string to_string(std::span<const Production> subtree);

}  // namespace bongard
