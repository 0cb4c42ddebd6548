#include "bongard/rule.hpp"

#include <cctype>
#include <stdexcept>

#include "bongard/error.hpp"

namespace bongard {

std::size_t subtree_end(std::span<const Production> nodes, std::size_t begin) noexcept {
  std::size_t pending = 1;
  std::size_t i = begin;
  while (pending > 0) {
    if (i >= nodes.size()) return nodes.size() + 1;
    pending += production_info(nodes[i]).arity;
    --pending;
    ++i;
  }
  return i;
}

namespace {

// Checks typing of the subtree at i against `expected`; returns its end or 0 on failure.
std::size_t check(std::span<const Production> nodes, std::size_t i, NonTerminal expected) noexcept {
  if (i >= nodes.size()) return 0;
  const auto& info = production_info(nodes[i]);
  if (info.lhs != expected) return 0;
  std::size_t next = i + 1;
  for (std::size_t a = 0; a < info.arity; ++a) {
    next = check(nodes, next, info.args[a]);
    if (next == 0) return 0;
  }
  return next;
}

}  // namespace

bool is_derivation(std::span<const Production> nodes, NonTerminal start) noexcept {
  return !nodes.empty() && check(nodes, 0, start) == nodes.size();
}

Rule::Rule(std::vector<Production> nodes) : nodes_(std::move(nodes)) {
  if (!is_derivation(nodes_, NonTerminal::R)) throw std::invalid_argument("not a derivation from R");
}

std::size_t Rule::subtree_end(std::size_t i) const noexcept { return bongard::subtree_end(nodes_, i); }

std::string Rule::key() const {
  std::string k(nodes_.size(), '\0');
  for (std::size_t i = 0; i < nodes_.size(); ++i) k[i] = static_cast<char>(nodes_[i]);
  return k;
}

namespace {

void print(std::span<const Production> nodes, std::size_t& i, std::string& out) {
  const auto& info = production_info(nodes[i++]);
  out += info.name;
  if (info.lhs == NonTerminal::R) {
    out += ':';
    print(nodes, i, out);
    return;
  }
  if (info.arity == 0) return;
  out += '(';
  for (std::size_t a = 0; a < info.arity; ++a) {
    if (a > 0) out += ',';
    print(nodes, i, out);
  }
  out += ')';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Rule run() {
    std::vector<Production> nodes;
    parse(NonTerminal::R, nodes);
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return Rule(std::move(nodes));
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_), pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (pos_ == start) fail("expected a symbol");
    return text_.substr(start, pos_ - start);
  }

  void parse(NonTerminal expected, std::vector<Production>& nodes) {
    skip_space();
    const std::size_t start = pos_;
    const std::string_view name = word();
    const auto found = GrammarTable::instance().lookup(name);
    if (!found) {
      pos_ = start;
      if (expected == NonTerminal::N && std::isdigit(static_cast<unsigned char>(name.front())))
        fail("count '" + std::string(name) + "' outside 1..4");
      fail("unknown symbol '" + std::string(name) + "'");
    }
    const auto& info = production_info(*found);
    if (info.lhs != expected) {
      pos_ = start;
      fail("'" + std::string(info.name) + "' is " + std::string(nonterminal_name(info.lhs)) + "-typed where " +
           std::string(nonterminal_name(expected)) + " is expected");
    }
    nodes.push_back(*found);
    if (expected == NonTerminal::R) {
      expect(':');
      parse(info.args[0], nodes);
      return;
    }
    if (info.arity == 0) return;
    expect('(');
    for (std::size_t a = 0; a < info.arity; ++a) {
      if (a > 0) expect(',');
      parse(info.args[a], nodes);
    }
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ',')
      fail("too many arguments to " + std::string(info.name));
    expect(')');
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Rule parse_rule(std::string_view text) { return Parser(text).run(); }

std::string to_string(std::span<const Production> subtree) {
  std::string out;
  std::size_t i = 0;
  if (!subtree.empty()) print(subtree, i, out);
  return out;
}

std::string to_string(const Rule& rule) { return to_string(rule.nodes()); }

}  // namespace bongard
