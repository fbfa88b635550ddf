#pragma once

// Biquasile words and finite presentations <generators | relations>.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "biq/algebra.hpp"

namespace biq {

enum class WordOp : std::uint8_t {
  generator,
  star,        // x * y
  dot,         // x . y
  star_right,  // x /* y
  star_left,   // x \* y
  dot_right,   // x / y
  dot_left,    // x \ y
};

// Immutable expression tree; copies share structure.
class BiquasileWord {
 public:
  static BiquasileWord gen(int symbol);
  static BiquasileWord apply(WordOp op, BiquasileWord lhs, BiquasileWord rhs);

  WordOp op() const noexcept;
  // Only meaningful when op() == WordOp::generator.
  int symbol() const noexcept;
  const BiquasileWord& lhs() const;
  const BiquasileWord& rhs() const;

  bool is_generator() const noexcept { return op() == WordOp::generator; }
  int occurrences(int symbol) const;
  void collect_symbols(std::vector<int>& out) const;
  BiquasileWord substitute(int symbol, const BiquasileWord& replacement) const;

  // Value under `assignment` (indexed by symbol, 0-based elements).
  int evaluate(const FiniteBiquasile& x, const Divisions& div, std::span<const int> assignment) const;
  std::string to_string(const std::vector<std::string>& names) const;

  friend bool operator==(const BiquasileWord& a, const BiquasileWord& b);

 private:
  struct Node;
  explicit BiquasileWord(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

BiquasileWord operator*(BiquasileWord a, BiquasileWord b);  // star
BiquasileWord dot(BiquasileWord a, BiquasileWord b);

struct Relation {
  BiquasileWord lhs;
  BiquasileWord rhs;
};

struct Presentation {
  // Symbol table; relations refer to symbols by index.
  std::vector<std::string> symbols;
  // Symbols still present as generators, ascending.
  std::vector<int> generators;
  std::vector<Relation> relations;

  // "< x, y | x*(a.b) = y, ... >"
  std::string to_string() const;
};

// Tietze removal of `symbol` through a relation of the form symbol = W with
// W free of symbol. Relations with the symbol alone on one side are tried
// first; otherwise a relation containing the symbol exactly once is solved
// for it with the division operations. nullopt when no relation qualifies.
std::optional<Presentation> tietze_eliminate(const Presentation& p, int symbol);

// Greedy elimination until no generator can be removed.
Presentation simplify(const Presentation& p);

// Solve lhs == rhs for `symbol`, which must occur exactly once in total.
// Returns W with symbol = W.
std::optional<BiquasileWord> isolate(const Relation& relation, int symbol);

}  // namespace biq
