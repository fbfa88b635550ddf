#pragma once

// Finite biquasiles: a set {0..n-1} with two quasigroup operations (star and
// dot) satisfying the two exchange axioms
//
//   (i)  a*(x.[y*(a.b)]) = (a*[x.y]) * (x.[y*([a*(x.y)].b)])
//   (ii) y*([a*(x.y)].b) = (y*[a.b]) * ([a*(x.[y*(a.b)])].b)
//
// Elements are 0-based in memory. Every textual format (block matrices, CLI
// output) is 1-based.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "biq/errors.hpp"

namespace biq {

class OperationTable {
 public:
  OperationTable() = default;
  // Table of the given order with every cell set to 0.
  explicit OperationTable(int order);

  // Rows of 1-based entries. Throws InputError when the shape is not square
  // or an entry lies outside 1..n.
  static OperationTable from_rows(const std::vector<std::vector<int>>& rows);

  int order() const noexcept { return order_; }
  int operator()(int x, int y) const noexcept { return cells_[static_cast<std::size_t>(x * order_ + y)]; }
  void set(int x, int y, int value) { cells_[static_cast<std::size_t>(x * order_ + y)] = static_cast<std::uint8_t>(value); }
  std::span<const std::uint8_t> cells() const noexcept { return cells_; }

  auto operator<=>(const OperationTable&) const = default;

 private:
  int order_ = 0;
  std::vector<std::uint8_t> cells_;
};

// Quasigroup condition: every row and every column is a permutation.
bool is_latin(const OperationTable& table);

// Two Latin tables of equal order. Whether the pair satisfies the biquasile
// axioms is a separate question answered by check_axioms().
class FiniteBiquasile {
 public:
  FiniteBiquasile() = default;
  // Throws StructureError if the orders differ or either table is not Latin.
  FiniteBiquasile(OperationTable star, OperationTable dot);

  int order() const noexcept { return star_.order(); }
  const OperationTable& star() const noexcept { return star_; }
  const OperationTable& dot() const noexcept { return dot_; }

  // Ordered lexicographically on star || dot.
  auto operator<=>(const FiniteBiquasile&) const = default;

 private:
  OperationTable star_;
  OperationTable dot_;
};

// Left and right divisions of both operations:
//   star_left(y, y*x) = x      star_right(x*y, y) = x
//   dot_left(y, y.x)  = x      dot_right(x.y, y)  = x
struct Divisions {
  OperationTable star_left;
  OperationTable star_right;
  OperationTable dot_left;
  OperationTable dot_right;
};

Divisions divisions(const FiniteBiquasile& x);

// Direct evaluation of axioms (i) and (ii) over all n^4 quadruples.
bool check_axioms(const FiniteBiquasile& x);
// Same question through the f/g reformulation:
//   f_{a,b}(x,y) = x*(a.[b*(x.y)]),  g_{a,b}(x,y) = y*([a*(x.y)].b)
//   f_{a,b}(x,y) = f_{a,b}(x*(a.b), y),  g_{a,b}(x,y) = g_{a,b}(x, y*(a.b))
bool check_axioms_fg(const FiniteBiquasile& x);

struct EnumerationOptions {
  // Search-node budget. Required for n >= 5.
  std::optional<std::uint64_t> node_budget;
  // Worker threads; 0 selects std::thread::hardware_concurrency().
  unsigned jobs = 0;
};

class EnumerationBudgetExceeded : public BudgetExceeded {
 public:
  EnumerationBudgetExceeded(std::vector<FiniteBiquasile> partial, std::uint64_t nodes);
  // Structures found before the budget ran out, sorted.
  const std::vector<FiniteBiquasile>& partial() const noexcept { return partial_; }

 private:
  std::vector<FiniteBiquasile> partial_;
};

// Every biquasile of order n (raw structures, not isomorphism classes),
// sorted by star || dot.
std::vector<FiniteBiquasile> enumerate_biquasiles(int n, const EnumerationOptions& options = {});

struct BiquasileMap {
  std::vector<int> image;

  bool is_homomorphism(const FiniteBiquasile& source, const FiniteBiquasile& target) const;
  bool is_bijective() const;
};

// Relabel x by the bijection `image`: element e of x becomes image[e].
FiniteBiquasile relabel(const FiniteBiquasile& x, std::span<const int> image);

struct CanonicalForm {
  FiniteBiquasile table;
  // labeling[e] is the canonical label of element e.
  std::vector<int> labeling;
};

// Lexicographically least relabeling among those produced by the
// generator-driven labeling search (seed an element, label every new product
// of labeled elements in a fixed order, branch on a fresh seed when the
// labeled set is closed). Isomorphic inputs give identical tables.
CanonicalForm canonical_form(const FiniteBiquasile& x);

// Isomorphism X -> Y, or nullopt. Order mismatch is simply nullopt.
std::optional<BiquasileMap> is_isomorphic(const FiniteBiquasile& x, const FiniteBiquasile& y);

struct IsoClasses {
  // Indices into the input, each class sorted ascending; classes are ordered
  // by their canonical table.
  std::vector<std::vector<std::size_t>> classes;
  std::size_t count() const noexcept { return classes.size(); }
};

IsoClasses iso_classes(std::span<const FiniteBiquasile> structures, unsigned jobs = 0);

// Smallest superset of `seed` closed under both operations and all four
// divisions. Elements are 0-based; the result is sorted. Throws InputError on
// an empty seed or an out-of-range element.
std::vector<int> subbiquasile_closure(const FiniteBiquasile& x, std::span<const int> seed);

// No proper nonempty subset is closed.
bool is_simple(const FiniteBiquasile& x);

// Z_m with a.b = a + b and x*y = y - x; element e stands for residue e.
FiniteBiquasile dehn_biquasile(int m);

// Block-matrix text: n lines of 2n integers (star block, then dot block),
// 1-based. '#' starts a comment. Blank lines separate structures.
std::vector<FiniteBiquasile> parse_block_matrices(std::string_view text);
FiniteBiquasile parse_block_matrix(std::string_view text);
std::string format_block_matrix(const FiniteBiquasile& x);

// Stable 64-bit FNV-1a digest of the block-matrix encoding, as 16 hex digits.
std::string structure_hash(const FiniteBiquasile& x);

}  // namespace biq
