#pragma once

// Linear (Alexander) biquasiles over Z_m,
//
//   x*y = (-dsn^2)x + ny      x.y = dx + sy      (d, n, s units mod m),
//
// and presentation matrices over the Laurent ring Z[d^+-1, s^+-1, n^+-1].
// Element k of a materialized structure stands for the residue k.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "biq/algebra.hpp"
#include "biq/diagram.hpp"

namespace biq {

struct AlexanderParams {
  int m = 2;
  int d = 1;
  int n = 1;
  int s = 1;

  // Throws InputError unless m >= 2 and d, n, s are units in 1..m-1.
  void validate() const;
  // -dsn^2 reduced into 0..m-1.
  int star_coefficient() const;
  std::string to_string() const;
  auto operator<=>(const AlexanderParams&) const = default;
};

FiniteBiquasile materialize(const AlexanderParams& p);

int euler_phi(int m);

// Every unit triple, ordered by (d, n, s).
std::vector<AlexanderParams> enumerate_params(int m);

struct AlexanderScan {
  int m = 0;
  std::size_t configurations = 0;
  std::size_t classes = 0;
};

// Isomorphism classes under arbitrary bijections of Z_m.
AlexanderScan classify_params(int m, unsigned jobs = 0);

// Sparse Laurent polynomial; keys are exponent triples (e_d, e_s, e_n).
class LaurentPoly {
 public:
  using Exponents = std::array<int, 3>;

  LaurentPoly() = default;
  static LaurentPoly monomial(std::int64_t coeff, int e_d, int e_s, int e_n);
  static LaurentPoly constant(std::int64_t c) { return monomial(c, 0, 0, 0); }

  const std::map<Exponents, std::int64_t>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  LaurentPoly& operator+=(const LaurentPoly& other);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(const LaurentPoly& a);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  // Value at (d, n, s) mod m, in 0..m-1.
  int evaluate(const AlexanderParams& p) const;
  // Monomials in increasing exponent order, e.g. "-dsn^2", "dn", "d^-1s".
  std::string to_string() const;

 private:
  std::map<Exponents, std::int64_t> terms_;
};

struct LaurentMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<LaurentPoly>> entries;

  LaurentMatrix() = default;
  LaurentMatrix(int r, int c);
  const LaurentPoly& at(int r, int c) const { return entries[r][c]; }
  LaurentPoly& at(int r, int c) { return entries[r][c]; }
  std::string to_string() const;
};

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// Row of the linearized relation: -dsn^2 at x, dn at a, sn at b, -1 at y for
// a positive crossing; x and y trade places for a negative one. Coinciding
// regions share a column and their coefficients add.
std::vector<LaurentPoly> symbolic_relation_row(const CrossingRelation& rel, int columns);
LaurentMatrix symbolic_matrix(int region_count, const std::vector<CrossingRelation>& relations);

// Entrywise evaluation mod m. Negative exponents use modular inverses.
IntMatrix specialize(const LaurentMatrix& matrix, const AlexanderParams& p);

// The same row obtained without symbols: coefficients are read off the
// materialized operation tables by probing unit vectors.
std::vector<std::int64_t> numeric_relation_row(const CrossingRelation& rel, int columns,
                                               const AlexanderParams& p);
IntMatrix numeric_matrix(int region_count, const std::vector<CrossingRelation>& relations,
                         const AlexanderParams& p);

// {"rows": r, "cols": c, "entries": [[[[e_d, e_s, e_n, coeff], ...], ...], ...]}
std::string to_json(const LaurentMatrix& matrix);
// Throws ParseError on malformed text.
LaurentMatrix laurent_matrix_from_json(std::string_view text);

// "m,configurations,classes" with a header line.
std::string scan_csv(const std::vector<AlexanderScan>& rows);

}  // namespace biq
