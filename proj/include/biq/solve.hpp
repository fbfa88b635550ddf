#pragma once

// Coloring counts: a generic search over any finite biquasile and, for
// Alexander biquasiles, solution counting of the linear system over Z_m.

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "biq/alexander.hpp"
#include "biq/algebra.hpp"
#include "biq/diagram.hpp"
#include "biq/presentation.hpp"

namespace biq {

using BigInt = boost::multiprecision::cpp_int;
using BigMatrix = std::vector<std::vector<BigInt>>;

// Number of assignments of X to the generators of p satisfying every
// relation. Relations with one unknown symbol occurring once are solved
// through the division tables; otherwise the lowest unassigned generator is
// branched on.
std::uint64_t count_colorings(const Presentation& p, const FiniteBiquasile& X);

class ColoringBudgetExceeded : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

// Every coloring, indexed like p.generators (0-based elements), in
// lexicographic order. Throws ColoringBudgetExceeded past `max_colorings`.
std::vector<std::vector<int>> enumerate_colorings(const Presentation& p, const FiniteBiquasile& X,
                                                  std::optional<std::uint64_t> max_colorings = std::nullopt);

struct SmithNormalForm {
  BigMatrix U;  // rows x rows, unimodular
  BigMatrix D;  // rows x cols, diagonal, d_i | d_{i+1}, d_i >= 0
  BigMatrix V;  // cols x cols, unimodular
  // Nonzero diagonal entries.
  std::vector<BigInt> invariant_factors() const;
};

// U * A * V = D.
SmithNormalForm smith_normal_form(const BigMatrix& A);

BigMatrix to_big(const IntMatrix& A);
BigMatrix multiply(const BigMatrix& A, const BigMatrix& B);
// Exact determinant (Bareiss) of a square matrix.
BigInt determinant(const BigMatrix& A);

// Number of x in Z_m^cols with A x = 0 (mod m). `columns` is needed when A
// has no rows.
BigInt count_solutions_mod_m(const IntMatrix& A, int columns, int m);

enum class Engine { generic, linear };

// Fundamental-presentation coloring count of the diagram.
std::uint64_t phi_invariant(const OrientedPDCode& pd, const FiniteBiquasile& X,
                            RoleConvention convention = default_convention());
// For an Alexander biquasile; `engine` selects the generic search over the
// materialized tables or the Smith normal form count.
std::uint64_t phi_invariant(const OrientedPDCode& pd, const AlexanderParams& p, Engine engine,
                            RoleConvention convention = default_convention());

}  // namespace biq
