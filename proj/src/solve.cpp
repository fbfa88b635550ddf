#include "biq/solve.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace biq {

namespace {

// Postfix form of a word: generator pushes, operators pop two.
struct Instruction {
  WordOp op;
  int symbol;
};
using Program = std::vector<Instruction>;

void compile(const BiquasileWord& w, Program& out) {
  if (w.is_generator()) {
    out.push_back({WordOp::generator, w.symbol()});
    return;
  }
  compile(w.lhs(), out);
  compile(w.rhs(), out);
  out.push_back({w.op(), -1});
}

Program compile(const BiquasileWord& w) {
  Program p;
  compile(w, p);
  return p;
}

class Evaluator {
 public:
  explicit Evaluator(const FiniteBiquasile& X) : X_(X), div_(divisions(X)) {}

  int run(const Program& program, const std::vector<int>& value) {
    stack_.clear();
    for (const auto& ins : program) {
      if (ins.op == WordOp::generator) {
        stack_.push_back(value[static_cast<std::size_t>(ins.symbol)]);
        continue;
      }
      const int r = stack_.back();
      stack_.pop_back();
      const int l = stack_.back();
      int& top = stack_.back();
      switch (ins.op) {
        case WordOp::star: top = X_.star()(l, r); break;
        case WordOp::dot: top = X_.dot()(l, r); break;
        case WordOp::star_right: top = div_.star_right(l, r); break;
        case WordOp::star_left: top = div_.star_left(l, r); break;
        case WordOp::dot_right: top = div_.dot_right(l, r); break;
        case WordOp::dot_left: top = div_.dot_left(l, r); break;
        case WordOp::generator: break;
      }
    }
    return stack_.back();
  }

 private:
  const FiniteBiquasile& X_;
  Divisions div_;
  std::vector<int> stack_;
};

struct CompiledRelation {
  Program lhs, rhs;
  std::vector<int> symbols;  // distinct
  // For each entry of `symbols`, the isolated program if it occurs once.
  std::vector<std::optional<Program>> solve_for;
};

class ColoringSearch {
 public:
  ColoringSearch(const Presentation& p, const FiniteBiquasile& X)
      : p_(p), order_(X.order()), eval_(X) {
    for (const auto& rel : p.relations) {
      CompiledRelation c;
      c.lhs = compile(rel.lhs);
      c.rhs = compile(rel.rhs);
      rel.lhs.collect_symbols(c.symbols);
      rel.rhs.collect_symbols(c.symbols);
      std::sort(c.symbols.begin(), c.symbols.end());
      c.symbols.erase(std::unique(c.symbols.begin(), c.symbols.end()), c.symbols.end());
      for (int s : c.symbols) {
        if (!std::binary_search(p.generators.begin(), p.generators.end(), s))
          throw InputError("relation uses symbol '" + p.symbols.at(static_cast<std::size_t>(s)) +
                           "' that is not a generator");
        auto iso = isolate(rel, s);
        c.solve_for.push_back(iso ? std::optional<Program>(compile(*iso)) : std::nullopt);
      }
      relations_.push_back(std::move(c));
    }
  }

  template <typename Visit>
  void run(Visit&& visit) {
    std::vector<int> value(p_.symbols.size(), -1);
    search(value, visit);
  }

 private:
  // False on a violated relation.
  bool propagate(std::vector<int>& value) {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& rel : relations_) {
        int unknown = -1, unknown_count = 0;
        for (std::size_t i = 0; i < rel.symbols.size(); ++i)
          if (value[static_cast<std::size_t>(rel.symbols[i])] < 0) {
            ++unknown_count;
            unknown = static_cast<int>(i);
          }
        if (unknown_count == 0) {
          if (eval_.run(rel.lhs, value) != eval_.run(rel.rhs, value)) return false;
        } else if (unknown_count == 1 && rel.solve_for[unknown]) {
          const int s = rel.symbols[unknown];
          value[static_cast<std::size_t>(s)] = eval_.run(*rel.solve_for[unknown], value);
          changed = true;
        }
      }
    }
    return true;
  }

  template <typename Visit>
  void search(std::vector<int>& value, Visit& visit) {
    if (!propagate(value)) return;
    for (int g : p_.generators) {
      if (value[static_cast<std::size_t>(g)] >= 0) continue;
      for (int v = 0; v < order_; ++v) {
        std::vector<int> next = value;
        next[static_cast<std::size_t>(g)] = v;
        search(next, visit);
      }
      return;
    }
    visit(value);
  }

  const Presentation& p_;
  int order_;
  Evaluator eval_;
  std::vector<CompiledRelation> relations_;
};

std::uint64_t to_u64(const BigInt& v) {
  if (v < 0 || v > std::numeric_limits<std::uint64_t>::max())
    throw std::overflow_error("count does not fit in 64 bits");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

std::uint64_t count_colorings(const Presentation& p, const FiniteBiquasile& X) {
  std::uint64_t count = 0;
  ColoringSearch(p, X).run([&](const std::vector<int>&) { ++count; });
  return count;
}

std::vector<std::vector<int>> enumerate_colorings(const Presentation& p, const FiniteBiquasile& X,
                                                  std::optional<std::uint64_t> max_colorings) {
  std::vector<std::vector<int>> out;
  ColoringSearch(p, X).run([&](const std::vector<int>& value) {
    if (max_colorings && out.size() >= *max_colorings)
      throw ColoringBudgetExceeded("coloring budget of " + std::to_string(*max_colorings) + " exceeded",
                                   out.size());
    std::vector<int> row;
    for (int g : p.generators) row.push_back(value[static_cast<std::size_t>(g)]);
    out.push_back(std::move(row));
  });
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

BigMatrix identity(std::size_t n) {
  BigMatrix I(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

BigInt abs_big(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

}  // namespace

std::vector<BigInt> SmithNormalForm::invariant_factors() const {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < D.size() && i < (D.empty() ? 0 : D[0].size()); ++i)
    if (D[i][i] != 0) out.push_back(D[i][i]);
  return out;
}

SmithNormalForm smith_normal_form(const BigMatrix& A) {
  const std::size_t rows = A.size();
  const std::size_t cols = rows ? A[0].size() : 0;
  for (const auto& row : A)
    if (row.size() != cols) throw InputError("ragged matrix");
  SmithNormalForm r{identity(rows), A, identity(cols)};
  auto& D = r.D;
  auto& U = r.U;
  auto& V = r.V;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(D[i], D[j]);
    std::swap(U[i], U[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : D) std::swap(row[i], row[j]);
    for (auto& row : V) std::swap(row[i], row[j]);
  };
  // row_i += q * row_j
  auto add_row = [&](std::size_t i, std::size_t j, const BigInt& q) {
    for (std::size_t k = 0; k < cols; ++k) D[i][k] += q * D[j][k];
    for (std::size_t k = 0; k < rows; ++k) U[i][k] += q * U[j][k];
  };
  // col_i += q * col_j
  auto add_col = [&](std::size_t i, std::size_t j, const BigInt& q) {
    for (std::size_t k = 0; k < rows; ++k) D[k][i] += q * D[k][j];
    for (std::size_t k = 0; k < cols; ++k) V[k][i] += q * V[k][j];
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (D[i][j] != 0 && (!best || abs_big(D[i][j]) < abs_big(D[best->first][best->second])))
          best = {i, j};
    if (!best) break;
    swap_rows(t, best->first);
    swap_cols(t, best->second);

    for (bool done = false; !done;) {
      done = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (D[i][t] == 0) continue;
        add_row(i, t, -BigInt(D[i][t] / D[t][t]));
        if (D[i][t] != 0) {
          swap_rows(t, i);
          done = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (D[t][j] == 0) continue;
        add_col(j, t, -BigInt(D[t][j] / D[t][t]));
        if (D[t][j] != 0) {
          swap_cols(t, j);
          done = false;
        }
      }
      if (!done) continue;
      // Divisibility: fold an offending row into the pivot row and repeat.
      for (std::size_t i = t + 1; i < rows && done; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (D[i][j] % D[t][t] != 0) {
            add_row(t, i, 1);
            done = false;
            break;
          }
    }
    if (D[t][t] < 0) {
      for (auto& v : D[t]) v = -v;
      for (auto& v : U[t]) v = -v;
    }
  }
  return r;
}

BigMatrix to_big(const IntMatrix& A) {
  BigMatrix out;
  for (const auto& row : A) out.emplace_back(row.begin(), row.end());
  return out;
}

BigMatrix multiply(const BigMatrix& A, const BigMatrix& B) {
  const std::size_t n = A.size(), k = B.size(), m = k ? B[0].size() : 0;
  BigMatrix C(n, std::vector<BigInt>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (A[i].size() != k) throw InputError("matrix shapes do not agree");
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
  }
  return C;
}

BigInt determinant(const BigMatrix& A) {
  const std::size_t n = A.size();
  if (n == 0) return 1;
  BigMatrix M = A;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && M[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(M[k], M[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
    prev = M[k][k];
  }
  return sign * M[n - 1][n - 1];
}

BigInt count_solutions_mod_m(const IntMatrix& A, int columns, int m) {
  if (m < 1) throw InputError("modulus must be positive");
  for (const auto& row : A)
    if (static_cast<int>(row.size()) != columns) throw InputError("row length differs from column count");
  BigMatrix lifted;
  for (const auto& row : A) {
    std::vector<BigInt> r;
    for (auto v : row) r.emplace_back(((v % m) + m) % m);
    lifted.push_back(std::move(r));
  }
  const auto factors = smith_normal_form(lifted).invariant_factors();
  BigInt count = boost::multiprecision::pow(BigInt(m), static_cast<unsigned>(columns - static_cast<int>(factors.size())));
  for (const auto& d : factors) count *= boost::multiprecision::gcd(d, BigInt(m));
  return count;
}

std::uint64_t phi_invariant(const OrientedPDCode& pd, const FiniteBiquasile& X, RoleConvention convention) {
  return count_colorings(fundamental_presentation(dual_graph(pd), convention), X);
}

std::uint64_t phi_invariant(const OrientedPDCode& pd, const AlexanderParams& p, Engine engine,
                            RoleConvention convention) {
  p.validate();
  const auto dgd = dual_graph(pd);
  if (engine == Engine::generic) return count_colorings(fundamental_presentation(dgd, convention), materialize(p));
  const auto relations = crossing_relations(dgd, convention);
  const auto A = specialize(symbolic_matrix(dgd.vertex_count, relations), p);
  return to_u64(count_solutions_mod_m(A, dgd.vertex_count, p.m));
}

}  // namespace biq
