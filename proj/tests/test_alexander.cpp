#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "biq/alexander.hpp"
#include "biq/table.hpp"
#include "oracles.hpp"

using namespace biq;

namespace {

LaurentPoly mono(std::int64_t c, int d, int s, int n) { return LaurentPoly::monomial(c, d, s, n); }

const LaurentPoly kStar = mono(-1, 1, 1, 2);  // -dsn^2
const LaurentPoly kND = mono(1, 1, 0, 1);
const LaurentPoly kNS = mono(1, 0, 1, 1);
const LaurentPoly kMinusOne = LaurentPoly::constant(-1);
const LaurentPoly kZero;

// The 4_1 matrix over [u, v, w, x, y, z], with the first row's ns in the z
// column (the printed version has it in the x column; see below).
std::vector<std::vector<LaurentPoly>> figure_eight_matrix() {
  return {{kStar, kND, kMinusOne, kZero, kZero, kNS},
          {kMinusOne, kND, kStar, kZero, kNS, kZero},
          {kND, kZero, kZero, kNS, kMinusOne, kStar},
          {kZero, kZero, kND, kNS, kStar, kMinusOne}};
}

bool equal_up_to_permutation(const LaurentMatrix& ours, const std::vector<std::vector<LaurentPoly>>& theirs) {
  if (ours.rows != static_cast<int>(theirs.size())) return false;
  std::vector<int> cols(static_cast<std::size_t>(ours.cols));
  std::iota(cols.begin(), cols.end(), 0);
  auto key = [](const std::vector<LaurentPoly>& row) {
    std::vector<std::string> k;
    for (const auto& p : row) k.push_back(p.to_string());
    return k;
  };
  std::multiset<std::vector<std::string>> target;
  for (const auto& r : theirs) target.insert(key(r));
  do {
    std::multiset<std::vector<std::string>> got;
    for (int r = 0; r < ours.rows; ++r) {
      std::vector<LaurentPoly> row;
      for (int c : cols) row.push_back(ours.at(r, c));
      got.insert(key(row));
    }
    if (got == target) return true;
  } while (std::next_permutation(cols.begin(), cols.end()));
  return false;
}

bool same_row_space_mod_p(const IntMatrix& a, const IntMatrix& b, int p) {
  IntMatrix both = a;
  both.insert(both.end(), b.begin(), b.end());
  const int r = oracle::rank_mod_p(a, p);
  return r == oracle::rank_mod_p(b, p) && r == oracle::rank_mod_p(both, p);
}

IntMatrix permute_columns(const IntMatrix& a, const std::vector<int>& cols) {
  IntMatrix out;
  for (const auto& row : a) {
    std::vector<std::int64_t> r;
    for (int c : cols) r.push_back(row[c]);
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("materialized examples") {
  const auto X = materialize({3, 1, 1, 2});
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      CHECK(X.star()(x, y) == (x + y) % 3);
      CHECK(X.dot()(x, y) == (x + 2 * y) % 3);
    }
  CHECK(AlexanderParams{3, 1, 1, 2}.star_coefficient() == 1);
  CHECK(AlexanderParams{3, 1, 1, 1}.star_coefficient() == 2);
  CHECK(enumerate_params(2).size() == 1);
  CHECK(check_axioms(materialize(enumerate_params(2).front())));
  CHECK_THROWS_AS(materialize({4, 2, 1, 1}), InputError);
  CHECK_THROWS_AS(materialize({3, 0, 1, 1}), InputError);
  CHECK_THROWS_AS(materialize({1, 1, 1, 1}), InputError);
}

TEST_CASE("configuration counts are phi(m)^3") {
  for (int m = 2; m <= 12; ++m) {
    const auto phi = static_cast<std::size_t>(euler_phi(m));
    CHECK(enumerate_params(m).size() == phi * phi * phi);
  }
  CHECK(enumerate_params(3).size() == 8);
  CHECK(enumerate_params(7).size() == 216);
}

TEST_CASE("every configuration is a biquasile") {
  for (int m = 2; m <= 10; ++m)
    for (const auto& p : enumerate_params(m)) REQUIRE(check_axioms(materialize(p)));
}

TEST_CASE("closed forms of f and g") {
  for (int m : {5, 7, 8}) {
    for (const auto& p : enumerate_params(m)) {
      const auto X = materialize(p);
      auto st = [&](int u, int v) { return X.star()(u, v); };
      auto dt = [&](int u, int v) { return X.dot()(u, v); };
      const std::int64_t d = p.d, n = p.n, s = p.s;
      auto md = [&](std::int64_t v) { return static_cast<int>(((v % m) + m) % m); };
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y) {
              const int f = st(x, dt(a, st(b, dt(x, y))));
              REQUIRE(f == md(d * n * a - n * n * n * s * s * d * b + s * s * n * n * y));
              const int g = st(y, dt(st(a, dt(x, y)), b));
              REQUIRE(g == md(-n * n * n * d * d * s * a + n * s * b + d * d * n * n * x));
            }
    }
  }
}

TEST_CASE("Z_3 axiom table") {
  std::set<std::array<int, 4>> passing;
  for (int d = 0; d < 3; ++d)
    for (int n = 0; n < 3; ++n)
      for (int s = 0; s < 3; ++s) {
        OperationTable star(3), dot(3);
        const int c = ((-d * s * n * n) % 3 + 3) % 3;
        for (int x = 0; x < 3; ++x)
          for (int y = 0; y < 3; ++y) {
            star.set(x, y, (c * x + n * y) % 3);
            dot.set(x, y, (d * x + s * y) % 3);
          }
        if (!is_latin(star) || !is_latin(dot)) continue;
        if (check_axioms(FiniteBiquasile(star, dot))) passing.insert({d, n, s, c});
      }
  // The seven printed rows (d, n, s, -n^2ds) plus the duplicate (1, 2, 2).
  const std::set<std::array<int, 4>> expected{{1, 1, 2, 1}, {2, 1, 1, 1}, {2, 2, 1, 1}, {1, 1, 1, 2},
                                              {1, 2, 1, 2}, {2, 1, 2, 2}, {2, 2, 2, 2}, {1, 2, 2, 1}};
  CHECK(passing == expected);
}

TEST_CASE("classification against the relabeling oracle") {
  for (int m = 2; m <= 6; ++m) {
    std::set<std::vector<int>> forms;
    for (const auto& p : enumerate_params(m)) forms.insert(oracle::min_relabeling(materialize(p)));
    const auto scan = classify_params(m);
    CAPTURE(m);
    CHECK(scan.configurations == enumerate_params(m).size());
    CHECK(scan.classes == forms.size());
  }
  // Distinct unit triples give non-isomorphic structures for these moduli.
  CHECK(classify_params(3).classes == 8);
  CHECK(classify_params(5).classes == 64);
}

TEST_CASE("Laurent arithmetic") {
  const auto p = kStar + kND + kNS + kMinusOne;
  CHECK(p.to_string() == "-1+sn+dn-dsn^2");
  CHECK((p + (-p)).is_zero());
  CHECK((kND * kNS).to_string() == "dsn^2");
  CHECK((kStar + (kND * kNS)).is_zero());
  const auto inv = mono(3, -1, 0, 2);
  CHECK(inv.to_string() == "3d^-1n^2");
  // 3 * 2^-1 * 3^2 mod 5 = 3 * 3 * 9 = 81 = 1
  CHECK(inv.evaluate({5, 2, 3, 1}) == 1);
  CHECK(kStar.evaluate({2, 1, 1, 1}) == 1);
  CHECK(LaurentPoly().evaluate({7, 3, 2, 5}) == 0);
  CHECK(LaurentPoly().to_string() == "0");
}

TEST_CASE("specialization") {
  LaurentMatrix zero(2, 3);
  for (const auto& row : specialize(zero, {5, 2, 3, 4}))
    for (auto v : row) CHECK(v == 0);
  // At d = n = s = 1 mod 2 every entry becomes its coefficient sum.
  LaurentMatrix M(1, 2);
  M.at(0, 0) = kStar + kND + mono(4, -3, 2, 0);
  M.at(0, 1) = kMinusOne + kNS;
  const auto S = specialize(M, {2, 1, 1, 1});
  CHECK(S[0][0] == 0);
  CHECK(S[0][1] == 0);
  CHECK_THROWS_AS(specialize(M, {4, 2, 1, 1}), InputError);
}

TEST_CASE("relation rows") {
  CrossingRelation r{0, 3, 1, 2, 1, 0};
  auto row = symbolic_relation_row(r, 4);
  CHECK(row[0] == kStar);
  CHECK(row[1] == kND);
  CHECK(row[2] == kNS);
  CHECK(row[3] == kMinusOne);
  r.sign = -1;
  row = symbolic_relation_row(r, 4);
  CHECK(row[3] == kStar);
  CHECK(row[0] == kMinusOne);
  // x = y: the two coefficients merge in one column.
  CrossingRelation loop{2, 2, 0, 1, 1, 0};
  row = symbolic_relation_row(loop, 3);
  CHECK(row[2] == kStar + kMinusOne);
  CHECK_THROWS(symbolic_relation_row(CrossingRelation{0, 5, 1, 2, 1, 0}, 4));
}

TEST_CASE("symbolic and numeric linearizations agree") {
  std::mt19937 rng(11);
  for (const auto& e : KnotTable::bundled().entries()) {
    const auto g = dual_graph(e.pd);
    const auto rels = crossing_relations(g);
    const auto M = symbolic_matrix(g.vertex_count, rels);
    for (int trial = 0; trial < 3; ++trial) {
      const int m = std::uniform_int_distribution<int>(2, 12)(rng);
      const auto params = enumerate_params(m);
      const auto p = params[std::uniform_int_distribution<std::size_t>(0, params.size() - 1)(rng)];
      REQUIRE(specialize(M, p) == numeric_matrix(g.vertex_count, rels, p));
    }
  }
}

TEST_CASE("figure-eight symbolic matrix") {
  const auto g = dual_graph(KnotTable::bundled().find("4_1")->pd);
  const auto M = symbolic_matrix(g.vertex_count, crossing_relations(g));
  CHECK(M.rows == 4);
  CHECK(M.cols == 6);
  CHECK(equal_up_to_permutation(M, figure_eight_matrix()));
  // As printed, the first row reads (-dsn^2, nd, -1, ns, 0, 0); no relabeling
  // of the diagram produces that row together with the other three.
  auto printed = figure_eight_matrix();
  printed[0] = {kStar, kND, kMinusOne, kNS, kZero, kZero};
  CHECK_FALSE(equal_up_to_permutation(M, printed));
}

TEST_CASE("figure-eight system over Z_3") {
  const IntMatrix equations{{0, 0, 1, 2, 2, 1}, {0, 1, 0, 1, 2, 2}, {2, 2, 1, 1, 0, 0}, {2, 1, 2, 0, 0, 1}};
  const IntMatrix reduced{{1, 1, 0, 1, 2, 1}, {0, 1, 0, 1, 2, 2}, {0, 0, 1, 2, 2, 1}, {0, 0, 0, 1, 0, 2}};
  CHECK(same_row_space_mod_p(equations, reduced, 3));
  CHECK(oracle::rank_mod_p(reduced, 3) == 4);

  const auto g = dual_graph(KnotTable::bundled().find("4_1")->pd);
  const auto A = specialize(symbolic_matrix(g.vertex_count, crossing_relations(g)), {3, 1, 1, 2});
  CHECK(oracle::rank_mod_p(A, 3) == 4);
  std::vector<int> cols{0, 1, 2, 3, 4, 5};
  bool found = false;
  do found = same_row_space_mod_p(permute_columns(A, cols), reduced, 3);
  while (!found && std::next_permutation(cols.begin(), cols.end()));
  CHECK(found);
}

TEST_CASE("JSON and CSV output") {
  const auto g = dual_graph(KnotTable::bundled().find("3_1")->pd);
  const auto M = symbolic_matrix(g.vertex_count, crossing_relations(g));
  const auto text = to_json(M);
  CHECK(text.find("[1,1,2,-1]") != std::string::npos);
  const auto back = laurent_matrix_from_json(text);
  CHECK(back.rows == M.rows);
  CHECK(back.entries == M.entries);
  CHECK_THROWS_AS(laurent_matrix_from_json("{\"rows\": 1}"), ParseError);
  CHECK_THROWS_AS(laurent_matrix_from_json("not json"), ParseError);
  CHECK(scan_csv({{2, 1, 1}, {3, 8, 7}}) == "m,configurations,classes\n2,1,1\n3,8,7\n");
}
