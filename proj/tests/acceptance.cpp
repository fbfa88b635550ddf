// One PASS/FAIL line per acceptance criterion.
//
//   acceptance [--known 6,...]
//
// Exit status is 0 when every criterion passes, or when the only failing
// criteria are those listed after --known (their FAIL lines are still
// printed, with per-entry detail).

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "biq/alexander.hpp"
#include "biq/algebra.hpp"
#include "biq/diagram.hpp"
#include "biq/solve.hpp"
#include "biq/table.hpp"

using namespace biq;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

FiniteBiquasile load(const std::string& name) {
  std::ifstream in(std::string(BIQ_DATA_DIR) + "/structures/" + name + ".biq");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_block_matrix(ss.str());
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

Outcome criterion1() {
  Outcome out;
  const auto t0 = Clock::now();
  const std::map<int, std::pair<std::size_t, std::size_t>> expected{{2, {4, 2}}, {3, {72, 19}}, {4, {2880, 177}}};
  std::ostringstream summary;
  for (const auto& [n, want] : expected) {
    const auto all = enumerate_biquasiles(n);
    const auto classes = iso_classes(all).count();
    summary << "n=" << n << ": " << all.size() << "/" << classes << "  ";
    out.require(all.size() == want.first && classes == want.second,
                "order " + std::to_string(n) + " gave " + std::to_string(all.size()) + " structures, " +
                    std::to_string(classes) + " classes");
  }
  const double t = seconds_since(t0);
  out.require(t < 300, "runtime " + std::to_string(t) + " s");
  summary << "(" << t << " s)";
  out.notes.insert(out.notes.begin(), summary.str());
  return out;
}

Outcome criterion2() {
  Outcome out;
  const auto t0 = Clock::now();
  const std::vector<std::pair<std::size_t, std::size_t>> expected{{1, 1},    {8, 7},     {8, 7},   {64, 34}, {8, 7},
                                                                  {216, 137}, {64, 33}, {216, 152}, {64, 34}};
  for (int m = 2; m <= 10; ++m) {
    const auto scan = classify_params(m);
    const auto& want = expected[static_cast<std::size_t>(m - 2)];
    out.require(scan.configurations == want.first && scan.classes == want.second,
                "m=" + std::to_string(m) + " gave (" + std::to_string(scan.configurations) + "," +
                    std::to_string(scan.classes) + ")");
  }
  const double t = seconds_since(t0);
  out.require(t < 600, "runtime " + std::to_string(t) + " s");
  out.notes.insert(out.notes.begin(), "m=2..10 (" + std::to_string(t) + " s)");
  return out;
}

Outcome criterion3() {
  Outcome out;
  // (d, n, s, -n^2ds mod 3) for every unit triple passing the axioms.
  std::set<std::array<int, 4>> passing;
  for (int d = 1; d < 3; ++d)
    for (int n = 1; n < 3; ++n)
      for (int s = 1; s < 3; ++s) {
        const AlexanderParams p{3, d, n, s};
        if (check_axioms(materialize(p))) passing.insert({d, n, s, p.star_coefficient()});
      }
  const std::set<std::array<int, 4>> expected{{1, 1, 2, 1}, {2, 1, 1, 1}, {2, 2, 1, 1}, {1, 1, 1, 2},
                                              {1, 2, 1, 2}, {2, 1, 2, 2}, {2, 2, 2, 2}, {1, 2, 2, 1}};
  out.require(passing == expected, std::to_string(passing.size()) + " passing triples differ from the table");
  out.notes.insert(out.notes.begin(), std::to_string(passing.size()) + " triples pass");
  return out;
}

Outcome criterion4() {
  Outcome out;
  const auto X = load("X69");
  const auto& pd = KnotTable::bundled().find("3_1")->pd;
  const auto phi = phi_invariant(pd, X);
  out.require(phi == 9, "Phi = " + std::to_string(phi));

  const std::set<std::array<int, 3>> checkmarks{{1, 1, 1}, {1, 2, 3}, {1, 3, 2}, {2, 1, 2}, {2, 2, 1},
                                                {2, 3, 3}, {3, 1, 3}, {3, 2, 2}, {3, 3, 1}};
  const auto g = dual_graph(pd);
  const auto rels = crossing_relations(g);
  const auto colorings = enumerate_colorings(fundamental_presentation(g), X);
  std::set<std::array<int, 3>> triples;
  for (const auto& c : colorings) triples.insert({c[rels[0].x] + 1, c[rels[0].b] + 1, c[rels[0].a] + 1});
  out.require(triples == checkmarks, "(y,a,b) triples differ from the checkmarked rows");
  out.notes.insert(out.notes.begin(), "Phi = " + std::to_string(phi) + ", " + std::to_string(triples.size()) +
                                          " triples");
  return out;
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

int rank_mod(IntMatrix A, int p) {
  int rank = 0;
  const int cols = A.empty() ? 0 : static_cast<int>(A[0].size());
  for (int c = 0; c < cols && rank < static_cast<int>(A.size()); ++c) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(A.size()); ++r)
      if (((A[r][c] % p) + p) % p != 0) pivot = r;
    if (pivot < 0) continue;
    std::swap(A[pivot], A[rank]);
    const std::int64_t v = ((A[rank][c] % p) + p) % p;
    std::int64_t inv = 1;
    while (v * inv % p != 1) ++inv;
    for (auto& e : A[rank]) e = ((e * inv) % p + p) % p;
    for (int r = 0; r < static_cast<int>(A.size()); ++r) {
      if (r == rank) continue;
      const std::int64_t f = ((A[r][c] % p) + p) % p;
      for (int k = 0; k < cols; ++k) A[r][k] = (((A[r][k] - f * A[rank][k]) % p) + p) % p;
    }
    ++rank;
  }
  return rank;
}

bool row_equivalent(const IntMatrix& a, const IntMatrix& b, int p) {
  IntMatrix both = a;
  both.insert(both.end(), b.begin(), b.end());
  const int r = rank_mod(both, p);
  return r == rank_mod(a, p) && r == rank_mod(b, p);
}

Outcome criterion5() {
  Outcome out;
  const AlexanderParams p{3, 1, 1, 2};
  const auto& pd = KnotTable::bundled().find("4_1")->pd;
  const auto generic = phi_invariant(pd, p, Engine::generic);
  const auto linear = phi_invariant(pd, p, Engine::linear);
  out.require(generic == 9 && linear == 9,
              "generic " + std::to_string(generic) + ", linear " + std::to_string(linear));

  const IntMatrix reduced{{1, 1, 0, 1, 2, 1}, {0, 1, 0, 1, 2, 2}, {0, 0, 1, 2, 2, 1}, {0, 0, 0, 1, 0, 2}};
  const auto g = dual_graph(pd);
  const auto A = specialize(symbolic_matrix(g.vertex_count, crossing_relations(g)), p);
  // Region numbering is ours, so match up to a relabeling of the columns.
  std::vector<int> cols(A.empty() ? 0 : A[0].size());
  std::iota(cols.begin(), cols.end(), 0);
  bool found = false;
  do found = row_equivalent(permute_columns(A, cols), reduced, 3);
  while (!found && std::next_permutation(cols.begin(), cols.end()));
  out.require(found, "specialized matrix not row-equivalent to the reduced matrix under any column relabeling");
  const int rank = rank_mod(A, 3);
  out.require(rank == 4, "rank " + std::to_string(rank));
  out.notes.insert(out.notes.begin(), "generic " + std::to_string(generic) + ", linear " + std::to_string(linear) +
                                          ", rank " + std::to_string(rank));
  return out;
}

struct ExpectedRow {
  const char* structure;
  std::vector<std::uint64_t> values;
};

const std::vector<std::string> kKnots{"3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "7_1", "7_2",
                                      "7_3", "7_4", "7_5", "7_6", "7_7", "8_1", "8_2", "8_3", "8_4",
                                      "8_5", "8_6", "8_7", "8_8", "8_9", "8_10", "8_11", "8_12", "8_13",
                                      "8_14", "8_15", "8_16", "8_17", "8_18", "8_19", "8_20", "8_21"};
const std::vector<std::string> kLinks{"L2a1", "L4a1", "L5a1", "L6a1", "L6a2", "L6a3", "L6a4", "L6a5", "L6n1",
                                      "L7a1", "L7a2", "L7a3", "L7a4", "L7a5", "L7a6", "L7a7", "L7n1", "L7n2"};

const std::vector<ExpectedRow> kKnotTable{
    {"X1", {25, 25, 25, 25, 125, 25, 25, 25, 125, 25, 25, 25, 125, 25, 25, 25, 25, 25,
            25, 25, 25, 125, 25, 25, 125, 25, 25, 25, 125, 25, 25, 25, 25, 25, 25}},
    {"X2", {25, 125, 125, 25, 25, 25, 25, 25, 25, 25, 125, 25, 25, 25, 25, 25, 25, 25,
            25, 25, 25, 125, 125, 25, 25, 25, 25, 25, 25, 125, 25, 125, 25, 25, 125}},
    {"X3", std::vector<std::uint64_t>(35, 25)},
};
const std::vector<ExpectedRow> kLinkTable{
    {"X1", {25, 25, 25, 25, 25, 25, 25, 25, 25, 25, 25, 125, 25, 125, 25, 25, 125, 25}},
    {"X2", {25, 25, 25, 25, 125, 25, 25, 25, 25, 25, 125, 25, 25, 25, 25, 25, 125, 25}},
    {"X3", {125, 125, 125, 125, 125, 125, 25, 625, 625, 125, 125, 125, 125, 125, 125, 625, 125, 125}},
};

struct Mismatch {
  std::string structure, diagram;
  std::uint64_t computed = 0, expected = 0;
};

Outcome criterion6() {
  Outcome out;
  const auto t0 = Clock::now();
  const auto& table = KnotTable::bundled();
  std::vector<NamedStructure> structures;
  for (const char* s : {"X1", "X2", "X3"}) structures.push_back({s, load(s)});
  std::vector<NamedDiagram> diagrams;
  std::vector<std::uint64_t> expected_flat;  // [structure][diagram], knots then links
  for (const auto& n : kKnots) diagrams.push_back({n, table.find(n)->pd});
  for (const auto& n : kLinks) diagrams.push_back({n, table.find(n)->pd});
  for (std::size_t s = 0; s < 3; ++s) {
    expected_flat.insert(expected_flat.end(), kKnotTable[s].values.begin(), kKnotTable[s].values.end());
    expected_flat.insert(expected_flat.end(), kLinkTable[s].values.begin(), kLinkTable[s].values.end());
  }

  // Every global choice of role convention and diagram variant.
  std::string best_key;
  std::vector<Mismatch> best;
  bool first = true;
  std::ostringstream per_choice;
  for (const auto conv : RoleConvention::all())
    for (const auto variant :
         {DiagramVariant::id, DiagramVariant::mirror, DiagramVariant::reverse, DiagramVariant::mirror_reverse}) {
      TabulationOptions opts;
      opts.convention = conv;
      opts.variant = variant;
      const auto t = tabulate_phi(structures, diagrams, opts);
      std::vector<Mismatch> mismatches;
      for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t d = 0; d < diagrams.size(); ++d) {
          const auto want = expected_flat[s * diagrams.size() + d];
          if (t.values[s][d] != want) mismatches.push_back({t.structures[s], t.diagrams[d], t.values[s][d], want});
        }
      per_choice << ' ' << convention_key(opts) << '=' << mismatches.size();
      if (first || mismatches.size() < best.size()) {
        best = mismatches;
        best_key = convention_key(opts);
        first = false;
      }
    }

  // Spot anchors under the default choice.
  const auto phi = [&](const char* s, const char* d) { return phi_invariant(table.find(d)->pd, load(s)); };
  out.require(phi("X1", "7_2") == 125, "anchor X1(7_2)");
  out.require(phi("X2", "8_18") == 125, "anchor X2(8_18)");
  out.require(phi("X3", "L7a7") == 625, "anchor X3(L7a7)");
  out.require(phi("X2", "L6a2") == 125, "anchor X2(L6a2)");
  bool x3_knots = true;
  for (const auto& k : kKnots) x3_knots = x3_knots && phi_invariant(table.find(k)->pd, structures[2].structure) == 25;
  out.require(x3_knots, "anchor X3(every knot) = 25");

  const double t = seconds_since(t0);
  out.require(t < 900, "runtime " + std::to_string(t) + " s");
  out.require(best.empty(), "best global choice " + best_key + " leaves " + std::to_string(best.size()) +
                                " of " + std::to_string(expected_flat.size()) + " entries irreproducible");
  for (const auto& m : best)
    out.notes.push_back("  " + m.structure + "(" + m.diagram + "): computed " + std::to_string(m.computed) +
                        ", table " + std::to_string(m.expected));
  out.notes.push_back("  mismatches per choice:" + per_choice.str());
  out.notes.insert(out.notes.begin(), std::to_string(expected_flat.size()) + " entries (" + std::to_string(t) + " s)");
  return out;
}

Outcome criterion7() {
  Outcome out;
  std::size_t checks = 0;

  // Axiom checker and f/g reformulation on all order <= 3 structures, and on
  // every pair of Latin squares of order 3 (biquasile or not).
  std::vector<FiniteBiquasile> small;
  for (int n = 1; n <= 3; ++n)
    for (auto& X : enumerate_biquasiles(n)) small.push_back(X);
  for (const auto& X : small) {
    out.require(check_axioms(X) && check_axioms_fg(X), "axiom/f-g disagreement");
    ++checks;
  }
  {
    std::vector<OperationTable> latin;
    std::vector<int> p{0, 1, 2};
    std::vector<std::vector<int>> perms;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    for (const auto& a : perms)
      for (const auto& b : perms)
        for (const auto& c : perms) {
          OperationTable t(3);
          for (int y = 0; y < 3; ++y) t.set(0, y, a[y]), t.set(1, y, b[y]), t.set(2, y, c[y]);
          if (is_latin(t)) latin.push_back(t);
        }
    for (const auto& s : latin)
      for (const auto& d : latin) {
        const FiniteBiquasile X(s, d);
        out.require(check_axioms(X) == check_axioms_fg(X), "axiom/f-g disagreement on a Latin pair");
        ++checks;
      }
  }

  // Materialized Alexander structures, m <= 10.
  for (int m = 2; m <= 10; ++m)
    for (const auto& p : enumerate_params(m)) {
      out.require(check_axioms(materialize(p)), "Alexander " + p.to_string() + " fails the axioms");
      ++checks;
    }

  // Generic search against exhaustive assignment on small diagrams.
  for (const auto& e : KnotTable::bundled().entries()) {
    if (e.pd.crossing_count() > 5) continue;
    const auto g = dual_graph(e.pd);
    const auto rels = crossing_relations(g);
    const auto pres = fundamental_presentation(g);
    for (const auto& X : small) {
      const int n = X.order();
      std::vector<int> c(static_cast<std::size_t>(g.vertex_count), 0);
      std::uint64_t brute = 0;
      while (true) {
        bool good = true;
        for (const auto& r : rels) {
          const int src = r.sign > 0 ? c[r.x] : c[r.y];
          const int dst = r.sign > 0 ? c[r.y] : c[r.x];
          good = good && X.star()(src, X.dot()(c[r.a], c[r.b])) == dst;
        }
        brute += good;
        int i = 0;
        while (i < g.vertex_count && ++c[i] == n) c[i++] = 0;
        if (i == g.vertex_count) break;
      }
      out.require(count_colorings(pres, X) == brute, "generic vs brute force on " + e.name);
      ++checks;
    }
  }

  // Table PD against braid closure.
  for (const char* name : {"3_1", "4_1"}) {
    const auto* e = KnotTable::bundled().find(name);
    const auto closure = braid_closure(*e->braid);
    for (const auto& X : small) {
      out.require(phi_invariant(e->pd, X) == phi_invariant(closure, X), std::string("Reidemeister regression on ") + name);
      ++checks;
    }
  }

  // Smith normal form postconditions.
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> dim(1, 5), val(-9, 9);
  for (int trial = 0; trial < 1000; ++trial) {
    const int r = dim(rng), c = dim(rng);
    BigMatrix A(static_cast<std::size_t>(r), std::vector<BigInt>(static_cast<std::size_t>(c)));
    for (auto& row : A)
      for (auto& v : row) v = val(rng);
    const auto s = smith_normal_form(A);
    bool ok = multiply(multiply(s.U, A), s.V) == s.D && abs(determinant(s.U)) == 1 && abs(determinant(s.V)) == 1;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        if (i != j && s.D[i][j] != 0) ok = false;
    const auto f = s.invariant_factors();
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
      if (f[i + 1] % f[i] != 0) ok = false;
    out.require(ok, "SNF postcondition, trial " + std::to_string(trial));
    ++checks;
  }

  // Directed component count of closed braids.
  std::uniform_int_distribution<int> strands(2, 5), length(1, 12), coin(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    BraidWord w;
    w.strands = strands(rng);
    // Use every generator at least once so the closure is not split.
    for (int i = 1; i < w.strands; ++i) w.letters.push_back(coin(rng) ? i : -i);
    const int extra = length(rng);
    for (int i = 0; i < extra; ++i) {
      const int g = std::uniform_int_distribution<int>(1, w.strands - 1)(rng);
      w.letters.push_back(coin(rng) ? g : -g);
    }
    std::shuffle(w.letters.begin(), w.letters.end(), rng);
    const int got = directed_component_count(dual_graph(braid_closure(w)));
    out.require(got == w.strands - 1, "directed components " + std::to_string(got) + " for " +
                                          std::to_string(w.strands) + " strands");
    ++checks;
  }
  out.notes.insert(out.notes.begin(), std::to_string(checks) + " checks");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--known" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string item;
      while (std::getline(ss, item, ',')) known.insert(std::stoi(item));
    } else {
      std::cerr << "usage: acceptance [--known N,...]\n";
      return 1;
    }
  }

  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"enumeration counts and isomorphism classes, orders 2-4", criterion1},
      {"Alexander scan, m = 2..10", criterion2},
      {"Z_3 Alexander axiom table", criterion3},
      {"trefoil colorings by the order-3 example", criterion4},
      {"figure-eight linear system over Z_3", criterion5},
      {"order-5 tables for knots and links", criterion6},
      {"property suites", criterion7},
  };
  bool unexpected = false;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    const auto outcome = criteria[i].second();
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  " << id << "  " << criteria[i].first;
    if (!outcome.notes.empty()) std::cout << ": " << outcome.notes.front();
    std::cout << '\n';
    for (std::size_t k = 1; k < outcome.notes.size(); ++k) std::cout << "        " << outcome.notes[k] << '\n';
    std::cout.flush();
    if (!outcome.pass && !known.contains(id)) unexpected = true;
  }
  return unexpected ? 1 : 0;
}
