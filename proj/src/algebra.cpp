#include "biq/algebra.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "parallel.hpp"

namespace biq {

OperationTable::OperationTable(int order)
    : order_(order), cells_(static_cast<std::size_t>(order * order), 0) {
  if (order < 1 || order > 255) throw InputError("table order must lie in 1..255");
}

OperationTable OperationTable::from_rows(const std::vector<std::vector<int>>& rows) {
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw InputError("empty operation table");
  OperationTable t(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw InputError("operation table row " + std::to_string(i + 1) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
    for (int j = 0; j < n; ++j) {
      const int v = rows[i][j];
      if (v < 1 || v > n)
        throw InputError("entry " + std::to_string(v) + " at (" + std::to_string(i + 1) + "," +
                         std::to_string(j + 1) + ") outside 1.." + std::to_string(n));
      t.set(i, j, v - 1);
    }
  }
  return t;
}

bool is_latin(const OperationTable& t) {
  const int n = t.order();
  std::vector<char> seen(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 0; j < n; ++j) {
      const int v = t(i, j);
      if (v < 0 || v >= n) throw InputError("operation table entry out of range");
      if (seen[v]++) return false;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 0; j < n; ++j)
      if (seen[t(j, i)]++) return false;
  }
  return true;
}

FiniteBiquasile::FiniteBiquasile(OperationTable star, OperationTable dot)
    : star_(std::move(star)), dot_(std::move(dot)) {
  if (star_.order() != dot_.order()) throw StructureError("star and dot tables differ in order");
  if (!is_latin(star_)) throw StructureError("star table is not a Latin square");
  if (!is_latin(dot_)) throw StructureError("dot table is not a Latin square");
}

Divisions divisions(const FiniteBiquasile& x) {
  const int n = x.order();
  Divisions d{OperationTable(n), OperationTable(n), OperationTable(n), OperationTable(n)};
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int s = x.star()(a, b);
      const int t = x.dot()(a, b);
      d.star_left.set(a, s, b);
      d.star_right.set(s, b, a);
      d.dot_left.set(a, t, b);
      d.dot_right.set(t, b, a);
    }
  }
  return d;
}

bool check_axioms(const FiniteBiquasile& X) {
  const int n = X.order();
  const auto& S = X.star();
  const auto& D = X.dot();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          const int ax_xy = S(a, D(x, y));
          const int lhs1 = S(a, D(x, S(y, D(a, b))));
          const int rhs1 = S(ax_xy, D(x, S(y, D(ax_xy, b))));
          if (lhs1 != rhs1) return false;
          const int lhs2 = S(y, D(ax_xy, b));
          const int rhs2 = S(S(y, D(a, b)), D(S(a, D(x, S(y, D(a, b)))), b));
          if (lhs2 != rhs2) return false;
        }
  return true;
}

bool check_axioms_fg(const FiniteBiquasile& X) {
  const int n = X.order();
  const auto& S = X.star();
  const auto& D = X.dot();
  auto f = [&](int a, int b, int x, int y) { return S(x, D(a, S(b, D(x, y)))); };
  auto g = [&](int a, int b, int x, int y) { return S(y, D(S(a, D(x, y)), b)); };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = D(a, b);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          if (f(a, b, x, y) != f(a, b, S(x, ab), y)) return false;
          if (g(a, b, x, y) != g(a, b, x, S(y, ab))) return false;
        }
    }
  return true;
}

// ---------------------------------------------------------------------------
// Enumeration

EnumerationBudgetExceeded::EnumerationBudgetExceeded(std::vector<FiniteBiquasile> partial,
                                                     std::uint64_t nodes)
    : BudgetExceeded("enumeration node budget exhausted after " + std::to_string(nodes) +
                         " nodes (" + std::to_string(partial.size()) + " structures found)",
                     nodes),
      partial_(std::move(partial)) {}

namespace {

// Backtracking over both tables at once. Cells are filled in the order
// star[0], dot[0], star[1], dot[1], ... (row-major); after every assignment
// each axiom quadruple is evaluated as far as the known cells allow and the
// branch is cut on the first fully evaluated violation.
class LatinPairSearch {
 public:
  explicit LatinPairSearch(int n)
      : n_(n),
        cells_(static_cast<std::size_t>(2 * n * n), -1),
        row_used_(static_cast<std::size_t>(2 * n), 0),
        col_used_(static_cast<std::size_t>(2 * n), 0) {}

  int depth_limit() const { return 2 * n_ * n_; }

  bool try_assign(int depth, int value) {
    const int table = depth & 1;
    const int cell = depth >> 1;
    const int r = cell / n_;
    const int c = cell % n_;
    const std::uint32_t bit = 1u << value;
    auto& ru = row_used_[static_cast<std::size_t>(table * n_ + r)];
    auto& cu = col_used_[static_cast<std::size_t>(table * n_ + c)];
    if ((ru & bit) || (cu & bit)) return false;
    ru |= bit;
    cu |= bit;
    cells_[static_cast<std::size_t>(table * n_ * n_ + cell)] = static_cast<std::int8_t>(value);
    if (!consistent()) {
      unassign(depth, value);
      return false;
    }
    return true;
  }

  void unassign(int depth, int value) {
    const int table = depth & 1;
    const int cell = depth >> 1;
    const std::uint32_t bit = ~(1u << value);
    row_used_[static_cast<std::size_t>(table * n_ + cell / n_)] &= bit;
    col_used_[static_cast<std::size_t>(table * n_ + cell % n_)] &= bit;
    cells_[static_cast<std::size_t>(table * n_ * n_ + cell)] = -1;
  }

  FiniteBiquasile materialize() const {
    OperationTable s(n_), d(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        s.set(i, j, cells_[static_cast<std::size_t>(i * n_ + j)]);
        d.set(i, j, cells_[static_cast<std::size_t>(n_ * n_ + i * n_ + j)]);
      }
    return FiniteBiquasile(std::move(s), std::move(d));
  }

  // Depth-first search from `depth`. Returns false if stopped early.
  bool run(int depth, std::vector<FiniteBiquasile>& out, std::atomic<std::uint64_t>& nodes,
           std::uint64_t budget, std::atomic<bool>& stop) {
    if (stop.load(std::memory_order_relaxed)) return false;
    if (nodes.fetch_add(1, std::memory_order_relaxed) >= budget) {
      stop.store(true);
      return false;
    }
    if (depth == depth_limit()) {
      out.push_back(materialize());
      return true;
    }
    for (int v = 0; v < n_; ++v) {
      if (!try_assign(depth, v)) continue;
      const bool ok = run(depth + 1, out, nodes, budget, stop);
      unassign(depth, v);
      if (!ok) return false;
    }
    return true;
  }

 private:
  int S(int a, int b) const {
    return (a < 0 || b < 0) ? -1 : cells_[static_cast<std::size_t>(a * n_ + b)];
  }
  int D(int a, int b) const {
    return (a < 0 || b < 0) ? -1 : cells_[static_cast<std::size_t>(n_ * n_ + a * n_ + b)];
  }

  bool consistent() const {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        const int ab = D(a, b);
        for (int x = 0; x < n_; ++x)
          for (int y = 0; y < n_; ++y) {
            const int y_ab = S(y, ab);
            const int lhs1 = S(a, D(x, y_ab));
            const int u = S(a, D(x, y));
            const int w = S(y, D(u, b));
            if (lhs1 >= 0) {
              const int rhs1 = S(u, D(x, w));
              if (rhs1 >= 0 && rhs1 != lhs1) return false;
            }
            if (w >= 0) {
              const int rhs2 = S(y_ab, D(lhs1, b));
              if (rhs2 >= 0 && rhs2 != w) return false;
            }
          }
      }
    return true;
  }

  int n_;
  std::vector<std::int8_t> cells_;
  std::vector<std::uint32_t> row_used_;
  std::vector<std::uint32_t> col_used_;
};

using detail::parallel_for;
using detail::resolve_jobs;

}  // namespace

std::vector<FiniteBiquasile> enumerate_biquasiles(int n, const EnumerationOptions& options) {
  if (n < 1) throw InputError("biquasile order must be positive");
  if (n > 8) throw InputError("exhaustive enumeration is limited to order <= 8");
  if (n >= 5 && !options.node_budget)
    throw InputError("enumeration of order >= 5 requires an explicit node budget");
  const std::uint64_t budget = options.node_budget.value_or(UINT64_MAX);

  // Split the tree at a fixed prefix depth and search each branch
  // independently.
  const int prefix_depth = std::min(3, 2 * n * n);
  std::vector<std::vector<int>> prefixes;
  {
    LatinPairSearch probe(n);
    std::vector<int> cur;
    auto expand = [&](auto&& self, int depth) -> void {
      if (depth == prefix_depth) {
        prefixes.push_back(cur);
        return;
      }
      for (int v = 0; v < n; ++v) {
        if (!probe.try_assign(depth, v)) continue;
        cur.push_back(v);
        self(self, depth + 1);
        cur.pop_back();
        probe.unassign(depth, v);
      }
    };
    expand(expand, 0);
  }

  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::vector<std::vector<FiniteBiquasile>> found(prefixes.size());
  parallel_for(prefixes.size(), options.jobs, [&](std::size_t i) {
    LatinPairSearch search(n);
    for (int d = 0; d < prefix_depth; ++d) search.try_assign(d, prefixes[i][static_cast<std::size_t>(d)]);
    search.run(prefix_depth, found[i], nodes, budget, stop);
  });

  std::vector<FiniteBiquasile> all;
  for (auto& f : found) std::move(f.begin(), f.end(), std::back_inserter(all));
  std::sort(all.begin(), all.end());
  if (stop.load()) throw EnumerationBudgetExceeded(std::move(all), nodes.load());
  return all;
}

// ---------------------------------------------------------------------------
// Homomorphisms and isomorphism

bool BiquasileMap::is_homomorphism(const FiniteBiquasile& source, const FiniteBiquasile& target) const {
  const int n = source.order();
  if (static_cast<int>(image.size()) != n) return false;
  for (int v : image)
    if (v < 0 || v >= target.order()) return false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (image[source.star()(a, b)] != target.star()(image[a], image[b])) return false;
      if (image[source.dot()(a, b)] != target.dot()(image[a], image[b])) return false;
    }
  return true;
}

bool BiquasileMap::is_bijective() const {
  std::vector<int> sorted = image;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != static_cast<int>(i)) return false;
  return true;
}

FiniteBiquasile relabel(const FiniteBiquasile& x, std::span<const int> image) {
  const int n = x.order();
  OperationTable s(n), d(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      s.set(image[a], image[b], image[x.star()(a, b)]);
      d.set(image[a], image[b], image[x.dot()(a, b)]);
    }
  return FiniteBiquasile(std::move(s), std::move(d));
}

namespace {

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const FiniteBiquasile& x) : x_(x), n_(x.order()) {}

  CanonicalForm run() {
    std::vector<int> seq;
    std::vector<int> label(static_cast<std::size_t>(n_), -1);
    for (int seed = 0; seed < n_; ++seed) {
      seq.assign(1, seed);
      std::fill(label.begin(), label.end(), -1);
      label[seed] = 0;
      extend(seq, label, 0);
    }
    const int m = n_;
    OperationTable s(m), d(m);
    for (int i = 0; i < m * m; ++i) {
      s.set(i / m, i % m, best_[static_cast<std::size_t>(i)]);
      d.set(i / m, i % m, best_[static_cast<std::size_t>(m * m + i)]);
    }
    return {FiniteBiquasile(std::move(s), std::move(d)), best_labeling_};
  }

 private:
  void extend(std::vector<int> seq, std::vector<int> label, std::size_t t) {
    while (t < seq.size()) {
      for (std::size_t i = 0; i <= t; ++i) {
        const std::size_t pairs[2][2] = {{i, t}, {t, i}};
        const int count = (i == t) ? 1 : 2;
        for (int k = 0; k < count; ++k) {
          const int p = seq[pairs[k][0]];
          const int q = seq[pairs[k][1]];
          for (int r : {x_.star()(p, q), x_.dot()(p, q)}) {
            if (label[r] < 0) {
              label[r] = static_cast<int>(seq.size());
              seq.push_back(r);
            }
          }
        }
      }
      ++t;
    }
    if (static_cast<int>(seq.size()) == n_) {
      consider(label);
      return;
    }
    for (int e = 0; e < n_; ++e) {
      if (label[e] >= 0) continue;
      auto next_label = label;
      auto next_seq = seq;
      next_label[e] = static_cast<int>(next_seq.size());
      next_seq.push_back(e);
      extend(std::move(next_seq), std::move(next_label), t);
    }
  }

  void consider(const std::vector<int>& label) {
    const int n = n_;
    std::vector<std::uint8_t> cand(static_cast<std::size_t>(2 * n * n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const auto idx = static_cast<std::size_t>(label[a] * n + label[b]);
        cand[idx] = static_cast<std::uint8_t>(label[x_.star()(a, b)]);
        cand[static_cast<std::size_t>(n * n) + idx] = static_cast<std::uint8_t>(label[x_.dot()(a, b)]);
      }
    if (best_.empty() || cand < best_) {
      best_ = std::move(cand);
      best_labeling_ = label;
    }
  }

  const FiniteBiquasile& x_;
  int n_;
  std::vector<std::uint8_t> best_;
  std::vector<int> best_labeling_;
};

}  // namespace

CanonicalForm canonical_form(const FiniteBiquasile& x) { return CanonicalSearch(x).run(); }

std::optional<BiquasileMap> is_isomorphic(const FiniteBiquasile& x, const FiniteBiquasile& y) {
  if (x.order() != y.order()) return std::nullopt;
  const auto cx = canonical_form(x);
  const auto cy = canonical_form(y);
  if (cx.table != cy.table) return std::nullopt;
  const int n = x.order();
  std::vector<int> from_canonical_y(static_cast<std::size_t>(n));
  for (int e = 0; e < n; ++e) from_canonical_y[cy.labeling[e]] = e;
  BiquasileMap f;
  f.image.resize(static_cast<std::size_t>(n));
  for (int e = 0; e < n; ++e) f.image[e] = from_canonical_y[cx.labeling[e]];
  return f;
}

IsoClasses iso_classes(std::span<const FiniteBiquasile> structures, unsigned jobs) {
  std::vector<FiniteBiquasile> canon(structures.size());
  parallel_for(structures.size(), jobs,
               [&](std::size_t i) { canon[i] = canonical_form(structures[i]).table; });
  std::map<FiniteBiquasile, std::vector<std::size_t>> by_form;
  for (std::size_t i = 0; i < structures.size(); ++i) by_form[canon[i]].push_back(i);
  IsoClasses out;
  out.classes.reserve(by_form.size());
  for (auto& [form, members] : by_form) out.classes.push_back(std::move(members));
  return out;
}

// ---------------------------------------------------------------------------
// Substructures

std::vector<int> subbiquasile_closure(const FiniteBiquasile& x, std::span<const int> seed) {
  if (seed.empty()) throw InputError("closure seed must be nonempty");
  const int n = x.order();
  const Divisions div = divisions(x);
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  std::vector<int> members;
  for (int e : seed) {
    if (e < 0 || e >= n) throw InputError("closure seed element out of range");
    if (!in[e]) {
      in[e] = 1;
      members.push_back(e);
    }
  }
  const OperationTable* ops[] = {&x.star(), &x.dot(), &div.star_left, &div.star_right,
                                 &div.dot_left, &div.dot_right};
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t size = members.size();
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j)
        for (const auto* op : ops) {
          const int r = (*op)(members[i], members[j]);
          if (!in[r]) {
            in[r] = 1;
            members.push_back(r);
            grew = true;
          }
        }
  }
  std::sort(members.begin(), members.end());
  return members;
}

bool is_simple(const FiniteBiquasile& x) {
  const int n = x.order();
  if (n <= 5) {
    const std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      std::vector<int> subset;
      for (int e = 0; e < n; ++e)
        if (mask & (1u << e)) subset.push_back(e);
      if (subbiquasile_closure(x, subset) == subset) return false;
    }
    return true;
  }
  // Every closed proper subset contains the closure of each of its elements.
  for (int e = 0; e < n; ++e) {
    const int seed[] = {e};
    if (static_cast<int>(subbiquasile_closure(x, seed).size()) < n) return false;
  }
  return true;
}

FiniteBiquasile dehn_biquasile(int m) {
  if (m < 1) throw InputError("Dehn biquasile modulus must be positive");
  OperationTable s(m), d(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      d.set(a, b, (a + b) % m);
      s.set(a, b, ((b - a) % m + m) % m);
    }
  return FiniteBiquasile(std::move(s), std::move(d));
}

// ---------------------------------------------------------------------------
// Block-matrix text format

namespace {

FiniteBiquasile block_from_rows(const std::vector<std::vector<int>>& rows, int first_line) {
  const int n = static_cast<int>(rows.size());
  std::vector<std::vector<int>> star_rows, dot_rows;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != 2 * n)
      throw ParseError("line " + std::to_string(first_line + i) + ": expected " +
                       std::to_string(2 * n) + " entries, found " + std::to_string(rows[i].size()));
    star_rows.emplace_back(rows[i].begin(), rows[i].begin() + n);
    dot_rows.emplace_back(rows[i].begin() + n, rows[i].end());
  }
  return FiniteBiquasile(OperationTable::from_rows(star_rows), OperationTable::from_rows(dot_rows));
}

}  // namespace

std::vector<FiniteBiquasile> parse_block_matrices(std::string_view text) {
  std::vector<FiniteBiquasile> out;
  std::vector<std::vector<int>> rows;
  int block_start = 1;
  int line_no = 0;
  auto flush = [&] {
    if (!rows.empty()) out.push_back(block_from_rows(rows, block_start));
    rows.clear();
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const bool had_comment = line.find('#') != std::string_view::npos;
    line = line.substr(0, line.find('#'));
    std::istringstream in{std::string(line)};
    std::vector<int> row;
    std::string tok;
    while (in >> tok) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        row.push_back(v);
      } catch (const std::logic_error&) {
        throw ParseError("line " + std::to_string(line_no) + ": not an integer: '" + tok + "'");
      }
    }
    if (row.empty()) {
      if (!had_comment) flush();
      continue;
    }
    if (rows.empty()) block_start = line_no;
    rows.push_back(std::move(row));
  }
  flush();
  return out;
}

FiniteBiquasile parse_block_matrix(std::string_view text) {
  auto all = parse_block_matrices(text);
  if (all.size() != 1)
    throw ParseError("expected exactly one block matrix, found " + std::to_string(all.size()));
  return std::move(all.front());
}

std::string format_block_matrix(const FiniteBiquasile& x) {
  const int n = x.order();
  std::string out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < 2 * n; ++j) {
      if (j) out += ' ';
      out += std::to_string((j < n ? x.star()(i, j) : x.dot()(i, j - n)) + 1);
    }
    out += '\n';
  }
  return out;
}

std::string structure_hash(const FiniteBiquasile& x) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : format_block_matrix(x)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace biq
