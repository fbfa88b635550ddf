#include "biq/alexander.hpp"

#include <numeric>
#include <sstream>

#include <json.hpp>

namespace biq {

namespace {

int reduce(std::int64_t v, int m) {
  const auto r = v % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

int inverse_mod(int a, int m) {
  // Extended Euclid; a is a unit.
  int r0 = m, r1 = reduce(a, m), t0 = 0, t1 = 1;
  while (r1 != 0) {
    const int q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
  }
  if (r0 != 1) throw InputError(std::to_string(a) + " is not a unit mod " + std::to_string(m));
  return reduce(t0, m);
}

int power_mod(int base, int exponent, int m) {
  if (exponent < 0) {
    base = inverse_mod(base, m);
    exponent = -exponent;
  }
  std::int64_t result = 1 % m, b = reduce(base, m);
  for (; exponent > 0; exponent >>= 1) {
    if (exponent & 1) result = result * b % m;
    b = b * b % m;
  }
  return static_cast<int>(result);
}

}  // namespace

void AlexanderParams::validate() const {
  if (m < 2) throw InputError("modulus must be at least 2");
  for (int v : {d, n, s}) {
    if (v < 1 || v >= m || std::gcd(v, m) != 1)
      throw InputError("parameter " + std::to_string(v) + " is not a unit mod " + std::to_string(m));
  }
}

int AlexanderParams::star_coefficient() const {
  return reduce(-static_cast<std::int64_t>(d) * s * n * n, m);
}

std::string AlexanderParams::to_string() const {
  return "m=" + std::to_string(m) + " d=" + std::to_string(d) + " n=" + std::to_string(n) +
         " s=" + std::to_string(s);
}

FiniteBiquasile materialize(const AlexanderParams& p) {
  p.validate();
  OperationTable star(p.m), dot(p.m);
  const int c = p.star_coefficient();
  for (int x = 0; x < p.m; ++x)
    for (int y = 0; y < p.m; ++y) {
      star.set(x, y, reduce(static_cast<std::int64_t>(c) * x + static_cast<std::int64_t>(p.n) * y, p.m));
      dot.set(x, y, reduce(static_cast<std::int64_t>(p.d) * x + static_cast<std::int64_t>(p.s) * y, p.m));
    }
  return FiniteBiquasile(std::move(star), std::move(dot));
}

int euler_phi(int m) {
  int count = 0;
  for (int k = 1; k <= m; ++k)
    if (std::gcd(k, m) == 1) ++count;
  return count;
}

std::vector<AlexanderParams> enumerate_params(int m) {
  if (m < 2) throw InputError("modulus must be at least 2");
  std::vector<int> units;
  for (int k = 1; k < m; ++k)
    if (std::gcd(k, m) == 1) units.push_back(k);
  std::vector<AlexanderParams> out;
  for (int d : units)
    for (int n : units)
      for (int s : units) out.push_back({m, d, n, s});
  return out;
}

AlexanderScan classify_params(int m, unsigned jobs) {
  const auto params = enumerate_params(m);
  std::vector<FiniteBiquasile> structures;
  structures.reserve(params.size());
  for (const auto& p : params) structures.push_back(materialize(p));
  return {m, params.size(), iso_classes(structures, jobs).count()};
}

// ---------------------------------------------------------------------------
// Laurent polynomials

LaurentPoly LaurentPoly::monomial(std::int64_t coeff, int e_d, int e_s, int e_n) {
  LaurentPoly p;
  if (coeff != 0) p.terms_[{e_d, e_s, e_n}] = coeff;
  return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  for (const auto& [e, c] : other.terms_) {
    auto& slot = terms_[e];
    slot += c;
    if (slot == 0) terms_.erase(e);
  }
  return *this;
}

LaurentPoly operator-(const LaurentPoly& a) {
  LaurentPoly out = a;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_)
      out += LaurentPoly::monomial(ca * cb, ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]);
  return out;
}

int LaurentPoly::evaluate(const AlexanderParams& p) const {
  p.validate();
  std::int64_t total = 0;
  for (const auto& [e, c] : terms_) {
    std::int64_t v = reduce(c, p.m);
    v = v * power_mod(p.d, e[0], p.m) % p.m;
    v = v * power_mod(p.s, e[1], p.m) % p.m;
    v = v * power_mod(p.n, e[2], p.m) % p.m;
    total = (total + v) % p.m;
  }
  return static_cast<int>(total);
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    const bool unit_monomial = e == Exponents{0, 0, 0};
    if (c < 0) out += "-";
    else if (!out.empty()) out += "+";
    const auto mag = c < 0 ? -c : c;
    if (mag != 1 || unit_monomial) out += std::to_string(mag);
    const char names[3] = {'d', 's', 'n'};
    for (int i = 0; i < 3; ++i) {
      if (e[i] == 0) continue;
      out += names[i];
      if (e[i] != 1) out += "^" + std::to_string(e[i]);
    }
  }
  return out;
}

LaurentMatrix::LaurentMatrix(int r, int c)
    : rows(r), cols(c), entries(static_cast<std::size_t>(r), std::vector<LaurentPoly>(static_cast<std::size_t>(c))) {}

std::string LaurentMatrix::to_string() const {
  std::vector<std::vector<std::string>> cells(static_cast<std::size_t>(rows));
  std::size_t width = 1;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      cells[r].push_back(at(r, c).to_string());
      width = std::max(width, cells[r].back().size());
    }
  std::string out;
  for (int r = 0; r < rows; ++r) {
    out += "[";
    for (int c = 0; c < cols; ++c) {
      const auto& cell = cells[r][c];
      out += std::string(width - cell.size() + 1, ' ') + cell;
    }
    out += " ]\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Presentation matrices

std::vector<LaurentPoly> symbolic_relation_row(const CrossingRelation& rel, int columns) {
  for (int v : {rel.x, rel.y, rel.a, rel.b})
    if (v < 0 || v >= columns) throw std::logic_error("relation refers to an unindexed region");
  const int src = rel.sign > 0 ? rel.x : rel.y;
  const int dst = rel.sign > 0 ? rel.y : rel.x;
  std::vector<LaurentPoly> row(static_cast<std::size_t>(columns));
  row[src] += LaurentPoly::monomial(-1, 1, 1, 2);
  row[rel.a] += LaurentPoly::monomial(1, 1, 0, 1);
  row[rel.b] += LaurentPoly::monomial(1, 0, 1, 1);
  row[dst] += LaurentPoly::constant(-1);
  return row;
}

LaurentMatrix symbolic_matrix(int region_count, const std::vector<CrossingRelation>& relations) {
  LaurentMatrix out(static_cast<int>(relations.size()), region_count);
  for (std::size_t i = 0; i < relations.size(); ++i)
    out.entries[i] = symbolic_relation_row(relations[i], region_count);
  return out;
}

IntMatrix specialize(const LaurentMatrix& matrix, const AlexanderParams& p) {
  p.validate();
  IntMatrix out(static_cast<std::size_t>(matrix.rows), std::vector<std::int64_t>(static_cast<std::size_t>(matrix.cols)));
  for (int r = 0; r < matrix.rows; ++r)
    for (int c = 0; c < matrix.cols; ++c) out[r][c] = matrix.at(r, c).evaluate(p);
  return out;
}

std::vector<std::int64_t> numeric_relation_row(const CrossingRelation& rel, int columns,
                                               const AlexanderParams& p) {
  const FiniteBiquasile X = materialize(p);
  const int src = rel.sign > 0 ? rel.x : rel.y;
  const int dst = rel.sign > 0 ? rel.y : rel.x;
  // src * (a . b) is linear with zero constant term: probe unit vectors.
  const std::int64_t c_src = X.star()(1, X.dot()(0, 0));
  const std::int64_t c_a = X.star()(0, X.dot()(1, 0));
  const std::int64_t c_b = X.star()(0, X.dot()(0, 1));
  std::vector<std::int64_t> row(static_cast<std::size_t>(columns), 0);
  row[src] += c_src;
  row[rel.a] += c_a;
  row[rel.b] += c_b;
  row[dst] -= 1;
  for (auto& v : row) v = reduce(v, p.m);
  return row;
}

IntMatrix numeric_matrix(int region_count, const std::vector<CrossingRelation>& relations,
                         const AlexanderParams& p) {
  IntMatrix out;
  for (const auto& rel : relations) out.push_back(numeric_relation_row(rel, region_count, p));
  return out;
}

std::string to_json(const LaurentMatrix& matrix) {
  nlohmann::json entries = nlohmann::json::array();
  for (int r = 0; r < matrix.rows; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < matrix.cols; ++c) {
      nlohmann::json poly = nlohmann::json::array();
      for (const auto& [e, coeff] : matrix.at(r, c).terms()) poly.push_back({e[0], e[1], e[2], coeff});
      row.push_back(std::move(poly));
    }
    entries.push_back(std::move(row));
  }
  nlohmann::json j;
  j["rows"] = matrix.rows;
  j["cols"] = matrix.cols;
  j["entries"] = std::move(entries);
  return j.dump();
}

LaurentMatrix laurent_matrix_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    LaurentMatrix out(j.at("rows").get<int>(), j.at("cols").get<int>());
    const auto& entries = j.at("entries");
    if (static_cast<int>(entries.size()) != out.rows) throw ParseError("row count mismatch");
    for (int r = 0; r < out.rows; ++r) {
      if (static_cast<int>(entries[r].size()) != out.cols) throw ParseError("column count mismatch");
      for (int c = 0; c < out.cols; ++c)
        for (const auto& term : entries[r][c]) {
          if (term.size() != 4) throw ParseError("a term must be [e_d, e_s, e_n, coeff]");
          out.at(r, c) += LaurentPoly::monomial(term[3].get<std::int64_t>(), term[0].get<int>(),
                                                term[1].get<int>(), term[2].get<int>());
        }
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed Laurent matrix JSON: ") + e.what());
  }
}

std::string scan_csv(const std::vector<AlexanderScan>& rows) {
  std::ostringstream out;
  out << "m,configurations,classes\n";
  for (const auto& r : rows) out << r.m << ',' << r.configurations << ',' << r.classes << '\n';
  return out.str();
}

}  // namespace biq
