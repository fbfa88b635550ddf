#include "biq/table.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "biq/solve.hpp"
#include "parallel.hpp"

namespace biq {

namespace detail {
extern const char* const bundled_knots_pd;
extern const char* const bundled_links_pd;
}  // namespace detail

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

KnotTable KnotTable::parse(std::string_view text, bool links) {
  KnotTable table;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      line.remove_prefix(1);
      line = trim(line);
      constexpr std::string_view tag = "convention:";
      if (line.substr(0, tag.size()) == tag) table.convention_ = std::string(trim(line.substr(tag.size())));
      continue;
    }
    try {
      const auto space = line.find_first_of(" \t");
      if (space == std::string_view::npos) throw ParseError("expected 'name PD[...]'");
      KnotEntry entry;
      entry.name = std::string(line.substr(0, space));
      entry.link = links;
      std::string_view rest = trim(line.substr(space));
      const auto semi = rest.find(';');
      entry.pd = parse_pd(trim(rest.substr(0, semi)));
      if (semi != std::string_view::npos) {
        std::string_view braid = trim(rest.substr(semi + 1));
        constexpr std::string_view tag = "braid";
        if (braid.substr(0, tag.size()) != tag) throw ParseError("expected 'braid k: ...' after ';'");
        entry.braid = parse_braid(braid.substr(tag.size()));
      }
      if (table.find(entry.name)) throw InputError("duplicate diagram name " + entry.name);
      table.entries_.push_back(std::move(entry));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

const KnotTable& KnotTable::bundled() {
  static const KnotTable table = [] {
    KnotTable t = parse(detail::bundled_knots_pd, false);
    t.append(parse(detail::bundled_links_pd, true));
    return t;
  }();
  return table;
}

std::vector<const KnotEntry*> KnotTable::knots() const {
  std::vector<const KnotEntry*> out;
  for (const auto& e : entries_)
    if (!e.link) out.push_back(&e);
  return out;
}

std::vector<const KnotEntry*> KnotTable::links() const {
  std::vector<const KnotEntry*> out;
  for (const auto& e : entries_)
    if (e.link) out.push_back(&e);
  return out;
}

const KnotEntry* KnotTable::find(std::string_view name) const {
  for (const auto& e : entries_)
    if (e.name == name) return &e;
  return nullptr;
}

void KnotTable::append(const KnotTable& other) {
  for (const auto& e : other.entries_) {
    if (find(e.name)) throw InputError("duplicate diagram name " + e.name);
    entries_.push_back(e);
  }
  if (convention_.empty()) convention_ = other.convention_;
  else if (!other.convention_.empty() && other.convention_ != convention_)
    throw InputError("data files disagree on convention: " + convention_ + " vs " + other.convention_);
}

std::optional<int> crossings_from_name(std::string_view name) {
  if (!name.empty() && name.front() == 'L') name.remove_prefix(1);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), value);
  if (ec != std::errc{} || ptr == name.data()) return std::nullopt;
  return value;
}

OrientedPDCode resolve_diagram(std::string_view spec, const KnotTable& table) {
  spec = trim(spec);
  if (spec == "unknot" || spec == "0_1") return OrientedPDCode::unlink(1);
  constexpr std::string_view unlink = "unlink";
  if (spec.substr(0, unlink.size()) == unlink) {
    const auto k = spec.substr(unlink.size());
    int count = 0;
    const auto [ptr, ec] = std::from_chars(k.data(), k.data() + k.size(), count);
    if (ec != std::errc{} || ptr != k.data() + k.size() || count < 1)
      throw InputError("expected unlink<k> with k >= 1, got '" + std::string(spec) + "'");
    return OrientedPDCode::unlink(count);
  }
  if (const auto* e = table.find(spec)) return e->pd;
  if (spec.substr(0, 2) == "PD" || spec.substr(0, 1) == "X") return parse_pd(spec);
  throw InputError("unknown diagram '" + std::string(spec) + "'");
}

std::vector<DataIssue> verify_table(const KnotTable& table) {
  std::vector<DataIssue> issues;
  for (const auto& e : table.entries()) {
    auto report = [&](std::string problem) { issues.push_back({e.name, std::move(problem)}); };
    try {
      const int c = e.pd.crossing_count();
      if (crossings_from_name(e.name) != c) report("crossing count " + std::to_string(c) + " does not match name");
      if (!e.link && e.pd.component_count() != 1) report("knot has " + std::to_string(e.pd.component_count()) + " components");
      if (e.link && e.pd.component_count() < 2) report("link has a single component");
      if (!e.pd.connected()) report("projection is not connected");
      if (static_cast<int>(regions(e.pd).size()) != c + 2) report("region count is not c + 2");
      if (!validate_reconstruction(dual_graph(e.pd))) report("dual graph does not reconstruct");
      if (e.braid) {
        const auto closure = braid_closure(*e.braid);
        if (closure.component_count() != e.pd.component_count())
          report("braid closure has " + std::to_string(closure.component_count()) + " components");
      }
    } catch (const std::exception& ex) {
      report(ex.what());
    }
  }
  return issues;
}

// ---------------------------------------------------------------------------
// Cache

ResultCache::ResultCache(std::filesystem::path file) : file_(std::move(file)) {
  std::ifstream in(file_);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    CacheKey key;
    std::string value;
    if (!std::getline(fields, key.structure_hash, '\t') || !std::getline(fields, key.diagram, '\t') ||
        !std::getline(fields, key.convention, '\t') || !std::getline(fields, value))
      throw ParseError(file_.string() + ":" + std::to_string(line_no) + ": expected four tab-separated fields");
    try {
      entries_[key] = std::stoull(value);
    } catch (const std::exception&) {
      throw ParseError(file_.string() + ":" + std::to_string(line_no) + ": bad count '" + value + "'");
    }
  }
}

ResultCache::ResultCache(ResultCache&& other) noexcept
    : file_(std::move(other.file_)), entries_(std::move(other.entries_)) {}

std::optional<ResultCache> ResultCache::from_env() {
  const char* dir = std::getenv("BIQ_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  std::filesystem::create_directories(dir);
  return ResultCache(std::filesystem::path(dir) / "phi.tsv");
}

std::optional<std::uint64_t> ResultCache::lookup(const CacheKey& key) const {
  std::lock_guard lock(mutex_);
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ResultCache::store(const CacheKey& key, std::uint64_t value) {
  std::lock_guard lock(mutex_);
  entries_[key] = value;
}

std::size_t ResultCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

void ResultCache::flush() const {
  std::lock_guard lock(mutex_);
  const auto tmp = std::filesystem::path(file_.string() + ".tmp");
  {
    std::ofstream out(tmp);
    out << "# structure_hash\tdiagram\tconvention\tcount\n";
    for (const auto& [k, v] : entries_)
      out << k.structure_hash << '\t' << k.diagram << '\t' << k.convention << '\t' << v << '\n';
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, file_);
}

// ---------------------------------------------------------------------------
// Tabulation

bool PhiTable::nontrivial(std::size_t structure, std::size_t diagram) const {
  std::uint64_t baseline = 1;
  for (int i = 0; i <= components[diagram]; ++i) baseline *= static_cast<std::uint64_t>(orders[structure]);
  return values[structure][diagram] != baseline;
}

std::string PhiTable::to_csv() const {
  std::ostringstream out;
  out << "structure";
  for (const auto& d : diagrams) out << ',' << d;
  out << '\n';
  for (std::size_t s = 0; s < structures.size(); ++s) {
    out << structures[s];
    for (std::size_t d = 0; d < diagrams.size(); ++d) out << ',' << values[s][d] << (nontrivial(s, d) ? "*" : "");
    out << '\n';
  }
  return out.str();
}

std::string PhiTable::to_json() const {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t s = 0; s < structures.size(); ++s) {
    nlohmann::ordered_json row;
    row["structure"] = structures[s];
    row["order"] = orders[s];
    row["values"] = values[s];
    nlohmann::ordered_json flagged = nlohmann::ordered_json::array();
    for (std::size_t d = 0; d < diagrams.size(); ++d)
      if (nontrivial(s, d)) flagged.push_back(diagrams[d]);
    row["nontrivial"] = std::move(flagged);
    rows.push_back(std::move(row));
  }
  nlohmann::ordered_json j;
  j["diagrams"] = diagrams;
  j["components"] = components;
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string convention_key(const TabulationOptions& options) {
  return options.convention.id() + "/" + to_string(options.variant);
}

PhiTable tabulate_phi(const std::vector<NamedStructure>& structures, const std::vector<NamedDiagram>& diagrams,
                      const TabulationOptions& options, std::vector<CacheMismatch>* mismatches) {
  PhiTable table;
  std::vector<OrientedPDCode> variants;
  std::vector<std::string> hashes;
  for (const auto& d : diagrams) {
    table.diagrams.push_back(d.name);
    variants.push_back(apply_variant(d.pd, options.variant));
    table.components.push_back(d.pd.component_count());
  }
  for (const auto& s : structures) {
    table.structures.push_back(s.name);
    table.orders.push_back(s.structure.order());
    hashes.push_back(structure_hash(s.structure));
  }
  table.values.assign(structures.size(), std::vector<std::uint64_t>(diagrams.size(), 0));
  const std::string conv = convention_key(options);
  std::mutex mismatch_mutex;

  detail::parallel_for(structures.size() * diagrams.size(), options.jobs, [&](std::size_t task) {
    const std::size_t s = task / diagrams.size();
    const std::size_t d = task % diagrams.size();
    const CacheKey key{hashes[s], diagrams[d].name, conv};
    std::optional<std::uint64_t> cached;
    if (options.cache) cached = options.cache->lookup(key);
    if (cached && !options.verify) {
      table.values[s][d] = *cached;
      return;
    }
    const auto value = phi_invariant(variants[d], structures[s].structure, options.convention);
    table.values[s][d] = value;
    if (cached && *cached != value) {
      if (mismatches) {
        std::lock_guard lock(mismatch_mutex);
        mismatches->push_back({key, *cached, value});
      }
    } else if (options.cache && !cached) {
      options.cache->store(key, value);
    }
  });
  if (mismatches)
    std::sort(mismatches->begin(), mismatches->end(),
              [](const CacheMismatch& a, const CacheMismatch& b) { return a.key < b.key; });
  return table;
}

}  // namespace biq
