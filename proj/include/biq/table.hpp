#pragma once

// Bundled diagram tables, the on-disk result cache and Phi tabulation.

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biq/algebra.hpp"
#include "biq/diagram.hpp"

namespace biq {

struct KnotEntry {
  std::string name;
  OrientedPDCode pd;
  std::optional<BraidWord> braid;
  bool link = false;
};

class KnotTable {
 public:
  // Lines "name PD[...] [; braid k: ...]"; '#' lines are comments, and a
  // "# convention: <id>" comment sets convention().
  static KnotTable parse(std::string_view text, bool links);
  // Prime knots 3_1..8_21 followed by prime links L2a1..L7n2.
  static const KnotTable& bundled();

  const std::vector<KnotEntry>& entries() const noexcept { return entries_; }
  std::vector<const KnotEntry*> knots() const;
  std::vector<const KnotEntry*> links() const;
  const KnotEntry* find(std::string_view name) const;
  const std::string& convention() const noexcept { return convention_; }

  void append(const KnotTable& other);

 private:
  std::vector<KnotEntry> entries_;
  std::string convention_;
};

// Crossing number encoded in a table name: "8_21" -> 8, "L7a1" -> 7.
std::optional<int> crossings_from_name(std::string_view name);

// "unknot", "0_1", "unlink<k>", a bundled name, or a literal PD code.
OrientedPDCode resolve_diagram(std::string_view spec, const KnotTable& table = KnotTable::bundled());

struct DataIssue {
  std::string name;
  std::string problem;
};

// Structural checks on every entry: crossing count against the name, knots
// have one component, projection connected, c + 2 regions, dual graph
// reconstructs, braid closure (when present) has the same component count.
std::vector<DataIssue> verify_table(const KnotTable& table);

struct CacheKey {
  std::string structure_hash;
  std::string diagram;
  std::string convention;
  auto operator<=>(const CacheKey&) const = default;
};

// Tab-separated file of (structure hash, diagram, convention, count).
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path file);
  ResultCache(ResultCache&& other) noexcept;
  // Cache under $BIQ_CACHE_DIR, or nullopt when the variable is unset.
  static std::optional<ResultCache> from_env();

  std::optional<std::uint64_t> lookup(const CacheKey& key) const;
  void store(const CacheKey& key, std::uint64_t value);
  std::size_t size() const;
  // Writes the file sorted by key.
  void flush() const;
  const std::filesystem::path& path() const noexcept { return file_; }

 private:
  std::filesystem::path file_;
  mutable std::mutex mutex_;
  std::map<CacheKey, std::uint64_t> entries_;
};

struct NamedStructure {
  std::string name;
  FiniteBiquasile structure;
};

struct NamedDiagram {
  std::string name;
  OrientedPDCode pd;
};

struct PhiTable {
  std::vector<std::string> structures;
  std::vector<std::string> diagrams;
  std::vector<int> orders;      // per structure
  std::vector<int> components;  // per diagram
  std::vector<std::vector<std::uint64_t>> values;  // [structure][diagram]

  // Differs from the unlink with the same number of components.
  bool nontrivial(std::size_t structure, std::size_t diagram) const;
  // Rows are structures, columns diagrams; nontrivial values carry '*'.
  std::string to_csv() const;
  std::string to_json() const;
};

struct TabulationOptions {
  RoleConvention convention = default_convention();
  DiagramVariant variant = DiagramVariant::id;
  unsigned jobs = 0;
  ResultCache* cache = nullptr;
  // Recompute cached entries and record disagreements instead of trusting them.
  bool verify = false;
};

struct CacheMismatch {
  CacheKey key;
  std::uint64_t cached = 0;
  std::uint64_t computed = 0;
};

PhiTable tabulate_phi(const std::vector<NamedStructure>& structures, const std::vector<NamedDiagram>& diagrams,
                      const TabulationOptions& options = {}, std::vector<CacheMismatch>* mismatches = nullptr);

// Cache convention id: role convention and variant, e.g. "std-swap/id".
std::string convention_key(const TabulationOptions& options);

}  // namespace biq
