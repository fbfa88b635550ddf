// biq: biquasile enumeration, coloring invariants and diagram tables.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "biq/alexander.hpp"
#include "biq/algebra.hpp"
#include "biq/diagram.hpp"
#include "biq/solve.hpp"
#include "biq/table.hpp"

namespace {

using namespace biq;

enum Exit : int {
  ok = 0,
  usage = 1,
  parse_error = 2,
  validation_error = 3,
  budget_exhausted = 4,
  cache_mismatch = 5,
};

// Missing or conflicting arguments that CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
}

FiniteBiquasile load_structure(const std::string& path) {
  FiniteBiquasile X = parse_block_matrix(read_file(path));
  if (!check_axioms(X)) throw StructureError(path + ": tables violate the biquasile axioms");
  return X;
}

std::string stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

struct DiagramArgs {
  std::string diagram;
  std::string braid;
  std::string variant = "id";
  std::string convention = default_convention().id();

  void add_to(CLI::App* cmd, bool diagram_required) {
    auto* opt = cmd->add_option("diagram", diagram, "Bundled name, unknot, unlink<k>, or a PD code");
    if (diagram_required) opt->required();
    cmd->add_option("--braid", braid, "Closed braid \"k: i j -i ...\" instead of a named diagram");
    cmd->add_option("--variant", variant, "id, mirror, reverse or mirror-reverse")->capture_default_str();
    cmd->add_option("--convention", convention, "Crossing role convention: std, std-swap, rev, rev-swap")
        ->capture_default_str();
  }

  OrientedPDCode resolve() const {
    if (!braid.empty() && !diagram.empty()) throw UsageError("give either a diagram or --braid, not both");
    if (braid.empty() && diagram.empty()) throw UsageError("no diagram given");
    OrientedPDCode pd = braid.empty() ? resolve_diagram(diagram) : braid_closure(parse_braid(braid));
    return apply_variant(pd, parsed_variant());
  }

  DiagramVariant parsed_variant() const {
    const auto v = parse_variant(variant);
    if (!v) throw InputError("unknown variant '" + variant + "'");
    return *v;
  }

  RoleConvention parsed_convention() const {
    const auto c = RoleConvention::parse(convention);
    if (!c) throw InputError("unknown convention '" + convention + "'");
    return *c;
  }
};

// --- enumerate ---------------------------------------------------------------

struct EnumerateArgs {
  int n = 0;
  bool classify = false;
  std::string out;
  std::optional<std::uint64_t> budget;
  unsigned jobs = 0;
};

std::string format_all(const std::vector<FiniteBiquasile>& structures) {
  std::string text;
  for (std::size_t i = 0; i < structures.size(); ++i) {
    if (i) text += "\n";
    text += format_block_matrix(structures[i]);
  }
  return text;
}

int run_enumerate(const EnumerateArgs& a) {
  if (a.n > 4 && !a.budget) throw InputError("orders above 4 need --budget");
  EnumerationOptions opts;
  opts.node_budget = a.budget;
  opts.jobs = a.jobs;
  std::vector<FiniteBiquasile> found;
  try {
    found = enumerate_biquasiles(a.n, opts);
  } catch (const EnumerationBudgetExceeded& e) {
    const std::string header = "# PARTIAL: node budget exhausted after " + std::to_string(e.work_done()) +
                               " nodes; " + std::to_string(e.partial().size()) + " structures so far\n";
    if (!a.out.empty()) write_output(a.out, header + format_all(e.partial()));
    std::cerr << "budget exhausted: " << e.partial().size() << " structures found before the limit\n";
    return budget_exhausted;
  }
  if (!a.out.empty()) write_output(a.out, format_all(found));
  if (a.classify) {
    const auto classes = iso_classes(found, a.jobs);
    std::cout << found.size() << " structures, " << classes.count() << " classes\n";
  } else if (a.out.empty()) {
    std::cout << format_all(found);
  } else {
    std::cout << found.size() << " structures\n";
  }
  return ok;
}

// --- phi ---------------------------------------------------------------------

struct PhiArgs {
  DiagramArgs diagram;
  std::string structure;
  std::vector<int> alexander;
  std::string engine = "generic";
  bool show_colorings = false;
  std::optional<std::uint64_t> budget;
};

int run_phi(PhiArgs a) {
  // With --braid the single positional argument is the structure file.
  if (!a.diagram.braid.empty() && a.structure.empty() && !a.diagram.diagram.empty())
    std::swap(a.structure, a.diagram.diagram);
  const OrientedPDCode pd = a.diagram.resolve();
  const RoleConvention conv = a.diagram.parsed_convention();
  FiniteBiquasile X;
  std::optional<AlexanderParams> params;
  if (!a.alexander.empty()) {
    if (!a.structure.empty()) throw UsageError("give either a structure file or --alexander, not both");
    params = AlexanderParams{a.alexander[0], a.alexander[1], a.alexander[2], a.alexander[3]};
    X = materialize(*params);
  } else if (!a.structure.empty()) {
    X = load_structure(a.structure);
  } else {
    throw UsageError("no structure given (file or --alexander m d n s)");
  }

  std::uint64_t count = 0;
  if (a.engine == "linear") {
    if (!params) throw InputError("the linear engine needs --alexander");
    count = phi_invariant(pd, *params, Engine::linear, conv);
  } else if (a.engine == "generic") {
    count = phi_invariant(pd, X, conv);
  } else {
    throw InputError("unknown engine '" + a.engine + "'");
  }
  std::cout << count << "\n";

  if (a.show_colorings) {
    const auto pres = fundamental_presentation(dual_graph(pd), conv);
    const auto colorings = enumerate_colorings(pres, X, a.budget);
    std::string header;
    for (int g : pres.generators) header += (header.empty() ? "" : " ") + pres.symbols[static_cast<std::size_t>(g)];
    std::cout << header << "\n";
    for (const auto& c : colorings) {
      for (std::size_t i = 0; i < c.size(); ++i) std::cout << (i ? " " : "") << c[i] + 1;
      std::cout << "\n";
    }
  }
  return ok;
}

// --- table -------------------------------------------------------------------

struct TableArgs {
  std::vector<std::string> structures;
  bool knots = false;
  bool links = false;
  std::string format = "csv";
  std::string variant = "id";
  std::string convention = default_convention().id();
  std::string out;
  unsigned jobs = 0;
  bool verify = false;
};

int run_table(const TableArgs& a) {
  if (a.format != "csv" && a.format != "json") throw InputError("unknown format '" + a.format + "'");
  TabulationOptions opts;
  const auto variant = parse_variant(a.variant);
  if (!variant) throw InputError("unknown variant '" + a.variant + "'");
  const auto conv = RoleConvention::parse(a.convention);
  if (!conv) throw InputError("unknown convention '" + a.convention + "'");
  opts.variant = *variant;
  opts.convention = *conv;
  opts.jobs = a.jobs;
  opts.verify = a.verify;

  std::vector<NamedStructure> structures;
  for (const auto& path : a.structures) structures.push_back({stem(path), load_structure(path)});
  const auto& table = KnotTable::bundled();
  const bool want_knots = a.knots || !a.links;
  std::vector<NamedDiagram> diagrams;
  for (const auto& e : table.entries())
    if ((e.link && a.links) || (!e.link && want_knots)) diagrams.push_back({e.name, e.pd});

  auto cache = ResultCache::from_env();
  if (cache) opts.cache = &*cache;
  std::vector<CacheMismatch> mismatches;
  const PhiTable result = tabulate_phi(structures, diagrams, opts, &mismatches);
  if (cache) cache->flush();
  write_output(a.out, a.format == "csv" ? result.to_csv() : result.to_json());

  for (const auto& m : mismatches)
    std::cerr << "cache mismatch: " << m.key.structure_hash << " " << m.key.diagram << " " << m.key.convention
              << " cached " << m.cached << " computed " << m.computed << "\n";
  return mismatches.empty() ? ok : cache_mismatch;
}

// --- alexander-scan ----------------------------------------------------------

struct ScanArgs {
  std::vector<int> moduli;
  std::string format = "text";
  unsigned jobs = 0;
};

int run_scan(const ScanArgs& a) {
  std::vector<AlexanderScan> rows;
  for (int m : a.moduli) {
    if (m < 2 || m > 12) throw InputError("modulus must lie in 2..12");
    rows.push_back(classify_params(m, a.jobs));
  }
  if (a.format == "csv") {
    std::cout << scan_csv(rows);
  } else if (a.format == "text") {
    for (const auto& r : rows)
      std::cout << "m=" << r.m << ": " << r.configurations << " configurations, " << r.classes << " classes\n";
  } else {
    throw InputError("unknown format '" + a.format + "'");
  }
  return ok;
}

// --- presentation ------------------------------------------------------------

struct PresentationArgs {
  DiagramArgs diagram;
  bool simplify = false;
  bool symbolic = false;
  std::string format = "text";
};

int run_presentation(const PresentationArgs& a) {
  const OrientedPDCode pd = a.diagram.resolve();
  const auto dgd = dual_graph(pd);
  const auto relations = crossing_relations(dgd, a.diagram.parsed_convention());
  if (a.symbolic) {
    const auto M = symbolic_matrix(dgd.vertex_count, relations);
    if (a.format == "json") {
      std::cout << to_json(M) << "\n";
    } else {
      std::cout << "# columns v1..v" << dgd.vertex_count << "\n" << M.to_string();
    }
    return ok;
  }
  Presentation p = presentation_from_relations(dgd.vertex_count, relations);
  if (a.simplify) p = simplify(p);
  std::cout << p.to_string() << "\n";
  std::cout << "# " << p.generators.size() << " generators, " << p.relations.size()
            << (p.relations.size() == 1 ? " relation\n" : " relations\n");
  return ok;
}

// --- verify-data -------------------------------------------------------------

int run_verify_data(const std::vector<std::string>& files) {
  KnotTable table;
  if (files.empty()) {
    table = KnotTable::bundled();
  } else {
    for (const auto& f : files) {
      const bool links = stem(f).find("link") != std::string::npos;
      table.append(KnotTable::parse(read_file(f), links));
    }
  }
  const auto issues = verify_table(table);
  for (const auto& i : issues) std::cout << i.name << ": " << i.problem << "\n";
  std::cout << table.entries().size() << " diagrams checked, " << issues.size() << " issues"
            << (table.convention().empty() ? "" : "; convention " + table.convention()) << "\n";
  return issues.empty() ? ok : validation_error;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite biquasiles and their coloring invariants of oriented knots and links"};
  app.require_subcommand(1);

  EnumerateArgs en;
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate every biquasile of order n");
  enumerate->add_option("n", en.n, "Order")->required()->check(CLI::Range(1, 8));
  enumerate->add_flag("--classify", en.classify, "Report the number of isomorphism classes");
  enumerate->add_option("--out", en.out, "Write block matrices to this file");
  enumerate->add_option("--budget", en.budget, "Search-node budget (required above order 4)");
  enumerate->add_option("--jobs", en.jobs, "Worker threads (0 = all cores)");

  PhiArgs ph;
  auto* phi = app.add_subcommand("phi", "Coloring count of a diagram by a biquasile");
  ph.diagram.add_to(phi, false);
  phi->add_option("structure", ph.structure, "Block-matrix file");
  phi->add_option("--alexander", ph.alexander, "Alexander biquasile m d n s")->expected(4);
  phi->add_option("--engine", ph.engine, "generic or linear (Alexander only)")->capture_default_str();
  phi->add_flag("--show-colorings", ph.show_colorings, "List every coloring (1-based, one per line)");
  phi->add_option("--budget", ph.budget, "Maximum number of colorings to list");

  TableArgs tb;
  auto* table = app.add_subcommand("table", "Phi over the bundled knot or link table");
  table->add_option("structures", tb.structures, "Block-matrix files");
  table->add_flag("--knots", tb.knots, "Prime knots up to 8 crossings (default)");
  table->add_flag("--links", tb.links, "Prime links up to 7 crossings");
  table->add_option("--format", tb.format, "csv or json")->capture_default_str();
  table->add_option("--variant", tb.variant, "id, mirror, reverse or mirror-reverse")->capture_default_str();
  table->add_option("--convention", tb.convention, "Crossing role convention")->capture_default_str();
  table->add_option("--out", tb.out, "Output file (default stdout)");
  table->add_option("--jobs", tb.jobs, "Worker threads (0 = all cores)");
  table->add_flag("--verify", tb.verify, "Recompute cached values and report disagreements");

  ScanArgs sc;
  auto* scan = app.add_subcommand("alexander-scan", "Count Alexander configurations and classes over Z_m");
  scan->add_option("m", sc.moduli, "Moduli in 2..12")->required();
  scan->add_option("--format", sc.format, "text or csv")->capture_default_str();
  scan->add_option("--jobs", sc.jobs, "Worker threads (0 = all cores)");

  PresentationArgs pr;
  auto* presentation = app.add_subcommand("presentation", "Fundamental presentation of a diagram");
  pr.diagram.add_to(presentation, false);
  presentation->add_flag("--simplify", pr.simplify, "Eliminate generators by Tietze moves");
  presentation->add_flag("--symbolic", pr.symbolic, "Print the Laurent presentation matrix instead");
  presentation->add_option("--format", pr.format, "text or json (with --symbolic)")->capture_default_str();

  std::vector<std::string> data_files;
  auto* verify = app.add_subcommand("verify-data", "Check the bundled (or given) PD data files");
  verify->add_option("files", data_files, "PD data files; names containing 'link' are read as links");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*enumerate) return run_enumerate(en);
    if (*phi) return run_phi(ph);
    if (*table) return run_table(tb);
    if (*scan) return run_scan(sc);
    if (*presentation) return run_presentation(pr);
    if (*verify) return run_verify_data(data_files);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return usage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return parse_error;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return budget_exhausted;
  } catch (const InputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return validation_error;
  } catch (const StructureError& e) {
    std::cerr << "invalid structure: " << e.what() << "\n";
    return validation_error;
  }
  return usage;
}
