#include "biq/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace biq {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

int mod4(int p) { return ((p % 4) + 4) % 4; }

}  // namespace

// ---------------------------------------------------------------------------
// OrientedPDCode

OrientedPDCode::OrientedPDCode(std::vector<Tuple> crossings, std::vector<std::array<bool, 4>> incoming,
                               int free_loops)
    : crossings_(std::move(crossings)), incoming_(std::move(incoming)), free_loops_(free_loops) {
  link_partners();
  count_components();
}

void OrientedPDCode::link_partners() {
  std::map<int, std::vector<Slot>> where;
  for (int c = 0; c < crossing_count(); ++c)
    for (int p = 0; p < 4; ++p) where[crossings_[c][p]].push_back({c, p});
  partner_.assign(crossings_.size(), {});
  for (const auto& [label, slots] : where) {
    partner_[slots[0].crossing][slots[0].position] = slots[1];
    partner_[slots[1].crossing][slots[1].position] = slots[0];
  }
}

void OrientedPDCode::count_components() {
  std::vector<std::array<bool, 4>> seen(crossings_.size(), {false, false, false, false});
  int cycles = 0;
  for (int c = 0; c < crossing_count(); ++c)
    for (int p = 0; p < 4; ++p) {
      if (incoming_[c][p] || seen[c][p]) continue;
      ++cycles;
      Slot s{c, p};
      while (!seen[s.crossing][s.position]) {
        seen[s.crossing][s.position] = true;
        const Slot in = partner(s);
        seen[in.crossing][in.position] = true;
        s = {in.crossing, mod4(in.position + 2)};
      }
    }
  components_ = cycles + free_loops_;
}

OrientedPDCode OrientedPDCode::from_tuples(std::vector<Tuple> crossings) {
  const int c = static_cast<int>(crossings.size());
  if (c == 0) return unlink(1);

  std::map<int, std::vector<Slot>> where;
  for (int i = 0; i < c; ++i)
    for (int p = 0; p < 4; ++p) where[crossings[i][p]].push_back({i, p});
  for (const auto& [label, slots] : where)
    if (slots.size() != 2)
      throw DiagramError(DiagramErrorKind::label_multiplicity,
                         "edge label " + std::to_string(label) + " occurs " +
                             std::to_string(slots.size()) + " times, expected 2");
  if (static_cast<int>(where.size()) != 2 * c || where.begin()->first != 1 ||
      where.rbegin()->first != 2 * c)
    throw DiagramError(DiagramErrorKind::label_range,
                       "edge labels must be exactly 1.." + std::to_string(2 * c));

  auto partner = [&](Slot s) {
    const auto& slots = where.at(crossings[s.crossing][s.position]);
    return slots[0] == s ? slots[1] : slots[0];
  };

  // -1 unknown, 1 incoming, 0 outgoing.
  std::vector<std::array<int, 4>> dir(static_cast<std::size_t>(c), {1, -1, 0, -1});
  std::vector<Slot> queue;
  auto set = [&](Slot s, int value) {
    int& cur = dir[s.crossing][s.position];
    if (cur == value) return;
    if (cur != -1)
      throw DiagramError(DiagramErrorKind::orientation,
                         "inconsistent strand orientation at edge " +
                             std::to_string(crossings[s.crossing][s.position]));
    cur = value;
    queue.push_back(s);
  };
  auto propagate = [&] {
    while (!queue.empty()) {
      const Slot s = queue.back();
      queue.pop_back();
      const int v = dir[s.crossing][s.position];
      set(partner(s), 1 - v);
      if (s.position % 2 == 1) set({s.crossing, mod4(s.position + 2)}, 1 - v);
    }
  };
  for (int i = 0; i < c; ++i) {
    queue.push_back({i, 0});
    queue.push_back({i, 2});
  }
  propagate();
  for (int i = 0; i < c; ++i) {
    if (dir[i][1] != -1) continue;
    // Component never passes under: orient by increasing labels.
    const int j = crossings[i][1];
    const int l = crossings[i][3];
    bool slot1_in;
    if (l == j + 1) slot1_in = true;
    else if (j == l + 1) slot1_in = false;
    else slot1_in = j > l;
    set({i, 1}, slot1_in ? 1 : 0);
    propagate();
  }

  std::vector<std::array<bool, 4>> incoming(static_cast<std::size_t>(c));
  for (int i = 0; i < c; ++i)
    for (int p = 0; p < 4; ++p) incoming[i][p] = dir[i][p] == 1;
  return OrientedPDCode(std::move(crossings), std::move(incoming), 0);
}

OrientedPDCode OrientedPDCode::unlink(int components) {
  if (components < 1) throw InputError("unlink needs at least one component");
  return OrientedPDCode({}, {}, components);
}

int OrientedPDCode::writhe() const {
  int w = 0;
  for (int c = 0; c < crossing_count(); ++c) w += sign(c);
  return w;
}

bool OrientedPDCode::connected() const {
  if (crossings_.empty()) return free_loops_ <= 1;
  UnionFind uf(crossings_.size());
  for (int c = 0; c < crossing_count(); ++c)
    for (int p = 0; p < 4; ++p) uf.unite(static_cast<std::size_t>(c), static_cast<std::size_t>(partner_[c][p].crossing));
  const auto root = uf.find(0);
  for (std::size_t c = 1; c < crossings_.size(); ++c)
    if (uf.find(c) != root) return false;
  return free_loops_ == 0;
}

OrientedPDCode OrientedPDCode::relabeled() const {
  std::vector<Tuple> out = crossings_;
  std::vector<std::array<bool, 4>> done(crossings_.size(), {false, false, false, false});
  int next = 1;
  for (int c = 0; c < crossing_count(); ++c)
    for (int p = 0; p < 4; ++p) {
      if (incoming_[c][p] || done[c][p]) continue;
      Slot s{c, p};
      while (!done[s.crossing][s.position]) {
        const Slot in = partner(s);
        out[s.crossing][s.position] = next;
        out[in.crossing][in.position] = next;
        done[s.crossing][s.position] = done[in.crossing][in.position] = true;
        ++next;
        s = {in.crossing, mod4(in.position + 2)};
      }
    }
  return OrientedPDCode(std::move(out), incoming_, free_loops_);
}

std::string OrientedPDCode::to_string() const {
  std::string out = "PD[";
  for (std::size_t c = 0; c < crossings_.size(); ++c) {
    if (c) out += ", ";
    out += "X(";
    for (int p = 0; p < 4; ++p) {
      if (p) out += ',';
      out += std::to_string(crossings_[c][p]);
    }
    out += ')';
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  bool accept(char ch) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char ch) {
    if (!accept(ch)) fail(std::string("expected '") + ch + "'");
  }
  bool accept_word(std::string_view w) {
    skip_space();
    if (text_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }
  int integer() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start || !std::isdigit(static_cast<unsigned char>(text_[pos_ - 1])))
      fail("expected an integer");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

OrientedPDCode parse_pd(std::string_view text) {
  Cursor cur(text);
  const bool wrapped = cur.accept_word("PD");
  if (wrapped) cur.expect('[');
  std::vector<OrientedPDCode::Tuple> tuples;
  const char close_list = ']';
  while (true) {
    if (wrapped && cur.accept(close_list)) break;
    if (!wrapped && cur.done()) break;
    if (!tuples.empty() && !cur.accept(',')) {
      if (wrapped) cur.fail("expected ',' or ']'");
    }
    if (!cur.accept('X')) cur.fail("expected a crossing X(a,b,c,d)");
    char close = ')';
    if (cur.accept('[')) close = ']';
    else cur.expect('(');
    OrientedPDCode::Tuple t{};
    for (int p = 0; p < 4; ++p) {
      if (p) cur.expect(',');
      t[p] = cur.integer();
    }
    if (!cur.accept(close)) cur.fail("crossing tuple must have exactly four labels");
    tuples.push_back(t);
  }
  if (!cur.done()) cur.fail("trailing text");
  return OrientedPDCode::from_tuples(std::move(tuples));
}

BraidWord parse_braid(std::string_view text) {
  Cursor cur(text);
  BraidWord w;
  w.strands = cur.integer();
  cur.expect(':');
  while (!cur.done()) {
    cur.accept(',');
    w.letters.push_back(cur.integer());
  }
  if (w.strands < 1) throw InputError("a braid needs at least one strand");
  for (int l : w.letters)
    if (l == 0 || std::abs(l) >= w.strands)
      throw InputError("braid letter " + std::to_string(l) + " invalid for " +
                       std::to_string(w.strands) + " strands");
  return w;
}

// ---------------------------------------------------------------------------
// Variants

OrientedPDCode mirror(const OrientedPDCode& pd) {
  auto tuples = pd.crossings_;
  auto incoming = pd.incoming_;
  for (int c = 0; c < pd.crossing_count(); ++c) {
    // New under-strand is the old over-strand, listed from its incoming end.
    const int shift = pd.sign(c) > 0 ? 3 : 1;
    for (int p = 0; p < 4; ++p) {
      tuples[c][p] = pd.crossings_[c][mod4(p + shift)];
      incoming[c][p] = pd.incoming_[c][mod4(p + shift)];
    }
  }
  return OrientedPDCode(std::move(tuples), std::move(incoming), pd.free_loops_);
}

OrientedPDCode reverse(const OrientedPDCode& pd) {
  auto tuples = pd.crossings_;
  auto incoming = pd.incoming_;
  for (int c = 0; c < pd.crossing_count(); ++c)
    for (int p = 0; p < 4; ++p) {
      tuples[c][p] = pd.crossings_[c][mod4(p + 2)];
      incoming[c][p] = !pd.incoming_[c][mod4(p + 2)];
    }
  return OrientedPDCode(std::move(tuples), std::move(incoming), pd.free_loops_);
}

OrientedPDCode apply_variant(const OrientedPDCode& pd, DiagramVariant variant) {
  switch (variant) {
    case DiagramVariant::id: return pd;
    case DiagramVariant::mirror: return mirror(pd);
    case DiagramVariant::reverse: return reverse(pd);
    case DiagramVariant::mirror_reverse: return reverse(mirror(pd));
  }
  return pd;
}

std::string to_string(DiagramVariant variant) {
  switch (variant) {
    case DiagramVariant::id: return "id";
    case DiagramVariant::mirror: return "mirror";
    case DiagramVariant::reverse: return "reverse";
    case DiagramVariant::mirror_reverse: return "mirror-reverse";
  }
  return "?";
}

std::optional<DiagramVariant> parse_variant(std::string_view name) {
  for (auto v : {DiagramVariant::id, DiagramVariant::mirror, DiagramVariant::reverse,
                 DiagramVariant::mirror_reverse})
    if (to_string(v) == name) return v;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Braid closure

OrientedPDCode braid_closure(const BraidWord& word) {
  const int k = word.strands;
  if (k < 1) throw InputError("a braid needs at least one strand");
  for (int l : word.letters)
    if (l == 0 || std::abs(l) >= k) throw InputError("braid letter out of range");
  if (word.letters.empty()) return OrientedPDCode::unlink(k);

  // Strands run upward; positions are numbered left to right. Segment ids
  // 0..k-1 are the bottom segments, later ids are created at crossings.
  std::vector<int> cur(static_cast<std::size_t>(k));
  std::iota(cur.begin(), cur.end(), 0);
  int next_id = k;
  std::vector<OrientedPDCode::Tuple> tuples;
  std::vector<std::array<bool, 4>> incoming;
  for (int letter : word.letters) {
    const auto p = static_cast<std::size_t>(std::abs(letter) - 1);
    const int in_left = cur[p], in_right = cur[p + 1];
    const int out_left = next_id++, out_right = next_id++;
    if (letter > 0) {
      // Over-strand bottom-left to top-right; the under-strand enters bottom right.
      tuples.push_back({in_right, out_right, out_left, in_left});
      incoming.push_back({true, false, false, true});
    } else {
      tuples.push_back({in_left, in_right, out_right, out_left});
      incoming.push_back({true, true, false, false});
    }
    cur[p] = out_left;
    cur[p + 1] = out_right;
  }
  UnionFind uf(static_cast<std::size_t>(next_id));
  for (int p = 0; p < k; ++p) {
    if (cur[static_cast<std::size_t>(p)] == p)
      throw DiagramError(DiagramErrorKind::unsupported,
                         "strand position " + std::to_string(p + 1) + " never crosses: split closure");
    uf.unite(static_cast<std::size_t>(cur[static_cast<std::size_t>(p)]), static_cast<std::size_t>(p));
  }
  std::map<std::size_t, int> label_of;
  for (auto& t : tuples)
    for (int& e : t) {
      const auto root = uf.find(static_cast<std::size_t>(e));
      auto it = label_of.try_emplace(root, static_cast<int>(label_of.size()) + 1).first;
      e = it->second;
    }
  OrientedPDCode pd(std::move(tuples), std::move(incoming), 0);
  if (!pd.connected())
    throw DiagramError(DiagramErrorKind::unsupported, "braid closure is a split diagram");
  return pd.relabeled();
}

// ---------------------------------------------------------------------------
// Regions and the dual graph

namespace {

// Region index of every corner; corner p of crossing c lies between
// positions p and p + 1.
std::vector<std::array<int, 4>> corner_regions(const OrientedPDCode& pd, int& region_count,
                                               std::vector<Region>* regions_out) {
  const int c = pd.crossing_count();
  std::vector<std::array<int, 4>> region(static_cast<std::size_t>(c), {-1, -1, -1, -1});
  region_count = 0;
  for (int i = 0; i < c; ++i)
    for (int p = 0; p < 4; ++p) {
      if (region[i][p] >= 0) continue;
      Region r{region_count, {}};
      Slot corner{i, p};
      while (region[corner.crossing][corner.position] < 0) {
        region[corner.crossing][corner.position] = region_count;
        const Slot leaving{corner.crossing, mod4(corner.position + 1)};
        // Walking out along `leaving`, the face is on the right.
        r.boundary.push_back({pd.label(leaving), pd.incoming(leaving) ? 1 : -1});
        corner = pd.partner(leaving);
      }
      if (regions_out) regions_out->push_back(std::move(r));
      ++region_count;
    }
  return region;
}

void require_connected(const OrientedPDCode& pd) {
  if (!pd.connected())
    throw DiagramError(DiagramErrorKind::unsupported,
                       "split diagrams with crossings are not supported");
}

}  // namespace

std::vector<Region> regions(const OrientedPDCode& pd) {
  std::vector<Region> out;
  if (pd.crossing_count() == 0) {
    for (int i = 0; i <= pd.component_count(); ++i) out.push_back({i, {}});
    return out;
  }
  require_connected(pd);
  int count = 0;
  corner_regions(pd, count, &out);
  if (count != pd.crossing_count() + 2)
    throw StructureError("PD code is not planar: " + std::to_string(count) + " faces for " +
                         std::to_string(pd.crossing_count()) + " crossings");
  return out;
}

DualGraphDiagram dual_graph(const OrientedPDCode& pd) {
  DualGraphDiagram g;
  if (pd.crossing_count() == 0) {
    g.vertex_count = pd.component_count() + 1;
    return g;
  }
  const auto faces = regions(pd);
  int count = 0;
  const auto corners = corner_regions(pd, count, nullptr);
  g.vertex_count = count;
  for (int c = 0; c < pd.crossing_count(); ++c) {
    CrossingDecoration d;
    d.corner_region = corners[c];
    d.sign = pd.sign(c);
    // Between the incoming under end (position 0) and the incoming over end.
    d.in_corner = d.sign > 0 ? 3 : 0;
    g.crossings.push_back(d);
    std::array<Slot, 4> arc{};
    for (int p = 0; p < 4; ++p) arc[p] = pd.partner({c, p});
    g.arcs.push_back(arc);
  }
  return g;
}

std::vector<DirectedEdge> DualGraphDiagram::directed_edges() const {
  std::vector<DirectedEdge> out;
  for (int c = 0; c < static_cast<int>(crossings.size()); ++c) {
    const auto& d = crossings[c];
    out.push_back({d.corner_region[d.in_corner], d.corner_region[mod4(d.in_corner + 2)], c});
  }
  return out;
}

std::vector<SignedEdge> DualGraphDiagram::signed_edges() const {
  std::vector<SignedEdge> out;
  for (int c = 0; c < static_cast<int>(crossings.size()); ++c) {
    const auto& d = crossings[c];
    out.push_back({d.corner_region[mod4(d.in_corner + 1)], d.corner_region[mod4(d.in_corner + 3)],
                   d.sign, c});
  }
  return out;
}

std::string RoleConvention::id() const {
  std::string s = reverse_direction ? "rev" : "std";
  return swap_sides ? s + "-swap" : s;
}

std::optional<RoleConvention> RoleConvention::parse(std::string_view id) {
  for (const auto& c : all())
    if (c.id() == id) return c;
  return std::nullopt;
}

std::array<RoleConvention, 4> RoleConvention::all() {
  return {RoleConvention{false, false}, RoleConvention{false, true}, RoleConvention{true, false},
          RoleConvention{true, true}};
}

RoleConvention default_convention() { return RoleConvention{false, false}; }

std::vector<CrossingRelation> crossing_relations(const DualGraphDiagram& dgd, RoleConvention convention) {
  std::vector<CrossingRelation> out;
  for (int c = 0; c < static_cast<int>(dgd.crossings.size()); ++c) {
    const auto& d = dgd.crossings[c];
    const int k = d.in_corner;
    CrossingRelation r;
    r.x = d.corner_region[k];
    r.y = d.corner_region[mod4(k + 2)];
    r.a = d.corner_region[mod4(k + 3)];  // left of travel from x to y
    r.b = d.corner_region[mod4(k + 1)];
    if (convention.reverse_direction) {
      std::swap(r.x, r.y);
      std::swap(r.a, r.b);
    }
    if (convention.swap_sides) std::swap(r.a, r.b);
    r.sign = d.sign;
    r.crossing = c;
    out.push_back(r);
  }
  return out;
}

Presentation presentation_from_relations(int region_count, const std::vector<CrossingRelation>& relations) {
  Presentation p;
  for (int i = 0; i < region_count; ++i) {
    p.symbols.push_back("v" + std::to_string(i + 1));
    p.generators.push_back(i);
  }
  using W = BiquasileWord;
  for (const auto& r : relations) {
    const int src = r.sign > 0 ? r.x : r.y;
    const int dst = r.sign > 0 ? r.y : r.x;
    p.relations.push_back({W::gen(src) * dot(W::gen(r.a), W::gen(r.b)), W::gen(dst)});
  }
  return p;
}

Presentation fundamental_presentation(const DualGraphDiagram& dgd, RoleConvention convention) {
  return presentation_from_relations(dgd.vertex_count, crossing_relations(dgd, convention));
}

int directed_component_count(const DualGraphDiagram& dgd) {
  if (dgd.vertex_count == 0) return 0;
  UnionFind uf(static_cast<std::size_t>(dgd.vertex_count));
  std::vector<char> touched(static_cast<std::size_t>(dgd.vertex_count), 0);
  for (const auto& e : dgd.directed_edges()) {
    uf.unite(static_cast<std::size_t>(e.from), static_cast<std::size_t>(e.to));
    touched[e.from] = touched[e.to] = 1;
  }
  std::vector<char> root_seen(static_cast<std::size_t>(dgd.vertex_count), 0);
  int count = 0;
  for (int v = 0; v < dgd.vertex_count; ++v) {
    if (!touched[v]) continue;
    const auto r = uf.find(static_cast<std::size_t>(v));
    if (!root_seen[r]) {
      root_seen[r] = 1;
      ++count;
    }
  }
  return count;
}

bool validate_reconstruction(const DualGraphDiagram& dgd) {
  const int c = static_cast<int>(dgd.crossings.size());
  if (static_cast<int>(dgd.arcs.size()) != c) throw StructureError("arc table size mismatch");
  if (c == 0) return true;
  std::vector<char> used(static_cast<std::size_t>(std::max(dgd.vertex_count, 0)), 0);
  for (int i = 0; i < c; ++i) {
    const auto& d = dgd.crossings[i];
    if (d.in_corner < 0 || d.in_corner > 3) throw StructureError("directed edge corner out of range");
    if (d.sign != 1 && d.sign != -1) throw StructureError("signed edge sign must be +1 or -1");
    for (int p = 0; p < 4; ++p) {
      const int r = d.corner_region[p];
      if (r < 0 || r >= dgd.vertex_count) throw StructureError("corner region out of range");
      used[r] = 1;
      const Slot t = dgd.arcs[i][p];
      if (t.crossing < 0 || t.crossing >= c || t.position < 0 || t.position > 3)
        throw StructureError("arc endpoint out of range");
      if (t == Slot{i, p} || dgd.arcs[t.crossing][t.position] != Slot{i, p})
        throw StructureError("strand arcs do not pair crossing ends");
      const auto& e = dgd.crossings[t.crossing];
      // The quadrilateral on each side of the arc has one vertex.
      if (d.corner_region[mod4(p - 1)] != e.corner_region[t.position] ||
          d.corner_region[p] != e.corner_region[mod4(t.position - 1)])
        throw StructureError("graphs are not dual: quadrants across a strand disagree");
    }
  }
  if (std::count(used.begin(), used.end(), 1) != dgd.vertex_count || dgd.vertex_count != c + 2)
    throw StructureError("vertex count violates the sphere Euler relation");

  for (int i = 0; i < c; ++i) {
    const int k = dgd.crossings[i].in_corner;
    for (int p = 0; p < 4; ++p) {
      const bool in = (p == k || p == mod4(k + 1));
      const Slot t = dgd.arcs[i][p];
      const int kt = dgd.crossings[t.crossing].in_corner;
      const bool t_in = (t.position == kt || t.position == mod4(kt + 1));
      if (in == t_in) return false;
    }
  }
  return true;
}

}  // namespace biq
