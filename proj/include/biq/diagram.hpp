#pragma once

// Oriented link diagrams (PD codes, closed braids), their regions on S^2, and
// the dual graph diagram: one vertex per region, and at every crossing one
// directed edge joining the in-in and out-out quadrants plus one signed edge
// joining the other two opposite quadrants.

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biq/errors.hpp"
#include "biq/presentation.hpp"

namespace biq {

struct BraidWord;

enum class DiagramErrorKind {
  label_multiplicity,  // an edge label does not occur exactly twice
  label_range,         // labels are not exactly 1..2c
  orientation,         // strand orientations cannot be made consistent
  unsupported,         // e.g. a split diagram with crossings
};

class DiagramError : public InputError {
 public:
  DiagramError(DiagramErrorKind kind, const std::string& what) : InputError(what), kind_(kind) {}
  DiagramErrorKind kind() const noexcept { return kind_; }

 private:
  DiagramErrorKind kind_;
};

// One end of an edge at a crossing. Positions run counterclockwise and
// position 0 is the incoming under-strand.
struct Slot {
  int crossing = 0;
  int position = 0;
  auto operator<=>(const Slot&) const = default;
};

class OrientedPDCode {
 public:
  using Tuple = std::array<int, 4>;

  OrientedPDCode() = default;

  // Validates label multiplicity and range, then orients every strand: at
  // each crossing position 0 is incoming and position 2 outgoing, and the
  // over-strand direction follows by propagation along its component. A
  // component that never passes under is oriented by increasing label.
  static OrientedPDCode from_tuples(std::vector<Tuple> crossings);
  // Crossing-free diagram of `components` nested circles.
  static OrientedPDCode unlink(int components);

  int crossing_count() const noexcept { return static_cast<int>(crossings_.size()); }
  int component_count() const noexcept { return components_; }
  const std::vector<Tuple>& crossings() const noexcept { return crossings_; }
  int label(Slot s) const { return crossings_[s.crossing][s.position]; }
  bool incoming(Slot s) const { return incoming_[s.crossing][s.position]; }
  // The other end of the edge at `s`.
  Slot partner(Slot s) const { return partner_[s.crossing][s.position]; }
  // +1 for a positive (right-handed) crossing, -1 otherwise.
  int sign(int crossing) const { return incoming_[crossing][3] ? 1 : -1; }
  int writhe() const;
  // True when the 4-valent projection graph is connected (or has no crossings).
  bool connected() const;

  // Same diagram with edges renumbered 1..2c along each component in
  // traversal order.
  OrientedPDCode relabeled() const;
  // "PD[X(a,b,c,d), ...]"; "PD[]" for crossing-free diagrams.
  std::string to_string() const;

 private:
  OrientedPDCode(std::vector<Tuple> crossings, std::vector<std::array<bool, 4>> incoming,
                 int free_loops);
  void link_partners();
  void count_components();

  std::vector<Tuple> crossings_;
  std::vector<std::array<bool, 4>> incoming_;
  std::vector<std::array<Slot, 4>> partner_;
  int free_loops_ = 0;
  int components_ = 0;

  friend OrientedPDCode mirror(const OrientedPDCode&);
  friend OrientedPDCode reverse(const OrientedPDCode&);
  friend OrientedPDCode braid_closure(const BraidWord&);
};

// Parses "PD[X(1,5,2,4), X(3,1,4,6), ...]" (X[...] also accepted).
// Malformed text throws ParseError; semantic problems throw DiagramError.
OrientedPDCode parse_pd(std::string_view text);

// Switch every crossing (same projection).
OrientedPDCode mirror(const OrientedPDCode& pd);
// Reverse the orientation of every component.
OrientedPDCode reverse(const OrientedPDCode& pd);

enum class DiagramVariant { id, mirror, reverse, mirror_reverse };
OrientedPDCode apply_variant(const OrientedPDCode& pd, DiagramVariant variant);
std::string to_string(DiagramVariant variant);
std::optional<DiagramVariant> parse_variant(std::string_view name);

struct BraidWord {
  int strands = 2;
  // Generator sigma_|i|, inverted when i < 0.
  std::vector<int> letters;
};

// "k: i j -i ..." (the "k:" prefix is required).
BraidWord parse_braid(std::string_view text);
// Closure with every strand oriented upward. sigma_i is a positive crossing.
// Throws DiagramError(unsupported) if a strand position never crosses in a
// nonempty word (split closure).
OrientedPDCode braid_closure(const BraidWord& word);

struct EdgeSide {
  int edge = 0;  // edge label
  int side = 0;  // +1: region lies left of the edge's direction, -1: right
};

struct Region {
  int id = 0;
  std::vector<EdgeSide> boundary;
};

// Faces of the projection on S^2 by corner traversal. Connected diagrams with
// c >= 1 crossings have c + 2 regions; k crossing-free circles have k + 1.
std::vector<Region> regions(const OrientedPDCode& pd);

struct DirectedEdge {
  int from = 0;
  int to = 0;
  int crossing = 0;
};

struct SignedEdge {
  int u = 0;
  int v = 0;
  int sign = 0;
  int crossing = 0;
};

// Decorations at one crossing. Corner p lies between positions p and p + 1.
struct CrossingDecoration {
  std::array<int, 4> corner_region{};
  int in_corner = 0;  // corner between the two incoming strand ends
  int sign = 1;
};

struct DualGraphDiagram {
  int vertex_count = 0;
  std::vector<CrossingDecoration> crossings;
  // Strand arcs: arcs[c][p] is the crossing end joined to (c, p).
  std::vector<std::array<Slot, 4>> arcs;

  // in-in region -> out-out region, one per crossing.
  std::vector<DirectedEdge> directed_edges() const;
  // The remaining opposite pair, carrying the crossing sign.
  std::vector<SignedEdge> signed_edges() const;
};

DualGraphDiagram dual_graph(const OrientedPDCode& pd);

// How crossing quadrants map to the roles of x*(a.b) = y. With the default,
// x is the in-in region, y the out-out region, a lies left of travel from x
// to y and b right; a positive crossing reads y = x*(a.b) and a negative one
// x = y*(a.b). reverse_direction swaps x and y (and with them left and
// right); swap_sides exchanges a and b.
struct RoleConvention {
  bool reverse_direction = false;
  bool swap_sides = false;

  std::string id() const;
  static std::optional<RoleConvention> parse(std::string_view id);
  static std::array<RoleConvention, 4> all();
  auto operator<=>(const RoleConvention&) const = default;
};

// The convention under which Reidemeister-equivalent diagrams get equal
// counts; see README "Crossing convention".
RoleConvention default_convention();

struct CrossingRelation {
  int x = 0, y = 0, a = 0, b = 0;
  int sign = 1;  // + : y = x*(a.b); - : x = y*(a.b)
  int crossing = 0;
};

std::vector<CrossingRelation> crossing_relations(const DualGraphDiagram& dgd,
                                                 RoleConvention convention = default_convention());

// Generators v1..vN (one per region), one relation per crossing written as
// "x*(a.b) = y" (positive) or "y*(a.b) = x" (negative).
Presentation presentation_from_relations(int region_count, const std::vector<CrossingRelation>& relations);
Presentation fundamental_presentation(const DualGraphDiagram& dgd,
                                      RoleConvention convention = default_convention());

// Weakly connected components of the directed subgraph, ignoring vertices
// that carry no directed edge.
int directed_component_count(const DualGraphDiagram& dgd);

// True iff the strands drawn through the quadrilateral tiling join every
// outgoing crossing end to an incoming one (no source-sink bivalent vertex,
// i.e. not a magnetic graph). Throws StructureError if `dgd` is not a
// consistent dual pair (bad corner pairing, decorations on non-opposite
// corners, wrong Euler count).
bool validate_reconstruction(const DualGraphDiagram& dgd);

}  // namespace biq
