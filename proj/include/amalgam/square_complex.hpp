#pragma once

#include <array>
#include <string>
#include <vector>

namespace amalgam {

struct Edge {
  int u = 0;
  int w = 0;
  std::string label;
};

// Boundary cycle v[0] e[0] v[1] e[1] v[2] e[2] v[3] e[3]; e[k] joins v[k] and
// v[k+1], and fwd[k] says whether it is stored as u = v[k].
struct Square {
  std::array<int, 4> v{};
  std::array<int, 4> e{};
  std::array<bool, 4> fwd{};
};

// Edge-ends are encoded as 2 * edge + (0 at u, 1 at w).
struct SquareComplex {
  int vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<Square> squares;
  // Edge-ends at each vertex; positions in these lists are the "sides"
  // used by specialness reports.
  std::vector<std::vector<int>> incidence;

  int add_vertex();
  int add_edge(int u, int w, std::string label = {});
  void add_square(std::array<int, 4> v, std::array<int, 4> e, std::array<bool, 4> fwd);
  // fwd inferred from the stored endpoints; loops count as forward.
  void add_square(std::array<int, 4> v, std::array<int, 4> e);

  long long euler() const;
};

struct Hyperplane {
  std::string name;
  std::vector<int> edges;
  bool two_sided = true;
  bool embedded = true;
};

struct HyperplaneData {
  std::vector<int> edge_class;
  std::vector<Hyperplane> classes;
  // crossing[a][b]: some square has edges in both classes
  std::vector<std::vector<char>> crossing;
};

HyperplaneData hyperplanes(const SquareComplex &sq);

// Link of a vertex: nodes are positions in incidence[v], one link edge per
// square corner at v.
std::vector<std::array<int, 2>> link_edges(const SquareComplex &sq, int v);

// Per vertex: the link has no loops, bigons or triangles.
std::vector<bool> check_link_condition(const SquareComplex &sq);

struct SelfOsculation {
  std::string curve;
  int region = 0;
  std::array<int, 2> sides{};
};

struct InterOsculation {
  std::array<std::string, 2> curves;
  int region = 0;
  std::array<int, 2> sides{};
};

struct SpecialnessReport {
  std::vector<std::string> hyperplanes;
  std::vector<bool> two_sided;
  std::vector<bool> embedded;
  std::vector<SelfOsculation> self_osculations;
  std::vector<InterOsculation> inter_osculations;
  std::vector<bool> link_girth_ok;

  bool special() const;
};

SpecialnessReport check_special(const SquareComplex &sq);

// New vertices: old ones, then one per edge midpoint, then one per square
// center.  Each edge becomes two, each square four.  Half-edges of an old
// edge labelled L are labelled L- (u side) and L+ (w side).
SquareComplex barycentric_subdivide(const SquareComplex &sq);

// Two-fold cover with sheet switching across edges of voltage 1.  Cell k on
// sheet s becomes 2k + s.
SquareComplex lift_complex(const SquareComplex &sq, const std::vector<int> &edge_voltage);

// Canonical form of a vertex-coloured simple graph; equal certificates mean
// isomorphic graphs.
std::vector<int> graph_certificate(const std::vector<std::vector<int>> &adjacency,
                                   const std::vector<int> &colors);

// Certificate of the incidence structure (vertices, edges, squares).
std::vector<int> complex_certificate(const SquareComplex &sq);

bool isomorphic(const SquareComplex &a, const SquareComplex &b);

} // namespace amalgam
