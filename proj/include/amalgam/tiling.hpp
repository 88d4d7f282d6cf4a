#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "amalgam/classify.hpp"
#include "amalgam/core.hpp"
#include "amalgam/hyperbolic.hpp"

namespace amalgam {

// Four one-boundary pieces glued along one curve, with Euler characteristics
// scale * normalized.
struct ReducedAmalgam {
  Amalgam source;
  Quadruple normalized{};
  std::int64_t scale = 1;
  std::array<int, 4> genera{};
};

ReducedAmalgam reduce_to_four_pieces(const Amalgam &a);

// Side pairing of the (4g+1)-gon for S_{g,1}: side 0 is the boundary, sides
// 1+4k, 3+4k and 2+4k, 4+4k are paired orientation-reversingly.
int paired_side(int sides, int k);

// The polygon realized in the hyperbolic plane with its vertices on a circle,
// boundary side of length kBranchingLength and all other sides equal, angles
// summing to pi so the single vertex lies on a geodesic boundary.
struct PieceGeometry {
  int genus = 0;
  int sides = 0;
  double branching_length = 0;
  double side_length = 0;
  double circumradius = 0;

  // Chord between corners x and y; orbit() names its length class.
  double chord(int x, int y) const;
  std::string orbit(int x, int y) const;
  HypPolygon polygon() const;
};

inline constexpr double kBranchingLength = 1.0;

PieceGeometry piece_geometry(int genus);

struct TileCell {
  int slot = 0;
  int genus = 0;
  std::string label; // first, collar+ or collar-
  int extension = 0; // vertices added by balancing
  int depth = 0;
  std::string region; // address in the tree of branching lines
  std::vector<int> vertices;
  std::vector<std::string> orbits; // side i joins vertices i and i + 1
  std::vector<double> lengths;
  std::vector<int> branching_sides;
  int type = -1;

  int sides() const { return static_cast<int>(vertices.size()); }
  std::string type_key() const;
};

struct BranchingEdge {
  int u = 0; // corner 0 end
  int w = 0; // corner 1 end
  std::vector<int> cells;

  bool frontier() const { return cells.size() < 4; }
};

struct TilingComplex {
  ReducedAmalgam amalgam;
  std::array<PieceGeometry, 4> pieces; // by slot
  std::vector<TileCell> cells;
  std::vector<BranchingEdge> branching;
  std::vector<std::pair<int, int>> adjacency;
  std::vector<std::string> types;
  int vertex_count = 0;
  int depth = 0;
  std::int64_t bound = 0; // M
};

struct CellIsomorphism {
  std::vector<int> cells;
  std::vector<int> vertices;
};

struct TilingPair {
  TilingComplex first;
  TilingComplex second;
  CellIsomorphism iso;
};

inline constexpr std::int64_t kDefaultCellBudget = 100000;

TilingPair grow_tilings(const Amalgam &a1, const Amalgam &a2, int depth,
                        std::int64_t budget = kDefaultCellBudget);

// 2 * max side count * max vertex valence over both fundamental domains.
std::int64_t side_bound(const std::array<int, 4> &g1, const std::array<int, 4> &g2);

struct Skeleton {
  int vertices = 0;
  std::set<std::pair<int, int>> edges;
};

Skeleton one_skeleton(const TilingComplex &t);

// Empty when the carried map is a bijection of vertices taking edges onto edges
// and each cell's boundary cycle onto its partner's.
std::vector<std::string> isomorphism_violations(const TilingPair &p);

// Edge list of the 1-skeleton under the vertex numbering found by walking the
// cells outward from the fundamental domain, neighbours ordered by piece slot.
std::string complex_certificate(const TilingComplex &t);

// Class sizes of the stable colour refinement of the 1-skeleton; equal for
// isomorphic skeleta.
std::vector<std::size_t> refinement_invariant(const TilingComplex &t);

std::vector<std::string> tiling_violations(const TilingComplex &t);

int isometry_type_census(const TilingComplex &t);
std::set<std::string> census_types(const TilingComplex &t);

struct CellConstant {
  std::string first_type;
  std::string second_type;
  int cells = 0;
  KEstimate estimate;
};

// One estimate per matched pair of cell types.
std::vector<CellConstant> cell_constants(const TilingPair &p, std::int64_t samples,
                                         std::uint64_t seed);

} // namespace amalgam
