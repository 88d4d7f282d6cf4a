#pragma once

#include <string>
#include <vector>

#include "amalgam/square_complex.hpp"

namespace amalgam {

struct ArcRef {
  int curve = 0;
  int index = 0;

  bool operator==(const ArcRef &) const = default;
};

struct Side {
  int arc = 0;
  int orient = 1;
};

// Filling system of closed curves on a closed surface.  Arc (c, i) runs from
// the i-th crossing point of curve c to the next one; arcs are stored curve
// by curve in index order.
struct CurveSystem {
  int genus = 0;
  std::vector<std::string> curves;
  std::vector<ArcRef> arcs;
  std::vector<std::vector<Side>> regions;

  int arc_count(int curve) const;
  int arc_id(int curve, int index) const;
  int curve_id(const std::string &name) const;
  std::string arc_name(int arc) const;
};

struct Check {
  std::string name;
  bool ok = true;
  std::vector<std::string> details;
};

struct CurveSystemReport {
  bool valid = true;
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int euler = 0;
  int expected_euler = 0;
  // two_sided, four_valent, euler_count, disk_regions, filling
  std::vector<Check> checks;

  const Check &check(const std::string &name) const;
};

CurveSystemReport validate_curve_system(const CurveSystem &cs);

// One intersection point: the four arc-ends around it in rotation order
// (2 * arc + 1 for a head, 2 * arc for a tail), their arcs, and the regions
// in the corners between consecutive ends.
struct Crossing {
  std::array<int, 4> ends{};
  std::array<int, 4> arcs{};
  std::array<int, 4> regions{};
  std::array<int, 2> curves{};
};

std::vector<Crossing> crossings(const CurveSystem &cs);

// Vertices are regions, edge a runs from the region on the +1 side of arc a
// to the one on the -1 side, squares follow crossings(cs).
SquareComplex dual_square_complex(const CurveSystem &cs);

// Report with hyperplanes named by curve and sides given as region side
// indices.
SpecialnessReport check_special(const CurveSystem &cs, const SquareComplex &sq);

// Two-fold cover: crossing an arc with voltage 1 switches sheets.
struct DoubleCover {
  std::vector<int> arc_voltage;
};

DoubleCover cover_from_curves(const CurveSystem &cs, const std::vector<std::string> &curves);

// Lifted region (R, s) has index 2R + s.  A curve with two lifts yields
// curves "c.0" and "c.1"; a curve with one lift keeps its name.
CurveSystem pullback_double_cover(const CurveSystem &cs, const DoubleCover &cover);

// Voltage on the dual complex's edges matching the cover.
std::vector<int> dual_voltage(const CurveSystem &cs, const DoubleCover &cover);

// Minimum breadth-first code of the cellular map over all starting darts and
// both orientations; curve names are ignored.
std::vector<int> map_certificate(const CurveSystem &cs);

bool isomorphic(const CurveSystem &a, const CurveSystem &b);

// Closed edge path of a curve in the barycentric subdivision of the dual:
// arc midpoints alternate with crossing centres.  marker[k] is set on the
// centres of crossings with the marker curve.
struct CurvePath {
  std::vector<int> vertices;
  std::vector<int> edges;
  std::vector<bool> marker;
};

CurvePath subdivided_curve_path(const CurveSystem &cs, const std::string &curve,
                                const std::string &marker_curve);

struct GlueSide {
  const CurveSystem &cs;
  std::string amalgamating;
  std::string perimeter;
};

struct GlueReport {
  SquareComplex complex;
  SpecialnessReport specialness;
  bool link_ok = true;
  // path index k on the left is glued to (offset + direction * k) mod n on the right
  int offset = 0;
  int direction = 1;
  // aligned maps examined before one passed
  int candidates = 0;
  std::array<int, 2> hyperplanes_before{};
  std::array<int, 2> hyperplanes_after{};
};

// Subdivides both duals and identifies the amalgamating paths by the first
// dihedral alignment that takes a perimeter vertex to a perimeter vertex and
// leaves a complex satisfying the link condition.
GlueReport glue_complexes(const GlueSide &left, const GlueSide &right);

} // namespace amalgam
