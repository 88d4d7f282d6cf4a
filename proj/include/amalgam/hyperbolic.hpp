#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace amalgam {

inline constexpr double kMapTolerance = 1e-9;
inline constexpr double kDegeneracyTolerance = 1e-12;

// a = |BC|, b = |CA|, c = |AB|.
struct HypTriangle {
  double a = 0;
  double b = 0;
  double c = 0;
};

struct Angles {
  double A = 0;
  double B = 0;
  double C = 0;
};

Angles solve_triangle(const HypTriangle &t);

using Vec2 = std::array<double, 2>;

// Vertices A, B, C of a Euclidean triangle with the same side lengths.
struct EucTriangle {
  Vec2 A{}, B{}, C{};
  double a = 0, b = 0, c = 0;
};

EucTriangle comparison_triangle(const HypTriangle &t);
Angles euclidean_angles(const EucTriangle &t);

struct ComparisonReport {
  std::int64_t samples = 0;
  double worst_excess = 0; // max of d_hyp - d_euc
  bool holds = true;
};

// Pairs of points on the boundary of t against their comparison points.
ComparisonReport check_comparison(const HypTriangle &t, std::int64_t samples, std::uint64_t seed);

// Convex polygon v_0 .. v_{n-1} with its fan from v_0: diagonals[k] = |v_0 v_k|,
// diagonals[1] = sides[0] and diagonals[n-1] = sides[n-1].
struct HypPolygon {
  std::vector<double> sides;
  std::vector<double> diagonals;

  int size() const { return static_cast<int>(sides.size()); }
  HypTriangle fan_triangle(int t) const;
};

HypPolygon triangle_polygon(const HypTriangle &t);
HypPolygon polygon_from_fan(std::vector<double> sides, std::vector<double> diagonals);
// Vertices on a common circle, centre inside.
HypPolygon cyclic_polygon(const std::vector<double> &sides);
double circumradius(const std::vector<double> &sides);

// Point of a fan-triangulated polygon: triangle t has apex v_0 and base
// v_{t+1} v_{t+2}; the point sits at fraction r from v_0 toward the point at
// fraction s along the base.
struct FanPoint {
  int t = 0;
  double s = 0;
  double r = 0;
};

using Vec3 = std::array<double, 3>;

class PolygonEmbedding {
public:
  explicit PolygonEmbedding(const HypPolygon &p);

  const HypPolygon &polygon() const { return p_; }
  Vec3 vertex(int k) const { return vertices_.at(static_cast<std::size_t>(k)); }
  Vec3 point(const FanPoint &x) const;
  // Boundary point at fraction u along side k (from v_k to v_{k+1}).
  FanPoint on_side(int k, double u) const;

private:
  HypPolygon p_;
  std::vector<Vec3> vertices_;
};

double hyperboloid_distance(const Vec3 &p, const Vec3 &q);

struct KEstimate {
  double K = 1;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

// Fan-triangle-wise composite hyp -> Euc -> affine -> Euc -> hyp. The affine
// step keeps the fan coordinates, so the map sends FanPoint x in p to x in q.
class EdgeDilationMap {
public:
  EdgeDilationMap(const HypPolygon &p, const HypPolygon &q);

  Vec3 source(const FanPoint &x) const { return p_.point(x); }
  Vec3 image(const FanPoint &x) const { return q_.point(x); }
  double edge_ratio(int k) const;
  const PolygonEmbedding &from() const { return p_; }
  const PolygonEmbedding &to() const { return q_; }

private:
  PolygonEmbedding p_;
  PolygonEmbedding q_;
};

struct EdgeDilation {
  EdgeDilationMap map;
  KEstimate estimate;
};

inline constexpr std::int64_t kDefaultSamples = 10000;
inline constexpr std::uint64_t kDefaultSeed = 20240611;

// kDefaultSeed unless AMALGAM_SEED is set.
std::uint64_t default_seed();

EdgeDilation edge_dilation_map(const HypPolygon &p, const HypPolygon &q,
                               std::int64_t samples = kDefaultSamples,
                               std::uint64_t seed = default_seed());

double assemble_bilipschitz_bound(const std::vector<double> &cells);

} // namespace amalgam
