#include "amalgam/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include <boost/math/tools/roots.hpp>
#include <boost/random/sobol.hpp>

#include "amalgam/core.hpp"

namespace amalgam {

namespace {

constexpr double kPi = std::numbers::pi;

void require_triangle(const HypTriangle &t) {
  for (double x : {t.a, t.b, t.c})
    if (!std::isfinite(x) || x <= kDegeneracyTolerance)
      throw ValidationError("triangle", "side lengths must be positive");
  if (t.a + t.b - t.c <= kDegeneracyTolerance || t.b + t.c - t.a <= kDegeneracyTolerance ||
      t.c + t.a - t.b <= kDegeneracyTolerance)
    throw ValidationError("triangle", "degenerate triangle");
}

double hyp_angle(double opposite, double x, double y) {
  const double c = (std::cosh(x) * std::cosh(y) - std::cosh(opposite)) / (std::sinh(x) * std::sinh(y));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double euc_angle(double opposite, double x, double y) {
  return std::acos(std::clamp((x * x + y * y - opposite * opposite) / (2 * x * y), -1.0, 1.0));
}

double minkowski(const Vec3 &p, const Vec3 &q) { return -p[0] * q[0] + p[1] * q[1] + p[2] * q[2]; }

Vec3 polar(double d, double phi) {
  return {std::cosh(d), std::sinh(d) * std::cos(phi), std::sinh(d) * std::sin(phi)};
}

Vec3 geodesic(const Vec3 &p, const Vec3 &q, double s) {
  const double d = hyperboloid_distance(p, q);
  if (d < kDegeneracyTolerance)
    return p;
  const double x = std::sinh((1 - s) * d) / std::sinh(d);
  const double y = std::sinh(s * d) / std::sinh(d);
  return {x * p[0] + y * q[0], x * p[1] + y * q[1], x * p[2] + y * q[2]};
}

class Sobol {
public:
  Sobol(std::size_t dims, std::uint64_t seed) : engine_(dims), dims_(dims) {
    engine_.seed(seed);
  }
  std::vector<double> next() {
    std::vector<double> u(dims_);
    const double span = static_cast<double>(engine_.max()) - static_cast<double>(engine_.min()) + 1.0;
    for (auto &x : u)
      x = (static_cast<double>(engine_()) - static_cast<double>(engine_.min()) + 0.5) / span;
    return u;
  }

private:
  boost::random::sobol engine_;
  std::size_t dims_;
};

} // namespace

Angles solve_triangle(const HypTriangle &t) {
  require_triangle(t);
  return {hyp_angle(t.a, t.b, t.c), hyp_angle(t.b, t.c, t.a), hyp_angle(t.c, t.a, t.b)};
}

EucTriangle comparison_triangle(const HypTriangle &t) {
  require_triangle(t);
  EucTriangle e;
  e.a = t.a;
  e.b = t.b;
  e.c = t.c;
  const double gamma = euc_angle(t.c, t.a, t.b);
  e.C = {0, 0};
  e.A = {t.b, 0};
  e.B = {t.a * std::cos(gamma), t.a * std::sin(gamma)};
  return e;
}

Angles euclidean_angles(const EucTriangle &t) {
  return {euc_angle(t.a, t.b, t.c), euc_angle(t.b, t.c, t.a), euc_angle(t.c, t.a, t.b)};
}

ComparisonReport check_comparison(const HypTriangle &t, std::int64_t samples, std::uint64_t seed) {
  const auto angles = solve_triangle(t);
  const auto e = comparison_triangle(t);
  const Vec3 C{1, 0, 0};
  const Vec3 A = polar(t.b, 0);
  const Vec3 B = polar(t.a, angles.C);
  const std::array<std::pair<Vec3, Vec3>, 3> hyp{{{A, B}, {B, C}, {C, A}}};
  const std::array<std::pair<Vec2, Vec2>, 3> euc{{{e.A, e.B}, {e.B, e.C}, {e.C, e.A}}};
  auto lerp = [](const Vec2 &p, const Vec2 &q, double s) {
    return Vec2{(1 - s) * p[0] + s * q[0], (1 - s) * p[1] + s * q[1]};
  };
  ComparisonReport r;
  r.worst_excess = -INFINITY;
  Sobol qrng(4, seed);
  for (std::int64_t i = 0; i < samples; ++i) {
    const auto u = qrng.next();
    const auto k1 = std::min<std::size_t>(2, static_cast<std::size_t>(3 * u[0]));
    const auto k2 = std::min<std::size_t>(2, static_cast<std::size_t>(3 * u[2]));
    const auto x = geodesic(hyp[k1].first, hyp[k1].second, u[1]);
    const auto y = geodesic(hyp[k2].first, hyp[k2].second, u[3]);
    const auto xe = lerp(euc[k1].first, euc[k1].second, u[1]);
    const auto ye = lerp(euc[k2].first, euc[k2].second, u[3]);
    const double de = std::hypot(xe[0] - ye[0], xe[1] - ye[1]);
    r.worst_excess = std::max(r.worst_excess, hyperboloid_distance(x, y) - de);
    ++r.samples;
  }
  r.holds = r.worst_excess <= kMapTolerance;
  return r;
}

HypTriangle HypPolygon::fan_triangle(int t) const {
  const auto k = static_cast<std::size_t>(t);
  return {diagonals.at(k + 2), diagonals.at(k + 1), sides.at(k + 1)};
}

HypPolygon triangle_polygon(const HypTriangle &t) {
  require_triangle(t);
  return {{t.b, t.c, t.a}, {0, t.b, t.a}};
}

HypPolygon polygon_from_fan(std::vector<double> sides, std::vector<double> diagonals) {
  const auto n = sides.size();
  if (n < 3)
    throw ValidationError("polygon", "needs at least three sides");
  if (diagonals.size() != n)
    throw ValidationError("polygon.diagonals", "expected one entry per vertex");
  diagonals[0] = 0;
  if (std::abs(diagonals[1] - sides[0]) > kMapTolerance ||
      std::abs(diagonals[n - 1] - sides[n - 1]) > kMapTolerance)
    throw ValidationError("polygon.diagonals", "fan must start and end on the sides at v0");
  HypPolygon p{std::move(sides), std::move(diagonals)};
  double apex = 0;
  std::vector<double> at(n, 0.0);
  for (int t = 0; t + 2 < static_cast<int>(n); ++t) {
    const auto ang = solve_triangle(p.fan_triangle(t));
    apex += ang.C;
    at[static_cast<std::size_t>(t) + 1] += ang.A;
    at[static_cast<std::size_t>(t) + 2] += ang.B;
  }
  at[0] = apex;
  for (double a : at)
    if (a >= kPi - kDegeneracyTolerance)
      throw ValidationError("polygon", "degenerate polygon: not strictly convex");
  return p;
}

double circumradius(const std::vector<double> &sides) {
  if (sides.size() < 3)
    throw ValidationError("polygon", "needs at least three sides");
  double longest = 0;
  for (double s : sides) {
    if (!std::isfinite(s) || s <= kDegeneracyTolerance)
      throw ValidationError("polygon", "side lengths must be positive");
    longest = std::max(longest, s);
  }
  auto excess = [&](double R) {
    double total = 0;
    for (double s : sides)
      total += 2 * std::asin(std::min(1.0, std::sinh(s / 2) / std::sinh(R)));
    return total - 2 * kPi;
  };
  double lo = longest / 2;
  if (excess(lo) < 0)
    throw ValidationError("polygon", "degenerate polygon: circumcentre falls outside");
  double hi = lo + 1;
  while (excess(hi) > 0)
    hi *= 2;
  auto [a, b] = boost::math::tools::bisect(
      excess, lo, hi, [](double x, double y) { return std::abs(x - y) < 1e-15; });
  return (a + b) / 2;
}

HypPolygon cyclic_polygon(const std::vector<double> &sides) {
  const double R = circumradius(sides);
  const auto n = sides.size();
  std::vector<double> diagonals(n, 0.0);
  double theta = 0;
  for (std::size_t k = 1; k < n; ++k) {
    theta += 2 * std::asin(std::min(1.0, std::sinh(sides[k - 1] / 2) / std::sinh(R)));
    diagonals[k] = 2 * std::asinh(std::sinh(R) * std::sin(theta / 2));
  }
  diagonals[1] = sides[0];
  diagonals[n - 1] = sides[n - 1];
  return polygon_from_fan(sides, std::move(diagonals));
}

double hyperboloid_distance(const Vec3 &p, const Vec3 &q) {
  // |p - q|^2 = 4 sinh^2(d / 2); better conditioned than acosh for short chords
  const Vec3 d{p[0] - q[0], p[1] - q[1], p[2] - q[2]};
  return 2 * std::asinh(std::sqrt(std::max(0.0, minkowski(d, d))) / 2);
}

// Vertices are placed around a point c near the middle of the polygon, not
// around v_0: measuring short distances between points at distance D from the
// origin costs about eps * e^(2D), which passes 1e-9 for the larger cells.
PolygonEmbedding::PolygonEmbedding(const HypPolygon &p) : p_(p) {
  const auto n = static_cast<std::size_t>(p.size());
  // polar coordinates around v_0
  std::vector<double> phi(n, 0);
  for (std::size_t t = 0; t + 2 < n; ++t)
    phi[t + 2] = phi[t + 1] + solve_triangle(p.fan_triangle(static_cast<int>(t))).C;
  Vec3 mean{0, 0, 0};
  for (std::size_t k = 0; k < n; ++k) {
    const auto v = polar(p.diagonals[k], phi[k]);
    for (int i = 0; i < 3; ++i)
      mean[i] += v[i];
  }
  const double norm = std::sqrt(-minkowski(mean, mean));
  const double rho = std::acosh(std::max(1.0, mean[0] / norm));
  const double phi_c = std::atan2(mean[2], mean[1]);

  vertices_.resize(n);
  vertices_[0] = polar(rho, 0);
  for (std::size_t k = 1; k < n; ++k) {
    const double d = p.diagonals[k];
    const double dphi = phi[k] - phi_c;
    // triangle c, v_0, v_k: sides rho and d around the angle dphi at v_0
    const double ch = std::cosh(rho) * std::cosh(d) - std::sinh(rho) * std::sinh(d) * std::cos(dphi);
    const double r = std::acosh(std::max(1.0, ch));
    double theta = 0;
    if (rho > kDegeneracyTolerance && r > kDegeneracyTolerance) {
      const double cos_t = (std::cosh(rho) * std::cosh(r) - std::cosh(d)) / (std::sinh(rho) * std::sinh(r));
      const double sin_t = std::sin(dphi) * std::sinh(d) / std::sinh(r);
      theta = -std::atan2(sin_t, cos_t);
    } else if (rho <= kDegeneracyTolerance) {
      theta = dphi;
    }
    vertices_[k] = polar(r, theta);
  }
}

Vec3 PolygonEmbedding::point(const FanPoint &x) const {
  const auto base = geodesic(vertex(x.t + 1), vertex(x.t + 2), x.s);
  return geodesic(vertices_[0], base, x.r);
}

FanPoint PolygonEmbedding::on_side(int k, double u) const {
  const int n = p_.size();
  if (k == 0)
    return {0, 0, u};
  if (k == n - 1)
    return {n - 3, 1, 1 - u};
  return {k - 1, u, 1};
}

EdgeDilationMap::EdgeDilationMap(const HypPolygon &p, const HypPolygon &q) : p_(p), q_(q) {
  if (p.size() != q.size())
    throw ValidationError("polygon", "side counts differ: " + std::to_string(p.size()) + " and " +
                                         std::to_string(q.size()));
}

double EdgeDilationMap::edge_ratio(int k) const {
  const auto i = static_cast<std::size_t>(k);
  return q_.polygon().sides.at(i) / p_.polygon().sides.at(i);
}

std::uint64_t default_seed() {
  const char *env = std::getenv("AMALGAM_SEED");
  if (env == nullptr || *env == '\0')
    return kDefaultSeed;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used != std::string(env).size())
      throw std::invalid_argument(env);
    return v;
  } catch (const std::exception &) {
    throw ValidationError("AMALGAM_SEED", "expected a non-negative integer");
  }
}

EdgeDilation edge_dilation_map(const HypPolygon &p, const HypPolygon &q, std::int64_t samples,
                               std::uint64_t seed) {
  EdgeDilation out{EdgeDilationMap(p, q), {1, samples, seed}};
  const auto &m = out.map;
  auto &K = out.estimate.K;
  for (int k = 0; k < p.size(); ++k) {
    const double r = m.edge_ratio(k);
    K = std::max({K, r, 1 / r});
  }
  const int T = p.size() - 2;
  Sobol qrng(6, seed);
  auto fan = [T](double a, double b, double c) {
    return FanPoint{std::min(T - 1, static_cast<int>(a * T)), b, std::sqrt(c)};
  };
  for (std::int64_t i = 0; i < samples; ++i) {
    const auto u = qrng.next();
    const auto x = fan(u[0], u[1], u[2]);
    const auto y = fan(u[3], u[4], u[5]);
    const double dp = hyperboloid_distance(m.source(x), m.source(y));
    if (dp < kMapTolerance)
      continue;
    const double r = hyperboloid_distance(m.image(x), m.image(y)) / dp;
    K = std::max({K, r, 1 / r});
  }
  return out;
}

double assemble_bilipschitz_bound(const std::vector<double> &cells) {
  if (cells.empty())
    throw ValidationError("cells", "no per-cell constants to assemble");
  return *std::max_element(cells.begin(), cells.end());
}

} // namespace amalgam
