#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "amalgam/hyperbolic.hpp"
#include "amalgam/tiling.hpp"

using namespace amalgam;

namespace {

constexpr double kPi = std::numbers::pi;

const Amalgam S11 = Amalgam::make(2, CurveSpec::separating(1, 1), 2, CurveSpec::separating(1, 1));
const Amalgam S12 = Amalgam::make(3, CurveSpec::separating(1, 2), 3, CurveSpec::separating(1, 2));
const Amalgam MIXED = Amalgam::make(2, CurveSpec::separating(1, 1), 3, CurveSpec::separating(1, 2));
const Amalgam NS3 = Amalgam::make(3, CurveSpec::nonseparating(), 3, CurveSpec::nonseparating());

int pairing(int n, int k) {
  const int r = (k - 1) % 4;
  return r < 2 ? k + 2 : k - 2;
}

// new vertices contributed by a tile path from corner `from` to `to`
int added(int n, int from, int to) {
  std::vector<int> path;
  for (int c = from;; c = (c + 1) % n) {
    path.push_back(c);
    if (c == to)
      break;
  }
  int k = static_cast<int>(path.size()) - 1;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (path[i] == 0 && path[i + 1] == 1)
      --k;
  return k;
}

// Side count of the cell across side `side` of the fundamental domain,
// counted from the corner sequences of the two far fans.
int collar_size(int genus, int side) {
  const int n = 4 * genus + 1;
  const int j = pairing(n, side);
  const int p = (j + 1) % n, q = j;
  std::vector<int> fa{p}, f0{q};
  while (fa.back() != 0)
    fa.push_back((pairing(n, fa.back()) + 1) % n);
  while (f0.back() != 1)
    f0.push_back(pairing(n, (f0.back() - 1 + n) % n));
  int size = 2;
  for (std::size_t t = fa.size() - 1; t >= 1; --t)
    size += added(n, (fa[t] + 1) % n, (fa[t] - 1 + n) % n);
  size += added(n, (p + 1) % n, (q - 1 + n) % n);
  for (std::size_t t = 1; t < f0.size(); ++t)
    size += added(n, (f0[t] + 1) % n, (f0[t] - 1 + n) % n);
  return size + 1;
}

double interior_angle_sum(const HypPolygon &p) {
  double total = 0;
  for (int t = 0; t + 2 < p.size(); ++t) {
    const auto a = solve_triangle(p.fan_triangle(t));
    total += a.A + a.B + a.C;
  }
  return total;
}

void require_isomorphic(const TilingPair &p) {
  CHECK(isomorphism_violations(p).empty());
  CHECK(complex_certificate(p.first) == complex_certificate(p.second));
  CHECK(refinement_invariant(p.first) == refinement_invariant(p.second));
  CHECK(tiling_violations(p.first).empty());
  CHECK(tiling_violations(p.second).empty());
}

} // namespace

TEST_CASE("side pairing is an involution without fixed points") {
  for (int g = 2; g <= 6; ++g) {
    const int n = 4 * g + 1;
    for (int k = 1; k < n; ++k) {
      CHECK(paired_side(n, k) == pairing(n, k));
      CHECK(paired_side(n, paired_side(n, k)) == k);
      CHECK(paired_side(n, k) != k);
    }
  }
  CHECK_THROWS_AS(paired_side(9, 0), InvariantError);
}

TEST_CASE("hyperbolic law of cosines") {
  const auto eq = solve_triangle({1, 1, 1});
  const double expected = std::acos(std::cosh(1.0) / (1 + std::cosh(1.0)));
  CHECK(eq.A == doctest::Approx(expected).epsilon(1e-12));
  CHECK(eq.B == doctest::Approx(expected).epsilon(1e-12));
  CHECK(eq.C == doctest::Approx(expected).epsilon(1e-12));
  CHECK(eq.A < kPi / 3);

  const auto thin = solve_triangle({1, 1, 2 - 1e-6});
  CHECK(thin.C > kPi - 1e-2);

  const auto iso = solve_triangle({2.5, 2.5, 1.25});
  CHECK(iso.A == doctest::Approx(iso.B).epsilon(1e-12));

  for (double a = 0.25; a < 6; a += 0.5)
    for (double b = 0.25; b < 6; b += 0.5)
      for (double c = std::abs(a - b) + 0.1; c < a + b - 0.05; c += 0.4) {
        const auto x = solve_triangle({a, b, c});
        CHECK(x.A + x.B + x.C < kPi);
      }

  CHECK_THROWS_AS(solve_triangle({1, 1, 2}), ValidationError);
  CHECK_THROWS_AS(solve_triangle({1, 1, 3}), ValidationError);
  CHECK_THROWS_AS(solve_triangle({0, 1, 1}), ValidationError);
}

TEST_CASE("comparison triangles") {
  const auto e = comparison_triangle({1, 1, 1});
  auto dist = [](const Vec2 &p, const Vec2 &q) { return std::hypot(p[0] - q[0], p[1] - q[1]); };
  CHECK(dist(e.A, e.B) == doctest::Approx(1).epsilon(1e-12));
  CHECK(dist(e.B, e.C) == doctest::Approx(1).epsilon(1e-12));
  CHECK(dist(e.C, e.A) == doctest::Approx(1).epsilon(1e-12));

  for (const HypTriangle t : {HypTriangle{1, 1, 1}, HypTriangle{0.3, 2, 1.9}, HypTriangle{4, 5, 6},
                              HypTriangle{8, 8, 0.5}}) {
    const auto h = solve_triangle(t);
    const auto c = euclidean_angles(comparison_triangle(t));
    CHECK(h.A <= c.A + 1e-12);
    CHECK(h.B <= c.B + 1e-12);
    CHECK(h.C <= c.C + 1e-12);
    const auto r = check_comparison(t, 2000, 7);
    CHECK(r.samples == 2000);
    CHECK(r.holds);
  }
}

TEST_CASE("cyclic polygons close up") {
  const std::vector<double> sides{1, 2, 1.5, 2.5, 1.2, 3};
  const auto p = cyclic_polygon(sides);
  const PolygonEmbedding emb(p);
  for (int k = 0; k < p.size(); ++k)
    CHECK(hyperboloid_distance(emb.vertex(k), emb.vertex((k + 1) % p.size())) ==
          doctest::Approx(sides[static_cast<std::size_t>(k)]).epsilon(1e-9));
  const double R = circumradius(sides);
  CHECK(R > 0);
  CHECK_THROWS_AS(cyclic_polygon({1, 1, 9}), ValidationError);
  CHECK_THROWS_AS(polygon_from_fan({1, 1}, {0, 1}), ValidationError);
}

TEST_CASE("edge dilation map") {
  const auto p = cyclic_polygon({1, 2, 1.5, 2.5, 1.2});
  const auto id = edge_dilation_map(p, p, 4000, 3);
  CHECK(id.estimate.K <= 1 + kMapTolerance);
  CHECK(id.estimate.samples == 4000);
  CHECK(id.estimate.seed == 3);

  const auto q = cyclic_polygon({2, 1, 3, 1.5, 2.2});
  const auto m = edge_dilation_map(p, q, 4000, 3);
  double witness = 1;
  for (int k = 0; k < p.size(); ++k) {
    const double ratio = q.sides[static_cast<std::size_t>(k)] / p.sides[static_cast<std::size_t>(k)];
    witness = std::max({witness, ratio, 1 / ratio});
    for (double u : {0.0, 0.1, 0.37, 0.5, 0.93, 1.0}) {
      const auto x = m.map.from().on_side(k, u);
      const double src = hyperboloid_distance(m.map.source(x), m.map.from().vertex(k));
      const double dst = hyperboloid_distance(m.map.image(x), m.map.to().vertex(k));
      CHECK(src == doctest::Approx(u * p.sides[static_cast<std::size_t>(k)]).epsilon(1e-9));
      CHECK(dst == doctest::Approx(ratio * src).epsilon(1e-9));
    }
  }
  CHECK(m.estimate.K >= witness);

  const auto small = triangle_polygon({0.3, 0.4, 0.5});
  const auto twice = triangle_polygon({0.6, 0.8, 1.0});
  const auto k1 = edge_dilation_map(small, twice, 5000, 11).estimate.K;
  const auto k2 = edge_dilation_map(small, twice, 5000, 11).estimate.K;
  CHECK(std::isfinite(k1));
  CHECK(k1 >= 2.0);
  CHECK(k1 == k2);

  CHECK_THROWS_AS(edge_dilation_map(small, p), ValidationError);
}

TEST_CASE("sampling seed comes from the environment") {
  ::unsetenv("AMALGAM_SEED");
  CHECK(default_seed() == kDefaultSeed);
  ::setenv("AMALGAM_SEED", "42", 1);
  CHECK(default_seed() == 42);
  ::setenv("AMALGAM_SEED", "x1", 1);
  CHECK_THROWS_AS(default_seed(), ValidationError);
  ::unsetenv("AMALGAM_SEED");
}

TEST_CASE("bilipschitz bound is the max over cells") {
  CHECK(assemble_bilipschitz_bound({1, 1, 1}) == 1);
  CHECK(assemble_bilipschitz_bound({1.3, 2.0, 1.1}) == 2.0);
  CHECK(assemble_bilipschitz_bound({1.1, 1.3, 2.0}) == 2.0);
  CHECK(assemble_bilipschitz_bound({1.7}) == 1.7);
  CHECK(assemble_bilipschitz_bound({1.7, 1.7}) == 1.7);
  CHECK_THROWS_AS(assemble_bilipschitz_bound({}), ValidationError);
}

TEST_CASE("fundamental polygons") {
  for (int g = 2; g <= 5; ++g) {
    const auto geo = piece_geometry(g);
    CHECK(geo.sides == 4 * g + 1);
    const auto poly = geo.polygon();
    // one vertex on a geodesic boundary: the corners fill a half-plane
    CHECK(interior_angle_sum(poly) == doctest::Approx(kPi).epsilon(1e-9));
    CHECK(poly.sides[0] == doctest::Approx(kBranchingLength));
    CHECK(geo.chord(0, 1) == doctest::Approx(kBranchingLength));
    CHECK(geo.chord(3, 4) == doctest::Approx(geo.side_length).epsilon(1e-9));
    CHECK(geo.orbit(0, 1) == "g" + std::to_string(g) + ":B");
    CHECK(geo.orbit(2, 5) == geo.orbit(4, 7));
  }
  CHECK_THROWS_AS(piece_geometry(1), ValidationError);
}

TEST_CASE("reduction to four one-boundary pieces") {
  const auto a = reduce_to_four_pieces(S11);
  CHECK(a.scale == 3);
  CHECK(a.genera == std::array<int, 4>{2, 2, 2, 2});
  const auto b = reduce_to_four_pieces(S12);
  CHECK(b.scale == 3);
  CHECK(b.genera == std::array<int, 4>{5, 5, 2, 2});
  for (const auto &r : {a, b})
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(1 - 2 * r.genera[i] == r.scale * r.normalized[i]);
  CHECK(reduce_to_four_pieces(NS3).genera == a.genera);
  const auto bad = Amalgam::make(3, CurveSpec::nonseparating(), 5, CurveSpec::nonseparating());
  CHECK_THROWS_AS(reduce_to_four_pieces(bad), ValidationError);
}

TEST_CASE("depth zero is the pair of fundamental domains") {
  const auto p = grow_tilings(S11, S11, 0);
  CHECK(p.first.cells.size() == 4);
  CHECK(p.second.cells.size() == 4);
  for (const auto &c : p.first.cells) {
    CHECK(c.sides() == 9);
    CHECK(c.extension == 0);
    CHECK(c.label == "first");
  }
  REQUIRE(p.first.branching.size() == 1);
  CHECK(p.first.branching[0].cells.size() == 4);
  CHECK(p.first.bound == 2 * 9 * (2 + 4 * 8));
  CHECK(isometry_type_census(p.first) <= 4);
  const auto &e1 = p.first.branching[0], &e2 = p.second.branching[0];
  CHECK(p.iso.vertices[static_cast<std::size_t>(e1.u)] == e2.u);
  CHECK(p.iso.vertices[static_cast<std::size_t>(e1.w)] == e2.w);
  require_isomorphic(p);
}

TEST_CASE("first cells are balanced by extension") {
  const auto p = grow_tilings(S11, S12, 0);
  std::vector<int> sides, ext;
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(p.first.cells[i].sides() == p.second.cells[i].sides());
    sides.push_back(p.first.cells[i].sides());
    ext.push_back(p.first.cells[i].extension + p.second.cells[i].extension);
  }
  CHECK(sides == std::vector<int>{9, 9, 21, 21});
  CHECK(ext == std::vector<int>{0, 0, 12, 12});
  require_isomorphic(p);
}

TEST_CASE("collar cells match the fan count") {
  // same amalgam on both sides: nothing to balance
  for (const auto &a : {S11, S12}) {
    const auto p = grow_tilings(a, a, 1);
    for (const auto &c : p.first.cells) {
      CHECK(c.extension == 0);
      if (c.label == "collar+")
        CHECK(c.sides() == collar_size(c.genus, 1));
      if (c.label == "collar-")
        CHECK(c.sides() == collar_size(c.genus, 4 * c.genus));
    }
  }
  CHECK(collar_size(2, 1) == 64);
}

TEST_CASE("grown complexes stay isomorphic") {
  for (const auto &[a, b] : {std::pair{S11, NS3}, std::pair{S11, S12}, std::pair{MIXED, S11}}) {
    std::set<std::string> previous;
    for (int d = 0; d <= 3; ++d) {
      const auto p = grow_tilings(a, b, d);
      require_isomorphic(p);
      for (const auto &c : p.first.cells)
        CHECK(c.depth <= d);
      for (const auto &e : p.first.branching)
        CHECK((e.frontier() ? e.cells.size() == 1 : e.cells.size() == 4));
      const auto types = census_types(p.first);
      for (const auto &x : previous)
        CHECK(types.count(x) == 1);
      if (d >= 2)
        CHECK(types == previous);
      previous = types;
    }
  }
}

TEST_CASE("isomorphism checks reject tampering") {
  auto p = grow_tilings(S11, S12, 1);
  std::swap(p.iso.vertices[0], p.iso.vertices[5]);
  CHECK_FALSE(isomorphism_violations(p).empty());

  const auto same = grow_tilings(S11, S11, 1);
  const auto other = grow_tilings(S11, S12, 1);
  CHECK(complex_certificate(same.first) != complex_certificate(other.first));
  CHECK(refinement_invariant(same.first) != refinement_invariant(other.first));
}

TEST_CASE("cell budget") {
  CHECK_THROWS_AS(grow_tilings(S11, S12, 4, 100), ValidationError);
  CHECK_NOTHROW(grow_tilings(S11, S12, 2, 36));
  CHECK_THROWS_AS(grow_tilings(S11, S12, -1), ValidationError);
}

TEST_CASE("per-cell constants") {
  const auto p = grow_tilings(S11, S12, 2);
  const auto ks = cell_constants(p, 500, 5);
  std::vector<double> values;
  int cells = 0;
  for (const auto &k : ks) {
    CHECK(std::isfinite(k.estimate.K));
    CHECK(k.estimate.K >= 1);
    if (k.first_type.ends_with(":9") || k.first_type.ends_with(":64"))
      CHECK(k.estimate.K <= 1 + kMapTolerance);
    values.push_back(k.estimate.K);
    cells += k.cells;
  }
  CHECK(cells == static_cast<int>(p.first.cells.size()));
  CHECK(assemble_bilipschitz_bound(values) >= 1);
}
