#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "amalgam/classify.hpp"
#include "amalgam/covers.hpp"
#include "amalgam/cubulate.hpp"
#include "amalgam/hyperbolic.hpp"
#include "amalgam/json_io.hpp"
#include "amalgam/tiling.hpp"

using namespace amalgam;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects failures; the first few are kept for the report line.
class Tally {
public:
  void expect(bool cond, const std::string &what) {
    ++checks_;
    if (cond)
      return;
    if (failures_++ < 3)
      first_ += (first_.empty() ? "" : "; ") + what;
  }
  Outcome outcome(const std::string &summary) const {
    std::ostringstream os;
    os << summary << ", " << checks_ << " checks";
    if (failures_)
      os << ", " << failures_ << " failed: " << first_;
    return {failures_ == 0, os.str()};
  }

private:
  long checks_ = 0;
  long failures_ = 0;
  std::string first_;
};

bool only_separating(const Amalgam &a) {
  return a.left_curve.is_separating() && a.right_curve.is_separating();
}

bool only_nonseparating(const Amalgam &a) {
  return !a.left_curve.is_separating() && !a.right_curve.is_separating();
}

// one-boundary piece Euler characteristics 1 - 2r
Quadruple raw_quadruple_sep(const Amalgam &a) {
  Quadruple q{1 - 2 * a.left_curve.r, 1 - 2 * a.left_curve.s, 1 - 2 * a.right_curve.r,
              1 - 2 * a.right_curve.s};
  std::sort(q.begin(), q.end());
  return q;
}

bool proportional(const Quadruple &a, const Quadruple &b) {
  for (int i = 0; i < 4; ++i)
    if (a[i] * b[0] != b[i] * a[0])
      return false;
  return true;
}

Rational chi_ratio(const Amalgam &a) {
  const int x = a.left.genus - 1, y = a.right.genus - 1;
  return Rational(std::max(x, y), std::min(x, y));
}

Outcome criterion1() {
  Tally t;
  const auto all = enumerate_amalgams(8);
  long agree = 0;
  for (const auto &a : all)
    for (const auto &b : all) {
      const bool same = commensurable(a, b) == commensurable_abc(a, b);
      agree += same;
      t.expect(same, to_string(a) + " vs " + to_string(b));
    }
  return t.outcome(std::to_string(agree) + " ordered pairs agree");
}

Outcome criterion2() {
  Tally t;
  const auto all = enumerate_amalgams(8);
  long sep = 0, nonsep = 0;
  for (const auto &a : all)
    for (const auto &b : all) {
      if (only_separating(a) && only_separating(b)) {
        ++sep;
        t.expect(commensurable(a, b) == proportional(raw_quadruple_sep(a), raw_quadruple_sep(b)),
                 "sep " + to_string(a) + " vs " + to_string(b));
      } else if (only_nonseparating(a) && only_nonseparating(b)) {
        ++nonsep;
        t.expect(commensurable(a, b) == (chi_ratio(a) == chi_ratio(b)),
                 "nonsep " + to_string(a) + " vs " + to_string(b));
      }
    }
  return t.outcome(std::to_string(sep) + " separating and " + std::to_string(nonsep) +
                   " non-separating pairs");
}

// Right action of a word, computed from the permutations directly.
std::vector<int> word_permutation(const GraphCover &c, const Word &w) {
  std::map<std::string, std::vector<int>> inverse;
  for (const auto &[g, perm] : c.action) {
    auto &inv = inverse[g];
    inv.resize(perm.size());
    for (std::size_t v = 0; v < perm.size(); ++v)
      inv[static_cast<std::size_t>(perm[v])] = static_cast<int>(v);
  }
  std::vector<int> out(static_cast<std::size_t>(c.degree));
  for (int v = 0; v < c.degree; ++v) {
    int x = v;
    for (const auto &l : w)
      for (int k = 0; k < std::abs(l.exp); ++k)
        x = (l.exp > 0 ? c.action.at(l.gen) : inverse.at(l.gen))[static_cast<std::size_t>(x)];
    out[static_cast<std::size_t>(v)] = x;
  }
  return out;
}

Outcome criterion3() {
  Tally t;
  int covers = 0;
  for (int g = 1; g <= 5; ++g)
    for (int n = 1; n <= 99; n += 2) {
      ++covers;
      const auto c = build_odd_cover(g, n);
      const auto r = verify_cover(c);
      const auto w = boundary_word(g);
      const auto tag = "(g,n)=(" + std::to_string(g) + "," + std::to_string(n) + ")";
      t.expect(r.valid && r.transitive && r.degree == n, tag + " verify_cover");
      t.expect(boundary_components(c, w) == std::vector<int>{n}, tag + " boundary cycles");
      t.expect(first_return(c, w, 0) == n, tag + " first return");
      t.expect(r.chi == n * (1 - 2 * g), tag + " euler characteristic");
      // orbit of 0 under the word's permutation has length n
      const auto perm = word_permutation(c, w);
      int len = 1;
      for (int x = perm[0]; x != 0 && len <= n; x = perm[static_cast<std::size_t>(x)])
        ++len;
      t.expect(len == n, tag + " oracle cycle");
    }
  const auto anchor = build_odd_cover(2, 7);
  const int chi = verify_cover(anchor).chi;
  const int b = static_cast<int>(boundary_components(anchor, boundary_word(2)).size());
  t.expect(chi == -21 && b == 1 && (2 - b - chi) / 2 == 11, "(2,7) is not S_{11,1}");
  return t.outcome(std::to_string(covers) + " covers, (2,7) gives S_{11,1}");
}

Outcome criterion4() {
  Tally t;
  std::mt19937_64 rng(kDefaultSeed);
  std::uniform_int_distribution<int> genus(2, 12);
  auto random_amalgam = [&] {
    const int g = genus(rng), h = genus(rng);
    const auto gs = curve_specs(g), hs = curve_specs(h);
    std::uniform_int_distribution<std::size_t> pg(0, gs.size() - 1), ph(0, hs.size() - 1);
    return Amalgam::make(g, gs[pg(rng)], h, hs[ph(rng)]);
  };
  for (int i = 0; i < 500; ++i) {
    const auto a = random_amalgam(), b = random_amalgam();
    const auto tag = to_string(a) + " / " + to_string(b);
    const std::int64_t c1 = 4 - 2 * a.left.genus - 2 * a.right.genus;
    const std::int64_t c2 = 4 - 2 * b.left.genus - 2 * b.right.genus;
    const auto e = existcovers(a, b);
    t.expect(e.L == -2 * std::lcm(-c1, -c2), tag + " L");
    t.expect(e.d1 * c1 == e.L && e.d2 * c2 == e.L, tag + " degrees");
    t.expect(e.d1 % 2 == 0 && e.d2 % 2 == 0, tag + " odd degree");
    for (const auto *y : {&e.y1, &e.y2}) {
      std::int64_t sum = 0;
      for (const auto &p : *y)
        sum += p.chi;
      t.expect(sum == e.L, tag + " piece sum");
    }
    t.expect(check_piece_covers(e.y1, e.d1, e.L).empty(), tag + " y1 pieces");
    t.expect(check_piece_covers(e.y2, e.d2, e.L).empty(), tag + " y2 pieces");
  }
  return t.outcome("500 seeded pairs");
}

// Number of distinct values decides the subclass.
Subclass subclass_oracle(const Quadruple &q) {
  std::set<std::int64_t> distinct(q.begin(), q.end());
  if (q[0] == q[1] && q[2] == q[3])
    return Subclass::C2;
  return distinct.size() == 4 ? Subclass::C0 : Subclass::C1;
}

Outcome criterion5() {
  Tally t;
  std::map<Subclass, int> classes;
  int indexed = 0;
  for (const auto &a : enumerate_amalgams(8)) {
    const auto tag = to_string(a);
    const auto q = normalize(quadruple(a));
    const auto sub = subclass_oracle(q);
    t.expect(subclass(a) == sub, tag + " subclass");
    ++classes[sub];
    const auto els = maximal_elements(a);
    const std::size_t want = sub == Subclass::C0 ? 1 : sub == Subclass::C1 ? 2 : 4;
    t.expect(els.size() == want, tag + " element count");
    for (const auto &m : els) {
      t.expect(normalize(m.quadruple()) == q, tag + " " + m.name + " class");
      if (const auto am = m.to_amalgam())
        t.expect(commensurable(a, *am), tag + " " + m.name + " commensurable");
      if (const auto d = cover_index(a, m)) {
        ++indexed;
        Quadruple scaled = m.quadruple();
        for (auto &x : scaled)
          x *= *d;
        t.expect(*d >= 1 && scaled == quadruple(a), tag + " " + m.name + " index");
      }
    }
  }
  std::ostringstream os;
  os << classes[Subclass::C0] << "/" << classes[Subclass::C1] << "/" << classes[Subclass::C2]
     << " amalgams in C0/C1/C2, " << indexed << " cover indices";
  return t.outcome(os.str());
}

bool type_one(const CurveSpec &c) {
  return !c.is_separating() || c.r == c.s;
}

Outcome criterion6() {
  Tally t;
  std::vector<std::pair<Amalgam, CoxeterParams>> c2;
  int direct = 0;
  for (const auto &a : enumerate_amalgams(8)) {
    const auto r = coxeter_params(a);
    t.expect(r.has_value() == (subclass(a) == Subclass::C2), to_string(a) + " params presence");
    if (!r)
      continue;
    c2.emplace_back(a, r->maximal);
    const bool one = type_one(a.left_curve) && type_one(a.right_curve);
    t.expect(r->direct.has_value() == one, to_string(a) + " direct presence");
    if (one && r->direct) {
      ++direct;
      const auto want = CoxeterParams::ordered(a.left.genus + 3, a.right.genus + 3);
      t.expect(*r->direct == want, to_string(a) + " direct params");
    }
  }
  for (const auto &[a, pa] : c2)
    for (const auto &[b, pb] : c2)
      t.expect(cp_commensurable(pa, pb) == commensurable(a, b),
               to_string(a) + " vs " + to_string(b));
  return t.outcome(std::to_string(c2.size()) + " C2 amalgams, " + std::to_string(direct) +
                   " direct");
}

Outcome criterion7() {
  Tally t;
  for (const auto &name : fixture_names()) {
    const auto f = load_fixture(name);
    const auto r = validate_curve_system(f.cs);
    t.expect(r.valid && r.faces == 12, name + " validation");
    const int gamma = f.cs.curve_id(f.amalgamating);
    int points = 0;
    for (const auto &x : crossings(f.cs))
      points += (x.curves[0] == gamma) + (x.curves[1] == gamma);
    t.expect(points == 4, name + " crossings");
    t.expect(subdivided_curve_path(f.cs, f.amalgamating, f.perimeter).edges.size() == 8,
             name + " path length");
    const auto sq = dual_square_complex(f.cs);
    t.expect(check_special(f.cs, sq).special(), name + " special");
    t.expect(check_special(barycentric_subdivide(sq)).special(), name + " subdivision special");
  }
  auto all_links = [](const SquareComplex &sq) {
    const auto links = check_link_condition(sq);
    return std::all_of(links.begin(), links.end(), [](bool b) { return b; });
  };
  for (int g : {2, 3, 4}) {
    const auto ns = load_fixture("genus" + std::to_string(g) + "_nonseparating");
    const auto sp = load_fixture("genus" + std::to_string(g) + "_separating");
    const GlueSide n{ns.cs, ns.amalgamating, ns.perimeter}, s{sp.cs, sp.amalgamating, sp.perimeter};
    const auto tag = "genus " + std::to_string(g);
    const auto mixed = glue_complexes(n, s);
    t.expect(mixed.link_ok && all_links(mixed.complex), tag + " mixed link");
    t.expect(mixed.hyperplanes_after[0] < mixed.hyperplanes_before[0], tag + " nonsep count");
    t.expect(mixed.hyperplanes_after[1] == mixed.hyperplanes_before[1], tag + " sep count");
    const auto same = glue_complexes(s, s);
    t.expect(same.link_ok && all_links(same.complex), tag + " sep+sep link");
    t.expect(same.hyperplanes_after == same.hyperplanes_before, tag + " sep+sep counts");
  }
  return t.outcome(std::to_string(fixture_names().size()) + " fixtures, 6 gluings");
}

Outcome criterion8() {
  Tally t;
  for (int g : {2, 4}) {
    const auto ns = load_fixture("genus" + std::to_string(g) + "_nonseparating");
    const auto sp = load_fixture("genus" + std::to_string(g) + "_separating");
    const auto a = pullback_double_cover(ns.cs, cover_from_curves(ns.cs, ns.voltage_curves));
    const auto b = pullback_double_cover(sp.cs, cover_from_curves(sp.cs, sp.voltage_curves));
    t.expect(validate_curve_system(a).valid && validate_curve_system(b).valid,
             "genus " + std::to_string(g) + " pullbacks valid");
    t.expect(map_certificate(a) == map_certificate(b),
             "genus " + std::to_string(g) + " certificates differ");
  }
  return t.outcome("genus 2 and 4 pairs");
}

std::set<std::string> types_to_depth(const TilingComplex &t, int depth) {
  std::set<std::string> out;
  for (const auto &c : t.cells)
    if (c.depth <= depth)
      out.insert(c.type_key());
  return out;
}

Outcome criterion9(double &slowest) {
  Tally t;
  const auto sep = [](int r, int s) { return CurveSpec::separating(r, s); };
  const auto s11 = Amalgam::make(2, sep(1, 1), 2, sep(1, 1));
  const auto s12 = Amalgam::make(3, sep(1, 2), 3, sep(1, 2));
  const auto s1122 = Amalgam::make(2, sep(1, 1), 4, sep(2, 2));
  const auto mixed = Amalgam::make(2, sep(1, 1), 3, sep(1, 2));
  const auto ns3 = Amalgam::make(3, CurveSpec::nonseparating(), 3, CurveSpec::nonseparating());
  const std::vector<std::tuple<Amalgam, Amalgam, bool>> pairs{
      {s11, ns3, true}, {s12, s1122, true}, {s11, s12, false}, {mixed, s11, false}};
  std::size_t cells = 0;
  int widest = 0;
  for (const auto &[a, b, comm] : pairs) {
    const auto tag = to_string(a) + " / " + to_string(b);
    t.expect(commensurable(a, b) == comm, tag + " pair choice");
    const auto start = std::chrono::steady_clock::now();
    const auto p = grow_tilings(a, b, 4, kDefaultCellBudget);
    t.expect(isomorphism_violations(p).empty(), tag + " carried map");
    t.expect(complex_certificate(p.first) == complex_certificate(p.second), tag + " certificate");
    t.expect(refinement_invariant(p.first) == refinement_invariant(p.second), tag + " refinement");
    const auto sk1 = one_skeleton(p.first), sk2 = one_skeleton(p.second);
    t.expect(sk1.vertices == sk2.vertices && sk1.edges.size() == sk2.edges.size(), tag + " counts");
    for (const auto *c : {&p.first, &p.second}) {
      t.expect(tiling_violations(*c).empty(), tag + " tiling");
      for (const auto &cell : c->cells) {
        widest = std::max(widest, cell.sides());
        t.expect(cell.sides() >= 9 && cell.sides() <= c->bound, tag + " side count");
      }
      t.expect(types_to_depth(*c, 3) == types_to_depth(*c, 4), tag + " census moved at depth 4");
    }
    cells += p.first.cells.size();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    slowest = std::max(slowest, secs);
    t.expect(secs < 60, tag + " took " + std::to_string(secs) + "s");
  }
  std::ostringstream os;
  os << "4 pairs at depth 4, " << cells << " cells per side in total, widest cell " << widest
     << " sides, slowest pair " << std::fixed << std::setprecision(1) << slowest << "s";
  return t.outcome(os.str());
}

Outcome criterion10() {
  Tally t;
  const auto p = piece_geometry(2).polygon();
  const auto id = edge_dilation_map(p, p, kDefaultSamples, kDefaultSeed);
  t.expect(id.estimate.K <= 1 + 1e-9, "identity K " + std::to_string(id.estimate.K));

  std::vector<double> sides = p.sides;
  for (std::size_t k = 0; k < sides.size(); ++k)
    sides[k] *= 1.0 + 0.05 * static_cast<double>(k % 3);
  const auto q = cyclic_polygon(sides);
  const auto m = edge_dilation_map(p, q, kDefaultSamples, kDefaultSeed);
  double worst = 0;
  for (int k = 0; k < p.size(); ++k) {
    const double ratio = q.sides[static_cast<std::size_t>(k)] / p.sides[static_cast<std::size_t>(k)];
    for (int i = 1; i < 20; ++i) {
      const auto x = m.map.from().on_side(k, i / 20.0);
      const double d_src = hyperboloid_distance(m.map.from().vertex(k), m.map.source(x));
      const double d_img = hyperboloid_distance(m.map.to().vertex(k), m.map.image(x));
      const double d_rest =
          hyperboloid_distance(m.map.image(x), m.map.to().vertex((k + 1) % p.size()));
      worst = std::max({worst, std::abs(d_img - ratio * d_src),
                        std::abs(d_img + d_rest - q.sides[static_cast<std::size_t>(k)])});
    }
  }
  t.expect(worst <= 1e-9, "edge restriction off by " + std::to_string(worst));

  int triangles = 0;
  double excess = -1;
  const double grid[] = {0.5, 1.0, 2.0, 3.0, 4.5};
  for (double a : grid)
    for (double b : grid)
      for (double f : {0.3, 0.7}) {
        const double c = std::abs(a - b) + f * (a + b - std::abs(a - b));
        const auto r = check_comparison({a, b, c}, 10000, kDefaultSeed + static_cast<unsigned>(triangles));
        ++triangles;
        excess = std::max(excess, r.worst_excess);
        t.expect(r.holds && r.samples == 10000, "triangle " + std::to_string(triangles));
      }
  std::ostringstream os;
  os << "identity K-1 " << std::scientific << std::setprecision(1) << id.estimate.K - 1
     << ", edge error " << worst << ", " << triangles << " triangles x 1e4 pairs, worst excess "
     << excess;
  return t.outcome(os.str());
}

} // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double limit; // seconds, 0 for none
    std::function<Outcome()> run;
  };
  double slowest_tiling = 0;
  const std::vector<Criterion> criteria{
      {1, "classification equivalence", 60, criterion1},
      {2, "corollary specializations", 0, criterion2},
      {3, "odd cover", 10, criterion3},
      {4, "existcovers arithmetic", 5, criterion4},
      {5, "maximal elements", 0, criterion5},
      {6, "coxeter consistency", 0, criterion6},
      {7, "cubulation fixtures", 10, criterion7},
      {8, "double-cover pullback", 0, criterion8},
      // per-pair limit is checked inside
      {9, "tiling", 0, [&] { return criterion9(slowest_tiling); }},
      {10, "numerics", 30, criterion10}};

  int failed = 0;
  for (const auto &c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit > 0 && secs >= c.limit) {
      o.ok = false;
      o.detail += ", over the " + std::to_string(static_cast<int>(c.limit)) + "s limit";
    }
    failed += !o.ok;
    std::cout << "criterion " << std::setw(2) << c.id << ": " << (o.ok ? "PASS" : "FAIL") << "  "
              << c.name << " (" << o.detail << ", " << std::fixed << std::setprecision(2) << secs
              << "s)" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
