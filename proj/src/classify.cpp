#include "amalgam/classify.hpp"

#include <algorithm>
#include <numeric>

namespace amalgam {

namespace {

using Kind = CurveSpec::Kind;

SideDescription side_of(const Surface &host, const CurveSpec &c) {
  SideDescription side{c.kind, {}};
  for (const auto &piece : cut_along(host, c))
    side.chis.push_back(euler_characteristic(piece));
  return side;
}

void add_side(const SideDescription &side, std::vector<std::int64_t> &out) {
  if (side.kind == Kind::NonSeparating) {
    out.push_back(side.chis.at(0) / 2);
    out.push_back(side.chis.at(0) / 2);
  } else {
    out.push_back(side.chis.at(0));
    out.push_back(side.chis.at(1));
  }
}

bool piece_realizable(const SideDescription &side) {
  if (side.kind == Kind::NonSeparating)
    return side.chis.size() == 1 && side.chis[0] <= -2 && side.chis[0] % 2 == 0;
  return side.chis.size() == 2 &&
         std::all_of(side.chis.begin(), side.chis.end(),
                     [](std::int64_t x) { return x < 0 && x % 2 != 0; });
}

// Shape of a description: half-values of two-boundary pieces, and one-boundary values.
struct Shape {
  std::vector<std::int64_t> paired;
  std::vector<std::int64_t> single;
};

Shape shape_of(const GluingDescription &d) {
  Shape s;
  for (const auto *side : {&d.left, &d.right}) {
    if (side->kind == Kind::NonSeparating)
      s.paired.push_back(side->chis.at(0) / 2);
    else
      s.single.insert(s.single.end(), side->chis.begin(), side->chis.end());
  }
  std::sort(s.paired.begin(), s.paired.end());
  std::sort(s.single.begin(), s.single.end());
  return s;
}

GluingDescription make_description(std::string name, SideDescription left,
                                   SideDescription right) {
  GluingDescription d{std::move(name), std::move(left), std::move(right), true};
  d.realizable = piece_realizable(d.left) && piece_realizable(d.right);
  return d;
}

SideDescription sep(std::int64_t x, std::int64_t y) {
  return {Kind::Separating, {x, y}};
}

SideDescription nonsep(std::int64_t half) { return {Kind::NonSeparating, {2 * half}}; }

Rational chi_ratio(const Surface &a, const Surface &b) {
  return Rational(euler_characteristic(a), euler_characteristic(b));
}

} // namespace

Quadruple GluingDescription::quadruple() const {
  std::vector<std::int64_t> v;
  add_side(left, v);
  add_side(right, v);
  Quadruple q{v.at(0), v.at(1), v.at(2), v.at(3)};
  std::sort(q.begin(), q.end());
  return q;
}

std::optional<Amalgam> GluingDescription::to_amalgam() const {
  if (!realizable)
    return std::nullopt;
  auto surface_side = [](const SideDescription &s) {
    if (s.kind == Kind::NonSeparating) {
      int g = static_cast<int>((2 - s.chis[0]) / 2);
      return std::pair{Surface{g, 0}, CurveSpec::nonseparating()};
    }
    int r = static_cast<int>((1 - s.chis[0]) / 2);
    int t = static_cast<int>((1 - s.chis[1]) / 2);
    if (r > t)
      std::swap(r, t);
    return std::pair{Surface{r + t, 0}, CurveSpec::separating(r, t)};
  };
  auto [ls, lc] = surface_side(left);
  auto [rs, rc] = surface_side(right);
  return Amalgam{ls, rs, lc, rc};
}

GluingDescription describe(const Amalgam &a) {
  return make_description("input", side_of(a.left, a.left_curve),
                          side_of(a.right, a.right_curve));
}

Quadruple quadruple(const Amalgam &a) {
  require_valid(a);
  return describe(a).quadruple();
}

Quadruple normalize(const Quadruple &q) {
  std::int64_t g = 0;
  for (auto x : q)
    g = std::gcd(g, x < 0 ? -x : x);
  if (g == 0)
    return q;
  Quadruple out = q;
  for (auto &x : out)
    x /= g;
  return out;
}

bool commensurable(const Amalgam &a1, const Amalgam &a2) {
  return normalize(quadruple(a1)) == normalize(quadruple(a2));
}

std::vector<Amalgam> decompositions(const Amalgam &a) {
  require_valid(a);
  if (!a.left_curve.is_separating() || !a.right_curve.is_separating())
    return {a};
  const int g[4] = {a.left_curve.r, a.left_curve.s, a.right_curve.r, a.right_curve.s};
  auto glue = [&](int i, int j, int k, int l) {
    auto side = [](int x, int y) {
      return std::pair{Surface{x + y, 0}, CurveSpec::separating(std::min(x, y), std::max(x, y))};
    };
    auto [s1, c1] = side(g[i], g[j]);
    auto [s2, c2] = side(g[k], g[l]);
    return Amalgam{s1, s2, c1, c2};
  };
  return {glue(0, 1, 2, 3), glue(0, 2, 1, 3), glue(0, 3, 1, 2)};
}

bool commensurable_abc(const Amalgam &a1, const Amalgam &a2) {
  for (const auto &x : decompositions(a1)) {
    for (const auto &y : decompositions(a2)) {
      for (int swap_x = 0; swap_x < 2; ++swap_x) {
        for (int swap_y = 0; swap_y < 2; ++swap_y) {
          const Surface &s1 = swap_x ? x.right : x.left;
          const Surface &s1p = swap_x ? x.left : x.right;
          const CurveSpec &c1 = swap_x ? x.right_curve : x.left_curve;
          const CurveSpec &c1p = swap_x ? x.left_curve : x.right_curve;
          const Surface &s2 = swap_y ? y.right : y.left;
          const Surface &s2p = swap_y ? y.left : y.right;
          const CurveSpec &c2 = swap_y ? y.right_curve : y.left_curve;
          const CurveSpec &c2p = swap_y ? y.left_curve : y.right_curve;
          if (chi_ratio(s1, s1p) != chi_ratio(s2, s2p))
            continue;
          if (topological_type(s1, c1) != topological_type(s2, c2))
            continue;
          if (topological_type(s1p, c1p) != topological_type(s2p, c2p))
            continue;
          return true;
        }
      }
    }
  }
  return false;
}

Subclass subclass_of(const Quadruple &q) {
  const auto n = normalize(q);
  if (n[0] == n[1] && n[2] == n[3])
    return Subclass::C2;
  if (n[0] != n[1] && n[1] != n[2] && n[2] != n[3])
    return Subclass::C0;
  return Subclass::C1;
}

Subclass subclass(const Amalgam &a) { return subclass_of(quadruple(a)); }

std::string to_string(Subclass s) {
  switch (s) {
  case Subclass::C0:
    return "C0";
  case Subclass::C1:
    return "C1";
  case Subclass::C2:
    return "C2";
  }
  return "?";
}

std::vector<GluingDescription> maximal_elements(const Amalgam &a) {
  const auto p = normalize(quadruple(a));
  switch (subclass_of(p)) {
  case Subclass::C0:
    return {make_description("G0", sep(p[0], p[1]), sep(p[2], p[3]))};
  case Subclass::C1: {
    // locate an equal pair (i, j) and the two remaining entries
    int i = p[0] == p[1] ? 0 : (p[1] == p[2] ? 1 : 2);
    std::vector<std::int64_t> rest;
    for (int k = 0; k < 4; ++k)
      if (k != i && k != i + 1)
        rest.push_back(p[k]);
    return {make_description("G0", sep(p[i], p[i + 1]), sep(rest[0], rest[1])),
            make_description("H0", nonsep(p[i]), sep(rest[0], rest[1]))};
  }
  case Subclass::C2:
    return {make_description("G0", sep(p[0], p[1]), sep(p[2], p[3])),
            make_description("H0", nonsep(p[0]), sep(p[2], p[3])),
            make_description("K0", nonsep(p[2]), sep(p[0], p[1])),
            make_description("L0", nonsep(p[0]), nonsep(p[2]))};
  }
  return {};
}

std::optional<std::int64_t> cover_index(const GluingDescription &a,
                                        const GluingDescription &m) {
  const auto sa = shape_of(a);
  const auto sm = shape_of(m);
  if (sa.paired.size() != sm.paired.size() || sa.single.size() != sm.single.size())
    return std::nullopt;
  const auto qa = a.quadruple();
  const auto qm = m.quadruple();
  if (qa[0] % qm[0] != 0)
    return std::nullopt;
  const std::int64_t d = qa[0] / qm[0];
  if (d <= 0)
    return std::nullopt;
  for (std::size_t k = 0; k < sa.paired.size(); ++k)
    if (sa.paired[k] != d * sm.paired[k])
      return std::nullopt;
  for (std::size_t k = 0; k < sa.single.size(); ++k)
    if (sa.single[k] != d * sm.single[k])
      return std::nullopt;
  return d;
}

std::optional<std::int64_t> cover_index(const Amalgam &a, const GluingDescription &m) {
  require_valid(a);
  return cover_index(describe(a), m);
}

std::string maximal_outside_status(const Amalgam &a) {
  switch (subclass(a)) {
  case Subclass::C0:
    return "exists in class";
  case Subclass::C1:
    return "open";
  case Subclass::C2:
    return "right-angled Coxeter group";
  }
  return "?";
}

std::optional<CoxeterReport> coxeter_params(const Amalgam &a) {
  const auto p = normalize(quadruple(a));
  if (subclass_of(p) != Subclass::C2)
    return std::nullopt;
  CoxeterReport report;
  report.maximal = CoxeterParams::ordered(static_cast<int>(4 - p[0]),
                                          static_cast<int>(4 - p[2]));
  if (topological_type(a.left, a.left_curve) == Rational(1) &&
      topological_type(a.right, a.right_curve) == Rational(1))
    report.direct = CoxeterParams::ordered(a.left.genus + 3, a.right.genus + 3);
  return report;
}

bool cp_commensurable(const CoxeterParams &p1, const CoxeterParams &p2) {
  return Rational(p1.m - 4, p1.n - 4) == Rational(p2.m - 4, p2.n - 4);
}

Rational orbifold_chi_closed(int n) {
  // one face, n mirror edges, n right-angled corners
  return Rational(1) - Rational(n, 2) + Rational(n, 4);
}

Rational orbifold_chi_one_boundary(int n) {
  // one face, n mirror edges, one free edge, n-1 corners, two mirror/free vertices
  return Rational(1) - Rational(n, 2) - 1 + Rational(n - 1, 4) + 1;
}

std::optional<ThetaReport> theta_params(const Amalgam &a) {
  require_valid(a);
  if (!a.left_curve.is_separating() || !a.right_curve.is_separating())
    return std::nullopt;
  ThetaReport t;
  t.piece_genera = {a.left_curve.r, a.left_curve.s, a.right_curve.r, a.right_curve.s};
  std::sort(t.piece_genera.begin(), t.piece_genera.end());
  for (int g : t.piece_genera) {
    int n = 2 * g + 2;
    t.n.push_back(n);
    t.orbifold_chi.push_back(orbifold_chi_one_boundary(n));
    t.expected_chi.push_back(Rational(1 - 2 * g, 4));
    if (t.orbifold_chi.back() != t.expected_chi.back())
      t.oracle_agrees = false;
  }
  return t;
}

} // namespace amalgam
