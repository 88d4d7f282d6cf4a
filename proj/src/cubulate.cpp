#include "amalgam/cubulate.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include <boost/iterator/counting_iterator.hpp>
#include <boost/pending/disjoint_sets.hpp>

#include "amalgam/core.hpp"

namespace amalgam {

int CurveSystem::arc_count(int curve) const {
  return static_cast<int>(std::count_if(arcs.begin(), arcs.end(),
                                        [&](const ArcRef &a) { return a.curve == curve; }));
}

int CurveSystem::arc_id(int curve, int index) const {
  for (std::size_t i = 0; i < arcs.size(); ++i)
    if (arcs[i].curve == curve && arcs[i].index == index)
      return static_cast<int>(i);
  throw ValidationError("arc", "no arc " + std::to_string(index) + " on curve " +
                                   curves.at(static_cast<std::size_t>(curve)));
}

int CurveSystem::curve_id(const std::string &name) const {
  auto it = std::find(curves.begin(), curves.end(), name);
  if (it == curves.end())
    throw ValidationError("curve", "unknown curve " + name);
  return static_cast<int>(it - curves.begin());
}

std::string CurveSystem::arc_name(int arc) const {
  const auto &a = arcs.at(static_cast<std::size_t>(arc));
  return curves.at(static_cast<std::size_t>(a.curve)) + "[" + std::to_string(a.index) + "]";
}

const Check &CurveSystemReport::check(const std::string &name) const {
  for (const auto &c : checks)
    if (c.name == name)
      return c;
  throw std::out_of_range("no check named " + name);
}

namespace {

int end_of(const Side &s) { return 2 * s.arc + (s.orient > 0 ? 1 : 0); }
int start_of(const Side &s) { return 2 * s.arc + (s.orient > 0 ? 0 : 1); }

// Rotation data shared by validation and the constructions.  Arc-end x is
// 2 * arc + (1 at the head).  sigma[x] is the end met next around x's
// vertex, corner[x] the region of the corner between x and sigma[x].
struct Topology {
  std::vector<int> sigma;
  std::vector<int> corner;
  std::vector<int> partner;
  std::vector<int> vertex;
  int vertex_count = 0;
  bool sigma_ok = true;
};

Topology topology(const CurveSystem &cs) {
  const std::size_t ends = 2 * cs.arcs.size();
  Topology t;
  t.sigma.assign(ends, -1);
  t.corner.assign(ends, -1);
  t.partner.assign(ends, -1);
  boost::disjoint_sets_with_storage<> ds(ends);
  for (std::size_t x = 0; x < ends; ++x)
    ds.make_set(static_cast<int>(x));
  for (std::size_t r = 0; r < cs.regions.size(); ++r) {
    const auto &sides = cs.regions[r];
    for (std::size_t k = 0; k < sides.size(); ++k) {
      const int y = end_of(sides[k]);
      const int x = start_of(sides[(k + 1) % sides.size()]);
      if (t.sigma[static_cast<std::size_t>(x)] >= 0)
        t.sigma_ok = false;
      t.sigma[static_cast<std::size_t>(x)] = y;
      t.corner[static_cast<std::size_t>(x)] = static_cast<int>(r);
      ds.union_set(x, y);
    }
  }
  for (std::size_t a = 0; a < cs.arcs.size(); ++a) {
    const auto &ref = cs.arcs[a];
    const int n = cs.arc_count(ref.curve);
    const int next = cs.arc_id(ref.curve, (ref.index + 1) % n);
    const int head = 2 * static_cast<int>(a) + 1, tail = 2 * next;
    t.partner[static_cast<std::size_t>(head)] = tail;
    t.partner[static_cast<std::size_t>(tail)] = head;
    ds.union_set(head, tail);
  }
  if (std::count(t.sigma.begin(), t.sigma.end(), -1) > 0)
    t.sigma_ok = false;
  std::map<int, int> ids;
  t.vertex.assign(ends, -1);
  for (std::size_t x = 0; x < ends; ++x) {
    auto [it, fresh] = ids.emplace(static_cast<int>(ds.find_set(static_cast<int>(x))), t.vertex_count);
    if (fresh)
      ++t.vertex_count;
    t.vertex[x] = it->second;
  }
  return t;
}

void require_valid_system(const CurveSystem &cs) {
  const auto r = validate_curve_system(cs);
  if (r.valid)
    return;
  std::vector<FieldError> errors;
  for (const auto &c : r.checks)
    for (const auto &d : c.details)
      errors.push_back({c.name, d});
  throw ValidationError(errors);
}

// Rebuilds curves by walking straight through crossings.  Arcs are opaque
// ids with a direction; family[a] names the curve an arc descends from.
CurveSystem assemble(int genus, const std::vector<std::string> &family_order,
                     const std::vector<std::string> &family,
                     const std::vector<std::vector<Side>> &raw) {
  const std::size_t n = family.size();
  std::vector<int> sigma(2 * n, -1);
  for (const auto &sides : raw)
    for (std::size_t k = 0; k < sides.size(); ++k)
      sigma[static_cast<std::size_t>(start_of(sides[(k + 1) % sides.size()]))] = end_of(sides[k]);
  auto next_arc = [&](int a) {
    const int s1 = sigma.at(static_cast<std::size_t>(2 * a + 1));
    const int opposite = sigma.at(static_cast<std::size_t>(s1));
    if (opposite < 0 || opposite % 2 != 0)
      throw InvariantError("lifted curve does not continue straight through a crossing");
    return opposite / 2;
  };
  std::map<std::string, std::vector<std::vector<int>>> by_family;
  std::vector<char> seen(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    if (seen[a])
      continue;
    std::vector<int> walk;
    for (int b = static_cast<int>(a); !seen[static_cast<std::size_t>(b)]; b = next_arc(b)) {
      seen[static_cast<std::size_t>(b)] = 1;
      walk.push_back(b);
    }
    by_family[family[a]].push_back(walk);
  }
  CurveSystem out;
  out.genus = genus;
  std::vector<int> new_id(n, -1);
  for (const auto &fam : family_order) {
    auto it = by_family.find(fam);
    if (it == by_family.end())
      continue;
    const auto &walks = it->second;
    for (std::size_t k = 0; k < walks.size(); ++k) {
      const int c = static_cast<int>(out.curves.size());
      out.curves.push_back(walks.size() == 1 ? fam : fam + "." + std::to_string(k));
      for (std::size_t i = 0; i < walks[k].size(); ++i) {
        new_id[static_cast<std::size_t>(walks[k][i])] = static_cast<int>(out.arcs.size());
        out.arcs.push_back({c, static_cast<int>(i)});
      }
    }
  }
  for (const auto &sides : raw) {
    std::vector<Side> mapped;
    for (const auto &s : sides)
      mapped.push_back({new_id[static_cast<std::size_t>(s.arc)], s.orient});
    out.regions.push_back(mapped);
  }
  return out;
}

} // namespace

CurveSystemReport validate_curve_system(const CurveSystem &cs) {
  CurveSystemReport r;
  Check two_sided{"two_sided", true, {}}, valence{"four_valent", true, {}},
      euler{"euler_count", true, {}}, disks{"disk_regions", true, {}}, filling{"filling", true, {}};

  std::vector<int> plus(cs.arcs.size(), 0), minus(cs.arcs.size(), 0);
  for (std::size_t k = 0; k < cs.regions.size(); ++k) {
    if (cs.regions[k].empty()) {
      disks.ok = false;
      disks.details.push_back("region " + std::to_string(k) + " has no sides");
    }
    for (const auto &s : cs.regions[k]) {
      if (s.arc < 0 || s.arc >= static_cast<int>(cs.arcs.size()) || (s.orient != 1 && s.orient != -1))
        throw ValidationError("regions", "side refers to an unknown arc or orientation");
      ++(s.orient > 0 ? plus : minus)[static_cast<std::size_t>(s.arc)];
    }
  }
  for (std::size_t a = 0; a < cs.arcs.size(); ++a) {
    if (plus[a] != 1 || minus[a] != 1) {
      two_sided.ok = false;
      two_sided.details.push_back("arc " + cs.arc_name(static_cast<int>(a)) + " appears on " +
                                  std::to_string(plus[a] + minus[a]) + " sides (" +
                                  std::to_string(plus[a]) + " positive)");
    }
  }
  for (std::size_t c = 0; c < cs.curves.size(); ++c) {
    if (cs.arc_count(static_cast<int>(c)) == 0) {
      filling.ok = false;
      filling.details.push_back("curve " + cs.curves[c] + " has no arcs");
    }
  }

  const auto t = topology(cs);
  r.vertices = t.vertex_count;
  r.edges = static_cast<int>(cs.arcs.size());
  r.faces = static_cast<int>(cs.regions.size());
  r.euler = r.vertices - r.edges + r.faces;
  r.expected_euler = 2 - 2 * cs.genus;

  std::vector<std::vector<int>> members(static_cast<std::size_t>(t.vertex_count));
  for (std::size_t x = 0; x < t.vertex.size(); ++x)
    members[static_cast<std::size_t>(t.vertex[x])].push_back(static_cast<int>(x));
  for (std::size_t v = 0; v < members.size(); ++v) {
    const auto &m = members[v];
    const auto where = "vertex at " + cs.arc_name(m.front() / 2);
    if (m.size() != 4) {
      valence.ok = false;
      valence.details.push_back(where + " has valence " + std::to_string(m.size()));
      continue;
    }
    if (!t.sigma_ok)
      continue;
    int len = 1;
    for (int x = t.sigma[static_cast<std::size_t>(m[0])]; x != m[0] && len <= 4;
         x = t.sigma[static_cast<std::size_t>(x)])
      ++len;
    if (len != 4) {
      valence.ok = false;
      valence.details.push_back(where + " is not a single crossing");
      continue;
    }
    for (int x : m) {
      const int across = t.sigma[static_cast<std::size_t>(t.sigma[static_cast<std::size_t>(x)])];
      if (across != t.partner[static_cast<std::size_t>(x)]) {
        valence.ok = false;
        valence.details.push_back(where + " is not transversal");
        break;
      }
    }
  }
  if (valence.ok && 2 * r.vertices != r.edges) {
    valence.ok = false;
    valence.details.push_back("arc count is not twice the vertex count");
  }

  for (std::size_t c = 0; c < cs.curves.size(); ++c) {
    bool meets = false;
    for (std::size_t a = 0; a < cs.arcs.size(); ++a) {
      if (cs.arcs[a].curve != static_cast<int>(c))
        continue;
      for (int x : members[static_cast<std::size_t>(t.vertex[2 * a])])
        meets |= cs.arcs[static_cast<std::size_t>(x / 2)].curve != static_cast<int>(c);
    }
    if (!meets && cs.arc_count(static_cast<int>(c)) > 0) {
      filling.ok = false;
      filling.details.push_back("curve " + cs.curves[c] + " meets no other curve");
    }
  }

  if (r.euler != r.expected_euler) {
    euler.ok = false;
    euler.details.push_back("V - E + F = " + std::to_string(r.euler) + ", expected " +
                            std::to_string(r.expected_euler));
  }

  if (!cs.regions.empty() && two_sided.ok) {
    std::vector<std::vector<int>> owners(cs.arcs.size());
    for (std::size_t k = 0; k < cs.regions.size(); ++k)
      for (const auto &s : cs.regions[k])
        owners[static_cast<std::size_t>(s.arc)].push_back(static_cast<int>(k));
    std::vector<char> seen(cs.regions.size(), 0);
    std::queue<int> todo;
    todo.push(0);
    seen[0] = 1;
    std::size_t count = 1;
    while (!todo.empty()) {
      const int k = todo.front();
      todo.pop();
      for (const auto &s : cs.regions[static_cast<std::size_t>(k)])
        for (int o : owners[static_cast<std::size_t>(s.arc)])
          if (!seen[static_cast<std::size_t>(o)]) {
            seen[static_cast<std::size_t>(o)] = 1;
            ++count;
            todo.push(o);
          }
    }
    if (count != cs.regions.size()) {
      filling.ok = false;
      filling.details.push_back("regions do not form a connected surface");
    }
  }

  r.checks = {two_sided, valence, euler, disks, filling};
  r.valid = std::all_of(r.checks.begin(), r.checks.end(), [](const Check &c) { return c.ok; });
  return r;
}

std::vector<Crossing> crossings(const CurveSystem &cs) {
  require_valid_system(cs);
  const auto t = topology(cs);
  std::vector<Crossing> out(static_cast<std::size_t>(t.vertex_count));
  std::vector<char> done(static_cast<std::size_t>(t.vertex_count), 0);
  for (std::size_t x0 = 0; x0 < t.vertex.size(); ++x0) {
    const auto v = static_cast<std::size_t>(t.vertex[x0]);
    if (done[v])
      continue;
    done[v] = 1;
    auto &c = out[v];
    int x = static_cast<int>(x0);
    for (std::size_t k = 0; k < 4; ++k) {
      c.ends[k] = x;
      c.arcs[k] = x / 2;
      c.regions[k] = t.corner[static_cast<std::size_t>(x)];
      x = t.sigma[static_cast<std::size_t>(x)];
    }
    c.curves = {cs.arcs[static_cast<std::size_t>(c.arcs[0])].curve,
                cs.arcs[static_cast<std::size_t>(c.arcs[1])].curve};
  }
  return out;
}

SquareComplex dual_square_complex(const CurveSystem &cs) {
  const auto xs = crossings(cs);
  SquareComplex sq;
  for (std::size_t r = 0; r < cs.regions.size(); ++r)
    sq.add_vertex();
  std::vector<int> plus_side(cs.arcs.size()), minus_side(cs.arcs.size());
  for (std::size_t r = 0; r < cs.regions.size(); ++r)
    for (const auto &s : cs.regions[r])
      (s.orient > 0 ? plus_side : minus_side)[static_cast<std::size_t>(s.arc)] = static_cast<int>(r);
  for (std::size_t a = 0; a < cs.arcs.size(); ++a)
    sq.add_edge(plus_side[a], minus_side[a],
                cs.curves[static_cast<std::size_t>(cs.arcs[a].curve)]);
  for (std::size_t r = 0; r < cs.regions.size(); ++r) {
    auto &inc = sq.incidence[r];
    inc.clear();
    for (const auto &s : cs.regions[r])
      inc.push_back(2 * s.arc + (s.orient > 0 ? 0 : 1));
  }
  for (const auto &c : xs) {
    Square q;
    for (std::size_t k = 0; k < 4; ++k) {
      const int next = c.ends[(k + 1) % 4];
      q.v[k] = c.regions[k];
      q.e[k] = next / 2;
      q.fwd[k] = next % 2 == 1;
    }
    sq.squares.push_back(q);
  }
  return sq;
}

SpecialnessReport check_special(const CurveSystem &cs, const SquareComplex &sq) {
  if (sq.vertex_count != static_cast<int>(cs.regions.size()) ||
      sq.edges.size() != cs.arcs.size())
    throw ValidationError("complex", "square complex is not the dual of this curve system");
  return check_special(sq);
}

DoubleCover cover_from_curves(const CurveSystem &cs, const std::vector<std::string> &curves) {
  DoubleCover cover;
  cover.arc_voltage.assign(cs.arcs.size(), 0);
  for (const auto &name : curves) {
    const int c = cs.curve_id(name);
    for (std::size_t a = 0; a < cs.arcs.size(); ++a)
      if (cs.arcs[a].curve == c)
        cover.arc_voltage[a] = 1;
  }
  return cover;
}

CurveSystem pullback_double_cover(const CurveSystem &cs, const DoubleCover &cover) {
  if (cover.arc_voltage.size() != cs.arcs.size())
    throw ValidationError("cover", "covering data has the wrong number of arcs");
  auto vol = [&](int a) { return cover.arc_voltage[static_cast<std::size_t>(a)] & 1; };
  for (const auto &c : crossings(cs)) {
    int sum = 0;
    for (int a : c.arcs)
      sum += vol(a);
    if (sum % 2 != 0)
      throw ValidationError("cover", "covering data inconsistent with incidence at " +
                                         cs.arc_name(c.arcs[0]));
  }
  std::vector<std::vector<Side>> raw(2 * cs.regions.size());
  for (std::size_t r = 0; r < cs.regions.size(); ++r) {
    for (int t = 0; t < 2; ++t) {
      auto &out = raw[2 * r + static_cast<std::size_t>(t)];
      for (const auto &s : cs.regions[r]) {
        const int sheet = s.orient > 0 ? t : (t + vol(s.arc)) % 2;
        out.push_back({2 * s.arc + sheet, s.orient});
      }
    }
  }
  boost::disjoint_sets_with_storage<> sheets(raw.size());
  std::vector<int> first(2 * cs.arcs.size(), -1);
  for (std::size_t r = 0; r < raw.size(); ++r) {
    sheets.make_set(static_cast<int>(r));
    for (const auto &s : raw[r]) {
      auto &f = first[static_cast<std::size_t>(s.arc)];
      if (f < 0)
        f = static_cast<int>(r);
      else
        sheets.union_set(f, static_cast<int>(r));
    }
  }
  if (sheets.count_sets(boost::counting_iterator<int>(0),
                        boost::counting_iterator<int>(static_cast<int>(raw.size()))) != 1)
    throw ValidationError("cover", "covering data gives a disconnected cover");
  std::vector<std::string> family(2 * cs.arcs.size());
  for (std::size_t a = 0; a < cs.arcs.size(); ++a)
    family[2 * a] = family[2 * a + 1] = cs.curves[static_cast<std::size_t>(cs.arcs[a].curve)];
  return assemble(2 * cs.genus - 1, cs.curves, family, raw);
}

std::vector<int> dual_voltage(const CurveSystem &cs, const DoubleCover &cover) {
  if (cover.arc_voltage.size() != cs.arcs.size())
    throw ValidationError("cover", "covering data has the wrong number of arcs");
  return cover.arc_voltage;
}

std::vector<int> map_certificate(const CurveSystem &cs) {
  require_valid_system(cs);
  const auto t = topology(cs);
  const int darts = static_cast<int>(t.sigma.size());
  std::vector<int> inverse(t.sigma.size());
  for (int x = 0; x < darts; ++x)
    inverse[static_cast<std::size_t>(t.sigma[static_cast<std::size_t>(x)])] = x;
  std::vector<int> best;
  std::vector<int> label(t.sigma.size()), order;
  for (const std::vector<int> *rot : {&t.sigma, static_cast<const std::vector<int> *>(&inverse)}) {
    for (int d0 = 0; d0 < darts; ++d0) {
      std::fill(label.begin(), label.end(), -1);
      order.assign(1, d0);
      label[static_cast<std::size_t>(d0)] = 0;
      std::vector<int> code;
      bool worse = false, better = best.empty();
      for (std::size_t i = 0; i < order.size() && !worse; ++i) {
        const int d = order[i];
        for (int nb : std::array<int, 2>{(*rot)[static_cast<std::size_t>(d)], d ^ 1}) {
          auto &l = label[static_cast<std::size_t>(nb)];
          if (l < 0) {
            l = static_cast<int>(order.size());
            order.push_back(nb);
          }
          code.push_back(l);
          if (!better) {
            const int b = best[code.size() - 1];
            if (l > b) {
              worse = true;
              break;
            }
            better = l < b;
          }
        }
      }
      if (worse || static_cast<int>(order.size()) != darts)
        continue;
      if (better || code < best)
        best = std::move(code);
    }
  }
  best.insert(best.begin(), {darts, static_cast<int>(cs.regions.size())});
  return best;
}

bool isomorphic(const CurveSystem &a, const CurveSystem &b) {
  if (a.genus != b.genus || a.arcs.size() != b.arcs.size() || a.regions.size() != b.regions.size())
    return false;
  return map_certificate(a) == map_certificate(b);
}

} // namespace amalgam
