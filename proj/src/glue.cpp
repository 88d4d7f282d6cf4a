#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "amalgam/core.hpp"
#include "amalgam/cubulate.hpp"

namespace amalgam {

CurvePath subdivided_curve_path(const CurveSystem &cs, const std::string &curve,
                                const std::string &marker_curve) {
  const int c = cs.curve_id(curve);
  const int marker = cs.curve_id(marker_curve);
  const auto xs = crossings(cs);
  const int F = static_cast<int>(cs.regions.size());
  const int E = static_cast<int>(cs.arcs.size());
  std::map<int, std::pair<int, int>> where;
  for (std::size_t s = 0; s < xs.size(); ++s)
    for (int j = 0; j < 4; ++j)
      where[xs[s].ends[static_cast<std::size_t>(j)]] = {static_cast<int>(s), j};
  // centre edge k of square s leads to the midpoint of the arc at end k + 1
  auto centre_edge = [&](int end) {
    auto [s, j] = where.at(end);
    return 2 * E + 4 * s + (j + 3) % 4;
  };
  CurvePath p;
  const int n = cs.arc_count(c);
  for (int i = 0; i < n; ++i) {
    const int a = cs.arc_id(c, i);
    const int next = cs.arc_id(c, (i + 1) % n);
    const int s = where.at(2 * a + 1).first;
    const auto &x = xs[static_cast<std::size_t>(s)];
    p.vertices.push_back(F + a);
    p.marker.push_back(false);
    p.edges.push_back(centre_edge(2 * a + 1));
    p.vertices.push_back(F + E + s);
    p.marker.push_back((x.curves[0] == marker || x.curves[1] == marker) && marker != c);
    p.edges.push_back(centre_edge(2 * next));
  }
  return p;
}

namespace {

struct Side3 {
  SquareComplex sub;
  CurvePath path;
};

Side3 prepare(const GlueSide &side) {
  Side3 s;
  s.sub = barycentric_subdivide(dual_square_complex(side.cs));
  s.path = subdivided_curve_path(side.cs, side.amalgamating, side.perimeter);
  return s;
}

SquareComplex identify(const SquareComplex &left, const SquareComplex &right,
                       const CurvePath &lp, const CurvePath &rp, int offset, int direction,
                       std::vector<int> &right_edge_map) {
  const int n = static_cast<int>(lp.vertices.size());
  auto phi = [&](int k) { return ((offset + direction * k) % n + n) % n; };
  SquareComplex out = left;
  std::vector<int> vmap(static_cast<std::size_t>(right.vertex_count), -1);
  right_edge_map.assign(right.edges.size(), -1);
  std::set<int> shared_edges;
  for (int k = 0; k < n; ++k) {
    vmap[static_cast<std::size_t>(rp.vertices[static_cast<std::size_t>(phi(k))])] =
        lp.vertices[static_cast<std::size_t>(k)];
    // left edge k joins path vertices k and k + 1
    const int re = direction > 0 ? rp.edges[static_cast<std::size_t>(phi(k))]
                                 : rp.edges[static_cast<std::size_t>(phi(k + 1))];
    right_edge_map[static_cast<std::size_t>(re)] = lp.edges[static_cast<std::size_t>(k)];
    shared_edges.insert(re);
  }
  for (int v = 0; v < right.vertex_count; ++v)
    if (vmap[static_cast<std::size_t>(v)] < 0)
      vmap[static_cast<std::size_t>(v)] = out.add_vertex();
  for (std::size_t e = 0; e < right.edges.size(); ++e) {
    if (right_edge_map[e] >= 0)
      continue;
    const auto &ed = right.edges[e];
    const int id = static_cast<int>(out.edges.size());
    out.edges.push_back({vmap[static_cast<std::size_t>(ed.u)], vmap[static_cast<std::size_t>(ed.w)],
                         ed.label});
    right_edge_map[e] = id;
  }
  for (int v = 0; v < right.vertex_count; ++v) {
    auto &inc = out.incidence[static_cast<std::size_t>(vmap[static_cast<std::size_t>(v)])];
    for (int end : right.incidence[static_cast<std::size_t>(v)]) {
      if (shared_edges.count(end / 2))
        continue;
      inc.push_back(2 * right_edge_map[static_cast<std::size_t>(end / 2)] + end % 2);
    }
  }
  for (const auto &q : right.squares) {
    Square m;
    for (std::size_t k = 0; k < 4; ++k) {
      m.v[k] = vmap[static_cast<std::size_t>(q.v[k])];
      m.e[k] = right_edge_map[static_cast<std::size_t>(q.e[k])];
      if (shared_edges.count(q.e[k])) {
        const auto &ed = out.edges[static_cast<std::size_t>(m.e[k])];
        m.fwd[k] = ed.u == m.v[k];
      } else {
        m.fwd[k] = q.fwd[k];
      }
    }
    out.squares.push_back(m);
  }
  for (auto &q : out.squares)
    for (std::size_t k = 0; k < 4; ++k) {
      const auto &ed = out.edges[static_cast<std::size_t>(q.e[k])];
      const int a = q.v[k], b = q.v[(k + 1) % 4];
      if (!((ed.u == a && ed.w == b) || (ed.u == b && ed.w == a)))
        throw InvariantError("glued square edge does not join its corners");
    }
  return out;
}

int classes_among(const HyperplaneData &h, const std::vector<int> &edges) {
  std::set<int> seen;
  for (int e : edges)
    seen.insert(h.edge_class[static_cast<std::size_t>(e)]);
  return static_cast<int>(seen.size());
}

} // namespace

GlueReport glue_complexes(const GlueSide &left, const GlueSide &right) {
  const auto l = prepare(left);
  const auto r = prepare(right);
  const int n = static_cast<int>(l.path.vertices.size());
  if (n != static_cast<int>(r.path.vertices.size()))
    throw ValidationError("path", "amalgamating paths have lengths " + std::to_string(n) + " and " +
                                      std::to_string(r.path.vertices.size()));

  GlueReport best;
  bool found = false;
  int candidates = 0;
  for (int direction : {1, -1}) {
    for (int offset = 0; offset < n && !found; offset += 2) {
      bool aligned = false;
      for (int k = 0; k < n; ++k)
        aligned |= l.path.marker[static_cast<std::size_t>(k)] &&
                   r.path.marker[static_cast<std::size_t>(((offset + direction * k) % n + n) % n)];
      if (!aligned)
        continue;
      ++candidates;
      GlueReport g;
      std::vector<int> right_edges;
      g.complex = identify(l.sub, r.sub, l.path, r.path, offset, direction, right_edges);
      g.offset = offset;
      g.direction = direction;
      const auto links = check_link_condition(g.complex);
      g.link_ok = std::all_of(links.begin(), links.end(), [](bool b) { return b; });
      if (!found && (g.link_ok || candidates == 1)) {
        best = std::move(g);
        best.specialness = check_special(best.complex);
        const auto h = hyperplanes(best.complex);
        std::vector<int> left_edges(l.sub.edges.size());
        std::iota(left_edges.begin(), left_edges.end(), 0);
        best.hyperplanes_before = {static_cast<int>(hyperplanes(l.sub).classes.size()),
                                   static_cast<int>(hyperplanes(r.sub).classes.size())};
        best.hyperplanes_after = {classes_among(h, left_edges), classes_among(h, right_edges)};
        found = best.link_ok;
      }
    }
  }
  if (candidates == 0)
    throw ValidationError("perimeter", "no alignment takes a perimeter vertex to a perimeter vertex");
  best.candidates = candidates;
  return best;
}

} // namespace amalgam
