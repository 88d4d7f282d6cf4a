#include "amalgam/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include <boost/math/tools/roots.hpp>
#include <boost/container_hash/hash.hpp>
#include <boost/iterator/counting_iterator.hpp>
#include <boost/pending/disjoint_sets.hpp>

namespace amalgam {

namespace {

constexpr double kPi = std::numbers::pi;

int mod(int a, int n) { return ((a % n) + n) % n; }

struct TC {
  int t = 0;
  int c = 0;
};

// Tiles of one region, as a tree rooted at the fundamental domain (tile 0).
// Side 0 of every tile lies on a branching line and is never crossed.
class TileTree {
public:
  explicit TileTree(int n) : n_(n) { nodes_.push_back({}); }

  int sides() const { return n_; }

  // Tile across side k of t, and the index of the glued side in that tile.
  std::pair<int, int> across(int t, int k) {
    if (k == 0)
      throw InvariantError("tile walk crossed a branching side");
    const int back = paired_side(n_, k);
    const auto ti = static_cast<std::size_t>(t);
    if (k == nodes_[ti].in_side)
      return {nodes_[ti].parent, back};
    if (auto it = nodes_[ti].child.find(k); it != nodes_[ti].child.end())
      return {it->second, back};
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({t, back, {}});
    nodes_[ti].child[k] = id;
    return {id, back};
  }

  // Next tile around corner c, through side c (forward) or side c - 1 (backward).
  TC forward(TC x) {
    auto [u, j] = across(x.t, x.c);
    return {u, mod(j + 1, n_)};
  }
  TC backward(TC x) {
    auto [u, j] = across(x.t, mod(x.c - 1, n_));
    return {u, j};
  }

  // A vertex is named by the tile in which it is corner 1.
  int key(TC x) {
    for (int step = 0; step <= n_; ++step) {
      if (x.c == 1)
        return x.t;
      x = backward(x);
    }
    throw InvariantError("vertex fan does not close");
  }

private:
  struct Node {
    int parent = -1;
    int in_side = -1;
    std::map<int, int> child;
  };
  int n_;
  std::vector<Node> nodes_;
};

struct EdgeRec {
  int t = 0;
  int x = 0;
  int y = 0;
};

// Boundary cycle of a cell; e[i] joins v[i] and v[i + 1].
struct Cycle {
  std::vector<TC> v;
  std::vector<EdgeRec> e;
  int extension = 0;

  int size() const { return static_cast<int>(v.size()); }
};

Cycle first_cycle(int n) {
  Cycle c;
  for (int k = 0; k < n; ++k) {
    c.v.push_back({0, k});
    c.e.push_back({0, k, mod(k + 1, n)});
  }
  return c;
}

// Appends the corners of tile t strictly after `from` up to `to`, keeping one
// end of the tile's branching side.
void walk(Cycle &cyc, int n, int t, int from, int to) {
  std::vector<int> path;
  for (int c = from;; c = mod(c + 1, n)) {
    path.push_back(c);
    if (c == to)
      break;
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (path[i] != 0 || path[i + 1] != 1)
      continue;
    if (i + 2 < path.size())
      path.erase(path.begin() + static_cast<std::ptrdiff_t>(i + 1));
    else if (i > 0)
      path.erase(path.begin() + static_cast<std::ptrdiff_t>(i));
    else
      throw InvariantError("tile path is a single branching side");
    break;
  }
  for (std::size_t i = 1; i < path.size(); ++i) {
    cyc.e.push_back({t, path[i - 1], path[i]});
    cyc.v.push_back({t, path[i]});
  }
}

// Cell across side k of tile X: vertices a = X corner k and a0 = X corner k + 1
// together with the far fans at both. Cycle order a, a', ..., a0', a0.
Cycle collar_cycle(TileTree &tree, int X, int k) {
  const int n = tree.sides();
  auto [T, j] = tree.across(X, k);
  const int p = mod(j + 1, n);
  const int q = j;
  std::vector<TC> fa{{T, p}}, f0{{T, q}};
  while (fa.back().c != 0) {
    fa.push_back(tree.forward(fa.back()));
    if (static_cast<int>(fa.size()) > n)
      throw InvariantError("fan at a does not reach a branching side");
  }
  while (f0.back().c != 1) {
    f0.push_back(tree.backward(f0.back()));
    if (static_cast<int>(f0.size()) > n)
      throw InvariantError("fan at a0 does not reach a branching side");
  }
  Cycle cyc;
  const int last = fa.back().t;
  cyc.v = {{last, 0}, {last, 1}};
  cyc.e = {{last, 0, 1}};
  for (std::size_t r = fa.size() - 1; r >= 1; --r)
    walk(cyc, n, fa[r].t, mod(fa[r].c + 1, n), mod(fa[r].c - 1, n));
  walk(cyc, n, T, mod(p + 1, n), mod(q - 1, n));
  for (std::size_t r = 1; r < f0.size(); ++r)
    walk(cyc, n, f0[r].t, mod(f0[r].c + 1, n), mod(f0[r].c - 1, n));
  const int end = f0.back().t;
  cyc.e.push_back({end, 0, 1});
  cyc.v.push_back({end, 1});
  cyc.e.push_back({T, q, p});
  return cyc;
}

int circular_gap(int a, int b, int n) { return std::min(mod(a - b, n), mod(b - a, n)); }

// Replaces tile side e[i] by a path of k + 1 edges through the chain of tiles
// beyond it: u0 u1 .. un [u_{n+1}] vn .. v1 v0 with k = 2n + m.
void extend(TileTree &tree, Cycle &cyc, int i, int k) {
  const int n = tree.sides();
  const auto ed = cyc.e.at(static_cast<std::size_t>(i));
  int side;
  bool fwd;
  if (mod(ed.y - ed.x, n) == 1) {
    side = ed.x;
    fwd = true;
  } else if (mod(ed.x - ed.y, n) == 1) {
    side = ed.y;
    fwd = false;
  } else {
    throw InvariantError("extension edge is not a tile side");
  }
  auto [Y, e] = tree.across(ed.t, side);
  int uy = fwd ? mod(e + 1, n) : e;
  int vy = fwd ? e : mod(e + 1, n);
  std::vector<TC> us, vs;
  std::vector<EdgeRec> ue, ve, mid;
  const int half = k / 2;
  for (int step = 0; step < half; ++step) {
    int f = mod(e + n / 2, n);
    while (f == 0 || circular_gap(f, e, n) <= 2)
      f = mod(f + 1, n);
    const int u1 = uy == mod(e + 1, n) ? f : mod(f + 1, n);
    const int v1 = u1 == f ? mod(f + 1, n) : f;
    ue.push_back({Y, uy, u1});
    ve.push_back({Y, v1, vy});
    us.push_back({Y, u1});
    vs.push_back({Y, v1});
    if (step + 1 == half && k % 2 == 0) {
      mid.push_back({Y, u1, v1});
      break;
    }
    auto [Y2, e2] = tree.across(Y, f);
    uy = u1 == f ? mod(e2 + 1, n) : e2;
    vy = v1 == f ? mod(e2 + 1, n) : e2;
    Y = Y2;
    e = e2;
  }
  if (k % 2 == 1) {
    int w = mod(e + 1 + n / 2, n);
    while (w == e || w == mod(e + 1, n))
      w = mod(w + 1, n);
    mid = {{Y, uy, w}, {Y, w, vy}};
    us.push_back({Y, w});
  }
  const auto cut = static_cast<std::ptrdiff_t>(i);
  std::vector<TC> v(cyc.v.begin(), cyc.v.begin() + cut + 1);
  v.insert(v.end(), us.begin(), us.end());
  v.insert(v.end(), vs.rbegin(), vs.rend());
  v.insert(v.end(), cyc.v.begin() + cut + 1, cyc.v.end());
  std::vector<EdgeRec> es(cyc.e.begin(), cyc.e.begin() + cut);
  es.insert(es.end(), ue.begin(), ue.end());
  es.insert(es.end(), mid.begin(), mid.end());
  es.insert(es.end(), ve.rbegin(), ve.rend());
  es.insert(es.end(), cyc.e.begin() + cut + 1, cyc.e.end());
  cyc.v = std::move(v);
  cyc.e = std::move(es);
  cyc.extension += k;
}

bool is_tile_side(const EdgeRec &e, int n) {
  return (mod(e.y - e.x, n) == 1 || mod(e.x - e.y, n) == 1) && std::min(e.x, e.y) + std::max(e.x, e.y) != 1;
}

// Tile side nearest the middle of a collar cycle, away from a', a, a0, a0' and
// the edges next to them.
int collar_extension_edge(const Cycle &c, int n) {
  const int s = c.size();
  int best = -1;
  for (int i = 3; i + 5 <= s; ++i) {
    if (!is_tile_side(c.e[static_cast<std::size_t>(i)], n))
      continue;
    if (best < 0 || std::abs(2 * i - s) < std::abs(2 * best - s))
      best = i;
  }
  if (best < 0)
    throw InvariantError("collar cell has no side to extend");
  return best;
}

struct Shape {
  std::string label;
  std::vector<int> keys;
  std::vector<std::string> orbits;
  std::vector<double> lengths;
  int extension = 0;

  int size() const { return static_cast<int>(keys.size()); }
};

Shape shape_of(TileTree &tree, const Cycle &c, const PieceGeometry &g, const std::string &label) {
  Shape s;
  s.label = label;
  s.extension = c.extension;
  for (const auto &x : c.v)
    s.keys.push_back(tree.key(x));
  const int m = c.size();
  for (int i = 0; i < m; ++i) {
    const auto &e = c.e[static_cast<std::size_t>(i)];
    if (tree.key({e.t, e.x}) != s.keys[static_cast<std::size_t>(i)] ||
        tree.key({e.t, e.y}) != s.keys[static_cast<std::size_t>((i + 1) % m)])
      throw InvariantError(label + " cycle edge does not join consecutive vertices");
    s.orbits.push_back(g.orbit(e.x, e.y));
    s.lengths.push_back(g.chord(e.x, e.y));
  }
  auto sorted = s.keys;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvariantError(label + " cycle repeats a vertex");
  return s;
}

struct Slot {
  PieceGeometry geom;
  Shape first, plus, minus;
};

void balance(TileTree &t1, Cycle &c1, TileTree &t2, Cycle &c2,
             const std::function<int(const Cycle &, int)> &edge) {
  if (c1.size() < c2.size())
    extend(t1, c1, edge(c1, t1.sides()), c2.size() - c1.size());
  else if (c2.size() < c1.size())
    extend(t2, c2, edge(c2, t2.sides()), c1.size() - c2.size());
}

std::array<Slot, 2> build_slot(int g1, int g2) {
  std::array<Slot, 2> out;
  out[0].geom = piece_geometry(g1);
  out[1].geom = piece_geometry(g2);
  TileTree t1(out[0].geom.sides), t2(out[1].geom.sides);
  auto f1 = first_cycle(t1.sides()), f2 = first_cycle(t2.sides());
  auto p1 = collar_cycle(t1, 0, 1), p2 = collar_cycle(t2, 0, 1);
  auto m1 = collar_cycle(t1, 0, t1.sides() - 1), m2 = collar_cycle(t2, 0, t2.sides() - 1);
  balance(t1, f1, t2, f2, [](const Cycle &, int n) { return n / 2; });
  balance(t1, p1, t2, p2, collar_extension_edge);
  balance(t1, m1, t2, m2, collar_extension_edge);
  out[0].first = shape_of(t1, f1, out[0].geom, "first");
  out[0].plus = shape_of(t1, p1, out[0].geom, "collar+");
  out[0].minus = shape_of(t1, m1, out[0].geom, "collar-");
  out[1].first = shape_of(t2, f2, out[1].geom, "first");
  out[1].plus = shape_of(t2, p2, out[1].geom, "collar+");
  out[1].minus = shape_of(t2, m2, out[1].geom, "collar-");
  return out;
}

std::array<int, 4> slot_order(const std::array<int, 4> &genera) {
  auto g = genera;
  std::sort(g.begin(), g.end());
  return g;
}

class Grower {
public:
  Grower(const std::array<Slot, 4> &slots, std::int64_t budget) : slots_(slots), budget_(budget) {}

  TilingComplex run(int depth);

private:
  struct RawCell {
    int slot;
    const Shape *shape;
    int depth;
    std::string region;
    std::vector<int> nodes;
  };
  struct RawEdge {
    int u, w;
    std::vector<int> cells;
  };
  struct Exit {
    int cell, u, w, slot;
    std::string region;
  };

  int node(int region, int key) {
    auto [it, fresh] = nodes_.try_emplace({region, key}, static_cast<int>(nodes_.size()));
    return it->second;
  }

  int add_cell(int slot, const Shape &shape, int depth, const std::string &region, int region_id) {
    if (static_cast<std::int64_t>(cells_.size()) >= budget_)
      throw ValidationError("depth", "cell budget of " + std::to_string(budget_) + " exceeded at depth " +
                                         std::to_string(depth));
    RawCell c{slot, &shape, depth, region, {}};
    for (int k : shape.keys)
      c.nodes.push_back(node(region_id, k));
    cells_.push_back(std::move(c));
    return static_cast<int>(cells_.size()) - 1;
  }

  int at(int cell, int index) const {
    const auto &ns = cells_[static_cast<std::size_t>(cell)].nodes;
    const int s = static_cast<int>(ns.size());
    return ns[static_cast<std::size_t>(mod(index, s))];
  }

  const std::array<Slot, 4> &slots_;
  std::int64_t budget_;
  std::map<std::pair<int, int>, int> nodes_;
  std::vector<RawCell> cells_;
  std::vector<RawEdge> edges_;
  std::vector<std::pair<int, int>> unions_;
  int regions_ = 0;
};

TilingComplex Grower::run(int depth) {
  std::array<int, 4> first{}, plus{}, minus{};
  for (int k = 0; k < 4; ++k) {
    const int r = regions_++;
    first[static_cast<std::size_t>(k)] = add_cell(k, slots_[static_cast<std::size_t>(k)].first, 0,
                                                  std::to_string(k), r);
    if (depth >= 1) {
      plus[static_cast<std::size_t>(k)] =
          add_cell(k, slots_[static_cast<std::size_t>(k)].plus, 1, std::to_string(k), r);
      minus[static_cast<std::size_t>(k)] =
          add_cell(k, slots_[static_cast<std::size_t>(k)].minus, 1, std::to_string(k), r);
    }
  }
  // the four root regions share the branching line through the first cells
  RawEdge e0{at(first[0], 0), at(first[0], 1), {first.begin(), first.end()}};
  for (int k = 1; k < 4; ++k) {
    unions_.emplace_back(at(first[0], 0), at(first[static_cast<std::size_t>(k)], 0));
    unions_.emplace_back(at(first[0], 1), at(first[static_cast<std::size_t>(k)], 1));
  }
  edges_.push_back(e0);
  std::vector<Exit> frontier;
  if (depth >= 1) {
    RawEdge ahead{at(plus[0], 0), at(plus[0], 1), {plus.begin(), plus.end()}};
    RawEdge behind{at(minus[0], -2), at(minus[0], -1), {minus.begin(), minus.end()}};
    for (int k = 1; k < 4; ++k) {
      unions_.emplace_back(at(plus[0], 1), at(plus[static_cast<std::size_t>(k)], 1));
      unions_.emplace_back(at(minus[0], -2), at(minus[static_cast<std::size_t>(k)], -2));
    }
    edges_.push_back(ahead);
    edges_.push_back(behind);
    for (int k = 0; k < 4; ++k) {
      const int p = plus[static_cast<std::size_t>(k)], m = minus[static_cast<std::size_t>(k)];
      frontier.push_back({p, at(p, -2), at(p, -1), k, std::to_string(k) + "+"});
      frontier.push_back({m, at(m, 0), at(m, 1), k, std::to_string(k) + "-"});
    }
  }
  for (int d = 2; d <= depth; ++d) {
    std::vector<Exit> next;
    for (const auto &x : frontier) {
      RawEdge edge{x.u, x.w, {x.cell}};
      for (int j = 0; j < 4; ++j) {
        if (j == x.slot)
          continue;
        const auto region = x.region + std::to_string(j);
        const int c = add_cell(j, slots_[static_cast<std::size_t>(j)].plus, d, region, regions_++);
        unions_.emplace_back(x.u, at(c, 0));
        unions_.emplace_back(x.w, at(c, 1));
        edge.cells.push_back(c);
        next.push_back({c, at(c, -2), at(c, -1), j, region + "+"});
      }
      edges_.push_back(std::move(edge));
    }
    frontier = std::move(next);
  }
  for (const auto &x : frontier)
    edges_.push_back({x.u, x.w, {x.cell}});

  const int count = static_cast<int>(nodes_.size());
  boost::disjoint_sets_with_storage<> sets(static_cast<std::size_t>(count));
  for (int v = 0; v < count; ++v)
    sets.make_set(v);
  for (auto [a, b] : unions_)
    sets.union_set(a, b);
  std::map<int, int> vertex_of;
  auto resolve = [&](int n) {
    auto [it, fresh] = vertex_of.try_emplace(sets.find_set(n), static_cast<int>(vertex_of.size()));
    return it->second;
  };

  TilingComplex t;
  t.depth = depth;
  std::map<std::string, int> type_ids;
  for (const auto &rc : cells_) {
    TileCell c;
    c.slot = rc.slot;
    c.genus = slots_[static_cast<std::size_t>(rc.slot)].geom.genus;
    c.label = rc.shape->label;
    c.extension = rc.shape->extension;
    c.depth = rc.depth;
    c.region = rc.region;
    for (int n : rc.nodes)
      c.vertices.push_back(resolve(n));
    c.orbits = rc.shape->orbits;
    c.lengths = rc.shape->lengths;
    for (int i = 0; i < c.sides(); ++i)
      if (c.orbits[static_cast<std::size_t>(i)].ends_with(":B"))
        c.branching_sides.push_back(i);
    auto [it, fresh] = type_ids.try_emplace(c.type_key(), static_cast<int>(type_ids.size()));
    if (fresh)
      t.types.push_back(c.type_key());
    c.type = it->second;
    t.cells.push_back(std::move(c));
  }
  for (const auto &e : edges_)
    t.branching.push_back({resolve(e.u), resolve(e.w), e.cells});
  t.vertex_count = static_cast<int>(vertex_of.size());
  std::map<std::pair<int, int>, std::vector<int>> sharing;
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    const auto &v = t.cells[i].vertices;
    for (std::size_t k = 0; k < v.size(); ++k)
      sharing[std::minmax(v[k], v[(k + 1) % v.size()])].push_back(static_cast<int>(i));
  }
  for (const auto &[edge, cs] : sharing)
    for (std::size_t a = 0; a < cs.size(); ++a)
      for (std::size_t b = a + 1; b < cs.size(); ++b)
        t.adjacency.emplace_back(cs[a], cs[b]);
  std::sort(t.adjacency.begin(), t.adjacency.end());
  return t;
}

} // namespace

int paired_side(int sides, int k) {
  if (sides < 5 || (sides - 1) % 4 != 0 || k <= 0 || k >= sides)
    throw InvariantError("side pairing queried outside the polygon");
  const int block = (k - 1) / 4, r = (k - 1) % 4;
  return 4 * block + 1 + (r + 2) % 4;
}

ReducedAmalgam reduce_to_four_pieces(const Amalgam &a) {
  ReducedAmalgam r;
  r.source = a;
  r.normalized = normalize(quadruple(a));
  for (auto x : r.normalized)
    if (x % 2 == 0)
      throw ValidationError("amalgam", "no reduction to four one-boundary pieces: the normalized "
                                       "quadruple has an even entry");
  while (std::any_of(r.normalized.begin(), r.normalized.end(),
                     [&](std::int64_t x) { return r.scale * x > -3; }))
    r.scale += 2;
  for (std::size_t i = 0; i < 4; ++i)
    r.genera[i] = static_cast<int>((1 - r.scale * r.normalized[i]) / 2);
  return r;
}

double PieceGeometry::chord(int x, int y) const {
  if (std::min(x, y) == 0 && std::max(x, y) == 1)
    return branching_length;
  const int lo = std::min(x, y), hi = std::max(x, y);
  const int m = lo >= 1 ? hi - lo : sides - hi;
  const double theta_s = 2 * std::asin(std::sinh(side_length / 2) / std::sinh(circumradius));
  return 2 * std::asinh(std::sinh(circumradius) * std::sin(m * theta_s / 2));
}

std::string PieceGeometry::orbit(int x, int y) const {
  const int lo = std::min(x, y), hi = std::max(x, y);
  const auto g = "g" + std::to_string(genus) + ":";
  if (lo == 0 && hi == 1)
    return g + "B";
  return g + std::to_string(lo >= 1 ? hi - lo : sides - hi);
}

HypPolygon PieceGeometry::polygon() const {
  std::vector<double> s(static_cast<std::size_t>(sides), side_length);
  s[0] = branching_length;
  return cyclic_polygon(s);
}

PieceGeometry piece_geometry(int genus) {
  if (genus < 2)
    throw ValidationError("genus", "pieces need genus at least two");
  PieceGeometry g;
  g.genus = genus;
  g.sides = 4 * genus + 1;
  g.branching_length = kBranchingLength;
  const double L = g.branching_length;
  const int n = g.sides;
  auto side_for = [&](double R) {
    const double theta_l = 2 * std::asin(std::min(1.0, std::sinh(L / 2) / std::sinh(R)));
    const double theta_s = (2 * kPi - theta_l) / (n - 1);
    return 2 * std::asinh(std::sinh(R) * std::sin(theta_s / 2));
  };
  auto base = [](double l, double R) { return std::acos(std::min(1.0, std::tanh(l / 2) / std::tanh(R))); };
  auto excess = [&](double R) { return 2 * base(L, R) + 2 * (n - 1) * base(side_for(R), R) - kPi; };
  const double lo = L / 2 * (1 + 1e-12);
  double hi = L;
  while (excess(hi) > 0)
    hi *= 2;
  auto [a, b] = boost::math::tools::bisect(
      excess, lo, hi, [](double x, double y) { return std::abs(x - y) < 1e-15; });
  g.circumradius = (a + b) / 2;
  g.side_length = side_for(g.circumradius);
  return g;
}

std::string TileCell::type_key() const {
  return label + "(g" + std::to_string(genus) + "):" + std::to_string(sides());
}

std::int64_t side_bound(const std::array<int, 4> &g1, const std::array<int, 4> &g2) {
  std::int64_t sides = 0, valence = 0;
  for (const auto &g : {g1, g2}) {
    std::int64_t v = 2;
    for (int x : g) {
      sides = std::max<std::int64_t>(sides, 4 * x + 1);
      v += 4 * x;
    }
    valence = std::max(valence, v);
  }
  return 2 * sides * valence;
}

TilingPair grow_tilings(const Amalgam &a1, const Amalgam &a2, int depth, std::int64_t budget) {
  if (depth < 0)
    throw ValidationError("depth", "depth must be non-negative");
  if (budget < 4)
    throw ValidationError("budget", "cell budget must allow the four fundamental-domain pieces");
  const auto r1 = reduce_to_four_pieces(a1);
  const auto r2 = reduce_to_four_pieces(a2);
  const auto g1 = slot_order(r1.genera), g2 = slot_order(r2.genera);
  std::array<Slot, 4> s1, s2;
  for (std::size_t k = 0; k < 4; ++k) {
    auto both = build_slot(g1[k], g2[k]);
    s1[k] = std::move(both[0]);
    s2[k] = std::move(both[1]);
  }
  TilingPair out;
  out.first = Grower(s1, budget).run(depth);
  out.second = Grower(s2, budget).run(depth);
  for (auto *t : {&out.first, &out.second}) {
    t->bound = side_bound(g1, g2);
    for (std::size_t k = 0; k < 4; ++k)
      t->pieces[k] = (t == &out.first ? s1 : s2)[k].geom;
  }
  out.first.amalgam = r1;
  out.second.amalgam = r2;

  const auto &c1 = out.first.cells, &c2 = out.second.cells;
  if (c1.size() != c2.size())
    throw InvariantError("grown complexes have different cell counts");
  out.iso.cells.resize(c1.size());
  std::iota(out.iso.cells.begin(), out.iso.cells.end(), 0);
  out.iso.vertices.assign(static_cast<std::size_t>(out.first.vertex_count), -1);
  for (std::size_t i = 0; i < c1.size(); ++i) {
    if (c1[i].sides() != c2[i].sides())
      throw InvariantError("matched cells " + c1[i].type_key() + " and " + c2[i].type_key() +
                           " differ in side count");
    for (int k = 0; k < c1[i].sides(); ++k) {
      auto &img = out.iso.vertices[static_cast<std::size_t>(c1[i].vertices[static_cast<std::size_t>(k)])];
      const int target = c2[i].vertices[static_cast<std::size_t>(k)];
      if (img >= 0 && img != target)
        throw InvariantError("cell maps disagree on a shared vertex");
      img = target;
    }
  }
  return out;
}

Skeleton one_skeleton(const TilingComplex &t) {
  Skeleton s;
  s.vertices = t.vertex_count;
  for (const auto &c : t.cells)
    for (std::size_t k = 0; k < c.vertices.size(); ++k)
      s.edges.insert(std::minmax(c.vertices[k], c.vertices[(k + 1) % c.vertices.size()]));
  return s;
}

std::vector<std::string> isomorphism_violations(const TilingPair &p) {
  std::vector<std::string> out;
  const auto &f = p.iso.vertices;
  if (p.first.vertex_count != p.second.vertex_count ||
      f.size() != static_cast<std::size_t>(p.first.vertex_count))
    return {"vertex counts differ"};
  std::vector<bool> hit(f.size(), false);
  for (int x : f) {
    if (x < 0 || x >= p.second.vertex_count || hit[static_cast<std::size_t>(x)]) {
      out.push_back("vertex map is not a bijection");
      return out;
    }
    hit[static_cast<std::size_t>(x)] = true;
  }
  if (p.iso.cells.size() != p.first.cells.size() || p.first.cells.size() != p.second.cells.size())
    return {"cell counts differ"};
  for (std::size_t i = 0; i < p.iso.cells.size(); ++i) {
    const auto &a = p.first.cells[i];
    const auto &b = p.second.cells[static_cast<std::size_t>(p.iso.cells[i])];
    if (a.sides() != b.sides()) {
      out.push_back("cell " + std::to_string(i) + " side counts differ");
      continue;
    }
    for (int k = 0; k < a.sides(); ++k)
      if (f[static_cast<std::size_t>(a.vertices[static_cast<std::size_t>(k)])] !=
          b.vertices[static_cast<std::size_t>(k)]) {
        out.push_back("cell " + std::to_string(i) + " boundary is not carried to its partner");
        break;
      }
  }
  const auto s1 = one_skeleton(p.first), s2 = one_skeleton(p.second);
  std::set<std::pair<int, int>> image;
  for (auto [u, w] : s1.edges)
    image.insert(std::minmax(f[static_cast<std::size_t>(u)], f[static_cast<std::size_t>(w)]));
  if (image != s2.edges)
    out.push_back("edges are not carried onto edges");
  return out;
}

std::string complex_certificate(const TilingComplex &t) {
  using Edge = std::pair<int, int>;
  std::map<Edge, std::vector<std::pair<int, int>>> at; // edge -> (cell, side)
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    const auto &v = t.cells[i].vertices;
    for (std::size_t k = 0; k < v.size(); ++k)
      at[std::minmax(v[k], v[(k + 1) % v.size()])].emplace_back(static_cast<int>(i), static_cast<int>(k));
  }
  // every vertex identification must come from gluing along edges
  std::vector<std::size_t> offset(t.cells.size() + 1, 0);
  for (std::size_t i = 0; i < t.cells.size(); ++i)
    offset[i + 1] = offset[i] + t.cells[i].vertices.size();
  boost::disjoint_sets_with_storage<> corners(offset.back());
  for (std::size_t i = 0; i < offset.back(); ++i)
    corners.make_set(static_cast<int>(i));
  for (const auto &[e, cs] : at)
    for (auto [c, k] : cs)
      for (auto [d, j] : cs)
        for (int a : {0, 1})
          for (int b : {0, 1}) {
            const auto &vc = t.cells[static_cast<std::size_t>(c)].vertices;
            const auto &vd = t.cells[static_cast<std::size_t>(d)].vertices;
            const auto ia = static_cast<std::size_t>((k + a) % static_cast<int>(vc.size()));
            const auto ib = static_cast<std::size_t>((j + b) % static_cast<int>(vd.size()));
            if (vc[ia] == vd[ib])
              corners.union_set(static_cast<int>(offset[static_cast<std::size_t>(c)] + ia),
                                static_cast<int>(offset[static_cast<std::size_t>(d)] + ib));
          }
  if (corners.count_sets(boost::counting_iterator<int>(0),
                         boost::counting_iterator<int>(static_cast<int>(offset.back()))) !=
      static_cast<std::size_t>(t.vertex_count))
    throw InvariantError("cells share a vertex without sharing an edge");

  std::vector<int> roots;
  for (std::size_t i = 0; i < t.cells.size(); ++i)
    if (t.cells[i].label == "first")
      roots.push_back(static_cast<int>(i));
  if (roots.empty())
    throw InvariantError("complex has no fundamental-domain cell");
  auto rank = [&](int c) {
    const auto &x = t.cells[static_cast<std::size_t>(c)];
    return std::make_tuple(x.slot, x.sides(), x.label);
  };
  std::sort(roots.begin(), roots.end(), [&](int a, int b) { return rank(a) < rank(b); });

  // Breadth-first walk entering every cell through a shared edge and reading
  // its boundary in the direction that edge was read; vertices are numbered
  // in order of discovery.
  auto labelled = [&](bool flip) {
    std::vector<int> label(static_cast<std::size_t>(t.vertex_count), -1);
    std::vector<bool> seen(t.cells.size(), false);
    int next = 0;
    auto name = [&](int v) {
      auto &l = label[static_cast<std::size_t>(v)];
      if (l < 0)
        l = next++;
      return l;
    };
    struct Visit {
      int cell, side;
      bool fwd;
    };
    std::vector<Visit> queue;
    const auto &r = t.cells[static_cast<std::size_t>(roots[0])].vertices;
    const int first = flip ? r[1] : r[0];
    for (auto [c, k] : at.at(std::minmax(r[0], r[1]))) {
      const auto &v = t.cells[static_cast<std::size_t>(c)].vertices;
      queue.push_back({c, k, v[static_cast<std::size_t>(k)] == first});
      seen[static_cast<std::size_t>(c)] = true;
    }
    std::stable_sort(queue.begin(), queue.end(),
                     [&](const Visit &a, const Visit &b) { return rank(a.cell) < rank(b.cell); });
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const auto [c, p, fwd] = queue[qi];
      const auto &v = t.cells[static_cast<std::size_t>(c)].vertices;
      const int s = static_cast<int>(v.size());
      for (int step = 0; step < s; ++step) {
        const int i = mod(fwd ? p + step : p - step, s);
        int x = v[static_cast<std::size_t>(i)], y = v[static_cast<std::size_t>((i + 1) % s)];
        if (!fwd)
          std::swap(x, y);
        name(x);
        name(y);
        std::vector<Visit> found;
        for (auto [d, k] : at.at(std::minmax(x, y))) {
          if (seen[static_cast<std::size_t>(d)])
            continue;
          seen[static_cast<std::size_t>(d)] = true;
          found.push_back({d, k, t.cells[static_cast<std::size_t>(d)].vertices[static_cast<std::size_t>(k)] == x});
        }
        std::stable_sort(found.begin(), found.end(),
                         [&](const Visit &a, const Visit &b) { return rank(a.cell) < rank(b.cell); });
        queue.insert(queue.end(), found.begin(), found.end());
      }
    }
    if (next != t.vertex_count)
      throw InvariantError("complex is not connected");
    std::vector<Edge> edges;
    for (const auto &[e, cs] : at)
      edges.push_back(std::minmax(label[static_cast<std::size_t>(e.first)],
                                  label[static_cast<std::size_t>(e.second)]));
    std::sort(edges.begin(), edges.end());
    std::string out = std::to_string(t.vertex_count) + ";";
    for (auto [a, b] : edges)
      out += std::to_string(a) + "-" + std::to_string(b) + ",";
    return out;
  };
  return std::min(labelled(false), labelled(true));
}

std::vector<std::size_t> refinement_invariant(const TilingComplex &t) {
  const auto sk = one_skeleton(t);
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(sk.vertices));
  for (auto [a, b] : sk.edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  std::vector<int> colour(adj.size());
  for (std::size_t v = 0; v < adj.size(); ++v)
    colour[v] = static_cast<int>(adj[v].size());
  std::size_t classes = 0;
  std::vector<std::size_t> histogram;
  std::vector<std::vector<int>> sig(adj.size());
  for (;;) {
    std::unordered_map<std::vector<int>, int, boost::hash<std::vector<int>>> ids;
    for (std::size_t v = 0; v < adj.size(); ++v) {
      auto &s = sig[v];
      s.clear();
      for (int w : adj[v])
        s.push_back(colour[static_cast<std::size_t>(w)]);
      std::sort(s.begin(), s.end());
      s.push_back(colour[v]);
      ids.try_emplace(s, 0);
    }
    // number classes by sorted signature so the colouring is canonical
    std::vector<const std::vector<int> *> keys;
    for (const auto &[k, x] : ids)
      keys.push_back(&k);
    std::sort(keys.begin(), keys.end(), [](auto *a, auto *b) { return *a < *b; });
    for (std::size_t i = 0; i < keys.size(); ++i)
      ids[*keys[i]] = static_cast<int>(i);
    for (std::size_t v = 0; v < adj.size(); ++v)
      colour[v] = ids.at(sig[v]);
    if (ids.size() == classes)
      break;
    classes = ids.size();
  }
  histogram.assign(classes, 0);
  for (int c : colour)
    ++histogram[static_cast<std::size_t>(c)];
  return histogram;
}

std::vector<std::string> tiling_violations(const TilingComplex &t) {
  std::vector<std::string> out;
  std::set<std::pair<int, int>> branching;
  for (const auto &e : t.branching) {
    branching.insert(std::minmax(e.u, e.w));
    if (e.frontier())
      continue;
    std::set<int> slots;
    std::set<std::string> regions;
    for (int c : e.cells) {
      slots.insert(t.cells[static_cast<std::size_t>(c)].slot);
      regions.insert(t.cells[static_cast<std::size_t>(c)].region);
    }
    if (e.cells.size() != 4 || slots.size() != 4 || regions.size() != 4)
      out.push_back("branching edge " + std::to_string(e.u) + "-" + std::to_string(e.w) +
                    " does not bound four regions");
  }
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    const auto &c = t.cells[i];
    const auto id = "cell " + std::to_string(i) + " (" + c.type_key() + ")";
    if (c.sides() < 9 || c.sides() > t.bound)
      out.push_back(id + " has " + std::to_string(c.sides()) + " sides, outside [9, " +
                    std::to_string(t.bound) + "]");
    auto v = c.vertices;
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end())
      out.push_back(id + " repeats a vertex");
    for (int k : c.branching_sides) {
      const auto e = std::minmax(c.vertices[static_cast<std::size_t>(k)],
                                 c.vertices[static_cast<std::size_t>((k + 1) % c.vertices.size())]);
      if (!branching.count(e))
        out.push_back(id + " has an unrecorded branching side");
    }
  }
  return out;
}

std::set<std::string> census_types(const TilingComplex &t) {
  return {t.types.begin(), t.types.end()};
}

int isometry_type_census(const TilingComplex &t) { return static_cast<int>(census_types(t).size()); }

std::vector<CellConstant> cell_constants(const TilingPair &p, std::int64_t samples, std::uint64_t seed) {
  std::map<std::pair<std::string, std::string>, std::pair<int, int>> groups; // -> (first cell, count)
  for (std::size_t i = 0; i < p.first.cells.size(); ++i) {
    const auto &b = p.second.cells[static_cast<std::size_t>(p.iso.cells[i])];
    auto [it, fresh] = groups.try_emplace({p.first.cells[i].type_key(), b.type_key()}, static_cast<int>(i), 0);
    ++it->second.second;
  }
  std::vector<CellConstant> out;
  for (const auto &[key, v] : groups) {
    const auto &a = p.first.cells[static_cast<std::size_t>(v.first)];
    const auto &b = p.second.cells[static_cast<std::size_t>(p.iso.cells[static_cast<std::size_t>(v.first)])];
    const auto map = edge_dilation_map(cyclic_polygon(a.lengths), cyclic_polygon(b.lengths), samples, seed);
    out.push_back({key.first, key.second, v.second, map.estimate});
  }
  return out;
}

} // namespace amalgam
