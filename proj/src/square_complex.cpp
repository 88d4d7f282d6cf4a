#include "amalgam/square_complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include <boost/pending/disjoint_sets.hpp>

#include "amalgam/core.hpp"

namespace amalgam {

int SquareComplex::add_vertex() {
  incidence.emplace_back();
  return vertex_count++;
}

int SquareComplex::add_edge(int u, int w, std::string label) {
  const int e = static_cast<int>(edges.size());
  edges.push_back({u, w, std::move(label)});
  incidence[static_cast<std::size_t>(u)].push_back(2 * e);
  incidence[static_cast<std::size_t>(w)].push_back(2 * e + 1);
  return e;
}

void SquareComplex::add_square(std::array<int, 4> v, std::array<int, 4> e,
                               std::array<bool, 4> fwd) {
  squares.push_back({v, e, fwd});
}

void SquareComplex::add_square(std::array<int, 4> v, std::array<int, 4> e) {
  std::array<bool, 4> fwd{};
  for (std::size_t k = 0; k < 4; ++k) {
    const auto &ed = edges[static_cast<std::size_t>(e[k])];
    const int a = v[k], b = v[(k + 1) % 4];
    if (ed.u == a && ed.w == b)
      fwd[k] = true;
    else if (ed.u == b && ed.w == a)
      fwd[k] = false;
    else
      throw InvariantError("square edge does not join its corners");
  }
  add_square(v, e, fwd);
}

long long SquareComplex::euler() const {
  return static_cast<long long>(vertex_count) - static_cast<long long>(edges.size()) +
         static_cast<long long>(squares.size());
}

HyperplaneData hyperplanes(const SquareComplex &sq) {
  const std::size_t n = sq.edges.size();
  boost::disjoint_sets_with_storage<> ds(n);
  for (std::size_t e = 0; e < n; ++e)
    ds.make_set(static_cast<int>(e));
  for (const auto &s : sq.squares) {
    ds.union_set(s.e[0], s.e[2]);
    ds.union_set(s.e[1], s.e[3]);
  }
  HyperplaneData h;
  h.edge_class.assign(n, -1);
  std::map<int, int> index;
  for (std::size_t e = 0; e < n; ++e) {
    const int root = static_cast<int>(ds.find_set(static_cast<int>(e)));
    auto [it, fresh] = index.emplace(root, static_cast<int>(h.classes.size()));
    if (fresh)
      h.classes.emplace_back();
    h.edge_class[e] = it->second;
    h.classes[static_cast<std::size_t>(it->second)].edges.push_back(static_cast<int>(e));
  }
  for (auto &c : h.classes) {
    std::set<std::string> labels;
    for (int e : c.edges)
      labels.insert(sq.edges[static_cast<std::size_t>(e)].label);
    for (const auto &l : labels)
      c.name += (c.name.empty() ? "" : "|") + l;
  }

  // transverse orientation: t(e2) = t(e0) xor (fwd0 == fwd2), same for e1, e3
  std::vector<std::vector<std::pair<int, int>>> rel(n);
  for (const auto &s : sq.squares) {
    for (int k : {0, 1}) {
      const int a = s.e[static_cast<std::size_t>(k)], b = s.e[static_cast<std::size_t>(k + 2)];
      const int p = s.fwd[static_cast<std::size_t>(k)] == s.fwd[static_cast<std::size_t>(k + 2)];
      rel[static_cast<std::size_t>(a)].push_back({b, p});
      rel[static_cast<std::size_t>(b)].push_back({a, p});
    }
  }
  std::vector<int> t(n, -1);
  for (std::size_t start = 0; start < n; ++start) {
    if (t[start] >= 0)
      continue;
    t[start] = 0;
    std::queue<int> todo;
    todo.push(static_cast<int>(start));
    while (!todo.empty()) {
      const int a = todo.front();
      todo.pop();
      for (auto [b, p] : rel[static_cast<std::size_t>(a)]) {
        const int want = t[static_cast<std::size_t>(a)] ^ p;
        auto &tb = t[static_cast<std::size_t>(b)];
        if (tb < 0) {
          tb = want;
          todo.push(b);
        } else if (tb != want) {
          h.classes[static_cast<std::size_t>(h.edge_class[static_cast<std::size_t>(a)])].two_sided =
              false;
        }
      }
    }
  }

  const std::size_t m = h.classes.size();
  h.crossing.assign(m, std::vector<char>(m, 0));
  for (const auto &s : sq.squares) {
    const int a = h.edge_class[static_cast<std::size_t>(s.e[0])];
    const int b = h.edge_class[static_cast<std::size_t>(s.e[1])];
    if (a == b)
      h.classes[static_cast<std::size_t>(a)].embedded = false;
    h.crossing[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
    h.crossing[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 1;
  }
  return h;
}

std::vector<std::array<int, 2>> link_edges(const SquareComplex &sq, int v) {
  const auto &inc = sq.incidence[static_cast<std::size_t>(v)];
  auto position = [&](int end) {
    auto it = std::find(inc.begin(), inc.end(), end);
    if (it == inc.end())
      throw InvariantError("square corner uses an edge-end missing from the incidence list");
    return static_cast<int>(it - inc.begin());
  };
  std::vector<std::array<int, 2>> out;
  for (const auto &s : sq.squares) {
    for (std::size_t k = 0; k < 4; ++k) {
      if (s.v[k] != v)
        continue;
      const std::size_t prev = (k + 3) % 4;
      const int in = 2 * s.e[prev] + (s.fwd[prev] ? 1 : 0);
      const int out_end = 2 * s.e[k] + (s.fwd[k] ? 0 : 1);
      out.push_back({position(in), position(out_end)});
    }
  }
  return out;
}

std::vector<bool> check_link_condition(const SquareComplex &sq) {
  std::vector<bool> ok(static_cast<std::size_t>(sq.vertex_count), true);
  for (int v = 0; v < sq.vertex_count; ++v) {
    const auto links = link_edges(sq, v);
    std::vector<std::set<int>> adj(sq.incidence[static_cast<std::size_t>(v)].size());
    bool good = true;
    for (auto [a, b] : links) {
      if (a == b || adj[static_cast<std::size_t>(a)].count(b))
        good = false;
      adj[static_cast<std::size_t>(a)].insert(b);
      adj[static_cast<std::size_t>(b)].insert(a);
    }
    for (auto [a, b] : links) {
      for (int c : adj[static_cast<std::size_t>(a)])
        if (c != b && adj[static_cast<std::size_t>(b)].count(c))
          good = false;
    }
    ok[static_cast<std::size_t>(v)] = good;
  }
  return ok;
}

bool SpecialnessReport::special() const {
  auto all = [](const std::vector<bool> &f) {
    return std::all_of(f.begin(), f.end(), [](bool b) { return b; });
  };
  return all(two_sided) && all(embedded) && all(link_girth_ok) && self_osculations.empty() &&
         inter_osculations.empty();
}

SpecialnessReport check_special(const SquareComplex &sq) {
  const auto h = hyperplanes(sq);
  SpecialnessReport r;
  for (const auto &c : h.classes) {
    r.hyperplanes.push_back(c.name);
    r.two_sided.push_back(c.two_sided);
    r.embedded.push_back(c.embedded);
  }
  r.link_girth_ok = check_link_condition(sq);
  for (int v = 0; v < sq.vertex_count; ++v) {
    const auto &inc = sq.incidence[static_cast<std::size_t>(v)];
    std::set<std::pair<int, int>> joined;
    for (auto [a, b] : link_edges(sq, v)) {
      joined.insert({std::min(a, b), std::max(a, b)});
    }
    for (int i = 0; i < static_cast<int>(inc.size()); ++i) {
      for (int j = i + 1; j < static_cast<int>(inc.size()); ++j) {
        // the two ends of one loop edge do not osculate
        if (joined.count({i, j}) ||
            inc[static_cast<std::size_t>(i)] / 2 == inc[static_cast<std::size_t>(j)] / 2)
          continue;
        const int ci = h.edge_class[static_cast<std::size_t>(inc[static_cast<std::size_t>(i)] / 2)];
        const int cj = h.edge_class[static_cast<std::size_t>(inc[static_cast<std::size_t>(j)] / 2)];
        const auto &ni = h.classes[static_cast<std::size_t>(ci)].name;
        const auto &nj = h.classes[static_cast<std::size_t>(cj)].name;
        if (ci == cj)
          r.self_osculations.push_back({ni, v, {i, j}});
        else if (h.crossing[static_cast<std::size_t>(ci)][static_cast<std::size_t>(cj)])
          r.inter_osculations.push_back({{ni, nj}, v, {i, j}});
      }
    }
  }
  return r;
}

SquareComplex barycentric_subdivide(const SquareComplex &sq) {
  const int V = sq.vertex_count;
  const int E = static_cast<int>(sq.edges.size());
  SquareComplex out;
  for (int i = 0; i < V + E + static_cast<int>(sq.squares.size()); ++i)
    out.add_vertex();
  for (int e = 0; e < E; ++e) {
    const auto &ed = sq.edges[static_cast<std::size_t>(e)];
    out.add_edge(ed.u, V + e, ed.label + "-");
    out.add_edge(V + e, ed.w, ed.label + "+");
  }
  for (std::size_t s = 0; s < sq.squares.size(); ++s) {
    const auto &q = sq.squares[s];
    for (std::size_t k = 0; k < 4; ++k) {
      const std::size_t next = (k + 1) % 4;
      const auto &across = sq.edges[static_cast<std::size_t>(q.e[next])];
      out.add_edge(V + q.e[k], V + E + static_cast<int>(s),
                   across.label + (q.fwd[next] ? "-" : "+"));
    }
  }
  for (int v = 0; v < V; ++v) {
    auto &inc = out.incidence[static_cast<std::size_t>(v)];
    inc.clear();
    for (int end : sq.incidence[static_cast<std::size_t>(v)]) {
      const int e = end / 2;
      inc.push_back(end % 2 == 0 ? 2 * (2 * e) : 2 * (2 * e + 1) + 1);
    }
  }
  for (std::size_t s = 0; s < sq.squares.size(); ++s) {
    const auto &q = sq.squares[s];
    const int c = V + E + static_cast<int>(s);
    for (std::size_t k = 0; k < 4; ++k) {
      const std::size_t prev = (k + 3) % 4;
      const int ek = q.e[k], ep = q.e[prev];
      const int center_k = 2 * E + 4 * static_cast<int>(s) + static_cast<int>(k);
      const int center_p = 2 * E + 4 * static_cast<int>(s) + static_cast<int>(prev);
      const int half_k = q.fwd[k] ? 2 * ek : 2 * ek + 1;
      const int half_p = q.fwd[prev] ? 2 * ep + 1 : 2 * ep;
      out.add_square({q.v[k], V + ek, c, V + ep}, {half_k, center_k, center_p, half_p},
                     {q.fwd[k], true, false, q.fwd[prev]});
    }
  }
  return out;
}

SquareComplex lift_complex(const SquareComplex &sq, const std::vector<int> &edge_voltage) {
  if (edge_voltage.size() != sq.edges.size())
    throw ValidationError("voltage", "one voltage per edge is required");
  auto vol = [&](int e) { return edge_voltage[static_cast<std::size_t>(e)] & 1; };
  SquareComplex out;
  for (int i = 0; i < 2 * sq.vertex_count; ++i)
    out.add_vertex();
  for (std::size_t e = 0; e < sq.edges.size(); ++e) {
    const auto &ed = sq.edges[e];
    for (int s = 0; s < 2; ++s)
      out.add_edge(2 * ed.u + s, 2 * ed.w + ((s + vol(static_cast<int>(e))) % 2), ed.label);
  }
  for (int v = 0; v < sq.vertex_count; ++v) {
    for (int s = 0; s < 2; ++s) {
      auto &inc = out.incidence[static_cast<std::size_t>(2 * v + s)];
      inc.clear();
      for (int end : sq.incidence[static_cast<std::size_t>(v)]) {
        const int e = end / 2;
        const int sheet = end % 2 == 0 ? s : (s + vol(e)) % 2;
        inc.push_back(2 * (2 * e + sheet) + end % 2);
      }
    }
  }
  for (const auto &q : sq.squares) {
    for (int s = 0; s < 2; ++s) {
      Square lifted;
      int t = s;
      for (std::size_t k = 0; k < 4; ++k) {
        const int e = q.e[k];
        lifted.v[k] = 2 * q.v[k] + t;
        lifted.e[k] = 2 * e + (q.fwd[k] ? t : (t + vol(e)) % 2);
        lifted.fwd[k] = q.fwd[k];
        t = (t + vol(e)) % 2;
      }
      if (t != s)
        throw ValidationError("voltage", "voltage is not a cocycle around a square");
      out.squares.push_back(lifted);
    }
  }
  return out;
}

namespace {

// Colour refinement; the new colours are ranks of (colour, neighbour colours).
std::vector<int> refine(const std::vector<std::vector<int>> &adj, std::vector<int> colors) {
  const std::size_t n = adj.size();
  std::size_t classes = std::set<int>(colors.begin(), colors.end()).size();
  while (true) {
    std::vector<std::vector<int>> sig(n);
    for (std::size_t i = 0; i < n; ++i) {
      sig[i].push_back(colors[i]);
      std::vector<int> nb;
      for (int j : adj[i])
        nb.push_back(colors[static_cast<std::size_t>(j)]);
      std::sort(nb.begin(), nb.end());
      sig[i].insert(sig[i].end(), nb.begin(), nb.end());
    }
    std::vector<std::vector<int>> distinct(sig);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t i = 0; i < n; ++i)
      colors[i] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[i]) -
                                   distinct.begin());
    if (distinct.size() == classes)
      return colors;
    classes = distinct.size();
  }
}

struct Canonizer {
  const std::vector<std::vector<int>> &adj;
  const std::vector<int> &input;
  std::vector<int> best;

  std::vector<int> leaf(const std::vector<int> &colors) const {
    const std::size_t n = adj.size();
    std::vector<int> cert{static_cast<int>(n)};
    std::vector<int> node_at(n);
    for (std::size_t i = 0; i < n; ++i)
      node_at[static_cast<std::size_t>(colors[i])] = static_cast<int>(i);
    for (std::size_t k = 0; k < n; ++k)
      cert.push_back(input[static_cast<std::size_t>(node_at[k])]);
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (int j : adj[i])
        if (colors[i] < colors[static_cast<std::size_t>(j)])
          edges.push_back({colors[i], colors[static_cast<std::size_t>(j)]});
    std::sort(edges.begin(), edges.end());
    for (auto [a, b] : edges) {
      cert.push_back(a);
      cert.push_back(b);
    }
    return cert;
  }

  void search(const std::vector<int> &colors) {
    std::map<int, int> size;
    for (int c : colors)
      ++size[c];
    int target = -1;
    for (auto [c, k] : size) {
      if (k > 1 && (target < 0 || k < size[target]))
        target = c;
    }
    if (target < 0) {
      auto cert = leaf(colors);
      if (best.empty() || cert < best)
        best = std::move(cert);
      return;
    }
    for (std::size_t x = 0; x < colors.size(); ++x) {
      if (colors[x] != target)
        continue;
      std::vector<int> split(colors.size());
      for (std::size_t i = 0; i < colors.size(); ++i)
        split[i] = 2 * colors[i] + (colors[i] == target && i != x ? 1 : 0);
      search(refine(adj, split));
    }
  }
};

} // namespace

std::vector<int> graph_certificate(const std::vector<std::vector<int>> &adjacency,
                                   const std::vector<int> &colors) {
  Canonizer c{adjacency, colors, {}};
  c.search(refine(adjacency, colors));
  if (c.best.empty())
    c.best = {0};
  return c.best;
}

std::vector<int> complex_certificate(const SquareComplex &sq) {
  const int V = sq.vertex_count;
  const int E = static_cast<int>(sq.edges.size());
  const int n = V + E + static_cast<int>(sq.squares.size());
  std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
  std::vector<int> colors(static_cast<std::size_t>(n), 0);
  auto link = [&](int a, int b) {
    adj[static_cast<std::size_t>(a)].insert(b);
    adj[static_cast<std::size_t>(b)].insert(a);
  };
  for (int e = 0; e < E; ++e) {
    const auto &ed = sq.edges[static_cast<std::size_t>(e)];
    colors[static_cast<std::size_t>(V + e)] = ed.u == ed.w ? 3 : 1;
    link(V + e, ed.u);
    link(V + e, ed.w);
  }
  for (std::size_t s = 0; s < sq.squares.size(); ++s) {
    const int node = V + E + static_cast<int>(s);
    colors[static_cast<std::size_t>(node)] = 2;
    for (int e : sq.squares[s].e)
      link(node, V + e);
  }
  std::vector<std::vector<int>> lists;
  for (const auto &a : adj)
    lists.emplace_back(a.begin(), a.end());
  return graph_certificate(lists, colors);
}

bool isomorphic(const SquareComplex &a, const SquareComplex &b) {
  if (a.vertex_count != b.vertex_count || a.edges.size() != b.edges.size() ||
      a.squares.size() != b.squares.size())
    return false;
  return complex_certificate(a) == complex_certificate(b);
}

} // namespace amalgam
