#include "amalgam/covers.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "amalgam/classify.hpp"

namespace amalgam {

namespace {

const std::vector<int> &perm_for(const GraphCover &c, const std::string &gen) {
  auto it = c.action.find(gen);
  if (it == c.action.end())
    throw ValidationError("word", "unknown generator " + gen);
  return it->second;
}

std::vector<int> inverse(const std::vector<int> &p) {
  std::vector<int> inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    inv[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return inv;
}

std::vector<std::int64_t> scaled_pieces(const Amalgam &x, std::int64_t d) {
  std::vector<std::int64_t> out;
  for (auto k : quadruple(x))
    out.push_back(d * k);
  return out;
}

std::vector<PieceCover> build_y(const Amalgam &x, std::int64_t d) {
  const auto desc = describe(x);
  std::vector<PieceCover> y;
  auto add = [&](const SideDescription &side, const std::string &name) {
    std::vector<std::int64_t> base;
    if (side.kind == CurveSpec::Kind::NonSeparating)
      base = {side.chis[0] / 2, side.chis[0] / 2};
    else
      base = side.chis;
    for (auto k : base)
      y.push_back({name, k, d * k, {{"red", d / 2}, {"blue", d / 2}}});
  };
  add(desc.left, "left");
  add(desc.right, "right");
  return y;
}

} // namespace

std::vector<std::string> surface_generators(int g) {
  std::vector<std::string> out;
  for (int i = 1; i <= g; ++i) {
    out.push_back("a" + std::to_string(i));
    out.push_back("b" + std::to_string(i));
  }
  return out;
}

Word boundary_word(int g) {
  if (g < 1)
    throw ValidationError("g", "genus must be positive");
  Word w;
  for (int i = 1; i <= g; ++i) {
    const auto a = "a" + std::to_string(i);
    const auto b = "b" + std::to_string(i);
    w.insert(w.end(), {{a, 1}, {b, 1}, {a, -1}, {b, -1}});
  }
  return w;
}

Word power(const Word &w, int k) {
  Word out;
  for (int i = 0; i < k; ++i)
    out.insert(out.end(), w.begin(), w.end());
  return out;
}

std::string to_string(const Word &w) {
  std::string out;
  for (const auto &l : w) {
    if (!out.empty())
      out += ' ';
    out += l.gen;
    if (l.exp < 0)
      out += "^-1";
  }
  return out;
}

GraphCover build_odd_cover(int g, int n) {
  if (g < 1)
    throw ValidationError("g", "genus must be positive");
  if (n < 1 || n % 2 == 0)
    throw ValidationError("n", "degree must be odd and positive");
  GraphCover c;
  c.degree = n;
  c.generators = surface_generators(g);
  std::vector<int> cycle(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    cycle[static_cast<std::size_t>(i)] = (i + 1) % n;
  std::vector<int> a1(static_cast<std::size_t>(n));
  a1[0] = 0;
  for (int i = 1; 2 * i <= n - 1; ++i) {
    a1[static_cast<std::size_t>(2 * i - 1)] = 2 * i;
    a1[static_cast<std::size_t>(2 * i)] = 2 * i - 1;
  }
  for (const auto &gen : c.generators)
    c.action[gen] = gen == "a1" ? a1 : cycle;
  return c;
}

CoverReport verify_cover(const GraphCover &c) {
  CoverReport r;
  r.degree = c.degree;
  const int rank = static_cast<int>(c.generators.size());
  r.base_chi = 1 - rank;
  r.chi = c.degree * r.base_chi;
  if (c.degree < 1)
    r.errors.push_back("degree must be positive");
  for (const auto &gen : c.generators) {
    auto it = c.action.find(gen);
    if (it == c.action.end()) {
      r.errors.push_back("generator " + gen + " has no action");
      continue;
    }
    const auto &p = it->second;
    if (static_cast<int>(p.size()) != c.degree) {
      r.errors.push_back("generator " + gen + " acts on the wrong number of vertices");
      continue;
    }
    std::vector<int> hits(p.size(), 0);
    bool in_range = true;
    for (int v : p) {
      if (v < 0 || v >= c.degree)
        in_range = false;
      else
        ++hits[static_cast<std::size_t>(v)];
    }
    if (!in_range || std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; }))
      r.errors.push_back("generator " + gen + " is not a bijection");
  }
  for (const auto &[gen, _] : c.action)
    if (std::find(c.generators.begin(), c.generators.end(), gen) == c.generators.end())
      r.errors.push_back("action names unknown generator " + gen);
  if (r.errors.empty() && c.degree >= 1) {
    std::vector<char> seen(static_cast<std::size_t>(c.degree), 0);
    std::vector<std::vector<int>> moves;
    for (const auto &[gen, p] : c.action) {
      moves.push_back(p);
      moves.push_back(inverse(p));
    }
    std::queue<int> todo;
    todo.push(0);
    seen[0] = 1;
    int count = 1;
    while (!todo.empty()) {
      int v = todo.front();
      todo.pop();
      for (const auto &p : moves) {
        int w = p[static_cast<std::size_t>(v)];
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          ++count;
          todo.push(w);
        }
      }
    }
    r.transitive = count == c.degree;
    if (!r.transitive)
      r.errors.push_back("action is not transitive");
  }
  r.valid = r.errors.empty();
  return r;
}

int word_action(const GraphCover &c, const Word &w, int start) {
  std::map<std::string, std::vector<int>> inverses;
  int v = start;
  for (const auto &l : w) {
    const auto &p = perm_for(c, l.gen);
    if (l.exp > 0) {
      v = p[static_cast<std::size_t>(v)];
    } else {
      auto it = inverses.find(l.gen);
      if (it == inverses.end())
        it = inverses.emplace(l.gen, inverse(p)).first;
      v = it->second[static_cast<std::size_t>(v)];
    }
  }
  return v;
}

std::vector<int> boundary_components(const GraphCover &c, const Word &w) {
  std::vector<int> image(static_cast<std::size_t>(c.degree));
  for (int v = 0; v < c.degree; ++v)
    image[static_cast<std::size_t>(v)] = word_action(c, w, v);
  std::vector<char> seen(image.size(), 0);
  std::vector<int> lengths;
  for (int v = 0; v < c.degree; ++v) {
    if (seen[static_cast<std::size_t>(v)])
      continue;
    int len = 0;
    for (int u = v; !seen[static_cast<std::size_t>(u)]; u = image[static_cast<std::size_t>(u)]) {
      seen[static_cast<std::size_t>(u)] = 1;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

int first_return(const GraphCover &c, const Word &w, int start) {
  int v = word_action(c, w, start);
  int k = 1;
  while (v != start) {
    v = word_action(c, w, v);
    ++k;
    if (k > c.degree)
      throw InvariantError("word orbit longer than the degree");
  }
  return k;
}

std::vector<int> simulated_labels(const GraphCover &c, int n) {
  const Word commutator{{"a1", 1}, {"b1", 1}, {"a1", -1}, {"b1", -1}};
  std::vector<int> out{0};
  int v = 0;
  for (int k = 1; k <= n; ++k) {
    v = word_action(c, commutator, v);
    out.push_back(v);
  }
  return out;
}

std::vector<int> formula_labels(int n) {
  std::vector<int> out;
  for (int k = 0; k <= n; ++k) {
    if (k % n == 0)
      out.push_back(0);
    else if (k < n / 2)
      out.push_back(2 * k - 1);
    else
      out.push_back(2 * n - 2 * k);
  }
  return out;
}

ExistCovers existcovers(const Amalgam &x1, const Amalgam &x2) {
  require_valid(x1);
  require_valid(x2);
  const std::int64_t c1 = euler_of_amalgam(x1);
  const std::int64_t c2 = euler_of_amalgam(x2);
  ExistCovers e;
  e.L = -2 * std::lcm(-c1, -c2);
  e.d1 = e.L / c1;
  e.d2 = e.L / c2;
  e.y1 = build_y(x1, e.d1);
  e.y2 = build_y(x2, e.d2);
  for (const auto &[y, d] : {std::pair{&e.y1, e.d1}, std::pair{&e.y2, e.d2}}) {
    auto errors = check_piece_covers(*y, d, e.L);
    if (!errors.empty())
      throw InvariantError(errors.front());
  }
  return e;
}

std::vector<std::string> check_piece_covers(const std::vector<PieceCover> &y,
                                            std::int64_t degree,
                                            std::int64_t total_chi) {
  std::vector<std::string> errors;
  if (degree % 2 != 0)
    errors.push_back("cover degree is odd");
  if (y.size() != 4)
    errors.push_back("expected four pieces");
  std::int64_t sum = 0;
  std::map<std::pair<std::string, std::string>, std::int64_t> per_side_color;
  for (const auto &p : y) {
    sum += p.chi;
    if (p.chi != degree * p.base_chi)
      errors.push_back("piece euler characteristic is not degree times base");
    int red = 0, blue = 0;
    for (const auto &b : p.boundaries) {
      red += b.color == "red";
      blue += b.color == "blue";
      per_side_color[{p.side, b.color}] += b.degree;
    }
    if (red != 1 || blue != 1)
      errors.push_back("piece must have one red and one blue boundary");
  }
  if (sum != total_chi)
    errors.push_back("piece euler characteristics do not sum to L");
  for (const auto &[key, total] : per_side_color)
    if (total != degree)
      errors.push_back("boundary degrees on " + key.first + " " + key.second +
                       " do not sum to the degree");
  return errors;
}

std::optional<CommonCover> common_cover(const Amalgam &a1, const Amalgam &a2) {
  if (!commensurable(a1, a2))
    return std::nullopt;
  const auto e = existcovers(a1, a2);
  auto s1 = scaled_pieces(a1, e.d1);
  auto s2 = scaled_pieces(a2, e.d2);
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  if (s1 != s2)
    throw InvariantError("commensurable amalgams with unmatched piece covers");
  return CommonCover{s1, e.d1, e.d2, e.L};
}

} // namespace amalgam
