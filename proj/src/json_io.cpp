#include "amalgam/json_io.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "amalgam/core.hpp"
#include "amalgam/schema.hpp"

namespace amalgam {

namespace {

const Json &field(const Json &j, const char *key, const std::string &path) {
  if (!j.is_object() || !j.contains(key))
    throw ValidationError(path + "." + key, "missing");
  return j.at(key);
}

int int_field(const Json &j, const std::string &path) {
  if (!j.is_number_integer())
    throw ValidationError(path, "expected an integer");
  return j.get<int>();
}

std::string string_field(const Json &j, const std::string &path) {
  if (!j.is_string())
    throw ValidationError(path, "expected a string");
  return j.get<std::string>();
}

} // namespace

CurveSystem curve_system_from_json(const Json &j) {
  require_schema(j, "common.json#/definitions/curve_system");
  CurveSystem cs;
  cs.genus = int_field(field(field(j, "surface", ""), "genus", ".surface"), "surface.genus");
  if (cs.genus < 1)
    throw ValidationError("surface.genus", "genus must be at least one");
  const auto &curves = field(j, "curves", "");
  if (!curves.is_array())
    throw ValidationError("curves", "expected an array");
  for (std::size_t i = 0; i < curves.size(); ++i) {
    auto name = string_field(curves[i], "curves[" + std::to_string(i) + "]");
    if (std::find(cs.curves.begin(), cs.curves.end(), name) != cs.curves.end())
      throw ValidationError("curves", "duplicate curve " + name);
    cs.curves.push_back(name);
  }

  struct RawSide {
    int curve, index, orient;
  };
  const auto &regions = field(j, "regions", "");
  if (!regions.is_array())
    throw ValidationError("regions", "expected an array");
  std::vector<std::vector<RawSide>> raw;
  std::vector<int> count(cs.curves.size(), 0);
  for (std::size_t r = 0; r < regions.size(); ++r) {
    const auto path = "regions[" + std::to_string(r) + "]";
    if (!regions[r].is_array())
      throw ValidationError(path, "expected an array of sides");
    raw.emplace_back();
    for (std::size_t k = 0; k < regions[r].size(); ++k) {
      const auto sp = path + "[" + std::to_string(k) + "]";
      const auto &side = regions[r][k];
      const auto &arc = field(side, "arc", sp);
      if (!arc.is_array() || arc.size() != 2)
        throw ValidationError(sp + ".arc", "expected [curve, index]");
      const auto name = string_field(arc[0], sp + ".arc[0]");
      const int index = int_field(arc[1], sp + ".arc[1]");
      const int orient = int_field(field(side, "orient", sp), sp + ".orient");
      auto it = std::find(cs.curves.begin(), cs.curves.end(), name);
      if (it == cs.curves.end())
        throw ValidationError(sp + ".arc[0]", "unknown curve " + name);
      if (index < 0)
        throw ValidationError(sp + ".arc[1]", "arc index must be non-negative");
      if (orient != 1 && orient != -1)
        throw ValidationError(sp + ".orient", "orientation must be 1 or -1");
      const int c = static_cast<int>(it - cs.curves.begin());
      count[static_cast<std::size_t>(c)] = std::max(count[static_cast<std::size_t>(c)], index + 1);
      raw.back().push_back({c, index, orient});
    }
  }
  std::vector<int> offset(cs.curves.size(), 0);
  for (std::size_t c = 0; c < cs.curves.size(); ++c) {
    offset[c] = static_cast<int>(cs.arcs.size());
    for (int i = 0; i < count[c]; ++i)
      cs.arcs.push_back({static_cast<int>(c), i});
  }
  for (const auto &sides : raw) {
    cs.regions.emplace_back();
    for (const auto &s : sides)
      cs.regions.back().push_back({offset[static_cast<std::size_t>(s.curve)] + s.index, s.orient});
  }
  return cs;
}

Json to_json(const CurveSystem &cs) {
  Json regions = Json::array();
  for (const auto &sides : cs.regions) {
    Json r = Json::array();
    for (const auto &s : sides) {
      const auto &a = cs.arcs.at(static_cast<std::size_t>(s.arc));
      r.push_back({{"arc", {cs.curves.at(static_cast<std::size_t>(a.curve)), a.index}},
                   {"orient", s.orient}});
    }
    regions.push_back(r);
  }
  return {{"surface", {{"genus", cs.genus}}}, {"curves", cs.curves}, {"regions", regions}};
}

Json to_json(const Rational &r) {
  return {{"num", r.numerator()}, {"den", r.denominator()}};
}

Rational rational_from_json(const Json &j) {
  require_schema(j, "common.json#/definitions/rational");
  return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
}

namespace {

std::string kind_name(CurveSpec::Kind k) {
  return k == CurveSpec::Kind::Separating ? "separating" : "nonseparating";
}

CurveSpec curve_from_json(const Json &j) {
  if (j.at("kind") == "nonseparating") {
    if (j.contains("split"))
      throw ValidationError("split", "a non-separating curve has no split");
    return CurveSpec::nonseparating();
  }
  if (!j.contains("split"))
    throw ValidationError("split", "a separating curve needs a split");
  return CurveSpec::separating(j.at("split")[0].get<int>(), j.at("split")[1].get<int>());
}

} // namespace

Amalgam amalgam_from_json(const Json &j) {
  require_schema(j, "common.json#/definitions/amalgam");
  Amalgam a;
  a.left.genus = j.at("left").at("genus").get<int>();
  a.right.genus = j.at("right").at("genus").get<int>();
  for (auto [key, curve] : {std::pair{"left_curve", &a.left_curve}, {"right_curve", &a.right_curve}}) {
    try {
      *curve = curve_from_json(j.at(key));
    } catch (const ValidationError &e) {
      throw ValidationError(std::string(key) + "." + e.errors().front().field,
                            e.errors().front().message);
    }
  }
  require_valid(a);
  return a;
}

Json to_json(const CurveSpec &c) {
  Json j = {{"kind", kind_name(c.kind)}};
  if (c.is_separating())
    j["split"] = {c.r, c.s};
  return j;
}

Json to_json(const Amalgam &a) {
  return {{"left", {{"genus", a.left.genus}}},
          {"right", {{"genus", a.right.genus}}},
          {"left_curve", to_json(a.left_curve)},
          {"right_curve", to_json(a.right_curve)}};
}

Json to_json(const CoxeterParams &p) {
  return {{"m", p.m}, {"n", p.n}};
}

Json to_json(const SideDescription &s) {
  return {{"kind", kind_name(s.kind)}, {"chis", s.chis}};
}

Json to_json(const ThetaReport &t) {
  Json orbifold = Json::array(), expected = Json::array();
  for (const auto &r : t.orbifold_chi)
    orbifold.push_back(to_json(r));
  for (const auto &r : t.expected_chi)
    expected.push_back(to_json(r));
  return {{"piece_genera", t.piece_genera},
          {"n", t.n},
          {"orbifold_chi", orbifold},
          {"expected_chi", expected},
          {"oracle_agrees", t.oracle_agrees}};
}

Json to_json(const GraphCover &c) {
  Json action = Json::object();
  for (const auto &[gen, perm] : c.action)
    action[gen] = perm;
  return {{"degree", c.degree}, {"generators", c.generators}, {"action", action}};
}

GraphCover graph_cover_from_json(const Json &j) {
  GraphCover c;
  c.degree = int_field(field(j, "degree", ""), "degree");
  c.generators = field(j, "generators", "").get<std::vector<std::string>>();
  for (const auto &[gen, perm] : field(j, "action", "").items())
    c.action[gen] = perm.get<std::vector<int>>();
  return c;
}

Json to_json(const CoverReport &r) {
  return {{"valid", r.valid},       {"degree", r.degree}, {"transitive", r.transitive},
          {"base_chi", r.base_chi}, {"chi", r.chi},       {"errors", r.errors}};
}

Json to_json(const PieceCover &p) {
  Json boundaries = Json::array();
  for (const auto &b : p.boundaries)
    boundaries.push_back({{"color", b.color}, {"degree", b.degree}});
  return {{"side", p.side}, {"base_chi", p.base_chi}, {"chi", p.chi}, {"boundaries", boundaries}};
}

Json to_json(const CommonCover &c) {
  return {{"chis", c.chis}, {"d1", c.d1}, {"d2", c.d2}, {"L", c.L}};
}

Json to_json(const CurveSystemReport &r) {
  Json checks = Json::array();
  for (const auto &c : r.checks)
    checks.push_back({{"name", c.name}, {"ok", c.ok}, {"details", c.details}});
  return {{"valid", r.valid},         {"vertices", r.vertices}, {"edges", r.edges},
          {"faces", r.faces},         {"euler", r.euler},       {"expected_euler", r.expected_euler},
          {"checks", checks}};
}

Json to_json(const SpecialnessReport &r) {
  Json planes = Json::array(), self = Json::array(), inter = Json::array();
  for (std::size_t h = 0; h < r.hyperplanes.size(); ++h)
    planes.push_back({{"name", r.hyperplanes[h]},
                      {"two_sided", static_cast<bool>(r.two_sided[h])},
                      {"embedded", static_cast<bool>(r.embedded[h])}});
  for (const auto &o : r.self_osculations)
    self.push_back({{"curve", o.curve}, {"region", o.region}, {"sides", o.sides}});
  for (const auto &o : r.inter_osculations)
    inter.push_back({{"curves", o.curves}, {"region", o.region}, {"sides", o.sides}});
  std::vector<int> girth;
  for (std::size_t v = 0; v < r.link_girth_ok.size(); ++v)
    if (!r.link_girth_ok[v])
      girth.push_back(static_cast<int>(v));
  return {{"special", r.special()},
          {"hyperplanes", planes},
          {"self_osculations", self},
          {"inter_osculations", inter},
          {"link_girth_failures", girth}};
}

Json summary_json(const SquareComplex &sq) {
  return {{"vertices", sq.vertex_count},
          {"edges", sq.edges.size()},
          {"squares", sq.squares.size()},
          {"euler", sq.euler()}};
}

Json to_json(const KEstimate &k) {
  return {{"K", k.K}, {"samples", k.samples}, {"seed", k.seed}};
}

Json to_json(const TilingComplex &t) {
  Json pieces = Json::array(), cells = Json::array(), branching = Json::array();
  for (const auto &p : t.pieces)
    pieces.push_back({{"genus", p.genus},
                      {"sides", p.sides},
                      {"branching_length", p.branching_length},
                      {"side_length", p.side_length},
                      {"circumradius", p.circumradius}});
  for (const auto &c : t.cells)
    cells.push_back({{"slot", c.slot},
                     {"genus", c.genus},
                     {"label", c.label},
                     {"region", c.region},
                     {"depth", c.depth},
                     {"sides", c.sides()},
                     {"extension", c.extension},
                     {"vertices", c.vertices},
                     {"branching_sides", c.branching_sides},
                     {"type", c.type}});
  for (const auto &b : t.branching)
    branching.push_back({{"u", b.u}, {"w", b.w}, {"cells", b.cells}});
  Json adjacency = Json::array();
  for (const auto &[x, y] : t.adjacency)
    adjacency.push_back({x, y});
  return {{"amalgam", to_json(t.amalgam.source)},
          {"reduced",
           {{"normalized", t.amalgam.normalized},
            {"scale", t.amalgam.scale},
            {"genera", t.amalgam.genera}}},
          {"pieces", pieces},
          {"cells", cells},
          {"adjacency", adjacency},
          {"branching", branching},
          {"types", t.types},
          {"vertex_count", t.vertex_count},
          {"depth", t.depth},
          {"bound", t.bound},
          {"violations", tiling_violations(t)}};
}

Fixture fixture_from_json(const Json &j, const std::string &name) {
  Fixture f;
  f.name = name;
  f.cs = curve_system_from_json(j);
  f.amalgamating = string_field(field(j, "amalgamating", ""), "amalgamating");
  f.perimeter = string_field(field(j, "perimeter", ""), "perimeter");
  for (const auto &c : {f.amalgamating, f.perimeter})
    if (std::find(f.cs.curves.begin(), f.cs.curves.end(), c) == f.cs.curves.end())
      throw ValidationError("curves", "fixture marker names unknown curve " + c);
  const auto &gluing = field(j, "gluing", "");
  f.gluing = string_field(field(gluing, "kind", ".gluing"), "gluing.kind");
  if (gluing.contains("split"))
    f.split = gluing.at("split").get<std::vector<int>>();
  if (j.contains("double_cover"))
    f.voltage_curves =
        field(j.at("double_cover"), "voltage_curves", ".double_cover").get<std::vector<std::string>>();
  return f;
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto &[name, _] : detail::embedded_fixtures())
    out.push_back(name);
  return out;
}

Fixture load_fixture(const std::string &name) {
  const auto &all = detail::embedded_fixtures();
  auto it = all.find(name);
  if (it == all.end())
    throw ValidationError("fixture", "unknown fixture " + name);
  return fixture_from_json(Json::parse(it->second), name);
}

} // namespace amalgam
