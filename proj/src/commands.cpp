#include "amalgam/commands.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <thread>

#include "amalgam/schema.hpp"

namespace amalgam {

namespace {

std::vector<Amalgam> collect_amalgams(const std::vector<Json> &inputs) {
  std::vector<Amalgam> out;
  for (const auto &doc : inputs) {
    require_schema(doc, "common.json#/definitions/amalgams");
    if (doc.is_array())
      for (const auto &a : doc)
        out.push_back(amalgam_from_json(a));
    else
      out.push_back(amalgam_from_json(doc));
  }
  return out;
}

std::vector<Amalgam> expect_amalgams(const std::string &verb, const std::vector<Json> &inputs,
                                     std::size_t lo, std::size_t hi) {
  auto out = collect_amalgams(inputs);
  if (out.size() < lo || out.size() > hi) {
    const auto want = lo == hi ? std::to_string(lo) : std::to_string(lo) + " or " + std::to_string(hi);
    throw ValidationError("input", verb + " expects " + want + " amalgams, got " +
                                       std::to_string(out.size()));
  }
  return out;
}

struct SystemInput {
  std::string source;
  CurveSystem cs;
  std::string amalgamating;
  std::string perimeter;
};

SystemInput system_input(const Json &doc) {
  if (doc.is_string()) {
    auto f = load_fixture(doc.get<std::string>());
    return {f.name, std::move(f.cs), f.amalgamating, f.perimeter};
  }
  SystemInput in{"inline", curve_system_from_json(doc), "", ""};
  if (doc.contains("amalgamating"))
    in.amalgamating = doc.at("amalgamating").get<std::string>();
  if (doc.contains("perimeter"))
    in.perimeter = doc.at("perimeter").get<std::string>();
  for (const auto &c : {in.amalgamating, in.perimeter})
    if (!c.empty() && std::find(in.cs.curves.begin(), in.cs.curves.end(), c) == in.cs.curves.end())
      throw ValidationError("curves", "marker names unknown curve " + c);
  return in;
}

Json classify_json(const Amalgam &a, const Amalgam &b) {
  const bool q = commensurable(a, b);
  const bool abc = commensurable_abc(a, b);
  if (q != abc)
    throw InvariantError("quadruple and abc tests disagree on " + to_string(a) + " vs " +
                         to_string(b));
  return {{"first", to_json(a)},
          {"second", to_json(b)},
          {"commensurable", q},
          {"via_quadruple", q},
          {"via_abc", abc},
          {"normalized", {normalize(quadruple(a)), normalize(quadruple(b))}}};
}

Json invariant_json(const Amalgam &a) {
  const auto q = quadruple(a);
  return {{"amalgam", to_json(a)}, {"quadruple", q}, {"normalized", normalize(q)}};
}

Json subclass_json(const Amalgam &a) {
  return {{"amalgam", to_json(a)},
          {"normalized", normalize(quadruple(a))},
          {"subclass", to_string(subclass(a))}};
}

Json maximal_json(const Amalgam &a) {
  Json elements = Json::array();
  for (const auto &m : maximal_elements(a)) {
    const auto am = m.to_amalgam();
    const auto index = cover_index(a, m);
    elements.push_back({{"name", m.name},
                        {"left", to_json(m.left)},
                        {"right", to_json(m.right)},
                        {"realizable", m.realizable},
                        {"quadruple", m.quadruple()},
                        {"amalgam", am ? to_json(*am) : Json(nullptr)},
                        {"index", index ? Json(*index) : Json(nullptr)}});
  }
  return {{"amalgam", to_json(a)},
          {"normalized", normalize(quadruple(a))},
          {"subclass", to_string(subclass(a))},
          {"outside", maximal_outside_status(a)},
          {"elements", elements}};
}

Json cover_json(const Amalgam &a, const Amalgam &b) {
  const auto e = existcovers(a, b);
  Json y1 = Json::array(), y2 = Json::array();
  for (const auto &p : e.y1)
    y1.push_back(to_json(p));
  for (const auto &p : e.y2)
    y2.push_back(to_json(p));
  auto violations = check_piece_covers(e.y1, e.d1, e.L);
  for (auto &v : check_piece_covers(e.y2, e.d2, e.L))
    violations.push_back(std::move(v));
  const auto common = common_cover(a, b);
  return {{"first", to_json(a)},
          {"second", to_json(b)},
          {"commensurable", commensurable(a, b)},
          {"existcovers",
           {{"L", e.L}, {"d1", e.d1}, {"d2", e.d2}, {"y1", y1}, {"y2", y2}, {"violations", violations}}},
          {"common_cover", common ? to_json(*common) : Json(nullptr)}};
}

Json coxeter_json(const Amalgam &a) {
  const auto report = coxeter_params(a);
  const auto theta = theta_params(a);
  const auto sub = subclass(a);
  Json params = nullptr, reason = nullptr;
  if (report)
    params = {{"maximal", to_json(report->maximal)},
              {"direct", report->direct ? to_json(*report->direct) : Json(nullptr)}};
  else
    reason = "class " + to_string(sub) + " has no right-angled Coxeter parameters; they exist for C2 only";
  return {{"amalgam", to_json(a)},
          {"subclass", to_string(sub)},
          {"params", params},
          {"reason", reason},
          {"theta", theta ? to_json(*theta) : Json(nullptr)}};
}

Json oddcover_json(const Json &doc) {
  require_schema(doc, "common.json#/definitions/oddcover_input");
  const int g = doc.at("genus").get<int>();
  const int n = doc.at("n").get<int>();
  const auto c = build_odd_cover(g, n);
  const auto report = verify_cover(c);
  const auto w = boundary_word(g);
  const auto cycles = boundary_components(c, w);
  const int b = static_cast<int>(cycles.size());
  const auto simulated = simulated_labels(c, n);
  const auto formula = formula_labels(n);
  return {{"genus", g},
          {"n", n},
          {"cover", to_json(c)},
          {"verification", to_json(report)},
          {"boundary", {{"word", to_string(w)}, {"cycles", cycles}, {"first_return", first_return(c, w, 0)}}},
          {"surface", {{"genus", (2 - b - report.chi) / 2}, {"boundary", b}, {"chi", report.chi}}},
          {"labels", {{"simulated", simulated}, {"formula", formula}, {"agree", simulated == formula}}}};
}

Json cubulate_json(const Json &doc) {
  const auto in = system_input(doc);
  const auto validation = validate_curve_system(in.cs);
  Json out = {{"source", in.source}, {"validation", to_json(validation)}, {"amalgamating", nullptr}};
  if (!validation.valid) {
    std::vector<FieldError> fields;
    for (const auto &c : validation.checks)
      for (const auto &d : c.details)
        fields.push_back({c.name, d});
    throw ValidationError(fields.empty() ? std::vector<FieldError>{{"curves", "invalid curve system"}}
                                         : fields);
  }
  const auto sq = dual_square_complex(in.cs);
  out["dual"] = summary_json(sq);
  out["specialness"] = to_json(check_special(in.cs, sq));
  if (!in.amalgamating.empty() && !in.perimeter.empty()) {
    const auto path = subdivided_curve_path(in.cs, in.amalgamating, in.perimeter);
    out["amalgamating"] = {
        {"curve", in.amalgamating},
        {"crossings", in.cs.arc_count(in.cs.curve_id(in.amalgamating))},
        {"path_length", path.edges.size()},
        {"marked", std::count(path.marker.begin(), path.marker.end(), true)}};
  }
  return out;
}

Json glue_json(const Json &left_doc, const Json &right_doc) {
  const auto left = system_input(left_doc);
  const auto right = system_input(right_doc);
  for (const auto *in : {&left, &right})
    if (in->amalgamating.empty() || in->perimeter.empty())
      throw ValidationError("input", "glue needs amalgamating and perimeter curves on both sides");
  const auto r = glue_complexes({left.cs, left.amalgamating, left.perimeter},
                                {right.cs, right.amalgamating, right.perimeter});
  return {{"left", left.source},
          {"right", right.source},
          {"link_ok", r.link_ok},
          {"offset", r.offset},
          {"direction", r.direction},
          {"candidates", r.candidates},
          {"hyperplanes_before", r.hyperplanes_before},
          {"hyperplanes_after", r.hyperplanes_after},
          {"complex", summary_json(r.complex)},
          {"specialness", to_json(r.specialness)}};
}

Json tile_json(const Amalgam &a, const Amalgam &b, const RunOptions &opt) {
  const auto pair = grow_tilings(a, b, opt.depth, opt.budget);
  const auto violations = isomorphism_violations(pair);
  const bool certificates = complex_certificate(pair.first) == complex_certificate(pair.second);
  const bool refinement = refinement_invariant(pair.first) == refinement_invariant(pair.second);
  int lo = 0, hi = 0;
  bool first = true;
  for (const auto *t : {&pair.first, &pair.second})
    for (const auto &c : t->cells) {
      lo = first ? c.sides() : std::min(lo, c.sides());
      hi = first ? c.sides() : std::max(hi, c.sides());
      first = false;
    }
  Json constants = Json::array(), bound = nullptr;
  if (opt.samples > 0) {
    std::vector<double> ks;
    for (const auto &c : cell_constants(pair, opt.samples, opt.seed)) {
      constants.push_back({{"first_type", c.first_type},
                           {"second_type", c.second_type},
                           {"cells", c.cells},
                           {"estimate", to_json(c.estimate)}});
      ks.push_back(c.estimate.K);
    }
    bound = assemble_bilipschitz_bound(ks);
  }
  return {{"depth", opt.depth},
          {"budget", opt.budget},
          {"bound", pair.first.bound},
          {"first", to_json(pair.first)},
          {"second", to_json(pair.second)},
          {"isomorphism",
           {{"isomorphic", violations.empty() && certificates && refinement},
            {"cells", pair.iso.cells},
            {"vertices", pair.iso.vertices},
            {"violations", violations},
            {"certificates_equal", certificates},
            {"refinement_equal", refinement}}},
          {"side_counts", {{"min", lo}, {"max", hi}, {"within_bound", lo >= 9 && hi <= pair.first.bound}}},
          {"constants", constants},
          {"bilipschitz_bound", bound}};
}

std::map<std::string, int> counts_to_depth(const TilingComplex &t, int depth) {
  std::map<std::string, int> out;
  for (const auto &c : t.cells)
    if (c.depth <= depth)
      ++out[c.type_key()];
  return out;
}

template <class Map> std::vector<std::string> key_set(const Map &m) {
  std::vector<std::string> out;
  for (const auto &[k, _] : m)
    out.push_back(k);
  return out;
}

Json census_json(const Amalgam &a, const Amalgam &b, const RunOptions &opt) {
  const auto pair = grow_tilings(a, b, opt.depth, opt.budget);
  Json depths = Json::array();
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> sets;
  for (int d = 0; d <= opt.depth; ++d) {
    const auto first = counts_to_depth(pair.first, d);
    const auto second = counts_to_depth(pair.second, d);
    int cells = 0;
    for (const auto &[_, n] : first)
      cells += n;
    depths.push_back({{"depth", d}, {"cells", cells}, {"first", first}, {"second", second}});
    sets.emplace_back(key_set(first), key_set(second));
  }
  Json stable = nullptr;
  for (int d = opt.depth - 1; d >= 0 && sets[static_cast<std::size_t>(d)] == sets.back(); --d)
    stable = d;
  return {{"first", to_json(a)},
          {"second", to_json(b)},
          {"max_depth", opt.depth},
          {"depths", depths},
          {"stable_from", stable}};
}

Json checked(const std::string &verb, Json out) {
  const auto errors = schema_violations(out, verb + ".json");
  if (!errors.empty())
    throw InvariantError(verb + " output violates its schema: " + errors.front());
  return out;
}

bool pair_verb(const std::string &verb) {
  return verb == "classify" || verb == "cover";
}

Json run_on(const std::string &verb, const std::vector<Amalgam> &a) {
  if (verb == "classify")
    return classify_json(a[0], a[1]);
  if (verb == "cover")
    return cover_json(a[0], a[1]);
  if (verb == "invariant")
    return invariant_json(a[0]);
  if (verb == "subclass")
    return subclass_json(a[0]);
  if (verb == "maximal")
    return maximal_json(a[0]);
  return coxeter_json(a[0]);
}

} // namespace

RunOptions default_options() {
  RunOptions opt;
  opt.seed = default_seed();
  return opt;
}

const std::vector<std::string> &verbs() {
  static const std::vector<std::string> v{"classify", "invariant", "subclass", "maximal",
                                          "cover",    "oddcover",  "coxeter",  "cubulate",
                                          "glue",     "tile",      "census"};
  return v;
}

bool enumerable(const std::string &verb) {
  for (const char *v : {"classify", "invariant", "subclass", "maximal", "cover", "coxeter"})
    if (verb == v)
      return true;
  return false;
}

Json run_verb(const std::string &verb, const std::vector<Json> &inputs, const RunOptions &opt) {
  if (verb == "oddcover") {
    if (inputs.size() != 1)
      throw ValidationError("input", "oddcover expects one request");
    return checked(verb, oddcover_json(inputs[0]));
  }
  if (verb == "cubulate") {
    if (inputs.size() != 1)
      throw ValidationError("input", "cubulate expects one curve system");
    return checked(verb, cubulate_json(inputs[0]));
  }
  if (verb == "glue") {
    if (inputs.size() != 2)
      throw ValidationError("input", "glue expects two curve systems");
    return checked(verb, glue_json(inputs[0], inputs[1]));
  }
  if (verb == "tile" || verb == "census") {
    if (opt.depth < 0)
      throw ValidationError("depth", "depth must be non-negative");
    auto a = expect_amalgams(verb, inputs, 1, 2);
    if (a.size() == 1)
      a.push_back(a[0]);
    return checked(verb, verb == "tile" ? tile_json(a[0], a[1], opt) : census_json(a[0], a[1], opt));
  }
  if (!enumerable(verb))
    throw ValidationError("verb", "unknown verb " + verb);
  const std::size_t n = pair_verb(verb) ? 2 : 1;
  return checked(verb, run_on(verb, expect_amalgams(verb, inputs, n, n)));
}

Json run_enumeration(const std::string &verb, int max_genus, const RunOptions &opt) {
  if (!enumerable(verb))
    throw ValidationError("verb", verb + " does not support --enumerate");
  if (max_genus < 2)
    throw ValidationError("enumerate", "genus must exceed one");
  const auto all = enumerate_amalgams(max_genus);
  std::vector<std::vector<Amalgam>> jobs;
  if (pair_verb(verb)) {
    for (const auto &a : all)
      for (const auto &b : all)
        jobs.push_back({a, b});
  } else {
    for (const auto &a : all)
      jobs.push_back({a});
  }

  std::vector<Json> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        Json inputs = Json::array();
        for (const auto &a : jobs[i])
          inputs.push_back(to_json(a));
        results[i] = {{"inputs", inputs}, {"output", checked(verb, run_on(verb, jobs[i]))}};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, opt.jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t)
    pool.emplace_back(work);
  work();
  for (auto &t : pool)
    t.join();
  for (const auto &e : errors)
    if (e)
      std::rethrow_exception(e);

  return checked("enumeration", {{"verb", verb},
                                 {"max_genus", max_genus},
                                 {"count", results.size()},
                                 {"results", std::move(results)}});
}

std::string format_json(const Json &j) {
  return j.dump(2) + "\n";
}

Json error_json(const std::string &kind, const std::string &message,
                const std::vector<FieldError> &fields) {
  Json f = Json::array();
  for (const auto &e : fields)
    f.push_back({{"field", e.field}, {"message", e.message}});
  return {{"error", {{"kind", kind}, {"message", message}, {"fields", f}}}};
}

} // namespace amalgam
