#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "amalgam/json_io.hpp"
#include "amalgam/schema.hpp"

using namespace amalgam;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status = -1;
  std::string out;
  std::string err;

  Json json() const { return Json::parse(out); }
  Json error() const { return Json::parse(err); }
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("amalgam_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string quote(const std::string &s) {
  std::string out = "'";
  for (char c : s)
    out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

// env is prepended verbatim, e.g. "AMALGAM_SEED=3".
Result run(const std::vector<std::string> &args, const std::string &env = "",
           const std::string &stdin_text = "") {
  const auto out = scratch() / "out", err = scratch() / "err", in = scratch() / "in";
  std::ofstream(in) << stdin_text;
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += quote(AMALGAM_CLI_PATH);
  for (const auto &a : args)
    cmd += " " + quote(a);
  cmd += " <" + quote(in) + " >" + quote(out) + " 2>" + quote(err);
  const int raw = std::system(cmd.c_str());
  Result r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string amalgam_doc(int g, const std::string &gc, int h, const std::string &hc) {
  auto curve = [](const std::string &c) {
    return c == "nonsep" ? std::string(R"({"kind":"nonseparating"})")
                         : R"({"kind":"separating","split":[)" + c + "]}";
  };
  return R"({"left":{"genus":)" + std::to_string(g) + R"(},"right":{"genus":)" +
         std::to_string(h) + R"(},"left_curve":)" + curve(gc) + R"(,"right_curve":)" +
         curve(hc) + "}";
}

} // namespace

TEST_CASE("oddcover g=2 n=7") {
  const auto r = run({"oddcover", "--genus", "2", "--n", "7"});
  REQUIRE(r.status == 0);
  const auto j = r.json();
  CHECK(j.at("cover").at("degree") == 7);
  CHECK(j.at("verification").at("valid") == true);
  CHECK(j.at("verification").at("chi") == -21);
  CHECK(j.at("boundary").at("cycles") == Json{7});
  CHECK(j.at("boundary").at("first_return") == 7);
  CHECK(j.at("surface") == Json{{"genus", 11}, {"boundary", 1}, {"chi", -21}});
  CHECK(schema_violations(j, "oddcover.json").empty());

  const auto inline_request = run({"oddcover", R"({"genus":2,"n":7})"});
  CHECK(inline_request.out == r.out);
}

TEST_CASE("classify the non-separating pair") {
  // chi ratios 2:4 and 4:8 agree
  const auto r = run({"classify", amalgam_doc(2, "nonsep", 3, "nonsep"), amalgam_doc(3, "nonsep", 5, "nonsep")});
  REQUIRE(r.status == 0);
  const auto j = r.json();
  CHECK(j.at("commensurable") == true);
  CHECK(j.at("via_quadruple") == true);
  CHECK(j.at("via_abc") == true);

  const auto no = run({"classify", amalgam_doc(2, "nonsep", 3, "nonsep"), amalgam_doc(2, "nonsep", 4, "nonsep")});
  REQUIRE(no.status == 0);
  CHECK(no.json().at("commensurable") == false);
  CHECK(no.json().at("via_abc") == false);
}

TEST_CASE("genus one is a validation failure") {
  const auto r = run({"classify", amalgam_doc(1, "nonsep", 3, "nonsep"), amalgam_doc(2, "nonsep", 2, "nonsep")});
  CHECK(r.status == 1);
  CHECK(r.out.empty());
  const auto e = r.error();
  CHECK(schema_violations(e, "common.json#/definitions/error").empty());
  CHECK(e.at("error").at("kind") == "validation");
  CHECK(e.at("error").at("message").get<std::string>().find("genus must exceed one") !=
        std::string::npos);
  CHECK(e.at("error").at("fields")[0].at("message") == "genus must exceed one");
}

TEST_CASE("usage and input errors exit 1") {
  for (const auto &args : std::vector<std::vector<std::string>>{
           {"frobnicate"},
           {},
           {"classify", "{not json"},
           {"classify", (scratch() / "missing.json").string()},
           {"invariant", amalgam_doc(2, "nonsep", 2, "nonsep"), amalgam_doc(2, "nonsep", 2, "nonsep")},
           {"oddcover", "--genus", "2", "--n", "8"},
           {"tile", amalgam_doc(2, "nonsep", 2, "nonsep"), "--depth", "-1"},
           {"cubulate", "--fixture", "nope"},
           {"tile", "--enumerate", "3"},
           {"invariant", "--bogus"}}) {
    CAPTURE(args.size());
    const auto r = run(args);
    CHECK(r.status == 1);
    CHECK(r.out.empty());
    REQUIRE_NOTHROW(r.error());
    CHECK(schema_violations(r.error(), "common.json#/definitions/error").empty());
  }
  CHECK(run({"frobnicate"}).error().at("error").at("kind") == "usage");
}

TEST_CASE("help exits 0") {
  const auto r = run({"--help"});
  CHECK(r.status == 0);
  CHECK(r.out.find("--enumerate") != std::string::npos);
}

TEST_CASE("output is sorted, newline-terminated and deterministic") {
  const std::vector<std::string> args{"maximal", amalgam_doc(3, "1,2", 3, "1,2")};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.back() == '\n');
  CHECK(a.out == a.json().dump(2) + "\n");
  const auto elements = a.json().at("elements");
  CHECK(elements.size() == 4);
  for (const auto &e : elements)
    CHECK((e.at("index").is_null() || e.at("index").get<int>() >= 1));
}

TEST_CASE("inputs from stdin, files and arrays") {
  const auto one = amalgam_doc(2, "1,1", 2, "1,1");
  const auto two = amalgam_doc(3, "1,2", 3, "1,2");
  const auto inline_args = run({"cover", one, two});
  REQUIRE(inline_args.status == 0);
  CHECK(run({"cover", "[" + one + "," + two + "]"}).out == inline_args.out);
  CHECK(run({"cover", "-"}, "", "[" + one + "," + two + "]").out == inline_args.out);
  const auto path = scratch() / "pair.json";
  std::ofstream(path) << "[" << one << "," << two << "]";
  CHECK(run({"cover", path.string()}).out == inline_args.out);

  const auto target = scratch() / "report.json";
  const auto to_file = run({"cover", path.string(), "-o", target.string()});
  CHECK(to_file.status == 0);
  CHECK(to_file.out.empty());
  CHECK(slurp(target) == inline_args.out);

  const auto j = inline_args.json();
  // (-1,-1,-1,-1) against (-3,-3,-1,-1)
  CHECK(j.at("commensurable") == false);
  CHECK(j.at("common_cover").is_null());
  CHECK(j.at("existcovers").at("violations").empty());
  // chi -4 and -8
  CHECK(j.at("existcovers").at("L") == -16);
}

TEST_CASE("every verb round-trips through its schema") {
  const auto s = amalgam_doc(3, "1,2", 3, "1,2");
  const auto t = amalgam_doc(2, "1,1", 4, "2,2");
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"classify", {s, t}},
      {"invariant", {s}},
      {"subclass", {s}},
      {"maximal", {s}},
      {"cover", {s, t}},
      {"oddcover", {"--genus", "3", "--n", "5"}},
      {"coxeter", {s}},
      {"cubulate", {"--fixture", "genus3_nonseparating"}},
      {"glue", {"--fixture", "genus3_nonseparating", "--fixture", "genus3_separating"}},
      {"tile", {s, t, "--depth", "2", "--samples", "20"}},
      {"census", {s, t, "--depth", "2"}}};
  for (const auto &[verb, args] : cases) {
    CAPTURE(verb);
    std::vector<std::string> full{verb};
    full.insert(full.end(), args.begin(), args.end());
    const auto r = run(full);
    REQUIRE(r.status == 0);
    CHECK(r.err.empty());
    const auto j = r.json();
    CHECK(schema_violations(j, verb + ".json").empty());
    CHECK(Json::parse(j.dump()) == j);
  }
}

TEST_CASE("cubulate a shipped fixture") {
  const auto r = run({"cubulate", "--fixture", "genus2_separating"});
  REQUIRE(r.status == 0);
  const auto j = r.json();
  CHECK(j.at("source") == "genus2_separating");
  CHECK(j.at("validation").at("faces") == 12);
  CHECK(j.at("validation").at("valid") == true);
  CHECK(j.at("amalgamating").at("crossings") == 4);
  CHECK(j.at("amalgamating").at("path_length") == 8);
  CHECK(j.at("specialness").at("special") == true);

  const auto inline_system = run({"cubulate", (fs::path(AMALGAM_TEST_DATA) / "hexagon_osculation.json").string()});
  REQUIRE(inline_system.status == 0);
  CHECK(inline_system.json().at("source") == "inline");
}

TEST_CASE("coxeter params or a reason") {
  const auto c2 = run({"coxeter", amalgam_doc(2, "nonsep", 4, "nonsep")});
  REQUIRE(c2.status == 0);
  CHECK(c2.json().at("params").at("direct") == Json{{"m", 5}, {"n", 7}});
  CHECK(c2.json().at("reason").is_null());

  const auto c0 = run({"coxeter", amalgam_doc(4, "1,3", 6, "2,4")});
  REQUIRE(c0.status == 0);
  CHECK(c0.json().at("subclass") == "C0");
  CHECK(c0.json().at("params").is_null());
  CHECK(c0.json().at("reason").is_string());
}

TEST_CASE("seed from the environment and the flag") {
  const auto pair = std::vector<std::string>{"tile", amalgam_doc(2, "1,1", 2, "1,1"),
                                             amalgam_doc(3, "nonsep", 3, "nonsep"), "--depth", "1",
                                             "--samples", "30"};
  const auto seed_of = [](const Result &r) {
    return r.json().at("constants")[0].at("estimate").at("seed").get<std::uint64_t>();
  };
  const auto plain = run(pair);
  REQUIRE(plain.status == 0);
  CHECK(seed_of(plain) == 20240611);
  const auto env = run(pair, "AMALGAM_SEED=99");
  REQUIRE(env.status == 0);
  CHECK(seed_of(env) == 99);
  CHECK(run(pair, "AMALGAM_SEED=99").out == env.out);
  auto flagged = pair;
  flagged.insert(flagged.end(), {"--seed", "5"});
  CHECK(seed_of(run(flagged, "AMALGAM_SEED=99")) == 5);
  CHECK(run(pair, "AMALGAM_SEED=banana").status == 1);
}

TEST_CASE("enumerate with jobs") {
  const auto serial = run({"invariant", "--enumerate", "4"});
  const auto parallel = run({"invariant", "--enumerate", "4", "--jobs", "3"});
  REQUIRE(serial.status == 0);
  CHECK(serial.out == parallel.out);
  const auto j = serial.json();
  CHECK(schema_violations(j, "enumeration.json").empty());
  CHECK(j.at("count") == 49);
  for (const auto &r : j.at("results"))
    CHECK(schema_violations(r.at("output"), "invariant.json").empty());

  const auto pairs = run({"classify", "--enumerate", "3", "--jobs", "2"});
  REQUIRE(pairs.status == 0);
  for (const auto &r : pairs.json().at("results"))
    CHECK(r.at("output").at("via_quadruple") == r.at("output").at("via_abc"));
}
