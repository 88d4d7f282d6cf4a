#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"

#include "amalgam/commands.hpp"

using namespace amalgam;

namespace {

Json read_input(const std::string &arg) {
  std::string text;
  if (arg == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in)
      throw ValidationError("input", "cannot read " + arg);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw ValidationError("input", arg + " is not JSON: " + e.what());
  }
}

int fail(int status, const Json &error) {
  std::cerr << format_json(error);
  return status;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Commensurability of surface amalgams"};
  std::string verb;
  std::vector<std::string> inputs;
  std::vector<std::string> fixtures;
  std::string output;
  int enumerate = 0;
  int genus = 0;
  int n = 0;
  RunOptions opt;
  try {
    opt = default_options();
  } catch (const ValidationError &e) {
    return fail(1, error_json("validation", e.what(), e.errors()));
  }

  std::string verb_list;
  for (const auto &v : verbs())
    verb_list += (verb_list.empty() ? "" : ", ") + v;
  app.add_option("verb", verb, "One of: " + verb_list)->required()->check(CLI::IsMember(verbs()));
  // inputs are taken from the leftovers so CLI11 does not split "[...]" on commas
  app.allow_extras();
  app.footer("Inputs after the verb: JSON files, '-' for stdin, or inline JSON.");
  app.add_option("--fixture", fixtures, "Shipped curve system by name (cubulate, glue)");
  app.add_option("-o,--output", output, "Write the report here instead of stdout");
  app.add_option("--enumerate", enumerate,
                 "Run over every amalgam (or ordered pair) with genus <= N");
  app.add_option("--jobs", opt.jobs, "Worker threads for --enumerate")->check(CLI::PositiveNumber);
  app.add_option("--depth", opt.depth, "Tiling depth (tile, census)")->check(CLI::NonNegativeNumber);
  app.add_option("--budget", opt.budget, "Cell budget per complex (tile, census)")
      ->check(CLI::PositiveNumber);
  app.add_option("--samples", opt.samples, "Samples per bilipschitz estimate (tile); 0 skips")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", opt.seed, "Sampling seed; overrides AMALGAM_SEED");
  app.add_option("--genus", genus, "oddcover: genus of the one-boundary surface");
  app.add_option("--n", n, "oddcover: odd degree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    return fail(1, error_json("usage", e.what()));
  }
  for (const auto &arg : app.remaining()) {
    if (arg.size() > 1 && arg.front() == '-')
      return fail(1, error_json("usage", "unknown option " + arg));
    inputs.push_back(arg);
  }

  try {
    Json report;
    if (enumerate > 0) {
      if (!inputs.empty() || !fixtures.empty())
        throw ValidationError("enumerate", "--enumerate takes no inputs");
      report = run_enumeration(verb, enumerate, opt);
    } else {
      std::vector<Json> docs;
      for (const auto &f : fixtures)
        docs.emplace_back(f);
      for (const auto &i : inputs)
        docs.push_back(read_input(i));
      if (verb == "oddcover" && docs.empty())
        docs.push_back({{"genus", genus}, {"n", n}});
      report = run_verb(verb, docs, opt);
    }
    const auto text = format_json(report);
    if (output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(output);
      if (!(out << text))
        throw ValidationError("output", "cannot write " + output);
    }
    return 0;
  } catch (const ValidationError &e) {
    return fail(1, error_json("validation", e.what(), e.errors()));
  } catch (const InvariantError &e) {
    return fail(2, error_json("invariant", e.what()));
  } catch (const std::exception &e) {
    return fail(2, error_json("invariant", e.what()));
  }
}
