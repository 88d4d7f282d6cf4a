#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amalgam/json_io.hpp"

namespace amalgam {

struct RunOptions {
  int depth = 4;
  std::int64_t budget = kDefaultCellBudget;
  // per matched cell-type pair; 0 skips the bilipschitz estimates
  std::int64_t samples = 1000;
  std::uint64_t seed = kDefaultSeed;
  int jobs = 1;
};

// RunOptions with the seed taken from AMALGAM_SEED when set.
RunOptions default_options();

const std::vector<std::string> &verbs();
bool enumerable(const std::string &verb);

// Each input is an amalgam, an array of amalgams, a curve system, a fixture
// name (JSON string) or an oddcover request, depending on the verb.  The
// result conforms to docs/schemas/<verb>.json; a result that does not is an
// InvariantError.
Json run_verb(const std::string &verb, const std::vector<Json> &inputs, const RunOptions &opt);

// The verb over every amalgam (or ordered pair) with genera in [2, max_genus],
// in enumerate_amalgams order, split across opt.jobs threads.
Json run_enumeration(const std::string &verb, int max_genus, const RunOptions &opt);

// Sorted keys, two-space indent, trailing newline.
std::string format_json(const Json &j);

Json error_json(const std::string &kind, const std::string &message,
                const std::vector<FieldError> &fields = {});

} // namespace amalgam
