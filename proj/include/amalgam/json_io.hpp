#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "amalgam/classify.hpp"
#include "amalgam/covers.hpp"
#include "amalgam/cubulate.hpp"
#include "amalgam/tiling.hpp"

namespace amalgam {

using Json = nlohmann::json;

namespace detail {
const std::map<std::string, std::string> &embedded_fixtures();
const std::map<std::string, std::string> &embedded_schemas();
} // namespace detail

struct Fixture {
  std::string name;
  CurveSystem cs;
  std::string amalgamating;
  std::string perimeter;
  std::string gluing;
  std::vector<int> split;
  std::vector<std::string> voltage_curves;
};

CurveSystem curve_system_from_json(const Json &j);
Json to_json(const CurveSystem &cs);

// {"num": n, "den": d} with d > 0.
Json to_json(const Rational &r);
Rational rational_from_json(const Json &j);

// Checks the document shape, then the amalgam itself.
Amalgam amalgam_from_json(const Json &j);
Json to_json(const Amalgam &a);
Json to_json(const CurveSpec &c);

Json to_json(const CoxeterParams &p);
Json to_json(const SideDescription &s);
Json to_json(const ThetaReport &t);

Json to_json(const GraphCover &c);
GraphCover graph_cover_from_json(const Json &j);
Json to_json(const CoverReport &r);
Json to_json(const PieceCover &p);
Json to_json(const CommonCover &c);

Json to_json(const CurveSystemReport &r);
Json to_json(const SpecialnessReport &r);
// Cell counts and Euler characteristic only.
Json summary_json(const SquareComplex &sq);

Json to_json(const KEstimate &k);
Json to_json(const TilingComplex &t);

Fixture fixture_from_json(const Json &j, const std::string &name);
std::vector<std::string> fixture_names();
Fixture load_fixture(const std::string &name);

} // namespace amalgam
