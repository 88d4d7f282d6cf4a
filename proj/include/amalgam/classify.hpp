#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "amalgam/core.hpp"

namespace amalgam {

// Four negative integers, most negative first.
using Quadruple = std::array<std::int64_t, 4>;

enum class Subclass { C0, C1, C2 };

struct CoxeterParams {
  int m = 5;
  int n = 5;

  static CoxeterParams ordered(int a, int b) {
    return a <= b ? CoxeterParams{a, b} : CoxeterParams{b, a};
  }
  auto operator<=>(const CoxeterParams &) const = default;
};

// One side of a gluing description: a non-separating side carries a single
// two-boundary piece, a separating side carries two one-boundary pieces.
struct SideDescription {
  CurveSpec::Kind kind = CurveSpec::Kind::NonSeparating;
  std::vector<std::int64_t> chis;

  bool operator==(const SideDescription &) const = default;
};

struct GluingDescription {
  std::string name;
  SideDescription left;
  SideDescription right;
  // false when some one-boundary piece would need an even Euler characteristic
  bool realizable = true;

  Quadruple quadruple() const;
  std::optional<Amalgam> to_amalgam() const;
};

GluingDescription describe(const Amalgam &a);

Quadruple quadruple(const Amalgam &a);
Quadruple normalize(const Quadruple &q);

bool commensurable(const Amalgam &a1, const Amalgam &a2);
bool commensurable_abc(const Amalgam &a1, const Amalgam &a2);

// Every way of writing the same space as two closed surfaces glued along a curve.
std::vector<Amalgam> decompositions(const Amalgam &a);

Subclass subclass(const Amalgam &a);
Subclass subclass_of(const Quadruple &q);
std::string to_string(Subclass s);

std::vector<GluingDescription> maximal_elements(const Amalgam &a);
std::optional<std::int64_t> cover_index(const GluingDescription &a,
                                        const GluingDescription &m);
std::optional<std::int64_t> cover_index(const Amalgam &a,
                                        const GluingDescription &m);

// Status of a maximal element for the class in a wider group class.
std::string maximal_outside_status(const Amalgam &a);

struct CoxeterReport {
  CoxeterParams maximal;
  std::optional<CoxeterParams> direct;
};

std::optional<CoxeterReport> coxeter_params(const Amalgam &a);
bool cp_commensurable(const CoxeterParams &p1, const CoxeterParams &p2);

// Orbifold Euler characteristic of O_n (closed polygon reflection orbifold)
// and O_{n,1} (one free boundary edge), by cell counting.
Rational orbifold_chi_closed(int n);
Rational orbifold_chi_one_boundary(int n);

struct ThetaReport {
  std::vector<int> piece_genera;
  std::vector<int> n;
  std::vector<Rational> orbifold_chi;
  std::vector<Rational> expected_chi;
  bool oracle_agrees = true;
};

std::optional<ThetaReport> theta_params(const Amalgam &a);

} // namespace amalgam
