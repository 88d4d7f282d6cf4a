#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace amalgam {

using Rational = boost::rational<std::int64_t>;

struct Surface {
  int genus = 0;
  int boundary = 0;

  auto operator<=>(const Surface &) const = default;
};

struct CurveSpec {
  enum class Kind { NonSeparating, Separating };

  Kind kind = Kind::NonSeparating;
  int r = 0;
  int s = 0;

  static CurveSpec nonseparating() { return {}; }
  static CurveSpec separating(int r, int s) { return {Kind::Separating, r, s}; }

  bool is_separating() const { return kind == Kind::Separating; }

  auto operator<=>(const CurveSpec &) const = default;
};

struct Amalgam {
  Surface left;
  Surface right;
  CurveSpec left_curve;
  CurveSpec right_curve;

  static Amalgam make(int g, CurveSpec gc, int h, CurveSpec hc) {
    return {{g, 0}, {h, 0}, gc, hc};
  }

  auto operator<=>(const Amalgam &) const = default;
};

struct FieldError {
  std::string field;
  std::string message;
};

// Thrown for malformed user input; the CLI maps it to exit status 1.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(std::vector<FieldError> errors);
  explicit ValidationError(const std::string &field, const std::string &message)
      : ValidationError(std::vector<FieldError>{{field, message}}) {}

  const std::vector<FieldError> &errors() const { return errors_; }

private:
  std::vector<FieldError> errors_;
};

// Thrown when an internal consistency check fails; exit status 2.
class InvariantError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

int euler_characteristic(const Surface &s);
int euler_of_amalgam(const Amalgam &a);

Rational topological_type(const Surface &host, const CurveSpec &c);

std::vector<Surface> cut_along(const Surface &host, const CurveSpec &c);

std::vector<FieldError> validate_curve(const Surface &host, const CurveSpec &c,
                                       const std::string &field);
std::vector<FieldError> validate(const Amalgam &a);
void require_valid(const Amalgam &a);

// Pieces of the complement of the singular curve, left side first.
std::vector<Surface> pieces(const Amalgam &a);

// All curve specs on a closed surface of genus g (up to swapping r and s).
std::vector<CurveSpec> curve_specs(int genus);

// Every amalgam with both genera in [2, max_genus], in a fixed order.
std::vector<Amalgam> enumerate_amalgams(int max_genus);

std::string to_string(const CurveSpec &c);
std::string to_string(const Amalgam &a);

} // namespace amalgam
