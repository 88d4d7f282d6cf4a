#include "amalgam/core.hpp"

#include <sstream>

namespace amalgam {

namespace {

std::string join_messages(const std::vector<FieldError> &errors) {
  std::string out;
  for (const auto &e : errors) {
    if (!out.empty())
      out += "; ";
    out += e.field + ": " + e.message;
  }
  return out;
}

} // namespace

ValidationError::ValidationError(std::vector<FieldError> errors)
    : std::runtime_error(join_messages(errors)), errors_(std::move(errors)) {}

int euler_characteristic(const Surface &s) {
  return 2 - 2 * s.genus - s.boundary;
}

int euler_of_amalgam(const Amalgam &a) {
  return euler_characteristic(a.left) + euler_characteristic(a.right);
}

std::vector<FieldError> validate_curve(const Surface &host, const CurveSpec &c,
                                       const std::string &field) {
  std::vector<FieldError> errors;
  if (!c.is_separating())
    return errors;
  if (c.r < 1 || c.s < 1)
    errors.push_back({field + ".split", "split parts must be positive"});
  if (c.r > c.s)
    errors.push_back({field + ".split", "split must be ordered"});
  if (c.r + c.s != host.genus)
    errors.push_back({field + ".split", "split must sum to genus"});
  return errors;
}

std::vector<FieldError> validate(const Amalgam &a) {
  std::vector<FieldError> errors;
  auto side = [&](const Surface &s, const CurveSpec &c, const std::string &name,
                  const std::string &curve_name) {
    if (s.genus < 2)
      errors.push_back({name + ".genus", "genus must exceed one"});
    if (s.boundary != 0)
      errors.push_back({name + ".boundary", "surface must be closed"});
    for (auto &e : validate_curve(s, c, curve_name))
      errors.push_back(std::move(e));
  };
  side(a.left, a.left_curve, "left", "left_curve");
  side(a.right, a.right_curve, "right", "right_curve");
  return errors;
}

void require_valid(const Amalgam &a) {
  auto errors = validate(a);
  if (!errors.empty())
    throw ValidationError(std::move(errors));
}

Rational topological_type(const Surface &host, const CurveSpec &c) {
  auto errors = validate_curve(host, c, "curve");
  if (!errors.empty())
    throw ValidationError(std::move(errors));
  if (!c.is_separating())
    return Rational(1);
  std::int64_t chi_r = 1 - 2 * c.r;
  std::int64_t chi_s = 1 - 2 * c.s;
  // both negative; the ratio of the more negative to the less negative is >= 1
  Rational t(chi_r, chi_s);
  return t >= Rational(1) ? t : Rational(chi_s, chi_r);
}

std::vector<Surface> cut_along(const Surface &host, const CurveSpec &c) {
  auto errors = validate_curve(host, c, "curve");
  if (!errors.empty())
    throw ValidationError(std::move(errors));
  if (!c.is_separating())
    return {Surface{host.genus - 1, host.boundary + 2}};
  return {Surface{c.r, 1}, Surface{c.s, 1}};
}

std::vector<Surface> pieces(const Amalgam &a) {
  auto out = cut_along(a.left, a.left_curve);
  for (auto &s : cut_along(a.right, a.right_curve))
    out.push_back(s);
  return out;
}

std::vector<CurveSpec> curve_specs(int genus) {
  std::vector<CurveSpec> out{CurveSpec::nonseparating()};
  for (int r = 1; 2 * r <= genus; ++r)
    out.push_back(CurveSpec::separating(r, genus - r));
  return out;
}

std::vector<Amalgam> enumerate_amalgams(int max_genus) {
  std::vector<Amalgam> out;
  for (int g = 2; g <= max_genus; ++g)
    for (int h = 2; h <= max_genus; ++h)
      for (const auto &gc : curve_specs(g))
        for (const auto &hc : curve_specs(h))
          out.push_back(Amalgam::make(g, gc, h, hc));
  return out;
}

std::string to_string(const CurveSpec &c) {
  if (!c.is_separating())
    return "nonsep";
  std::ostringstream os;
  os << "sep(" << c.r << "," << c.s << ")";
  return os.str();
}

std::string to_string(const Amalgam &a) {
  std::ostringstream os;
  os << "S" << a.left.genus << "[" << to_string(a.left_curve) << "] u S"
     << a.right.genus << "[" << to_string(a.right_curve) << "]";
  return os.str();
}

} // namespace amalgam
