#include "ellipsolve/elliptic_core.hpp"

#include <cmath>
#include <sstream>

#include "ellipsolve/errors.hpp"

namespace ellipsolve {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + ": non-finite input");
}

}  // namespace

double EllipticCoefficients::operator[](int i) const {
  return const_cast<EllipticCoefficients&>(*this)[i];
}

double& EllipticCoefficients::operator[](int i) {
  switch (i) {
    case 0: return c0;
    case 1: return c1;
    case 2: return c2;
    case 3: return c3;
    case 4: return c4;
    default: throw DomainError("coefficient index out of range");
  }
}

void validate(const EllipticCoefficients& c) {
  for (double v : c.as_array()) {
    if (!std::isfinite(v)) throw ParameterError("non-finite elliptic coefficient", "c finite");
  }
  if (c.c0 == 0.0 && c.c1 == 0.0 && c.c2 == 0.0 && c.c3 == 0.0 && c.c4 == 0.0) {
    throw ParameterError("all elliptic coefficients vanish", "c != 0");
  }
}

double rhs_quartic(double F, const EllipticCoefficients& c) {
  require_finite(F, "rhs_quartic");
  return (((c.c4 * F + c.c3) * F + c.c2) * F + c.c1) * F + c.c0;
}

double rhs_second_form(double u, const EllipticCoefficients& c) {
  require_finite(u, "rhs_second_form");
  return ((2.0 * c.c4 * u + 1.5 * c.c3) * u + c.c2) * u + 0.5 * c.c1;
}

Discriminants discriminants(const EllipticCoefficients& c) {
  return {c.c3 * c.c3 - 4.0 * c.c2 * c.c4, c.c1 * c.c1 - 4.0 * c.c0 * c.c2,
          c.c2 * c.c2 - 4.0 * c.c0 * c.c4};
}

std::string to_string(const EllipticCoefficients& c) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << c.c0 << ", " << c.c1 << ", " << c.c2 << ", " << c.c3 << ", " << c.c4 << ")";
  return os.str();
}

}  // namespace ellipsolve
