#pragma once

// The quartic auxiliary equation F'^2 = c0 + c1 F + c2 F^2 + c3 F^3 + c4 F^4,
// its differentiated second form, and the case discriminants.

#include <array>
#include <string>

namespace ellipsolve {

struct EllipticCoefficients {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;

  double operator[](int i) const;
  double& operator[](int i);
  std::array<double, 5> as_array() const { return {c0, c1, c2, c3, c4}; }

  bool operator==(const EllipticCoefficients&) const = default;
};

// Throws ParameterError on non-finite entries or when all five vanish.
void validate(const EllipticCoefficients& c);

struct Discriminants {
  double delta_case1 = 0.0;  // c3^2 - 4 c2 c4
  double delta_case2 = 0.0;  // c1^2 - 4 c0 c2
  double delta_case3 = 0.0;  // c2^2 - 4 c0 c4
};

double rhs_quartic(double F, const EllipticCoefficients& c);
// c1/2 + c2 u + (3 c3/2) u^2 + 2 c4 u^3
double rhs_second_form(double u, const EllipticCoefficients& c);
Discriminants discriminants(const EllipticCoefficients& c);

std::string to_string(const EllipticCoefficients& c);

}  // namespace ellipsolve
