#pragma once

// Coefficient matching: a reduced cubic ODE u'' = a0 + a1 u + a2 u^2 + a3 u^3
// against the differentiated auxiliary equation, and resolution of the side
// conditions of a family for the wave parameters.

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ellipsolve/catalog.hpp"
#include "ellipsolve/elliptic_core.hpp"

namespace ellipsolve {

struct ReducedODE {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  std::string source = "raw";             // pde id or "raw"
  std::map<std::string, double> params;  // bindings that produced it
};

// a0 + a1 u + a2 u^2 + a3 u^3
double rhs_cubic(const ReducedODE& ode, double u);

struct MatchResult {
  EllipticCoefficients coefficients;  // c0 is 0 here and meaningful only if bound
  bool c0_free = true;
  std::array<std::string, 4> mapping{"c1 = 2*a0", "c2 = a1", "c3 = 2*a2/3", "c4 = a3/2"};
};

MatchResult match_coefficients(const ReducedODE& ode);

// A reduction with the wave speed omega and the constant K (B, c or C
// depending on the equation) left open.
struct ParameterizedODE {
  std::string pde;                         // "mbbm", "nls", "kdv_mkdv" or "raw"
  std::map<std::string, double> physical;  // alpha, beta, gamma as applicable
  std::function<ReducedODE(double omega, double K)> at;
  double omega0 = 1.0;  // starting point, returned untouched if already admissible
  double K0 = 0.0;
};

struct ConstrainedMatch {
  double omega = 0.0;
  double K = 0.0;
  std::optional<double> m;  // set when the family uses the modulus
  EllipticCoefficients coefficients;
  bool c0_free = false;
  std::string method;  // "closed form", "unconstrained" or "newton"
};

struct ConstrainedOptions {
  std::optional<double> m;  // fix the modulus; otherwise m in {0.1, ..., 0.9}
  double eps = 1.0;
  double tol = 1e-12;
  int max_iterations = 200;
};

// Solves the family's equality constraints for (omega, K[, m]). An empty
// result means no real solution with m in (0, 1). Throws ConvergenceError
// when Newton fails on every start without settling on a stationary point.
std::vector<ConstrainedMatch> resolve_constrained_match(const ParameterizedODE& ode,
                                                        const SolutionFamily& family,
                                                        const ConstrainedOptions& opts = {});

// Combined KdV-mKdV, c0 = 0 branch: the seven sub-cases tying (omega, C) to
// (alpha, beta, gamma, m) through the constraints of the case 5 families.
struct SubCaseParameters {
  int sub_case = 0;
  double omega = 0.0;
  double C = 0.0;
  EllipticCoefficients c;
  std::vector<std::string> families;
};

// Values derived from the constraint equations.
SubCaseParameters kdv_mkdv_subcase(int sub_case, double alpha, double beta, double gamma,
                                   double m = 0.5);
// Values as printed in the source tables, transcribed verbatim.
SubCaseParameters kdv_mkdv_printed(int sub_case, double alpha, double beta, double gamma,
                                   double m = 0.5);
// Sub-case (1..7) owning a Case 5 family, 0 otherwise.
int kdv_mkdv_subcase_of(const SolutionFamily& family);

struct KdvSample {
  double alpha, beta, gamma, m;
};

struct Discrepancy {
  int sub_case = 0;
  std::string quantity;  // "omega", "C", "c1", "c2"
  std::string printed;   // formula as printed
  std::string derived;   // formula from the constraints
  KdvSample at{};        // parameters the values were taken at
  double printed_value = 0.0;
  double derived_value = 0.0;
  // First-form residual of the derived profile against the auxiliary
  // equation implied by the printed value.
  double printed_residual = 0.0;
};

// Quantities of one sub-case where the printed table disagrees with the
// derivation, each with its residual evidence. Throws ParameterError if the
// sub-case's first family is not admissible at `at`.
std::vector<Discrepancy> kdv_mkdv_discrepancies(int sub_case, const KdvSample& at);
// All seven sub-cases, each at kdv_mkdv_canonical(k) with modulus m.
std::vector<Discrepancy> kdv_mkdv_discrepancies(double m = 0.5);

// A parameter set inside the admissible region of the sub-case's first family.
KdvSample kdv_mkdv_canonical(int sub_case);

}  // namespace ellipsolve
