#pragma once

// Residual certification of candidate solutions: the family against its
// auxiliary equation (both forms), and the lifted field against the original
// PDE operator with finite-difference stencils.

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "ellipsolve/catalog.hpp"
#include "ellipsolve/pde.hpp"
#include "ellipsolve/report.hpp"

namespace ellipsolve {

inline constexpr double kPdeTol = 1e-5;

// Checks both the first and the second form; the report carries the worse.
ResidualReport verify_ode(const ResolvedFamily& rf, const GridSpec& grid = {},
                          double tol = kNumericOdeTol);

struct PdeGrid {
  double x_lo = -5.0;
  double x_hi = 5.0;
  double t_lo = 0.0;
  double t_hi = 1.0;
  int nx = 128;
  int nt = 16;
  double h = 5e-3;     // x stencil step; the coarse estimate runs at 2h
  double h_t = 1.25e-3;  // t stencil step (the t stencil is only 4th order)
  // xi distance kept from profile poles beyond the stencil reach. Steps and
  // margin are divided by the rates in FieldScales when those exceed 1.
  double pole_margin = 0.5;
};

// Characteristic rates of variation of a field: d/dx, d/dt and the profile
// argument slope in xi.
struct FieldScales {
  double x = 1.0;
  double t = 1.0;
  double xi = 1.0;
};

struct PdeOptions {
  PdeGrid grid;
  double tol = kPdeTol;
};

// The PDE operator at one point. `value` is the raw residual, `scale` the sum
// of the magnitudes of its terms; the normalized residual is
// |value| / (1 + scale).
struct OperatorValue {
  std::complex<double> value;
  double scale = 0.0;
};

// x stencils are 6th order, t stencils 4th order, u_xxt is the x stencil of
// the t stencil. `physical` holds alpha, beta, gamma as the equation needs.
OperatorValue pde_operator(std::string_view pde, const Field& u, const Params& physical, double x,
                           double t, double hx, double ht);
inline OperatorValue pde_operator(std::string_view pde, const Field& u, const Params& physical,
                                  double x, double t, double h) {
  return pde_operator(pde, u, physical, x, t, h, h);
}

// Field check on the grid. Points whose stencils come within the pole margin
// of one of `poles` along xi = x - omega t are skipped.
ResidualReport verify_field(std::string_view pde, const Field& u, const Params& physical,
                            const PdeOptions& opts = {}, const std::vector<double>& poles = {},
                            double omega = 0.0, std::string subject = "field",
                            const FieldScales& scales = {});

ResidualReport verify_pde(const TravelingWaveSolution& sol, const PdeOptions& opts = {});

struct C0AuditEntry {
  std::string solution;
  Params params;  // without c0
  std::vector<double> c0_values;
  std::vector<ResidualReport> reports;  // one per c0 value
  bool profile_uses_c0 = false;  // profiles differ between c0 values
  bool passes = false;           // every report passes
};

struct C0Audit {
  std::string pde;
  std::vector<C0AuditEntry> entries;
  // True when each audited profile passes for every c0 and never depends on
  // it: the side conditions on c0 are then irrelevant to the PDE.
  bool claim_holds = false;
};

// Re-verifies solutions that accept an optional c0 under several c0 values.
// Parameters come from `params` where given and are otherwise drawn from the
// entry's admissible region with the given seed.
C0Audit arbitrary_c0_audit(std::string_view pde, const std::vector<std::string>& ids,
                           const std::vector<double>& c0_values, const Params& params = {},
                           const PdeOptions& opts = {}, std::uint64_t seed = kDefaultSeed);

std::string to_json(const C0Audit& audit, int indent = 2);

}  // namespace ellipsolve
